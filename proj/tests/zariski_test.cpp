#include <doctest.h>

#include "kstab/casebook.hpp"

using namespace kstab;

namespace {

CaseSpec load(const std::string& id) {
    return load_case_file(case_path(default_cases_dir(), id));
}

DivisorClass l_minus_u(const CaseSpec& spec, const std::string& divisor) {
    std::vector<std::string> ctx = spec.variables;
    ctx.push_back("u");
    Polynomial u = Polynomial::variable(ctx, "u");
    return spec.geometry.polarization - spec.geometry.divisor(divisor).scaled(u);
}

} // namespace

TEST_CASE("decompose: nef chambers return P = D, N = 0") {
    CaseSpec spec = load("3.21");
    const Schedule& sch = spec.divisors.at("S").schedules.front();
    DivisorClass d = l_minus_u(spec, "S");
    Decomposition dec = decompose_in_chamber(spec.geometry, d, sch.chambers.front());
    for (size_t i = 0; i < d.coeffs.size(); ++i) {
        CHECK(dec.positive.coeffs[i] == d.coeffs[i]);
        CHECK(dec.negative.coeffs[i].is_zero());
    }
}

TEST_CASE("decompose: 3.21 chamber [c, b+2c] has N = (u-c)E") {
    CaseSpec spec = load("3.21");
    const Schedule& sch = spec.divisors.at("S").schedules.front();
    DivisorClass d = l_minus_u(spec, "S");
    Decomposition dec = decompose_in_chamber(spec.geometry, d, sch.chambers[1]);
    std::vector<std::string> ctx{"a", "b", "c", "u"};
    CHECK(dec.gammas.size() == 1);
    CHECK(dec.gammas[0] == parse_polynomial("u-c", ctx));
    // P = (a+c) H1 + (b+2c-u) H2
    CHECK(dec.positive.coeffs[0] == parse_polynomial("a+c", ctx));
    CHECK(dec.positive.coeffs[1] == parse_polynomial("b+2*c-u", ctx));
    CHECK(dec.positive.coeffs[2].is_zero());
    // P kills the orthogonality curve exactly
    CHECK(pair_curve(dec.positive, spec.geometry.curve("l3")).is_zero());
}

TEST_CASE("decompose: 4.12 chamber [b, c] has N = (u-b)F1") {
    CaseSpec spec = load("4.12");
    const Schedule& sch = spec.divisors.at("E").schedules.front();
    DivisorClass d = l_minus_u(spec, "E");
    Decomposition dec = decompose_in_chamber(spec.geometry, d, sch.chambers[1]);
    CHECK(dec.gammas[0] == parse_polynomial("u-b", {"a", "b", "c", "d", "u"}));
}

TEST_CASE("decompose rejects a singular pairing system") {
    CaseSpec spec = load("3.21");
    DivisorClass d = l_minus_u(spec, "S");
    Chamber bad;
    bad.lo = LinearForm{Polynomial{}};
    bad.hi = LinearForm{parse_polynomial("c", {"a", "b", "c"})};
    bad.negative_support = {"E", "E"};
    bad.orthogonality = {"l3", "l3"};
    CHECK_THROWS_AS(decompose_in_chamber(spec.geometry, d, bad), CaseDataError);
}

TEST_CASE("volume pieces: 2.28 anticanonical schedule matches the source display") {
    CaseSpec spec = load("2.28");
    const AdjointSpec& adj = *spec.adjoint;
    DivisorClass minus_k;
    for (const auto& c : spec.geometry.canonical.coeffs) minus_k.coeffs.push_back(-c);
    PiecewiseVolume vol = volume_piecewise(spec.geometry, minus_k,
                                           spec.geometry.divisor("S"),
                                           adj.anticanonical_schedule);
    std::vector<std::string> ctx{"x", "y", "u"};
    CHECK(vol.pieces[0] == parse_polynomial("40-3*u-6*u^2-4*u^3", ctx));
    CHECK(vol.pieces[1] == parse_polynomial("(4-u)^3", ctx));

    // threshold: the volume vanishes identically at tau = 4
    Polynomial at_tau = vol.pieces[1].substitute(
        {{"u", adj.anticanonical_schedule.threshold().poly()}});
    CHECK(at_tau.is_zero());

    // wall values at u = 1: both pieces give 27 at the wall
    std::map<std::string, Rational> pt{{"u", 1}};
    CHECK(vol.pieces[0].eval(pt) == Rational(27));
    CHECK(vol.pieces[1].eval(pt) == Rational(27));
}

TEST_CASE("volume pieces: 3.22 second chamber is 3(2c+b)^2(a+c-u)") {
    CaseSpec spec = load("3.22");
    const Schedule& sch = spec.divisors.at("F1t").schedules.front();
    PiecewiseVolume vol = volume_piecewise(spec.geometry, spec.geometry.polarization,
                                           spec.geometry.divisor("F1t"), sch);
    CHECK(vol.pieces[1] == parse_polynomial("3*(2*c+b)^2*(a+c-u)", {"a", "b", "c", "u"}));

    // C0 and C1 at the wall u = c hold as exact polynomial identities
    Polynomial wall = parse_polynomial("c", {"a", "b", "c"});
    CHECK(vol.pieces[0].substitute({{"u", wall}}) == vol.pieces[1].substitute({{"u", wall}}));
    CHECK(vol.pieces[0].derivative("u").substitute({{"u", wall}}) ==
          vol.pieces[1].derivative("u").substitute({{"u", wall}}));
}

TEST_CASE("t-derivative pieces reproduce the dP7 display") {
    CaseSpec spec = load("dP7");
    const Schedule& sch = spec.divisors.at("E").schedules.front();
    PiecewiseVolume dvol = volume_t_derivative(spec.geometry, spec.geometry.polarization,
                                               spec.geometry.divisor("E"), sch);
    std::vector<std::string> ctx{"a1", "a2", "b", "u"};
    CHECK(dvol.pieces[0] == parse_polynomial("2*u-4*a1-4*a2-6*b", ctx));
    CHECK(dvol.pieces[2] == parse_polynomial("6*u-6*a1-6*a2-6*b", ctx));
}

TEST_CASE("t-derivative vanishes on nef chambers when K is formally zero") {
    CaseSpec spec = load("3.21");
    Geometry geo = spec.geometry;
    geo.canonical.coeffs.assign(geo.form.basis().size(), Polynomial{});
    const Schedule& sch = spec.divisors.at("S").schedules.front();
    PiecewiseVolume dvol = volume_t_derivative(geo, geo.polarization, geo.divisor("S"), sch);
    CHECK(dvol.pieces[0].is_zero());
}

TEST_CASE("validate_schedule flags a dropped chamber") {
    CaseSpec spec = load("3.23");
    Schedule sch = spec.divisors.at("PiC").schedules.front();
    sch.chambers.erase(sch.chambers.begin() + 1); // corrupt: drop the middle chamber
    ValidationReport rep = validate_schedule(spec.geometry, spec.geometry.polarization,
                                             spec.geometry.divisor("PiC"), sch);
    CHECK(!rep.ok());
    bool abutment = false;
    for (const auto& issue : rep.issues)
        if (issue.where.find("abutment") != std::string::npos) abutment = true;
    CHECK(abutment);
}

TEST_CASE("validate_schedule passes every shipped beta schedule") {
    for (const char* id : {"3.21", "3.22", "3.23", "3.24", "3.29", "3.18"}) {
        CaseSpec spec = load(id);
        for (const auto& [name, entry] : spec.divisors)
            for (const auto& sch : entry.schedules) {
                ValidationReport rep = validate_schedule(spec.geometry, spec.geometry.polarization,
                                                         entry.cls, sch);
                INFO(id, " divisor ", name);
                CHECK(rep.ok());
            }
    }
}
