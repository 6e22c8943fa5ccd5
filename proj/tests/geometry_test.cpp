#include <doctest.h>

#include "kstab/casebook.hpp"

#include <random>

using namespace kstab;

namespace {

CaseSpec load(const std::string& id) {
    return load_case_file(case_path(default_cases_dir(), id));
}

const std::vector<std::string> ABC{"a", "b", "c"};

} // namespace

TEST_CASE("intersect reproduces the 3.21 displays") {
    CaseSpec spec = load("3.21");
    const auto& geo = spec.geometry;
    Polynomial l3 = geo.form.power(geo.polarization);
    CHECK(l3 == parse_polynomial("3*a*b^2+12*a*b*c+6*a*c^2+3*b^2*c+9*b*c^2+5*c^3", ABC));

    DivisorClass minus_k;
    for (const auto& coeff : geo.canonical.coeffs) minus_k.coeffs.push_back(-coeff);
    Polynomial kl2 = geo.form.power_times(geo.polarization, minus_k);
    CHECK(kl2 == parse_polynomial("2*(3*a*b+4*a*c+b^2+6*b*c+5*c^2)", ABC));

    // intersecting with the zero class vanishes
    DivisorClass zero;
    zero.coeffs.assign(geo.form.basis().size(), Polynomial{});
    std::vector<DivisorClass> v{zero, geo.polarization, geo.polarization};
    CHECK(geo.form.intersect(v).is_zero());

    CHECK_THROWS_AS(geo.form.intersect(std::vector<DivisorClass>{zero, zero}), InputError);
}

TEST_CASE("intersect is symmetric and multilinear") {
    CaseSpec spec = load("3.18");
    const auto& form = spec.geometry.form;
    std::mt19937_64 rng(99);
    auto random_class = [&] {
        DivisorClass d;
        for (size_t i = 0; i < form.basis().size(); ++i) {
            long c = static_cast<long>(rng() % 11) - 5;
            d.coeffs.push_back(Polynomial::constant(ABC, Rational(c)));
        }
        return d;
    };
    for (int trial = 0; trial < 20; ++trial) {
        DivisorClass x = random_class(), y = random_class(), z = random_class();
        std::vector<DivisorClass> xyz{x, y, z}, zxy{z, x, y}, yxz{y, x, z};
        Polynomial t = form.intersect(xyz);
        CHECK(t == form.intersect(zxy));
        CHECK(t == form.intersect(yxz));
        // multilinearity in the first slot
        DivisorClass sum = x + z;
        std::vector<DivisorClass> syz{sum, y, z};
        CHECK(form.intersect(syz) == t + form.intersect(std::vector<DivisorClass>{z, y, z}));
    }
}

TEST_CASE("pair_curve reproduces the 3.18 proof pairings") {
    CaseSpec spec = load("3.18");
    const auto& geo = spec.geometry;
    std::vector<std::string> ctx{"a", "b", "c", "u"};
    Polynomial u = Polynomial::variable(ctx, "u");
    DivisorClass l_minus_upi = geo.polarization - geo.divisor("Pi").scaled(u);

    CHECK(pair_curve(l_minus_upi, geo.curve("s")) == parse_polynomial("b", ctx));
    CHECK(pair_curve(l_minus_upi, geo.curve("f")) == parse_polynomial("a+u", ctx));
    CHECK(pair_curve(l_minus_upi, geo.curve("l")) == parse_polynomial("c-u", ctx));

    DivisorClass zero;
    zero.coeffs.assign(geo.form.basis().size(), Polynomial{});
    CHECK(pair_curve(zero, geo.curve("s")).is_zero());

    CurveClass short_row{"bad", {Rational(1)}};
    CHECK_THROWS_AS(pair_curve(l_minus_upi, short_row), InputError);
}

TEST_CASE("slope_mu matches the displayed slopes") {
    CaseSpec spec = load("3.21");
    RationalFunction mu = slope_mu(spec.geometry.form, spec.geometry.canonical,
                                   spec.geometry.polarization);
    RationalFunction expect(parse_polynomial("2*(3*a*b+4*a*c+b^2+6*b*c+5*c^2)", ABC),
                            parse_polynomial("3*a*b^2+12*a*b*c+6*a*c^2+3*b^2*c+9*b*c^2+5*c^3", ABC));
    CHECK(mu == expect);
    CHECK(mu.eval({{"a", 1}, {"b", 1}, {"c", 1}}) == Rational(1));

    CaseSpec dp7 = load("dP7");
    RationalFunction mu2 = slope_mu(dp7.geometry.form, dp7.geometry.canonical,
                                    dp7.geometry.polarization);
    std::vector<std::string> vars{"a1", "a2", "b"};
    CHECK(mu2 == RationalFunction(parse_polynomial("2*a1+2*a2+3*b", vars),
                                  parse_polynomial("2*a1*a2+2*a1*b+2*a2*b+b^2", vars)));

    // degenerate polarization: L^n identically zero
    DivisorClass zero;
    zero.coeffs.assign(spec.geometry.form.basis().size(), Polynomial{});
    CHECK_THROWS_AS(slope_mu(spec.geometry.form, spec.geometry.canonical, zero), InputError);
}

TEST_CASE("homogeneity of L^n and mu under a global rescale") {
    for (const char* id : {"3.21", "4.12", "dP7"}) {
        CaseSpec spec = load(id);
        const auto& geo = spec.geometry;
        std::vector<std::string> ctx = spec.variables;
        ctx.push_back("lam");
        Polynomial lam = Polynomial::variable(ctx, "lam");
        std::map<std::string, Polynomial> scale;
        for (const auto& v : spec.variables) scale[v] = Polynomial::variable(ctx, v) * lam;

        Polynomial ln = geo.form.power(geo.polarization);
        CHECK(ln.substitute(scale) == lam.pow(static_cast<unsigned>(geo.form.dim())) * ln);

        RationalFunction mu = slope_mu(geo.form, geo.canonical, geo.polarization);
        CHECK(mu.substitute(scale) * RationalFunction::from_polynomial(lam) == mu);
    }
}
