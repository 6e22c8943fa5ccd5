#include <doctest.h>

#include "kstab/casebook.hpp"

#include <random>

using namespace kstab;

namespace {

CaseSpec load(const std::string& id) {
    return load_case_file(case_path(default_cases_dir(), id));
}

const std::vector<std::string> ABCD{"a", "b", "c", "d"};

} // namespace

TEST_CASE("coefficient inspection on simple inputs") {
    std::set<std::string> strict{"a", "b"};
    Certificate pos = certify_orthant(parse_polynomial("a+b", {"a", "b"}), strict);
    CHECK(pos.status == CertStatus::positive);

    // (a-b)^2 is nonnegative but coefficient inspection cannot see it
    Certificate inc = certify_orthant(parse_polynomial("a^2-2*a*b+b^2", {"a", "b"}), strict);
    CHECK(inc.status == CertStatus::inconclusive);

    // nonnegative without a strictness witness: every monomial touches the
    // non-strict variable
    Certificate nn = certify_orthant(parse_polynomial("a*c+b*c", {"a", "b", "c"}), strict);
    CHECK(nn.status == CertStatus::nonnegative);
}

TEST_CASE("the 4.11 f1 certificate is positive outright") {
    CaseSpec spec = load("4.11");
    const CertificateSpec& cs = spec.certificate("f1-positive");
    Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
    CHECK(cert.status == CertStatus::positive);
}

TEST_CASE("the 3.18 Delta certificate matches the displayed expansion") {
    CaseSpec spec = load("3.18");
    const CertificateSpec& cs = spec.certificate("Delta-on-a-ge-c");
    Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
    CHECK(cert.status == CertStatus::positive);
    REQUIRE(cs.expected_expansion.has_value());
    CHECK(cert.witness == *cs.expected_expansion);
    // the strictness witness avoids eps, so positivity holds on the closed
    // region boundary a = c as well
    CHECK(cert.strictness_witness_str.find("eps") == std::string::npos);
}

TEST_CASE("triangular substitutions compose in order") {
    // a3 -> a2 + d2 applied first, then a2 -> a1 + d1: a3 ends at a1 + d1 + d2
    std::vector<std::string> ctx{"a1", "a2", "a3", "d1", "d2"};
    Substitution sub;
    sub.assignments.emplace_back("a3", parse_polynomial("a2+d2", ctx));
    sub.assignments.emplace_back("a2", parse_polynomial("a1+d1", ctx));
    Polynomial image = sub.apply(Polynomial::variable(ctx, "a3"));
    CHECK(image == parse_polynomial("a1+d1+d2", ctx));

    // reversing the order re-introduces an eliminated variable: rejected
    Substitution bad;
    bad.assignments.emplace_back("a2", parse_polynomial("a1+d1", ctx));
    bad.assignments.emplace_back("a3", parse_polynomial("a2+d2", ctx));
    CHECK_THROWS_AS(bad.validate_triangular(), CaseDataError);
}

TEST_CASE("soundness: positive certificates evaluate positively on the region") {
    std::mt19937_64 rng(2024);
    for (const char* id : {"3.18", "4.9", "4.11", "4.8"}) {
        CaseSpec spec = load(id);
        for (const auto& cs : spec.certificates) {
            Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
            REQUIRE(cert.status == CertStatus::positive);
            for (int trial = 0; trial < 50; ++trial) {
                std::map<std::string, Rational> pt;
                for (const auto& v : cert.witness.vars()) {
                    bool strict = cs.strict.count(v) > 0;
                    Rational q(static_cast<long>(rng() % 17) + (strict ? 1 : 0),
                               static_cast<long>(rng() % 7) + 1);
                    q.canonicalize();
                    pt[v] = q;
                }
                CHECK(sgn(cert.witness.eval(pt)) > 0);
            }
        }
    }
}

TEST_CASE("the 4.8 combination targets reproduce the displayed leading terms") {
    CaseSpec spec = load("4.8");
    const CertificateSpec& cs = spec.certificate("comb-on-a2-le-a1-le-a3");
    Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
    CHECK(cert.status == CertStatus::positive);
    CHECK(cert.witness == *cs.expected_expansion);
    // the expansion starts at 24 a2^6
    Mono lead = cert.witness.terms().rbegin()->first;
    (void)lead;
    std::map<std::string, Rational> pt{{"a2", 1}, {"a4", 0}, {"e1", 0}, {"e2", 0}};
    CHECK(cert.witness.eval(pt) == Rational(24));
}

TEST_CASE("the 4.9 branch targets carry the full degree-six numerator") {
    CaseSpec spec = load("4.9");
    const CertificateSpec& b1 = spec.certificate("f1hat-on-b-ge-a");
    CHECK(b1.target.total_degree() == 6);
    Certificate cert = certify_on_region(b1.target, b1.substitution, b1.strict);
    CHECK(cert.witness == *b1.expected_expansion);
    std::map<std::string, Rational> pt{{"a", 1}, {"c", 0}, {"d", 0}, {"del", 0}};
    CHECK(cert.witness.eval(pt) == Rational(21)); // leading term 21 a^6
}
