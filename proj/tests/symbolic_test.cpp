#include <doctest.h>

#include "kstab/laurent.hpp"
#include "kstab/linear_form.hpp"
#include "kstab/rational_function.hpp"

#include <random>

using namespace kstab;

namespace {

const std::vector<std::string> ABC{"a", "b", "c"};

Polynomial P(const std::string& s, const std::vector<std::string>& vars = ABC) {
    return parse_polynomial(s, vars);
}

Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    Polynomial p(vars);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        Mono m(vars.size());
        for (auto& e : m) e = static_cast<unsigned>(rng() % 3);
        long c = static_cast<long>(rng() % 11) - 5;
        Polynomial term(vars);
        term.set_term(m, Rational(c));
        p += term;
    }
    return p;
}

} // namespace

TEST_CASE("poly_eval on the degree-three display") {
    Polynomial p = P("3*a*b^2 + 12*a*b*c + 6*a*c^2 + 3*b^2*c + 9*b*c^2 + 5*c^3");
    std::map<std::string, Rational> ones{{"a", 1}, {"b", 1}, {"c", 1}};
    CHECK(p.eval(ones) == Rational(38));

    CHECK(Polynomial{}.eval({}) == Rational(0));

    Polynomial q = P("a - c");
    CHECK(q.eval({{"a", 5}, {"c", 5}}) == Rational(0));

    CHECK_THROWS_AS(q.eval({{"a", 5}}), InputError);
}

TEST_CASE("expression grammar") {
    CHECK(P("1/2*a + 1/2*a") == P("a"));
    CHECK(P("-3/2*a") == P("0 - 3/2*a"));
    CHECK(P("(a+b)^2") == P("a^2 + 2*a*b + b^2"));
    CHECK(P("a*-2") == P("-2*a")); // rational literal in factor position
    CHECK_THROWS_AS(P("a b"), InputError);       // no implicit multiplication
    CHECK_THROWS_AS(P("2a"), InputError);
    CHECK_THROWS_AS(P("x + 1"), InputError);     // unknown identifier
    CHECK_THROWS_AS(P("a^-1"), InputError);      // exponents are nonnegative
    CHECK_THROWS_AS(P("1/0"), InputError);
}

TEST_CASE("canonical printing round-trips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Polynomial p = random_poly(rng, ABC);
        CHECK(P(p.str()) == p);
    }
    CHECK(Polynomial{}.str() == "0");
    CHECK(P(P("-1*a + b").str()) == P("-1*a + b"));
}

TEST_CASE("ring laws on random small polynomials") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 30; ++i) {
        Polynomial p = random_poly(rng, ABC);
        Polynomial q = random_poly(rng, ABC);
        Polynomial r = random_poly(rng, ABC);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK(p + (-p) == Polynomial{});
    }
}

TEST_CASE("integration over parametric intervals") {
    const std::vector<std::string> vars{"a", "b", "c", "u"};
    Polynomial one = Polynomial::constant(vars, 1);
    LinearForm zero{Polynomial{}};
    LinearForm cc{P("c")};
    CHECK(integrate_over_interval(one, "u", zero, cc) == P("c"));

    // int from c to b+2c of (u - c) du = (b+c)^2 / 2
    Polynomial p = parse_polynomial("u - c", vars);
    LinearForm hi{P("b + 2*c")};
    CHECK(integrate_over_interval(p, "u", cc, hi) == P("1/2*(b+c)^2"));

    // int from 0 to a of 3u^2 du = a^3
    Polynomial q = parse_polynomial("3*u^2", vars);
    CHECK(integrate_over_interval(q, "u", zero, LinearForm{P("a")}) == P("a^3"));

    // integral over a degenerate interval vanishes
    CHECK(integrate_over_interval(p, "u", hi, hi).is_zero());

    // d/du of the antiderivative equals the integrand
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        Polynomial r = random_poly(rng, vars);
        CHECK(r.antiderivative("u").derivative("u") == r);
    }
}

TEST_CASE("rational function reduction and equality") {
    RationalFunction f(P("a^2 - b^2"), P("a - b"));
    CHECK(f.is_polynomial());
    CHECK(f.as_polynomial() == P("a + b"));

    RationalFunction g(P("a"), P("b"));
    RationalFunction h(P("2*a"), P("2*b"));
    CHECK(g == h);
    CHECK((g - g).is_zero());
    CHECK((g - g) == RationalFunction());
    CHECK((g - g).den() == Polynomial::constant({}, 1));

    // equality behaves like an equivalence on representatives
    RationalFunction x(P("a*c"), P("b*c"));
    CHECK(g == x);
    CHECK(x == h);
    CHECK(g == g);

    // denominator normalization: positive leading coefficient, primitive
    RationalFunction y(P("a"), P("-2*b"));
    CHECK(sgn(y.den().leading_coefficient()) > 0);
    CHECK(y.den() == P("b"));

    CHECK_THROWS_AS(RationalFunction(P("a"), Polynomial{}), InputError);
}

TEST_CASE("polynomial gcd") {
    Polynomial a = P("(a+b)^2*(a-c)");
    Polynomial b = P("(a+b)*(a+c)");
    CHECK(poly_gcd(a, b) == P("a+b"));
    CHECK(poly_gcd(a, Polynomial{}) == P("(a+b)^2*(a-c)"));
    CHECK(poly_gcd(P("6"), P("4")) == P("1"));
    CHECK(poly_gcd(P("2*a"), P("3*b")) == P("1"));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 15; ++i) {
        Polynomial p = random_poly(rng, ABC);
        Polynomial q = random_poly(rng, ABC);
        Polynomial g = random_poly(rng, ABC);
        if (g.is_zero() || p.is_zero() || q.is_zero()) continue;
        Polynomial gg = poly_gcd(p * g, q * g);
        // g divides gcd(pg, qg), and gcd(pg, qg) = unit * g * gcd(p, q)
        CHECK(try_divide(gg, g).has_value());
        auto q1 = try_divide(gg, poly_gcd(p, q) * g);
        CHECK(q1.has_value());
        if (q1) CHECK(q1->is_constant());
    }
}

TEST_CASE("laurent multiplication truncation bookkeeping") {
    const std::vector<std::string> kv{"k"};
    Polynomial one = Polynomial::constant(kv, 1);
    Polynomial k = Polynomial::variable(kv, "k");

    // (eps^-1 * 1) x (eps * 1) = eps^0 * 1
    LaurentSeries x = LaurentSeries::monomial(-1, one, 5);
    LaurentSeries y = LaurentSeries::monomial(1, one, 5);
    LaurentSeries xy = laurent_mul_truncate(x, y);
    CHECK(xy.coefficient(0) == one);
    CHECK(xy.lowest_order() == 0);

    // (eps^-3) x (1 + k eps + ...) truncated at eps^1 retains 5 coefficients
    LaurentSeries z = LaurentSeries::monomial(-3, one, 10);
    LaurentSeries e = exp_series(k, 8); // orders 0..7
    LaurentSeries ze = (z * e).truncate(2);
    CHECK(ze.lowest_order() == -3);
    CHECK(ze.truncation_order() == 2); // orders -3..1: five coefficients
    CHECK(ze.coefficient(-2) == k);
    CHECK(ze.coefficient(1) == parse_polynomial("1/24*k^4", kv));

    // x times the zero series is the zero series
    CHECK((x * LaurentSeries::zero()).is_zero());
}

TEST_CASE("laurent inversion reproduces the Bernoulli-type coefficients") {
    // 1/(1 - e^{-eps}) = eps^-1 + 1/2 + eps/12 + 0 eps^2 - eps^3/720 + ...
    LaurentSeries s = one_over_one_minus_exp_neg(1, 4, {});
    CHECK(s.lowest_order() == -1);
    CHECK(s.coefficient(-1) == Polynomial::constant({}, 1));
    CHECK(s.coefficient(0) == Polynomial::constant({}, Rational(1, 2)));
    CHECK(s.coefficient(1) == Polynomial::constant({}, Rational(1, 12)));
    CHECK(s.coefficient(2).is_zero());
    CHECK(s.coefficient(3) == Polynomial::constant({}, Rational(-1, 720)));

    LaurentSeries t = one_over_one_minus_exp_neg(-2, 2, {});
    CHECK(t.coefficient(-1) == Polynomial::constant({}, Rational(-1, 2)));
    CHECK(t.coefficient(0) == Polynomial::constant({}, Rational(1, 2)));
    CHECK(t.coefficient(1) == Polynomial::constant({}, Rational(-1, 6)));
}

TEST_CASE("substitution is simultaneous and exact") {
    Polynomial p = P("a^2 + b");
    Polynomial image = p.substitute({{"a", P("b")}, {"b", P("a")}});
    CHECK(image == P("b^2 + a"));

    Polynomial q = parse_polynomial("u^2", {"u"});
    CHECK(q.substitute({{"u", P("b + 2*c")}}) == P("(b+2*c)^2"));
}
