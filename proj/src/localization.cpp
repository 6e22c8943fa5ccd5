#include "kstab/localization.hpp"

namespace kstab {

Polynomial LocalizationData::mu_L(const FixedPoint& p) const {
    Polynomial out;
    for (const auto& b : bundles) {
        auto wit = p.mu.find(b);
        if (wit == p.mu.end())
            throw CaseDataError("fixed point " + p.name + " lacks a weight for bundle " + b);
        auto cit = polarization_weights.find(b);
        if (cit == polarization_weights.end())
            throw CaseDataError("polarization weight missing for bundle " + b);
        out += cit->second * Rational(wit->second);
    }
    return out;
}

void LocalizationData::validate(int dim) const {
    for (const auto& p : fixed_points) {
        if (static_cast<int>(p.alphas.size()) != dim)
            throw CaseDataError("fixed point " + p.name + ": alpha count differs from dim");
        for (long a : p.alphas)
            if (a == 0)
                throw CaseDataError("fixed point " + p.name + ": zero cotangent weight");
        for (const auto& b : bundles)
            if (!p.mu.count(b))
                throw CaseDataError("fixed point " + p.name + ": missing weight for " + b);
    }
}

std::pair<Polynomial, Polynomial> b0_b1_closed(const LocalizationData& data) {
    Polynomial b0, b1;
    for (const auto& p : data.fixed_points) {
        if (p.alphas.size() != 3)
            throw InputError("b0_b1_closed is specific to threefolds");
        Rational prod = Rational(p.alphas[0]) * Rational(p.alphas[1]) * Rational(p.alphas[2]);
        if (sgn(prod) == 0) throw CaseDataError("zero cotangent weight");
        Rational asum = Rational(p.alphas[0] + p.alphas[1] + p.alphas[2]);
        Polynomial mu = data.mu_L(p);
        b0 += mu.pow(4) * (Rational(1) / (Rational(24) * prod));
        b1 += mu.pow(3) * (asum / (Rational(12) * prod));
    }
    return {b0, b1};
}

CharacterExpansion character_series_oracle(const LocalizationData& data, int dim, int truncation) {
    if (truncation < dim + 2)
        throw InputError("series oracle needs at least n + 2 coefficients per term");
    data.validate(dim);

    // context: k plus every parameter appearing in the polarization weights
    std::vector<std::string> ctx{"k"};
    for (const auto& [b, w] : data.polarization_weights)
        for (const auto& v : w.vars())
            if (std::find(ctx.begin(), ctx.end(), v) == ctx.end()) ctx.push_back(v);

    LaurentSeries total;
    int top = 2; // need orders through eps^1
    for (const auto& p : data.fixed_points) {
        Polynomial arg = Polynomial::variable(ctx, "k") * data.mu_L(p).embedded(ctx);
        LaurentSeries term = exp_series(arg, truncation);
        for (long a : p.alphas)
            term = term * one_over_one_minus_exp_neg(Rational(a), truncation, ctx);
        total = total + term.truncate(top);
    }

    CharacterExpansion out;
    out.pole_check = true;
    for (int o = -dim; o <= -1; ++o) {
        Polynomial c = total.coefficient(o);
        out.pole_coefficients.push_back(c);
        if (!c.is_zero()) out.pole_check = false;
    }
    out.h = total.coefficient(0);
    out.w = total.coefficient(1);
    return out;
}

DFResult df_invariant(const LocalizationData& data, const Polynomial& a0, const Polynomial& a1,
                      int dim, int truncation) {
    if (a0.is_zero()) throw InputError("df_invariant: a0 is identically zero");
    DFResult out;
    out.a0 = a0;
    out.a1 = a1;
    auto [b0c, b1c] = b0_b1_closed(data);
    out.b0 = b0c;
    out.b1 = b1c;
    out.df = RationalFunction(out.b0 * out.a1 - out.b1 * out.a0, out.a0);

    CharacterExpansion ch = character_series_oracle(data, dim, truncation);
    if (!ch.pole_check)
        throw CaseDataError("series oracle: pole coefficients do not cancel (inconsistent weights)");
    Polynomial b0s = ch.w.coefficient_of("k", static_cast<unsigned>(dim + 1));
    Polynomial b1s = ch.w.coefficient_of("k", static_cast<unsigned>(dim));
    Polynomial a0s = ch.h.coefficient_of("k", static_cast<unsigned>(dim));
    Polynomial a1s = ch.h.coefficient_of("k", static_cast<unsigned>(dim - 1));
    out.oracle_agreement = (b0s == out.b0) && (b1s == out.b1) && (a0s == out.a0) && (a1s == out.a1);
    return out;
}

} // namespace kstab
