#ifndef KSTAB_LAURENT_HPP
#define KSTAB_LAURENT_HPP

#include "kstab/polynomial.hpp"

namespace kstab {

// Truncated Laurent series in a formal variable epsilon.  Coefficients are
// polynomials (typically in k and the case parameters).  Orders in
// [lowest, truncation) are represented; everything below lowest is zero and
// everything at or above truncation is unknown.
class LaurentSeries {
public:
    LaurentSeries() = default; // zero series, truncation +inf

    LaurentSeries(int lowest, std::vector<Polynomial> coeffs, int truncation);

    static LaurentSeries zero() { return LaurentSeries(); }
    static LaurentSeries monomial(int order, Polynomial coeff, int truncation);

    bool is_zero() const;
    int lowest_order() const { return lowest_; }
    int truncation_order() const { return truncation_; }
    bool truncated() const { return truncation_ != UNTRUNCATED; }

    // Coefficient at the given order; zero below lowest; InputError at or
    // above the truncation order.
    Polynomial coefficient(int order) const;

    LaurentSeries operator+(const LaurentSeries& rhs) const;
    LaurentSeries operator*(const LaurentSeries& rhs) const;

    // Multiplicative inverse; requires the leading coefficient to be a
    // nonzero rational constant.
    LaurentSeries inverse() const;

    LaurentSeries truncate(int new_truncation) const;

    static constexpr int UNTRUNCATED = 1 << 28;

private:
    int lowest_ = 0;
    std::vector<Polynomial> coeffs_; // ascending from lowest_
    int truncation_ = UNTRUNCATED;
    void normalize();
};

// Product truncated at the minimum attainable order (spec operation).
inline LaurentSeries laurent_mul_truncate(const LaurentSeries& x, const LaurentSeries& y) {
    return x * y;
}

// exp(arg * eps) as a series with polynomial coefficients, truncated so
// orders < truncation are exact.
LaurentSeries exp_series(const Polynomial& arg, int truncation);

// 1/(1 - exp(-alpha*eps)) by formal inversion of alpha*eps - alpha^2 eps^2/2 + ...
LaurentSeries one_over_one_minus_exp_neg(const Rational& alpha, int truncation,
                                         const std::vector<std::string>& ctx);

} // namespace kstab

#endif
