#include "kstab/laurent.hpp"

namespace kstab {

LaurentSeries::LaurentSeries(int lowest, std::vector<Polynomial> coeffs, int truncation)
    : lowest_(lowest), coeffs_(std::move(coeffs)), truncation_(truncation) {
    if (truncation_ < lowest_ + static_cast<int>(coeffs_.size()))
        throw InputError("laurent: truncation below represented orders");
    normalize();
}

LaurentSeries LaurentSeries::monomial(int order, Polynomial coeff, int truncation) {
    return LaurentSeries(order, {std::move(coeff)}, truncation);
}

void LaurentSeries::normalize() {
    while (!coeffs_.empty() && coeffs_.front().is_zero()) {
        coeffs_.erase(coeffs_.begin());
        ++lowest_;
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) lowest_ = 0;
}

bool LaurentSeries::is_zero() const { return coeffs_.empty(); }

Polynomial LaurentSeries::coefficient(int order) const {
    if (order >= truncation_)
        throw InputError("laurent: coefficient beyond truncation order");
    int idx = order - lowest_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return Polynomial{};
    return coeffs_[static_cast<size_t>(idx)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& rhs) const {
    int trunc = std::min(truncation_, rhs.truncation_);
    if (is_zero() && rhs.is_zero()) {
        LaurentSeries z;
        z.truncation_ = trunc;
        return z;
    }
    int lo = std::min(is_zero() ? rhs.lowest_ : lowest_, rhs.is_zero() ? lowest_ : rhs.lowest_);
    std::vector<Polynomial> cs;
    for (int o = lo; o < trunc; ++o) {
        Polynomial c;
        if (o >= lowest_ && o - lowest_ < static_cast<int>(coeffs_.size()))
            c += coeffs_[static_cast<size_t>(o - lowest_)];
        if (o >= rhs.lowest_ && o - rhs.lowest_ < static_cast<int>(rhs.coeffs_.size()))
            c += rhs.coeffs_[static_cast<size_t>(o - rhs.lowest_)];
        cs.push_back(std::move(c));
    }
    return LaurentSeries(lo, std::move(cs), trunc);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& rhs) const {
    if (is_zero() || rhs.is_zero()) {
        LaurentSeries z;
        z.truncation_ = std::min(truncation_, rhs.truncation_);
        return z;
    }
    // product truncation: min attainable order given each factor's unknowns
    int trunc = std::min(truncated() ? truncation_ + rhs.lowest_ : UNTRUNCATED,
                         rhs.truncated() ? rhs.truncation_ + lowest_ : UNTRUNCATED);
    int lo = lowest_ + rhs.lowest_;
    int n = trunc == UNTRUNCATED
                ? static_cast<int>(coeffs_.size() + rhs.coeffs_.size()) - 1
                : trunc - lo;
    std::vector<Polynomial> cs(static_cast<size_t>(std::max(n, 0)));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            if (i + j >= cs.size()) break;
            if (rhs.coeffs_[j].is_zero()) continue;
            cs[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return LaurentSeries(lo, std::move(cs), trunc);
}

LaurentSeries LaurentSeries::inverse() const {
    if (is_zero()) throw InputError("laurent: inverse of zero series");
    if (!coeffs_.front().is_constant())
        throw InputError("laurent: inverse requires constant leading coefficient");
    Rational lead = coeffs_.front().constant_value();
    // available relative precision
    int prec = truncated() ? truncation_ - lowest_ : static_cast<int>(coeffs_.size());
    // this = lead*eps^lowest * (1 + t), deg t >= 1 relative
    std::vector<Polynomial> t(static_cast<size_t>(prec));
    for (int i = 1; i < prec; ++i) {
        Polynomial c = (i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<size_t>(i)]
                                                              : Polynomial{};
        c *= Rational(1) / lead;
        t[static_cast<size_t>(i)] = std::move(c);
    }
    // geometric series sum_{m} (-t)^m up to relative order prec-1
    std::vector<Polynomial> inv(static_cast<size_t>(prec));
    inv[0] = Polynomial::constant({}, 1);
    std::vector<Polynomial> cur(static_cast<size_t>(prec)); // (-t)^m
    cur[0] = Polynomial::constant({}, 1);
    for (int m = 1; m < prec; ++m) {
        // cur = cur * (-t), truncated at relative order prec-1
        std::vector<Polynomial> next(static_cast<size_t>(prec));
        for (int i = 0; i < prec; ++i) {
            if (cur[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 1; i + j < prec; ++j) {
                if (t[static_cast<size_t>(j)].is_zero()) continue;
                next[static_cast<size_t>(i + j)] -= cur[static_cast<size_t>(i)] * t[static_cast<size_t>(j)];
            }
        }
        cur = std::move(next);
        bool all_zero = true;
        for (int i = 0; i < prec; ++i) {
            if (!cur[static_cast<size_t>(i)].is_zero()) all_zero = false;
            inv[static_cast<size_t>(i)] += cur[static_cast<size_t>(i)];
        }
        if (all_zero) break;
    }
    Rational inv_lead = Rational(1) / lead;
    for (auto& c : inv) c *= inv_lead;
    int out_lowest = -lowest_;
    int out_trunc = truncated() ? out_lowest + prec : LaurentSeries::UNTRUNCATED;
    return LaurentSeries(out_lowest, std::move(inv), out_trunc);
}

LaurentSeries LaurentSeries::truncate(int new_truncation) const {
    if (new_truncation >= truncation_) return *this;
    LaurentSeries out = *this;
    out.truncation_ = new_truncation;
    int keep = new_truncation - out.lowest_;
    if (keep < 0) keep = 0;
    if (static_cast<int>(out.coeffs_.size()) > keep) out.coeffs_.resize(static_cast<size_t>(keep));
    out.normalize();
    return out;
}

LaurentSeries exp_series(const Polynomial& arg, int truncation) {
    if (truncation < 1) throw InputError("exp_series: truncation must be >= 1");
    std::vector<Polynomial> cs(static_cast<size_t>(truncation));
    cs[0] = Polynomial::constant(arg.vars(), 1);
    Polynomial power = cs[0];
    Rational fact = 1;
    for (int m = 1; m < truncation; ++m) {
        power *= arg;
        fact *= Rational(m);
        Polynomial c = power;
        c *= Rational(1) / fact;
        cs[static_cast<size_t>(m)] = std::move(c);
    }
    return LaurentSeries(0, std::move(cs), truncation);
}

LaurentSeries one_over_one_minus_exp_neg(const Rational& alpha, int truncation,
                                         const std::vector<std::string>& ctx) {
    if (sgn(alpha) == 0) throw CaseDataError("zero cotangent weight in localization data");
    // s = 1 - exp(-alpha eps) = alpha eps - alpha^2 eps^2/2 + alpha^3 eps^3/6 - ...
    // represented from order 1 with enough terms that 1/s is exact below `truncation`
    int terms = truncation + 2; // orders 1 .. terms
    std::vector<Polynomial> cs(static_cast<size_t>(terms));
    Rational p = 1;
    Rational fact = 1;
    for (int m = 1; m <= terms; ++m) {
        p *= -alpha;
        fact *= Rational(m);
        Rational coeff = -p / fact; // -(-alpha)^m/m!
        cs[static_cast<size_t>(m - 1)] = Polynomial::constant(ctx, coeff);
    }
    LaurentSeries s(1, std::move(cs), terms + 1);
    return s.inverse().truncate(truncation);
}

} // namespace kstab
