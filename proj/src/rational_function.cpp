#include "kstab/rational_function.hpp"

namespace kstab {

RationalFunction::RationalFunction()
    : num_(), den_(Polynomial::constant({}, 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InputError("rational function with zero denominator");
    reduce();
}

RationalFunction RationalFunction::from_polynomial(Polynomial p) {
    Polynomial one = Polynomial::constant(p.vars(), 1);
    return RationalFunction(std::move(p), std::move(one));
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(den_.vars(), 1);
        return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
        auto qn = try_divide(num_, g);
        auto qd = try_divide(den_, g);
        if (!qn || !qd) throw CaseDataError("reduce: gcd does not divide");
        num_ = *qn;
        den_ = *qd;
    }
    // scale so den has coprime integer coefficients and positive lead
    Rational c = den_.content();
    if (sgn(den_.leading_coefficient()) < 0) c = -c;
    Rational inv = Rational(1) / c;
    den_ *= inv;
    num_ *= inv;
}

Polynomial RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw InputError("as_polynomial on a proper quotient");
    Polynomial p = num_;
    p *= Rational(1) / den_.constant_value();
    return p;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw InputError("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool RationalFunction::operator==(const RationalFunction& rhs) const {
    return (num_ * rhs.den_ - rhs.num_ * den_).is_zero();
}

RationalFunction RationalFunction::substitute(const std::map<std::string, Polynomial>& repl) const {
    Polynomial n = num_.substitute(repl);
    Polynomial d = den_.substitute(repl);
    if (d.is_zero()) throw InputError("substitution makes denominator vanish identically");
    return RationalFunction(std::move(n), std::move(d));
}

Rational RationalFunction::eval(const std::map<std::string, Rational>& point) const {
    Rational d = den_.eval(point);
    if (sgn(d) == 0) throw InputError("rational function denominator vanishes at point");
    return num_.eval(point) / d;
}

std::string RationalFunction::str() const {
    if (is_polynomial()) return as_polynomial().str();
    std::string n = num_.str();
    std::string d = den_.str();
    return "(" + n + ") / (" + d + ")";
}

} // namespace kstab
