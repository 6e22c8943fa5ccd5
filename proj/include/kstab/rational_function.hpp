#ifndef KSTAB_RATIONAL_FUNCTION_HPP
#define KSTAB_RATIONAL_FUNCTION_HPP

#include "kstab/polynomial.hpp"

namespace kstab {

// Quotient of polynomials kept in reduced form: numerator and denominator
// share no nonconstant factor, the denominator has coprime integer
// coefficients and positive leading coefficient under graded lex.
class RationalFunction {
public:
    RationalFunction(); // 0/1
    RationalFunction(Polynomial num, Polynomial den); // reduces; den must be nonzero
    static RationalFunction from_polynomial(Polynomial p);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Requires is_polynomial().
    Polynomial as_polynomial() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    // Decidable equality via cross-multiplication.
    bool operator==(const RationalFunction& rhs) const;
    bool operator!=(const RationalFunction& rhs) const { return !(*this == rhs); }

    RationalFunction substitute(const std::map<std::string, Polynomial>& repl) const;
    Rational eval(const std::map<std::string, Rational>& point) const; // InputError if den vanishes

    std::string str() const;

private:
    Polynomial num_, den_;
    void reduce();
};

} // namespace kstab

#endif
