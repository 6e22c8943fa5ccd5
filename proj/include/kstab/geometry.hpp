#ifndef KSTAB_GEOMETRY_HPP
#define KSTAB_GEOMETRY_HPP

#include "kstab/rational_function.hpp"

#include <span>

namespace kstab {

// Divisor class over a fixed basis; one polynomial coefficient (in the case
// parameters, possibly u) per basis divisor.
struct DivisorClass {
    std::vector<Polynomial> coeffs;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Polynomial> c) : coeffs(std::move(c)) {}

    DivisorClass operator+(const DivisorClass& rhs) const;
    DivisorClass operator-(const DivisorClass& rhs) const;
    DivisorClass scaled(const Polynomial& s) const;
};

// Curve class as its pairing row against the divisor basis.
struct CurveClass {
    std::string name;
    std::vector<Rational> pairings;
};

// Symmetric n-linear intersection form, n in {2, 3}; entries keyed by
// sorted basis-index tuples, absent entries are zero.
class IntersectionForm {
public:
    IntersectionForm() = default;
    IntersectionForm(int dim, std::vector<std::string> basis);

    int dim() const { return dim_; }
    const std::vector<std::string>& basis() const { return basis_; }
    int basis_index(const std::string& name) const; // -1 if unknown

    void set_entry(std::vector<int> idx, const Rational& value); // idx sorted internally
    Rational entry(std::vector<int> idx) const;

    // Full multilinear expansion of the n given classes.
    Polynomial intersect(std::span<const DivisorClass> classes) const;
    Polynomial power(const DivisorClass& d) const; // d^n
    // d^(n-1) . e
    Polynomial power_times(const DivisorClass& d, const DivisorClass& e) const;

private:
    int dim_ = 0;
    std::vector<std::string> basis_;
    std::map<std::vector<int>, Rational> entries_;
};

Polynomial pair_curve(const DivisorClass& d, const CurveClass& c);

// mu = (-K_X . L^{n-1}) / L^n; InputError when L^n is identically zero.
RationalFunction slope_mu(const IntersectionForm& form, const DivisorClass& canonical,
                          const DivisorClass& polarization);

} // namespace kstab

#endif
