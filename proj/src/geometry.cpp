#include "kstab/geometry.hpp"
#include "kstab/linear_form.hpp"

#include <algorithm>

namespace kstab {

Polynomial integrate_over_interval(const Polynomial& p, const std::string& var,
                                   const LinearForm& lo, const LinearForm& hi) {
    Polynomial anti = p.antiderivative(var);
    Polynomial at_hi = anti.substitute({{var, hi.poly()}});
    Polynomial at_lo = anti.substitute({{var, lo.poly()}});
    return at_hi - at_lo;
}

DivisorClass DivisorClass::operator+(const DivisorClass& rhs) const {
    if (coeffs.size() != rhs.coeffs.size()) throw CaseDataError("divisor class basis mismatch");
    DivisorClass out;
    out.coeffs.reserve(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs.push_back(coeffs[i] + rhs.coeffs[i]);
    return out;
}

DivisorClass DivisorClass::operator-(const DivisorClass& rhs) const {
    if (coeffs.size() != rhs.coeffs.size()) throw CaseDataError("divisor class basis mismatch");
    DivisorClass out;
    out.coeffs.reserve(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs.push_back(coeffs[i] - rhs.coeffs[i]);
    return out;
}

DivisorClass DivisorClass::scaled(const Polynomial& s) const {
    DivisorClass out;
    out.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) out.coeffs.push_back(c * s);
    return out;
}

IntersectionForm::IntersectionForm(int dim, std::vector<std::string> basis)
    : dim_(dim), basis_(std::move(basis)) {
    if (dim_ != 2 && dim_ != 3) throw CaseDataError("intersection form dimension must be 2 or 3");
    for (size_t i = 0; i < basis_.size(); ++i)
        for (size_t j = i + 1; j < basis_.size(); ++j)
            if (basis_[i] == basis_[j]) throw CaseDataError("duplicate basis divisor " + basis_[i]);
}

int IntersectionForm::basis_index(const std::string& name) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] == name) return static_cast<int>(i);
    return -1;
}

void IntersectionForm::set_entry(std::vector<int> idx, const Rational& value) {
    if (static_cast<int>(idx.size()) != dim_) throw CaseDataError("intersection entry arity mismatch");
    std::sort(idx.begin(), idx.end());
    if (sgn(value) == 0)
        entries_.erase(idx);
    else
        entries_[idx] = value;
}

Rational IntersectionForm::entry(std::vector<int> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? Rational(0) : it->second;
}

Polynomial IntersectionForm::intersect(std::span<const DivisorClass> classes) const {
    if (static_cast<int>(classes.size()) != dim_)
        throw InputError("intersect: class count differs from form dimension");
    for (const auto& d : classes)
        if (d.coeffs.size() != basis_.size())
            throw InputError("intersect: class/basis size mismatch");
    Polynomial total;
    for (const auto& [idx, val] : entries_) {
        // sum over distinct permutations of the sorted index tuple
        std::vector<int> perm = idx;
        do {
            Polynomial term = Polynomial::constant({}, val);
            for (size_t slot = 0; slot < perm.size(); ++slot)
                term *= classes[slot].coeffs[static_cast<size_t>(perm[slot])];
            total += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return total;
}

Polynomial IntersectionForm::power(const DivisorClass& d) const {
    std::vector<DivisorClass> v(static_cast<size_t>(dim_), d);
    return intersect(v);
}

Polynomial IntersectionForm::power_times(const DivisorClass& d, const DivisorClass& e) const {
    std::vector<DivisorClass> v(static_cast<size_t>(dim_ - 1), d);
    v.push_back(e);
    return intersect(v);
}

Polynomial pair_curve(const DivisorClass& d, const CurveClass& c) {
    if (d.coeffs.size() != c.pairings.size())
        throw InputError("pair_curve: basis mismatch for curve " + c.name);
    Polynomial out;
    for (size_t i = 0; i < d.coeffs.size(); ++i) out += d.coeffs[i] * c.pairings[i];
    return out;
}

RationalFunction slope_mu(const IntersectionForm& form, const DivisorClass& canonical,
                          const DivisorClass& polarization) {
    Polynomial ln = form.power(polarization);
    if (ln.is_zero()) throw InputError("slope_mu: degenerate polarization, L^n = 0");
    DivisorClass minus_k;
    for (const auto& c : canonical.coeffs) minus_k.coeffs.push_back(-c);
    Polynomial num = form.power_times(polarization, minus_k);
    return RationalFunction(num, ln);
}

} // namespace kstab
