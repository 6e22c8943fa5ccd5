#ifndef KSTAB_LINEAR_FORM_HPP
#define KSTAB_LINEAR_FORM_HPP

#include "kstab/polynomial.hpp"

namespace kstab {

// Affine-linear expression in the parameter variables.  Chamber walls and
// pseudo-effective thresholds are linear forms; they never mention the
// integration variable u or the deformation variable t.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(Polynomial p) : poly_(std::move(p)) {
        if (poly_.total_degree() > 1)
            throw CaseDataError("linear form of degree > 1: " + poly_.str());
        if (poly_.mentions("u") || poly_.mentions("t"))
            throw CaseDataError("linear form mentions a reserved variable: " + poly_.str());
    }

    const Polynomial& poly() const { return poly_; }
    bool operator==(const LinearForm& rhs) const { return poly_ == rhs.poly_; }
    std::string str() const { return poly_.str(); }

private:
    Polynomial poly_;
};

// Definite integral of p du over [lo, hi]: exact antiderivative composed
// with the bounds by polynomial substitution.
Polynomial integrate_over_interval(const Polynomial& p, const std::string& var,
                                   const LinearForm& lo, const LinearForm& hi);

} // namespace kstab

#endif
