#ifndef KSTAB_ZARISKI_HPP
#define KSTAB_ZARISKI_HPP

#include "kstab/geometry.hpp"
#include "kstab/linear_form.hpp"

#include <optional>

namespace kstab {

// Linear inequality among parameters, normalized as poly >= 0.
struct Inequality {
    std::string text;
    Polynomial nonneg; // the inequality asserts nonneg >= 0

    bool holds_at(const std::map<std::string, Rational>& point) const {
        return sgn(nonneg.eval(point)) >= 0;
    }
};

Inequality parse_inequality(const std::string& text, const std::vector<std::string>& vars);

// One Zariski chamber of L - uF: u-interval with linear-form walls, the
// divisorial support of the negative part, and one orthogonality curve per
// support divisor (the covering-curve classes the positive part must kill).
struct Chamber {
    LinearForm lo, hi;
    std::vector<std::string> negative_support;
    std::vector<std::string> orthogonality;
    std::optional<std::string> expected_vol;      // golden piece, if displayed
    std::optional<std::string> expected_vol_dt;   // golden t-derivative piece
};

struct Schedule {
    std::vector<Inequality> region; // empty = whole positive orthant
    std::vector<Chamber> chambers;
    const LinearForm& threshold() const { return chambers.back().hi; }
};

// Everything the decomposition needs to know about one case's geometry.
struct Geometry {
    IntersectionForm form;
    std::map<std::string, DivisorClass> named_divisors; // basis + extracted divisors
    std::map<std::string, CurveClass> curves;
    DivisorClass canonical;    // K_X
    DivisorClass polarization; // L, coefficients in the parameters

    const DivisorClass& divisor(const std::string& name) const;
    const CurveClass& curve(const std::string& name) const;
};

struct Decomposition {
    DivisorClass positive;
    DivisorClass negative;
    std::vector<Polynomial> gammas; // aligned with chamber.negative_support
};

// Solves (D - sum_i gamma_i N_i) . C_j = 0 for the chamber's support and
// orthogonality curves; CaseDataError if the pairing matrix is singular.
Decomposition decompose_in_chamber(const Geometry& geo, const DivisorClass& d, const Chamber& ch);

struct PiecewiseVolume {
    std::vector<Polynomial> pieces; // aligned with schedule chambers, in u and parameters
};

// vol(L - uF) per chamber as P^n of the chamber's positive part.
PiecewiseVolume volume_piecewise(const Geometry& geo, const DivisorClass& polarization,
                                 const DivisorClass& f, const Schedule& schedule);

// d/dt vol(L + tK - uF) at t = 0 per chamber: n P^{n-1} . (K - sum gamma_i(K) N_i).
PiecewiseVolume volume_t_derivative(const Geometry& geo, const DivisorClass& polarization,
                                    const DivisorClass& f, const Schedule& schedule);

struct ValidationIssue {
    std::string where;
    std::string detail; // includes the nonzero difference polynomial
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

// Checks, as exact polynomial identities: chambers abut; volume is C^0 and
// C^1 across interior walls; vol at the threshold is zero; vol at u = 0
// equals L^n when the schedule starts at 0; new negative-part coefficients
// vanish at the wall where their divisor enters the support.
ValidationReport validate_schedule(const Geometry& geo, const DivisorClass& polarization,
                                   const DivisorClass& f, const Schedule& schedule);

} // namespace kstab

#endif
