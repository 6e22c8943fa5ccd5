#ifndef KSTAB_CERTIFY_HPP
#define KSTAB_CERTIFY_HPP

#include "kstab/polynomial.hpp"

#include <set>

namespace kstab {

// Triangular affine substitution: each right side only uses variables that
// are retained or already introduced (e.g. a -> c + eps with eps >= 0 new).
struct Substitution {
    std::vector<std::pair<std::string, Polynomial>> assignments;

    void validate_triangular() const;
    Polynomial apply(const Polynomial& p) const;
};

enum class CertStatus { positive, nonnegative, inconclusive };

// Orthant-positivity certificate by coefficient inspection.  status ==
// positive requires every coefficient nonnegative plus a witness monomial
// with positive coefficient supported only on strictly-positive variables.
// Inconclusive is the sound fallback, never a guess.
struct Certificate {
    CertStatus status = CertStatus::inconclusive;
    Polynomial witness;                 // the (substituted) polynomial inspected
    std::optional<Mono> strictness_witness;
    std::string strictness_witness_str; // printable form of the witness monomial

    bool is_positive() const { return status == CertStatus::positive; }
};

Certificate certify_orthant(const Polynomial& p, const std::set<std::string>& strict_vars);

Certificate certify_on_region(const Polynomial& p, const Substitution& sub,
                              const std::set<std::string>& strict_vars);

} // namespace kstab

#endif
