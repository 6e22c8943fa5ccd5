#ifndef KSTAB_STABILITY_HPP
#define KSTAB_STABILITY_HPP

#include "kstab/casebook.hpp"

namespace kstab {

enum class BetaVerdict { k_unstable, inconclusive };

struct BetaResult {
    std::string divisor;
    std::vector<std::string> region_texts;
    std::vector<Inequality> region;
    RationalFunction value;
    std::optional<Certificate> sign_certificate; // proves -value > 0 on the region
    BetaVerdict verdict = BetaVerdict::inconclusive;
};

// beta_L(F) = A_X(F) + (n mu / L^n) Int vol(L - uF) du + (1/L^n) Int dvol/dt du,
// integrated chamber-wise from 0 to the pseudo-effective threshold.
// One result per region branch of the divisor's schedule.
std::vector<BetaResult> beta_general(const CaseSpec& spec, const std::string& divisor);

// Computes beta for one validated schedule (exposed for tests).
RationalFunction beta_for_schedule(const CaseSpec& spec, const std::string& divisor,
                                   const Schedule& schedule);

// Adjoint shortcut for L = -K_X + bF:
//   beta_L(F) = 1 + b + phi(b) Int_{-b}^{tau} vol(-K_X - uF) du,
//   phi(b) = -(L + n b F) . L^{n-1} / (L^n)^2.
struct AdjointResult {
    RationalFunction phi;
    RationalFunction beta; // rational function in the b symbol
    PiecewiseVolume anticanonical_vol;
};
AdjointResult beta_adjoint(const CaseSpec& spec);

// Cross-path identity: the general-route beta, specialized through the
// case's variable identification, must equal the adjoint-route beta.
bool beta_crosscheck_adjoint(const CaseSpec& spec, std::string* detail = nullptr);

// Substitutes the specialization into a parent beta and compares with the
// expected reduced formula; mismatch carries the difference in *detail.
bool pullback_specialize(const RationalFunction& parent_beta,
                         const std::map<std::string, Polynomial>& specialization,
                         const RationalFunction& expected, std::string* detail = nullptr);

// Rescaling invariance: substituting v -> lam * v for every parameter leaves
// beta unchanged as a rational function.
bool rescaling_invariant(const RationalFunction& beta, const std::vector<std::string>& params);

struct FamilyVerdict {
    std::string id;
    std::string verdict;  // fixed enumeration, see below
    std::vector<std::string> witnesses;
    bool conclusive = false;
};

inline const char* VERDICT_UNSTABLE = "K-unstable for every ample L";
inline const char* VERDICT_DEGENERATION =
    "not K-polystable for every ample L (degeneration, not computed)";
inline const char* VERDICT_INCONCLUSIVE = "inconclusive";

// Assembles the family verdict from per-branch certificates; inconclusive
// certificates yield an explicit inconclusive verdict, never a silent pass.
FamilyVerdict family_verdict(const CaseSpec& spec, const std::map<std::string, Certificate>& certs);

} // namespace kstab

#endif
