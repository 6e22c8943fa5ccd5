#ifndef KSTAB_CASEBOOK_HPP
#define KSTAB_CASEBOOK_HPP

#include "kstab/certify.hpp"
#include "kstab/localization.hpp"
#include "kstab/zariski.hpp"

#include <optional>

namespace kstab {

struct DivisorEntry {
    std::string name;
    DivisorClass cls;
    Rational log_discrepancy = 1;
    std::vector<Schedule> schedules; // one per region branch
};

// A golden beta value, possibly restricted to a region branch.  When the
// printed formula in the source differs from the verified value by an exact
// factor, the display and the factor are recorded so the discrepancy itself
// is machine-checked.
struct BetaGolden {
    std::vector<std::string> region_texts;
    std::vector<Inequality> region;
    RationalFunction value;
    // When the printed formula differs from the verified value, the print and
    // the exact gap (display == value + gap) are recorded and machine-checked.
    std::optional<RationalFunction> printed_display;
    std::optional<RationalFunction> printed_display_gap;
    std::string erratum;
};

struct IdentitySpec {
    std::string name;
    Polynomial lhs, rhs;
    std::map<std::string, Polynomial> substitute; // applied to both sides first
};

struct CertificateSpec {
    std::string name;
    Polynomial target;
    Substitution substitution;
    std::set<std::string> strict;
    std::vector<std::string> region_texts;
    std::optional<Polynomial> expected_expansion;
};

struct VerdictBranch {
    std::vector<std::string> region_texts;
    std::vector<Inequality> region;
    std::vector<std::string> witnesses;
    std::vector<std::string> certificates;
};

struct SpotCheck {
    std::string target; // "beta:<divisor>", "beta_adjoint", "df", "mu", "Ln"
    std::map<std::string, Rational> at;
    Rational value;
    std::string note;
};

struct WallCheck {
    std::string divisor;
    std::map<std::string, Polynomial> substitute; // wall identification, e.g. a := c
};

// Data for the adjoint shortcut beta_L(F) = 1 + b + phi(b) Int vol(-K - uF).
struct AdjointSpec {
    std::string divisor;
    std::string b_symbol;
    Rational b_lo, b_hi; // open range of b for which L = -K + bF is ample
    std::map<std::string, Polynomial> identification; // general-route vars in terms of b
    Schedule anticanonical_schedule; // chambers of -K - uF; first lo may be negative
    RationalFunction expected_phi;
    RationalFunction expected_beta;
};

struct InternalPullback {
    std::string divisor;
    std::map<std::string, Polynomial> specialization;
    RationalFunction expected;
};

struct CaseSpec {
    std::string id;
    std::string source; // section label in the source material
    std::string description;
    std::string mechanism; // beta | beta-pullback | localization | degeneration
    int dim = 0;
    std::vector<std::string> variables;

    Geometry geometry;
    std::string tensor_provenance; // "printed" or "reconstructed"
    std::map<std::string, DivisorEntry> divisors;
    std::map<std::string, Polynomial> named; // named polynomials (f1, g, Delta, ...)

    Polynomial expected_Ln;
    RationalFunction expected_mu;
    std::map<std::string, std::vector<BetaGolden>> expected_beta;

    std::optional<LocalizationData> localization;
    RationalFunction expected_df;
    std::optional<RationalFunction> expected_df_display, expected_df_gap;
    std::string df_erratum;
    Polynomial expected_b0, expected_b1, expected_a0, expected_a1;
    bool has_expected_b0b1 = false; // b0, b1 are not printed for every family

    std::vector<IdentitySpec> identities;
    std::vector<CertificateSpec> certificates;
    std::vector<VerdictBranch> verdict_branches;
    std::optional<std::pair<std::string, std::string>> symmetry_swap;
    std::vector<SpotCheck> spots;
    std::vector<WallCheck> wall_checks;
    std::optional<AdjointSpec> adjoint;
    std::vector<InternalPullback> internal_pullbacks;

    // beta-pullback cases
    std::string parent;
    std::map<std::string, Polynomial> specialization;
    std::string witness_divisor;

    bool has_geometry() const { return mechanism != "degeneration"; }
    const CertificateSpec& certificate(const std::string& name) const;
};

// Loads and fully validates one case document; throws CaseDataError /
// InputError with a location on any defect.  Geometry gates: the stored
// intersection tensor must reproduce the expected L^n and mu exactly.
CaseSpec load_case_file(const std::string& path);
CaseSpec load_case_json(const std::string& json_text, const std::string& where);

// Serializes a loaded case back to a document; reloading yields a
// semantically identical case (see semantically_equal).
std::string serialize_case(const CaseSpec& spec);
bool semantically_equal(const CaseSpec& a, const CaseSpec& b);

struct ManifestEntry {
    std::string id;
    std::string section;
    std::string mechanism;
    std::string parent;         // pullback cases
    std::string specialization; // human-readable, e.g. "b := 0"
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    const ManifestEntry* find(const std::string& id) const;
};

// The fixed table of all 26 families (25 threefold families plus the del
// Pezzo surface example).
const Manifest& manifest();

// Case documents live one-per-file under a cases/ directory.
std::string default_cases_dir();
std::string case_path(const std::string& dir, const std::string& id);

} // namespace kstab

#endif
