#ifndef KSTAB_LOCALIZATION_HPP
#define KSTAB_LOCALIZATION_HPP

#include "kstab/laurent.hpp"
#include "kstab/rational_function.hpp"

namespace kstab {

// One isolated fixed point of the torus action: cotangent weights and the
// fiber weight of each linearized bundle.
struct FixedPoint {
    std::string name;
    std::vector<long> alphas;        // n nonzero integers
    std::map<std::string, long> mu;  // per-bundle fiber weight
};

struct LocalizationData {
    std::vector<std::string> bundles;
    std::vector<FixedPoint> fixed_points;
    // L as a combination of the bundles, coefficients polynomial in the
    // case parameters; mu_L(P) is the matching combination of fiber weights.
    std::map<std::string, Polynomial> polarization_weights;

    Polynomial mu_L(const FixedPoint& p) const;
    void validate(int dim) const; // arity and nonzero-alpha checks
};

// Closed forms of the weight expansion for threefolds:
//   b0 = sum mu^4 / (24 a1 a2 a3),  b1 = sum mu^3 (a1+a2+a3) / (12 a1 a2 a3).
std::pair<Polynomial, Polynomial> b0_b1_closed(const LocalizationData& data);

struct CharacterExpansion {
    Polynomial h;     // eps^0 coefficient, polynomial in k (degree n)
    Polynomial w;     // eps^1 coefficient, polynomial in k (degree n+1)
    bool pole_check;  // eps^{-n}..eps^{-1} coefficients vanish identically
    std::vector<Polynomial> pole_coefficients; // for diagnostics
};

// Independent oracle: expand sum_P exp(k mu_L(P) eps) / prod_j (1 - exp(-a_j eps))
// from eps^{-n} through eps^1 with exact rational Taylor coefficients.
CharacterExpansion character_series_oracle(const LocalizationData& data, int dim, int truncation);

struct DFResult {
    Polynomial a0, a1, b0, b1;
    RationalFunction df;
    bool oracle_agreement = false;
};

// df = (b0 a1 - b1 a0) / a0, reduced; a0, a1 supplied from geometry
// (L^3/6 and (-K . L^2)/4) or from the series oracle.
DFResult df_invariant(const LocalizationData& data, const Polynomial& a0, const Polynomial& a1,
                      int dim, int truncation);

} // namespace kstab

#endif
