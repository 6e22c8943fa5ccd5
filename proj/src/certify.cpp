#include "kstab/certify.hpp"

#include <algorithm>
#include <sstream>

namespace kstab {

void Substitution::validate_triangular() const {
    // assignments apply in order; a right side may only mention variables
    // still alive at that point (later-substituted or retained ones)
    for (size_t i = 0; i < assignments.size(); ++i)
        for (size_t j = 0; j <= i; ++j)
            if (assignments[i].second.mentions(assignments[j].first))
                throw CaseDataError("substitution is not triangular: rhs of " +
                                    assignments[i].first + " mentions " + assignments[j].first);
}

Polynomial Substitution::apply(const Polynomial& p) const {
    validate_triangular();
    Polynomial out = p;
    for (const auto& [var, image] : assignments)
        out = out.substitute({{var, image}});
    return out;
}

Certificate certify_orthant(const Polynomial& p, const std::set<std::string>& strict_vars) {
    Certificate cert;
    cert.witness = p;
    if (!p.all_coefficients_nonnegative()) return cert; // inconclusive
    cert.status = CertStatus::nonnegative;
    const auto& vars = p.vars();
    for (const auto& [m, c] : p.terms()) {
        if (sgn(c) <= 0) continue;
        bool only_strict = true;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && !strict_vars.count(vars[i])) only_strict = false;
        if (only_strict) {
            cert.status = CertStatus::positive;
            cert.strictness_witness = m;
            std::ostringstream os;
            os << rational_str(c);
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << "*" << vars[i];
                if (m[i] > 1) os << "^" << m[i];
            }
            cert.strictness_witness_str = os.str();
            break;
        }
    }
    return cert;
}

Certificate certify_on_region(const Polynomial& p, const Substitution& sub,
                              const std::set<std::string>& strict_vars) {
    return certify_orthant(sub.apply(p), strict_vars);
}

} // namespace kstab
