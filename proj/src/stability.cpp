#include "kstab/stability.hpp"

namespace kstab {

namespace {

Polynomial integrate_pieces(const PiecewiseVolume& vol, const Schedule& schedule) {
    Polynomial total;
    for (size_t i = 0; i < schedule.chambers.size(); ++i)
        total += integrate_over_interval(vol.pieces[i], "u", schedule.chambers[i].lo,
                                         schedule.chambers[i].hi);
    return total;
}

} // namespace

RationalFunction beta_for_schedule(const CaseSpec& spec, const std::string& divisor,
                                   const Schedule& schedule) {
    const Geometry& geo = spec.geometry;
    const DivisorEntry& entry = spec.divisors.at(divisor);
    ValidationReport rep = validate_schedule(geo, geo.polarization, entry.cls, schedule);
    if (!rep.ok())
        throw CaseDataError("case " + spec.id + ", divisor " + divisor +
                            ": schedule failed validation:\n" + rep.summary());
    if (!schedule.chambers.front().lo.poly().is_zero())
        throw CaseDataError("case " + spec.id + ", divisor " + divisor +
                            ": beta integration requires the schedule to start at u = 0");

    PiecewiseVolume vol = volume_piecewise(geo, geo.polarization, entry.cls, schedule);
    PiecewiseVolume dvol = volume_t_derivative(geo, geo.polarization, entry.cls, schedule);
    Polynomial v = integrate_pieces(vol, schedule);
    Polynomial w = integrate_pieces(dvol, schedule);

    int n = geo.form.dim();
    Polynomial ln = geo.form.power(geo.polarization);
    DivisorClass minus_k;
    for (const auto& c : geo.canonical.coeffs) minus_k.coeffs.push_back(-c);
    Polynomial knum = geo.form.power_times(geo.polarization, minus_k); // (-K).L^{n-1}

    // A + (n mu / L^n) V + (1/L^n) W  with mu = knum / L^n
    Polynomial num = Polynomial::constant({}, entry.log_discrepancy) * ln * ln +
                     Polynomial::constant({}, Rational(n)) * knum * v + ln * w;
    return RationalFunction(num, ln * ln);
}

std::vector<BetaResult> beta_general(const CaseSpec& spec, const std::string& divisor) {
    auto it = spec.divisors.find(divisor);
    if (it == spec.divisors.end())
        throw InputError("case " + spec.id + ": unknown divisor '" + divisor + "'");
    if (it->second.schedules.empty())
        throw InputError("case " + spec.id + ": divisor '" + divisor + "' has no schedule");
    std::vector<BetaResult> out;
    for (const auto& sch : it->second.schedules) {
        BetaResult r;
        r.divisor = divisor;
        for (const auto& iq : sch.region) {
            r.region.push_back(iq);
            r.region_texts.push_back(iq.text);
        }
        r.value = beta_for_schedule(spec, divisor, sch);
        out.push_back(std::move(r));
    }
    return out;
}

AdjointResult beta_adjoint(const CaseSpec& spec) {
    if (!spec.adjoint) throw InputError("case " + spec.id + " has no adjoint data");
    const AdjointSpec& adj = *spec.adjoint;
    const Geometry& geo = spec.geometry;
    const std::string& b = adj.b_symbol;
    std::vector<std::string> bctx{b};
    Polynomial bpoly = Polynomial::variable(bctx, b);

    // L_b = -K + b F, coefficients polynomial in b
    const DivisorClass& f = geo.divisor(adj.divisor);
    DivisorClass minus_k;
    for (const auto& c : geo.canonical.coeffs) minus_k.coeffs.push_back(-c);
    DivisorClass lb = minus_k + f.scaled(bpoly);

    int n = geo.form.dim();
    Polynomial lb_n = geo.form.power(lb);
    DivisorClass l_plus_nbf = lb + f.scaled(bpoly * Rational(n));
    Polynomial phi_num = -geo.form.power_times(lb, l_plus_nbf);
    AdjointResult out;
    out.phi = RationalFunction(phi_num, lb_n * lb_n);

    // vol(-K - uF) pieces from the anticanonical schedule
    const Schedule& sch = adj.anticanonical_schedule;
    ValidationReport rep = validate_schedule(geo, minus_k, f, sch);
    if (!rep.ok())
        throw CaseDataError("case " + spec.id + ": anticanonical schedule failed validation:\n" +
                            rep.summary());
    out.anticanonical_vol = volume_piecewise(geo, minus_k, f, sch);

    // The lower bound -b lies in the first chamber for every b in the
    // declared range; check the range endpoints against the chamber walls.
    const LinearForm lower{-bpoly};
    {
        std::map<std::string, Rational> at_lo{{b, adj.b_lo}}, at_hi{{b, adj.b_hi}};
        Rational lo0 = sch.chambers.front().lo.poly().is_zero()
                           ? Rational(0)
                           : sch.chambers.front().lo.poly().eval({});
        Rational hi0 = sch.chambers.front().hi.poly().eval({});
        for (const auto& pt : {at_lo, at_hi}) {
            Rational lb_val = lower.poly().eval(pt);
            if (lb_val < lo0 || lb_val > hi0)
                throw CaseDataError("case " + spec.id +
                                    ": adjoint lower bound leaves the first chamber on the declared range");
        }
    }

    Polynomial integral = integrate_over_interval(out.anticanonical_vol.pieces.front(), "u", lower,
                                                  sch.chambers.front().hi);
    for (size_t i = 1; i < sch.chambers.size(); ++i)
        integral += integrate_over_interval(out.anticanonical_vol.pieces[i], "u",
                                            sch.chambers[i].lo, sch.chambers[i].hi);

    RationalFunction one_plus_b = RationalFunction::from_polynomial(
        Polynomial::constant(bctx, 1) + bpoly);
    out.beta = one_plus_b + out.phi * RationalFunction::from_polynomial(integral);
    return out;
}

bool beta_crosscheck_adjoint(const CaseSpec& spec, std::string* detail) {
    const AdjointSpec& adj = *spec.adjoint;
    AdjointResult adjres = beta_adjoint(spec);
    std::vector<BetaResult> gen = beta_general(spec, adj.divisor);
    RationalFunction identified = gen.front().value.substitute(adj.identification);
    if (identified == adjres.beta) return true;
    if (detail) {
        RationalFunction diff = identified - adjres.beta;
        *detail = "general-route minus adjoint-route = " + diff.str();
    }
    return false;
}

bool pullback_specialize(const RationalFunction& parent_beta,
                         const std::map<std::string, Polynomial>& specialization,
                         const RationalFunction& expected, std::string* detail) {
    RationalFunction specialized = parent_beta.substitute(specialization);
    if (specialized == expected) return true;
    if (detail) *detail = "specialized minus expected = " + (specialized - expected).str();
    return false;
}

bool rescaling_invariant(const RationalFunction& beta, const std::vector<std::string>& params) {
    std::string lam = "lam_";
    std::vector<std::string> ctx = params;
    ctx.push_back(lam);
    Polynomial l = Polynomial::variable(ctx, lam);
    std::map<std::string, Polynomial> repl;
    for (const auto& v : params) repl[v] = Polynomial::variable(ctx, v) * l;
    return beta.substitute(repl) == beta;
}

FamilyVerdict family_verdict(const CaseSpec& spec, const std::map<std::string, Certificate>& certs) {
    FamilyVerdict out;
    out.id = spec.id;
    if (spec.mechanism == "degeneration") {
        out.verdict = VERDICT_DEGENERATION;
        out.conclusive = true;
        return out;
    }
    if (spec.verdict_branches.empty()) {
        out.verdict = VERDICT_INCONCLUSIVE;
        return out;
    }
    bool all_positive = true;
    for (const auto& branch : spec.verdict_branches) {
        for (const auto& cname : branch.certificates) {
            auto it = certs.find(cname);
            if (it == certs.end() || !it->second.is_positive()) {
                all_positive = false;
                break;
            }
        }
        for (const auto& w : branch.witnesses)
            if (std::find(out.witnesses.begin(), out.witnesses.end(), w) == out.witnesses.end())
                out.witnesses.push_back(w);
    }
    out.conclusive = all_positive;
    out.verdict = all_positive ? VERDICT_UNSTABLE : VERDICT_INCONCLUSIVE;
    return out;
}

} // namespace kstab
