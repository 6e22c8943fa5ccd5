#include "kstab/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace kstab {

namespace {

void add(CaseRunResult& out, const std::string& name, bool pass, const std::string& detail = "") {
    out.checks.push_back(Check{name, pass, detail});
}

// Deterministic parameter points with coordinates in {1, 2, 1/2}.
std::vector<std::map<std::string, Rational>> sample_points(const std::vector<std::string>& vars,
                                                           const std::vector<Inequality>& region,
                                                           size_t want) {
    static const Rational values[3] = {Rational(1), Rational(2), Rational(1, 2)};
    std::vector<std::map<std::string, Rational>> out;
    size_t n = vars.size();
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) total *= 3;
    for (size_t code = 0; code < total && out.size() < want; ++code) {
        std::map<std::string, Rational> pt;
        size_t c = code;
        for (size_t i = 0; i < n; ++i) {
            pt[vars[i]] = values[c % 3];
            c /= 3;
        }
        bool okpt = true;
        for (const auto& iq : region)
            if (!iq.holds_at(pt)) okpt = false;
        if (okpt) out.push_back(std::move(pt));
    }
    return out;
}

Rational eval_piecewise(const PiecewiseVolume& vol, const Schedule& sch,
                        const std::map<std::string, Rational>& pt, const Rational& u) {
    for (size_t i = 0; i < sch.chambers.size(); ++i) {
        Rational lo = sch.chambers[i].lo.poly().eval(pt);
        Rational hi = sch.chambers[i].hi.poly().eval(pt);
        if (u >= lo && u <= hi) {
            auto full = pt;
            full["u"] = u;
            return vol.pieces[i].eval(full);
        }
    }
    return 0; // beyond the threshold
}

std::string region_label(const std::vector<std::string>& texts) {
    if (texts.empty()) return "";
    std::string out = " [";
    for (size_t i = 0; i < texts.size(); ++i) {
        if (i) out += ", ";
        out += texts[i];
    }
    return out + "]";
}

} // namespace

Runner::Runner(std::string cases_dir) : dir_(std::move(cases_dir)) {}

const CaseSpec& Runner::get_case(const std::string& id) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(id);
    if (it != cache_.end()) return it->second;
    if (!manifest().find(id)) throw InputError("unknown case id '" + id + "'");
    CaseSpec spec = load_case_file(case_path(dir_, id));
    if (spec.id != id) throw CaseDataError("case file id mismatch for " + id);
    return cache_.emplace(id, std::move(spec)).first->second;
}

std::map<std::string, Certificate> Runner::run_certificates(const CaseSpec& spec, CaseRunResult& out) {
    std::map<std::string, Certificate> certs;
    std::mt19937_64 rng(0x5eedULL); // fixed seed: deterministic soundness samples
    for (const auto& cs : spec.certificates) {
        Certificate cert = certify_on_region(cs.target, cs.substitution, cs.strict);
        certs[cs.name] = cert;
        add(out, "certificate " + cs.name + " positive", cert.is_positive(),
            cert.is_positive() ? "witness monomial " + cert.strictness_witness_str
                               : "coefficient inspection inconclusive");
        if (cs.expected_expansion) {
            Polynomial diff = cert.witness - *cs.expected_expansion;
            add(out, "certificate " + cs.name + " expansion matches display", diff.is_zero(),
                diff.is_zero() ? "" : "difference " + diff.str());
        }
        if (cert.is_positive()) {
            // soundness: 50 exact rational points in the region
            bool sound = true;
            std::string bad_pt;
            for (int trial = 0; trial < 50 && sound; ++trial) {
                std::map<std::string, Rational> pt;
                for (const auto& v : cert.witness.vars()) {
                    bool strict = cs.strict.count(v) > 0;
                    long num = static_cast<long>(rng() % 20) + (strict ? 1 : 0);
                    long den = static_cast<long>(rng() % 9) + 1;
                    Rational q(num, den);
                    q.canonicalize();
                    pt[v] = q;
                }
                if (sgn(cert.witness.eval(pt)) <= 0) {
                    sound = false;
                    bad_pt = "witness not positive at a sampled point";
                }
            }
            add(out, "certificate " + cs.name + " sound at 50 sampled points", sound, bad_pt);
        }
    }
    return certs;
}

void Runner::run_beta_case(const CaseSpec& spec, const std::string& only_divisor, CaseRunResult& out) {
    const Geometry& geo = spec.geometry;
    const int n = geo.form.dim();

    // homogeneity of L^n (degree n) and mu (degree -1) under a fresh scale
    {
        std::vector<std::string> ctx = spec.variables;
        ctx.push_back("lam_");
        Polynomial lam = Polynomial::variable(ctx, "lam_");
        std::map<std::string, Polynomial> scale;
        for (const auto& v : spec.variables) scale[v] = Polynomial::variable(ctx, v) * lam;
        Polynomial ln = geo.form.power(geo.polarization);
        Polynomial diff = ln.substitute(scale) - lam.pow(static_cast<unsigned>(n)) * ln;
        add(out, "L^n homogeneous of degree n", diff.is_zero(),
            diff.is_zero() ? "" : "difference " + diff.str());
        RationalFunction mu = slope_mu(geo.form, geo.canonical, geo.polarization);
        RationalFunction lhs = mu.substitute(scale) * RationalFunction::from_polynomial(lam);
        add(out, "mu homogeneous of degree -1", lhs == mu);
    }

    std::map<std::string, std::vector<BetaResult>> computed;
    for (const auto& [dname, entry] : spec.divisors) {
        if (!only_divisor.empty() && dname != only_divisor) continue;
        if (entry.schedules.empty()) continue;
        add(out, "log discrepancy A_X(" + dname + ") = 1", entry.log_discrepancy == 1);

        std::vector<BetaResult> results;
        const auto* goldens =
            spec.expected_beta.count(dname) ? &spec.expected_beta.at(dname) : nullptr;
        for (size_t si = 0; si < entry.schedules.size(); ++si) {
            const Schedule& sch = entry.schedules[si];
            std::string tag = dname + region_label([&] {
                std::vector<std::string> t;
                for (const auto& iq : sch.region) t.push_back(iq.text);
                return t;
            }());

            ValidationReport rep = validate_schedule(geo, geo.polarization, entry.cls, sch);
            add(out, "schedule well-formed: " + tag, rep.ok(), rep.summary());
            if (!rep.ok()) continue;

            PiecewiseVolume vol = volume_piecewise(geo, geo.polarization, entry.cls, sch);
            PiecewiseVolume dvol = volume_t_derivative(geo, geo.polarization, entry.cls, sch);
            for (size_t ci = 0; ci < sch.chambers.size(); ++ci) {
                const Chamber& ch = sch.chambers[ci];
                std::vector<std::string> uctx = spec.variables;
                uctx.push_back("u");
                if (ch.expected_vol) {
                    Polynomial expv = parse_polynomial(*ch.expected_vol, uctx);
                    Polynomial diff = vol.pieces[ci] - expv;
                    add(out, "vol piece matches display: " + tag + " chamber " + std::to_string(ci),
                        diff.is_zero(), diff.is_zero() ? "" : "difference " + diff.str());
                }
                if (ch.expected_vol_dt) {
                    Polynomial expv = parse_polynomial(*ch.expected_vol_dt, uctx);
                    Polynomial diff = dvol.pieces[ci] - expv;
                    add(out, "dvol/dt piece matches display: " + tag + " chamber " + std::to_string(ci),
                        diff.is_zero(), diff.is_zero() ? "" : "difference " + diff.str());
                }
            }

            BetaResult r;
            r.divisor = dname;
            for (const auto& iq : sch.region) {
                r.region.push_back(iq);
                r.region_texts.push_back(iq.text);
            }
            r.value = beta_for_schedule(spec, dname, sch);

            if (goldens) {
                if (si < goldens->size()) {
                    const BetaGolden& g = (*goldens)[si];
                    bool match = r.value == g.value;
                    add(out, "beta golden reproduces: " + tag, match,
                        match ? "" : "difference " + (r.value - g.value).str());
                    if (g.printed_display) {
                        RationalFunction sum = g.value + *g.printed_display_gap;
                        add(out, "erratum pinned (display = value + gap): " + tag,
                            sum == *g.printed_display, g.erratum);
                    }
                } else {
                    add(out, "beta golden present for branch: " + tag, false,
                        "no golden for schedule branch " + std::to_string(si));
                }
            }

            add(out, "beta rescaling-invariant: " + tag,
                rescaling_invariant(r.value, spec.variables));

            // sampled monotonicity of vol in u
            {
                auto pts = sample_points(spec.variables, sch.region, 10);
                bool mono = true;
                std::string where;
                for (const auto& pt : pts) {
                    Rational tau = sch.threshold().poly().eval(pt);
                    if (sgn(tau) <= 0) continue;
                    Rational prev;
                    for (int k = 0; k < 20; ++k) {
                        Rational step(k, 19);
                        step.canonicalize();
                        Rational u = tau * step;
                        Rational v = eval_piecewise(vol, sch, pt, u);
                        if (k > 0 && v > prev) {
                            mono = false;
                            where = "vol increases between samples " + std::to_string(k - 1) +
                                    " and " + std::to_string(k);
                        }
                        prev = v;
                    }
                }
                add(out, "vol nonincreasing on sampled grid: " + tag, mono, where);
            }

            results.push_back(std::move(r));
        }
        computed[dname] = std::move(results);
    }

    // symmetry coverage: the computed beta is invariant under the declared swap
    if (spec.symmetry_swap && only_divisor.empty()) {
        const auto& [x, y] = *spec.symmetry_swap;
        std::map<std::string, Polynomial> swap;
        swap[x] = Polynomial::variable(spec.variables, y);
        swap[y] = Polynomial::variable(spec.variables, x);
        for (const auto& [dname, results] : computed) {
            // single-branch formulas must extend to the swapped region by
            // symmetry; divisors with several region branches are covered by
            // the branches themselves
            if (results.size() != 1) continue;
            const RationalFunction& b = results.front().value;
            add(out, "beta symmetric under " + x + " <-> " + y + ": " + dname,
                b.substitute(swap) == b);
        }
    }

    // wall agreement between region branches
    for (const auto& wc : spec.wall_checks) {
        auto it = computed.find(wc.divisor);
        if (it == computed.end() || it->second.size() < 2) {
            add(out, "wall agreement: " + wc.divisor, false, "needs two region branches");
            continue;
        }
        RationalFunction a = it->second[0].value.substitute(wc.substitute);
        RationalFunction b = it->second[1].value.substitute(wc.substitute);
        add(out, "wall agreement: " + wc.divisor, a == b,
            a == b ? "" : "difference " + (a - b).str());
    }

    // exact identities among named polynomials
    for (const auto& id : spec.identities) {
        Polynomial lhs = id.substitute.empty() ? id.lhs : id.lhs.substitute(id.substitute);
        Polynomial rhs = id.substitute.empty() ? id.rhs : id.rhs.substitute(id.substitute);
        Polynomial diff = lhs - rhs;
        add(out, "identity " + id.name, diff.is_zero(),
            diff.is_zero() ? "" : "difference " + diff.str());
    }

    // adjoint route and the cross-path identity
    if (spec.adjoint && only_divisor.empty()) {
        AdjointResult adj = beta_adjoint(spec);
        const Schedule& asch = spec.adjoint->anticanonical_schedule;
        for (size_t ci = 0; ci < asch.chambers.size(); ++ci) {
            if (!asch.chambers[ci].expected_vol) continue;
            std::vector<std::string> uctx = spec.variables;
            uctx.push_back("u");
            Polynomial expv = parse_polynomial(*asch.chambers[ci].expected_vol, uctx);
            Polynomial diff = adj.anticanonical_vol.pieces[ci] - expv;
            add(out, "anticanonical vol piece matches display: chamber " + std::to_string(ci),
                diff.is_zero(), diff.is_zero() ? "" : "difference " + diff.str());
        }
        add(out, "phi matches display", adj.phi == spec.adjoint->expected_phi);
        bool bmatch = adj.beta == spec.adjoint->expected_beta;
        add(out, "adjoint beta matches display", bmatch,
            bmatch ? "" : "difference " + (adj.beta - spec.adjoint->expected_beta).str());
        std::string detail;
        bool cross = beta_crosscheck_adjoint(spec, &detail);
        add(out, "cross-path: beta_general == beta_adjoint", cross, detail);
    }

    // internal pullback reductions (the surface example)
    for (size_t i = 0; i < spec.internal_pullbacks.size(); ++i) {
        const auto& p = spec.internal_pullbacks[i];
        auto it = computed.find(p.divisor);
        if (it == computed.end() || it->second.empty()) {
            add(out, "internal pullback " + std::to_string(i), false, "divisor not computed");
            continue;
        }
        std::string detail;
        bool okp = pullback_specialize(it->second.front().value, p.specialization, p.expected, &detail);
        add(out, "internal pullback reduction of " + p.divisor, okp, detail);
    }

    // spot evaluations
    for (const auto& s : spec.spots) {
        if (s.target == "beta_adjoint") {
            AdjointResult adj = beta_adjoint(spec);
            Rational v = adj.beta.eval(s.at);
            add(out, "spot " + s.target + " = " + rational_str(s.value), v == s.value,
                v == s.value ? s.note : "got " + rational_str(v) + (s.note.empty() ? "" : "; " + s.note));
            continue;
        }
        if (s.target.rfind("beta:", 0) == 0) {
            std::string dname = s.target.substr(5);
            auto it = computed.find(dname);
            if (it == computed.end()) {
                add(out, "spot " + s.target, false, "divisor not computed");
                continue;
            }
            const BetaResult* chosen = nullptr;
            for (const auto& r : it->second) {
                bool inside = true;
                for (const auto& iq : r.region)
                    if (!iq.holds_at(s.at)) inside = false;
                if (inside) {
                    chosen = &r;
                    break;
                }
            }
            if (!chosen) {
                add(out, "spot " + s.target, false, "no region branch contains the point");
                continue;
            }
            Rational v = chosen->value.eval(s.at);
            add(out, "spot " + s.target + " = " + rational_str(s.value), v == s.value,
                v == s.value ? "" : "got " + rational_str(v));
            continue;
        }
        add(out, "spot " + s.target, false, "unknown spot target");
    }
}

void Runner::run_localization_case(const CaseSpec& spec, CaseRunResult& out) {
    const Geometry& geo = spec.geometry;
    Polynomial ln = geo.form.power(geo.polarization);
    DivisorClass minus_k;
    for (const auto& c : geo.canonical.coeffs) minus_k.coeffs.push_back(-c);
    Polynomial knum = geo.form.power_times(geo.polarization, minus_k);

    Polynomial a0 = ln * Rational(1, 6);
    Polynomial a1 = knum * Rational(1, 4);
    add(out, "a0 = L^3/6 matches display", a0 == spec.expected_a0,
        a0 == spec.expected_a0 ? "" : "difference " + (a0 - spec.expected_a0).str());
    add(out, "a1 = (-K.L^2)/4 matches display", a1 == spec.expected_a1,
        a1 == spec.expected_a1 ? "" : "difference " + (a1 - spec.expected_a1).str());

    DFResult df = df_invariant(*spec.localization, a0, a1, spec.dim, spec.dim + 4);
    if (spec.has_expected_b0b1) {
        add(out, "closed-form b0 matches display", df.b0 == spec.expected_b0,
            df.b0 == spec.expected_b0 ? "" : "difference " + (df.b0 - spec.expected_b0).str());
        add(out, "closed-form b1 matches display", df.b1 == spec.expected_b1,
            df.b1 == spec.expected_b1 ? "" : "difference " + (df.b1 - spec.expected_b1).str());
    }

    CharacterExpansion ch = character_series_oracle(*spec.localization, spec.dim, spec.dim + 4);
    add(out, "series oracle pole cancellation", ch.pole_check);
    add(out, "series oracle agrees with closed forms and geometry", df.oracle_agreement);
    add(out, "DF matches golden", df.df == spec.expected_df,
        df.df == spec.expected_df ? "" : "difference " + (df.df - spec.expected_df).str());
    if (spec.expected_df_display) {
        RationalFunction sum = spec.expected_df + *spec.expected_df_gap;
        add(out, "DF erratum pinned (display = value + gap)", sum == *spec.expected_df_display,
            spec.df_erratum);
    }

    for (const auto& s : spec.spots) {
        if (s.target != "df") {
            add(out, "spot " + s.target, false, "unknown spot target for localization case");
            continue;
        }
        Rational v = df.df.eval(s.at);
        add(out, "spot df = " + rational_str(s.value), v == s.value,
            v == s.value ? "" : "got " + rational_str(v));
    }
    out.formula = spec.expected_df.str();
    out.witness = "product test configuration (C^*-action)";
}

void Runner::run_pullback_case(const CaseSpec& spec, CaseRunResult& out) {
    const CaseSpec& parent = get_case(spec.parent);
    std::vector<BetaResult> parent_beta = beta_general(parent, spec.witness_divisor);
    const BetaGolden& golden = spec.expected_beta.at(spec.witness_divisor).front();

    std::string detail;
    bool okp = pullback_specialize(parent_beta.front().value, spec.specialization, golden.value,
                                   &detail);
    add(out, "pullback reduction reproduces the specialized formula", okp, detail);
    if (golden.printed_display) {
        RationalFunction sum = golden.value + *golden.printed_display_gap;
        add(out, "erratum pinned (display = value + gap)", sum == *golden.printed_display,
            golden.erratum);
    }
    add(out, "reduced beta rescaling-invariant",
        rescaling_invariant(golden.value, spec.variables));

    out.formula = golden.value.str();
    out.witness = spec.witness_divisor + " (via " + spec.parent + ", " +
                  manifest().find(spec.id)->specialization + ")";
}

CaseRunResult Runner::verify_case(const std::string& id, const std::string& divisor) {
    const CaseSpec& spec = get_case(id);
    CaseRunResult out;
    out.id = spec.id;
    out.mechanism = spec.mechanism;
    out.description = spec.description;

    if (spec.mechanism == "degeneration") {
        out.verdict = family_verdict(spec, {});
        out.witness = "test configuration (degeneration)";
        out.formula = "(not computed)";
        return out;
    }
    if (!divisor.empty() && spec.mechanism == "beta" && !spec.divisors.count(divisor))
        throw InputError("case " + id + ": unknown divisor '" + divisor + "'");

    if (spec.mechanism == "beta") {
        run_beta_case(spec, divisor, out);
    } else if (spec.mechanism == "localization") {
        run_localization_case(spec, out);
    } else if (spec.mechanism == "beta-pullback") {
        run_pullback_case(spec, out);
    } else {
        throw CaseDataError("case " + id + ": unknown mechanism '" + spec.mechanism + "'");
    }

    auto certs = run_certificates(spec, out);
    out.verdict = family_verdict(spec, certs);
    add(out, "family verdict conclusive", out.verdict.conclusive, out.verdict.verdict);

    if (spec.mechanism == "beta") {
        std::vector<std::string> names;
        for (const auto& b : spec.verdict_branches)
            for (const auto& w : b.witnesses)
                if (std::find(names.begin(), names.end(), w) == names.end()) names.push_back(w);
        std::string w;
        for (size_t i = 0; i < names.size(); ++i) w += (i ? ", " : "") + names[i];
        out.witness = w;
        if (!names.empty() && spec.expected_beta.count(names.front()))
            out.formula = spec.expected_beta.at(names.front()).front().value.str();
        if (out.formula.empty() && spec.adjoint)
            out.formula = spec.adjoint->expected_beta.str();
    }
    return out;
}

std::vector<CaseRunResult> Runner::verify_all(int jobs) {
    const auto& m = manifest();
    // pullback cases read their parents; prime the cache sequentially so the
    // parallel phase is read-mostly
    for (const auto& e : m.entries) (void)get_case(e.id);

    std::vector<CaseRunResult> rows(m.entries.size());
    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= m.entries.size()) break;
            rows[i] = verify_case(m.entries[i].id);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string Runner::report_json(const std::vector<CaseRunResult>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["id"] = r.id;
        row["description"] = r.description;
        row["mechanism"] = r.mechanism;
        row["witness"] = r.witness;
        row["formula"] = r.formula;
        row["verdict"] = r.verdict.verdict;
        row["status"] = r.ok() ? "pass" : "fail";
        arr.push_back(std::move(row));
    }
    return arr.dump(2);
}

std::string Runner::report_markdown(const std::vector<CaseRunResult>& rows) {
    std::ostringstream os;
    os << "| family | description | mechanism | witness | formula | verdict | status |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows)
        os << "| " << r.id << " | " << r.description << " | " << r.mechanism << " | " << r.witness
           << " | `" << r.formula << "` | " << r.verdict.verdict << " | "
           << (r.ok() ? "pass" : "fail") << " |\n";
    return os.str();
}

} // namespace kstab
