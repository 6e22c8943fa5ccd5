#include "kstab/casebook.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kstab {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
    throw CaseDataError(where + ": " + msg);
}

std::string get_string(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string()) bad(where, "missing string field '" + key + "'");
    return j[key].get<std::string>();
}

// Expressions in case documents may reference previously declared named
// polynomials; these are expanded at parse time.
Polynomial parse_expr(const std::string& text, const std::vector<std::string>& vars,
                      const std::map<std::string, Polynomial>& named, const std::string& where) {
    std::vector<std::string> ext = vars;
    for (const auto& [k, v] : named)
        if (std::find(ext.begin(), ext.end(), k) == ext.end()) ext.push_back(k);
    Polynomial raw;
    try {
        raw = parse_polynomial(text, ext);
    } catch (const InputError& e) {
        bad(where, e.what());
    }
    std::map<std::string, Polynomial> repl;
    for (const auto& [k, v] : named) repl[k] = v;
    Polynomial out = repl.empty() ? raw : raw.substitute(repl);
    // drop named-slot variables that no longer occur, so results live over
    // the plain case variables
    std::vector<std::string> ctx;
    for (const auto& v : out.vars())
        if (std::find(vars.begin(), vars.end(), v) != vars.end() || out.mentions(v))
            ctx.push_back(v);
    if (ctx == out.vars()) return out;
    Polynomial shrunk(ctx);
    for (const auto& [m, c] : out.terms()) {
        Mono mm(ctx.size(), 0);
        for (size_t i = 0; i < out.vars().size(); ++i) {
            if (m[i] == 0) continue;
            auto it = std::find(ctx.begin(), ctx.end(), out.vars()[i]);
            mm[static_cast<size_t>(it - ctx.begin())] = m[i];
        }
        shrunk.set_term(mm, c);
    }
    return shrunk;
}

RationalFunction parse_ratio(const Json& j, const std::vector<std::string>& vars,
                             const std::map<std::string, Polynomial>& named, const std::string& where) {
    if (j.is_string())
        return RationalFunction::from_polynomial(parse_expr(j.get<std::string>(), vars, named, where));
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        bad(where, "expected a {num, den} object or an expression string");
    Polynomial num = parse_expr(j["num"].get<std::string>(), vars, named, where + ".num");
    Polynomial den = parse_expr(j["den"].get<std::string>(), vars, named, where + ".den");
    if (den.is_zero()) bad(where, "zero denominator");
    return RationalFunction(num, den);
}

LinearForm parse_linear_form(const std::string& text, const std::vector<std::string>& vars,
                             const std::string& where) {
    Polynomial p = parse_expr(text, vars, {}, where);
    try {
        return LinearForm(p);
    } catch (const CaseDataError& e) {
        bad(where, e.what());
    }
}

std::vector<Inequality> parse_region(const Json& j, const std::vector<std::string>& vars,
                                     const std::string& where) {
    std::vector<Inequality> out;
    if (j.is_null()) return out;
    if (!j.is_array()) bad(where, "region must be an array of inequality strings");
    for (const auto& item : j) out.push_back(parse_inequality(item.get<std::string>(), vars));
    return out;
}

std::vector<std::string> region_texts(const Json& j) {
    std::vector<std::string> out;
    if (j.is_array())
        for (const auto& item : j) out.push_back(item.get<std::string>());
    return out;
}

Schedule parse_schedule(const Json& j, const CaseSpec& spec, const std::string& where) {
    Schedule sch;
    if (j.contains("region")) sch.region = parse_region(j["region"], spec.variables, where + ".region");
    if (!j.contains("chambers") || !j["chambers"].is_array() || j["chambers"].empty())
        bad(where, "schedule without chambers");
    for (size_t ci = 0; ci < j["chambers"].size(); ++ci) {
        const Json& cj = j["chambers"][ci];
        std::string cwhere = where + ".chambers[" + std::to_string(ci) + "]";
        Chamber ch;
        if (!cj.contains("interval") || !cj["interval"].is_array() || cj["interval"].size() != 2)
            bad(cwhere, "interval must be [lo, hi]");
        ch.lo = parse_linear_form(cj["interval"][0].get<std::string>(), spec.variables, cwhere + ".lo");
        ch.hi = parse_linear_form(cj["interval"][1].get<std::string>(), spec.variables, cwhere + ".hi");
        for (const auto& n : cj.value("negative_support", Json::array()))
            ch.negative_support.push_back(n.get<std::string>());
        for (const auto& n : cj.value("orthogonality", Json::array()))
            ch.orthogonality.push_back(n.get<std::string>());
        if (ch.negative_support.size() != ch.orthogonality.size())
            bad(cwhere, "support and orthogonality lists differ in length");
        for (const auto& n : ch.negative_support)
            if (!spec.geometry.named_divisors.count(n)) bad(cwhere, "unresolved divisor '" + n + "'");
        for (const auto& n : ch.orthogonality)
            if (!spec.geometry.curves.count(n)) bad(cwhere, "unresolved curve '" + n + "'");
        if (cj.contains("expected_vol")) ch.expected_vol = cj["expected_vol"].get<std::string>();
        if (cj.contains("expected_vol_dt")) ch.expected_vol_dt = cj["expected_vol_dt"].get<std::string>();
        sch.chambers.push_back(std::move(ch));
    }
    return sch;
}

DivisorClass parse_class(const Json& j, const CaseSpec& spec, const std::string& where) {
    if (!j.is_object()) bad(where, "divisor class must be an object basis -> expression");
    DivisorClass cls;
    const auto& basis = spec.geometry.form.basis();
    cls.coeffs.assign(basis.size(), Polynomial{});
    for (const auto& [k, v] : j.items()) {
        int bi = spec.geometry.form.basis_index(k);
        if (bi < 0) bad(where, "unknown basis divisor '" + k + "'");
        cls.coeffs[static_cast<size_t>(bi)] =
            parse_expr(v.get<std::string>(), spec.variables, spec.named, where + "." + k);
    }
    return cls;
}

std::map<std::string, Polynomial> parse_assignment_map(const Json& j, const std::vector<std::string>& vars,
                                                       const std::string& where) {
    std::map<std::string, Polynomial> out;
    for (const auto& [k, v] : j.items())
        out[k] = parse_expr(v.get<std::string>(), vars, {}, where + "." + k);
    return out;
}

} // namespace

const CertificateSpec& CaseSpec::certificate(const std::string& name) const {
    for (const auto& c : certificates)
        if (c.name == name) return c;
    throw CaseDataError("case " + id + ": unknown certificate '" + name + "'");
}

CaseSpec load_case_json(const std::string& json_text, const std::string& where) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const std::exception& e) {
        bad(where, std::string("malformed JSON: ") + e.what());
    }

    CaseSpec spec;
    spec.id = get_string(j, "id", where);
    spec.mechanism = get_string(j, "mechanism", where);
    spec.description = get_string(j, "description", where);
    spec.source = j.value("source", spec.id);
    const std::string W = where + " (case " + spec.id + ")";

    if (spec.mechanism == "degeneration") {
        return spec; // manifest metadata only
    }

    if (spec.mechanism == "beta-pullback") {
        spec.parent = get_string(j, "parent", W);
        for (const auto& v : j.value("variables", Json::array()))
            spec.variables.push_back(v.get<std::string>());
        spec.specialization =
            parse_assignment_map(j["specialization"], spec.variables, W + ".specialization");
        spec.witness_divisor = get_string(j, "witness", W);
        if (j.contains("named"))
            for (const auto& [k, v] : j["named"].items())
                spec.named.emplace(k, parse_expr(v.get<std::string>(), spec.variables, spec.named,
                                                 W + ".named." + k));
        if (j.contains("expected") && j["expected"].contains("beta")) {
            BetaGolden g;
            g.value = parse_ratio(j["expected"]["beta"], spec.variables, spec.named, W + ".expected.beta");
            if (j["expected"].contains("printed_display")) {
                g.printed_display = parse_ratio(j["expected"]["printed_display"], spec.variables, spec.named,
                                              W + ".expected.printed_display");
                g.printed_display_gap = parse_ratio(j["expected"]["printed_display_gap"], spec.variables,
                                                  spec.named, W + ".expected.printed_display_gap");
                g.erratum = j["expected"].value("erratum", "");
            }
            spec.expected_beta[spec.witness_divisor].push_back(std::move(g));
        }
        goto certificates_and_rest;
    }

    {
        if (!j.contains("dim")) bad(W, "missing dim");
        spec.dim = j["dim"].get<int>();
        for (const auto& v : j.value("variables", Json::array()))
            spec.variables.push_back(v.get<std::string>());
        if (spec.variables.empty()) bad(W, "missing variables");

        std::vector<std::string> basis;
        for (const auto& b : j.value("basis", Json::array())) basis.push_back(b.get<std::string>());
        spec.geometry.form = IntersectionForm(spec.dim, basis);

        if (!j.contains("intersections")) bad(W, "missing intersections");
        for (const auto& [k, v] : j["intersections"].items()) {
            std::vector<int> idx;
            std::string part;
            std::istringstream is(k);
            while (std::getline(is, part, '.')) {
                int bi = spec.geometry.form.basis_index(part);
                if (bi < 0) bad(W, "intersection key references unknown divisor '" + part + "'");
                idx.push_back(bi);
            }
            spec.geometry.form.set_entry(idx, parse_rational(v.get<std::string>()));
        }
        spec.tensor_provenance = j.value("tensor_provenance", "printed");

        // named polynomials (may reference earlier entries)
        if (j.contains("named"))
            for (const auto& [k, v] : j["named"].items())
                spec.named.emplace(k, parse_expr(v.get<std::string>(), spec.variables, spec.named,
                                                 W + ".named." + k));

        // canonical class and polarization
        spec.geometry.canonical.coeffs.assign(basis.size(), Polynomial{});
        for (const auto& [k, v] : j["canonical"].items()) {
            int bi = spec.geometry.form.basis_index(k);
            if (bi < 0) bad(W, "canonical references unknown divisor '" + k + "'");
            spec.geometry.canonical.coeffs[static_cast<size_t>(bi)] =
                parse_expr(v.get<std::string>(), spec.variables, {}, W + ".canonical");
        }
        spec.geometry.polarization.coeffs.assign(basis.size(), Polynomial{});
        for (const auto& [k, v] : j["polarization"].items()) {
            int bi = spec.geometry.form.basis_index(k);
            if (bi < 0) bad(W, "polarization references unknown divisor '" + k + "'");
            spec.geometry.polarization.coeffs[static_cast<size_t>(bi)] =
                parse_expr(v.get<std::string>(), spec.variables, {}, W + ".polarization");
        }

        // basis divisors are addressable by name
        for (size_t i = 0; i < basis.size(); ++i) {
            DivisorClass cls;
            cls.coeffs.assign(basis.size(), Polynomial{});
            cls.coeffs[i] = Polynomial::constant(spec.variables, 1);
            spec.geometry.named_divisors[basis[i]] = std::move(cls);
        }

        const Json curves_j = j.value("curves", Json::object());
        for (const auto& [name, row] : curves_j.items()) {
            CurveClass c;
            c.name = name;
            if (!row.is_array() || row.size() != basis.size())
                bad(W, "curve '" + name + "' row length differs from basis size");
            for (const auto& v : row) c.pairings.push_back(parse_rational(v.get<std::string>()));
            spec.geometry.curves[name] = std::move(c);
        }

        // divisors with schedules
        const Json divisors_j = j.value("divisors", Json::object());
        for (const auto& [name, dj] : divisors_j.items()) {
            DivisorEntry entry;
            entry.name = name;
            entry.cls = parse_class(dj["class"], spec, W + ".divisors." + name + ".class");
            entry.log_discrepancy = parse_rational(dj.value("log_discrepancy", "1"));
            spec.geometry.named_divisors[name] = entry.cls;
            spec.divisors.emplace(name, std::move(entry));
        }
        // second pass: schedules may reference any declared divisor
        for (const auto& [name, dj] : divisors_j.items()) {
            auto& entry = spec.divisors.at(name);
            for (const auto& sj : dj.value("schedules", Json::array()))
                entry.schedules.push_back(
                    parse_schedule(sj, spec, W + ".divisors." + name + ".schedule"));
        }

        // expected values
        if (!j.contains("expected")) bad(W, "missing expected block");
        const Json& e = j["expected"];
        spec.expected_Ln = parse_expr(get_string(e, "Ln", W + ".expected"), spec.variables, spec.named,
                                      W + ".expected.Ln");
        spec.expected_mu = parse_ratio(e.at("mu"), spec.variables, spec.named, W + ".expected.mu");

        if (e.contains("beta")) {
            for (const auto& [dname, arr] : e["beta"].items()) {
                if (!spec.divisors.count(dname))
                    bad(W, "expected.beta references unknown divisor '" + dname + "'");
                for (const auto& gj : arr) {
                    BetaGolden g;
                    g.region_texts = region_texts(gj.value("region", Json::array()));
                    g.region = parse_region(gj.value("region", Json::array()), spec.variables,
                                            W + ".expected.beta.region");
                    g.value = parse_ratio(gj, spec.variables, spec.named, W + ".expected.beta." + dname);
                    if (gj.contains("printed_display")) {
                        g.printed_display = parse_ratio(gj["printed_display"], spec.variables, spec.named,
                                                      W + ".expected.beta.printed_display");
                        g.printed_display_gap = parse_ratio(gj["printed_display_gap"], spec.variables,
                                                          spec.named, W + ".expected.beta.gap");
                        g.erratum = gj.value("erratum", "");
                    }
                    spec.expected_beta[dname].push_back(std::move(g));
                }
            }
        }

        // localization data
        if (j.contains("localization")) {
            LocalizationData data;
            const Json& lj = j["localization"];
            for (const auto& b : lj["bundles"]) data.bundles.push_back(b.get<std::string>());
            for (const auto& pj : lj["fixed_points"]) {
                FixedPoint p;
                p.name = pj["name"].get<std::string>();
                for (const auto& a : pj["alphas"]) p.alphas.push_back(a.get<long>());
                if (static_cast<int>(p.alphas.size()) != spec.dim)
                    bad(W, "fixed point " + p.name + ": alpha count differs from dim");
                for (const auto& [bn, wv] : pj["mu"].items()) p.mu[bn] = wv.get<long>();
                data.fixed_points.push_back(std::move(p));
            }
            for (const auto& [bn, expr] : lj["polarization_weights"].items())
                data.polarization_weights[bn] =
                    parse_expr(expr.get<std::string>(), spec.variables, {}, W + ".polarization_weights");
            data.validate(spec.dim);
            spec.localization = std::move(data);
            spec.expected_df = parse_ratio(e.at("df"), spec.variables, spec.named, W + ".expected.df");
            if (e.contains("df_printed_display")) {
                spec.expected_df_display = parse_ratio(e.at("df_printed_display"), spec.variables,
                                                       spec.named, W + ".expected.df_printed_display");
                spec.expected_df_gap = parse_ratio(e.at("df_printed_display_gap"), spec.variables,
                                                   spec.named, W + ".expected.df_gap");
                spec.df_erratum = e.value("df_erratum", "");
            }
            if (e.contains("b0") || e.contains("b1")) {
                spec.has_expected_b0b1 = true;
                spec.expected_b0 = parse_expr(get_string(e, "b0", W), spec.variables, spec.named, W + ".b0");
                spec.expected_b1 = parse_expr(get_string(e, "b1", W), spec.variables, spec.named, W + ".b1");
            }
            spec.expected_a0 = parse_expr(get_string(e, "a0", W), spec.variables, spec.named, W + ".a0");
            spec.expected_a1 = parse_expr(get_string(e, "a1", W), spec.variables, spec.named, W + ".a1");
        }

        // adjoint block
        if (j.contains("adjoint")) {
            const Json& aj = j["adjoint"];
            AdjointSpec adj;
            adj.divisor = get_string(aj, "divisor", W + ".adjoint");
            adj.b_symbol = get_string(aj, "b_symbol", W + ".adjoint");
            adj.b_lo = parse_rational(aj["b_range"][0].get<std::string>());
            adj.b_hi = parse_rational(aj["b_range"][1].get<std::string>());
            adj.identification = parse_assignment_map(aj["identification"], {adj.b_symbol},
                                                      W + ".adjoint.identification");
            CaseSpec tmp = spec; // schedules of -K - uF have constant walls
            tmp.variables = {adj.b_symbol};
            adj.anticanonical_schedule =
                parse_schedule(aj["anticanonical_schedule"], tmp, W + ".adjoint.schedule");
            adj.expected_phi =
                parse_ratio(aj.at("expected_phi"), {adj.b_symbol}, {}, W + ".adjoint.phi");
            adj.expected_beta =
                parse_ratio(aj.at("expected_beta"), {adj.b_symbol}, {}, W + ".adjoint.beta");
            if (aj.contains("spot")) {
                SpotCheck s;
                s.target = "beta_adjoint";
                for (const auto& [k, v] : aj["spot"]["at"].items())
                    s.at[k] = parse_rational(v.get<std::string>());
                s.value = parse_rational(aj["spot"]["value"].get<std::string>());
                s.note = aj["spot"].value("note", "");
                spec.spots.push_back(std::move(s));
            }
            spec.adjoint = std::move(adj);
        }

        for (const auto& pj : j.value("internal_pullbacks", Json::array())) {
            InternalPullback p;
            p.divisor = pj["divisor"].get<std::string>();
            p.specialization =
                parse_assignment_map(pj["specialization"], spec.variables, W + ".internal_pullback");
            p.expected = parse_ratio(pj.at("expected"), spec.variables, spec.named, W + ".internal_pullback");
            spec.internal_pullbacks.push_back(std::move(p));
        }

        for (const auto& wj : j.value("wall_checks", Json::array())) {
            WallCheck wc;
            wc.divisor = wj["divisor"].get<std::string>();
            wc.substitute = parse_assignment_map(wj["substitute"], spec.variables, W + ".wall_check");
            spec.wall_checks.push_back(std::move(wc));
        }

        // ------- geometry gates -------
        Polynomial ln = spec.geometry.form.power(spec.geometry.polarization);
        if (ln != spec.expected_Ln)
            bad(W, "tensor gate: computed L^n differs from expected; difference " +
                       (ln - spec.expected_Ln).str());
        RationalFunction mu =
            slope_mu(spec.geometry.form, spec.geometry.canonical, spec.geometry.polarization);
        if (mu != spec.expected_mu) bad(W, "tensor gate: computed mu differs from expected");
    }

certificates_and_rest:
    for (const auto& ij : j.value("identities", Json::array())) {
        IdentitySpec id;
        id.name = ij["name"].get<std::string>();
        id.lhs = parse_expr(ij["lhs"].get<std::string>(), spec.variables, spec.named, W + ".identity.lhs");
        id.rhs = parse_expr(ij["rhs"].get<std::string>(), spec.variables, spec.named, W + ".identity.rhs");
        if (ij.contains("substitute"))
            id.substitute = parse_assignment_map(ij["substitute"], spec.variables, W + ".identity.sub");
        spec.identities.push_back(std::move(id));
    }
    for (const auto& cj : j.value("certificates", Json::array())) {
        CertificateSpec c;
        c.name = cj["name"].get<std::string>();
        // substitution is an ordered array of [var, expr] pairs; fresh
        // variable names on the right sides extend the context
        std::vector<std::string> sub_ctx = spec.variables;
        if (cj.contains("substitution"))
            for (const auto& pair : cj["substitution"]) {
                std::string nv = pair[1].get<std::string>();
                // collect fresh variable names appearing in the rhs
                for (size_t pos = 0; pos < nv.size();) {
                    if (std::isalpha(static_cast<unsigned char>(nv[pos]))) {
                        size_t start = pos;
                        while (pos < nv.size() && (std::isalnum(static_cast<unsigned char>(nv[pos])) ||
                                                   nv[pos] == '_'))
                            ++pos;
                        std::string name = nv.substr(start, pos - start);
                        if (std::find(sub_ctx.begin(), sub_ctx.end(), name) == sub_ctx.end())
                            sub_ctx.push_back(name);
                    } else {
                        ++pos;
                    }
                }
            }
        c.target = parse_expr(cj["target"].get<std::string>(), spec.variables, spec.named,
                              W + ".certificate.target");
        if (cj.contains("substitution"))
            for (const auto& pair : cj["substitution"])
                c.substitution.assignments.emplace_back(
                    pair[0].get<std::string>(),
                    parse_expr(pair[1].get<std::string>(), sub_ctx, {}, W + ".certificate.sub"));
        for (const auto& s : cj.value("strict", Json::array())) c.strict.insert(s.get<std::string>());
        c.region_texts = region_texts(cj.value("region", Json::array()));
        if (cj.contains("expected_expansion"))
            c.expected_expansion = parse_expr(cj["expected_expansion"].get<std::string>(), sub_ctx, {},
                                              W + ".certificate.expansion");
        spec.certificates.push_back(std::move(c));
    }
    {
        const Json& full = j;
        if (full.contains("verdict")) {
            const Json& vj = full["verdict"];
            for (const auto& bj : vj.value("branches", Json::array())) {
                VerdictBranch br;
                br.region_texts = region_texts(bj.value("region", Json::array()));
                br.region = parse_region(bj.value("region", Json::array()), spec.variables, W + ".verdict");
                for (const auto& wname : bj.value("witnesses", Json::array()))
                    br.witnesses.push_back(wname.get<std::string>());
                for (const auto& cname : bj.value("certificates", Json::array()))
                    br.certificates.push_back(cname.get<std::string>());
                for (const auto& cname : br.certificates) spec.certificate(cname); // must resolve
                spec.verdict_branches.push_back(std::move(br));
            }
            if (vj.contains("symmetry"))
                spec.symmetry_swap = std::make_pair(vj["symmetry"]["swap"][0].get<std::string>(),
                                                    vj["symmetry"]["swap"][1].get<std::string>());
        }
        for (const auto& sj : full.value("spots", Json::array())) {
            SpotCheck s;
            s.target = sj["target"].get<std::string>();
            for (const auto& [k, v] : sj["at"].items()) s.at[k] = parse_rational(v.get<std::string>());
            s.value = parse_rational(sj["value"].get<std::string>());
            s.note = sj.value("note", "");
            spec.spots.push_back(std::move(s));
        }
    }
    return spec;
}

namespace {

Json ratio_json(const RationalFunction& r) {
    Json out;
    out["num"] = r.num().str();
    out["den"] = r.den().str();
    return out;
}

Json schedule_json(const Schedule& s) {
    Json out;
    out["region"] = Json::array();
    for (const auto& i : s.region) out["region"].push_back(i.text);
    out["chambers"] = Json::array();
    for (const auto& ch : s.chambers) {
        Json cj;
        cj["interval"] = {ch.lo.str(), ch.hi.str()};
        cj["negative_support"] = ch.negative_support;
        cj["orthogonality"] = ch.orthogonality;
        if (ch.expected_vol) cj["expected_vol"] = *ch.expected_vol;
        if (ch.expected_vol_dt) cj["expected_vol_dt"] = *ch.expected_vol_dt;
        out["chambers"].push_back(std::move(cj));
    }
    return out;
}

Json class_json(const DivisorClass& cls, const std::vector<std::string>& basis) {
    Json out = Json::object();
    for (size_t i = 0; i < basis.size(); ++i)
        if (!cls.coeffs[i].is_zero()) out[basis[i]] = cls.coeffs[i].str();
    return out;
}

} // namespace

std::string serialize_case(const CaseSpec& spec) {
    Json j;
    j["id"] = spec.id;
    j["source"] = spec.source;
    j["description"] = spec.description;
    j["mechanism"] = spec.mechanism;
    if (spec.mechanism == "degeneration") return j.dump(2);

    if (spec.mechanism == "beta-pullback") {
        j["parent"] = spec.parent;
        j["variables"] = spec.variables;
        Json sj = Json::object();
        for (const auto& [k, v] : spec.specialization) sj[k] = v.str();
        j["specialization"] = sj;
        j["witness"] = spec.witness_divisor;
        const auto& goldens = spec.expected_beta.at(spec.witness_divisor);
        j["expected"] = Json::object();
        j["expected"]["beta"] = ratio_json(goldens.front().value);
        if (goldens.front().printed_display) {
            j["expected"]["printed_display"] = ratio_json(*goldens.front().printed_display);
            j["expected"]["printed_display_gap"] = ratio_json(*goldens.front().printed_display_gap);
            j["expected"]["erratum"] = goldens.front().erratum;
        }
    } else {
        j["dim"] = spec.dim;
        j["variables"] = spec.variables;
        const auto& basis = spec.geometry.form.basis();
        j["basis"] = basis;
        Json tensor = Json::object();
        for (int a = 0; a < static_cast<int>(basis.size()); ++a)
            for (int b = a; b < static_cast<int>(basis.size()); ++b) {
                if (spec.dim == 2) {
                    Rational v = spec.geometry.form.entry({a, b});
                    if (sgn(v) != 0) tensor[basis[a] + "." + basis[b]] = rational_str(v);
                } else {
                    for (int c = b; c < static_cast<int>(basis.size()); ++c) {
                        Rational v = spec.geometry.form.entry({a, b, c});
                        if (sgn(v) != 0)
                            tensor[basis[a] + "." + basis[b] + "." + basis[c]] = rational_str(v);
                    }
                }
            }
        j["intersections"] = tensor;
        j["tensor_provenance"] = spec.tensor_provenance;
        j["canonical"] = class_json(spec.geometry.canonical, basis);
        j["polarization"] = class_json(spec.geometry.polarization, basis);
        Json curves = Json::object();
        for (const auto& [name, c] : spec.geometry.curves) {
            Json row = Json::array();
            for (const auto& p : c.pairings) row.push_back(rational_str(p));
            curves[name] = row;
        }
        j["curves"] = curves;
        Json divisors = Json::object();
        for (const auto& [name, d] : spec.divisors) {
            Json dj;
            dj["class"] = class_json(d.cls, basis);
            dj["log_discrepancy"] = rational_str(d.log_discrepancy);
            dj["schedules"] = Json::array();
            for (const auto& s : d.schedules) dj["schedules"].push_back(schedule_json(s));
            divisors[name] = std::move(dj);
        }
        j["divisors"] = divisors;
        Json expected;
        expected["Ln"] = spec.expected_Ln.str();
        expected["mu"] = ratio_json(spec.expected_mu);
        if (!spec.expected_beta.empty()) {
            Json bj = Json::object();
            for (const auto& [name, goldens] : spec.expected_beta) {
                Json arr = Json::array();
                for (const auto& g : goldens) {
                    Json gj = ratio_json(g.value);
                    gj["region"] = g.region_texts;
                    if (g.printed_display) {
                        gj["printed_display"] = ratio_json(*g.printed_display);
                        gj["printed_display_gap"] = ratio_json(*g.printed_display_gap);
                        gj["erratum"] = g.erratum;
                    }
                    arr.push_back(std::move(gj));
                }
                bj[name] = std::move(arr);
            }
            expected["beta"] = bj;
        }
        if (spec.localization) {
            Json lj;
            lj["bundles"] = spec.localization->bundles;
            lj["fixed_points"] = Json::array();
            for (const auto& p : spec.localization->fixed_points) {
                Json pj;
                pj["name"] = p.name;
                pj["alphas"] = p.alphas;
                Json mj = Json::object();
                for (const auto& [b, w] : p.mu) mj[b] = w;
                pj["mu"] = mj;
                lj["fixed_points"].push_back(std::move(pj));
            }
            Json wj = Json::object();
            for (const auto& [b, w] : spec.localization->polarization_weights) wj[b] = w.str();
            lj["polarization_weights"] = wj;
            j["localization"] = lj;
            expected["df"] = ratio_json(spec.expected_df);
            if (spec.expected_df_display) {
                expected["df_printed_display"] = ratio_json(*spec.expected_df_display);
                expected["df_printed_display_gap"] = ratio_json(*spec.expected_df_gap);
                expected["df_erratum"] = spec.df_erratum;
            }
            if (spec.has_expected_b0b1) {
                expected["b0"] = spec.expected_b0.str();
                expected["b1"] = spec.expected_b1.str();
            }
            expected["a0"] = spec.expected_a0.str();
            expected["a1"] = spec.expected_a1.str();
        }
        j["expected"] = expected;
        if (spec.adjoint) {
            Json aj;
            aj["divisor"] = spec.adjoint->divisor;
            aj["b_symbol"] = spec.adjoint->b_symbol;
            aj["b_range"] = {rational_str(spec.adjoint->b_lo), rational_str(spec.adjoint->b_hi)};
            Json idj = Json::object();
            for (const auto& [k, v] : spec.adjoint->identification) idj[k] = v.str();
            aj["identification"] = idj;
            aj["anticanonical_schedule"] = schedule_json(spec.adjoint->anticanonical_schedule);
            aj["expected_phi"] = ratio_json(spec.adjoint->expected_phi);
            aj["expected_beta"] = ratio_json(spec.adjoint->expected_beta);
            j["adjoint"] = aj;
        }
        if (!spec.internal_pullbacks.empty()) {
            j["internal_pullbacks"] = Json::array();
            for (const auto& p : spec.internal_pullbacks) {
                Json pj;
                pj["divisor"] = p.divisor;
                Json sj = Json::object();
                for (const auto& [k, v] : p.specialization) sj[k] = v.str();
                pj["specialization"] = sj;
                pj["expected"] = ratio_json(p.expected);
                j["internal_pullbacks"].push_back(std::move(pj));
            }
        }
        if (!spec.wall_checks.empty()) {
            j["wall_checks"] = Json::array();
            for (const auto& w : spec.wall_checks) {
                Json wj;
                wj["divisor"] = w.divisor;
                Json sj = Json::object();
                for (const auto& [k, v] : w.substitute) sj[k] = v.str();
                wj["substitute"] = sj;
                j["wall_checks"].push_back(std::move(wj));
            }
        }
    }

    if (!spec.identities.empty()) {
        j["identities"] = Json::array();
        for (const auto& i : spec.identities) {
            Json ij;
            ij["name"] = i.name;
            ij["lhs"] = i.lhs.str();
            ij["rhs"] = i.rhs.str();
            if (!i.substitute.empty()) {
                Json sj = Json::object();
                for (const auto& [k, v] : i.substitute) sj[k] = v.str();
                ij["substitute"] = sj;
            }
            j["identities"].push_back(std::move(ij));
        }
    }
    if (!spec.certificates.empty()) {
        j["certificates"] = Json::array();
        for (const auto& c : spec.certificates) {
            Json cj;
            cj["name"] = c.name;
            cj["target"] = c.target.str();
            cj["substitution"] = Json::array();
            for (const auto& [var, img] : c.substitution.assignments)
                cj["substitution"].push_back(Json::array({var, img.str()}));
            cj["strict"] = std::vector<std::string>(c.strict.begin(), c.strict.end());
            cj["region"] = c.region_texts;
            if (c.expected_expansion) cj["expected_expansion"] = c.expected_expansion->str();
            j["certificates"].push_back(std::move(cj));
        }
    }
    if (!spec.verdict_branches.empty() || spec.symmetry_swap) {
        Json vj;
        vj["branches"] = Json::array();
        for (const auto& b : spec.verdict_branches) {
            Json bj;
            bj["region"] = b.region_texts;
            bj["witnesses"] = b.witnesses;
            bj["certificates"] = b.certificates;
            vj["branches"].push_back(std::move(bj));
        }
        if (spec.symmetry_swap)
            vj["symmetry"] = {{"swap", {spec.symmetry_swap->first, spec.symmetry_swap->second}}};
        j["verdict"] = vj;
    }
    if (!spec.spots.empty()) {
        j["spots"] = Json::array();
        for (const auto& s : spec.spots) {
            if (s.target == "beta_adjoint") continue; // serialized within the adjoint block
            Json sj;
            sj["target"] = s.target;
            Json atj = Json::object();
            for (const auto& [k, v] : s.at) atj[k] = rational_str(v);
            sj["at"] = atj;
            sj["value"] = rational_str(s.value);
            if (!s.note.empty()) sj["note"] = s.note;
            j["spots"].push_back(std::move(sj));
        }
    }
    return j.dump(2);
}

namespace {

bool schedules_equal(const Schedule& a, const Schedule& b) {
    if (a.chambers.size() != b.chambers.size()) return false;
    if (a.region.size() != b.region.size()) return false;
    for (size_t i = 0; i < a.region.size(); ++i)
        if (a.region[i].nonneg != b.region[i].nonneg) return false;
    for (size_t i = 0; i < a.chambers.size(); ++i) {
        const Chamber& x = a.chambers[i];
        const Chamber& y = b.chambers[i];
        if (!(x.lo == y.lo) || !(x.hi == y.hi)) return false;
        if (x.negative_support != y.negative_support) return false;
        if (x.orthogonality != y.orthogonality) return false;
    }
    return true;
}

bool classes_equal(const DivisorClass& a, const DivisorClass& b) {
    if (a.coeffs.size() != b.coeffs.size()) return false;
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i] != b.coeffs[i]) return false;
    return true;
}

} // namespace

bool semantically_equal(const CaseSpec& a, const CaseSpec& b) {
    if (a.id != b.id || a.mechanism != b.mechanism || a.dim != b.dim) return false;
    if (a.variables != b.variables) return false;
    if (a.mechanism == "degeneration") return true;
    if (a.mechanism == "beta-pullback") {
        if (a.parent != b.parent || a.witness_divisor != b.witness_divisor) return false;
        const auto& ga = a.expected_beta.at(a.witness_divisor).front();
        const auto& gb = b.expected_beta.at(b.witness_divisor).front();
        return ga.value == gb.value;
    }
    if (a.geometry.form.basis() != b.geometry.form.basis()) return false;
    for (int x = 0; x < static_cast<int>(a.geometry.form.basis().size()); ++x)
        for (int y = x; y < static_cast<int>(a.geometry.form.basis().size()); ++y) {
            if (a.dim == 2) {
                if (a.geometry.form.entry({x, y}) != b.geometry.form.entry({x, y})) return false;
            } else {
                for (int z = y; z < static_cast<int>(a.geometry.form.basis().size()); ++z)
                    if (a.geometry.form.entry({x, y, z}) != b.geometry.form.entry({x, y, z}))
                        return false;
            }
        }
    if (!classes_equal(a.geometry.canonical, b.geometry.canonical)) return false;
    if (!classes_equal(a.geometry.polarization, b.geometry.polarization)) return false;
    if (a.geometry.curves.size() != b.geometry.curves.size()) return false;
    for (const auto& [name, c] : a.geometry.curves) {
        auto it = b.geometry.curves.find(name);
        if (it == b.geometry.curves.end() || it->second.pairings != c.pairings) return false;
    }
    if (a.divisors.size() != b.divisors.size()) return false;
    for (const auto& [name, d] : a.divisors) {
        auto it = b.divisors.find(name);
        if (it == b.divisors.end()) return false;
        if (!classes_equal(d.cls, it->second.cls)) return false;
        if (d.log_discrepancy != it->second.log_discrepancy) return false;
        if (d.schedules.size() != it->second.schedules.size()) return false;
        for (size_t i = 0; i < d.schedules.size(); ++i)
            if (!schedules_equal(d.schedules[i], it->second.schedules[i])) return false;
    }
    if (a.expected_Ln != b.expected_Ln) return false;
    if (!(a.expected_mu == b.expected_mu)) return false;
    for (const auto& [name, goldens] : a.expected_beta) {
        auto it = b.expected_beta.find(name);
        if (it == b.expected_beta.end() || it->second.size() != goldens.size()) return false;
        for (size_t i = 0; i < goldens.size(); ++i) {
            if (!(goldens[i].value == it->second[i].value)) return false;
            if (goldens[i].printed_display.has_value() != it->second[i].printed_display.has_value())
                return false;
            if (goldens[i].printed_display &&
                !(*goldens[i].printed_display == *it->second[i].printed_display))
                return false;
        }
    }
    if (a.identities.size() != b.identities.size()) return false;
    for (size_t i = 0; i < a.identities.size(); ++i) {
        if (a.identities[i].lhs != b.identities[i].lhs) return false;
        if (a.identities[i].rhs != b.identities[i].rhs) return false;
    }
    if (a.certificates.size() != b.certificates.size()) return false;
    for (size_t i = 0; i < a.certificates.size(); ++i) {
        const auto& x = a.certificates[i];
        const auto& y = b.certificates[i];
        if (x.name != y.name || x.target != y.target || x.strict != y.strict) return false;
        if (x.substitution.assignments.size() != y.substitution.assignments.size()) return false;
        for (size_t k = 0; k < x.substitution.assignments.size(); ++k) {
            if (x.substitution.assignments[k].first != y.substitution.assignments[k].first)
                return false;
            if (x.substitution.assignments[k].second != y.substitution.assignments[k].second)
                return false;
        }
        if (x.expected_expansion.has_value() != y.expected_expansion.has_value()) return false;
        if (x.expected_expansion && *x.expected_expansion != *y.expected_expansion) return false;
    }
    if (a.verdict_branches.size() != b.verdict_branches.size()) return false;
    for (size_t i = 0; i < a.verdict_branches.size(); ++i) {
        if (a.verdict_branches[i].witnesses != b.verdict_branches[i].witnesses) return false;
        if (a.verdict_branches[i].certificates != b.verdict_branches[i].certificates) return false;
    }
    if (a.symmetry_swap != b.symmetry_swap) return false;
    if (a.localization.has_value() != b.localization.has_value()) return false;
    if (a.localization) {
        if (a.localization->bundles != b.localization->bundles) return false;
        if (a.localization->fixed_points.size() != b.localization->fixed_points.size()) return false;
        for (size_t i = 0; i < a.localization->fixed_points.size(); ++i) {
            const auto& x = a.localization->fixed_points[i];
            const auto& y = b.localization->fixed_points[i];
            if (x.name != y.name || x.alphas != y.alphas || x.mu != y.mu) return false;
        }
        if (!(a.expected_df == b.expected_df)) return false;
    }
    if (a.adjoint.has_value() != b.adjoint.has_value()) return false;
    if (a.adjoint) {
        if (a.adjoint->divisor != b.adjoint->divisor) return false;
        if (!(a.adjoint->expected_phi == b.adjoint->expected_phi)) return false;
        if (!(a.adjoint->expected_beta == b.adjoint->expected_beta)) return false;
        if (!schedules_equal(a.adjoint->anticanonical_schedule, b.adjoint->anticanonical_schedule))
            return false;
    }
    return true;
}

CaseSpec load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open case file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_case_json(buf.str(), path);
}

std::string default_cases_dir() {
    if (const char* env = std::getenv("KSTAB_CASES_DIR")) return env;
#ifdef KSTAB_DEFAULT_CASES_DIR
    return KSTAB_DEFAULT_CASES_DIR;
#else
    return "cases";
#endif
}

std::string case_path(const std::string& dir, const std::string& id) {
    std::string fname = id;
    for (auto& c : fname)
        if (c == '.') c = '_';
    return dir + "/case_" + fname + ".json";
}

const ManifestEntry* Manifest::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

const Manifest& manifest() {
    static const Manifest m = [] {
        Manifest mm;
        auto add = [&mm](const char* id, const char* mech, const char* parent = "",
                         const char* specialization = "") {
            mm.entries.push_back(ManifestEntry{id, id, mech, parent, specialization});
        };
        add("2.21", "degeneration");
        add("2.26", "localization");
        add("2.28", "beta");
        add("2.30", "beta-pullback", "3.23", "b := 0");
        add("2.31", "beta-pullback", "3.23", "a := 0");
        add("2.33", "beta-pullback", "4.12", "b := 0, c := 0");
        add("2.35", "beta-pullback", "4.12", "c := 0, d := 0");
        add("2.36", "beta-pullback", "3.29", "a := 0");
        add("3.13", "degeneration");
        add("3.16", "localization");
        add("3.18", "beta");
        add("3.21", "beta");
        add("3.22", "beta");
        add("3.23", "beta");
        add("3.24", "beta");
        add("3.26", "beta-pullback", "4.9", "c := 0");
        add("3.28", "beta-pullback", "4.11", "d := 0");
        add("3.29", "beta");
        add("3.30", "beta-pullback", "4.12", "c := 0");
        add("3.31", "beta-pullback", "4.11", "c := 0");
        add("4.8", "beta");
        add("4.9", "beta");
        add("4.10", "beta");
        add("4.11", "beta");
        add("4.12", "beta");
        add("dP7", "beta");
        // pullback parents must themselves be manifest rows
        for (const auto& e : mm.entries)
            if (!e.parent.empty() && !mm.find(e.parent))
                throw CaseDataError("manifest: missing parent " + e.parent);
        return mm;
    }();
    return m;
}

} // namespace kstab
