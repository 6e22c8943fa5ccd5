#include "kstab/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace kstab {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw InputError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw InputError("malformed rational literal: '" + s + "'");
    if (sgn(Rational(q.get_den())) <= 0)
        throw InputError("rational denominator must be positive: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    // lexicographic, first variable most significant
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& c) {
    Polynomial p(std::move(vars));
    if (sgn(c) != 0) p.terms_[Mono(p.vars_.size(), 0)] = c;
    return p;
}

Polynomial Polynomial::variable(const std::vector<std::string>& vars, const std::string& name) {
    Polynomial p(vars);
    int i = p.var_index(name);
    if (i < 0) throw InputError("unknown variable '" + name + "'");
    Mono m(vars.size(), 0);
    m[static_cast<size_t>(i)] = 1;
    p.terms_[m] = 1;
    return p;
}

int Polynomial::var_index(const std::string& var) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return static_cast<int>(i);
    return -1;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Mono& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw InputError("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (unsigned e : terms_.rbegin()->first) d += e;
    return static_cast<int>(d);
}

int Polynomial::degree_in(const std::string& var) const {
    int i = var_index(var);
    if (i < 0) return 0;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<size_t>(i)]);
    return static_cast<int>(d);
}

Polynomial Polynomial::embedded(const std::vector<std::string>& super) const {
    if (super == vars_) return *this;
    std::vector<int> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(super.begin(), super.end(), vars_[i]);
        if (it == super.end())
            throw InputError("embedded: variable '" + vars_[i] + "' missing from target context");
        pos[i] = static_cast<int>(it - super.begin());
    }
    Polynomial out(super);
    for (const auto& [m, c] : terms_) {
        Mono mm(super.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) mm[static_cast<size_t>(pos[i])] = m[i];
        out.terms_[mm] = c;
    }
    return out;
}

std::vector<std::string> merge_contexts(const Polynomial& a, const Polynomial& b) {
    std::vector<std::string> vars = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    return vars;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (vars_ != rhs.vars_) {
        auto merged = merge_contexts(*this, rhs);
        *this = embedded(merged);
        Polynomial r = rhs.embedded(merged);
        return *this += r;
    }
    for (const auto& [m, c] : rhs.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += (-rhs); }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (vars_ != rhs.vars_) {
        auto merged = merge_contexts(*this, rhs);
        *this = embedded(merged);
        Polynomial r = rhs.embedded(merged);
        return *this *= r;
    }
    Polynomial out(vars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Mono m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            Rational c = ca * cb;
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                out.terms_[m] = c;
            } else {
                it->second += c;
                if (sgn(it->second) == 0) out.terms_.erase(it);
            }
        }
    }
    *this = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = Polynomial::constant(vars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (vars_ == rhs.vars_) return terms_ == rhs.terms_;
    auto merged = merge_contexts(*this, rhs);
    return embedded(merged).terms_ == rhs.embedded(merged).terms_;
}

Rational Polynomial::eval(const std::map<std::string, Rational>& point) const {
    // check bindings for occurring variables
    for (size_t i = 0; i < vars_.size(); ++i) {
        bool occurs = false;
        for (const auto& [m, c] : terms_)
            if (m[i] > 0) { occurs = true; break; }
        if (occurs && !point.count(vars_[i]))
            throw InputError("eval: unbound variable '" + vars_[i] + "'");
    }
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            const Rational& x = point.at(vars_[i]);
            Rational p = 1;
            for (unsigned k = 0; k < m[i]; ++k) p *= x;
            term *= p;
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& repl) const {
    // Build the result context: images' variables plus untouched variables.
    std::vector<std::string> out_vars;
    auto add_var = [&out_vars](const std::string& v) {
        if (std::find(out_vars.begin(), out_vars.end(), v) == out_vars.end()) out_vars.push_back(v);
    };
    for (const auto& v : vars_) {
        auto it = repl.find(v);
        if (it == repl.end()) {
            add_var(v);
        } else {
            for (const auto& w : it->second.vars()) add_var(w);
        }
    }
    if (out_vars.empty()) out_vars = {};
    std::vector<Polynomial> images;
    images.reserve(vars_.size());
    for (const auto& v : vars_) {
        auto it = repl.find(v);
        if (it == repl.end())
            images.push_back(Polynomial::variable(out_vars.empty() ? std::vector<std::string>{v} : out_vars, v));
        else
            images.push_back(it->second.embedded(out_vars));
    }
    Polynomial result(out_vars);
    for (const auto& [m, c] : terms_) {
        Polynomial term = Polynomial::constant(out_vars, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term *= images[i].pow(m[i]);
        result += term;
    }
    return result;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    int i = var_index(var);
    Polynomial out(vars_);
    if (i < 0) return out;
    for (const auto& [m, c] : terms_) {
        if (m[static_cast<size_t>(i)] == 0) continue;
        Mono mm = m;
        unsigned e = mm[static_cast<size_t>(i)]--;
        out.terms_[mm] = c * Rational(static_cast<long>(e));
    }
    // entries may collide only if exponents differed, impossible; but a
    // coefficient can never become zero here since c != 0 and e >= 1.
    return out;
}

Polynomial Polynomial::antiderivative(const std::string& var) const {
    int i = var_index(var);
    std::vector<std::string> ctx = vars_;
    if (i < 0) {
        ctx.push_back(var);
        return embedded(ctx).antiderivative(var);
    }
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        unsigned e = ++mm[static_cast<size_t>(i)];
        out.terms_[mm] = c / Rational(static_cast<long>(e));
    }
    return out;
}

Polynomial Polynomial::coefficient_of(const std::string& var, unsigned power) const {
    int i = var_index(var);
    Polynomial out(vars_);
    if (i < 0) {
        if (power == 0) return *this;
        return out;
    }
    for (const auto& [m, c] : terms_) {
        if (m[static_cast<size_t>(i)] != power) continue;
        Mono mm = m;
        mm[static_cast<size_t>(i)] = 0;
        out.terms_[mm] = c;
    }
    return out;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(const std::string& var) const {
    std::map<unsigned, Polynomial> out;
    int i = var_index(var);
    if (i < 0) {
        if (!is_zero()) out[0] = *this;
        return out;
    }
    for (const auto& [m, c] : terms_) {
        unsigned e = m[static_cast<size_t>(i)];
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Polynomial(vars_)).first;
        Mono mm = m;
        mm[static_cast<size_t>(i)] = 0;
        it->second.terms_[mm] = c;
    }
    return out;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return 0;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational q(num_gcd, den_lcm);
    q.canonicalize();
    if (sgn(q) < 0) q = -q;
    return q;
}

Rational Polynomial::leading_coefficient() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

bool Polynomial::all_coefficients_nonnegative() const {
    for (const auto& [m, c] : terms_)
        if (sgn(c) < 0) return false;
    return true;
}

void Polynomial::set_term(const Mono& m, const Rational& c) {
    if (m.size() != vars_.size()) throw InputError("set_term: arity mismatch");
    if (sgn(c) == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        Rational c = it->second;
        bool neg = sgn(c) < 0;
        bool has_vars = false;
        for (unsigned e : m)
            if (e > 0) has_vars = true;
        if (first) {
            // a leading negative coefficient stays inside the rational
            // literal so the output re-parses under the grammar
            if (neg && has_vars) {
                os << rational_str(c) << "*";
            } else if (!has_vars) {
                os << rational_str(c);
            } else if (c != 1) {
                os << rational_str(c) << "*";
            }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) c = -c;
            if (!has_vars)
                os << rational_str(c);
            else if (c != 1)
                os << rational_str(c) << "*";
        }
        if (has_vars) {
            bool started = false;
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (started) os << "*";
                started = true;
                os << vars_[i];
                if (m[i] > 1) os << "^" << m[i];
            }
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Exact division and gcd.

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    auto merged = merge_contexts(a, b);
    Polynomial rem = a.embedded(merged);
    Polynomial div = b.embedded(merged);
    Polynomial quot(merged);
    const auto& dterms = div.terms();
    const Mono& lm = dterms.rbegin()->first;
    const Rational& lc = dterms.rbegin()->second;
    while (!rem.is_zero()) {
        const Mono& rm = rem.terms().rbegin()->first;
        Mono q(rm.size());
        for (size_t i = 0; i < rm.size(); ++i) {
            if (rm[i] < lm[i]) return std::nullopt;
            q[i] = rm[i] - lm[i];
        }
        Rational qc = rem.terms().rbegin()->second / lc;
        Polynomial qterm(merged);
        qterm.set_term(q, qc);
        quot += qterm;
        rem -= qterm * div;
    }
    return quot;
}

namespace {

// normalized primitive part: integer coprime coefficients, positive leading
Polynomial normalize_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational c = p.content();
    if (sgn(p.leading_coefficient()) < 0) c = -c;
    Polynomial out = p;
    out *= Rational(1) / c;
    return out;
}

// p as univariate in var: dense coefficient list (low to high)
std::vector<Polynomial> univariate_view(const Polynomial& p, const std::string& var) {
    auto coeffs = p.coefficients_in(var);
    unsigned deg = coeffs.empty() ? 0 : coeffs.rbegin()->first;
    std::vector<Polynomial> out(deg + 1, Polynomial(p.vars()));
    for (auto& [e, c] : coeffs) out[e] = c;
    return out;
}

Polynomial from_univariate(const std::vector<Polynomial>& coeffs, const std::string& var,
                           const std::vector<std::string>& ctx) {
    Polynomial out(ctx);
    Polynomial x = Polynomial::variable(ctx, var);
    for (size_t e = 0; e < coeffs.size(); ++e)
        if (!coeffs[e].is_zero()) out += coeffs[e].embedded(ctx) * x.pow(static_cast<unsigned>(e));
    return out;
}

int true_degree(const std::vector<Polynomial>& u) {
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i)
        if (!u[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

// pseudo-remainder of A by B in the main variable (deg A >= deg B >= 0)
std::vector<Polynomial> pseudo_rem(std::vector<Polynomial> A, const std::vector<Polynomial>& B) {
    int da = true_degree(A), db = true_degree(B);
    const Polynomial& lb = B[static_cast<size_t>(db)];
    while (da >= db && da >= 0) {
        Polynomial la = A[static_cast<size_t>(da)];
        // A := lb*A - la*x^(da-db)*B
        for (auto& c : A) c *= lb;
        for (int i = 0; i <= db; ++i) {
            size_t k = static_cast<size_t>(da - db + i);
            A[k] -= la * B[static_cast<size_t>(i)];
        }
        int nda = -1;
        for (int i = da; i >= 0; --i)
            if (!A[static_cast<size_t>(i)].is_zero()) { nda = i; break; }
        if (nda == da) // leading term must cancel
            throw CaseDataError("pseudo_rem: leading term failed to cancel");
        da = nda;
    }
    A.resize(static_cast<size_t>(std::max(da, 0)) + 1, Polynomial(A.empty() ? std::vector<std::string>{} : A.front().vars()));
    return A;
}

Polynomial content_in(const std::vector<Polynomial>& u) {
    Polynomial g;
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize_primitive(c) : poly_gcd(g, c);
        if (g.is_constant() && g.constant_value() == 1) break;
    }
    return g;
}

// scales the coefficient list so the collective rational content is 1;
// essential to keep the PRS integer growth under control
void remove_rational_content(std::vector<Polynomial>& u) {
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& p : u)
        for (const auto& [m, c] : p.terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
    if (sgn(Rational(num_gcd)) == 0) return;
    Rational rc(num_gcd, den_lcm);
    rc.canonicalize();
    Rational inv = Rational(1) / rc;
    for (auto& p : u) p *= inv;
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    auto ctx = merge_contexts(a, b);
    Polynomial A = a.embedded(ctx), B = b.embedded(ctx);
    if (A.is_constant() || B.is_constant())
        return Polynomial::constant(ctx, 1);
    // main variable: the one with the lowest positive joint degree, to keep
    // the pseudo-remainder sequence short
    std::string main;
    int best = -1;
    for (const auto& v : ctx) {
        int da = A.degree_in(v), db = B.degree_in(v);
        if (da == 0 && db == 0) continue;
        int score = std::max(da, db);
        if (best < 0 || score < best) {
            best = score;
            main = v;
        }
    }
    if (main.empty()) return Polynomial::constant(ctx, 1);

    auto ua = univariate_view(A, main);
    auto ub = univariate_view(B, main);
    Polynomial ca = content_in(ua), cb = content_in(ub);
    Polynomial cg = poly_gcd(ca, cb);

    auto divide_through = [](std::vector<Polynomial>& u, const Polynomial& c) {
        for (auto& x : u) {
            if (x.is_zero()) continue;
            auto q = try_divide(x, c);
            if (!q) throw CaseDataError("poly_gcd: content division failed");
            x = *q;
        }
    };
    divide_through(ua, ca);
    divide_through(ub, cb);
    remove_rational_content(ua);
    remove_rational_content(ub);

    // primitive PRS
    if (true_degree(ua) < true_degree(ub)) std::swap(ua, ub);
    while (true_degree(ub) >= 0) {
        auto r = pseudo_rem(ua, ub);
        ua = std::move(ub);
        if (true_degree(r) < 0) {
            ub = r; // zero
            continue;
        }
        Polynomial cr = content_in(r);
        divide_through(r, cr);
        remove_rational_content(r);
        ub = std::move(r);
    }
    Polynomial gp = from_univariate(ua, main, ctx);
    gp = normalize_primitive(gp);
    Polynomial result = cg.embedded(ctx) * gp;
    return normalize_primitive(result);
}

} // namespace kstab
