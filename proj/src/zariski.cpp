#include "kstab/zariski.hpp"

#include <sstream>

namespace kstab {

Inequality parse_inequality(const std::string& text, const std::vector<std::string>& vars) {
    size_t pos = text.find("<=");
    size_t len = 2;
    bool less = true;
    if (pos == std::string::npos) {
        pos = text.find(">=");
        less = false;
    }
    if (pos == std::string::npos) {
        pos = text.find('<');
        len = 1;
        less = true;
    }
    if (pos == std::string::npos) {
        pos = text.find('>');
        len = 1;
        less = false;
    }
    if (pos == std::string::npos)
        throw InputError("inequality without comparator: '" + text + "'");
    Polynomial lhs = parse_polynomial(text.substr(0, pos), vars);
    Polynomial rhs = parse_polynomial(text.substr(pos + len), vars);
    Inequality out;
    out.text = text;
    out.nonneg = less ? rhs - lhs : lhs - rhs;
    return out;
}

const DivisorClass& Geometry::divisor(const std::string& name) const {
    auto it = named_divisors.find(name);
    if (it == named_divisors.end()) throw CaseDataError("unknown divisor '" + name + "'");
    return it->second;
}

const CurveClass& Geometry::curve(const std::string& name) const {
    auto it = curves.find(name);
    if (it == curves.end()) throw CaseDataError("unknown curve '" + name + "'");
    return it->second;
}

Decomposition decompose_in_chamber(const Geometry& geo, const DivisorClass& d, const Chamber& ch) {
    size_t k = ch.negative_support.size();
    if (ch.orthogonality.size() != k)
        throw CaseDataError("chamber support and orthogonality lists differ in length");
    Decomposition out;
    out.positive = d;
    out.negative.coeffs.assign(d.coeffs.size(), Polynomial{});
    if (k == 0) return out;

    std::vector<const DivisorClass*> supp;
    std::vector<const CurveClass*> orth;
    for (const auto& n : ch.negative_support) supp.push_back(&geo.divisor(n));
    for (const auto& n : ch.orthogonality) orth.push_back(&geo.curve(n));

    // pairing matrix M[j][i] = N_i . C_j (exact rationals)
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < k; ++i) {
            Polynomial p = pair_curve(*supp[i], *orth[j]);
            if (!p.is_constant())
                throw CaseDataError("support divisor pairing is not constant");
            m[j][i] = p.constant_value();
        }
    std::vector<Polynomial> rhs(k);
    for (size_t j = 0; j < k; ++j) rhs[j] = pair_curve(d, *orth[j]);

    // Gaussian elimination with the rational matrix applied to polynomial rhs.
    for (size_t col = 0; col < k; ++col) {
        size_t piv = col;
        while (piv < k && sgn(m[piv][col]) == 0) ++piv;
        if (piv == k)
            throw CaseDataError("singular pairing matrix in chamber decomposition");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv = Rational(1) / m[col][col];
        for (size_t c = col; c < k; ++c) m[col][c] *= inv;
        rhs[col] *= inv;
        for (size_t r = 0; r < k; ++r) {
            if (r == col || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col];
            for (size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= rhs[col] * f;
        }
    }
    out.gammas = rhs;
    for (size_t i = 0; i < k; ++i) {
        DivisorClass scaled = supp[i]->scaled(out.gammas[i]);
        out.negative = out.negative + scaled;
        out.positive = out.positive - scaled;
    }
    // exactness check: the positive part kills every orthogonality curve
    for (size_t j = 0; j < k; ++j)
        if (!pair_curve(out.positive, *orth[j]).is_zero())
            throw CaseDataError("decomposition failed: P . " + orth[j]->name + " != 0");
    return out;
}

namespace {

DivisorClass l_minus_uf(const DivisorClass& l, const DivisorClass& f) {
    static const std::vector<std::string> uctx{"u"};
    Polynomial u = Polynomial::variable(uctx, "u");
    DivisorClass d;
    d.coeffs.reserve(l.coeffs.size());
    for (size_t i = 0; i < l.coeffs.size(); ++i) d.coeffs.push_back(l.coeffs[i] - u * f.coeffs[i]);
    return d;
}

} // namespace

PiecewiseVolume volume_piecewise(const Geometry& geo, const DivisorClass& polarization,
                                 const DivisorClass& f, const Schedule& schedule) {
    DivisorClass d = l_minus_uf(polarization, f);
    PiecewiseVolume out;
    for (const auto& ch : schedule.chambers) {
        Decomposition dec = decompose_in_chamber(geo, d, ch);
        out.pieces.push_back(geo.form.power(dec.positive));
    }
    return out;
}

PiecewiseVolume volume_t_derivative(const Geometry& geo, const DivisorClass& polarization,
                                    const DivisorClass& f, const Schedule& schedule) {
    DivisorClass d = l_minus_uf(polarization, f);
    PiecewiseVolume out;
    int n = geo.form.dim();
    for (const auto& ch : schedule.chambers) {
        Decomposition dec = decompose_in_chamber(geo, d, ch);
        // the chamber projection is linear in the divisor argument, so the
        // small-t positive part of L + tK - uF is P + t (K - sum gamma_i(K) N_i)
        Decomposition deck = decompose_in_chamber(geo, geo.canonical, ch);
        Polynomial piece = geo.form.power_times(dec.positive, deck.positive);
        piece *= Rational(n);
        out.pieces.push_back(std::move(piece));
    }
    return out;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& i : issues) os << i.where << ": " << i.detail << "\n";
    return os.str();
}

ValidationReport validate_schedule(const Geometry& geo, const DivisorClass& polarization,
                                   const DivisorClass& f, const Schedule& schedule) {
    ValidationReport rep;
    if (schedule.chambers.empty()) {
        rep.issues.push_back({"schedule", "no chambers"});
        return rep;
    }
    PiecewiseVolume vol = volume_piecewise(geo, polarization, f, schedule);
    const auto& chs = schedule.chambers;

    for (size_t i = 0; i + 1 < chs.size(); ++i) {
        if (!(chs[i].hi == chs[i + 1].lo)) {
            rep.issues.push_back({"abutment at chamber " + std::to_string(i),
                                  "hi = " + chs[i].hi.str() + " but next lo = " + chs[i + 1].lo.str()});
            continue;
        }
        const Polynomial wall = chs[i].hi.poly();
        Polynomial c0 = vol.pieces[i].substitute({{"u", wall}}) -
                        vol.pieces[i + 1].substitute({{"u", wall}});
        if (!c0.is_zero())
            rep.issues.push_back({"C0 at wall u = " + chs[i].hi.str(), "difference " + c0.str()});
        Polynomial c1 = vol.pieces[i].derivative("u").substitute({{"u", wall}}) -
                        vol.pieces[i + 1].derivative("u").substitute({{"u", wall}});
        if (!c1.is_zero())
            rep.issues.push_back({"C1 at wall u = " + chs[i].hi.str(), "difference " + c1.str()});
    }

    // threshold: vol vanishes at tau
    Polynomial at_tau = vol.pieces.back().substitute({{"u", schedule.threshold().poly()}});
    if (!at_tau.is_zero())
        rep.issues.push_back({"threshold u = " + schedule.threshold().str(),
                              "vol(tau) = " + at_tau.str()});

    // start: vol(0) = L^n whenever the first chamber starts at 0
    if (chs.front().lo.poly().is_zero()) {
        Polynomial zero_poly;
        Polynomial at0 = vol.pieces.front().substitute({{"u", zero_poly}});
        Polynomial ln = geo.form.power(polarization);
        if (at0 != ln)
            rep.issues.push_back({"start u = 0", "vol(0) - L^n = " + (at0 - ln).str()});
    }

    // fresh support divisors enter with vanishing coefficient at the wall
    DivisorClass d = l_minus_uf(polarization, f);
    for (size_t i = 0; i + 1 < chs.size(); ++i) {
        Decomposition dec = decompose_in_chamber(geo, d, chs[i + 1]);
        for (size_t s = 0; s < chs[i + 1].negative_support.size(); ++s) {
            const std::string& name = chs[i + 1].negative_support[s];
            bool fresh = true;
            for (const auto& prev : chs[i].negative_support)
                if (prev == name) fresh = false;
            if (!fresh) continue;
            Polynomial at_wall = dec.gammas[s].substitute({{"u", chs[i + 1].lo.poly()}});
            if (!at_wall.is_zero())
                rep.issues.push_back({"support entry of " + name + " at u = " + chs[i + 1].lo.str(),
                                      "gamma(wall) = " + at_wall.str()});
        }
    }
    return rep;
}

} // namespace kstab
