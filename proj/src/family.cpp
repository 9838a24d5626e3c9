#include "zigzag/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace zigzag {

int weight_of(const ZigzagAlgebra& a, int basis_idx) { return a.at(basis_idx).deg; }

void FamilyHom::set(const std::vector<int>& exps, const MuKey& key, const LinComb& v) {
    if ((int)exps.size() != vars) throw std::invalid_argument("FamilyHom::set: variable count mismatch");
    LinComb w;
    for (auto& [i, c] : v)
        if (!c.is_zero()) w[i] = c;
    auto k = std::make_pair(exps, key);
    if (w.empty()) comp.erase(k);
    else comp[k] = std::move(w);
}

LinComb FamilyHom::at(const std::vector<int>& exps, int m, const std::vector<int>& as) const {
    for (int a : as)
        if (mod->alg->is_idempotent(a)) return {};
    MuKey key;
    key.reserve(as.size() + 1);
    key.push_back(m);
    for (int a : as) key.push_back(a);
    auto it = comp.find({exps, key});
    return it == comp.end() ? LinComb{} : it->second;
}

LinComb FamilyHom::at_lin(const std::vector<int>& exps, const LinComb& m, const std::vector<int>& as) const {
    LinComb out;
    for (auto& [i, c] : m) lin_add(out, c, at(exps, i, as));
    return out;
}

int FamilyHom::max_arity() const {
    int d = 0;
    for (auto& [k, v] : comp) d = std::max(d, (int)k.second.size() - 1);
    return d;
}

std::set<std::vector<int>> FamilyHom::exponent_support() const {
    std::set<std::vector<int>> s;
    for (auto& [k, v] : comp) s.insert(k.first);
    return s;
}

FamilyHom& FamilyHom::operator+=(const FamilyHom& o) {
    if (mod != o.mod || vars != o.vars || deg != o.deg)
        throw std::invalid_argument("FamilyHom::operator+=: incompatible");
    for (auto& [k, v] : o.comp) {
        LinComb& mine = comp[k];
        for (auto& [i, c] : v) lin_add(mine, c, i);
        if (mine.empty()) comp.erase(k);
    }
    return *this;
}

FamilyHom& FamilyHom::operator-=(const FamilyHom& o) {
    FamilyHom neg = o;
    neg *= Rational(-1);
    return (*this += neg);
}

FamilyHom& FamilyHom::operator*=(const Rational& c) {
    if (c.is_zero()) {
        comp.clear();
        return *this;
    }
    for (auto& [k, v] : comp)
        for (auto& [i, w] : v) w *= c;
    return *this;
}

HomElement FamilyHom::at_identity() const {
    HomElement out;
    out.src = mod;
    out.tgt = mod;
    out.deg = deg;
    std::map<MuKey, LinComb> acc;
    for (auto& [k, v] : comp) {
        LinComb& t = acc[k.second];
        for (auto& [i, c] : v) lin_add(t, c, i);
    }
    for (auto& [key, v] : acc) {
        LinComb w;
        for (auto& [i, c] : v)
            if (!c.is_zero()) w[i] = c;
        if (!w.empty()) out.set(key, w);
    }
    return out;
}

HomElement FamilyHom::specialize(const std::vector<Rational>& gs) const {
    if ((int)gs.size() != vars) throw std::invalid_argument("FamilyHom::specialize: variable count mismatch");
    HomElement out;
    out.src = mod;
    out.tgt = mod;
    out.deg = deg;
    std::map<MuKey, LinComb> acc;
    auto powr = [](const Rational& g, int e) {
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= g;
        for (int i = 0; i > e; --i) r /= g;
        return r;
    };
    for (auto& [k, v] : comp) {
        Rational f(1);
        for (int j = 0; j < vars; ++j) f *= powr(gs[j], k.first[j]);
        LinComb& t = acc[k.second];
        for (auto& [i, c] : v) lin_add(t, f * c, i);
    }
    for (auto& [key, v] : acc) {
        LinComb w;
        for (auto& [i, c] : v)
            if (!c.is_zero()) w[i] = c;
        if (!w.empty()) out.set(key, w);
    }
    return out;
}

namespace {

Rational prefix_sign_mod(const AInfModule& mod, int m, const std::vector<int>& as, int i) {
    int d = (int)as.size();
    int s = mod.basis[m].deg + (d - i);
    for (int k = i + 1; k <= d; ++k) s += mod.alg->at(as[d - k]).deg;
    return sign_pow(s);
}

std::vector<int> shifted(const std::vector<int>& exps, int delta) {
    std::vector<int> out = exps;
    for (auto& w : out) w += delta;
    return out;
}

} // namespace

LinComb family_mu1_component(const FamilyHom& f, const std::vector<int>& exps, int m,
                             const std::vector<int>& as, bool source_twisted) {
    const AInfModule& M = *f.mod;
    const ZigzagAlgebra& alg = *M.alg;
    int d = (int)as.size();
    LinComb total;
    for (int i = 0; i <= d; ++i) {
        std::vector<int> head(as.begin(), as.begin() + (d - i));
        std::vector<int> tail(as.begin() + (d - i), as.end());
        Rational s = prefix_sign_mod(M, m, as, i);
        int tail_wt = 0;
        for (int a : tail) tail_wt += weight_of(alg, a);
        int head_wt = 0;
        for (int a : head) head_wt += weight_of(alg, a);
        // target-side: mu_{N^r}(f(m, head), g...(tail)); the tail twist shifts
        // the exponent at which f is read (target twisted), or none (source twisted).
        {
            LinComb fm = f.at(source_twisted ? exps : shifted(exps, -tail_wt), m, head);
            if (!fm.empty()) lin_add(total, s, M.mu_lin(fm, tail));
        }
        // source-side: f(mu(m, head), tail); for the source-twisted flavor the
        // inner mu carries the twist z^{head weights}.
        {
            LinComb mm = M.mu(m, head);
            if (!mm.empty()) {
                auto e = source_twisted ? shifted(exps, -head_wt) : exps;
                lin_add(total, s, f.at_lin(e, mm, tail));
            }
        }
    }
    // mu_A insertions (j = 2).
    for (int i = 0; i + 2 <= d; ++i) {
        int a2 = as[d - (i + 2)];
        int a1 = as[d - (i + 1)];
        auto p = alg.product(a2, a1);
        if (!p) continue;
        Rational coeff = sign_pow(alg.at(a1).deg) * p->second;
        std::vector<int> rest;
        rest.reserve(d - 1);
        for (int k = 0; k < d - (i + 2); ++k) rest.push_back(as[k]);
        rest.push_back(p->first);
        for (int k = d - i; k < d; ++k) rest.push_back(as[k]);
        Rational s = prefix_sign_mod(M, m, as, i);
        lin_add(total, s * coeff, f.at(exps, m, rest));
    }
    return total;
}

LinComb family_mu2_component(const FamilyHom& psi, const FamilyHom& phi, const std::vector<int>& exps,
                             int m, const std::vector<int>& as) {
    if (psi.mod != phi.mod) throw std::invalid_argument("family_mu2: module mismatch");
    const AInfModule& M = *psi.mod;
    const ZigzagAlgebra& alg = *M.alg;
    if ((int)exps.size() != psi.vars + phi.vars)
        throw std::invalid_argument("family_mu2: variable count mismatch");
    std::vector<int> top(exps.begin(), exps.begin() + psi.vars);
    std::vector<int> bot(exps.begin() + psi.vars, exps.end());
    int d = (int)as.size();
    LinComb total;
    for (int i = 0; i <= d; ++i) {
        std::vector<int> head(as.begin(), as.begin() + (d - i));
        std::vector<int> tail(as.begin() + (d - i), as.end());
        int tail_wt = 0;
        for (int a : tail) tail_wt += weight_of(alg, a);
        // tail consumed by psi is twisted by (z_q...z_1)^{wt}: read phi at bot - tw.
        LinComb inner = phi.at(shifted(bot, -tail_wt), m, head);
        if (inner.empty()) continue;
        Rational s = prefix_sign_mod(M, m, as, i);
        lin_add(total, s, psi.at_lin(top, inner, tail));
    }
    return total;
}

FamilyHom merge_pullback(const FamilyHom& f, int q) {
    if (q < 1 || q >= f.vars + 1) throw std::invalid_argument("merge_pullback: bad slot");
    FamilyHom out;
    out.mod = f.mod;
    out.vars = f.vars + 1;
    out.deg = f.deg;
    // output [w_{r+1}..w_1]: slots q and q+1 both read f's slot q.
    for (auto& [k, v] : f.comp) {
        const std::vector<int>& w = k.first; // [w_r..w_1]
        int r = f.vars;
        std::vector<int> nw(r + 1);
        auto wat = [&](int j) { return w[r - j]; };
        for (int j = 1; j < q; ++j) nw[r + 1 - j] = wat(j);
        nw[r + 1 - q] = wat(q);
        nw[r + 1 - (q + 1)] = wat(q);
        for (int j = q + 1; j <= r; ++j) nw[r + 1 - (j + 1)] = wat(j);
        FamilyHom tmp; // accumulate via set to normalize zeros
        auto key = std::make_pair(nw, k.second);
        LinComb& t = out.comp[key];
        for (auto& [i, c] : v) lin_add(t, c, i);
        if (t.empty()) out.comp.erase(key);
    }
    return out;
}

FamilyHom promote_above(const FamilyHom& f, int extra) {
    FamilyHom out;
    out.mod = f.mod;
    out.vars = f.vars + extra;
    out.deg = f.deg;
    for (auto& [k, v] : f.comp) {
        std::vector<int> w(extra, 0);
        w.insert(w.end(), k.first.begin(), k.first.end());
        out.comp[{w, k.second}] = v;
    }
    return out;
}

FamilyHom promote_below(const FamilyHom& f, int extra) {
    FamilyHom out;
    out.mod = f.mod;
    out.vars = f.vars + extra;
    out.deg = f.deg;
    for (auto& [k, v] : f.comp) {
        std::vector<int> w = k.first;
        for (int i = 0; i < extra; ++i) w.push_back(0);
        out.comp[{w, k.second}] = v;
    }
    return out;
}

FamilyHom constant_family(const HomElement& f, int vars) {
    if (f.src != f.tgt) throw std::invalid_argument("constant_family: endomorphism expected");
    FamilyHom out;
    out.mod = f.src;
    out.vars = vars;
    out.deg = f.deg;
    std::vector<int> zero(vars, 0);
    for (auto& [k, v] : f.phi) out.comp[{zero, k}] = v;
    return out;
}

FamilyHom identity_family(const AInfModule& m, int vars) {
    return constant_family(identity_hom(m), vars);
}

} // namespace zigzag
