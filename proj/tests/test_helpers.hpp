#pragma once

#include "zigzag/module.hpp"

#include <algorithm>
#include <random>

namespace zigzag::testing {

// P_k = e_k A as a strictly unital dg module (mu^1 = 0, mu^2 = dictionary
// right multiplication): basis = paths with left endpoint k.
inline AInfModule projective(const ZigzagAlgebra& alg, int k) {
    AInfModule m;
    m.alg = &alg;
    std::vector<int> alg_idx;
    for (int i = 0; i < alg.dim(); ++i) {
        if (alg.at(i).tgt != k) continue;
        m.basis.push_back({alg.at(i).label, alg.at(i).deg, alg.at(i).src, alg.at(i).deg});
        alg_idx.push_back(i);
    }
    for (size_t x = 0; x < alg_idx.size(); ++x) {
        for (int a = 0; a < alg.dim(); ++a) {
            if (alg.is_idempotent(a)) continue;
            auto p = alg.product(alg_idx[x], a);
            if (!p) continue;
            // mu^2(m, a) = (-1)^{|a|} m*a
            auto pos = std::find(alg_idx.begin(), alg_idx.end(), p->first);
            LinComb v;
            v[(int)(pos - alg_idx.begin())] = sign_pow(alg.at(a).deg) * p->second;
            m.set_mu({(int)x, a}, v);
        }
    }
    return m;
}

// Direct sum (no interaction) for convention tests.
inline AInfModule direct_sum(const AInfModule& a, const AInfModule& b) {
    AInfModule m;
    m.alg = a.alg;
    m.basis = a.basis;
    for (auto e : b.basis) {
        e.label += "'";
        m.basis.push_back(e);
    }
    int off = a.dim();
    for (auto& [k, v] : a.mu_table()) m.set_mu(k, v);
    for (auto& [k, v] : b.mu_table()) {
        MuKey key = k;
        key[0] += off;
        LinComb w;
        for (auto& [i, c] : v) w[i + off] = c;
        m.set_mu(key, w);
    }
    return m;
}

// Random hom element of the given degree with components up to max_arity.
inline HomElement random_hom(std::mt19937_64& rng, const AInfModule& src, const AInfModule& tgt,
                             int deg, int max_arity) {
    HomElement f;
    f.src = &src;
    f.tgt = &tgt;
    f.deg = deg;
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto keys = test_tuples(src, max_arity, 0);
    for (auto& key : keys) {
        int d = (int)key.size() - 1;
        int want = src.basis[key[0]].deg + deg - d;
        for (int i = 1; i <= d; ++i) want += src.alg->at(key[i]).deg;
        LinComb v;
        for (int out = 0; out < tgt.dim(); ++out)
            if (tgt.basis[out].deg == want) {
                int c = coeff(rng);
                if (c != 0) v[out] = Rational(c);
            }
        if (!v.empty()) f.set(key, v);
    }
    return f;
}

inline bool hom_equal(const HomElement& a, const HomElement& b, int arity_cap) {
    auto keys = test_tuples(*a.src, arity_cap, 0);
    for (auto& key : keys) {
        std::vector<int> as(key.begin() + 1, key.end());
        LinComb va = a.component(key[0], as);
        LinComb vb = b.component(key[0], as);
        if (va != vb) return false;
    }
    return true;
}

} // namespace zigzag::testing
