#include "zigzag/hochschild.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace zigzag {

void HochschildChain::add(const std::vector<int>& word, int last, const Rational& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(word, last);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

int HochschildChain::word_degree(const std::vector<int>& word, int last) const {
    int d = alg->at(last).deg;
    for (int a : word) d += alg->at(a).deg - 1;
    return d;
}

std::optional<int> HochschildChain::degree() const {
    std::optional<int> d;
    for (auto& [k, c] : terms) {
        int wd = word_degree(k.first, k.second);
        if (!d) d = wd;
        else if (*d != wd) return std::nullopt;
    }
    return d;
}

int HochschildChain::max_bar_length() const {
    int l = 0;
    for (auto& [k, c] : terms) l = std::max(l, (int)k.first.size());
    return l;
}

HochschildChain& HochschildChain::operator+=(const HochschildChain& o) {
    for (auto& [k, c] : o.terms) add(k.first, k.second, c);
    return *this;
}

HochschildChain& HochschildChain::operator-=(const HochschildChain& o) {
    for (auto& [k, c] : o.terms) add(k.first, k.second, -c);
    return *this;
}

HochschildChain hh_differential(const HochschildChain& c) {
    const ZigzagAlgebra& alg = *c.alg;
    HochschildChain out;
    out.alg = c.alg;
    for (auto& [key, coeff] : c.terms) {
        const std::vector<int>& w = key.first;
        int a = key.second;
        int l = (int)w.size();
        int dega = alg.at(a).deg;
        auto tail = [&](int i) { // |a| + sum_{k<=i} |a_k| - i, a_1 = w[l-1]
            int s = dega - i;
            for (int k = 1; k <= i; ++k) s += alg.at(w[l - k]).deg;
            return s;
        };
        // adjacent bar merges, block (a_{i+2}, a_{i+1})
        for (int i = 0; i + 2 <= l; ++i) {
            int x2 = w[l - (i + 2)];
            int x1 = w[l - (i + 1)];
            auto p = alg.product(x2, x1);
            if (!p) continue;
            std::vector<int> nw;
            for (int k = 0; k < l - (i + 2); ++k) nw.push_back(w[k]);
            nw.push_back(p->first);
            for (int k = l - i; k < l; ++k) nw.push_back(w[k]);
            Rational s = sign_pow(tail(i)) * sign_pow(alg.at(x1).deg); // mu2 dictionary
            out.add(nw, a, coeff * s * p->second);
        }
        if (l >= 1) {
            // (i, j) = (1, 0): - a_l (x) ... (x) a_2 (x) mu2(a_1, a)
            int a1 = w[l - 1];
            auto p = alg.product(a1, a);
            if (p) {
                std::vector<int> nw(w.begin(), w.end() - 1);
                out.add(nw, p->first, -coeff * sign_pow(dega) * p->second);
            }
            // (i, j) = (0, 1): cyclic wrap with mu2(a, a_l)
            int al = w[0];
            auto q = alg.product(a, al);
            if (q) {
                int e1 = alg.at(al).deg - 1;
                int e2 = dega + l;
                for (int k = 1; k <= l - 1; ++k) e2 += alg.at(w[l - k]).deg;
                std::vector<int> nw(w.begin() + 1, w.end());
                Rational s = sign_pow(e1 * e2) * sign_pow(alg.at(al).deg); // mu2 dictionary
                out.add(nw, q->first, -coeff * s * q->second);
            }
        }
    }
    return out;
}

HochschildChain end_to_hh(const TwistedComplex& c, const Vec& endo) {
    const ZigzagAlgebra& alg = *c.alg;
    DgHom h(c, c);
    HochschildChain out;
    out.alg = &alg;
    // Sum over cycles f_0 -> f_1 -> ... -> f_l -> f_0 of
    // D_{f_l, f_{l-1}} (x) ... (x) D_{f_1, f_0} (x) endo_{f_0, f_l}, with the
    // shift sign prod_k (-1)^{t_{f_k}}.
    // Walk paths through nonzero D-entries (finite by strict triangularity).
    struct Path {
        std::vector<int> nodes;            // f_0 ... f_l
        std::vector<std::pair<int, Rational>> word; // entries D_{f_{k+1}, f_k} as (path, coeff) picks
    };
    // collect entries
    int ng = c.size();
    // enumerate chains of generators
    std::vector<std::vector<int>> chains; // node sequences f_0..f_l
    {
        std::vector<std::vector<int>> frontier;
        for (int f = 0; f < ng; ++f) frontier.push_back({f});
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (auto& ch : frontier) {
                chains.push_back(ch);
                int last = ch.back();
                for (int g = 0; g < ng; ++g)
                    if (!c.entry(g, last).empty()) {
                        auto nch = ch;
                        nch.push_back(g);
                        next.push_back(std::move(nch));
                    }
            }
            frontier = std::move(next);
            if (chains.size() > 100000) throw std::logic_error("end_to_hh: differential not triangular?");
        }
    }
    for (auto& ch : chains) {
        int l = (int)ch.size() - 1;
        int f0 = ch[0], fl = ch[l];
        // endo components f_l -> f_0
        for (int i = 0; i < h.dim(); ++i) {
            if (endo[i].is_zero()) continue;
            const auto& e = h.basis()[i];
            if (e.f0 != fl || e.f1 != f0) continue;
            // expand the product of entries along the chain
            std::vector<std::pair<std::vector<int>, Rational>> words{{{}, endo[i]}};
            for (int k = l - 1; k >= 0; --k) {
                // entry D_{ch[k+1], ch[k]}: bar slot position l - k - 1 from the left
                auto entry = c.entry(ch[k + 1], ch[k]);
                std::vector<std::pair<std::vector<int>, Rational>> grown;
                for (auto& [word, coeff] : words)
                    for (auto& [p, pc] : entry) {
                        auto nw = word;
                        nw.push_back(p);
                        grown.push_back({std::move(nw), coeff * pc});
                    }
                words = std::move(grown);
            }
            // words built as [D_{f_l,f_{l-1}}, ..., D_{f_1,f_0}] by walking k = l-1 .. 0:
            // position 0 holds D_{f_l, f_{l-1}}: correct left-to-right order.
            int tsum = 0;
            for (int f : ch) tsum += c.gen_t(f);
            Rational s = sign_pow(tsum);
            for (auto& [word, coeff] : words) out.add(word, e.path, s * coeff);
        }
    }
    return out;
}

HochschildChain end_to_hh_id(const TwistedComplex& c) {
    DgHom h(c, c);
    Vec idv(h.dim(), Rational(0));
    for (int i = 0; i < h.dim(); ++i) {
        const auto& e = h.basis()[i];
        if (e.f0 == e.f1 && c.alg->is_idempotent(e.path)) idv[i] = Rational(1);
    }
    return end_to_hh(c, idv);
}

namespace {

// Cyclically composable words of a given degree, bar length <= cap.
std::vector<std::pair<std::vector<int>, int>> cyclic_words(const ZigzagAlgebra& alg, int degree, int cap) {
    std::vector<std::pair<std::vector<int>, int>> out;
    // last slot a: from tgt(a) =: v0 the chain a_1, a_2, ..., a_l must satisfy
    // tgt(a_1) = src-of-nothing... chain: src(a_{k+1}) = tgt(a_k), src(a_1) = tgt(a),
    // src(a) = tgt(a_l).
    for (int a = 0; a < alg.dim(); ++a) {
        // build backwards: word stored [a_l, ..., a_1]
        struct Node {
            std::vector<int> rev; // a_1, a_2, ... (reversed storage)
            int deg;
            int head; // tgt of the last appended (a_k) = composability point for a_{k+1}
        };
        std::vector<Node> frontier{{{}, alg.at(a).deg, alg.at(a).tgt}};
        for (int l = 0; l <= cap; ++l) {
            std::vector<Node> next;
            for (auto& nd : frontier) {
                // close the cycle: src(a) = tgt(a_l) (= nd.head when l >= 1; for l = 0: src(a) = tgt(a))
                if (nd.deg == degree && alg.at(a).src == nd.head) {
                    std::vector<int> w(nd.rev.rbegin(), nd.rev.rend());
                    out.push_back({std::move(w), a});
                }
                if (l == cap) continue;
                for (int b = 0; b < alg.dim(); ++b) {
                    if (alg.at(b).src != nd.head) continue;
                    Node nn = nd;
                    nn.rev.push_back(b);
                    nn.deg += alg.at(b).deg - 1;
                    nn.head = alg.at(b).tgt;
                    if (nn.deg > degree + cap + 1 || nn.deg < degree - cap - 1) continue;
                    next.push_back(std::move(nn));
                }
            }
            frontier = std::move(next);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

H0Reduction reduce_degree0(const HochschildChain& x, int extra_length) {
    const ZigzagAlgebra& alg = *x.alg;
    auto deg = x.degree();
    if (!x.empty() && (!deg || *deg != 0)) throw std::invalid_argument("reduce_degree0: chain not of degree 0");
    int cap = x.max_bar_length() + extra_length;

    auto w0 = cyclic_words(alg, 0, cap);
    auto w1 = cyclic_words(alg, -1, cap);
    std::map<std::pair<std::vector<int>, int>, int> pos0;
    for (size_t i = 0; i < w0.size(); ++i) pos0[w0[i]] = (int)i;

    int m = alg.m();
    SparseMatrix sys((int)w0.size(), (int)w1.size() + m);
    for (size_t j = 0; j < w1.size(); ++j) {
        HochschildChain y;
        y.alg = &alg;
        y.add(w1[j].first, w1[j].second, Rational(1));
        HochschildChain dy = hh_differential(y);
        for (auto& [k, c] : dy.terms) {
            auto it = pos0.find(k);
            if (it == pos0.end()) throw std::logic_error("reduce_degree0: boundary leaves word space");
            sys.add(it->second, (int)j, c);
        }
    }
    for (int k = 0; k < m; ++k) {
        auto it = pos0.find({{}, alg.idempotent(k + 1)});
        if (it == pos0.end()) throw std::logic_error("reduce_degree0: e_k word missing");
        sys.set(it->second, (int)w1.size() + k, Rational(1));
    }
    Vec rhs(w0.size(), Rational(0));
    for (auto& [k, c] : x.terms) {
        auto it = pos0.find(k);
        if (it == pos0.end()) throw std::logic_error("reduce_degree0: chain outside the word space");
        rhs[it->second] = c;
    }
    auto sol = solve_once(sys, rhs);
    if (!sol) throw std::logic_error("reduce_degree0: reduction failed (enlarge the window)");
    H0Reduction red;
    red.bounding.alg = &alg;
    for (size_t j = 0; j < w1.size(); ++j)
        if (!(*sol)[j].is_zero()) red.bounding.add(w1[j].first, w1[j].second, (*sol)[j]);
    red.klass.resize(m);
    for (int k = 0; k < m; ++k) red.klass[k] = (*sol)[w1.size() + k];
    // verify: del(bounding) = x - sum klass_k e_k
    HochschildChain check = hh_differential(red.bounding);
    HochschildChain want = x;
    for (int k = 0; k < m; ++k) want.add({}, alg.idempotent(k + 1), -red.klass[k]);
    check -= want;
    if (!check.empty()) throw std::logic_error("reduce_degree0: certificate check failed");
    return red;
}

std::vector<long> alg_class(const TwistedComplex& c) {
    HochschildChain x = end_to_hh_id(c);
    // the image of a closed degree-0 endomorphism is a cycle
    HochschildChain dx = hh_differential(x);
    if (!dx.empty()) throw std::logic_error("alg_class: image of the identity is not closed");
    auto red = reduce_degree0(x);
    std::vector<long> out;
    for (auto& r : red.klass) {
        if (!r.is_integer()) throw std::logic_error("alg_class: non-integral class");
        out.push_back(r.to_long());
    }
    return out;
}

std::vector<std::vector<long>> gram_matrix(const ZigzagAlgebra& a) {
    int m = a.m();
    std::vector<std::vector<long>> g(m, std::vector<long>(m, 0));
    for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
            auto pk = TwistedComplex::projective(a, k);
            auto pl = TwistedComplex::projective(a, l);
            g[k - 1][l - 1] = euler_pairing(pk, pl);
        }
    return g;
}

long gram_det(const std::vector<std::vector<long>>& g) {
    int n = (int)g.size();
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g[i][j]) m.set(i, j, Rational(g[i][j]));
    // determinant by elimination with exact rationals
    // (small matrices; do simple fraction-free expansion instead)
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rational(g[i][j]);
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = a[col][col].inv();
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] * inv;
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det.to_long();
}

bool cardy_verify(const TwistedComplex& c0, const TwistedComplex& c1) {
    auto g = gram_matrix(*c0.alg);
    auto k0 = c0.k_class();
    auto k1 = c1.k_class();
    long rhs = 0;
    for (size_t i = 0; i < k0.size(); ++i)
        for (size_t j = 0; j < k1.size(); ++j) rhs += k0[i] * g[i][j] * k1[j];
    return euler_pairing(c0, c1) == rhs;
}

} // namespace zigzag
