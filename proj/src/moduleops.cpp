#include "zigzag/moduleops.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace zigzag {

namespace {

struct BarGen {
    int m;                  // basis index in M
    std::vector<int> chain; // [a_l, ..., a_1], composable nonunit paths
    int vertex;             // vertex of the free slot = src(a_1) (or vertex of m)
    int deg;                // |m| + sum(|a_k| - 1)
};

} // namespace

BarTensor bar_tensor(const AInfModule& m, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("bar_tensor: empty window");
    if (m.max_mu_arity() > 1) throw std::invalid_argument("bar_tensor: input must be a dg module");
    const ZigzagAlgebra& alg = *m.alg;
    int n = alg.n();
    int spread = m.max_deg() - m.min_deg();
    int cap = (hi - lo) + spread + 2;

    // Enumerate generators whose elements can hit the window; the module
    // itself is truncated at the element level below (keeping only elements
    // with lo <= deg <= hi gives an honest A-infinity subquotient: degrees
    // only go up under the structure maps, bar length only down).
    std::vector<BarGen> gens;
    std::map<std::pair<int, std::vector<int>>, int> gen_index;
    {
        std::vector<BarGen> frontier;
        for (int i = 0; i < m.dim(); ++i) {
            BarGen g{i, {}, m.basis[i].vertex, m.basis[i].deg};
            frontier.push_back(g);
        }
        for (int l = 0; l <= cap; ++l) {
            std::vector<BarGen> next;
            for (auto& g : frontier) {
                if (g.deg >= lo - n && g.deg <= hi) {
                    gen_index[{g.m, g.chain}] = (int)gens.size();
                    gens.push_back(g);
                }
                if (l == cap) continue;
                for (int a = 0; a < alg.dim(); ++a) {
                    if (alg.is_idempotent(a)) continue;
                    if (alg.at(a).tgt != g.vertex) continue;
                    BarGen ng = g;
                    ng.chain.push_back(a);
                    ng.vertex = alg.at(a).src;
                    ng.deg += alg.at(a).deg - 1;
                    // degree moves by n-1 or -1 per step; prune far outside
                    if (ng.deg > hi + cap || ng.deg < lo - n - cap) continue;
                    next.push_back(std::move(ng));
                }
            }
            frontier = std::move(next);
        }
    }

    auto mod = std::make_shared<AInfModule>();
    mod->alg = &alg;
    bool bigr = m.bigraded();
    std::map<std::pair<int, int>, int> pos; // (gen, path) -> basis idx
    std::vector<int> gen_of_basis;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const auto& g = gens[gi];
        for (int p = 0; p < alg.dim(); ++p) {
            if (alg.at(p).tgt != g.vertex) continue;
            int deg = g.deg + alg.at(p).deg;
            if (deg < lo || deg > hi) continue; // element-level truncation
            pos[{(int)gi, p}] = mod->dim();
            gen_of_basis.push_back((int)gi);
            std::string label = "b" + std::to_string(gi) + "." + alg.at(p).label;
            std::optional<int> s;
            if (bigr) {
                int sv = *m.basis[g.m].s + alg.at(p).deg;
                for (int a : g.chain) sv += alg.at(a).deg;
                s = sv;
            }
            mod->basis.push_back({label, deg, alg.at(p).src, s});
        }
    }
    // mu^2: dictionary right multiplication on the free slot.
    for (auto& [gp, idx] : pos) {
        auto [gi, p] = gp;
        for (int a = 0; a < alg.dim(); ++a) {
            if (alg.is_idempotent(a)) continue;
            auto prod = alg.product(p, a);
            if (!prod) continue;
            auto it = pos.find({gi, prod->first});
            if (it == pos.end()) continue; // truncated away
            LinComb v;
            v[it->second] = sign_pow(alg.at(a).deg) * prod->second;
            mod->set_mu({idx, a}, v);
        }
    }
    // Honest bar differential on generators, D(gamma) = sum gamma' * entry:
    //   (a) del_M(m) (x) chain,
    //   (b) (-1)^{|m|} (m*a_l) (x) rest,
    //   (c) (-1)^{|m| + sum_{j >= k+1} ||a_j||} merge (a_{k+1} a_k),
    //   (d) (-1)^{|m| + sum_{j >= 1} ||a_j||} chop a_1 into the free slot,
    // with ||a|| = |a| - 1. D*D = 0 holds; the module structure is
    // mu^1(x) = (-1)^{|x|} D(x), mu^2 the dictionary right multiplication.
    auto red = [&](int i) { return alg.at(i).deg - 1; };
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const BarGen& g = gens[gi];
        int l = (int)g.chain.size();
        int dm = m.basis[g.m].deg;
        // target gen -> algebra entry
        std::map<int, AlgElem> dgen;
        auto addt = [&](int tg, int path, const Rational& c) {
            dgen[tg][path] += c;
            if (dgen[tg][path].is_zero()) dgen[tg].erase(path);
        };
        // (a) del_M(m) = (-1)^{|m|} mu^1_M(m)
        for (auto& [mm, c] : m.mu(g.m, {})) {
            auto it = gen_index.find({mm, g.chain});
            if (it != gen_index.end())
                addt(it->second, alg.idempotent(g.vertex), sign_pow(dm) * c);
        }
        // (b) (m * a_l) = (-1)^{|a_l|} mu^2_M(m, a_l), sign (-1)^{|m|}
        if (l >= 1) {
            int al = g.chain[0];
            std::vector<int> rest(g.chain.begin() + 1, g.chain.end());
            for (auto& [mm, c] : m.mu(g.m, {al})) {
                auto it = gen_index.find({mm, rest});
                if (it != gen_index.end())
                    addt(it->second, alg.idempotent(g.vertex),
                         sign_pow(dm + alg.at(al).deg) * c);
            }
        }
        // (c) merges at slot k = 1..l-1; a_l = chain[0], a_1 = chain[l-1]
        for (int k = 1; k <= l - 1; ++k) {
            int up = g.chain[l - (k + 1)];
            int dn = g.chain[l - k];
            auto prod = alg.product(up, dn);
            if (!prod) continue;
            std::vector<int> merged;
            for (int t = 0; t < l - (k + 1); ++t) merged.push_back(g.chain[t]);
            merged.push_back(prod->first);
            for (int t = l - k + 1; t < l; ++t) merged.push_back(g.chain[t]);
            auto it = gen_index.find({g.m, merged});
            if (it == gen_index.end()) continue;
            int e = dm;
            for (int j = k + 1; j <= l; ++j) e += red(g.chain[l - j]);
            addt(it->second, alg.idempotent(g.vertex), sign_pow(e) * prod->second);
        }
        // (d) chop a_1 into the free slot
        if (l >= 1) {
            int a1 = g.chain[l - 1];
            std::vector<int> rest(g.chain.begin(), g.chain.end() - 1);
            auto it = gen_index.find({g.m, rest});
            if (it != gen_index.end()) {
                int e = dm;
                for (int j = 1; j <= l; ++j) e += red(g.chain[l - j]);
                addt(it->second, a1, sign_pow(e));
            }
        }
        // Realize mu^1 on elements (gi, p): mu^1(x) = (-1)^{|x|} D(gamma) * p.
        for (int p = 0; p < alg.dim(); ++p) {
            auto itx = pos.find({(int)gi, p});
            if (itx == pos.end()) continue;
            int x = itx->second;
            LinComb out;
            for (auto& [tg, e] : dgen) {
                for (auto& [q, c] : e) {
                    auto prod = alg.product(q, p);
                    if (!prod) continue;
                    auto itt = pos.find({tg, prod->first});
                    if (itt == pos.end()) continue; // truncated away
                    lin_add(out, sign_pow(mod->basis[x].deg) * c * prod->second, itt->second);
                }
            }
            if (!out.empty()) mod->set_mu({x}, out);
        }
    }

    // Canonical map: solve mu^1(nu) = 0 for an arity-0 hom with the l = 0
    // unit components pinned to the identity dictionary.
    BarTensor bt;
    bt.module = mod;
    bt.lo = lo;
    bt.hi = hi;
    bt.length_cap = cap;

    // Unknowns: components of nu on each bar basis element x over the M-basis
    // of matching degree and vertex; components on (l = 0, idempotent path)
    // elements are pinned to the identity dictionary.
    HomElement pinned;
    pinned.src = mod.get();
    pinned.tgt = &m;
    pinned.deg = 0;
    std::vector<std::pair<int, int>> unknowns; // (x, out)
    std::map<std::pair<int, int>, int> ucol;
    for (auto& [gp, idx] : pos) {
        auto [gi, p] = gp;
        const BarGen& g = gens[gi];
        if (g.chain.empty() && alg.is_idempotent(p)) {
            LinComb v;
            v[g.m] = sign_pow(m.basis[g.m].deg);
            pinned.set({idx}, v);
            continue;
        }
        for (int out = 0; out < m.dim(); ++out)
            if (m.basis[out].deg == mod->basis[idx].deg && m.basis[out].vertex == mod->basis[idx].vertex) {
                ucol[{idx, out}] = (int)unknowns.size();
                unknowns.push_back({idx, out});
            }
    }
    // Closedness equations on tuples up to arity 1 (with one idempotent
    // allowed). mu^1 is linear in nu; rows are built by evaluating
    // hom_mu1_component on the pinned part and on unit vectors for the
    // unknowns that can contribute at each tuple.
    auto tuples = test_tuples(*mod, 1, 1);
    std::vector<std::map<int, Rational>> rows;
    std::vector<Rational> rhs;
    auto equation_truncated = [&](int x, const std::vector<int>& as) {
        // The closedness equation at (x, as) references targets the window cut.
        int d = (int)mod->basis[x].deg;
        for (int a : as) d += alg.at(a).deg;
        return d + (as.empty() ? 1 : 0) > hi;
    };
    for (auto& key : tuples) {
        int x = key[0];
        std::vector<int> as(key.begin() + 1, key.end());
        if (equation_truncated(x, as)) continue;
        // Base (pinned) contribution.
        LinComb base = hom_mu1_component(pinned, x, as);
        // Unknowns that can appear: components at x, or at supp(mu_bar(x, head)).
        std::set<int> xs{x};
        for (auto& [xx, c] : mod->mu(x, {})) xs.insert(xx);
        if (!as.empty())
            for (auto& [xx, c] : mod->mu(x, as)) xs.insert(xx);
        std::map<int, std::map<int, Rational>> row_per_out;
        for (int xx : xs)
            for (int out = 0; out < m.dim(); ++out) {
                auto it = ucol.find({xx, out});
                if (it == ucol.end()) continue;
                HomElement unit;
                unit.src = mod.get();
                unit.tgt = &m;
                unit.deg = 0;
                LinComb v;
                v[out] = Rational(1);
                unit.set({xx}, v);
                LinComb contrib = hom_mu1_component(unit, x, as);
                for (auto& [o, c] : contrib) row_per_out[o][it->second] += c;
            }
        std::set<int> outs;
        for (auto& [o, c] : base) outs.insert(o);
        for (auto& [o, r] : row_per_out) outs.insert(o);
        for (int o : outs) {
            std::map<int, Rational> row = row_per_out.count(o) ? row_per_out[o] : std::map<int, Rational>{};
            Rational c = base.count(o) ? base.at(o) : Rational(0);
            if (row.empty() && c.is_zero()) continue;
            rows.push_back(std::move(row));
            rhs.push_back(-c);
        }
    }
    SparseMatrix sys((int)rows.size(), (int)unknowns.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [c, v] : rows[r])
            if (!v.is_zero()) sys.set((int)r, c, v);
    auto sol = solve_once(sys, rhs);
    if (!sol) throw std::logic_error("bar_tensor: canonical map solve failed");
    HomElement nu = pinned;
    std::map<int, LinComb> per_x;
    for (size_t u = 0; u < unknowns.size(); ++u)
        if (!(*sol)[u].is_zero()) per_x[unknowns[u].first][unknowns[u].second] = (*sol)[u];
    for (auto& [x, v] : per_x) nu.set({x}, v);
    // Verify closedness away from the truncation edge.
    for (auto& key : tuples) {
        int x = key[0];
        std::vector<int> as(key.begin() + 1, key.end());
        if (equation_truncated(x, as)) continue;
        if (!hom_mu1_component(nu, x, as).empty())
            throw std::logic_error("bar_tensor: canonical map not closed inside the window");
    }
    bt.canonical = nu;

    // Certify the inner window by direct comparison: degrees where the
    // truncated cohomology agrees with H(M) and the canonical map induces an
    // isomorphism. (The bar-length cap needed for finiteness can shed
    // spurious classes near the top of H(M); certification is computed, not
    // assumed.)
    auto cb = cohomology(mod->underlying_complex());
    auto cm = cohomology(m.underlying_complex());
    auto certified = [&](int t) {
        int hb = cb.dims.count(t) ? cb.dims.at(t) : 0;
        int hm = cm.dims.count(t) ? cm.dims.at(t) : 0;
        if (hb != hm) return false;
        if (hb == 0) return true;
        // induced map on H^t: f(x) = (-1)^{|x|} nu^1(x) is a chain map
        SpanTracker span(hm);
        for (auto& rep : cb.reps.at(t)) {
            // rep in slice coordinates of mod's underlying complex
            // map basis-by-basis
            LinComb img;
            auto slice = [&](const AInfModule& mm, int deg) {
                std::vector<int> v;
                for (int i = 0; i < mm.dim(); ++i)
                    if (mm.basis[i].deg == deg) v.push_back(i);
                return v;
            };
            auto sb = slice(*mod, t);
            for (size_t j = 0; j < sb.size(); ++j) {
                if (rep[j].is_zero()) continue;
                LinComb c = nu.component(sb[j], {});
                lin_add(img, rep[j] * sign_pow(t), c);
            }
            auto sm = slice(m, t);
            Vec imgv(sm.size(), Rational(0));
            for (auto& [i, c] : img) {
                auto it = std::find(sm.begin(), sm.end(), i);
                imgv[it - sm.begin()] = c;
            }
            Vec proj = cm.project(t, imgv);
            if (!span.add(proj)) return false;
        }
        return span.dim() == hm;
    };
    bt.inner_lo = 1;
    bt.inner_hi = 0;
    int best_len = 0;
    int t = lo + 1;
    while (t <= hi - 1) {
        if (!certified(t)) {
            t++;
            continue;
        }
        int start = t;
        while (t <= hi - 1 && certified(t)) t++;
        if (t - start > best_len) {
            best_len = t - start;
            bt.inner_lo = start;
            bt.inner_hi = t - 1;
        }
    }
    return bt;
}

AInfModule collapse(const AInfModule& bigraded) {
    AInfModule m = bigraded;
    for (auto& b : m.basis) b.s.reset();
    return m;
}

CollapseCompareReport collapse_hom_compare(const TwistedComplex& m0, const TwistedComplex& m1) {
    CollapseCompareReport rep;
    // Bigraded side: dims per (r, s) from the pure-s classes; collapsed side:
    // cohomology of the total complex. Bijectivity: per total degree the sums
    // must agree.
    auto classes = hom_classes(m0, m1);
    std::map<int, int> bigraded_dims;
    for (auto& c : classes) bigraded_dims[c.total()]++;
    DgHom h(m0, m1);
    auto coh = cohomology(h.total_complex());
    for (auto& [k, v] : coh.dims) {
        int b = bigraded_dims.count(k) ? bigraded_dims.at(k) : 0;
        if (b != v) {
            rep.ok = false;
            rep.detail = "dimension mismatch at degree " + std::to_string(k);
            return rep;
        }
    }
    for (auto& [k, v] : bigraded_dims)
        if (v != (coh.dims.count(k) ? coh.dims.at(k) : 0)) {
            rep.ok = false;
            rep.detail = "dimension mismatch at degree " + std::to_string(k);
            return rep;
        }

    // Chain-level collapse sign rule: for basis elements phi in hom(m0, m1)
    // and psi in hom(m1, m0), of pure bidegrees, the twisted collapses
    // phi~(x) = (-1)^{j_phi r(x)} phi(x) satisfy
    // psi~ ∘ phi~ = (-1)^{i_phi j_psi} (psi ∘ phi)~.
    DgHom hb(m1, m0), he(m0, m0);
    for (int i = 0; i < h.dim() && rep.ok; ++i)
        for (int j = 0; j < hb.dim() && rep.ok; ++j) {
            const auto& ef = h.basis()[i];
            const auto& eg = hb.basis()[j];
            if (eg.f0 != ef.f1) continue;
            Vec vf(h.dim(), Rational(0)), vg(hb.dim(), Rational(0));
            vf[i] = Rational(1);
            vg[j] = Rational(1);
            Vec comp = dg_compose(hb, vg, h, vf, he);
            int i1 = h.elt_deg(i) - h.elt_s(i); // first degree of phi
            int j2 = hb.elt_s(j);               // internal shift of psi
            // (psi~ ∘ phi~)(gamma_{f0} q) vs (-1)^{i1 j2} (psi∘phi)~ on each input
            // basis vector gamma_{f0}·q of m0's realization.
            const ZigzagAlgebra& a = *m0.alg;
            for (int q = 0; q < a.dim(); ++q) {
                if (a.at(q).tgt != m0.gens[ef.f0].vertex) continue;
                int rx = m0.gen_r(ef.f0); // first degree of the input element
                // phi~(x) = (-1)^{j_phi * r(x)} phi(x); phi(gamma q) = gamma_{f1} path*q
                auto p1 = a.product(ef.path, q);
                if (!p1) continue;
                auto p2 = a.product(eg.path, p1->first);
                if (!p2) continue;
                int r_mid = m1.gen_r(ef.f1);
                Rational lhs = sign_pow(h.elt_s(i) * rx) * sign_pow(j2 * r_mid);
                Rational rhs = sign_pow(i1 * j2) * sign_pow((h.elt_s(i) + j2) * rx);
                if (lhs != rhs) {
                    rep.ok = false;
                    rep.detail = "collapse sign rule violated";
                }
                break;
            }
        }
    return rep;
}

AInfModule scale_transfer_module(const AInfModule& m, const ZigzagAlgebra& target) {
    if (!m.bigraded()) throw std::invalid_argument("scale_transfer_module: module must be bigraded");
    const ZigzagAlgebra& a = *m.alg;
    int n = a.n(), np = target.n();
    if (a.m() != target.m()) throw std::invalid_argument("scale_transfer_module: vertex counts differ");
    int r = -1;
    for (auto& b : m.basis) {
        int res = ((*b.s % n) + n) % n;
        if (r < 0) r = res;
        else if (r != res) throw std::invalid_argument("scale_transfer_module: mixed residues");
    }
    AInfModule out;
    out.alg = &target;
    for (auto& b : m.basis) {
        int q = (*b.s - r) / n;
        int snew = q * np + r;
        // total degree changes with the internal part: t = r-part + s
        int first = b.deg - *b.s;
        out.basis.push_back({b.label, first + snew, b.vertex, snew});
    }
    for (auto& [key, v] : m.mu_table()) {
        MuKey nk = key;
        for (size_t i = 1; i < nk.size(); ++i) {
            auto idx = target.index_of(a.at(nk[i]).label);
            if (!idx) throw std::logic_error("scale_transfer_module: basis mismatch");
            nk[i] = *idx;
        }
        out.set_mu(nk, v);
    }
    return out;
}

FiniteComplex hom_complex(const TwistedComplex& c0, const TwistedComplex& c1) {
    DgHom h(c0, c1);
    return h.total_complex();
}

} // namespace zigzag
