#include "zigzag/minimal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace zigzag {

namespace {

// Cohomology representatives of the underlying complex, split by
// (degree, vertex, s) so the model inherits vertex and internal gradings.
struct SliceReps {
    std::vector<std::pair<AInfModule::Basis, Vec>> reps; // basis data + cocycle in M coordinates
};

SliceReps sliced_cohomology(const AInfModule& m) {
    SliceReps out;
    bool bigr = m.bigraded();
    // slice keys: (deg, vertex, s or 0)
    std::set<std::tuple<int, int, int>> keys;
    for (auto& b : m.basis) keys.insert({b.deg, b.vertex, bigr ? *b.s : 0});
    for (auto& [deg, vertex, s] : keys) {
        auto in_slice = [&](int i) {
            const auto& b = m.basis[i];
            return b.deg == deg && b.vertex == vertex && (!bigr || *b.s == s);
        };
        auto in_next = [&](int i) {
            const auto& b = m.basis[i];
            return b.deg == deg + 1 && b.vertex == vertex && (!bigr || *b.s == s);
        };
        auto in_prev = [&](int i) {
            const auto& b = m.basis[i];
            return b.deg == deg - 1 && b.vertex == vertex && (!bigr || *b.s == s);
        };
        std::vector<int> cur, nxt, prv;
        for (int i = 0; i < m.dim(); ++i) {
            if (in_slice(i)) cur.push_back(i);
            if (in_next(i)) nxt.push_back(i);
            if (in_prev(i)) prv.push_back(i);
        }
        if (cur.empty()) continue;
        auto pos = [&](const std::vector<int>& v, int i) {
            return (int)(std::find(v.begin(), v.end(), i) - v.begin());
        };
        SparseMatrix d((int)nxt.size(), (int)cur.size());
        for (size_t c = 0; c < cur.size(); ++c)
            for (auto& [o, coeff] : m.mu(cur[c], {})) d.add(pos(nxt, o), (int)c, coeff);
        Elimination de(d);
        auto kernel = de.kernel();
        SpanTracker span((int)cur.size());
        for (size_t c = 0; c < prv.size(); ++c) {
            Vec img((int)cur.size(), Rational(0));
            for (auto& [o, coeff] : m.mu(prv[c], {})) img[pos(cur, o)] = coeff;
            span.add(img);
        }
        int idx = 0;
        for (auto& z : kernel) {
            if (!span.add(z)) continue;
            Vec full(m.dim(), Rational(0));
            for (size_t c = 0; c < cur.size(); ++c) full[cur[c]] = z[c];
            AInfModule::Basis b;
            b.label = "h" + std::to_string(out.reps.size());
            b.deg = deg;
            b.vertex = vertex;
            if (bigr) b.s = s;
            out.reps.push_back({b, full});
            (void)idx;
        }
    }
    return out;
}

} // namespace

MinimalModel minimal_model(const AInfModule& m, int arity_cap) {
    if (m.max_mu_arity() > 1) throw std::invalid_argument("minimal_model: input must be a dg module");
    const ZigzagAlgebra& alg = *m.alg;
    if (arity_cap < 0) arity_cap = (m.max_deg() - m.min_deg()) + 3;

    MinimalModel mm;
    mm.model = std::make_shared<AInfModule>();
    mm.model->alg = &alg;
    auto reps = sliced_cohomology(m);
    for (auto& [b, v] : reps.reps) mm.model->basis.push_back(b);

    HomElement iota;
    iota.src = mm.model.get();
    iota.tgt = &m;
    iota.deg = 0;
    for (size_t i = 0; i < reps.reps.size(); ++i) {
        LinComb v;
        for (int j = 0; j < m.dim(); ++j)
            if (!reps.reps[i].second[j].is_zero()) v[j] = sign_pow(reps.reps[i].first.deg) * reps.reps[i].second[j];
        if (!v.empty()) iota.set({(int)i}, v);
    }

    // Order-by-order: at arity d solve for mu_min^{d+1} and iota^{d+1} from
    // the closedness of iota. Unknown-bearing terms at the tuple (h, as):
    //   (-1)^{prefix_0} [ mu^1_M(iota^{d+1}(h, as)) + iota^1(mu_min^{d+1}(h, as)) ],
    // everything else is known from lower arities.
    for (int d = 1; d <= arity_cap; ++d) {
        auto all = test_tuples(*mm.model, d, 1);
        std::vector<MuKey> keys; // unit-free arity-d keys for the unknowns
        for (auto& k : all) {
            if ((int)k.size() != d + 1) continue;
            bool unitfree = true;
            for (size_t i = 1; i < k.size(); ++i)
                if (alg.is_idempotent(k[i])) unitfree = false;
            if (unitfree) keys.push_back(k);
        }
        // enumerate unknowns
        struct Col {
            bool is_mu;
            MuKey key;
            int out;
        };
        std::vector<Col> cols;
        std::map<std::tuple<bool, MuKey, int>, int> colidx;
        for (auto& key : keys) {
            int h = key[0];
            int degsum = mm.model->basis[h].deg;
            for (size_t i = 1; i < key.size(); ++i) degsum += alg.at(key[i]).deg;
            int vtx = alg.at(key.back()).src;
            int mu_deg = degsum + 1 - d;
            for (int out = 0; out < mm.model->dim(); ++out)
                if (mm.model->basis[out].deg == mu_deg && mm.model->basis[out].vertex == vtx) {
                    colidx[{true, key, out}] = (int)cols.size();
                    cols.push_back({true, key, out});
                }
            int io_deg = degsum - d;
            for (int out = 0; out < m.dim(); ++out)
                if (m.basis[out].deg == io_deg && m.basis[out].vertex == vtx) {
                    colidx[{false, key, out}] = (int)cols.size();
                    cols.push_back({false, key, out});
                }
        }
        // equations: components of mu^1(iota) at arity-d tuples (<= 1 unit)
        std::vector<std::map<int, Rational>> rows;
        std::vector<Rational> rhs;
        for (auto& key : all) {
            if ((int)key.size() != d + 1) continue;
            int h = key[0];
            std::vector<int> as(key.begin() + 1, key.end());
            LinComb known = hom_mu1_component(iota, h, as);
            // prefix sign at i = 0
            int e = mm.model->basis[h].deg + d;
            for (int a : as) e += alg.at(a).deg;
            Rational s0 = sign_pow(e);
            std::map<int, std::map<int, Rational>> row_per_out;
            bool unitfree = true;
            for (int a : as)
                if (alg.is_idempotent(a)) unitfree = false;
            if (unitfree) {
                // mu^1_M(iota_d(h, as))
                for (int out = 0; out < m.dim(); ++out) {
                    auto it = colidx.find({false, key, out});
                    if (it == colidx.end()) continue;
                    for (auto& [o, c] : m.mu(out, {})) row_per_out[o][it->second] += s0 * c;
                }
                // iota^1(mu_min_d(h, as))
                for (int out = 0; out < mm.model->dim(); ++out) {
                    auto it = colidx.find({true, key, out});
                    if (it == colidx.end()) continue;
                    LinComb i1 = iota.component(out, {});
                    for (auto& [o, c] : i1) row_per_out[o][it->second] += s0 * c;
                }
            }
            std::set<int> outs;
            for (auto& [o, c] : known) outs.insert(o);
            for (auto& [o, r] : row_per_out) outs.insert(o);
            for (int o : outs) {
                auto row = row_per_out.count(o) ? row_per_out[o] : std::map<int, Rational>{};
                Rational c = known.count(o) ? known.at(o) : Rational(0);
                if (row.empty() && c.is_zero()) continue;
                rows.push_back(std::move(row));
                rhs.push_back(-c);
            }
        }
        SparseMatrix sys((int)rows.size(), (int)cols.size());
        for (size_t r = 0; r < rows.size(); ++r)
            for (auto& [c, v] : rows[r])
                if (!v.is_zero()) sys.set((int)r, c, v);
        auto sol = solve_once(sys, rhs);
        if (!sol) throw std::logic_error("minimal_model: transfer solve failed at arity " + std::to_string(d));
        std::map<MuKey, LinComb> mu_new, io_new;
        for (size_t c = 0; c < cols.size(); ++c) {
            if ((*sol)[c].is_zero()) continue;
            if (cols[c].is_mu) mu_new[cols[c].key][cols[c].out] = (*sol)[c];
            else io_new[cols[c].key][cols[c].out] = (*sol)[c];
        }
        for (auto& [k, v] : mu_new) mm.model->set_mu(k, v);
        for (auto& [k, v] : io_new) iota.set(k, v);
    }

    // The next couple of arities must close with zero unknowns.
    for (int d = arity_cap + 1; d <= arity_cap + 2; ++d) {
        auto all = test_tuples(*mm.model, d, 1);
        for (auto& key : all) {
            if ((int)key.size() != d + 1) continue;
            std::vector<int> as(key.begin() + 1, key.end());
            if (!hom_mu1_component(iota, key[0], as).empty())
                throw std::logic_error("minimal_model: arity cap too small (closedness fails at arity " +
                                       std::to_string(d) + ")");
        }
    }
    auto rep = mm.model->validate();
    if (!rep.ok) throw std::logic_error("minimal_model: model fails validation: " + rep.first_violation);
    mm.inclusion = std::move(iota);
    return mm;
}

} // namespace zigzag
