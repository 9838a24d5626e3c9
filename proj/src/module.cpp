#include "zigzag/module.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace zigzag {

void lin_add(LinComb& dst, const Rational& c, const LinComb& src) {
    if (c.is_zero()) return;
    for (auto& [i, v] : src) lin_add(dst, c * v, i);
}

void lin_add(LinComb& dst, const Rational& c, int idx) {
    if (c.is_zero()) return;
    auto it = dst.find(idx);
    if (it == dst.end()) {
        dst[idx] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) dst.erase(it);
    }
}

bool lin_is_zero(const LinComb& x) { return x.empty(); }

int AInfModule::min_deg() const {
    int d = 0;
    bool first = true;
    for (auto& b : basis) {
        if (first || b.deg < d) d = b.deg;
        first = false;
    }
    return d;
}

int AInfModule::max_deg() const {
    int d = 0;
    bool first = true;
    for (auto& b : basis) {
        if (first || b.deg > d) d = b.deg;
        first = false;
    }
    return d;
}

bool AInfModule::bigraded() const {
    for (auto& b : basis)
        if (!b.s) return false;
    return !basis.empty();
}

void AInfModule::set_mu(const MuKey& key, const LinComb& value) {
    if (key.size() < 1) throw std::invalid_argument("set_mu: empty key");
    int d = (int)key.size() - 1;
    if (key[0] < 0 || key[0] >= dim()) throw std::invalid_argument("set_mu: bad module index");
    for (int i = 1; i <= d; ++i) {
        int a = key[i];
        if (a < 0 || a >= alg->dim()) throw std::invalid_argument("set_mu: bad algebra index");
        if (alg->is_idempotent(a)) throw std::invalid_argument("set_mu: unit arguments are implicit");
    }
    // Degree check: |out| = |m| + sum|a| + 1 - d.
    int want = basis[key[0]].deg + 1 - d;
    for (int i = 1; i <= d; ++i) want += alg->at(key[i]).deg;
    for (auto& [out, c] : value) {
        if (c.is_zero()) continue;
        if (basis[out].deg != want)
            throw std::invalid_argument("set_mu: output degree mismatch on " + basis[key[0]].label);
    }
    LinComb v;
    for (auto& [i, c] : value)
        if (!c.is_zero()) v[i] = c;
    if (v.empty()) {
        mu_.erase(key);
    } else {
        mu_[key] = std::move(v);
        max_arity_ = std::max(max_arity_, d);
    }
}

LinComb AInfModule::mu(int m, const std::vector<int>& as) const {
    int d = (int)as.size();
    if (d == 1 && alg->is_idempotent(as[0])) {
        LinComb out;
        if (basis[m].vertex == alg->at(as[0]).src) out[m] = Rational(1);
        return out;
    }
    if (d >= 2) {
        for (int a : as)
            if (alg->is_idempotent(a)) return {};
    }
    MuKey key;
    key.reserve(d + 1);
    key.push_back(m);
    for (int a : as) key.push_back(a);
    auto it = mu_.find(key);
    return it == mu_.end() ? LinComb{} : it->second;
}

LinComb AInfModule::mu_lin(const LinComb& m, const std::vector<int>& as) const {
    LinComb out;
    for (auto& [i, c] : m) lin_add(out, c, mu(i, as));
    return out;
}

namespace {

// (-1)^{\maltese_i} with \maltese_i = sum_{k<=i} (|a_k| - 1), reading as[.]
// as (a_d, ..., a_1): a_1 is the LAST entry of `as`.
int maltese(const ZigzagAlgebra& alg, const std::vector<int>& as, int i) {
    int d = (int)as.size();
    int s = 0;
    for (int k = 1; k <= i; ++k) s += alg.at(as[d - k]).deg - 1;
    return ((s % 2) + 2) % 2;
}

} // namespace

AInfModule::Report AInfModule::validate(int extra_arity) const {
    Report rep;
    auto fail = [&](const std::string& why) {
        if (rep.ok) {
            rep.ok = false;
            rep.first_violation = why;
        }
    };

    // Bigraded structure maps must have bidegree (1-d, 0).
    if (bigraded()) {
        for (auto& [key, val] : mu_) {
            int want = *basis[key[0]].s;
            for (size_t i = 1; i < key.size(); ++i) want += alg->at(key[i]).deg;
            for (auto& [out, c] : val)
                if (*basis[out].s != want) {
                    fail("bigraded structure map not of bidegree (1-d,0) at " + basis[key[0]].label);
                    return rep;
                }
        }
    }
    // Vertex consistency: mu lands at the source vertex of a_1 (or of m for d=0).
    for (auto& [key, val] : mu_) {
        int want = key.size() > 1 ? alg->at(key.back()).src : basis[key[0]].vertex;
        for (auto& [out, c] : val)
            if (basis[out].vertex != want) {
                fail("structure map breaks vertex decomposition at " + basis[key[0]].label);
                return rep;
            }
    }

    int check_arity = 2 * std::max(max_arity_, 1) + extra_arity;
    auto tuples = test_tuples(*this, check_arity, 1);
    for (auto& key : tuples) {
        int m = key[0];
        std::vector<int> as(key.begin() + 1, key.end());
        int d = (int)as.size();
        LinComb total;

        // First sum: insert mu_A^2 (the algebra is an honest graded algebra).
        for (int i = 0; i + 2 <= d; ++i) {
            // block (a_{i+2}, a_{i+1}) at positions counted from the right.
            int a2 = as[d - (i + 2)];
            int a1 = as[d - (i + 1)];
            // mu_A^2(a2, a1) = (-1)^{|a1|} a2 a1
            auto p = alg->product(a2, a1);
            if (!p) continue;
            Rational coeff = sign_pow(alg->at(a1).deg) * p->second;
            std::vector<int> rest;
            rest.reserve(d - 1);
            for (int k = 0; k < d - (i + 2); ++k) rest.push_back(as[k]);
            rest.push_back(p->first);
            for (int k = d - i; k < d; ++k) rest.push_back(as[k]);
            Rational s = maltese(*alg, as, i) ? Rational(-1) : Rational(1);
            lin_add(total, s * coeff, mu(m, rest));
        }
        // Second sum: mu_M(mu_M(m, a_d..a_{i+1}), a_i..a_1).
        for (int i = 0; i <= d; ++i) {
            std::vector<int> head(as.begin(), as.begin() + (d - i));
            std::vector<int> tail(as.begin() + (d - i), as.end());
            LinComb inner = mu(m, head);
            if (inner.empty()) continue;
            Rational s = maltese(*alg, as, i) ? Rational(-1) : Rational(1);
            lin_add(total, s, mu_lin(inner, tail));
        }
        if (!total.empty()) {
            std::string t = basis[m].label;
            for (int a : as) t += "," + alg->at(a).label;
            fail("A-infinity equation fails on (" + t + ")");
            return rep;
        }
    }
    return rep;
}

FiniteComplex AInfModule::underlying_complex() const {
    FiniteComplex c;
    // index within degree slice
    std::map<int, std::vector<int>> slices;
    for (int i = 0; i < dim(); ++i) slices[basis[i].deg].push_back(i);
    std::map<int, std::map<int, int>> pos; // deg -> basis idx -> slice pos
    for (auto& [k, v] : slices) {
        c.dims[k] = (int)v.size();
        for (size_t p = 0; p < v.size(); ++p) {
            pos[k][v[p]] = (int)p;
            c.labels[k].push_back(basis[v[p]].label);
        }
    }
    for (auto& [k, v] : slices) {
        if (!slices.count(k + 1)) {
            bool any = false;
            for (int i : v)
                if (!mu(i, {}).empty()) any = true;
            if (any) throw std::logic_error("underlying_complex: differential leaves graded support");
            continue;
        }
        SparseMatrix d((int)slices[k + 1].size(), (int)v.size());
        for (size_t col = 0; col < v.size(); ++col) {
            LinComb img = mu(v[col], {});
            for (auto& [out, coeff] : img) d.add(pos[k + 1][out], (int)col, coeff);
        }
        c.d[k] = std::move(d);
    }
    return c;
}

void HomElement::set(const MuKey& key, const LinComb& value) {
    LinComb v;
    for (auto& [i, c] : value)
        if (!c.is_zero()) v[i] = c;
    int d = (int)key.size() - 1;
    int want = src->basis[key[0]].deg + deg - d;
    for (int i = 1; i <= d; ++i) {
        want += src->alg->at(key[i]).deg;
        if (src->alg->is_idempotent(key[i]))
            throw std::invalid_argument("HomElement::set: unit arguments not allowed");
    }
    for (auto& [out, c] : v)
        if (tgt->basis[out].deg != want)
            throw std::invalid_argument("HomElement::set: output degree mismatch");
    if (v.empty()) phi.erase(key);
    else phi[key] = std::move(v);
}

LinComb HomElement::component(int m, const std::vector<int>& as) const {
    for (int a : as)
        if (src->alg->is_idempotent(a)) return {};
    MuKey key;
    key.reserve(as.size() + 1);
    key.push_back(m);
    for (int a : as) key.push_back(a);
    auto it = phi.find(key);
    return it == phi.end() ? LinComb{} : it->second;
}

LinComb HomElement::component_lin(const LinComb& m, const std::vector<int>& as) const {
    LinComb out;
    for (auto& [i, c] : m) lin_add(out, c, component(i, as));
    return out;
}

bool HomElement::is_zero() const {
    for (auto& [k, v] : phi)
        if (!v.empty()) return false;
    return true;
}

int HomElement::max_arity() const {
    int d = 0;
    for (auto& [k, v] : phi)
        if (!v.empty()) d = std::max(d, (int)k.size() - 1);
    return d;
}

HomElement& HomElement::operator+=(const HomElement& o) {
    if (src != o.src || tgt != o.tgt || deg != o.deg)
        throw std::invalid_argument("HomElement::operator+=: incompatible");
    for (auto& [k, v] : o.phi) {
        LinComb& mine = phi[k];
        for (auto& [i, c] : v) lin_add(mine, Rational(1) * c, i);
        if (mine.empty()) phi.erase(k);
    }
    return *this;
}

HomElement& HomElement::operator*=(const Rational& c) {
    if (c.is_zero()) {
        phi.clear();
        return *this;
    }
    for (auto& [k, v] : phi)
        for (auto& [i, w] : v) w *= c;
    return *this;
}

HomElement identity_hom(const AInfModule& m) {
    HomElement f;
    f.src = &m;
    f.tgt = &m;
    f.deg = 0;
    for (int i = 0; i < m.dim(); ++i) {
        LinComb v;
        v[i] = sign_pow(m.basis[i].deg);
        f.set({i}, v);
    }
    return f;
}

namespace {

// (-1)^{prefix sign} for the cut at i on tuple (m, a_d..a_1):
// |m| + |a_{i+1}| + ... + |a_d| + (d - i), per the paper's cocycle equations.
Rational prefix_sign(const AInfModule& mod, int m, const std::vector<int>& as, int i) {
    int d = (int)as.size();
    int s = mod.basis[m].deg + (d - i);
    for (int k = i + 1; k <= d; ++k) s += mod.alg->at(as[d - k]).deg;
    return sign_pow(s);
}

} // namespace

LinComb hom_mu1_component(const HomElement& f, int m, const std::vector<int>& as) {
    const AInfModule& M0 = *f.src;
    const AInfModule& M1 = *f.tgt;
    const ZigzagAlgebra& alg = *M0.alg;
    int d = (int)as.size();
    LinComb total;

    for (int i = 0; i <= d; ++i) {
        std::vector<int> head(as.begin(), as.begin() + (d - i));
        std::vector<int> tail(as.begin() + (d - i), as.end());
        Rational s = prefix_sign(M0, m, as, i);
        // mu_{M1}(f(m, head), tail)
        LinComb fm = f.component(m, head);
        if (!fm.empty()) lin_add(total, s, M1.mu_lin(fm, tail));
        // f(mu_{M0}(m, head), tail)
        LinComb mm = M0.mu(m, head);
        if (!mm.empty()) lin_add(total, s, f.component_lin(mm, tail));
    }
    // mu_A insertions (j = 2 only; the algebra has no differential).
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
        Rational s = prefix_sign(M0, m, as, i);
        lin_add(total, s * coeff, f.component(m, rest));
    }
    return total;
}

LinComb hom_mu2_component(const HomElement& g, const HomElement& f, int m, const std::vector<int>& as) {
    if (f.tgt != g.src) throw std::invalid_argument("hom_mu2: not composable");
    int d = (int)as.size();
    LinComb total;
    for (int i = 0; i <= d; ++i) {
        std::vector<int> head(as.begin(), as.begin() + (d - i));
        std::vector<int> tail(as.begin() + (d - i), as.end());
        LinComb fm = f.component(m, head);
        if (fm.empty()) continue;
        Rational s = prefix_sign(*f.src, m, as, i);
        lin_add(total, s, g.component_lin(fm, tail));
    }
    return total;
}

namespace {

HomElement assemble(const AInfModule& src, const AInfModule& tgt, int deg, int arity_cap,
                    const std::function<LinComb(int, const std::vector<int>&)>& comp) {
    HomElement out;
    out.src = &src;
    out.tgt = &tgt;
    out.deg = deg;
    auto tuples = test_tuples(src, arity_cap, 0);
    for (auto& key : tuples) {
        std::vector<int> as(key.begin() + 1, key.end());
        LinComb v = comp(key[0], as);
        if (!v.empty()) out.set(key, v);
    }
    return out;
}

} // namespace

HomElement hom_mu1(const HomElement& f, int arity_cap) {
    return assemble(*f.src, *f.tgt, f.deg + 1, arity_cap,
                    [&](int m, const std::vector<int>& as) { return hom_mu1_component(f, m, as); });
}

HomElement hom_mu2(const HomElement& g, const HomElement& f, int arity_cap) {
    return assemble(*f.src, *g.tgt, f.deg + g.deg, arity_cap,
                    [&](int m, const std::vector<int>& as) { return hom_mu2_component(g, f, m, as); });
}

std::vector<MuKey> test_tuples(const AInfModule& m, int arity, int max_units) {
    std::vector<MuKey> out;
    const ZigzagAlgebra& alg = *m.alg;
    // Chains (m, a_d, ..., a_1) with vertex(m) = tgt(a_d), src(a_k) = tgt(a_{k-1}).
    // Built from the left: extend by a_d', requiring tgt(new last) chains.
    struct Node {
        MuKey key;
        int right_vertex; // src of a_1 (or vertex of m)
        int units;
    };
    std::vector<Node> frontier;
    for (int i = 0; i < m.dim(); ++i) {
        out.push_back({i});
        frontier.push_back({{i}, m.basis[i].vertex, 0});
    }
    for (int d = 1; d <= arity; ++d) {
        std::vector<Node> next;
        for (auto& node : frontier) {
            for (int a = 0; a < alg.dim(); ++a) {
                if (alg.at(a).tgt != node.right_vertex) continue;
                int units = node.units + (alg.is_idempotent(a) ? 1 : 0);
                if (units > max_units) continue;
                Node nn{node.key, alg.at(a).src, units};
                nn.key.push_back(a);
                out.push_back(nn.key);
                next.push_back(std::move(nn));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

bool hom_is_closed(const HomElement& f, int arity_cap, std::string* why) {
    auto tuples = test_tuples(*f.src, arity_cap, 1);
    for (auto& key : tuples) {
        std::vector<int> as(key.begin() + 1, key.end());
        LinComb v = hom_mu1_component(f, key[0], as);
        if (!v.empty()) {
            if (why) {
                *why = "mu1(f) != 0 at (" + f.src->basis[key[0]].label;
                for (int a : as) *why += "," + f.src->alg->at(a).label;
                *why += ")";
            }
            return false;
        }
    }
    return true;
}

} // namespace zigzag
