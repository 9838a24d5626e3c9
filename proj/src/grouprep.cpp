#include "zigzag/grouprep.hpp"

#include <algorithm>
#include <stdexcept>

namespace zigzag {

std::vector<std::pair<int, int>> RationalRep::basis() const {
    std::vector<std::pair<int, int>> out;
    for (auto& [w, d] : weights)
        for (int i = 0; i < d; ++i) out.push_back({w, i});
    return out;
}

void GroupCochain::add(const std::vector<int>& exps, std::pair<int, int> v, const Rational& c) {
    if (c.is_zero()) return;
    if ((int)exps.size() != slots) throw std::invalid_argument("GroupCochain: slot mismatch");
    auto key = std::make_pair(exps, v);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

GroupCochain cochain_d(const GroupCochain& c) {
    GroupCochain out;
    out.rep = c.rep;
    out.slots = c.slots + 1;
    int r = out.slots; // output arguments g_r, ..., g_1
    for (auto& [key, coeff] : c.terms) {
        const std::vector<int>& v = key.first; // [v_{r-1}, ..., v_1]
        auto x = key.second;
        // merge terms: q = 1..r-1, slot q of the output merges
        for (int q = 1; q <= r - 1; ++q) {
            // output (w_r..w_1): w_j = v_j for j<q; w_{q+1} = w_q = v_q; w_{j+1} = v_j for j>q
            std::vector<int> w(r);
            // stored order [top..1]: v index: v[r-1-1 - (j-1)]: handle positionally
            auto vat = [&](int j) { return v[(int)v.size() - j]; }; // v_j
            for (int j = 1; j < q; ++j) w[r - j] = vat(j);
            w[r - q] = vat(q);
            w[r - (q + 1)] = vat(q);
            for (int j = q + 1; j <= r - 1; ++j) w[r - (j + 1)] = vat(j);
            out.add(w, x, coeff * sign_pow(q));
        }
        // action term: (-1)^r g_r c(g_{r-1},...,g_1): top slot gets the weight of x
        {
            std::vector<int> w(r);
            w[0] = x.first;
            for (int j = 1; j <= r - 1; ++j) w[r - j] = v[(int)v.size() - j];
            out.add(w, x, coeff * sign_pow(r));
        }
        // drop term: c(g_r,...,g_2): bottom slot free (exponent 0)
        {
            std::vector<int> w(r);
            w[r - 1] = 0;
            for (int j = 1; j <= r - 1; ++j) w[r - (j + 1)] = v[(int)v.size() - j];
            out.add(w, x, coeff);
        }
    }
    return out;
}

GroupCochain bar_d(const GroupCochain& b) {
    GroupCochain out;
    out.rep = b.rep;
    out.slots = b.slots + 1;
    int top = out.slots; // arguments g_top, ..., g_1
    for (auto& [key, coeff] : b.terms) {
        const std::vector<int>& v = key.first;
        auto x = key.second;
        auto vat = [&](int j) { return v[(int)v.size() - j]; };
        for (int q = 1; q <= top - 1; ++q) {
            std::vector<int> w(top);
            for (int j = 1; j < q; ++j) w[top - j] = vat(j);
            w[top - q] = vat(q);
            w[top - (q + 1)] = vat(q);
            for (int j = q + 1; j <= top - 1; ++j) w[top - (j + 1)] = vat(j);
            out.add(w, x, coeff * sign_pow(q));
        }
        {
            // (-1)^{top} g_top b(g_{top-1},...,g_1)
            std::vector<int> w(top);
            w[0] = x.first;
            for (int j = 1; j <= top - 1; ++j) w[top - j] = vat(j);
            out.add(w, x, coeff * sign_pow(top));
        }
    }
    return out;
}

namespace {

struct Slice {
    std::vector<std::pair<std::vector<int>, std::pair<int, int>>> elts;
    std::map<std::pair<std::vector<int>, std::pair<int, int>>, int> pos;
};

Slice build_slice(const RationalRep& rep, int slots, int lo, int hi) {
    Slice s;
    std::vector<std::vector<int>> tuples{{}};
    for (int i = 0; i < slots; ++i) {
        std::vector<std::vector<int>> next;
        for (auto& t : tuples)
            for (int w = lo; w <= hi; ++w) {
                auto nt = t;
                nt.push_back(w);
                next.push_back(std::move(nt));
            }
        tuples = std::move(next);
    }
    for (auto& t : tuples)
        for (auto& v : rep.basis()) {
            s.pos[{t, v}] = (int)s.elts.size();
            s.elts.push_back({t, v});
        }
    return s;
}

FiniteComplex build_complex(const RationalRep& rep, bool bar, int levels, int lo, int hi) {
    FiniteComplex c;
    std::vector<Slice> slices;
    for (int r = 0; r <= levels; ++r) {
        slices.push_back(build_slice(rep, bar ? r + 1 : r, lo, hi));
        c.dims[r] = (int)slices[r].elts.size();
    }
    for (int r = 0; r < levels; ++r) {
        SparseMatrix d((int)slices[r + 1].elts.size(), (int)slices[r].elts.size());
        for (size_t col = 0; col < slices[r].elts.size(); ++col) {
            GroupCochain x;
            x.rep = &rep;
            x.slots = bar ? r + 1 : r;
            x.add(slices[r].elts[col].first, slices[r].elts[col].second, Rational(1));
            GroupCochain dx = bar ? bar_d(x) : cochain_d(x);
            for (auto& [k, v] : dx.terms) {
                auto it = slices[r + 1].pos.find(k);
                if (it == slices[r + 1].pos.end())
                    throw std::logic_error("group cochain support escaped the window");
                d.add(it->second, (int)col, v);
            }
        }
        c.d[r] = std::move(d);
    }
    return c;
}

} // namespace

GroupCohomologyReport verify_group_cohomology(const RationalRep& v, int window_lo, int window_hi,
                                              int levels) {
    GroupCohomologyReport rep;
    int lo = window_lo, hi = window_hi;
    for (auto& [w, d] : v.weights) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    lo = std::min(lo, 0);
    hi = std::max(hi, 0);
    if (lo < window_lo || hi > window_hi) {
        rep.detail = "window enlarged to [" + std::to_string(lo) + ", " + std::to_string(hi) + "]; ";
    }
    rep.window_lo = lo;
    rep.window_hi = hi;

    auto cc = cohomology_dims(build_complex(v, false, levels, lo, hi));
    auto bc = cohomology_dims(build_complex(v, true, levels, lo, hi));
    for (int r = 0; r < levels; ++r) {
        rep.cochain_h.push_back(cc.count(r) ? cc.at(r) : 0);
        rep.bar_h.push_back(bc.count(r) ? bc.at(r) : 0);
    }
    if (rep.cochain_h[0] != v.invariant_dim()) {
        rep.ok = false;
        rep.detail += "H^0(C(G,V)) != V^G";
        return rep;
    }
    if (rep.bar_h[0] != v.dim()) {
        rep.ok = false;
        rep.detail += "H^0(B(G,V)) != V";
        return rep;
    }
    for (int r = 1; r < levels; ++r) {
        if (rep.cochain_h[r] != 0) {
            rep.ok = false;
            rep.detail += "H^" + std::to_string(r) + "(C(G,V)) != 0";
            return rep;
        }
        if (rep.bar_h[r] != 0) {
            rep.ok = false;
            rep.detail += "H^" + std::to_string(r) + "(B(G,V)) != 0";
            return rep;
        }
    }
    return rep;
}

bool cochain_solve(const RationalRep& rep, const GroupCochain& rhs, GroupCochain& out, int window_lo,
                   int window_hi) {
    int level = rhs.slots - 1;
    if (level < 0) throw std::invalid_argument("cochain_solve: rhs must have at least one slot");
    Slice dom = build_slice(rep, level, window_lo, window_hi);
    Slice cod = build_slice(rep, level + 1, window_lo, window_hi);
    SparseMatrix sys((int)cod.elts.size(), (int)dom.elts.size());
    for (size_t col = 0; col < dom.elts.size(); ++col) {
        GroupCochain x;
        x.rep = &rep;
        x.slots = level;
        x.add(dom.elts[col].first, dom.elts[col].second, Rational(1));
        GroupCochain dx = cochain_d(x);
        for (auto& [k, v] : dx.terms) {
            auto it = cod.pos.find(k);
            if (it == cod.pos.end()) throw std::logic_error("cochain_solve: support escaped the window");
            sys.add(it->second, (int)col, v);
        }
    }
    Vec b(cod.elts.size(), Rational(0));
    for (auto& [k, v] : rhs.terms) {
        auto it = cod.pos.find(k);
        if (it == cod.pos.end()) return false;
        b[it->second] = v;
    }
    auto sol = solve_once(sys, b);
    if (!sol) return false;
    out.rep = &rep;
    out.slots = level;
    out.terms.clear();
    for (size_t col = 0; col < dom.elts.size(); ++col)
        if (!(*sol)[col].is_zero()) out.add(dom.elts[col].first, dom.elts[col].second, (*sol)[col]);
    return true;
}

} // namespace zigzag
