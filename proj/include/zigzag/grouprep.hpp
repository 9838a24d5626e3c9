#pragma once

#include "zigzag/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace zigzag {

// A rational C*-representation: finitely many integer weights with
// multiplicities.
struct RationalRep {
    std::map<int, int> weights; // weight -> dimension (> 0)

    int dim() const {
        int n = 0;
        for (auto& [w, d] : weights) n += d;
        return n;
    }
    int invariant_dim() const {
        auto it = weights.find(0);
        return it == weights.end() ? 0 : it->second;
    }
    // flattened basis: (weight, index)
    std::vector<std::pair<int, int>> basis() const;
};

// An element of C^r(G, V) (r >= 0) or B^r(G, V) in Laurent coordinates:
// exponent tuples are stored [w_top, ..., w_1].
struct GroupCochain {
    const RationalRep* rep = nullptr;
    int slots = 0; // number of group variables (r for C^r, r+1 for B^r)
    std::map<std::pair<std::vector<int>, std::pair<int, int>>, Rational> terms;

    void add(const std::vector<int>& exps, std::pair<int, int> v, const Rational& c);
    bool empty() const { return terms.empty(); }
};

// delta_{C^*(G,V)}: C^{r} -> C^{r+1} (slots r -> r+1).
GroupCochain cochain_d(const GroupCochain& c);
// delta_{B^*(G,V)}: B^{r} -> B^{r+1} (slots r+1 -> r+2).
GroupCochain bar_d(const GroupCochain& b);

struct GroupCohomologyReport {
    bool ok = true;
    std::string detail;
    std::vector<int> cochain_h; // dims of H^0..H^{levels-1} of the truncation
    std::vector<int> bar_h;
    int window_lo = 0, window_hi = 0;
};

// Builds weight-window truncations of C^*(G,V) and B^*(G,V) up to `levels`+1
// and checks H(C) = V^G and H(B) = V in degree 0, vanishing in degrees
// 1..levels-1. The window is auto-enlarged to contain all weights and 0.
GroupCohomologyReport verify_group_cohomology(const RationalRep& v, int window_lo, int window_hi,
                                              int levels = 2);

// Solve delta(c) = rhs in the truncated cochain complex at the given level
// (rhs has `level+1` slots; the solution has `level` slots); exponents range
// over the window. Returns false if inconsistent within the window.
bool cochain_solve(const RationalRep& rep, const GroupCochain& rhs, GroupCochain& out,
                   int window_lo, int window_hi);

} // namespace zigzag
