#pragma once

#include "zigzag/module.hpp"

#include <set>
#include <vector>

namespace zigzag {

// An element of hom_{A^mod/G^r}(p* N^0, N^r) in Laurent coordinates: for each
// exponent tuple [w_r, ..., w_1] a collection of components M (x) A^{(x)d} -> M.
// The target N^r twists the tail algebra inputs by (z_r...z_1)^{weight}.
class FamilyHom {
public:
    const AInfModule* mod = nullptr;
    int vars = 0;
    int deg = 0;
    // (exponents [w_r..w_1], key [m, a_d..a_1]) -> value
    std::map<std::pair<std::vector<int>, MuKey>, LinComb> comp;

    void set(const std::vector<int>& exps, const MuKey& key, const LinComb& v);
    LinComb at(const std::vector<int>& exps, int m, const std::vector<int>& as) const;
    LinComb at_lin(const std::vector<int>& exps, const LinComb& m, const std::vector<int>& as) const;
    bool is_zero() const { return comp.empty(); }
    int max_arity() const;
    std::set<std::vector<int>> exponent_support() const;
    FamilyHom& operator+=(const FamilyHom& o);
    FamilyHom& operator-=(const FamilyHom& o);
    FamilyHom& operator*=(const Rational& c);

    // Specialization g_i = 1 (or given rational points).
    HomElement at_identity() const;
    HomElement specialize(const std::vector<Rational>& gs) const;
};

int weight_of(const ZigzagAlgebra& a, int basis_idx); // = degree

// Differential of the family hom complex, one component at a time.
// If source_twisted is true the object is read in hom(N^r, C[G^r] (x) M)
// (source fibers twisted instead of the target).
LinComb family_mu1_component(const FamilyHom& f, const std::vector<int>& exps, int m,
                             const std::vector<int>& as, bool source_twisted = false);

// mu^2(gamma...p* psi, p* phi) per the homotopy-cocycle composition term:
// psi owns the top psi.vars variables, phi the bottom phi.vars.
LinComb family_mu2_component(const FamilyHom& psi, const FamilyHom& phi, const std::vector<int>& exps,
                             int m, const std::vector<int>& as);

// m_{q+1,q}^* pullback: duplicates variable slot q (1-based from the bottom).
FamilyHom merge_pullback(const FamilyHom& f, int q);

// p^*-style promotions: add unused variables above or below.
FamilyHom promote_above(const FamilyHom& f, int extra);
FamilyHom promote_below(const FamilyHom& f, int extra);

// Constant family on a plain hom element (exponent zero).
FamilyHom constant_family(const HomElement& f, int vars);

// Identity of M as a constant family.
FamilyHom identity_family(const AInfModule& m, int vars);

} // namespace zigzag
