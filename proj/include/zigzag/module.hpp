#pragma once

#include "zigzag/algebra.hpp"
#include "zigzag/complex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zigzag {

using LinComb = std::map<int, Rational>;
// Structure-map key: [module basis index, a_d, ..., a_1] (algebra indices).
using MuKey = std::vector<int>;

void lin_add(LinComb& dst, const Rational& c, const LinComb& src);
void lin_add(LinComb& dst, const Rational& c, int idx);
bool lin_is_zero(const LinComb& x);

// A strictly unital right A_infinity-module over a ZigzagAlgebra.
//
// mu stores mu^{d+1}(m, a_d, ..., a_1) on unit-free basis tuples; the unit
// rules mu^2(m, e_v) = m|_{vertex v} and mu^{>=3}(..., e, ...) = 0 are
// implicit. Every basis element lives at a single quiver vertex.
class AInfModule {
public:
    struct Basis {
        std::string label;
        int deg = 0;       // total (cohomological) degree
        int vertex = 1;    // m = m * e_vertex
        std::optional<int> s; // internal degree, when the module is bigraded
    };

    const ZigzagAlgebra* alg = nullptr;
    std::vector<Basis> basis;

    int dim() const { return (int)basis.size(); }
    int deg(int i) const { return basis[i].deg; }
    int min_deg() const;
    int max_deg() const;
    bool bigraded() const;

    void set_mu(const MuKey& key, const LinComb& value);
    // mu^{d+1} on a basis tuple; handles unit arguments implicitly.
    LinComb mu(int m, const std::vector<int>& as) const;
    LinComb mu_lin(const LinComb& m, const std::vector<int>& as) const;
    int max_mu_arity() const { return max_arity_; }

    const std::map<MuKey, LinComb>& mu_table() const { return mu_; }

    struct Report {
        bool ok = true;
        std::string first_violation;
    };
    // Checks the A_infinity-module equations on composable basis tuples up to
    // the arity forced by the stored structure maps, grading consistency, and
    // (for bigraded modules) that structure maps have bidegree (1-d, 0).
    Report validate(int extra_arity = 1) const;

    // The underlying cochain complex (mu^1 only).
    FiniteComplex underlying_complex() const;

private:
    std::map<MuKey, LinComb> mu_;
    int max_arity_ = 0; // max d over stored mu^{d+1}
};

// An element of hom_{A^mod}(src, tgt) of pure total degree `deg`:
// components phi^{d+1}: src (x) A^{(x)d} -> tgt of degree deg - d, stored on
// unit-free composable basis tuples.
class HomElement {
public:
    const AInfModule* src = nullptr;
    const AInfModule* tgt = nullptr;
    int deg = 0;

    std::map<MuKey, LinComb> phi;

    void set(const MuKey& key, const LinComb& value);
    LinComb component(int m, const std::vector<int>& as) const;
    LinComb component_lin(const LinComb& m, const std::vector<int>& as) const;
    bool is_zero() const;
    int max_arity() const;

    HomElement& operator+=(const HomElement& o);
    HomElement& operator*=(const Rational& c);
};

// The identity endomorphism: phi^1(m) = (-1)^{|m|} m.
HomElement identity_hom(const AInfModule& m);

// hom-complex differential mu^1_{A^mod} evaluated at one tuple.
LinComb hom_mu1_component(const HomElement& f, int m, const std::vector<int>& as);
// Composition mu^2_{A^mod}(g, f) ("g after f") evaluated at one tuple.
LinComb hom_mu2_component(const HomElement& g, const HomElement& f, int m, const std::vector<int>& as);

HomElement hom_mu1(const HomElement& f, int arity_cap);
HomElement hom_mu2(const HomElement& g, const HomElement& f, int arity_cap);

// All composable test tuples (m, a_d, ..., a_1) with at most `max_units`
// idempotent entries, for d <= arity. Keys are [m, a_d, ..., a_1].
std::vector<MuKey> test_tuples(const AInfModule& m, int arity, int max_units = 1);

// Is f closed (mu^1 f = 0), checked on all test tuples up to arity_cap?
bool hom_is_closed(const HomElement& f, int arity_cap, std::string* why = nullptr);

} // namespace zigzag
