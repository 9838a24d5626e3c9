#pragma once

#include "zigzag/algebra.hpp"
#include "zigzag/complex.hpp"
#include "zigzag/module.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zigzag {

// One shifted projective generator P_vertex{ishift}[jshift].
// Bidegree of the generator: (r, s) = (-jshift, ishift); total t = ishift - jshift.
struct TwGen {
    int vertex = 1;
    int ishift = 0;
    int jshift = 0;
    friend bool operator==(const TwGen&, const TwGen&) = default;
    friend auto operator<=>(const TwGen&, const TwGen&) = default;
};

// A twisted complex over the projectives P_k, stored with its honest
// differential: del(gamma_{g0}) = sum_g1 gamma_{g1} * entry(g1, g0), entries
// in e_{k1} A e_{k0}. Maurer-Cartan is the plain matrix equation D*D = 0.
class TwistedComplex {
public:
    const ZigzagAlgebra* alg = nullptr;
    std::vector<TwGen> gens;
    std::map<std::pair<int, int>, AlgElem> entries; // (to, from) -> algebra element

    static TwistedComplex projective(const ZigzagAlgebra& a, int vertex, int ishift = 0, int jshift = 0);

    int gen_r(int f) const { return -gens[f].jshift; }
    int gen_s(int f) const { return gens[f].ishift; }
    int gen_t(int f) const { return gens[f].ishift - gens[f].jshift; }
    int size() const { return (int)gens.size(); }

    void set_entry(int to, int from, const AlgElem& value); // enforces bidegree rules
    AlgElem entry(int to, int from) const;

    bool maurer_cartan(std::string* why = nullptr) const;
    bool strictly_triangular(std::string* why = nullptr) const;
    void validate() const; // throws on violation

    TwistedComplex shifted(int di, int dj) const; // {di}[dj]
    friend TwistedComplex direct_sum(const TwistedComplex& a, const TwistedComplex& b);
    friend bool operator==(const TwistedComplex& a, const TwistedComplex& b);

    // The strictly unital dg module realization; basis (generator, path).
    AInfModule realize() const;

    // K-class: sum over generators of (-1)^{i+j} e_vertex, in Z^m.
    std::vector<long> k_class() const;
};

// Basis element of the A-linear hom space: gamma_{f0} |-> gamma_{f1} * path.
struct DgHomBasisElt {
    int f0, f1, path;
};

// hom_{A}(C0, C1) as a finite bigraded cochain complex of A-linear maps with
// the classical differential D(phi) = del∘phi - (-1)^{|phi|} phi∘del.
class DgHom {
public:
    DgHom(const TwistedComplex& src, const TwistedComplex& tgt);

    const TwistedComplex& src() const { return *src_; }
    const TwistedComplex& tgt() const { return *tgt_; }
    const std::vector<DgHomBasisElt>& basis() const { return elts_; }
    int dim() const { return (int)elts_.size(); }
    int elt_deg(int i) const;      // total degree
    int elt_s(int i) const;        // s-offset
    int find(int f0, int f1, int path) const; // basis index or -1
    Vec differential(int i) const; // D of a basis element, as a coefficient vector
    Vec differential(const Vec& v) const;

    // Total-degree complex (collapsed) and its cohomology.
    FiniteComplex total_complex() const;

    // index bookkeeping between hom basis and total_complex slices
    int slice_pos(int elt) const { return slice_pos_[elt]; }
    const std::vector<int>& slice(int deg) const;
    Vec to_slice(int deg, const Vec& full) const;
    Vec from_slice(int deg, const Vec& sl) const;

private:
    const TwistedComplex* src_;
    const TwistedComplex* tgt_;
    std::vector<DgHomBasisElt> elts_;
    std::map<std::tuple<int, int, int>, int> index_;
    std::map<int, std::vector<int>> slices_; // total degree -> elt indices
    std::vector<int> slice_pos_;
};

// g∘f with hf = hom(X,Y) carrying f, hg = hom(Y,Z) carrying g, hout = hom(X,Z).
Vec dg_compose(const DgHom& hg, const Vec& g, const DgHom& hf, const Vec& f, const DgHom& hout);

// A cohomology class of hom(C0, C1) with a chosen A-linear cocycle
// representative. r is the first (cohomological) degree and s the internal
// offset, so the class lives in H^r(hom(C0{s}, C1)) and has total degree r+s.
struct HomClass {
    int r = 0;
    int s = 0;
    std::vector<std::pair<DgHomBasisElt, Rational>> rep;
    int total() const { return r + s; }
};

// All cohomology classes of hom(C0, C1), split by (r, s).
std::vector<HomClass> hom_classes(const TwistedComplex& c0, const TwistedComplex& c1);

// dims of H^j(hom(C0{i}, C1)) indexed by (i, j) = (s, r).
std::map<std::pair<int, int>, int> ext_table(const TwistedComplex& c0, const TwistedComplex& c1);
long ext_total_dim(const TwistedComplex& c0, const TwistedComplex& c1);
long euler_pairing(const TwistedComplex& c0, const TwistedComplex& c1); // chi of H(hom)

// Twist functor T_{P_k} and its inverse.
TwistedComplex twist(int k, const TwistedComplex& c);
TwistedComplex untwist(int k, const TwistedComplex& c);

// Gaussian cancellation of invertible idempotent entries; quasi-isomorphic output.
TwistedComplex reduce(const TwistedComplex& c);

// Mapping cone of a closed degree-(0,0) A-linear map given by components
// phi(gamma_{f0}) = sum gamma_{f1} * p.
TwistedComplex mapping_cone(const TwistedComplex& c0, const TwistedComplex& c1,
                            const std::map<std::pair<int, int>, AlgElem>& phi);

struct SphericalReport {
    bool spherical = false;
    std::string detail;
};
// H(end C) = H*(S^n) dimensionally, plus nondegenerate composition pairing
// against every P_k.
SphericalReport spherical_check(const TwistedComplex& c);

// Scale transfer A_m^n -> A_m^{n'} (Remark on degree scaling); throws on
// mixed internal-degree residues.
TwistedComplex scale_transfer(const TwistedComplex& c, const ZigzagAlgebra& target);

} // namespace zigzag
