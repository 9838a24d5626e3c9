#pragma once

#include "zigzag/twisted.hpp"

#include <map>
#include <optional>
#include <vector>

namespace zigzag {

// An element of the Hochschild chain complex C_*(A, A): finitely many words
// (a_l (x) ... (x) a_1 (x) a) with bar entries a_l..a_1 and last slot a.
// Cohomological degree of a word: sum ||a_k|| + |a|.
struct HochschildChain {
    const ZigzagAlgebra* alg = nullptr;
    // key: (bar word [a_l, ..., a_1], last)
    std::map<std::pair<std::vector<int>, int>, Rational> terms;

    void add(const std::vector<int>& word, int last, const Rational& c);
    bool empty() const { return terms.empty(); }
    int word_degree(const std::vector<int>& word, int last) const;
    std::optional<int> degree() const; // homogeneous degree, if any
    int max_bar_length() const;
    HochschildChain& operator+=(const HochschildChain& o);
    HochschildChain& operator-=(const HochschildChain& o);
};

// The Hochschild differential (degree +1).
HochschildChain hh_differential(const HochschildChain& c);

// The canonical map hom_{A^tw}(C, C) -> C_*(A, A) applied to an endomorphism
// given by its A-linear components; shifts contribute (-1)^{i+j} per
// generator. For strictly triangular complexes the sum over delta-insertions
// is finite.
HochschildChain end_to_hh(const TwistedComplex& c, const Vec& endo);
// Image of the identity endomorphism.
HochschildChain end_to_hh_id(const TwistedComplex& c);

// Express a degree-0 cycle as sum c_k [e_k] + boundary; returns the class
// vector and the explicit bounding chain. Throws if the cycle is not
// homogeneous of degree 0 or the reduction fails within the length budget.
struct H0Reduction {
    std::vector<Rational> klass; // coordinates over [e_1..e_m]
    HochschildChain bounding;    // del(bounding) = input - sum klass_k e_k
};
H0Reduction reduce_degree0(const HochschildChain& x, int extra_length = 2);

// The algebraic fundamental class of a twisted complex, in Z^m.
std::vector<long> alg_class(const TwistedComplex& c);

// G_{kl} = chi(H hom(P_k, P_l)).
std::vector<std::vector<long>> gram_matrix(const ZigzagAlgebra& a);
long gram_det(const std::vector<std::vector<long>>& g);

// chi(H hom(C0, C1)) = k(C0)^T G k(C1), exactly.
bool cardy_verify(const TwistedComplex& c0, const TwistedComplex& c1);

} // namespace zigzag
