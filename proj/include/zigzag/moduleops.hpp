#pragma once

#include "zigzag/module.hpp"
#include "zigzag/twisted.hpp"

#include <memory>

namespace zigzag {

// The bar-type module M (x)_A A, truncated to the degree window [lo, hi] (and
// a bar-length cap derived from it), together with the canonical
// quasi-isomorphism to M. Generators are (m, reduced composable chain, vertex).
struct BarTensor {
    // The truncated module, realized with dictionary signs.
    std::shared_ptr<AInfModule> module;
    // Canonical map as an arity-0 HomElement (solved exactly; certified closed).
    HomElement canonical;
    int lo = 0, hi = 0;
    // Inner window where the truncation provably does not affect cohomology.
    int inner_lo = 0, inner_hi = 0;
    int length_cap = 0;
};

// M must be a dg module (mu^1, mu^2 only). Throws on an empty window.
BarTensor bar_tensor(const AInfModule& m, int lo, int hi);

// Forget the internal grading of a bigraded module.
AInfModule collapse(const AInfModule& bigraded);

// Checks that the bigraded-to-collapsed comparison is bijective on hom
// cohomology for twisted complexes, and that the chain-level collapse rule
// phi(m) = (-1)^{j |m|_1} bold-phi(m) intertwines compositions up to
// (-1)^{i1 j2}. Returns a human-readable report; ok == everything verified.
struct CollapseCompareReport {
    bool ok = true;
    std::string detail;
};
CollapseCompareReport collapse_hom_compare(const TwistedComplex& m0, const TwistedComplex& m1);

// Degree scaling of a bigraded module A_m^n -> A_m^{n'}; structure constants
// unchanged, internal degrees rescaled. Throws on mixed residues.
AInfModule scale_transfer_module(const AInfModule& m, const ZigzagAlgebra& target);

// The collapsed hom complex of two twisted complexes (the dg model).
FiniteComplex hom_complex(const TwistedComplex& c0, const TwistedComplex& c1);

} // namespace zigzag
