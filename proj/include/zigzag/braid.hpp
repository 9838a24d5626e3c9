#pragma once

#include "zigzag/twisted.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace zigzag {

// A braid word: letters +k for sigma_k (twist), -k for sigma_k^{-1} (untwist),
// applied left to right.
struct BraidWord {
    std::vector<int> letters;

    static BraidWord parse(const std::string& s); // "1 2 -1"
    std::string str() const;
    void check(int m) const; // indices in 1..m
};

// Apply a braid word, reducing after each letter.
TwistedComplex apply_braid(const BraidWord& w, const TwistedComplex& start);

// Generator-permutation-invariant canonical form (sorts generators, keeping a
// deterministic order among equals) used for on-the-nose comparisons.
TwistedComplex canonical_form(const TwistedComplex& c);
bool same_up_to_permutation(const TwistedComplex& a, const TwistedComplex& b);
std::string canonical_fingerprint(const TwistedComplex& c);

// A degree-0 closed A-linear map whose cone is acyclic.
struct QuasiIsoWitness {
    Vec coeffs; // over DgHom(c0, c1) basis
};

// Random search over degree-0 cohomology classes of hom(C0, C1); a found
// witness is certified by exactness (acyclic cone of the realized map).
std::optional<QuasiIsoWitness> quasi_iso_search(const TwistedComplex& c0, const TwistedComplex& c1,
                                                int attempts, uint64_t seed);

// Acyclicity of the cone of the realized A-linear chain map.
bool cone_is_acyclic(const TwistedComplex& c0, const TwistedComplex& c1, const Vec& hom_coeffs);

struct OrbitResult {
    enum class Status { found, exhausted } status = Status::exhausted;
    BraidWord word;
    TwistedComplex image;
    long explored = 0;
};

// Bounded breadth-first search over braid words (optionally beam-limited) from
// `start`, returning the first word whose reduced image satisfies `target`.
OrbitResult orbit_search(const TwistedComplex& start,
                         const std::function<bool(const TwistedComplex&)>& target, int depth,
                         int beam = 0, int jobs = 1);

} // namespace zigzag
