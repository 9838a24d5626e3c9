#pragma once

#include "zigzag/sparse.hpp"

#include <map>
#include <string>
#include <vector>

namespace zigzag {

// Ordered labeled basis of a finite graded vector space.
struct GradedSpace {
    struct Element {
        std::string label;
        int deg = 0;
    };
    std::vector<Element> basis;

    int dim() const { return (int)basis.size(); }
    int dim_in_degree(int k) const {
        int n = 0;
        for (auto& e : basis)
            if (e.deg == k) n++;
        return n;
    }
    void validate() const; // unique labels
};

// A finite cochain complex: degree slices and degree +1 differentials.
struct FiniteComplex {
    std::map<int, int> dims;                 // degree -> dimension (nonzero slices)
    std::map<int, std::vector<std::string>> labels; // optional, per degree
    std::map<int, SparseMatrix> d;           // d[k]: C^k -> C^{k+1}

    int dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }
    const SparseMatrix& diff(int k) const;   // zero matrix if absent
    bool check_dd(std::string* first_violation = nullptr) const;
};

// Per-degree cohomology with chosen cocycle representatives and the exact
// projection of cocycles onto the representative basis.
class CohomologyResult {
public:
    std::map<int, int> dims;
    std::map<int, std::vector<Vec>> reps; // cocycle vectors in C^k coordinates

    // Coordinates of a cocycle's class in the representative basis of H^k.
    // Throws if z is not a cocycle.
    Vec project(int k, const Vec& z) const;
    // The cocycle representative of [z]: reps-combination with project(k,z).
    Vec normal_form(int k, const Vec& z) const;

    struct DegreeData {
        std::vector<Vec> image_basis;           // basis of B^k
        std::optional<Elimination> rep_and_img; // columns [reps | image]
        std::optional<Elimination> d_elim;      // of d^k, to test cocycles
        int space_dim = 0;
    };
    std::map<int, DegreeData> data;
};

// Cohomology of a finite complex; throws std::invalid_argument if d∘d != 0.
CohomologyResult cohomology(const FiniteComplex& c);

// Dimensions only (rank computations, no representatives); much lighter.
std::map<int, int> cohomology_dims(const FiniteComplex& c);

} // namespace zigzag
