#pragma once

#include "zigzag/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zigzag {

// A linear combination of algebra basis elements.
using AlgElem = std::map<int, Rational>;

// The graded zigzag algebra A_m^n on the A_m quiver: m vertices, arrows
// (k+1|k) in degree 0 and (k|k+1) in degree n, loops l_k = (k|k+1|k) = (k|k-1|k)
// in degree n. For m = 1 this degenerates to C[t]/t^2 with |t| = n.
class ZigzagAlgebra {
public:
    struct Basis {
        std::string label;
        int src = 0; // 1-based vertex, paths read right to left: src is the right end
        int tgt = 0;
        int deg = 0;
    };

    static ZigzagAlgebra build(int m, int n);

    int m() const { return m_; }
    int n() const { return n_; }
    int dim() const { return (int)basis_.size(); }
    const std::vector<Basis>& basis() const { return basis_; }
    const Basis& at(int i) const { return basis_[i]; }

    int idempotent(int vertex) const { return e_[vertex - 1]; }       // e_k
    int loop(int vertex) const { return loop_[vertex - 1]; }          // l_k
    std::optional<int> arrow_down(int k) const;                       // (k+1|k), degree 0
    std::optional<int> arrow_up(int k) const;                         // (k|k+1), degree n
    std::optional<int> index_of(const std::string& label) const;
    bool is_idempotent(int i) const { return basis_[i].deg == 0 && basis_[i].src == basis_[i].tgt; }

    // Product of basis elements b_i * b_j (path composition: b_j first).
    // Zero or a single scaled basis element; all structure constants are 0/1.
    std::optional<std::pair<int, Rational>> product(int i, int j) const;
    AlgElem multiply(const AlgElem& a, const AlgElem& b) const;

    // Basis elements x with x = e_tgt * x * e_src.
    std::vector<int> paths(int src, int tgt) const;

    struct Report {
        bool ok = true;
        std::string first_violation;
    };
    // Exhaustive associativity on basis triples, grading additivity,
    // idempotent axioms, and the defining relations.
    Report validate() const;

    // Testing hook: corrupt one product entry (returns modified copy).
    ZigzagAlgebra with_corrupted_product(int i, int j) const;

private:
    int m_ = 0, n_ = 0;
    std::vector<Basis> basis_;
    std::vector<int> e_, loop_;
    std::vector<int> up_, down_; // index by k-1; -1 if absent
    // prod_[i*dim+j]: index of result basis element, -1 for zero.
    std::vector<int> prod_;
};

} // namespace zigzag
