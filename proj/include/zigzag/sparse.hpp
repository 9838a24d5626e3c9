#pragma once

#include "zigzag/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace zigzag {

using Vec = std::vector<Rational>;

// Sparse exact matrix, row-major; no stored zeros.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& v) {
        check(r, c);
        if (v.is_zero()) row_[r].erase(c);
        else row_[r][c] = v;
    }
    void add(int r, int c, const Rational& v) {
        check(r, c);
        auto it = row_[r].find(c);
        if (it == row_[r].end()) {
            if (!v.is_zero()) row_[r][c] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) row_[r].erase(it);
        }
    }
    Rational get(int r, int c) const {
        check(r, c);
        auto it = row_[r].find(c);
        return it == row_[r].end() ? Rational(0) : it->second;
    }
    const std::map<int, Rational>& row(int r) const { return row_[r]; }
    size_t nnz() const {
        size_t n = 0;
        for (auto& r : row_) n += r.size();
        return n;
    }

    Vec apply(const Vec& x) const;
    SparseMatrix transpose() const;
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ == b.row_;
    }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix: index out of range");
    }
    int rows_, cols_;
    std::vector<std::map<int, Rational>> row_;
};

struct LinearSolution {
    bool consistent = false;
    Vec x;                   // one solution, if consistent
    std::vector<Vec> kernel; // basis of ker A
    int rank = 0;
};

// Exact sparse Gaussian elimination with Markowitz-style pivot selection.
// Factors once; solves any number of right-hand sides when track_ops is set
// (the default); with track_ops = false only rank and kernel are available.
class Elimination {
public:
    explicit Elimination(const SparseMatrix& a, bool track_ops = true);

    int rank() const { return rank_; }
    const std::vector<Vec>& kernel() const;
    std::optional<Vec> solve(const Vec& b) const;
    bool in_image(const Vec& b) const { return solve(b).has_value(); }

private:
    int rows_, cols_;
    int rank_;
    bool track_ops_ = true;
    // RREF rows of A together with the row-operation matrix E (E*A = R).
    std::vector<std::map<int, Rational>> rref_;
    std::vector<std::map<int, Rational>> ops_;
    std::vector<std::map<int, Rational>> zero_ops_; // combos yielding zero rows
    std::vector<int> pivot_col_;          // per rref row
    std::vector<int> col_of_pivot_;       // per column: rref row index or -1
    mutable std::vector<Vec> kernel_;
    mutable bool kernel_done_ = false;
};

LinearSolution solve_linear(const SparseMatrix& a, const Vec& b);

// One-shot solve via an augmented column; no row-operation bookkeeping.
// Returns one solution if consistent. Does not compute the kernel.
std::optional<Vec> solve_once(const SparseMatrix& a, const Vec& b);

int matrix_rank(const SparseMatrix& a);

// Incremental span of vectors in Q^n with exact residue reduction.
class SpanTracker {
public:
    explicit SpanTracker(int n) : n_(n) {}
    // Returns true if v enlarged the span.
    bool add(const Vec& v);
    // Residue of v modulo the current span.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    int dim() const { return (int)rows_.size(); }

private:
    int n_;
    std::vector<std::map<int, Rational>> rows_;
    std::vector<int> pivots_;
};

} // namespace zigzag
