#include "zigzag/sparse.hpp"

#include <algorithm>
#include <limits>

namespace zigzag {

Vec SparseMatrix::apply(const Vec& x) const {
    if ((int)x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    Vec out(rows_, Rational(0));
    for (int r = 0; r < rows_; ++r) {
        Rational acc(0);
        for (auto& [c, v] : row_[r])
            if (!x[c].is_zero()) acc += v * x[c];
        out[r] = acc;
    }
    return out;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : row_[r]) t.set(c, r, v);
    return t;
}

namespace {

void axpy(std::map<int, Rational>& dst, const Rational& coeff, const std::map<int, Rational>& src) {
    for (auto& [c, v] : src) {
        auto it = dst.find(c);
        if (it == dst.end()) {
            Rational nv = coeff * v;
            if (!nv.is_zero()) dst[c] = nv;
        } else {
            it->second += coeff * v;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

} // namespace

Elimination::Elimination(const SparseMatrix& a, bool track_ops)
    : rows_(a.rows()), cols_(a.cols()), rank_(0), track_ops_(track_ops) {
    // Full reduced echelon: eliminate the pivot column from every other row,
    // including rows that already hold a pivot.
    std::vector<std::map<int, Rational>> work(rows_);
    std::vector<std::map<int, Rational>> ops(track_ops ? rows_ : 0);
    for (int r = 0; r < rows_; ++r) {
        work[r] = a.row(r);
        if (track_ops) ops[r][r] = Rational(1);
    }
    std::vector<bool> has_pivot(rows_, false);
    std::vector<bool> col_done(cols_, false);
    std::vector<int> col_count(cols_, 0);
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : work[r]) col_count[c]++;

    col_of_pivot_.assign(cols_, -1);
    std::vector<int> pivot_row_of; // extraction order -> original row

    for (;;) {
        // Markowitz: minimize (nnz(row)-1)*(nnz(col)-1) over active entries.
        long best_score = std::numeric_limits<long>::max();
        size_t best_bits = std::numeric_limits<size_t>::max();
        int pr = -1, pc = -1;
        for (int r = 0; r < rows_; ++r) {
            if (has_pivot[r] || work[r].empty()) continue;
            long rn = (long)work[r].size() - 1;
            for (auto& [c, v] : work[r]) {
                if (col_done[c]) continue;
                long score = rn * (long)(col_count[c] - 1);
                size_t bits = v.bit_size();
                if (score < best_score || (score == best_score && bits < best_bits)) {
                    best_score = score;
                    best_bits = bits;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr < 0) break;

        Rational inv = work[pr].at(pc).inv();
        for (auto& [c, v] : work[pr]) v *= inv;
        if (track_ops)
            for (auto& [c, v] : ops[pr]) v *= inv;

        for (int r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            auto it = work[r].find(pc);
            if (it == work[r].end()) continue;
            Rational f = -it->second;
            for (auto& [c, v] : work[r]) col_count[c]--;
            axpy(work[r], f, work[pr]);
            if (track_ops) axpy(ops[r], f, ops[pr]);
            for (auto& [c, v] : work[r]) col_count[c]++;
        }
        has_pivot[pr] = true;
        col_done[pc] = true;
        pivot_row_of.push_back(pr);
        pivot_col_.push_back(pc);
        col_of_pivot_[pc] = rank_;
        rank_++;
    }

    for (int i = 0; i < rank_; ++i) {
        rref_.push_back(std::move(work[pivot_row_of[i]]));
        if (track_ops) ops_.push_back(std::move(ops[pivot_row_of[i]]));
    }
    if (track_ops)
        for (int r = 0; r < rows_; ++r)
            if (!has_pivot[r]) zero_ops_.push_back(std::move(ops[r]));
}

const std::vector<Vec>& Elimination::kernel() const {
    if (kernel_done_) return kernel_;
    kernel_done_ = true;
    for (int c = 0; c < cols_; ++c) {
        if (col_of_pivot_[c] >= 0) continue;
        Vec v(cols_, Rational(0));
        v[c] = Rational(1);
        for (size_t i = 0; i < rref_.size(); ++i) {
            auto it = rref_[i].find(c);
            if (it != rref_[i].end()) v[pivot_col_[i]] = -it->second;
        }
        kernel_.push_back(std::move(v));
    }
    return kernel_;
}

std::optional<Vec> Elimination::solve(const Vec& b) const {
    if (!track_ops_) throw std::logic_error("Elimination::solve: built without row-op tracking");
    if ((int)b.size() != rows_) throw std::invalid_argument("Elimination::solve: dimension mismatch");
    Vec x(cols_, Rational(0));
    for (size_t i = 0; i < ops_.size(); ++i) {
        Rational acc(0);
        for (auto& [r, v] : ops_[i])
            if (!b[r].is_zero()) acc += v * b[r];
        x[pivot_col_[i]] = acc;
    }
    for (auto& zop : zero_ops_) {
        Rational acc(0);
        for (auto& [r, v] : zop)
            if (!b[r].is_zero()) acc += v * b[r];
        if (!acc.is_zero()) return std::nullopt;
    }
    return x;
}

LinearSolution solve_linear(const SparseMatrix& a, const Vec& b) {
    if ((int)b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
    Elimination e(a);
    LinearSolution s;
    s.rank = e.rank();
    s.kernel = e.kernel();
    auto x = e.solve(b);
    s.consistent = x.has_value();
    if (x) s.x = *x;
    return s;
}

std::optional<Vec> solve_once(const SparseMatrix& a, const Vec& b) {
    if ((int)b.size() != a.rows()) throw std::invalid_argument("solve_once: dimension mismatch");
    // Augment b as column `cols` and eliminate; never pivot on the augmented
    // column. This avoids storing the row-operation matrix.
    int cols = a.cols();
    SparseMatrix aug(a.rows(), cols + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (auto& [c, v] : a.row(r)) aug.set(r, c, v);
        if (!b[r].is_zero()) aug.set(r, cols, b[r]);
    }
    // Reuse the elimination structure but treat the last column as inert by
    // running RREF on the full matrix and checking for a pivot there.
    Elimination e(aug, false);
    // A pivot in the augmented column means inconsistency.
    auto kern = e.kernel();
    // Solutions correspond to kernel vectors of [A | b] with last coordinate -1.
    for (auto& k : kern) {
        if (k[cols].is_zero()) continue;
        Rational f = -k[cols].inv();
        Vec x(cols);
        for (int j = 0; j < cols; ++j) x[j] = k[j] * f;
        return x;
    }
    return std::nullopt;
}

int matrix_rank(const SparseMatrix& a) {
    Elimination e(a, false);
    return e.rank();
}

bool SpanTracker::add(const Vec& v) {
    Vec r = reduce(v);
    int p = -1;
    for (int i = 0; i < n_; ++i)
        if (!r[i].is_zero()) { p = i; break; }
    if (p < 0) return false;
    Rational inv = r[p].inv();
    std::map<int, Rational> row;
    for (int i = 0; i < n_; ++i)
        if (!r[i].is_zero()) row[i] = r[i] * inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

Vec SpanTracker::reduce(const Vec& v) const {
    if ((int)v.size() != n_) throw std::invalid_argument("SpanTracker: dimension mismatch");
    Vec r = v;
    for (size_t i = 0; i < rows_.size(); ++i) {
        const Rational& c = r[pivots_[i]];
        if (c.is_zero()) continue;
        Rational f = -c;
        for (auto& [j, w] : rows_[i]) r[j] += f * w;
    }
    return r;
}

bool SpanTracker::contains(const Vec& v) const {
    Vec r = reduce(v);
    for (auto& c : r)
        if (!c.is_zero()) return false;
    return true;
}

} // namespace zigzag
