#include "zigzag/complex.hpp"

#include <set>
#include <stdexcept>

namespace zigzag {

void GradedSpace::validate() const {
    std::set<std::string> seen;
    for (auto& e : basis)
        if (!seen.insert(e.label).second)
            throw std::invalid_argument("GradedSpace: duplicate label '" + e.label + "'");
}

const SparseMatrix& FiniteComplex::diff(int k) const {
    static const SparseMatrix empty(0, 0);
    auto it = d.find(k);
    if (it != d.end()) return it->second;
    return empty;
}

bool FiniteComplex::check_dd(std::string* first_violation) const {
    for (auto& [k, dk] : d) {
        auto it = d.find(k + 1);
        if (it == d.end()) continue;
        const SparseMatrix& dk1 = it->second;
        if (dk1.cols() != dk.rows()) {
            if (first_violation) *first_violation = "differential shape mismatch at degree " + std::to_string(k);
            return false;
        }
        // (d^{k+1} d^k) column by column
        for (int c = 0; c < dk.cols(); ++c) {
            Vec col(dk.rows(), Rational(0));
            for (int r = 0; r < dk.rows(); ++r) col[r] = dk.get(r, c);
            Vec out = dk1.apply(col);
            for (auto& v : out)
                if (!v.is_zero()) {
                    if (first_violation)
                        *first_violation = "d∘d != 0 at degree " + std::to_string(k) + ", column " + std::to_string(c);
                    return false;
                }
        }
    }
    return true;
}

CohomologyResult cohomology(const FiniteComplex& c) {
    std::string why;
    if (!c.check_dd(&why)) throw std::invalid_argument("cohomology: " + why);

    CohomologyResult res;
    for (auto& [k, dim] : c.dims) {
        if (dim == 0) continue;
        auto& dd = res.data[k];
        dd.space_dim = dim;

        // Kernel of d^k.
        SparseMatrix dk = c.diff(k);
        std::vector<Vec> kernel;
        if (dk.rows() == 0) {
            for (int i = 0; i < dim; ++i) {
                Vec v(dim, Rational(0));
                v[i] = Rational(1);
                kernel.push_back(std::move(v));
            }
            dd.d_elim.emplace(SparseMatrix(0, dim));
        } else {
            dd.d_elim.emplace(dk);
            kernel = dd.d_elim->kernel();
        }

        // Image of d^{k-1}: span of its columns.
        SpanTracker img(dim);
        SparseMatrix dprev = c.diff(k - 1);
        if (dprev.rows() == dim) {
            for (int col = 0; col < dprev.cols(); ++col) {
                Vec v(dim, Rational(0));
                for (int r = 0; r < dim; ++r) v[r] = dprev.get(r, col);
                if (img.add(v)) dd.image_basis.push_back(std::move(v));
            }
        }

        // Representatives: kernel vectors independent modulo the image.
        SpanTracker span(dim);
        for (auto& b : dd.image_basis) span.add(b);
        std::vector<Vec> reps;
        for (auto& z : kernel)
            if (span.add(z)) reps.push_back(z);

        res.dims[k] = (int)reps.size();
        res.reps[k] = reps;

        // Membership solver for [reps | image]: z = reps*x1 + image*x2.
        int w = (int)(reps.size() + dd.image_basis.size());
        SparseMatrix m(dim, w);
        for (size_t j = 0; j < reps.size(); ++j)
            for (int i = 0; i < dim; ++i)
                if (!reps[j][i].is_zero()) m.set(i, (int)j, reps[j][i]);
        for (size_t j = 0; j < dd.image_basis.size(); ++j)
            for (int i = 0; i < dim; ++i)
                if (!dd.image_basis[j][i].is_zero()) m.set(i, (int)(reps.size() + j), dd.image_basis[j][i]);
        dd.rep_and_img.emplace(m);
    }
    return res;
}

std::map<int, int> cohomology_dims(const FiniteComplex& c) {
    std::string why;
    if (!c.check_dd(&why)) throw std::invalid_argument("cohomology_dims: " + why);
    std::map<int, int> ranks;
    for (auto& [k, dk] : c.d) ranks[k] = matrix_rank(dk);
    std::map<int, int> out;
    for (auto& [k, dim] : c.dims) {
        int rk = ranks.count(k) ? ranks.at(k) : 0;
        int rprev = ranks.count(k - 1) ? ranks.at(k - 1) : 0;
        out[k] = dim - rk - rprev;
    }
    return out;
}

Vec CohomologyResult::project(int k, const Vec& z) const {
    auto it = data.find(k);
    if (it == data.end()) {
        for (auto& v : z)
            if (!v.is_zero()) throw std::invalid_argument("project: nonzero vector in empty degree");
        return {};
    }
    auto& dd = it->second;
    if ((int)z.size() != dd.space_dim) throw std::invalid_argument("project: dimension mismatch");
    // reps ∪ image is a basis of Z^k, so membership doubles as the cocycle check.
    auto sol = dd.rep_and_img->solve(z);
    if (!sol) throw std::invalid_argument("project: vector is not a cocycle (not in Z^k)");
    int h = dims.count(k) ? dims.at(k) : 0;
    Vec out(h, Rational(0));
    for (int i = 0; i < h; ++i) out[i] = (*sol)[i];
    return out;
}

Vec CohomologyResult::normal_form(int k, const Vec& z) const {
    Vec coords = project(k, z);
    auto it = reps.find(k);
    int n = (int)z.size();
    Vec out(n, Rational(0));
    if (it == reps.end()) return out;
    for (size_t j = 0; j < it->second.size(); ++j)
        for (int i = 0; i < n; ++i) out[i] += coords[j] * it->second[j][i];
    return out;
}

} // namespace zigzag
