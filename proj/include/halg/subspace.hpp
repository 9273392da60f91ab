#pragma once

#include <string>
#include <vector>

#include "halg/matrix.hpp"

namespace halg {

// Subspace of Q^n held in canonical form: basis rows in RREF with zero rows
// dropped.  RREF uniqueness makes equality of subspaces a syntactic check.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    static Subspace zero(int ambient) { return Subspace(ambient, Matrix(0, ambient)); }
    static Subspace full(int ambient) { return Subspace(ambient, Matrix::identity(ambient)); }

    static Subspace from_rows(int ambient, const std::vector<Vec>& rows) {
        return Subspace(ambient, Matrix::from_rows(ambient, rows));
    }
    static Subspace from_matrix_rows(const Matrix& rows) { return Subspace(rows.cols(), rows); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    Vec basis_row(int i) const { return basis_.row(i); }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    // Total order compatible with equality, for use as a map/set key.
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.ambient_; ++j) {
                const Rational &x = a.basis_.at(i, j), &y = b.basis_.at(i, j);
                if (x != y) return x < y;
            }
        return false;
    }

    bool contains(const Vec& v) const {
        if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
        Vec r = v;
        for (int i = 0; i < basis_.rows(); ++i) {
            int p = pivot_of_row(i);
            if (r[p].is_zero()) continue;
            Rational f = r[p];
            for (int j = 0; j < ambient_; ++j) r[j] -= f * basis_.at(i, j);
        }
        for (const auto& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_row(i))) return false;
        return true;
    }

    // Constraint matrix C with this = { x : C x = 0 }.  Rows of C span the
    // dot-pairing annihilator, computed as the kernel of the basis matrix.
    Matrix constraints() const {
        std::vector<Vec> rows = kernel_basis(basis_);
        return Matrix::from_rows(ambient_, rows);
    }

    std::string str() const { return "span" + basis_.str(); }

private:
    Subspace(int ambient, const Matrix& rows) : ambient_(ambient) {
        if (rows.cols() != ambient) throw std::invalid_argument("Subspace: ambient mismatch");
        RrefResult r = rref(rows);
        Matrix b(r.rank, ambient);
        for (int i = 0; i < r.rank; ++i)
            for (int j = 0; j < ambient; ++j) b.at(i, j) = r.reduced.at(i, j);
        basis_ = b;
        pivots_ = r.pivot_cols;
    }

    int pivot_of_row(int i) const { return pivots_[i]; }

    int ambient_;
    Matrix basis_;          // RREF rows, no zero rows
    std::vector<int> pivots_;
};

inline Subspace span_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("span_sum: ambient mismatch");
    std::vector<Vec> rows;
    for (int i = 0; i < a.dim(); ++i) rows.push_back(a.basis_row(i));
    for (int i = 0; i < b.dim(); ++i) rows.push_back(b.basis_row(i));
    return Subspace::from_rows(a.ambient(), rows);
}

// Intersection as the kernel of the stacked constraint matrices.
inline Subspace span_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("span_intersect: ambient mismatch");
    Matrix ca = a.constraints(), cb = b.constraints();
    Matrix stacked(ca.rows() + cb.rows(), a.ambient());
    for (int i = 0; i < ca.rows(); ++i)
        for (int j = 0; j < a.ambient(); ++j) stacked.at(i, j) = ca.at(i, j);
    for (int i = 0; i < cb.rows(); ++i)
        for (int j = 0; j < a.ambient(); ++j) stacked.at(ca.rows() + i, j) = cb.at(i, j);
    return Subspace::from_rows(a.ambient(), kernel_basis(stacked));
}

// f(S) for f acting on column vectors.
inline Subspace apply_image(const Matrix& f, const Subspace& s) {
    if (f.cols() != s.ambient()) throw std::invalid_argument("apply_image: shape mismatch");
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) rows.push_back(f * s.basis_row(i));
    return Subspace::from_rows(f.rows(), rows);
}

// f^{-1}(S) = { x : f x ∈ S }, the kernel of (constraints(S) ∘ f).
inline Subspace apply_preimage(const Matrix& f, const Subspace& s) {
    if (f.rows() != s.ambient()) throw std::invalid_argument("apply_preimage: shape mismatch");
    return Subspace::from_rows(f.cols(), kernel_basis(s.constraints() * f));
}

// Deterministic complement of `sub` inside `total`: extend sub's basis by
// greedily taking rows of total's canonical basis that grow the rank.
inline Subspace complement_within(const Subspace& total, const Subspace& sub) {
    if (!total.contains(sub)) throw std::invalid_argument("complement_within: sub not inside total");
    std::vector<Vec> acc;
    for (int i = 0; i < sub.dim(); ++i) acc.push_back(sub.basis_row(i));
    std::vector<Vec> comp;
    int have = sub.dim();
    for (int i = 0; i < total.dim() && have < total.dim(); ++i) {
        Vec cand = total.basis_row(i);
        std::vector<Vec> trial = acc;
        trial.push_back(cand);
        if (rank(Matrix::from_rows(total.ambient(), trial)) > have) {
            acc.push_back(cand);
            comp.push_back(cand);
            ++have;
        }
    }
    return Subspace::from_rows(total.ambient(), comp);
}

struct QuotientData {
    // projection: ambient -> Q^q on columns, kills `sub`, inverse to lift on
    // the quotient; lift_basis rows are coset representatives inside `total`.
    Matrix projection;
    Matrix lift_basis;
};

// Coordinates for total/sub.  projection ∘ lift = id (checked by tests);
// vectors of `total` decompose as sub-part + lift(projection(x)).
inline QuotientData quotient_data(const Subspace& total, const Subspace& sub) {
    Subspace comp = complement_within(total, sub);
    int t = total.dim(), q = comp.dim(), n = total.ambient();
    // Basis matrix Z: sub rows first, then complement rows.  For x ∈ total
    // with x = Zᵀa the coefficients are a = (Z Zᵀ)⁻¹ Z x; the Gram matrix is
    // invertible because the dot form on Q^n is positive definite.
    std::vector<Vec> zrows;
    for (int i = 0; i < sub.dim(); ++i) zrows.push_back(sub.basis_row(i));
    for (int i = 0; i < q; ++i) zrows.push_back(comp.basis_row(i));
    Matrix z = Matrix::from_rows(n, zrows);
    auto coords = solve_matrix(z * z.transpose(), z);
    if (!coords) throw std::logic_error("quotient_data: Gram system unsolvable");
    Matrix proj(q, n);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < n; ++j) proj.at(i, j) = coords->at(t - q + i, j);
    return QuotientData{proj, comp.basis()};
}

}  // namespace halg
