#pragma once

#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/rational.hpp"

namespace halg {

using Vec = std::vector<Rational>;

// Dense row-major matrix over the rationals.  All arithmetic is exact.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
    }
    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : init) {
            if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("Matrix: ragged init");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }
    static Matrix from_rows(int cols, const std::vector<Vec>& rows) {
        Matrix m(static_cast<int>(rows.size()), cols);
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("Matrix: ragged rows");
            for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return a_[idx(i, j)]; }

    Vec row(int i) const {
        Vec r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }
    Vec col(int j) const {
        Vec c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
        return m;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b, "+");
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b, "-");
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
        return m;
    }
    friend Matrix operator*(const Rational& c, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = c * a.a_[k];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix m(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b.at(k, j);
                    if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
                }
            }
        return m;
    }

    friend Vec operator*(const Matrix& a, const Vec& v) {
        if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("Matrix: shape mismatch in apply");
        Vec r(a.rows_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j)
                if (!a.at(i, j).is_zero() && !v[j].is_zero()) r[i] += a.at(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Matrix pow(int e) const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: pow of non-square");
        if (e < 0) throw std::invalid_argument("Matrix: negative power");
        Matrix r = identity(rows_);
        for (int k = 0; k < e; ++k) r = r * (*this);
        return r;
    }

    // Kronecker product in lexicographic basis order (left factor major):
    // basis vector (i ⊗ j) has flat index i*b.cols + j.
    static Matrix kronecker(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (int k = 0; k < b.rows_; ++k)
                    for (int l = 0; l < b.cols_; ++l)
                        if (!b.at(k, l).is_zero())
                            m.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
            }
        return m;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
        }
        os << "]";
        return os.str();
    }

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("Matrix: index");
        return static_cast<size_t>(i) * cols_ + j;
    }
    void check_same_shape(const Matrix& b, const char* op) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument(std::string("Matrix: shape mismatch in ") + op);
    }

    int rows_, cols_;
    std::vector<Rational> a_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Reduced row echelon form by exact Gauss-Jordan elimination.  The RREF of a
// matrix is unique, which makes it usable as a canonical form for row spaces.
inline RrefResult rref(const Matrix& m) {
    RrefResult res{m, {}, 0};
    Matrix& a = res.reduced;
    int lead = 0;
    for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
        int piv = -1;
        for (int i = lead; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(lead, j));
        Rational inv = a.at(lead, col).inv();
        for (int j = col; j < a.cols(); ++j) a.at(lead, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == lead || a.at(i, col).is_zero()) continue;
            Rational f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(lead, j);
        }
        res.pivot_cols.push_back(col);
        ++lead;
    }
    res.rank = static_cast<int>(res.pivot_cols.size());
    return res;
}

inline int rank(const Matrix& m) { return rref(m).rank; }

// Basis (as rows) of { x : m x = 0 }, from the free columns of the RREF.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Rational(1);
        for (int p = 0; p < r.rank; ++p) v[r.pivot_cols[p]] = -r.reduced.at(p, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of a x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (a.rows() != static_cast<int>(b.size())) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (int c : r.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (int p = 0; p < r.rank; ++p) x[r.pivot_cols[p]] = r.reduced.at(p, a.cols());
    return x;
}

// One solution X of a X = b (columnwise), or nullopt.
inline std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_matrix: shape mismatch");
    Matrix x(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        auto xj = solve(a, b.col(j));
        if (!xj) return std::nullopt;
        for (int i = 0; i < a.cols(); ++i) x.at(i, j) = (*xj)[i];
    }
    return x;
}

}  // namespace halg
