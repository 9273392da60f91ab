#pragma once

#include <stdexcept>
#include <vector>

#include "halg/matrix.hpp"
#include "halg/subspace.hpp"

namespace halg {

// Nilpotent endomorphism with its nilpotency index q: mat^(q+1) = 0 and
// mat^q ≠ 0 (so q = 0 means the zero map on a nonzero space).
struct NilpotentEndo {
    Matrix mat;
    int index = 0;
};

inline NilpotentEndo make_nilpotent(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("make_nilpotent: non-square matrix");
    int n = m.rows();
    if (n == 0) return NilpotentEndo{m, 0};
    Matrix p = Matrix::identity(n);
    for (int e = 0; e <= n; ++e) {
        if (e > 0) p = p * m;
        if (p.is_zero()) return NilpotentEndo{m, e == 0 ? 0 : e - 1};
    }
    throw std::invalid_argument("make_nilpotent: matrix is not nilpotent");
}

// Kronecker-sum action on the tensor product: N1 ⊗ id + id ⊗ N2, in the
// lexicographic Kronecker basis.  Its index is at most q1 + q2.
inline NilpotentEndo tensor_nilpotent(const NilpotentEndo& a, const NilpotentEndo& b) {
    Matrix m = Matrix::kronecker(a.mat, Matrix::identity(b.mat.rows())) +
               Matrix::kronecker(Matrix::identity(a.mat.rows()), b.mat);
    NilpotentEndo t = make_nilpotent(m);
    if (t.index > a.index + b.index) throw std::logic_error("tensor_nilpotent: index bound violated");
    return t;
}

inline Subspace kernel_of_power(const NilpotentEndo& n, int e) {
    return Subspace::from_rows(n.mat.cols(), kernel_basis(n.mat.pow(e)));
}
inline Subspace image_of_power(const NilpotentEndo& n, int e) {
    return apply_image(n.mat.pow(e), Subspace::full(n.mat.cols()));
}

// A Jordan string of length m: vectors v, Nv, …, N^{m-1}v with N^m v = 0.
struct JordanString {
    std::vector<Vec> vectors;  // vectors[j] = N^j v
    int length() const { return static_cast<int>(vectors.size()); }
};

// Jordan basis organized as strings.  Tops of length-j strings are chosen as
// a (deterministic, echelon-greedy) complement of ker N^{j-1} + N(higher
// strings) inside ker N^j, descending from the longest strings.
inline std::vector<JordanString> jordan_strings(const NilpotentEndo& n) {
    int dim = n.mat.rows();
    std::vector<JordanString> strings;
    if (dim == 0) return strings;
    int s = n.index + 1;  // smallest power that kills everything
    for (int j = s; j >= 1; --j) {
        Subspace kj = kernel_of_power(n, j);
        Subspace kjm1 = kernel_of_power(n, j - 1);
        std::vector<Vec> carried_rows;
        for (int i = 0; i < kjm1.dim(); ++i) carried_rows.push_back(kjm1.basis_row(i));
        for (const auto& str : strings)
            if (str.length() > j) carried_rows.push_back(str.vectors[str.length() - j]);
        Subspace blocked = Subspace::from_rows(dim, carried_rows);
        Subspace tops = complement_within(kj, blocked);
        for (int t = 0; t < tops.dim(); ++t) {
            JordanString str;
            Vec v = tops.basis_row(t);
            for (int e = 0; e < j; ++e) {
                str.vectors.push_back(v);
                v = n.mat * v;
            }
            strings.push_back(std::move(str));
        }
    }
    int total = 0;
    std::vector<Vec> all;
    for (const auto& str : strings) {
        total += str.length();
        for (const auto& v : str.vectors) all.push_back(v);
    }
    if (total != dim || rank(Matrix::from_rows(dim, all)) != dim)
        throw std::logic_error("jordan_strings: not a basis");
    return strings;
}

}  // namespace halg
