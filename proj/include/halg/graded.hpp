#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/check.hpp"
#include "halg/matrix.hpp"

namespace halg {

// Finite-dimensional integer-graded vector space with labeled, weighted
// basis elements.  Weights default to zero and only matter for the
// weight-homogeneous machinery.
class GradedSpace {
public:
    GradedSpace() = default;

    void add_degree(int n, std::vector<std::string> labels, std::vector<int> weights = {}) {
        if (labels.empty()) return;
        if (weights.empty()) weights.assign(labels.size(), 0);
        if (weights.size() != labels.size())
            throw std::invalid_argument("GradedSpace: weights/labels size mismatch");
        if (dims_.count(n)) throw std::invalid_argument("GradedSpace: degree added twice");
        dims_[n] = static_cast<int>(labels.size());
        labels_[n] = std::move(labels);
        weights_[n] = std::move(weights);
    }

    int dim(int n) const {
        auto it = dims_.find(n);
        return it == dims_.end() ? 0 : it->second;
    }
    int total_dim() const {
        int t = 0;
        for (auto& [n, d] : dims_) t += d;
        return t;
    }
    std::vector<int> degrees() const {
        std::vector<int> out;
        for (auto& [n, d] : dims_) out.push_back(n);
        return out;
    }
    const std::string& label(int n, int i) const { return labels_.at(n).at(i); }
    int weight(int n, int i) const { return weights_.at(n).at(i); }
    const std::vector<int>& weights(int n) const { return weights_.at(n); }
    bool has_nontrivial_weights() const {
        for (auto& [n, ws] : weights_)
            for (int w : ws)
                if (w != 0) return true;
        return false;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.dims_ == b.dims_ && a.labels_ == b.labels_ && a.weights_ == b.weights_;
    }

private:
    std::map<int, int> dims_;
    std::map<int, std::vector<std::string>> labels_;
    std::map<int, std::vector<int>> weights_;
};

// Homogeneous element: a degree and coordinates in that degree's basis.
struct Elt {
    int deg = 0;
    Vec coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }
};

inline Elt zero_elt(const GradedSpace& s, int deg) { return Elt{deg, Vec(s.dim(deg))}; }
inline Elt basis_elt(const GradedSpace& s, int deg, int i) {
    Elt e = zero_elt(s, deg);
    e.coords.at(i) = Rational(1);
    return e;
}
inline Elt operator+(const Elt& a, const Elt& b) {
    if (a.deg != b.deg || a.coords.size() != b.coords.size())
        throw std::invalid_argument("Elt: degree mismatch in sum");
    Elt r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = r.coords[i] + b.coords[i];
    return r;
}
inline Elt operator*(const Rational& c, const Elt& a) {
    Elt r = a;
    for (auto& x : r.coords) x = c * x;
    return r;
}
inline Elt operator-(const Elt& a, const Elt& b) { return a + (Rational(-1) * b); }
inline bool operator==(const Elt& a, const Elt& b) { return a.deg == b.deg && a.coords == b.coords; }

inline std::string elt_str(const GradedSpace& s, const Elt& x) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i].is_zero()) continue;
        if (!first) os << " + ";
        os << x.coords[i].str() << "*" << s.label(x.deg, static_cast<int>(i));
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// Cochain complex: graded space with degree +1 differentials.
struct Complex {
    GradedSpace space;
    std::map<int, Matrix> d;  // d[n] : L^n -> L^{n+1}; absent means zero

    Matrix dmat(int n) const {
        auto it = d.find(n);
        if (it != d.end()) return it->second;
        return Matrix(space.dim(n + 1), space.dim(n));
    }

    Elt apply_d(const Elt& x) const { return Elt{x.deg + 1, dmat(x.deg) * x.coords}; }

    void set_differential(int n, Matrix m) {
        if (m.rows() != space.dim(n + 1) || m.cols() != space.dim(n))
            throw std::invalid_argument("Complex: differential shape mismatch at degree " + std::to_string(n));
        if (!m.is_zero()) d[n] = std::move(m);
    }

    CheckReport check() const {
        CheckReport rep;
        for (int n : space.degrees()) {
            Matrix dd = dmat(n) * dmat(n - 1);
            rep.add("complex.d_squared[" + std::to_string(n - 1) + "]", dd.is_zero(),
                    "d∘d ≠ 0 out of degree " + std::to_string(n - 1));
            // The differential must preserve weights.
            const Matrix& dn = dmat(n);
            bool wok = true;
            std::string witness;
            for (int i = 0; wok && i < dn.rows(); ++i)
                for (int j = 0; j < dn.cols(); ++j)
                    if (!dn.at(i, j).is_zero() && space.weight(n + 1, i) != space.weight(n, j)) {
                        wok = false;
                        witness = "d(" + space.label(n, j) + ") hits " + space.label(n + 1, i) +
                                  " across weights";
                        break;
                    }
            rep.add("complex.weights[" + std::to_string(n) + "]", wok, witness);
        }
        return rep;
    }

    std::map<int, int> cohomology_dims() const {
        std::map<int, int> h;
        for (int n : space.degrees()) {
            int z = space.dim(n) - rank(dmat(n));
            int b = rank(dmat(n - 1));
            h[n] = z - b;
        }
        return h;
    }
};

}  // namespace halg
