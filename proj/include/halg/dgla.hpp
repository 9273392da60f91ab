#pragma once

#include <map>
#include <tuple>

#include "halg/graded.hpp"

namespace halg {

// Differential graded Lie algebra, given by structure constants on a
// labeled basis.  Brackets are stored for both argument orders; the graded
// antisymmetry [x,y] = -(-1)^{|x||y|}[y,x] is imposed at insertion time.
class DGLA {
public:
    explicit DGLA(GradedSpace s) { c_.space = std::move(s); }

    const GradedSpace& space() const { return c_.space; }
    const Complex& complex() const { return c_; }

    void set_differential(int n, Matrix m) { c_.set_differential(n, std::move(m)); }

    void set_bracket(int p, int i, int q, int j, const Vec& value) {
        int out = space().dim(p + q);
        if (static_cast<int>(value.size()) != out)
            throw std::invalid_argument("DGLA: bracket value has wrong dimension");
        bool odd = (static_cast<long>(p) * q) % 2 != 0;
        Vec mirrored(value.size());
        for (size_t t = 0; t < value.size(); ++t)
            mirrored[t] = (odd ? Rational(1) : Rational(-1)) * value[t];
        if (p == q && i == j && !odd) {
            for (const auto& c : value)
                if (!c.is_zero())
                    throw std::invalid_argument("DGLA: [x,x] must vanish in even degree");
        }
        store(p, i, q, j, value);
        store(q, j, p, i, mirrored);
    }

    Vec bracket_basis(int p, int i, int q, int j) const {
        auto it = br_.find({p, i, q, j});
        if (it != br_.end()) return it->second;
        return Vec(space().dim(p + q));
    }

    Elt d(const Elt& x) const { return c_.apply_d(x); }

    Elt bracket(const Elt& x, const Elt& y) const {
        Elt out = zero_elt(space(), x.deg + y.deg);
        for (size_t i = 0; i < x.coords.size(); ++i) {
            if (x.coords[i].is_zero()) continue;
            for (size_t j = 0; j < y.coords.size(); ++j) {
                if (y.coords[j].is_zero()) continue;
                Vec v = bracket_basis(x.deg, static_cast<int>(i), y.deg, static_cast<int>(j));
                Rational c = x.coords[i] * y.coords[j];
                for (size_t t = 0; t < v.size(); ++t) out.coords[t] = out.coords[t] + c * v[t];
            }
        }
        return out;
    }

    // d^2 = 0, weight homogeneity, graded antisymmetry, the Leibniz rule
    //   d[x,y] = [dx,y] + (-1)^{|x|}[x,dy],
    // and the graded Jacobi identity
    //   [[x,y],z] - (-1)^{|y||z|}[[x,z],y] + (-1)^{|x|(|y|+|z|)}[[y,z],x] = 0,
    // each reported with a witness naming the basis elements involved.
    CheckReport check_axioms() const {
        CheckReport rep = c_.check();
        const GradedSpace& s = space();
        auto degs = s.degrees();

        bool anti_ok = true, weight_ok = true;
        std::string anti_witness, weight_witness;
        for (int p : degs)
            for (int i = 0; i < s.dim(p); ++i)
                for (int q : degs)
                    for (int j = 0; j < s.dim(q); ++j) {
                        Vec lhs = bracket_basis(p, i, q, j);
                        Vec rhs = bracket_basis(q, j, p, i);
                        bool odd = (static_cast<long>(p) * q) % 2 != 0;
                        for (size_t t = 0; t < lhs.size(); ++t) {
                            Rational mirror = (odd ? Rational(1) : Rational(-1)) * rhs[t];
                            if (anti_ok && lhs[t] != mirror) {
                                anti_ok = false;
                                anti_witness =
                                    "[" + s.label(p, i) + "," + s.label(q, j) + "] vs flipped order";
                            }
                            if (weight_ok && !lhs[t].is_zero() &&
                                s.weight(p + q, static_cast<int>(t)) != s.weight(p, i) + s.weight(q, j)) {
                                weight_ok = false;
                                weight_witness =
                                    "[" + s.label(p, i) + "," + s.label(q, j) + "] breaks weights";
                            }
                        }
                    }
        rep.add("dgla.antisymmetry", anti_ok, anti_witness);
        rep.add("dgla.bracket_weight", weight_ok, weight_witness);

        bool leibniz_ok = true;
        for (int p : degs)
            for (int i = 0; leibniz_ok && i < s.dim(p); ++i)
                for (int q : degs)
                    for (int j = 0; leibniz_ok && j < s.dim(q); ++j) {
                        Elt x = basis_elt(s, p, i), y = basis_elt(s, q, j);
                        Elt lhs = d(bracket(x, y));
                        Elt rhs = bracket(d(x), y) +
                                  Rational(p % 2 == 0 ? 1 : -1) * bracket(x, d(y));
                        if (!(lhs == rhs)) {
                            leibniz_ok = false;
                            rep.add("dgla.leibniz", false,
                                    "fails on (" + s.label(p, i) + ", " + s.label(q, j) + ")");
                        }
                    }
        if (leibniz_ok) rep.add("dgla.leibniz", true, "");

        bool jacobi_ok = true;
        std::vector<std::pair<int, int>> all;
        for (int p : degs)
            for (int i = 0; i < s.dim(p); ++i) all.push_back({p, i});
        for (size_t a = 0; jacobi_ok && a < all.size(); ++a)
            for (size_t b = a; jacobi_ok && b < all.size(); ++b)
                for (size_t c = b; c < all.size(); ++c) {
                    auto [p, i] = all[a];
                    auto [q, j] = all[b];
                    auto [r, k] = all[c];
                    Elt x = basis_elt(s, p, i), y = basis_elt(s, q, j), z = basis_elt(s, r, k);
                    Elt t1 = bracket(bracket(x, y), z);
                    Elt t2 = bracket(bracket(x, z), y);
                    Elt t3 = bracket(bracket(y, z), x);
                    Rational s2(q * r % 2 == 0 ? 1 : -1);
                    Rational s3(p * (q + r) % 2 == 0 ? 1 : -1);
                    Elt total = t1 - s2 * t2 + s3 * t3;
                    if (!total.is_zero()) {
                        jacobi_ok = false;
                        rep.add("dgla.jacobi", false,
                                "fails on (" + s.label(p, i) + ", " + s.label(q, j) + ", " +
                                    s.label(r, k) + ")");
                        break;
                    }
                }
        if (jacobi_ok) rep.add("dgla.jacobi", true, "");
        return rep;
    }

private:
    void store(int p, int i, int q, int j, const Vec& v) {
        bool zero = true;
        for (const auto& c : v)
            if (!c.is_zero()) zero = false;
        if (zero)
            br_.erase({p, i, q, j});
        else
            br_[{p, i, q, j}] = v;
    }

    Complex c_;
    std::map<std::tuple<int, int, int, int>, Vec> br_;
};

}  // namespace halg
