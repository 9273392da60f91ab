#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "halg/check.hpp"
#include "halg/dgla.hpp"
#include "halg/graded.hpp"
#include "halg/koszul.hpp"

namespace halg {

// A basis tuple: (degree, index) pairs into a graded space, kept sorted
// non-decreasingly; operations are stored on sorted tuples only and general
// arguments are reduced to them with the graded antisymmetry sign.
using BasisKey = std::vector<std::pair<int, int>>;

// Sorts key in place; returns the antisymmetry sign, or 0 when the term
// vanishes because an even-degree basis element repeats.
inline int sort_basis_key(BasisKey& key) {
    int sign = 1;
    for (size_t i = 0; i + 1 < key.size(); ++i)
        for (size_t j = 0; j + 1 < key.size() - i; ++j)
            if (key[j + 1] < key[j]) {
                bool both_odd = (key[j].first % 2 != 0) && (key[j + 1].first % 2 != 0);
                if (!both_odd) sign = -sign;  // swap factor -(-1)^{|a||b|}
                std::swap(key[j], key[j + 1]);
            }
    for (size_t i = 0; i + 1 < key.size(); ++i)
        if (key[i] == key[i + 1] && key[i].first % 2 == 0) return 0;
    return sign;
}

// Graded-antisymmetric multilinear operation family indexed by arity, with
// values in dst and output degree (sum of input degrees) + degree_base - arity.
struct MultiOp {
    GradedSpace src;
    GradedSpace dst;
    int degree_base = 2;
    std::map<BasisKey, Elt> table;

    int out_degree(const BasisKey& key) const {
        int s = 0;
        for (auto& [d, i] : key) s += d;
        return s + degree_base - static_cast<int>(key.size());
    }

    void set(const BasisKey& key, const Elt& value) {
        if (key.empty()) throw std::invalid_argument("MultiOp: empty argument tuple");
        for (size_t t = 0; t + 1 < key.size(); ++t)
            if (key[t + 1] < key[t]) throw std::invalid_argument("MultiOp: tuple must be sorted");
        for (auto& [d, i] : key)
            if (i < 0 || i >= src.dim(d)) throw std::invalid_argument("MultiOp: index out of range");
        if (value.deg != out_degree(key))
            throw std::invalid_argument("MultiOp: value has wrong degree");
        if (static_cast<int>(value.coords.size()) != dst.dim(value.deg))
            throw std::invalid_argument("MultiOp: value has wrong dimension");
        bool dead = false;
        for (size_t t = 0; t + 1 < key.size(); ++t)
            if (key[t] == key[t + 1] && key[t].first % 2 == 0) dead = true;
        if (dead) {
            if (!value.is_zero())
                throw std::invalid_argument("MultiOp: repeated even-degree argument forces zero");
            return;
        }
        if (value.is_zero())
            table.erase(key);
        else
            table[key] = value;
    }

    // Value on a sorted tuple (zero if absent).
    Elt value(const BasisKey& key) const {
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        return zero_elt(dst, out_degree(key));
    }

    // Full multilinear evaluation on homogeneous elements of src.
    Elt eval(const std::vector<Elt>& xs) const {
        int n = static_cast<int>(xs.size());
        BasisKey key(n);
        int sdeg = 0;
        for (const Elt& x : xs) sdeg += x.deg;
        Elt out = zero_elt(dst, sdeg + degree_base - n);
        std::function<void(int, Rational)> rec = [&](int pos, Rational coef) {
            if (pos == n) {
                BasisKey k = key;
                int sign = sort_basis_key(k);
                if (sign == 0) return;
                auto it = table.find(k);
                if (it == table.end()) return;
                Rational c = coef * Rational(sign);
                for (size_t t = 0; t < it->second.coords.size(); ++t)
                    out.coords[t] += c * it->second.coords[t];
                return;
            }
            const Elt& x = xs[pos];
            for (size_t i = 0; i < x.coords.size(); ++i) {
                if (x.coords[i].is_zero()) continue;
                key[pos] = {x.deg, static_cast<int>(i)};
                rec(pos + 1, coef * x.coords[i]);
            }
        };
        rec(0, Rational(1));
        return out;
    }

    int max_stored_arity() const {
        size_t m = 0;
        for (auto& [k, v] : table) m = std::max(m, k.size());
        return static_cast<int>(m);
    }
};

// L-infinity algebra: graded-antisymmetric operations l_r of degree 2-r for
// r = 1..max_arity, subject to the generalized Jacobi relations
//   sum_{i+j=n+1} (-1)^{i(j-1)} sum_{s in Sh(i,n-i)} chi(s;x)
//     l_j(l_i(x_{s(1)},..,x_{s(i)}), x_{s(i+1)},..,x_{s(n)}) = 0,
// chi being the signature times the Koszul sign.
class LInfinity {
public:
    LInfinity(GradedSpace s, int max_arity) : max_arity_(max_arity) {
        op_.src = s;
        op_.dst = std::move(s);
        op_.degree_base = 2;
    }

    const GradedSpace& space() const { return op_.src; }
    int max_arity() const { return max_arity_; }

    void set_op(const BasisKey& args, const Elt& value) {
        if (static_cast<int>(args.size()) > max_arity_)
            throw std::invalid_argument("LInfinity: arity above cap");
        op_.set(args, value);
    }

    Elt op_basis(const BasisKey& key) const { return op_.value(key); }

    Elt op(const std::vector<Elt>& xs) const {
        if (static_cast<int>(xs.size()) > max_arity_) {
            int sdeg = 0;
            for (const Elt& x : xs) sdeg += x.deg;
            return zero_elt(space(), sdeg + 2 - static_cast<int>(xs.size()));
        }
        return op_.eval(xs);
    }

    // The unary operation as a complex differential (d^2 = 0 is part of the
    // n = 1 relation, re-checked by Complex::check through check_axioms).
    Complex complex() const {
        Complex c;
        c.space = space();
        for (int n : space().degrees()) {
            int up = space().dim(n + 1);
            Matrix m(up, space().dim(n));
            for (int i = 0; i < space().dim(n); ++i) {
                Elt v = op_.value({{n, i}});
                for (int r = 0; r < up; ++r) m.at(r, i) = v.coords[r];
            }
            c.set_differential(n, std::move(m));
        }
        return c;
    }

    // All basis elements sorted by (degree, index).
    std::vector<std::pair<int, int>> basis_list() const {
        std::vector<std::pair<int, int>> out;
        for (int n : space().degrees())
            for (int i = 0; i < space().dim(n); ++i) out.push_back({n, i});
        return out;
    }

    // Checks weight homogeneity of every stored operation and the
    // generalized Jacobi relation for all tuple sizes up to relation_cap
    // (default: 2A-1 where A is the largest stored arity, which is complete
    // when all higher operations vanish).
    CheckReport check_axioms(int relation_cap = 0) const {
        CheckReport rep;
        bool wok = true;
        std::string wwit;
        for (const auto& [key, val] : op_.table) {
            int wsum = 0;
            for (auto& [d, i] : key) wsum += space().weight(d, i);
            for (size_t t = 0; t < val.coords.size(); ++t)
                if (!val.coords[t].is_zero() && space().weight(val.deg, static_cast<int>(t)) != wsum && wok) {
                    wok = false;
                    std::ostringstream os;
                    os << "operation value not weight-homogeneous on a tuple of size " << key.size();
                    wwit = os.str();
                }
        }
        rep.add("linfinity.op_weight", wok, wwit);

        int cap = relation_cap > 0 ? relation_cap : std::max(1, 2 * op_.max_stored_arity() - 1);
        auto basis = basis_list();
        int bn = static_cast<int>(basis.size());
        bool jok = true;
        std::string jwit;
        BasisKey tuple;
        std::function<void(int, int)> run = [&](int start, int left) {
            if (!jok) return;
            if (left == 0) {
                int n = static_cast<int>(tuple.size());
                std::vector<int> degs(n);
                for (int t = 0; t < n; ++t) degs[t] = tuple[t].first;
                int sdeg = 0;
                for (int d : degs) sdeg += d;
                Elt total = zero_elt(space(), sdeg + 3 - n);
                for (int i = 1; i <= n; ++i) {
                    int j = n + 1 - i;
                    int pre = (static_cast<long>(i) * (j - 1)) % 2 == 0 ? 1 : -1;
                    for (const auto& sh : unshuffles(i, n)) {
                        int chi = koszul_sign(sh, degs, true);
                        BasisKey inner(i);
                        for (int t = 0; t < i; ++t) inner[t] = tuple[sh[t]];
                        int isign = sort_basis_key(inner);
                        if (isign == 0) continue;
                        Elt iv = op_.value(inner);
                        if (iv.is_zero()) continue;
                        std::vector<Elt> args;
                        args.push_back(iv);
                        for (int t = i; t < n; ++t) {
                            auto [d, idx] = tuple[sh[t]];
                            args.push_back(basis_elt(space(), d, idx));
                        }
                        Elt term = op(args);
                        Rational c = Rational(pre * chi * isign);
                        total = total + c * term;
                    }
                }
                if (!total.is_zero()) {
                    jok = false;
                    std::ostringstream os;
                    os << "relation fails on (";
                    for (int t = 0; t < n; ++t)
                        os << (t ? ", " : "") << space().label(tuple[t].first, tuple[t].second);
                    os << ")";
                    jwit = os.str();
                }
                return;
            }
            for (int b = start; b < bn; ++b) {
                tuple.push_back(basis[b]);
                run(b, left - 1);
                tuple.pop_back();
            }
        };
        for (int n = 1; n <= cap && jok; ++n) run(0, n);
        rep.add("linfinity.jacobi", jok, jwit);
        return rep;
    }

    const MultiOp& ops() const { return op_; }

private:
    MultiOp op_;
    int max_arity_;
};

// A differential graded Lie algebra is an L-infinity algebra whose
// operations vanish in arity three and above.
inline LInfinity linfinity_from_dgla(const DGLA& L, int max_arity) {
    LInfinity out(L.space(), max_arity);
    const GradedSpace& s = L.space();
    for (int n : s.degrees())
        for (int i = 0; i < s.dim(n); ++i) {
            Elt v{n + 1, L.complex().dmat(n).col(i)};
            if (!v.is_zero()) out.set_op({{n, i}}, v);
        }
    for (int p : s.degrees())
        for (int q : s.degrees()) {
            if (q < p) continue;
            for (int i = 0; i < s.dim(p); ++i)
                for (int j = (p == q ? i : 0); j < s.dim(q); ++j) {
                    if (p == q && i == j && p % 2 == 0) continue;
                    Vec v = L.bracket_basis(p, i, q, j);
                    Elt e{p + q, v};
                    if (!e.is_zero()) out.set_op({{p, i}, {q, j}}, e);
                }
        }
    return out;
}

}  // namespace halg
