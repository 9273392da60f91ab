#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "halg/contraction.hpp"
#include "halg/koszul.hpp"
#include "halg/linfinity.hpp"

namespace halg {

// Homotopy transfer of an L-infinity structure across a contraction onto
// cohomology.  With i, p, h the contraction data and m_k the input
// operations, the auxiliary maps
//   Phi_n = sum_{k=2..n} sum_{partitions of the n positions into k blocks}
//           chi(sigma_B; x) m_k(Psi(x_{B_1}), ..., Psi(x_{B_k})),
//   Psi(single) = i,   Psi(block of m >= 2) = -h Phi_m,
// where sigma_B concatenates the blocks in order of their minima and chi is
// the signature times the Koszul sign, give the transferred operations
// l_n = p Phi_n and the morphism components F_1 = i, F_n = -h Phi_n.
struct Transferred {
    LInfinity structure;  // operations on the cohomology space
    MultiOp morphism;     // components F_r of degree 1-r into the original space
};

// Sign of the permutation concatenating the blocks of a partition, in the
// signature-times-Koszul convention; blocks are position lists, degs the
// degrees at those positions.
inline int partition_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& degs) {
    std::vector<int> perm;
    for (const auto& b : blocks)
        for (int t : b) perm.push_back(t);
    return koszul_sign(perm, degs, true);
}

namespace detail {

class TransferEngine {
public:
    TransferEngine(const LInfinity& L, const Contraction& ct) : L_(L), ct_(ct) {}

    Elt psi(const BasisKey& key) {
        if (key.size() == 1) {
            auto [d, i] = key[0];
            return Elt{d, ct_.imat(d).col(i)};
        }
        auto it = psi_.find(key);
        if (it != psi_.end()) return it->second;
        Elt f = phi(key);
        Elt v{f.deg - 1, ct_.hmat(f.deg) * f.coords};
        v = Rational(-1) * v;
        psi_[key] = v;
        return v;
    }

    Elt phi(const BasisKey& key) {
        auto it = phi_.find(key);
        if (it != phi_.end()) return it->second;
        int m = static_cast<int>(key.size());
        std::vector<int> degs(m);
        int sdeg = 0;
        for (int t = 0; t < m; ++t) {
            degs[t] = key[t].first;
            sdeg += degs[t];
        }
        Elt out = zero_elt(L_.space(), sdeg + 2 - m);
        for (int k = 2; k <= m; ++k) {
            for (const auto& blocks : partitions_into(m, k)) {
                std::vector<Elt> args;
                args.reserve(k);
                bool dead = false;
                for (const auto& b : blocks) {
                    BasisKey sub;
                    for (int t : b) sub.push_back(key[t]);
                    Elt a = psi(sub);
                    if (a.is_zero()) {
                        dead = true;
                        break;
                    }
                    args.push_back(std::move(a));
                }
                if (dead) continue;
                Elt term = L_.op(args);
                if (term.is_zero()) continue;
                out = out + Rational(partition_sign(blocks, degs)) * term;
            }
        }
        phi_[key] = out;
        return out;
    }

private:
    const LInfinity& L_;
    const Contraction& ct_;
    std::map<BasisKey, Elt> phi_;
    std::map<BasisKey, Elt> psi_;
};

}  // namespace detail

inline Transferred homotopy_transfer(const LInfinity& L, const Contraction& ct, int max_arity) {
    if (!(ct.lspace == L.space()))
        throw std::invalid_argument("homotopy_transfer: contraction does not match the algebra");
    detail::TransferEngine eng(L, ct);
    Transferred out{LInfinity(ct.hspace, max_arity), MultiOp{}};
    out.morphism.src = ct.hspace;
    out.morphism.dst = ct.lspace;
    out.morphism.degree_base = 1;

    std::vector<std::pair<int, int>> basis;
    for (int n : ct.hspace.degrees())
        for (int i = 0; i < ct.hspace.dim(n); ++i) basis.push_back({n, i});

    for (auto [n, i] : basis) {
        Elt icol{n, ct.imat(n).col(i)};
        out.morphism.set({{n, i}}, icol);
        Elt du = L.op({icol});
        Elt l1{du.deg, ct.pmat(du.deg) * du.coords};
        out.structure.set_op({{n, i}}, l1);
    }

    int bn = static_cast<int>(basis.size());
    BasisKey tuple;
    std::function<void(int, int)> run = [&](int start, int left) {
        if (left == 0) {
            Elt f = eng.phi(tuple);
            Elt l{f.deg, ct.pmat(f.deg) * f.coords};
            out.structure.set_op(tuple, l);
            Elt psi = eng.psi(tuple);
            out.morphism.set(tuple, psi);
            return;
        }
        for (int b = start; b < bn; ++b) {
            tuple.push_back(basis[b]);
            run(b, left - 1);
            tuple.pop_back();
        }
    };
    for (int r = 2; r <= max_arity; ++r) run(0, r);
    return out;
}

// The defining relations of an L-infinity morphism F from source to target:
// for every tuple size n,
//   sum_{i+j=n+1} (-1)^{i(j-1)} sum_{s in Sh(i,n-i)} chi(s;x)
//       F_j(l_i(x_{s(1..i)}), x_{s(i+1..n)})
// = sum_{k=1..n} sum_{partitions into k blocks} chi(sigma_B;x)
//       m_k(F(x_{B_1}), ..., F(x_{B_k})).
// Capped truncations are exact up to the largest stored arity of F or of
// the source operations, the default relation cap.
inline CheckReport check_linfinity_morphism(const LInfinity& source, const LInfinity& target,
                                            const MultiOp& F, int relation_cap = 0) {
    if (!(F.src == source.space()) || !(F.dst == target.space()))
        throw std::invalid_argument("check_linfinity_morphism: space mismatch");
    CheckReport rep;
    int cap = relation_cap > 0
                  ? relation_cap
                  : std::max({1, F.max_stored_arity(), source.ops().max_stored_arity()});

    std::vector<std::pair<int, int>> basis;
    for (int n : source.space().degrees())
        for (int i = 0; i < source.space().dim(n); ++i) basis.push_back({n, i});
    int bn = static_cast<int>(basis.size());

    bool ok = true;
    std::string wit;
    BasisKey tuple;
    std::function<void(int, int)> run = [&](int start, int left) {
        if (!ok) return;
        if (left == 0) {
            int n = static_cast<int>(tuple.size());
            std::vector<int> degs(n);
            int sdeg = 0;
            for (int t = 0; t < n; ++t) {
                degs[t] = tuple[t].first;
                sdeg += degs[t];
            }
            Elt lhs = zero_elt(target.space(), sdeg + 2 - n);
            for (int i = 1; i <= n; ++i) {
                int j = n + 1 - i;
                int pre = (static_cast<long>(i) * (j - 1)) % 2 == 0 ? 1 : -1;
                for (const auto& sh : unshuffles(i, n)) {
                    int chi = koszul_sign(sh, degs, true);
                    BasisKey inner(i);
                    for (int t = 0; t < i; ++t) inner[t] = tuple[sh[t]];
                    int isign = sort_basis_key(inner);
                    if (isign == 0) continue;
                    Elt iv = source.op_basis(inner);
                    if (iv.is_zero()) continue;
                    std::vector<Elt> args;
                    args.push_back(iv);
                    for (int t = i; t < n; ++t) {
                        auto [d, idx] = tuple[sh[t]];
                        args.push_back(basis_elt(source.space(), d, idx));
                    }
                    lhs = lhs + Rational(pre * chi * isign) * F.eval(args);
                }
            }
            Elt rhs = zero_elt(target.space(), sdeg + 2 - n);
            for (int k = 1; k <= n; ++k) {
                for (const auto& blocks : partitions_into(n, k)) {
                    std::vector<Elt> args;
                    args.reserve(k);
                    bool dead = false;
                    for (const auto& b : blocks) {
                        BasisKey sub;
                        for (int t : b) sub.push_back(tuple[t]);
                        int ssign = sort_basis_key(sub);
                        if (ssign == 0) {
                            dead = true;
                            break;
                        }
                        Elt a = F.value(sub);
                        if (a.is_zero()) {
                            dead = true;
                            break;
                        }
                        if (ssign < 0) a = Rational(-1) * a;
                        args.push_back(std::move(a));
                    }
                    if (dead) continue;
                    Elt term = target.op(args);
                    if (term.is_zero()) continue;
                    rhs = rhs + Rational(partition_sign(blocks, degs)) * term;
                }
            }
            if (!(lhs == rhs)) {
                ok = false;
                std::ostringstream os;
                os << "morphism relation fails on (";
                for (int t = 0; t < n; ++t)
                    os << (t ? ", " : "") << source.space().label(tuple[t].first, tuple[t].second);
                os << ")";
                wit = os.str();
            }
            return;
        }
        for (int b = start; b < bn; ++b) {
            tuple.push_back(basis[b]);
            run(b, left - 1);
            tuple.pop_back();
        }
    };
    for (int nsz = 1; nsz <= cap && ok; ++nsz) run(0, nsz);
    rep.add("morphism.relation", ok, wit);
    return rep;
}

// Which operations on degree-one classes can reach degree two, by weight
// counting alone: an r-fold operation applied to generators of the given
// weights lands in weight equal to the sum, so it can only be nonzero when
// some r-element multiset of generator weights sums to a degree-two weight.
// max_arity is the largest such r (at least one, for the differential);
// survivors lists every (arity, weight multiset) pair that evades the
// counting argument, with arity at least two.
struct VanishingPrediction {
    int max_arity = 1;
    std::vector<std::pair<int, std::vector<int>>> survivors;
};

inline VanishingPrediction predict_vanishing(std::vector<int> h1_weights,
                                             std::vector<int> h2_weights) {
    for (int w : h1_weights)
        if (w <= 0) throw std::invalid_argument("predict_vanishing: weights must be positive");
    for (int w : h2_weights)
        if (w <= 0) throw std::invalid_argument("predict_vanishing: weights must be positive");
    std::sort(h1_weights.begin(), h1_weights.end());
    h1_weights.erase(std::unique(h1_weights.begin(), h1_weights.end()), h1_weights.end());
    std::set<int> h2(h2_weights.begin(), h2_weights.end());
    VanishingPrediction out;
    if (h1_weights.empty() || h2.empty()) return out;
    int wmax = *h2.rbegin();
    std::vector<int> tuple;
    std::function<void(size_t, int)> rec = [&](size_t start, int sum) {
        if (tuple.size() >= 2 && h2.count(sum)) {
            out.survivors.push_back({static_cast<int>(tuple.size()), tuple});
            out.max_arity = std::max(out.max_arity, static_cast<int>(tuple.size()));
        }
        for (size_t i = start; i < h1_weights.size(); ++i) {
            if (sum + h1_weights[i] > wmax) continue;
            tuple.push_back(h1_weights[i]);
            rec(i, sum + h1_weights[i]);
            tuple.pop_back();
        }
    };
    rec(0, 0);
    std::sort(out.survivors.begin(), out.survivors.end());
    return out;
}

namespace detail {

// Every nonzero coordinate of every stored operation value must sit in the
// weight equal to the sum of the argument weights.
inline bool ops_weight_additive(const GradedSpace& src, const GradedSpace& dst,
                                const std::map<BasisKey, Elt>& table) {
    for (const auto& [key, val] : table) {
        int w = 0;
        for (const auto& [d, i] : key) w += src.weight(d, i);
        for (size_t c = 0; c < val.coords.size(); ++c)
            if (!val.coords[c].is_zero() && dst.weight(val.deg, static_cast<int>(c)) != w)
                return false;
    }
    return true;
}

inline bool matrix_weight_homogeneous(const Matrix& m, const GradedSpace& rs, int rdeg,
                                      const GradedSpace& cs, int cdeg) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero() && rs.weight(rdeg, r) != cs.weight(cdeg, c)) return false;
    return true;
}

}  // namespace detail

// Homotopy transfer with weight bookkeeping.  Requires the input operations
// to be weight additive and the contraction maps to preserve the weight
// grading; certifies that the transferred operations and the morphism
// components are weight additive in turn.
inline Transferred graded_transfer(const LInfinity& L, const Contraction& ct, int max_arity) {
    const GradedSpace& ls = L.space();
    if (!detail::ops_weight_additive(ls, ls, L.ops().table))
        throw std::invalid_argument("graded_transfer: operations are not weight additive");
    for (int n : ls.degrees()) {
        if (!detail::matrix_weight_homogeneous(ct.hmat(n), ls, n - 1, ls, n))
            throw std::invalid_argument("graded_transfer: homotopy does not preserve weights");
        if (!detail::matrix_weight_homogeneous(ct.pmat(n), ct.hspace, n, ls, n))
            throw std::invalid_argument("graded_transfer: projection does not preserve weights");
        if (!detail::matrix_weight_homogeneous(ct.imat(n), ls, n, ct.hspace, n))
            throw std::invalid_argument("graded_transfer: inclusion does not preserve weights");
    }
    Transferred tr = homotopy_transfer(L, ct, max_arity);
    if (!detail::ops_weight_additive(tr.structure.space(), tr.structure.space(),
                                     tr.structure.ops().table))
        throw std::logic_error("graded_transfer: transferred operations lost weight additivity");
    if (!detail::ops_weight_additive(tr.morphism.src, tr.morphism.dst, tr.morphism.table))
        throw std::logic_error("graded_transfer: morphism components lost weight additivity");
    return tr;
}

}  // namespace halg
