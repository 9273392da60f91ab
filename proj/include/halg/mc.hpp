#pragma once
// Deformation machinery over truncated coefficient rings: curvature of
// polynomial elements, gauge actions (closed form for plain differential
// graded Lie algebras, an integrated flow for strong homotopy structures),
// Baker-Campbell-Hausdorff products, order-by-order obstruction lifting,
// the gauge action on augmented elements, and pushforward of solutions
// along a strong homotopy morphism.

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "halg/artin.hpp"
#include "halg/augmentation.hpp"
#include "halg/contraction.hpp"
#include "halg/dgla.hpp"
#include "halg/linfinity.hpp"

namespace halg {

namespace detail {

inline void require_poly(const TruncatedPoly& p, int dim, const ArtinAlgebra& a,
                         const char* what) {
    for (const auto& [m, v] : p.terms) {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument(std::string(what) + ": coordinate vector has wrong dimension");
        if (!a.keeps(m))
            throw std::invalid_argument(std::string(what) + ": term outside the coefficient ring");
    }
}

inline bool vec_zero(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

// Enumerate multisets (with repetition, non-decreasing indices) of the terms
// of a polynomial element whose monomial product stays within degree_cap.
// The callback receives the index multiset, the product monomial, and the
// symmetry factor 1/prod(multiplicities!).
inline void for_term_multisets(const std::vector<std::pair<Monomial, Vec>>& terms,
                               int degree_cap,
                               const std::function<void(const std::vector<int>&, const Monomial&,
                                                        const Rational&)>& fn) {
    if (terms.empty()) return;
    std::vector<int> picks;
    std::function<void(int, const Monomial&, int)> rec = [&](int start, const Monomial& prod,
                                                             int deg) {
        if (!picks.empty()) {
            Rational factor(1);
            int run = 1;
            for (size_t i = 1; i <= picks.size(); ++i) {
                if (i < picks.size() && picks[i] == picks[i - 1]) {
                    ++run;
                } else {
                    factor = factor / factorial(run);
                    run = 1;
                }
            }
            fn(picks, prod, factor);
        }
        for (int i = start; i < static_cast<int>(terms.size()); ++i) {
            int d = terms[static_cast<size_t>(i)].first.total();
            if (deg + d > degree_cap) continue;
            picks.push_back(i);
            rec(i, picks.size() == 1 ? terms[static_cast<size_t>(i)].first
                                     : prod * terms[static_cast<size_t>(i)].first,
                deg + d);
            picks.pop_back();
        }
    };
    Monomial unit{std::vector<int>(terms[0].first.e.size(), 0)};
    rec(0, unit, 0);
}

inline std::vector<std::pair<Monomial, Vec>> term_list(const TruncatedPoly& p) {
    std::vector<std::pair<Monomial, Vec>> out;
    for (const auto& [m, v] : p.terms)
        if (!vec_zero(v)) out.emplace_back(m, v);
    return out;
}

}  // namespace detail

// Curvature sum_{r >= 1} (1/r!) l_r(x, ..., x) of a degree-one polynomial
// element; the element solves the deformation equation exactly when this
// vanishes.  The structure must store operations up to the arity the
// truncation can see (order - 1).
inline TruncatedPoly curvature(const LInfinity& s, const TruncatedPoly& x,
                               const ArtinAlgebra& a) {
    const GradedSpace& sp = s.space();
    if (s.max_arity() < a.order - 1)
        throw std::invalid_argument("curvature: arity cap below the truncation order");
    detail::require_poly(x, sp.dim(1), a, "curvature");
    auto terms = detail::term_list(x);
    TruncatedPoly out;
    detail::for_term_multisets(
        terms, a.order - 1,
        [&](const std::vector<int>& picks, const Monomial& prod, const Rational& factor) {
            std::vector<Elt> args;
            args.reserve(picks.size());
            for (int i : picks) args.push_back(Elt{1, terms[static_cast<size_t>(i)].second});
            Elt val = s.op(args);
            if (detail::vec_zero(val.coords)) return;
            tp_accumulate(out, prod, val.coords, factor, a);
        });
    return out;
}

// The same curvature computed directly from a differential graded Lie
// algebra: d x + (1/2)[x, x].  Cross-checks the generic expansion.
inline TruncatedPoly dgla_curvature(const DGLA& l, const TruncatedPoly& x,
                                    const ArtinAlgebra& a) {
    const GradedSpace& sp = l.space();
    detail::require_poly(x, sp.dim(1), a, "dgla_curvature");
    auto terms = detail::term_list(x);
    TruncatedPoly out;
    Matrix d1 = l.complex().dmat(1);
    for (const auto& [m, v] : terms) tp_accumulate(out, m, d1 * v, Rational(1), a);
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = i; j < terms.size(); ++j) {
            Elt br = l.bracket(Elt{1, terms[i].second}, Elt{1, terms[j].second});
            if (detail::vec_zero(br.coords)) continue;
            Rational factor = (i == j) ? Rational(1, 2) : Rational(1);
            tp_accumulate(out, terms[i].first * terms[j].first, br.coords, factor, a);
        }
    }
    return out;
}

namespace detail {

// Bilinear extension of the bracket to polynomial elements of fixed degrees.
inline TruncatedPoly poly_bracket(const DGLA& l, int dx, const TruncatedPoly& x, int dy,
                                  const TruncatedPoly& y, const ArtinAlgebra& a) {
    TruncatedPoly out;
    for (const auto& [mx, vx] : x.terms) {
        for (const auto& [my, vy] : y.terms) {
            Monomial m = mx * my;
            if (!a.keeps(m)) continue;
            Elt br = l.bracket(Elt{dx, vx}, Elt{dy, vy});
            if (vec_zero(br.coords)) continue;
            tp_accumulate(out, m, br.coords, Rational(1), a);
        }
    }
    return out;
}

}  // namespace detail

// Gauge action of a degree-zero polynomial element on a degree-one one:
// e^lambda . x = x + sum_{n >= 0} ad_lambda^n([lambda, x] - d lambda) / (n+1)!.
inline TruncatedPoly gauge_action(const DGLA& l, const TruncatedPoly& lambda,
                                  const TruncatedPoly& x, const ArtinAlgebra& a) {
    const GradedSpace& sp = l.space();
    detail::require_poly(lambda, sp.dim(0), a, "gauge_action");
    detail::require_poly(x, sp.dim(1), a, "gauge_action");
    TruncatedPoly dl;
    Matrix d0 = l.complex().dmat(0);
    for (const auto& [m, v] : lambda.terms) tp_accumulate(dl, m, d0 * v, Rational(1), a);
    TruncatedPoly z = tp_add(detail::poly_bracket(l, 0, lambda, 1, x, a), tp_scale(Rational(-1), dl));
    TruncatedPoly out = x;
    TruncatedPoly acc = z;
    for (int n = 0; !acc.is_zero(); ++n) {
        if (n > a.order)
            throw std::logic_error("gauge_action: bracket series failed to terminate");
        out = tp_add(out, tp_scale(Rational(1) / factorial(n + 1), acc));
        acc = detail::poly_bracket(l, 0, lambda, 1, acc, a);
    }
    return out;
}

// Baker-Campbell-Hausdorff product of two degree-zero polynomial elements,
// by the Dynkin expansion: the sum over sequences of blocks a^p b^q of the
// left-nested bracket of the corresponding word, weighted by
// (-1)^(n-1) / (n * P * prod p_i! q_i!) for n blocks and word length P.
inline TruncatedPoly bch(const DGLA& g, const TruncatedPoly& a, const TruncatedPoly& b,
                         const ArtinAlgebra& ring) {
    const GradedSpace& sp = g.space();
    detail::require_poly(a, sp.dim(0), ring, "bch");
    detail::require_poly(b, sp.dim(0), ring, "bch");
    int cap = ring.order - 1;
    TruncatedPoly total;
    std::vector<std::pair<int, int>> blocks;
    auto contribute = [&]() {
        int n = static_cast<int>(blocks.size());
        int len = 0;
        for (auto& [p, q] : blocks) len += p + q;
        auto& [pl, ql] = blocks.back();
        // The innermost bracket repeats a letter, so the term vanishes.
        if (ql >= 2 || (ql == 0 && pl >= 2)) return;
        // Left-nested bracket of the word a^{p_1} b^{q_1} ... a^{p_n} b^{q_n}.
        std::vector<const TruncatedPoly*> word;
        for (auto& [p, q] : blocks) {
            for (int i = 0; i < p; ++i) word.push_back(&a);
            for (int i = 0; i < q; ++i) word.push_back(&b);
        }
        TruncatedPoly acc = *word.back();
        for (int i = static_cast<int>(word.size()) - 2; i >= 0 && !acc.is_zero(); --i)
            acc = detail::poly_bracket(g, 0, *word[static_cast<size_t>(i)], 0, acc, ring);
        if (acc.is_zero()) return;
        Rational coef = (n % 2 == 1 ? Rational(1) : Rational(-1)) / Rational(n) / Rational(len);
        for (auto& [p, q] : blocks) coef = coef / factorial(p) / factorial(q);
        total = tp_add(total, tp_scale(coef, acc));
    };
    std::function<void(int)> rec = [&](int used) {
        if (!blocks.empty()) contribute();
        if (used >= cap) return;
        for (int p = 0; used + p <= cap; ++p) {
            for (int q = (p == 0 ? 1 : 0); used + p + q <= cap; ++q) {
                blocks.push_back({p, q});
                rec(used + p + q);
                blocks.pop_back();
            }
        }
    };
    rec(0);
    return total;
}

// Gauge action for a strong homotopy structure, as the time-one value of the
// flow dx/ds = -sum_{r >= 0} (1/r!) l_{r+1}(x, ..., x, lambda) starting at
// x.  Solutions of the flow are polynomial in s because every s-power
// carries at least that order of the maximal ideal, so Picard iteration
// reaches a fixed point after at most `order` rounds.
inline TruncatedPoly linfinity_gauge(const LInfinity& s, const TruncatedPoly& lambda,
                                     const TruncatedPoly& x, const ArtinAlgebra& a) {
    const GradedSpace& sp = s.space();
    if (s.max_arity() < a.order)
        throw std::invalid_argument("linfinity_gauge: arity cap below the truncation order");
    detail::require_poly(lambda, sp.dim(0), a, "linfinity_gauge");
    detail::require_poly(x, sp.dim(1), a, "linfinity_gauge");
    auto lterms = detail::term_list(lambda);
    int spow_cap = a.order;
    std::vector<TruncatedPoly> cur(static_cast<size_t>(spow_cap) + 1);
    cur[0] = x;
    for (int round = 0; round <= a.order + 1; ++round) {
        // Right-hand side of the flow, graded by s-powers.
        std::vector<std::pair<int, std::pair<Monomial, Vec>>> flat;
        for (int k = 0; k <= spow_cap; ++k)
            for (const auto& t : detail::term_list(cur[static_cast<size_t>(k)]))
                flat.emplace_back(k, t);
        std::vector<TruncatedPoly> rhs(static_cast<size_t>(spow_cap) + 1);
        auto add_rhs = [&](const std::vector<int>& picks, const Rational& factor) {
            int spow = 0;
            int mdeg = 0;
            for (int i : picks) {
                spow += flat[static_cast<size_t>(i)].first;
                mdeg += flat[static_cast<size_t>(i)].second.first.total();
            }
            if (spow > spow_cap) return;
            std::vector<Elt> args;
            args.reserve(picks.size() + 1);
            for (int i : picks) args.push_back(Elt{1, flat[static_cast<size_t>(i)].second.second});
            for (const auto& [ml, vl] : lterms) {
                if (mdeg + ml.total() > a.order - 1) continue;
                args.push_back(Elt{0, vl});
                Elt val = s.op(args);
                args.pop_back();
                if (detail::vec_zero(val.coords)) continue;
                Monomial prod = ml;
                for (int i : picks) prod = prod * flat[static_cast<size_t>(i)].second.first;
                tp_accumulate(rhs[static_cast<size_t>(spow)], prod, val.coords,
                              Rational(0) - factor, a);
            }
        };
        // r = 0 term, plus all multisets of x-terms for r >= 1.
        add_rhs({}, Rational(1));
        if (!flat.empty()) {
            std::vector<std::pair<Monomial, Vec>> plain;
            plain.reserve(flat.size());
            for (auto& [k, t] : flat) plain.push_back(t);
            detail::for_term_multisets(
                plain, a.order - 2 >= 0 ? a.order - 2 : 0,
                [&](const std::vector<int>& picks, const Monomial&, const Rational& factor) {
                    add_rhs(picks, factor);
                });
        }
        // Integrate in s and restart from the initial value.
        std::vector<TruncatedPoly> next(static_cast<size_t>(spow_cap) + 1);
        next[0] = x;
        for (int k = 0; k < spow_cap; ++k)
            next[static_cast<size_t>(k) + 1] =
                tp_scale(Rational(1) / Rational(k + 1), rhs[static_cast<size_t>(k)]);
        bool same = true;
        for (size_t k = 0; k < cur.size(); ++k)
            if (!(cur[k] == next[k])) { same = false; break; }
        cur = std::move(next);
        if (same) {
            // Evaluate at s = 1.
            TruncatedPoly out;
            for (const auto& p : cur) out = tp_add(out, p);
            return out;
        }
    }
    throw std::logic_error("linfinity_gauge: flow failed to stabilize");
}

// One step of order-by-order lifting: for an element solving the deformation
// equation modulo m^order, the order-`order` part of its curvature is closed
// and its cohomology class is the sole obstruction to correcting the element
// one order further.  The corrected element (meaningful when liftable) uses
// the contraction's homotopy as the preimage choice.
struct ObstructionStep {
    bool liftable = false;
    std::map<Monomial, Vec> obstruction_class;
    TruncatedPoly lift;
    int order = 0;
};

inline ObstructionStep obstruction_step(const LInfinity& s, const Contraction& ct,
                                        const TruncatedPoly& x, const ArtinAlgebra& a,
                                        int order) {
    if (order < 2 || order >= a.order)
        throw std::invalid_argument("obstruction_step: order must lie in [2, truncation)");
    if (!(ct.lspace == s.space()))
        throw std::invalid_argument("obstruction_step: contraction is for a different space");
    TruncatedPoly c = curvature(s, x, a);
    Matrix d2 = s.complex().dmat(2);
    ObstructionStep out;
    out.order = order;
    out.lift = x;
    for (const auto& [m, v] : c.terms) {
        int t = m.total();
        if (t < order)
            throw std::invalid_argument(
                "obstruction_step: element does not solve the equation below the requested order");
        if (t > order) continue;
        if (!detail::vec_zero(d2 * v))
            throw std::logic_error("obstruction_step: curvature term is not closed");
        Vec cls = ct.pmat(2) * v;
        if (!detail::vec_zero(cls)) out.obstruction_class[m] = cls;
        tp_accumulate(out.lift, m, ct.hmat(2) * v, Rational(-1), a);
    }
    out.liftable = out.obstruction_class.empty();
    return out;
}

// Degree-one element together with a group-like coordinate in the
// augmentation target.
struct AugmentedElement {
    TruncatedPoly x;
    TruncatedPoly alpha;
};

// Gauge action on augmented elements: lambda moves x by the usual gauge
// action and multiplies the group coordinate on the right by the inverse
// exponential of its image, alpha * exp(-eps(lambda)).
inline AugmentedElement augmented_gauge(const DGLA& l, const Augmentation& aug,
                                        const TruncatedPoly& lambda, const AugmentedElement& el,
                                        const ArtinAlgebra& a) {
    detail::require_poly(el.alpha, aug.target.space().dim(0), a, "augmented_gauge");
    AugmentedElement out;
    out.x = gauge_action(l, lambda, el.x, a);
    TruncatedPoly eps_neg;
    for (const auto& [m, v] : lambda.terms)
        tp_accumulate(eps_neg, m, aug.eps * v, Rational(-1), a);
    out.alpha = bch(aug.target, el.alpha, eps_neg, a);
    return out;
}

// Image of a degree-one polynomial element under a strong homotopy morphism:
// sum_{r >= 1} (1/r!) F_r(x, ..., x).  Sends solutions to solutions.
inline TruncatedPoly mc_pushforward(const MultiOp& f, const TruncatedPoly& x,
                                    const ArtinAlgebra& a) {
    detail::require_poly(x, f.src.dim(1), a, "mc_pushforward");
    auto terms = detail::term_list(x);
    TruncatedPoly out;
    detail::for_term_multisets(
        terms, a.order - 1,
        [&](const std::vector<int>& picks, const Monomial& prod, const Rational& factor) {
            std::vector<Elt> args;
            args.reserve(picks.size());
            for (int i : picks) args.push_back(Elt{1, terms[static_cast<size_t>(i)].second});
            Elt val = f.eval(args);
            if (detail::vec_zero(val.coords)) return;
            tp_accumulate(out, prod, val.coords, factor, a);
        });
    return out;
}

}  // namespace halg
