#pragma once
// Consequences of the weight bounds for presentations, exercised on a suite
// of built-in weight-graded algebras.  Each item realizes one qualitative
// profile of degree-one and degree-two weights and certifies the shape the
// weight counting forces on the extracted presentation:
//   1. pure weight one against pure weight two forces quadratic relations;
//   2. weights {1,2} against {2,3,4} keeps generator and relation weights in
//      those ranges with no relation beyond degree four, both for a formal
//      algebra and for one with a genuinely cubic relation;
//   3. pure weight two generators force quadratic relations again (purity);
//   4. a free factor enlarges the generators but never enters a relation;
//   5. a bounded profile {1,3} -> {2,4} stays finite with relations only in
//      the profile weights;
//   6. a sparse profile {1,2} -> {5} pushes the arity bound up to five yet
//      still yields a single homogeneous cubic relation.

#include <string>
#include <vector>

#include "halg/check.hpp"
#include "halg/contraction.hpp"
#include "halg/dgla.hpp"
#include "halg/linfinity.hpp"
#include "halg/presentation.hpp"
#include "halg/transfer.hpp"

namespace halg {

namespace detail {

inline Presentation present_dgla(const DGLA& l, int cap, int free_dim = 0,
                                 std::vector<int> free_weights = {},
                                 std::vector<std::string> free_labels = {}) {
    LInfinity s = linfinity_from_dgla(l, cap);
    Contraction ct = build_contraction(l.complex());
    Transferred tr = graded_transfer(s, ct, cap);
    return extract_presentation(tr.structure, free_dim, std::move(free_weights),
                                std::move(free_labels));
}

inline bool relations_homogeneous(const Presentation& p) {
    for (const auto& rel : p.relations)
        for (const auto& [m, c] : rel.poly.coeff) {
            if (c.is_zero()) continue;
            int w = 0;
            for (size_t i = 0; i < m.e.size(); ++i) w += m.e[i] * p.gen_weights[i];
            if (w != rel.weight) return false;
        }
    return true;
}

inline bool weights_within(const std::vector<int>& got, const std::vector<int>& allowed) {
    for (int w : got) {
        bool ok = false;
        for (int a : allowed)
            if (w == a) ok = true;
        if (!ok) return false;
    }
    return true;
}

// Formal weight-graded algebra in degrees one and two with zero
// differential; brackets are supplied by the caller.
inline DGLA formal_curve_algebra() {
    GradedSpace sp;
    sp.add_degree(1, {"a", "b"}, {1, 2});
    sp.add_degree(2, {"c2", "c3", "c4"}, {2, 3, 4});
    DGLA l(std::move(sp));
    l.set_bracket(1, 0, 1, 0, Vec{Rational(2), Rational(0), Rational(0)});  // [a,a] = 2 c2
    l.set_bracket(1, 0, 1, 1, Vec{Rational(0), Rational(1), Rational(0)});  // [a,b] = c3
    l.set_bracket(1, 1, 1, 1, Vec{Rational(0), Rational(0), Rational(2)});  // [b,b] = 2 c4
    return l;
}

// Weight-graded algebra with an exact quadratic cocycle: the differential
// kills the quadratic obstruction and a cubic one survives in weight three.
inline DGLA exact_cocycle_algebra() {
    GradedSpace sp;
    sp.add_degree(1, {"e", "f", "g"}, {1, 1, 2});
    sp.add_degree(2, {"u", "v"}, {2, 3});
    DGLA l(std::move(sp));
    Matrix d1(2, 3);
    d1.at(0, 2) = Rational(1);  // d g = u
    l.set_differential(1, d1);
    l.set_bracket(1, 0, 1, 1, Vec{Rational(1), Rational(0)});  // [e,f] = u
    l.set_bracket(1, 0, 1, 2, Vec{Rational(0), Rational(1)});  // [e,g] = v
    return l;
}

}  // namespace detail

inline CheckReport consequence_suite() {
    CheckReport rep;

    {
        // 1. Degree-one classes of pure weight one, degree-two of pure
        // weight two: every relation is quadratic.
        GradedSpace sp;
        sp.add_degree(1, {"a1", "a2"}, {1, 1});
        sp.add_degree(2, {"c"}, {2});
        DGLA l(std::move(sp));
        l.set_bracket(1, 0, 1, 1, Vec{Rational(1)});
        Presentation p = detail::present_dgla(l, 2);
        bool ok = !p.relations.empty() && detail::relations_homogeneous(p);
        for (const auto& rel : p.relations)
            ok = ok && rel.weight == 2 && rel.poly.degree() == 2;
        rep.add("consequences.quadratic_weights", ok,
                "weight profile {1} -> {2} must force quadratic relations");
    }

    {
        // 2a. Weights {1,2} -> {2,3,4} on a formal algebra.
        Presentation p = detail::present_dgla(detail::formal_curve_algebra(), 4);
        std::vector<int> rw;
        for (const auto& rel : p.relations) rw.push_back(rel.weight);
        bool ok = !p.relations.empty() && detail::relations_homogeneous(p) &&
                  detail::weights_within(p.gen_weights, {1, 2}) &&
                  detail::weights_within(rw, {2, 3, 4});
        for (const auto& rel : p.relations) ok = ok && rel.poly.degree() <= 4;
        rep.add("consequences.curve_weights.formal", ok,
                "profile {1,2} -> {2,3,4}: relation weights or degrees out of range");

        // 2b. The same weight window on a non-formal algebra, where the
        // surviving relation is genuinely cubic.
        Presentation q = detail::present_dgla(detail::exact_cocycle_algebra(), 4);
        bool okq = q.relations.size() == 1 && detail::relations_homogeneous(q) &&
                   q.relations[0].weight == 3 && q.relations[0].poly.degree() == 3;
        rep.add("consequences.curve_weights.nonformal", okq,
                "exact-cocycle algebra must present as a single cubic relation of weight 3");

        // 2c. The counting itself: which (arity, weight) pairs survive.
        VanishingPrediction vp = predict_vanishing({1, 2}, {2, 3, 4});
        std::vector<std::pair<int, std::vector<int>>> expect = {
            {2, {1, 1}}, {2, {1, 2}}, {2, {2, 2}},
            {3, {1, 1, 1}}, {3, {1, 1, 2}}, {4, {1, 1, 1, 1}}};
        rep.add("consequences.curve_weights.survivors",
                vp.max_arity == 4 && vp.survivors == expect,
                "profile {1,2} -> {2,3,4} must leave exactly six surviving shapes");
    }

    {
        // 3. Pure weight two generators: only even weights are reachable,
        // and every relation is quadratic (purity forces rigidity of the
        // higher operations).
        GradedSpace sp;
        sp.add_degree(1, {"b1", "b2"}, {2, 2});
        sp.add_degree(2, {"c3", "c4"}, {3, 4});
        DGLA l(std::move(sp));
        l.set_bracket(1, 0, 1, 1, Vec{Rational(0), Rational(1)});  // [b1,b2] = c4
        Presentation p = detail::present_dgla(l, 2);
        bool ok = p.relations.size() == 1 && detail::relations_homogeneous(p) &&
                  p.relations[0].weight == 4 && p.relations[0].poly.degree() == 2;
        rep.add("consequences.purity_rigidity", ok,
                "pure weight two generators must give a single quadratic relation in weight 4");
    }

    {
        // 4. A free factor joins the generators but stays out of every
        // relation.
        Presentation p = detail::present_dgla(detail::formal_curve_algebra(), 4, 2, {0, 0},
                                              {"g1", "g2"});
        bool ok = p.gen_labels.size() == 4 && p.gen_labels[2] == "g1" &&
                  p.gen_labels[3] == "g2" && p.h1_count == 2 && !p.relations.empty();
        for (const auto& rel : p.relations)
            for (const auto& [m, c] : rel.poly.coeff)
                ok = ok && m.e[2] == 0 && m.e[3] == 0;
        rep.add("consequences.free_factor", ok,
                "free generators must appear in the generator list but in no relation");
    }

    {
        // 5. Bounded profile {1,3} -> {2,4}: the arity bound is four, yet
        // all relations stay in the profile weights.
        GradedSpace sp;
        sp.add_degree(1, {"a", "b"}, {1, 3});
        sp.add_degree(2, {"c2", "c4"}, {2, 4});
        DGLA l(std::move(sp));
        l.set_bracket(1, 0, 1, 0, Vec{Rational(2), Rational(0)});  // [a,a] = 2 c2
        l.set_bracket(1, 0, 1, 1, Vec{Rational(0), Rational(1)});  // [a,b] = c4
        Presentation p = detail::present_dgla(l, 4);
        std::vector<int> rw;
        for (const auto& rel : p.relations) rw.push_back(rel.weight);
        bool ok = p.relations.size() == 2 && detail::relations_homogeneous(p) &&
                  detail::weights_within(rw, {2, 4}) &&
                  predict_vanishing({1, 3}, {2, 4}).max_arity == 4;
        rep.add("consequences.bounded_profile_curve", ok,
                "profile {1,3} -> {2,4} must give two homogeneous relations in weights 2 and 4");
    }

    {
        // 6. Sparse profile {1,2} -> {5}: weight counting allows arities up
        // to five, but the only surviving relation is a cubic in weight
        // five, produced by a transferred three-fold operation.
        GradedSpace sp;
        sp.add_degree(1, {"a", "b", "g"}, {1, 2, 3});
        sp.add_degree(2, {"u", "c5"}, {3, 5});
        DGLA l(std::move(sp));
        Matrix d1(2, 3);
        d1.at(0, 2) = Rational(1);  // d g = u
        l.set_differential(1, d1);
        l.set_bracket(1, 0, 1, 1, Vec{Rational(1), Rational(0)});  // [a,b] = u
        l.set_bracket(1, 1, 1, 2, Vec{Rational(0), Rational(1)});  // [b,g] = c5
        Presentation p = detail::present_dgla(l, 5);
        bool ok = predict_vanishing({1, 2}, {5}).max_arity == 5 &&
                  p.relations.size() == 1 && detail::relations_homogeneous(p) &&
                  p.relations[0].weight == 5 && p.relations[0].poly.degree() == 3;
        rep.add("consequences.bounded_profile_sparse", ok,
                "profile {1,2} -> {5} must give a single cubic relation of weight 5");
    }

    return rep;
}

}  // namespace halg
