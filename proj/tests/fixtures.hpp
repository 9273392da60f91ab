#pragma once

#include "halg/augmentation.hpp"
#include "halg/dgla.hpp"
#include "halg/graded.hpp"

// Small handcrafted algebras shared across test files.
namespace testsupport {

inline halg::Vec qv(std::initializer_list<int> xs) {
    halg::Vec v;
    for (int x : xs) v.push_back(halg::Rational(x));
    return v;
}

// Three generators in degree 1 (weights 1,1,2) and two in degree 2
// (weights 2,3), with d g = u, [e,f] = u, [e,g] = v.  Cohomology is
// spanned by e, f in degree 1 and v in degree 2; the homotopy h sends u
// back to g, so the transferred ternary operation is nonzero.
inline halg::DGLA quadratic_cocycle_algebra() {
    halg::GradedSpace s;
    s.add_degree(1, {"e", "f", "g"}, {1, 1, 2});
    s.add_degree(2, {"u", "v"}, {2, 3});
    halg::DGLA L(std::move(s));
    halg::Matrix d1(2, 3);
    d1.at(0, 2) = halg::Rational(1);
    L.set_differential(1, d1);
    L.set_bracket(1, 0, 1, 1, qv({1, 0}));  // [e,f] = u
    L.set_bracket(1, 0, 1, 2, qv({0, 1}));  // [e,g] = v
    return L;
}

// sl2 in degree 0: [H,E] = 2E, [H,F] = -2F, [E,F] = H.
inline halg::DGLA sl2_algebra() {
    halg::GradedSpace s;
    s.add_degree(0, {"H", "E", "F"});
    halg::DGLA L(std::move(s));
    L.set_bracket(0, 0, 0, 1, qv({0, 2, 0}));
    L.set_bracket(0, 0, 0, 2, qv({0, 0, -2}));
    L.set_bracket(0, 1, 0, 2, qv({1, 0, 0}));
    return L;
}

// Heisenberg algebra in degree 0: [X,Y] = Z, Z central.
inline halg::DGLA heisenberg_algebra() {
    halg::GradedSpace s;
    s.add_degree(0, {"X", "Y", "Z"});
    halg::DGLA L(std::move(s));
    L.set_bracket(0, 0, 0, 1, qv({0, 0, 1}));
    return L;
}

struct AugmentedPair {
    halg::DGLA l;
    halg::Augmentation aug;
};

// sl2 in degree 0 with zero differential, extended by the quadratic-cocycle
// gadget in degrees 1 and 2 (all cross-brackets zero), augmented by the
// identity onto sl2.  Here eps(H^0) is all of the target, so the complement
// of the augmentation image in cohomology is trivial, while the degree 1-2
// part keeps the algebra non-formal.
inline AugmentedPair sl2_augmented_pair() {
    halg::GradedSpace s;
    s.add_degree(0, {"H", "E", "F"});
    s.add_degree(1, {"e", "f", "g"});
    s.add_degree(2, {"u", "v"});
    halg::DGLA L(std::move(s));
    halg::Matrix d1(2, 3);
    d1.at(0, 2) = halg::Rational(1);
    L.set_differential(1, d1);
    L.set_bracket(0, 0, 0, 1, qv({0, 2, 0}));
    L.set_bracket(0, 0, 0, 2, qv({0, 0, -2}));
    L.set_bracket(0, 1, 0, 2, qv({1, 0, 0}));
    L.set_bracket(1, 0, 1, 1, qv({1, 0}));  // [e,f] = u
    L.set_bracket(1, 0, 1, 2, qv({0, 1}));  // [e,g] = v
    return {std::move(L), halg::Augmentation(sl2_algebra(), halg::Matrix::identity(3))};
}

// Heisenberg algebra in degree 0 mapping identically onto the target, with
// d X = p, d Y = q, d Z = 0, and the quadratic-cocycle gadget alongside p, q
// in degrees 1 and 2.  Cohomology: H^0 = <Z>, H^1 = <e, f>, H^2 = <v>, and
// eps(H^0) = <Z> has a two-dimensional complement in the target.
inline AugmentedPair heisenberg_augmented_pair() {
    halg::GradedSpace s;
    s.add_degree(0, {"X", "Y", "Z"});
    s.add_degree(1, {"p", "q", "e", "f", "g"});
    s.add_degree(2, {"u", "v"});
    halg::DGLA L(std::move(s));
    halg::Matrix d0(5, 3);
    d0.at(0, 0) = halg::Rational(1);  // d X = p
    d0.at(1, 1) = halg::Rational(1);  // d Y = q
    L.set_differential(0, d0);
    halg::Matrix d1(2, 5);
    d1.at(0, 4) = halg::Rational(1);  // d g = u
    L.set_differential(1, d1);
    L.set_bracket(0, 0, 0, 1, qv({0, 0, 1}));           // [X,Y] = Z
    L.set_bracket(1, 2, 1, 3, qv({1, 0}));              // [e,f] = u
    L.set_bracket(1, 2, 1, 4, qv({0, 1}));              // [e,g] = v
    return {std::move(L), halg::Augmentation(heisenberg_algebra(), halg::Matrix::identity(3))};
}

// Smallest algebra with an interesting gauge action: degree 0 is spanned by s
// with d s = a, degree 1 by a, b with d b = 2c, degree 2 by c, and the only
// brackets are [s, a] = b and [a, a] = 2c.  The Maurer-Cartan equation for
// x = alpha a + beta b reads 2 beta + alpha^2 = 0, so x = t a - (1/2) b t^2
// is a solution over any coefficient ring and the whole family is one gauge
// orbit.
inline halg::DGLA gauge_algebra() {
    halg::GradedSpace s;
    s.add_degree(0, {"s"});
    s.add_degree(1, {"a", "b"});
    s.add_degree(2, {"c"});
    halg::DGLA L(std::move(s));
    halg::Matrix d0(2, 1);
    d0.at(0, 0) = halg::Rational(1);  // d s = a
    L.set_differential(0, d0);
    halg::Matrix d1(1, 2);
    d1.at(0, 1) = halg::Rational(2);  // d b = 2c
    L.set_differential(1, d1);
    L.set_bracket(0, 0, 1, 0, qv({0, 1}));  // [s, a] = b
    L.set_bracket(1, 0, 1, 0, qv({2}));     // [a, a] = 2c
    return L;
}

// sl2 acting on its standard two-dimensional representation placed in degree
// 1, with zero differential.  Gauge transformations exponentiate to the
// matrix action of SL2, which makes this the test bed for composing two
// gauge transformations against a single transformation by their
// Baker-Campbell-Hausdorff product.
inline halg::DGLA rep_algebra() {
    halg::GradedSpace s;
    s.add_degree(0, {"H", "E", "F"});
    s.add_degree(1, {"m1", "m2"});
    halg::DGLA L(std::move(s));
    L.set_bracket(0, 0, 0, 1, qv({0, 2, 0}));   // [H,E] = 2E
    L.set_bracket(0, 0, 0, 2, qv({0, 0, -2}));  // [H,F] = -2F
    L.set_bracket(0, 1, 0, 2, qv({1, 0, 0}));   // [E,F] = H
    L.set_bracket(0, 0, 1, 0, qv({1, 0}));      // H m1 = m1
    L.set_bracket(0, 0, 1, 1, qv({0, -1}));     // H m2 = -m2
    L.set_bracket(0, 1, 1, 1, qv({1, 0}));      // E m2 = m1
    L.set_bracket(0, 2, 1, 0, qv({0, 1}));      // F m1 = m2
    return L;
}

// Free nilpotent Lie algebra on X, Y modulo brackets of length 5, entirely in
// degree 0 with zero differential.  Hall basis: c = [X,Y], d1 = [X,c],
// d2 = [Y,c], e1 = [X,d1], e2 = [X,d2] = [Y,d1], e3 = [Y,d2].  This is the
// universal home for checking low-order Baker-Campbell-Hausdorff
// coefficients against the classical expansion.
inline halg::DGLA free_nilpotent_algebra() {
    halg::GradedSpace s;
    s.add_degree(0, {"X", "Y", "c", "d1", "d2", "e1", "e2", "e3"});
    halg::DGLA L(std::move(s));
    auto v8 = [](int i) {
        halg::Vec v(8, halg::Rational(0));
        v[static_cast<size_t>(i)] = halg::Rational(1);
        return v;
    };
    L.set_bracket(0, 0, 0, 1, v8(2));  // [X,Y] = c
    L.set_bracket(0, 0, 0, 2, v8(3));  // [X,c] = d1
    L.set_bracket(0, 1, 0, 2, v8(4));  // [Y,c] = d2
    L.set_bracket(0, 0, 0, 3, v8(5));  // [X,d1] = e1
    L.set_bracket(0, 0, 0, 4, v8(6));  // [X,d2] = e2
    L.set_bracket(0, 1, 0, 3, v8(6));  // [Y,d1] = e2
    L.set_bracket(0, 1, 0, 4, v8(7));  // [Y,d2] = e3
    return L;
}

}  // namespace testsupport
