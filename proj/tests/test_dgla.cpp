#include <catch2/catch_amalgamated.hpp>

#include "halg/contraction.hpp"
#include "halg/dgla.hpp"
#include "halg/graded.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace halg;
using namespace testsupport;

TEST_CASE("graded space bookkeeping") {
    GradedSpace s;
    s.add_degree(0, {"x", "y"}, {0, 1});
    s.add_degree(2, {"z"});
    REQUIRE(s.dim(0) == 2);
    REQUIRE(s.dim(1) == 0);
    REQUIRE(s.dim(2) == 1);
    REQUIRE(s.total_dim() == 3);
    REQUIRE(s.degrees() == std::vector<int>{0, 2});
    REQUIRE(s.label(0, 1) == "y");
    REQUIRE(s.weight(0, 1) == 1);
    REQUIRE(s.weight(2, 0) == 0);
    REQUIRE(s.has_nontrivial_weights());
    REQUIRE_THROWS_AS(s.add_degree(0, {"w"}), std::invalid_argument);

    Elt a = basis_elt(s, 0, 0), b = basis_elt(s, 0, 1);
    Elt combo = Rational(2) * a - b;
    REQUIRE(combo.coords == qv({2, -1}));
    REQUIRE(elt_str(s, combo) == "2*x + -1*y");
    REQUIRE(elt_str(s, zero_elt(s, 2)) == "0");
    REQUIRE_THROWS_AS(a + basis_elt(s, 2, 0), std::invalid_argument);
}

TEST_CASE("complex validation and cohomology dimensions") {
    SECTION("cohomology of the quadratic-cocycle algebra") {
        DGLA L = quadratic_cocycle_algebra();
        REQUIRE(L.complex().check().pass());
        auto h = L.complex().cohomology_dims();
        REQUIRE(h.at(1) == 2);
        REQUIRE(h.at(2) == 1);
    }
    SECTION("a non-complex is rejected") {
        GradedSpace s;
        s.add_degree(0, {"x"});
        s.add_degree(1, {"y"});
        s.add_degree(2, {"z"});
        Complex c;
        c.space = s;
        c.set_differential(0, Matrix{{Rational(1)}});
        c.set_differential(1, Matrix{{Rational(1)}});
        REQUIRE_FALSE(c.check().pass());
        REQUIRE(c.check().first_failure().find("d_squared") != std::string::npos);
    }
    SECTION("weight-breaking differentials are rejected") {
        GradedSpace s;
        s.add_degree(0, {"x"}, {1});
        s.add_degree(1, {"y"}, {2});
        Complex c;
        c.space = s;
        c.set_differential(0, Matrix{{Rational(1)}});
        REQUIRE_FALSE(c.check().pass());
        REQUIRE(c.check().first_failure().find("weights") != std::string::npos);
    }
}

TEST_CASE("dgla bracket storage and axioms") {
    SECTION("mirrored brackets carry the graded sign") {
        DGLA L = quadratic_cocycle_algebra();
        // degree 1 with degree 1: [f,e] = +[e,f].
        REQUIRE(L.bracket_basis(1, 1, 1, 0) == qv({1, 0}));
        Elt e = basis_elt(L.space(), 1, 0), f = basis_elt(L.space(), 1, 1);
        REQUIRE(L.bracket(e, f) == L.bracket(f, e));
        REQUIRE(L.check_axioms().pass());
    }
    SECTION("even-degree squares must vanish") {
        GradedSpace s;
        s.add_degree(0, {"x"});
        DGLA L(std::move(s));
        REQUIRE_THROWS_AS(L.set_bracket(0, 0, 0, 0, qv({1})), std::invalid_argument);
    }
    SECTION("sl2 satisfies jacobi; a perturbation does not") {
        DGLA L = sl2_algebra();
        REQUIRE(L.check_axioms().pass());
        L.set_bracket(0, 0, 0, 1, qv({0, 3, 1}));  // [H,E] = 3E + F breaks jacobi
        CheckReport rep = L.check_axioms();
        REQUIRE_FALSE(rep.pass());
        REQUIRE(rep.first_failure().find("jacobi") != std::string::npos);
    }
    SECTION("leibniz failures are caught with witnesses") {
        GradedSpace s;
        s.add_degree(0, {"x", "z"});
        s.add_degree(1, {"y"});
        DGLA L(std::move(s));
        Matrix d0(1, 2);
        d0.at(0, 0) = Rational(1);  // d x = y
        L.set_differential(0, d0);
        L.set_bracket(0, 0, 0, 1, qv({1, 0}));  // [x,z] = x
        CheckReport rep = L.check_axioms();
        REQUIRE_FALSE(rep.pass());
        REQUIRE(rep.first_failure().find("leibniz") != std::string::npos);
    }
    SECTION("weight-breaking brackets are reported") {
        GradedSpace s;
        s.add_degree(1, {"e", "f"}, {1, 1});
        s.add_degree(2, {"u"}, {3});
        DGLA L(std::move(s));
        L.set_bracket(1, 0, 1, 1, qv({1}));  // weight 2 product hits weight 3
        CheckReport rep = L.check_axioms();
        REQUIRE_FALSE(rep.pass());
        REQUIRE(rep.first_failure().find("weight") != std::string::npos);
    }
}

TEST_CASE("contraction of the quadratic-cocycle algebra") {
    DGLA L = quadratic_cocycle_algebra();
    Contraction ct = build_contraction(L.complex());
    REQUIRE(check_contraction(L.complex(), ct).pass());

    REQUIRE(ct.hspace.dim(1) == 2);
    REQUIRE(ct.hspace.dim(2) == 1);
    REQUIRE(ct.hspace.label(1, 0) == "e");
    REQUIRE(ct.hspace.label(1, 1) == "f");
    REQUIRE(ct.hspace.label(2, 0) == "v");
    REQUIRE(ct.hspace.weight(1, 0) == 1);
    REQUIRE(ct.hspace.weight(2, 0) == 3);

    // h picks out the preimage g of the exact cocycle u.
    Matrix h2 = ct.hmat(2);
    REQUIRE(h2 * qv({1, 0}) == qv({0, 0, 1}));
    REQUIRE(h2 * qv({0, 1}) == qv({0, 0, 0}));
    REQUIRE(ct.A.at(1).dim() == 1);
    REQUIRE(ct.B.at(2).dim() == 1);
    REQUIRE(ct.K.at(1).dim() == 2);
}

TEST_CASE("contraction identities on random complexes") {
    Rng rng(31001);
    for (int trial = 0; trial < 20; ++trial) {
        bool weighted = trial % 2 == 1;
        ComplexSample s = random_complex(rng, -1, 3, 2, weighted);
        REQUIRE(s.c.check().pass());
        Contraction ct = build_contraction(s.c);
        REQUIRE(check_contraction(s.c, ct).pass());
        for (auto& [n, hd] : s.expected_h) {
            REQUIRE(ct.hspace.dim(n) == hd);
            if (hd > 0 && weighted) {
                std::vector<int> got = ct.hspace.weights(n);
                std::sort(got.begin(), got.end());
                REQUIRE(got == s.expected_hweights.at(n));
            }
        }
        // Decomposition dimensions add up in every degree.
        for (int n : s.c.space.degrees())
            REQUIRE(ct.A.at(n).dim() + ct.K.at(n).dim() + ct.B.at(n).dim() == s.c.space.dim(n));
    }
}
