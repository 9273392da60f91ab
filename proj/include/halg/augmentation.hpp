#pragma once

#include <stdexcept>
#include <string>

#include "halg/dgla.hpp"
#include "halg/subspace.hpp"

namespace halg {

// An augmentation of a DG Lie algebra L: a Lie algebra g concentrated in
// degree 0 (zero differential) together with a linear map eps : L^0 -> g
// that is a map of Lie algebras in degree 0 and kills the image of
// d : L^{-1} -> L^0.  The matrix eps has dim g rows and dim L^0 columns.
struct Augmentation {
    DGLA target;
    Matrix eps;

    Augmentation(DGLA g, Matrix e) : target(std::move(g)), eps(std::move(e)) {}
};

// The image eps(H^0(L)) inside g.  Since eps vanishes on im d^{-1}, this is
// the image of the kernel of d^0.
inline Subspace eps_image_h0(const DGLA& L, const Augmentation& aug) {
    int l0 = L.space().dim(0);
    int g0 = aug.target.space().dim(0);
    if (l0 == 0) return Subspace::zero(g0);
    Subspace z0 = Subspace::from_rows(l0, kernel_basis(L.complex().dmat(0)));
    return apply_image(aug.eps, z0);
}

// Itemized validation of an augmentation: the target is an honest Lie
// algebra in degree 0, eps has the right shape, is a chain map (eps d = 0
// on L^{-1}), a Lie-algebra map on degree 0, surjective on L^0, and
// injective on H^0(L).  Report-style: never throws.
inline CheckReport check_augmentation(const DGLA& L, const Augmentation& aug) {
    CheckReport rep;
    const GradedSpace& gs = aug.target.space();
    int g0 = gs.dim(0);
    int l0 = L.space().dim(0);

    bool deg0 = gs.total_dim() == g0 && aug.target.complex().dmat(0).is_zero();
    rep.add("augmentation.target_degree_zero", deg0,
            "target must be concentrated in degree 0 with zero differential");
    CheckReport gax = aug.target.check_axioms();
    rep.add("augmentation.target_axioms", gax.pass(), gax.pass() ? "" : gax.first_failure());

    bool shape = aug.eps.rows() == g0 && aug.eps.cols() == l0;
    rep.add("augmentation.shape", shape,
            "eps must be a (dim g) x (dim L^0) matrix");
    if (!shape) return rep;

    rep.add("augmentation.chain_map", (aug.eps * L.complex().dmat(-1)).is_zero(),
            "eps does not vanish on the image of d : L^{-1} -> L^0");

    bool lie = true;
    std::string lwit;
    for (int i = 0; i < l0 && lie; ++i)
        for (int j = i + 1; j < l0 && lie; ++j) {
            Vec lhs = aug.eps * L.bracket_basis(0, i, 0, j);
            Vec rhs = aug.target
                          .bracket(Elt{0, aug.eps.col(i)}, Elt{0, aug.eps.col(j)})
                          .coords;
            if (lhs != rhs) {
                lie = false;
                lwit = "eps[" + L.space().label(0, i) + "," + L.space().label(0, j) +
                       "] != [eps(.),eps(.)]";
            }
        }
    rep.add("augmentation.lie_map", lie, lwit);

    rep.add("augmentation.surjective",
            apply_image(aug.eps, Subspace::full(l0)).dim() == g0,
            "eps is not surjective on L^0");

    Subspace zd = l0 == 0 ? Subspace::zero(0)
                          : Subspace::from_rows(l0, kernel_basis(L.complex().dmat(0)));
    Subspace ze = l0 == 0 ? Subspace::zero(0)
                          : Subspace::from_rows(l0, kernel_basis(aug.eps));
    Subspace both = span_intersect(zd, ze);
    int lm = L.space().dim(-1);
    Subspace bdry = l0 == 0 ? Subspace::zero(0)
                            : apply_image(L.complex().dmat(-1), Subspace::full(lm));
    bool inj = true;
    for (int r = 0; r < both.dim(); ++r)
        if (!bdry.contains(both.basis_row(r))) inj = false;
    rep.add("augmentation.h0_injective", inj,
            "a nonzero class of H^0(L) maps to zero in g");
    return rep;
}

}  // namespace halg
