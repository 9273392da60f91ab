#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "halg/check.hpp"
#include "halg/filtration.hpp"
#include "halg/nilpotent.hpp"

namespace halg {

// ---------------------------------------------------------------------------
// Coordinate helpers for restricting to an invariant subspace.

// Restriction of f to an f-invariant subspace, in the coordinates given by
// the subspace's canonical basis rows.
inline Matrix restrict_map(const Matrix& f, const Subspace& inv) {
    Matrix b = inv.basis().transpose();  // columns = basis
    auto r = solve_matrix(b, f * b);
    if (!r) throw std::invalid_argument("restrict_map: subspace is not invariant");
    return *r;
}

// Rewrite S ⊆ big in big's canonical coordinates.
inline Subspace subspace_in_coords(const Subspace& s, const Subspace& big) {
    Matrix b = big.basis().transpose();
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) {
        auto y = solve(b, s.basis_row(i));
        if (!y) throw std::invalid_argument("subspace_in_coords: not contained");
        rows.push_back(*y);
    }
    return Subspace::from_rows(big.dim(), rows);
}

// Inverse of the above: coordinates back to the ambient space.
inline Subspace subspace_from_coords(const Subspace& s, const Subspace& big) {
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) {
        Vec y = s.basis_row(i);
        Vec x(big.ambient());
        for (int r = 0; r < big.dim(); ++r)
            for (int j = 0; j < big.ambient(); ++j) x[j] += y[r] * big.basis().at(r, j);
        rows.push_back(std::move(x));
    }
    return Subspace::from_rows(big.ambient(), rows);
}

inline Filtration filtration_in_coords(const Filtration& f, const Subspace& big) {
    std::map<int, Subspace> steps;
    for (const auto& [k, s] : f.steps()) steps.emplace(k, subspace_in_coords(s, big));
    return Filtration(big.dim(), steps);
}

inline Filtration filtration_from_coords(const Filtration& f, const Subspace& big) {
    std::map<int, Subspace> steps;
    for (const auto& [k, s] : f.steps()) steps.emplace(k, subspace_from_coords(s, big));
    return Filtration(big.ambient(), steps);
}

// ---------------------------------------------------------------------------
// Monodromy filtration.

// Defining conditions of the monodromy filtration of N centered at w:
//   (1) N(M_i) ⊆ M_{i-2};
//   (2) N^i induces an isomorphism Gr^M_{w+i} → Gr^M_{w-i} for all i ≥ 1.
inline CheckReport check_monodromy(const Filtration& m, const NilpotentEndo& n, int center) {
    CheckReport rep;
    int dim = n.mat.rows();
    rep.add("monodromy.exhaustive", m.is_exhaustive(), "top step is not the full space");
    if (m.steps().empty()) return rep;
    int lo = m.lowest_jump(), hi = m.highest_jump();
    for (int i = lo; i <= hi; ++i) {
        bool ok = m.value(i - 2).contains(apply_image(n.mat, m.value(i)));
        rep.add("monodromy.shift[" + std::to_string(i) + "]", ok,
                "N(M_" + std::to_string(i) + ") ⊄ M_" + std::to_string(i - 2));
        if (!ok) return rep;
    }
    int reach = std::max(hi - center, center - lo);
    for (int i = 1; i <= reach; ++i) {
        QuotientData up = quotient_data(m.value(center + i), m.value(center + i - 1));
        QuotientData dn = quotient_data(m.value(center - i), m.value(center - i - 1));
        bool dims = up.lift_basis.rows() == dn.lift_basis.rows();
        Matrix gr = dn.projection * n.mat.pow(i) * up.lift_basis.transpose();
        bool iso = dims && rank(gr) == gr.rows();
        rep.add("monodromy.graded_iso[" + std::to_string(i) + "]", iso,
                "N^" + std::to_string(i) + " is not an isomorphism Gr_{w+" + std::to_string(i) +
                    "} → Gr_{w-" + std::to_string(i) + "}");
    }
    (void)dim;
    return rep;
}

// Monodromy filtration centered at w, by induction on the nilpotency index:
// the extreme steps are forced (full space, 0, ker N^q, im N^q) and the rest
// is the monodromy filtration of the induced map on ker N^q / im N^q.
inline Filtration monodromy_filtration(const NilpotentEndo& n, int center) {
    int dim = n.mat.rows();
    std::map<int, Subspace> steps;
    if (dim == 0) return Filtration(0, {});
    int q = n.index;
    if (q == 0) {
        steps.emplace(center - 1, Subspace::zero(dim));
        steps.emplace(center, Subspace::full(dim));
        return Filtration(dim, steps);
    }
    Subspace kq = kernel_of_power(n, q);
    Subspace iq = image_of_power(n, q);
    if (!kq.contains(iq)) throw std::logic_error("monodromy_filtration: im N^q ⊄ ker N^q");
    QuotientData qd = quotient_data(kq, iq);
    Matrix induced = qd.projection * n.mat * qd.lift_basis.transpose();
    Filtration sub = monodromy_filtration(make_nilpotent(induced), center);
    steps.emplace(center - q - 1, Subspace::zero(dim));
    for (int i = center - q; i <= center + q - 1; ++i)
        steps.emplace(i, span_intersect(kq, apply_preimage(qd.projection, sub.value(i))));
    steps.emplace(center + q, Subspace::full(dim));
    Filtration m(dim, steps);
    CheckReport rep = check_monodromy(m, n, center);
    if (!rep.pass()) throw std::logic_error("monodromy_filtration: verification failed: " + rep.first_failure());
    return m;
}

// ---------------------------------------------------------------------------
// Relative monodromy filtration.

inline CheckReport check_invariant_filtration(const Filtration& w, const NilpotentEndo& n) {
    CheckReport rep;
    for (const auto& [k, s] : w.steps()) {
        rep.add("weight.invariant[" + std::to_string(k) + "]", s.contains(apply_image(n.mat, s)),
                "N(W_" + std::to_string(k) + ") ⊄ W_" + std::to_string(k));
    }
    rep.add("weight.exhaustive", w.is_exhaustive(), "W does not exhaust the space");
    return rep;
}

// Defining conditions of the monodromy filtration of N relative to W:
//   (1) N(M_i) ⊆ M_{i-2};
//   (2) on each Gr^W_k the induced filtration of M is the monodromy
//       filtration of the induced nilpotent, centered at k.
inline CheckReport check_relative_monodromy(const Filtration& m, const Filtration& w, const NilpotentEndo& n) {
    CheckReport rep;
    rep.merge(check_invariant_filtration(w, n));
    if (!rep.pass()) return rep;
    rep.add("relative.exhaustive", m.is_exhaustive(), "top step is not the full space");
    if (!m.steps().empty()) {
        int lo = m.lowest_jump(), hi = m.highest_jump();
        for (int i = lo; i <= hi; ++i) {
            bool ok = m.value(i - 2).contains(apply_image(n.mat, m.value(i)));
            rep.add("relative.shift[" + std::to_string(i) + "]", ok,
                    "N(M_" + std::to_string(i) + ") ⊄ M_" + std::to_string(i - 2));
            if (!ok) return rep;
        }
    }
    for (int k : w.jumps()) {
        Subspace wk = w.value(k), wk1 = w.value(k - 1);
        QuotientData qd = quotient_data(wk, wk1);
        Matrix nk = qd.projection * n.mat * qd.lift_basis.transpose();
        Filtration expected = monodromy_filtration(make_nilpotent(nk), k);
        // Induced filtration: image of M_i ∩ W_k in W_k / W_{k-1}.
        std::map<int, Subspace> ind;
        if (!m.steps().empty()) {
            for (int i = m.lowest_jump() - 1; i <= m.highest_jump(); ++i)
                ind.emplace(i, apply_image(qd.projection, span_intersect(m.value(i), wk)));
        }
        Filtration induced(qd.lift_basis.rows(), ind);
        bool ok = induced == expected;
        rep.add("relative.graded[" + std::to_string(k) + "]", ok,
                "induced filtration on Gr^W_" + std::to_string(k) + " is " + induced.str() +
                    ", monodromy needs " + expected.str());
    }
    return rep;
}

struct RelativeMonodromyResult {
    bool exists = false;
    Filtration filtration;   // meaningful only when exists
    std::string witness;     // reason when it does not exist
};

// Relative monodromy filtration of (W, N), by peeling the top weight of W.
// The graded quotient Gr^W_top carries the monodromy filtration of the
// induced nilpotent; its Jordan strings are lifted subject to
// N^m(lift) ∈ M'_{top-m-1}, which is solvable for every Jordan basis exactly
// when the relative filtration exists.  The assembled output is re-verified
// against both defining conditions before being returned.
inline RelativeMonodromyResult relative_monodromy_filtration(const Filtration& w, const NilpotentEndo& n) {
    int dim = n.mat.rows();
    CheckReport pre = check_invariant_filtration(w, n);
    if (!pre.pass()) throw std::invalid_argument("relative_monodromy_filtration: " + pre.first_failure());
    if (dim == 0) return {true, Filtration(0, {}), ""};

    std::vector<int> jumps = w.jumps();
    if (jumps.size() == 1) return {true, monodromy_filtration(n, jumps[0]), ""};

    int top = jumps.back();
    Subspace sub = w.value(top - 1);  // proper, nonzero, N-invariant

    // Recurse on the restriction to W_{top-1}.
    Matrix n_sub = restrict_map(n.mat, sub);
    std::map<int, Subspace> wsub_steps;
    for (int k : jumps)
        if (k < top) wsub_steps.emplace(k, subspace_in_coords(w.value(k), sub));
    RelativeMonodromyResult below =
        relative_monodromy_filtration(Filtration(sub.dim(), wsub_steps), make_nilpotent(n_sub));
    if (!below.exists)
        return {false, Filtration(), "restriction to W_" + std::to_string(top - 1) + ": " + below.witness};
    Filtration mprime = filtration_from_coords(below.filtration, sub);  // steps as subspaces of the ambient

    // Jordan strings of the induced nilpotent on Gr^W_top.
    QuotientData qd = quotient_data(Subspace::full(dim), sub);
    Matrix n_top = qd.projection * n.mat * qd.lift_basis.transpose();
    std::vector<JordanString> strings = jordan_strings(make_nilpotent(n_top));

    // Lift each string top v (length m) to ṽ with N^m ṽ ∈ M'_{top-m-1}.
    struct LiftedString {
        Vec top;
        int length;
    };
    std::vector<LiftedString> lifted;
    for (const auto& str : strings) {
        int m = str.length();
        Vec v0(dim);
        {
            const Vec& v = str.vectors[0];
            for (int r = 0; r < qd.lift_basis.rows(); ++r)
                for (int j = 0; j < dim; ++j) v0[j] += v[r] * qd.lift_basis.at(r, j);
        }
        Matrix nm = n.mat.pow(m);
        Vec rhs = nm * v0;
        for (auto& c : rhs) c = -c;
        // Unknowns: c ∈ W_{top-1} and y ∈ M'_{top-m-1} with N^m c + y = -N^m ṽ0.
        Subspace target = mprime.value(top - m - 1);
        std::vector<Vec> cols;
        for (int i = 0; i < sub.dim(); ++i) cols.push_back(nm * sub.basis_row(i));
        for (int i = 0; i < target.dim(); ++i) cols.push_back(target.basis_row(i));
        Matrix sys(dim, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j)
            for (int i = 0; i < dim; ++i) sys.at(i, j) = cols[j][i];
        auto sol = solve(sys, rhs);
        if (!sol) {
            std::ostringstream os;
            os << "no admissible lift for a Jordan string of length " << m << " on Gr^W_" << top;
            return {false, Filtration(), os.str()};
        }
        Vec vtilde = v0;
        for (int i = 0; i < sub.dim(); ++i)
            for (int j = 0; j < dim; ++j) vtilde[j] += (*sol)[i] * sub.basis().at(i, j);
        lifted.push_back({vtilde, m});
    }

    // Assemble M_i = M'_i + span{ N^j ṽ : (top + m - 1) - 2j ≤ i }.
    int lo = top, hi = top;
    if (!mprime.steps().empty()) {
        lo = std::min(lo, mprime.lowest_jump());
        hi = std::max(hi, mprime.highest_jump());
    }
    for (const auto& ls : lifted) {
        lo = std::min(lo, top - ls.length);
        hi = std::max(hi, top + ls.length - 1);
    }
    std::map<int, Subspace> steps;
    for (int i = lo - 1; i <= hi; ++i) {
        std::vector<Vec> rows;
        Subspace base = mprime.value(i);
        for (int r = 0; r < base.dim(); ++r) rows.push_back(base.basis_row(r));
        for (const auto& ls : lifted) {
            Vec cur = ls.top;
            for (int j = 0; j < ls.length; ++j) {
                int weight = top + ls.length - 1 - 2 * j;
                if (weight <= i) rows.push_back(cur);
                cur = n.mat * cur;
            }
        }
        steps.emplace(i, Subspace::from_rows(dim, rows));
    }
    Filtration m(dim, steps);
    CheckReport rep = check_relative_monodromy(m, w, n);
    if (!rep.pass())
        throw std::logic_error("relative_monodromy_filtration: constructed filtration failed verification: " +
                               rep.first_failure());
    return {true, m, ""};
}

// ---------------------------------------------------------------------------
// The Z-filtration and its closed form.

// Z_k = N(W_k) + (M_{k-1} ∩ W_{k-1}), for M the relative monodromy
// filtration of (W, N).
inline Filtration z_filtration(const Filtration& w, const Filtration& m, const NilpotentEndo& n) {
    int dim = n.mat.rows();
    if (w.steps().empty()) return Filtration(dim, {});
    int lo = w.lowest_jump();
    int hi = w.highest_jump() + 1;
    if (!m.steps().empty()) hi = std::max(hi, m.highest_jump() + 1);
    std::map<int, Subspace> steps;
    for (int k = lo; k <= hi; ++k)
        steps.emplace(k, span_sum(apply_image(n.mat, w.value(k)), span_intersect(m.value(k - 1), w.value(k - 1))));
    return Filtration(dim, steps);
}

// Closed form avoiding the relative monodromy filtration:
// Z_l = N(W_l) + ⋂_{j≥0} (N^j)^{-1}(W_{l-1-j}).  Powers beyond the
// nilpotency index impose no condition.
inline Filtration z_filtration_kashiwara(const Filtration& w, const NilpotentEndo& n) {
    int dim = n.mat.rows();
    if (w.steps().empty()) return Filtration(dim, {});
    int lo = w.lowest_jump();
    int hi = w.highest_jump() + 1 + n.index;
    std::map<int, Subspace> steps;
    for (int l = lo; l <= hi; ++l) {
        Subspace cap = w.value(l - 1);
        for (int j = 1; j <= n.index; ++j)
            cap = span_intersect(cap, apply_preimage(n.mat.pow(j), w.value(l - 1 - j)));
        steps.emplace(l, span_sum(apply_image(n.mat, w.value(l)), cap));
    }
    return Filtration(dim, steps);
}

// ---------------------------------------------------------------------------
// Tensor-product compatibility checks.

struct TensorMonodromyReport {
    bool pass = false;
    Filtration tensor_side;   // M(N1) ⊗ M(N2)
    Filtration direct_side;   // M(N1 ⊗ 1 + 1 ⊗ N2)
};

// Monodromy of a Kronecker-sum nilpotent, centered at w1 + w2, equals the
// tensor product of the two monodromy filtrations.
inline TensorMonodromyReport check_tensor_monodromy(const NilpotentEndo& n1, int w1, const NilpotentEndo& n2,
                                                    int w2) {
    TensorMonodromyReport rep;
    Filtration m1 = monodromy_filtration(n1, w1);
    Filtration m2 = monodromy_filtration(n2, w2);
    rep.tensor_side = tensor_filtration(m1, m2);
    rep.direct_side = monodromy_filtration(tensor_nilpotent(n1, n2), w1 + w2);
    rep.pass = rep.tensor_side == rep.direct_side;
    return rep;
}

struct WeightZInclusionReport {
    bool pass = false;
    CheckReport details;
};

// For admissible pairs (W1, N1), (W2, N2): the tensor pair has relative
// monodromy filtration M1 ⊗ M2, and the Z-filtration of the tensor pair
// absorbs W1 ⊗ Z2 and W1 ⊗ W2 degreewise: W¹_k ⊗ Z²_l ⊆ Z_{k+l},
// W¹_k ⊗ W²_l ⊆ W_{k+l}.
inline WeightZInclusionReport check_weight_z_inclusions(const Filtration& w1, const NilpotentEndo& n1,
                                                        const Filtration& w2, const NilpotentEndo& n2) {
    WeightZInclusionReport rep;
    RelativeMonodromyResult r1 = relative_monodromy_filtration(w1, n1);
    RelativeMonodromyResult r2 = relative_monodromy_filtration(w2, n2);
    rep.details.add("admissible.left", r1.exists, r1.witness);
    rep.details.add("admissible.right", r2.exists, r2.witness);
    if (!r1.exists || !r2.exists) return rep;

    Filtration w12 = tensor_filtration(w1, w2);
    NilpotentEndo n12 = tensor_nilpotent(n1, n2);
    Filtration m12 = tensor_filtration(r1.filtration, r2.filtration);
    CheckReport tensor_rel = check_relative_monodromy(m12, w12, n12);
    rep.details.add("tensor.relative_monodromy", tensor_rel.pass(), tensor_rel.first_failure());
    if (!tensor_rel.pass()) return rep;

    Filtration z12 = z_filtration(w12, m12, n12);
    Filtration z2 = z_filtration(w2, r2.filtration, n2);

    int klo = w1.lowest_jump(), khi = w1.highest_jump();
    int llo = z2.steps().empty() ? 0 : z2.lowest_jump();
    int lhi = z2.steps().empty() ? 0 : z2.highest_jump();
    for (int k = klo; k <= khi; ++k)
        for (int l = llo; l <= lhi; ++l) {
            bool okz = z12.value(k + l).contains(tensor_subspace(w1.value(k), z2.value(l)));
            rep.details.add("inclusion.w_z[" + std::to_string(k) + "," + std::to_string(l) + "]", okz,
                            "W¹⊗Z² escapes Z at " + std::to_string(k + l));
            bool okw = w12.value(k + l).contains(tensor_subspace(w1.value(k), w2.value(l)));
            rep.details.add("inclusion.w_w[" + std::to_string(k) + "," + std::to_string(l) + "]", okw,
                            "W¹⊗W² escapes W at " + std::to_string(k + l));
        }
    rep.pass = rep.details.pass();
    return rep;
}

}  // namespace halg
