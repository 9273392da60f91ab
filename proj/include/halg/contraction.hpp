#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/graded.hpp"
#include "halg/subspace.hpp"

namespace halg {

// Deformation-retract data for a cochain complex L onto its cohomology H:
// per degree a decomposition L^n = A^n ⊕ K^n ⊕ B^n with B = im d,
// K ⊆ ker d a set of cohomology representatives, A a complement of ker d,
// plus maps i : H → L (the K basis), p : L → H (K-coordinates, killing
// A ⊕ B) and h : L → L[-1] inverting d from B back into A, zero on A ⊕ K.
// These satisfy exactly: pi = id, dh + hd = id - ip, h² = 0, hi = 0, ph = 0,
// di = 0, pd = 0.  When the space carries weights, the construction is
// performed inside each (degree, weight) coordinate block, so i, p, h all
// preserve weights.  H-basis elements inherit the label of their pivot
// coordinate and the weight of their block.
struct Contraction {
    GradedSpace lspace;
    GradedSpace hspace;
    std::map<int, Subspace> A, K, B;
    std::map<int, Matrix> h_;     // L^n -> L^{n-1}
    std::map<int, Matrix> proj_;  // L^n -> H^n
    std::map<int, Matrix> incl_;  // H^n -> L^n

    Matrix hmat(int n) const {
        auto it = h_.find(n);
        return it != h_.end() ? it->second : Matrix(lspace.dim(n - 1), lspace.dim(n));
    }
    Matrix pmat(int n) const {
        auto it = proj_.find(n);
        return it != proj_.end() ? it->second : Matrix(hspace.dim(n), lspace.dim(n));
    }
    Matrix imat(int n) const {
        auto it = incl_.find(n);
        return it != incl_.end() ? it->second : Matrix(lspace.dim(n), hspace.dim(n));
    }
};

inline Contraction build_contraction(const Complex& c) {
    CheckReport basic = c.check();
    if (!basic.pass()) throw std::invalid_argument("build_contraction: " + basic.first_failure());
    Contraction ct;
    ct.lspace = c.space;

    for (int n : c.space.degrees()) {
        int dn = c.space.dim(n);
        int dnm = c.space.dim(n - 1);
        Matrix d_out = c.dmat(n);     // L^n     -> L^{n+1}
        Matrix d_in = c.dmat(n - 1);  // L^{n-1} -> L^n

        std::set<int> wset;
        for (int i = 0; i < dn; ++i) wset.insert(c.space.weight(n, i));

        Subspace accA = Subspace::zero(dn), accK = Subspace::zero(dn), accB = Subspace::zero(dn);
        Matrix hm(dnm, dn);
        std::vector<Vec> incl_cols, proj_rows;
        std::vector<std::string> hlabels;
        std::vector<int> hweights;

        for (int w : wset) {
            std::vector<int> idx, idx_up, idx_dn;
            for (int i = 0; i < dn; ++i)
                if (c.space.weight(n, i) == w) idx.push_back(i);
            for (int i = 0; i < c.space.dim(n + 1); ++i)
                if (c.space.weight(n + 1, i) == w) idx_up.push_back(i);
            for (int i = 0; i < dnm; ++i)
                if (c.space.weight(n - 1, i) == w) idx_dn.push_back(i);
            int bn = static_cast<int>(idx.size());
            int bdn = static_cast<int>(idx_dn.size());

            Matrix dblk(static_cast<int>(idx_up.size()), bn);
            for (size_t r = 0; r < idx_up.size(); ++r)
                for (int s = 0; s < bn; ++s) dblk.at(static_cast<int>(r), s) = d_out.at(idx_up[r], idx[s]);
            Matrix dprev(bn, bdn);
            for (int r = 0; r < bn; ++r)
                for (int s = 0; s < bdn; ++s) dprev.at(r, s) = d_in.at(idx[r], idx_dn[s]);

            Subspace Z = Subspace::from_rows(bn, kernel_basis(dblk));
            Subspace Bb = apply_image(dprev, Subspace::full(bdn));
            Subspace Kb = complement_within(Z, Bb);
            Subspace Ab = complement_within(Subspace::full(bn), Z);

            // Complement of the kernel one degree down; d maps it onto B.
            Subspace Zdn = Subspace::from_rows(bdn, kernel_basis(dprev));
            Subspace Adn = complement_within(Subspace::full(bdn), Zdn);
            Matrix dA = dprev * Adn.basis().transpose();

            std::vector<Vec> b_pre;  // A-preimages of the B basis, in block coordinates below
            for (int r = 0; r < Bb.dim(); ++r) {
                auto y = solve(dA, Bb.basis_row(r));
                if (!y) throw std::logic_error("build_contraction: image vector without preimage");
                Vec local(bdn);
                for (int a = 0; a < Adn.dim(); ++a)
                    for (int t = 0; t < bdn; ++t) local[t] = local[t] + (*y)[a] * Adn.basis().at(a, t);
                b_pre.push_back(std::move(local));
            }

            std::vector<Vec> srows;
            for (int r = 0; r < Ab.dim(); ++r) srows.push_back(Ab.basis_row(r));
            for (int r = 0; r < Kb.dim(); ++r) srows.push_back(Kb.basis_row(r));
            for (int r = 0; r < Bb.dim(); ++r) srows.push_back(Bb.basis_row(r));
            Matrix st = Matrix::from_rows(bn, srows).transpose();  // columns = A, K, B bases

            size_t koffset = proj_rows.size();
            proj_rows.resize(koffset + Kb.dim(), Vec(dn));
            for (int s = 0; s < bn; ++s) {
                Vec e(bn);
                e[s] = Rational(1);
                auto alpha = solve(st, e);
                if (!alpha) throw std::logic_error("build_contraction: block decomposition failed");
                for (int r = 0; r < Kb.dim(); ++r) proj_rows[koffset + r][idx[s]] = (*alpha)[Ab.dim() + r];
                for (int r = 0; r < Bb.dim(); ++r) {
                    Rational coef = (*alpha)[Ab.dim() + Kb.dim() + r];
                    if (coef.is_zero()) continue;
                    for (int t = 0; t < bdn; ++t)
                        hm.at(idx_dn[t], idx[s]) = hm.at(idx_dn[t], idx[s]) + coef * b_pre[r][t];
                }
            }

            auto embed = [&](const Subspace& s) {
                std::vector<Vec> rows;
                for (int r = 0; r < s.dim(); ++r) {
                    Vec full(dn);
                    Vec part = s.basis_row(r);
                    for (int t = 0; t < bn; ++t) full[idx[t]] = part[t];
                    rows.push_back(std::move(full));
                }
                return rows;
            };
            accA = span_sum(accA, Subspace::from_rows(dn, embed(Ab)));
            accK = span_sum(accK, Subspace::from_rows(dn, embed(Kb)));
            accB = span_sum(accB, Subspace::from_rows(dn, embed(Bb)));

            std::vector<Vec> kfull = embed(Kb);
            for (int r = 0; r < Kb.dim(); ++r) {
                Vec part = Kb.basis_row(r);
                int pivot = 0;
                while (part[pivot].is_zero()) ++pivot;
                hlabels.push_back(c.space.label(n, idx[pivot]));
                hweights.push_back(w);
                incl_cols.push_back(kfull[r]);
            }
        }

        ct.A[n] = accA;
        ct.K[n] = accK;
        ct.B[n] = accB;
        int hd = static_cast<int>(incl_cols.size());
        if (hd > 0) {
            ct.hspace.add_degree(n, hlabels, hweights);
            Matrix im(dn, hd);
            for (int r = 0; r < hd; ++r)
                for (int t = 0; t < dn; ++t) im.at(t, r) = incl_cols[r][t];
            ct.incl_[n] = im;
            ct.proj_[n] = Matrix::from_rows(dn, proj_rows);
        }
        if (!hm.is_zero()) ct.h_[n] = hm;
    }
    return ct;
}

// Assembles a Contraction from caller-chosen decompositions L^n = A ⊕ K ⊕ B.
// The K part is given as an ordered list of vectors — their order fixes the
// basis (and index layout) of the cohomology space — with one label and one
// weight per vector.  A and B enter only through their spans.  Throws if the
// parts fail to decompose a degree or if some B vector has no d-preimage in
// the A part one degree down; the contraction identities themselves should be
// re-verified with check_contraction.
inline Contraction contraction_from_parts(const Complex& c,
                                          const std::map<int, Subspace>& A,
                                          const std::map<int, std::vector<Vec>>& K,
                                          const std::map<int, Subspace>& B,
                                          const std::map<int, std::vector<std::string>>& klabels,
                                          const std::map<int, std::vector<int>>& kweights) {
    auto sub_at = [](const std::map<int, Subspace>& m, int n, int dim) {
        auto it = m.find(n);
        return it != m.end() ? it->second : Subspace::zero(dim);
    };
    Contraction ct;
    ct.lspace = c.space;
    for (int n : c.space.degrees()) {
        int dn = c.space.dim(n);
        Subspace An = sub_at(A, n, dn);
        Subspace Bn = sub_at(B, n, dn);
        std::vector<Vec> Kn;
        if (auto it = K.find(n); it != K.end()) Kn = it->second;
        int kd = static_cast<int>(Kn.size());
        std::string sn = std::to_string(n);
        if (An.ambient() != dn || Bn.ambient() != dn)
            throw std::invalid_argument("contraction_from_parts: ambient mismatch in degree " + sn);
        if (An.dim() + kd + Bn.dim() != dn)
            throw std::invalid_argument("contraction_from_parts: parts do not fill degree " + sn);

        // Preimages of the B basis inside the A part one degree down.
        int dnm = c.space.dim(n - 1);
        Subspace Adn = sub_at(A, n - 1, dnm);
        Matrix dA = c.dmat(n - 1) * Adn.basis().transpose();
        std::vector<Vec> b_pre;
        for (int r = 0; r < Bn.dim(); ++r) {
            auto y = solve(dA, Bn.basis_row(r));
            if (!y)
                throw std::invalid_argument(
                    "contraction_from_parts: B is not d(A) in degree " + sn);
            Vec local(dnm);
            for (int a = 0; a < Adn.dim(); ++a)
                for (int t = 0; t < dnm; ++t) local[t] = local[t] + (*y)[a] * Adn.basis().at(a, t);
            b_pre.push_back(std::move(local));
        }

        std::vector<Vec> srows;
        for (int r = 0; r < An.dim(); ++r) srows.push_back(An.basis_row(r));
        for (const Vec& v : Kn) {
            if (static_cast<int>(v.size()) != dn)
                throw std::invalid_argument("contraction_from_parts: K vector size in degree " + sn);
            srows.push_back(v);
        }
        for (int r = 0; r < Bn.dim(); ++r) srows.push_back(Bn.basis_row(r));
        Matrix st = Matrix::from_rows(dn, srows).transpose();

        Matrix hm(dnm, dn);
        std::vector<Vec> proj_rows(kd, Vec(dn));
        for (int s = 0; s < dn; ++s) {
            Vec e(dn);
            e[s] = Rational(1);
            auto alpha = solve(st, e);
            if (!alpha)
                throw std::invalid_argument(
                    "contraction_from_parts: parts are not a direct sum in degree " + sn);
            for (int r = 0; r < kd; ++r) proj_rows[r][s] = (*alpha)[An.dim() + r];
            for (int r = 0; r < Bn.dim(); ++r) {
                Rational coef = (*alpha)[An.dim() + kd + r];
                if (coef.is_zero()) continue;
                for (int t = 0; t < dnm; ++t)
                    hm.at(t, s) = hm.at(t, s) + coef * b_pre[r][t];
            }
        }

        ct.A[n] = An;
        ct.K[n] = Subspace::from_rows(dn, Kn);
        ct.B[n] = Bn;
        if (kd > 0) {
            // Labels and weights default to those of each K vector's first
            // nonzero coordinate.
            std::vector<std::string> labels(kd);
            std::vector<int> weights(kd, 0);
            for (int r = 0; r < kd; ++r) {
                int pivot = 0;
                while (pivot < dn && Kn[r][pivot].is_zero()) ++pivot;
                if (pivot == dn)
                    throw std::invalid_argument(
                        "contraction_from_parts: zero K vector in degree " + sn);
                labels[r] = c.space.label(n, pivot);
                weights[r] = c.space.weight(n, pivot);
            }
            if (auto it = klabels.find(n); it != klabels.end()) labels = it->second;
            if (auto it = kweights.find(n); it != kweights.end()) weights = it->second;
            if (static_cast<int>(labels.size()) != kd || static_cast<int>(weights.size()) != kd)
                throw std::invalid_argument(
                    "contraction_from_parts: one label and weight per K vector in degree " + sn);
            ct.hspace.add_degree(n, labels, weights);
            Matrix im(dn, kd);
            for (int r = 0; r < kd; ++r)
                for (int t = 0; t < dn; ++t) im.at(t, r) = Kn[r][t];
            ct.incl_[n] = im;
            ct.proj_[n] = Matrix::from_rows(dn, proj_rows);
        }
        if (!hm.is_zero()) ct.h_[n] = hm;
    }
    return ct;
}

inline CheckReport check_contraction(const Complex& c, const Contraction& ct) {
    CheckReport rep;
    for (int n : c.space.degrees()) {
        std::string sn = std::to_string(n);
        int dn = c.space.dim(n);
        Matrix id = Matrix::identity(dn);
        Matrix lhs = c.dmat(n - 1) * ct.hmat(n) + ct.hmat(n + 1) * c.dmat(n);
        Matrix rhs = id - ct.imat(n) * ct.pmat(n);
        rep.add("contraction.homotopy[" + sn + "]", lhs == rhs, "dh + hd ≠ id - ip in degree " + sn);
        rep.add("contraction.pi[" + sn + "]",
                ct.pmat(n) * ct.imat(n) == Matrix::identity(ct.hspace.dim(n)), "pi ≠ id in degree " + sn);
        rep.add("contraction.di[" + sn + "]", (c.dmat(n) * ct.imat(n)).is_zero(),
                "d∘i ≠ 0 in degree " + sn);
        rep.add("contraction.pd[" + sn + "]", (ct.pmat(n + 1) * c.dmat(n)).is_zero(),
                "p∘d ≠ 0 in degree " + sn);
        rep.add("contraction.hh[" + sn + "]", (ct.hmat(n - 1) * ct.hmat(n)).is_zero(),
                "h∘h ≠ 0 in degree " + sn);
        rep.add("contraction.hi[" + sn + "]", (ct.hmat(n) * ct.imat(n)).is_zero(),
                "h∘i ≠ 0 in degree " + sn);
        rep.add("contraction.ph[" + sn + "]", (ct.pmat(n - 1) * ct.hmat(n)).is_zero(),
                "p∘h ≠ 0 in degree " + sn);
        auto weights_ok = [&](const Matrix& m, int out_deg, bool out_in_h, int in_deg) {
            for (int r = 0; r < m.rows(); ++r)
                for (int s = 0; s < m.cols(); ++s)
                    if (!m.at(r, s).is_zero()) {
                        int wo = out_in_h ? ct.hspace.weight(out_deg, r) : c.space.weight(out_deg, r);
                        if (wo != c.space.weight(in_deg, s)) return false;
                    }
            return true;
        };
        rep.add("contraction.h_weights[" + sn + "]", weights_ok(ct.hmat(n), n - 1, false, n),
                "h mixes weights in degree " + sn);
        rep.add("contraction.p_weights[" + sn + "]", weights_ok(ct.pmat(n), n, true, n),
                "p mixes weights in degree " + sn);
    }
    return rep;
}

}  // namespace halg
