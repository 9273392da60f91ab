#pragma once
// Weighted-homogeneous presentations of deformation spaces.  For a strong
// homotopy structure on cohomology with nothing in degrees <= 0 and positive
// weights on the degree-one classes, the deformation equation
// sum_r (1/r!) l_r(x, ..., x) = 0 cuts the parameter space of degree-one
// coordinates by finitely many polynomial relations: weight counting bounds
// the arities that can contribute, every relation is homogeneous for the
// weight grading, and an optional free factor (extra unobstructed
// parameters) enters the generator list but never the relations.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halg/artin.hpp"
#include "halg/linfinity.hpp"
#include "halg/transfer.hpp"

namespace halg {

struct Relation {
    MPoly poly;
    int weight = 0;
    std::string target;  // label of the degree-two class the relation obstructs into
};

struct Presentation {
    std::vector<std::string> gen_labels;
    std::vector<int> gen_weights;
    int h1_count = 0;  // generators beyond this index form the free factor
    std::vector<Relation> relations;
};

inline Presentation extract_presentation(const LInfinity& h, int free_dim,
                                         std::vector<int> free_weights = {},
                                         std::vector<std::string> free_labels = {}) {
    const GradedSpace& hs = h.space();
    for (int n : hs.degrees())
        if (n <= 0 && hs.dim(n) > 0)
            throw std::invalid_argument(
                "extract_presentation: nonzero cohomology in degree at most zero");
    int h1 = hs.dim(1);
    int h2 = hs.dim(2);
    std::vector<int> w1, w2;
    for (int i = 0; i < h1; ++i) w1.push_back(hs.weight(1, i));
    for (int j = 0; j < h2; ++j) w2.push_back(hs.weight(2, j));
    if (!detail::ops_weight_additive(hs, hs, h.ops().table))
        throw std::invalid_argument("extract_presentation: operations are not weight additive");
    VanishingPrediction vp = predict_vanishing(w1, w2);  // validates positivity of w1, w2
    if (h.max_arity() < vp.max_arity)
        throw std::invalid_argument("extract_presentation: arity cap below the weight bound");

    if (free_dim < 0) throw std::invalid_argument("extract_presentation: negative free part");
    if (free_weights.empty()) free_weights.assign(static_cast<size_t>(free_dim), 0);
    if (static_cast<int>(free_weights.size()) != free_dim)
        throw std::invalid_argument("extract_presentation: free part weights have wrong length");
    if (free_labels.empty())
        for (int i = 0; i < free_dim; ++i) free_labels.push_back("s" + std::to_string(i + 1));
    if (static_cast<int>(free_labels.size()) != free_dim)
        throw std::invalid_argument("extract_presentation: free part labels have wrong length");

    Presentation out;
    out.h1_count = h1;
    for (int i = 0; i < h1; ++i) {
        out.gen_labels.push_back(hs.label(1, i));
        out.gen_weights.push_back(w1[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < free_dim; ++i) {
        out.gen_labels.push_back(free_labels[static_cast<size_t>(i)]);
        out.gen_weights.push_back(free_weights[static_cast<size_t>(i)]);
    }
    int ngen = h1 + free_dim;

    // Raw relation polynomial for each degree-two basis class: the
    // coordinates of sum_{r} (1/r!) l_r(x, ..., x) expanded in multisets of
    // degree-one generators.
    std::vector<MPoly> raw(static_cast<size_t>(h2));
    std::vector<int> tuple;
    std::function<void(int)> rec = [&](int start) {
        int r = static_cast<int>(tuple.size());
        if (r >= 2) {
            BasisKey key;
            for (int i : tuple) key.push_back({1, i});
            Elt val = h.op_basis(key);
            if (!val.is_zero()) {
                Rational factor(1);
                int run = 1;
                for (size_t i = 1; i <= tuple.size(); ++i) {
                    if (i < tuple.size() && tuple[i] == tuple[i - 1]) {
                        ++run;
                    } else {
                        factor = factor / factorial(run);
                        run = 1;
                    }
                }
                Monomial m{std::vector<int>(static_cast<size_t>(ngen), 0)};
                for (int i : tuple) ++m.e[static_cast<size_t>(i)];
                for (int j = 0; j < h2; ++j) {
                    const Rational& c = val.coords[static_cast<size_t>(j)];
                    if (c.is_zero()) continue;
                    raw[static_cast<size_t>(j)].coeff[m] += factor * c;
                }
            }
        }
        if (r >= vp.max_arity) return;
        for (int i = start; i < h1; ++i) {
            tuple.push_back(i);
            rec(i);
            tuple.pop_back();
        }
    };
    rec(0);

    // Weight additivity of the input makes every raw polynomial homogeneous
    // of the weight of its target class.
    for (int j = 0; j < h2; ++j) {
        for (const auto& [m, c] : raw[static_cast<size_t>(j)].coeff) {
            if (c.is_zero()) continue;
            int w = 0;
            for (int i = 0; i < ngen; ++i)
                w += m.e[static_cast<size_t>(i)] * out.gen_weights[static_cast<size_t>(i)];
            if (w != w2[static_cast<size_t>(j)])
                throw std::logic_error("extract_presentation: inhomogeneous relation");
        }
    }

    // Echelon-normalize the relations within each weight so the output is a
    // canonical generating set.
    std::set<int> weights_present;
    for (int j = 0; j < h2; ++j)
        if (!raw[static_cast<size_t>(j)].is_zero()) weights_present.insert(w2[static_cast<size_t>(j)]);
    for (int w : weights_present) {
        std::vector<int> rows;  // degree-two indices of this weight with content
        std::set<Monomial> monos;
        for (int j = 0; j < h2; ++j) {
            if (w2[static_cast<size_t>(j)] != w || raw[static_cast<size_t>(j)].is_zero()) continue;
            rows.push_back(j);
            for (const auto& [m, c] : raw[static_cast<size_t>(j)].coeff)
                if (!c.is_zero()) monos.insert(m);
        }
        std::vector<Monomial> cols(monos.begin(), monos.end());
        Matrix mat(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t r = 0; r < rows.size(); ++r) {
            const MPoly& p = raw[static_cast<size_t>(rows[r])];
            for (size_t c = 0; c < cols.size(); ++c) {
                auto it = p.coeff.find(cols[c]);
                if (it != p.coeff.end()) mat.at(static_cast<int>(r), static_cast<int>(c)) = it->second;
            }
        }
        RrefResult rr = rref(mat);
        for (int r = 0; r < rr.rank; ++r) {
            Relation rel;
            rel.weight = w;
            // Name the relation after the first original class supported on
            // its pivot monomial, and scale the echelon row by that class's
            // pivot coefficient: with a single relation per weight this makes
            // the polynomial literally the curvature coordinate of the class.
            const Monomial& piv = cols[static_cast<size_t>(rr.pivot_cols[static_cast<size_t>(r)])];
            Rational scale(1);
            for (int j : rows) {
                auto it = raw[static_cast<size_t>(j)].coeff.find(piv);
                if (it != raw[static_cast<size_t>(j)].coeff.end() && !it->second.is_zero()) {
                    rel.target = hs.label(2, j);
                    scale = it->second;
                    break;
                }
            }
            for (size_t c = 0; c < cols.size(); ++c) {
                const Rational& v = rr.reduced.at(r, static_cast<int>(c));
                if (!v.is_zero()) rel.poly.coeff[cols[c]] = scale * v;
            }
            out.relations.push_back(std::move(rel));
        }
    }
    return out;
}

inline std::string presentation_str(const Presentation& p) {
    std::string out = "generators:";
    for (size_t i = 0; i < p.gen_labels.size(); ++i) {
        out += (i ? ", " : " ") + p.gen_labels[i] + " (weight " +
               std::to_string(p.gen_weights[i]) + ")";
        if (static_cast<int>(i) == p.h1_count - 1 && p.h1_count < static_cast<int>(p.gen_labels.size()))
            out += " |";
    }
    out += "\nrelations:";
    if (p.relations.empty()) out += " none";
    for (const auto& rel : p.relations)
        out += "\n  " + mpoly_str(rel.poly, p.gen_labels) + "   [weight " +
               std::to_string(rel.weight) + ", target " + rel.target + "]";
    return out;
}

}  // namespace halg
