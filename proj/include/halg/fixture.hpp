#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halg/augmentation.hpp"
#include "halg/dgla.hpp"
#include "halg/filtration.hpp"
#include "halg/linfinity.hpp"
#include "halg/nilpotent.hpp"

namespace halg {

// Line-oriented fixture files.  Every document starts with "kind <name>";
// the remaining lines are directives of the form
//
//   head tokens : payload tokens
//
// with '#' starting a comment and blank lines ignored.  Basis elements are
// referred to by label, matrices and vectors entry-wise with exact rational
// entries ("p", "-p", "p/q").  Parsing and serialization are inverse to each
// other: serialize(parse(text)) is the canonical form of text, and parsing
// it back yields an identical object.

enum class FixtureKind { dgla, linf, filtration, nilpotent, augmentation, weight_profile };

inline std::string fixture_kind_name(FixtureKind k) {
    switch (k) {
        case FixtureKind::dgla: return "dgla";
        case FixtureKind::linf: return "linf";
        case FixtureKind::filtration: return "filtration";
        case FixtureKind::nilpotent: return "nilpotent";
        case FixtureKind::augmentation: return "augmentation";
        case FixtureKind::weight_profile: return "weight-profile";
    }
    return "?";
}

struct FixtureDocument {
    FixtureKind kind = FixtureKind::dgla;
    std::optional<DGLA> dgla;                    // kind dgla
    std::optional<LInfinity> linf;               // kind linf
    std::optional<Filtration> filtration;        // kind filtration
    std::optional<NilpotentEndo> nilpotent;      // kind nilpotent
    std::optional<Filtration> weight_filtration; // optional W rows of a nilpotent fixture
    std::optional<DGLA> aug_source;              // kind augmentation: the algebra L
    std::optional<Augmentation> augmentation;    // kind augmentation: target and eps
    std::vector<int> h1_weights, h2_weights;     // kind weight-profile
};

// Parse failure.  line/col are 1-based and point at the offending token;
// semantic violations detected only after the full document is read carry
// line = col = 0 and just name the broken invariant.
struct FixtureError : std::runtime_error {
    int line = 0;
    int col = 0;
    FixtureError(const std::string& msg, int l = 0, int c = 0)
        : std::runtime_error(l > 0 ? "line " + std::to_string(l) + ", col " + std::to_string(c) +
                                         ": " + msg
                                   : msg),
          line(l),
          col(c) {}
};

namespace fixio {

struct Tok {
    std::string text;
    int line;
    int col;
};

using PLine = std::vector<Tok>;

inline std::vector<PLine> tokenize(const std::string& text) {
    std::vector<PLine> out;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        PLine toks;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            toks.push_back({line.substr(i, j - i), lineno, static_cast<int>(i) + 1});
            i = j;
        }
        if (!toks.empty()) out.push_back(std::move(toks));
        if (nl == std::string::npos) break;
    }
    return out;
}

inline int to_int(const Tok& t) {
    std::size_t used = 0;
    long v = 0;
    bool ok = !t.text.empty();
    if (ok) {
        try {
            v = std::stol(t.text, &used);
        } catch (...) {
            ok = false;
        }
        if (used != t.text.size()) ok = false;
    }
    if (!ok) throw FixtureError("expected integer, got '" + t.text + "'", t.line, t.col);
    return static_cast<int>(v);
}

inline Rational to_rat(const Tok& t) {
    try {
        return Rational(t.text);
    } catch (const std::exception& e) {
        throw FixtureError(std::string("cannot parse rational: ") + e.what(), t.line, t.col);
    }
}

// Splits a directive line into head (after the directive word) and payload,
// requiring the literal ':' separator when the directive carries a payload.
struct LineView {
    const PLine& toks;
    std::size_t head_len;  // number of head tokens after the directive word

    std::vector<Tok> head() const {
        std::vector<Tok> h;
        for (std::size_t i = 1; i <= head_len && i < toks.size(); ++i) h.push_back(toks[i]);
        if (h.size() != head_len)
            throw FixtureError("directive '" + toks[0].text + "' is missing arguments",
                               toks[0].line, toks[0].col);
        return h;
    }

    std::vector<Tok> payload() const {
        std::size_t sep = 1 + head_len;
        if (sep >= toks.size() || toks[sep].text != ":") {
            const Tok& at = sep < toks.size() ? toks[sep] : toks.back();
            throw FixtureError("expected ':' after '" + toks[0].text + "' arguments", at.line,
                               at.col);
        }
        return std::vector<Tok>(toks.begin() + static_cast<long>(sep) + 1, toks.end());
    }
};

inline std::vector<Rational> rat_payload(const LineView& lv, int expected) {
    std::vector<Tok> p = lv.payload();
    if (static_cast<int>(p.size()) != expected)
        throw FixtureError("expected " + std::to_string(expected) + " entries, got " +
                               std::to_string(p.size()),
                           lv.toks[0].line, lv.toks[0].col);
    std::vector<Rational> out;
    out.reserve(p.size());
    for (const Tok& t : p) out.push_back(to_rat(t));
    return out;
}

// Shared builder for a labeled graded space plus a label lookup table.
struct SpaceBuilder {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<int>> weights;
    std::map<std::string, std::pair<int, int>> lookup;

    void add_degree(const LineView& lv) {
        int n = to_int(lv.head()[0]);
        if (labels.count(n))
            throw FixtureError("degree " + std::to_string(n) + " declared twice", lv.toks[0].line,
                               lv.toks[0].col);
        std::vector<Tok> p = lv.payload();
        std::vector<std::string> ls;
        for (const Tok& t : p) {
            if (lookup.count(t.text))
                throw FixtureError("duplicate label '" + t.text + "'", t.line, t.col);
            lookup[t.text] = {n, static_cast<int>(ls.size())};
            ls.push_back(t.text);
        }
        labels[n] = std::move(ls);
    }

    void add_weights(const LineView& lv) {
        int n = to_int(lv.head()[0]);
        if (!labels.count(n))
            throw FixtureError("weight line for undeclared degree " + std::to_string(n),
                               lv.toks[0].line, lv.toks[0].col);
        if (weights.count(n))
            throw FixtureError("weights for degree " + std::to_string(n) + " declared twice",
                               lv.toks[0].line, lv.toks[0].col);
        std::vector<Tok> p = lv.payload();
        if (p.size() != labels[n].size())
            throw FixtureError("expected " + std::to_string(labels[n].size()) +
                                   " weights for degree " + std::to_string(n),
                               lv.toks[0].line, lv.toks[0].col);
        std::vector<int> ws;
        for (const Tok& t : p) ws.push_back(to_int(t));
        weights[n] = std::move(ws);
    }

    std::pair<int, int> resolve(const Tok& t) const {
        auto it = lookup.find(t.text);
        if (it == lookup.end())
            throw FixtureError("unknown basis label '" + t.text + "'", t.line, t.col);
        return it->second;
    }

    GradedSpace build() const {
        GradedSpace s;
        for (const auto& [n, ls] : labels) {
            auto wit = weights.find(n);
            s.add_degree(n, ls, wit == weights.end() ? std::vector<int>{} : wit->second);
        }
        return s;
    }
};

// Accumulates per-column differentials and bracket lines for one algebra.
struct AlgebraLines {
    SpaceBuilder space;
    std::vector<std::pair<Tok, std::vector<Rational>>> dlines;   // label token, coords
    std::vector<std::tuple<Tok, Tok, std::vector<Rational>>> blines;

    DGLA build() const {
        GradedSpace gs = space.build();
        DGLA L(gs);
        std::map<int, Matrix> dmats;
        for (const auto& [tok, coords] : dlines) {
            auto [n, i] = space.resolve(tok);
            auto it = dmats.find(n);
            if (it == dmats.end())
                it = dmats.emplace(n, Matrix(gs.dim(n + 1), gs.dim(n))).first;
            for (std::size_t r = 0; r < coords.size(); ++r)
                it->second.at(static_cast<int>(r), i) = coords[r];
        }
        for (auto& [n, m] : dmats) L.set_differential(n, m);
        std::set<std::tuple<int, int, int, int>> seen;
        for (const auto& [t1, t2, coords] : blines) {
            auto [p, i] = space.resolve(t1);
            auto [q, j] = space.resolve(t2);
            std::tuple<int, int, int, int> canon =
                std::make_pair(p, i) <= std::make_pair(q, j) ? std::make_tuple(p, i, q, j)
                                                             : std::make_tuple(q, j, p, i);
            if (!seen.insert(canon).second)
                throw FixtureError("duplicate bracket for [" + t1.text + "," + t2.text + "]",
                                   t1.line, t1.col);
            Vec v(coords.begin(), coords.end());
            try {
                L.set_bracket(p, i, q, j, v);
            } catch (const std::exception& e) {
                throw FixtureError(e.what(), t1.line, t1.col);
            }
        }
        return L;
    }

    // Expected payload length for a d line on this label.
    int d_len(const Tok& t) const {
        auto [n, i] = space.resolve(t);
        (void)i;
        auto it = space.labels.find(n + 1);
        return it == space.labels.end() ? 0 : static_cast<int>(it->second.size());
    }
    int b_len(const Tok& t1, const Tok& t2) const {
        auto [p, i] = space.resolve(t1);
        auto [q, j] = space.resolve(t2);
        (void)i;
        (void)j;
        auto it = space.labels.find(p + q);
        return it == space.labels.end() ? 0 : static_cast<int>(it->second.size());
    }
};

inline Filtration rows_to_filtration(int ambient,
                                     const std::map<int, std::vector<Vec>>& rows) {
    std::map<int, Subspace> steps;
    for (const auto& [k, rs] : rows) steps.emplace(k, Subspace::from_rows(ambient, rs));
    try {
        return Filtration(ambient, steps);
    } catch (const std::exception& e) {
        throw FixtureError(e.what());
    }
}

inline std::string join_rats(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += v[i].str();
    }
    return out;
}

inline void emit_space(std::ostringstream& os, const GradedSpace& s) {
    for (int n : s.degrees()) {
        os << "degree " << n << " :";
        for (int i = 0; i < s.dim(n); ++i) os << ' ' << s.label(n, i);
        os << '\n';
        bool nontrivial = false;
        for (int i = 0; i < s.dim(n); ++i)
            if (s.weight(n, i) != 0) nontrivial = true;
        if (nontrivial) {
            os << "weight " << n << " :";
            for (int i = 0; i < s.dim(n); ++i) os << ' ' << s.weight(n, i);
            os << '\n';
        }
    }
}

inline void emit_dgla_body(std::ostringstream& os, const DGLA& L) {
    const GradedSpace& s = L.space();
    emit_space(os, L.space());
    for (int n : s.degrees()) {
        Matrix d = L.complex().dmat(n);
        for (int j = 0; j < s.dim(n); ++j) {
            Vec col(d.rows());
            bool nonzero = false;
            for (int r = 0; r < d.rows(); ++r) {
                col[static_cast<std::size_t>(r)] = d.at(r, j);
                if (!d.at(r, j).is_zero()) nonzero = true;
            }
            if (nonzero) os << "d " << s.label(n, j) << " : " << join_rats(col) << '\n';
        }
    }
    for (int p : s.degrees())
        for (int i = 0; i < s.dim(p); ++i)
            for (int q : s.degrees())
                for (int j = 0; j < s.dim(q); ++j) {
                    if (std::make_pair(p, i) > std::make_pair(q, j)) continue;
                    Vec v = L.bracket_basis(p, i, q, j);
                    bool nonzero = false;
                    for (const Rational& c : v)
                        if (!c.is_zero()) nonzero = true;
                    if (nonzero)
                        os << "bracket " << s.label(p, i) << ' ' << s.label(q, j) << " : "
                           << join_rats(v) << '\n';
                }
}

inline void emit_filtration_rows(std::ostringstream& os, const std::string& word,
                                 const Filtration& f) {
    for (const auto& [k, sub] : f.steps())
        for (int r = 0; r < sub.dim(); ++r)
            os << word << ' ' << k << " : " << join_rats(sub.basis_row(r)) << '\n';
}

}  // namespace fixio

inline FixtureDocument parse_fixture(const std::string& text) {
    using namespace fixio;
    std::vector<PLine> lines = tokenize(text);
    if (lines.empty()) throw FixtureError("missing 'kind' line", 1, 1);
    const PLine& first = lines.front();
    if (first[0].text != "kind")
        throw FixtureError("expected 'kind <name>' on the first line", first[0].line,
                           first[0].col);
    if (first.size() < 2)
        throw FixtureError("expected 'kind <name>' on the first line", first[0].line,
                           first[0].col + static_cast<int>(first[0].text.size()));
    FixtureDocument doc;
    const Tok& kt = first[1];
    if (kt.text == "dgla") doc.kind = FixtureKind::dgla;
    else if (kt.text == "linf") doc.kind = FixtureKind::linf;
    else if (kt.text == "filtration") doc.kind = FixtureKind::filtration;
    else if (kt.text == "nilpotent") doc.kind = FixtureKind::nilpotent;
    else if (kt.text == "augmentation") doc.kind = FixtureKind::augmentation;
    else if (kt.text == "weight-profile") doc.kind = FixtureKind::weight_profile;
    else throw FixtureError("unknown fixture kind '" + kt.text + "'", kt.line, kt.col);

    std::vector<PLine> body(lines.begin() + 1, lines.end());
    auto bad_directive = [&](const Tok& t) -> FixtureError {
        return FixtureError("unknown directive '" + t.text + "' for kind " +
                                fixture_kind_name(doc.kind),
                            t.line, t.col);
    };

    switch (doc.kind) {
        case FixtureKind::dgla: {
            AlgebraLines alg;
            // Declarations first so directive order in the file is free.
            for (const PLine& pl : body) {
                if (pl[0].text == "degree") alg.space.add_degree({pl, 1});
                else if (pl[0].text != "weight" && pl[0].text != "d" && pl[0].text != "bracket")
                    throw bad_directive(pl[0]);
            }
            for (const PLine& pl : body)
                if (pl[0].text == "weight") alg.space.add_weights({pl, 1});
            for (const PLine& pl : body) {
                LineView lv{pl, 0};
                if (pl[0].text == "d") {
                    lv.head_len = 1;
                    Tok lab = lv.head()[0];
                    alg.space.resolve(lab);
                    alg.dlines.emplace_back(lab, rat_payload(lv, alg.d_len(lab)));
                } else if (pl[0].text == "bracket") {
                    lv.head_len = 2;
                    auto h = lv.head();
                    alg.space.resolve(h[0]);
                    alg.space.resolve(h[1]);
                    alg.blines.emplace_back(h[0], h[1], rat_payload(lv, alg.b_len(h[0], h[1])));
                }
            }
            doc.dgla = alg.build();
            break;
        }
        case FixtureKind::linf: {
            SpaceBuilder sb;
            std::optional<int> cap;
            for (const PLine& pl : body) {
                if (pl[0].text == "degree") sb.add_degree({pl, 1});
                else if (pl[0].text == "cap") {
                    if (cap) throw FixtureError("duplicate cap line", pl[0].line, pl[0].col);
                    cap = to_int(LineView{pl, 1}.head()[0]);
                } else if (pl[0].text != "weight" && pl[0].text != "op")
                    throw bad_directive(pl[0]);
            }
            for (const PLine& pl : body)
                if (pl[0].text == "weight") sb.add_weights({pl, 1});
            if (!cap) throw FixtureError("kind linf requires a 'cap' line");
            if (*cap < 1) throw FixtureError("cap must be at least 1");
            LInfinity S(sb.build(), *cap);
            std::set<BasisKey> seen;
            for (const PLine& pl : body) {
                if (pl[0].text != "op") continue;
                std::size_t sep = 1;
                while (sep < pl.size() && pl[sep].text != ":") ++sep;
                if (sep >= pl.size())
                    throw FixtureError("expected ':' after 'op' arguments", pl[0].line,
                                       pl[0].col);
                if (sep == 1)
                    throw FixtureError("operation needs at least one argument", pl[0].line,
                                       pl[0].col);
                BasisKey key;
                for (std::size_t i = 1; i < sep; ++i) {
                    auto di = sb.resolve(pl[i]);
                    if (!key.empty() && di < key.back())
                        throw FixtureError(
                            "operation arguments must be listed in basis order", pl[i].line,
                            pl[i].col);
                    key.push_back(di);
                }
                if (static_cast<int>(key.size()) > *cap)
                    throw FixtureError("operation arity exceeds the declared cap", pl[0].line,
                                       pl[0].col);
                if (!seen.insert(key).second)
                    throw FixtureError("duplicate operation line", pl[0].line, pl[0].col);
                int outdeg = S.ops().out_degree(key);
                int outdim = S.space().dim(outdeg);
                LineView lv{pl, sep - 1};
                std::vector<Rational> coords = rat_payload(lv, outdim);
                Vec v(coords.begin(), coords.end());
                bool nonzero = false;
                for (const Rational& c : v)
                    if (!c.is_zero()) nonzero = true;
                if (nonzero) S.set_op(key, Elt{outdeg, v});
            }
            doc.linf = std::move(S);
            break;
        }
        case FixtureKind::filtration: {
            std::optional<int> ambient;
            std::map<int, std::vector<Vec>> rows;
            for (const PLine& pl : body) {
                if (pl[0].text == "ambient") {
                    if (ambient)
                        throw FixtureError("duplicate ambient line", pl[0].line, pl[0].col);
                    ambient = to_int(LineView{pl, 1}.head()[0]);
                } else if (pl[0].text == "row") {
                    if (!ambient)
                        throw FixtureError("'row' before 'ambient'", pl[0].line, pl[0].col);
                    LineView lv{pl, 1};
                    int k = to_int(lv.head()[0]);
                    std::vector<Rational> coords = rat_payload(lv, *ambient);
                    rows[k].emplace_back(coords.begin(), coords.end());
                } else
                    throw bad_directive(pl[0]);
            }
            if (!ambient) throw FixtureError("kind filtration requires an 'ambient' line");
            doc.filtration = fixio::rows_to_filtration(*ambient, rows);
            break;
        }
        case FixtureKind::nilpotent: {
            std::optional<int> dim;
            std::map<int, std::vector<Rational>> nrows;
            std::map<int, std::vector<Vec>> wrows;
            for (const PLine& pl : body) {
                if (pl[0].text == "dim") {
                    if (dim) throw FixtureError("duplicate dim line", pl[0].line, pl[0].col);
                    dim = to_int(LineView{pl, 1}.head()[0]);
                    if (*dim < 0)
                        throw FixtureError("dimension must be nonnegative", pl[0].line,
                                           pl[0].col);
                } else if (pl[0].text == "nrow") {
                    if (!dim) throw FixtureError("'nrow' before 'dim'", pl[0].line, pl[0].col);
                    LineView lv{pl, 1};
                    int i = to_int(lv.head()[0]);
                    if (i < 0 || i >= *dim)
                        throw FixtureError("row index out of range", lv.toks[1].line,
                                           lv.toks[1].col);
                    if (nrows.count(i))
                        throw FixtureError("duplicate nrow " + std::to_string(i), pl[0].line,
                                           pl[0].col);
                    nrows[i] = rat_payload(lv, *dim);
                } else if (pl[0].text == "wrow") {
                    if (!dim) throw FixtureError("'wrow' before 'dim'", pl[0].line, pl[0].col);
                    LineView lv{pl, 1};
                    int k = to_int(lv.head()[0]);
                    std::vector<Rational> coords = rat_payload(lv, *dim);
                    wrows[k].emplace_back(coords.begin(), coords.end());
                } else
                    throw bad_directive(pl[0]);
            }
            if (!dim) throw FixtureError("kind nilpotent requires a 'dim' line");
            Matrix m(*dim, *dim);
            for (const auto& [i, row] : nrows)
                for (std::size_t j = 0; j < row.size(); ++j)
                    m.at(i, static_cast<int>(j)) = row[j];
            try {
                doc.nilpotent = make_nilpotent(m);
            } catch (const std::exception& e) {
                throw FixtureError(e.what());
            }
            if (!wrows.empty()) doc.weight_filtration = fixio::rows_to_filtration(*dim, wrows);
            break;
        }
        case FixtureKind::augmentation: {
            AlgebraLines alg;
            SpaceBuilder tsb;
            std::vector<std::tuple<Tok, Tok, std::vector<Rational>>> tbr;
            std::vector<std::pair<Tok, std::vector<Rational>>> epslines;
            bool have_target = false;
            for (const PLine& pl : body) {
                const std::string& w = pl[0].text;
                if (w == "degree") alg.space.add_degree({pl, 1});
                else if (w == "target") {
                    if (have_target)
                        throw FixtureError("duplicate target line", pl[0].line, pl[0].col);
                    have_target = true;
                    // Reuse the degree machinery: target basis lives in degree 0.
                    std::vector<Tok> p = LineView{pl, 0}.payload();
                    std::vector<std::string> ls;
                    for (const Tok& t : p) {
                        if (tsb.lookup.count(t.text))
                            throw FixtureError("duplicate label '" + t.text + "'", t.line,
                                               t.col);
                        tsb.lookup[t.text] = {0, static_cast<int>(ls.size())};
                        ls.push_back(t.text);
                    }
                    tsb.labels[0] = std::move(ls);
                } else if (w != "weight" && w != "d" && w != "bracket" && w != "tbracket" &&
                           w != "eps")
                    throw bad_directive(pl[0]);
            }
            for (const PLine& pl : body)
                if (pl[0].text == "weight") alg.space.add_weights({pl, 1});
            if (!have_target) throw FixtureError("kind augmentation requires a 'target' line");
            int tdim = tsb.labels.count(0) ? static_cast<int>(tsb.labels[0].size()) : 0;
            for (const PLine& pl : body) {
                LineView lv{pl, 0};
                const std::string& w = pl[0].text;
                if (w == "d") {
                    lv.head_len = 1;
                    Tok lab = lv.head()[0];
                    alg.space.resolve(lab);
                    alg.dlines.emplace_back(lab, rat_payload(lv, alg.d_len(lab)));
                } else if (w == "bracket") {
                    lv.head_len = 2;
                    auto h = lv.head();
                    alg.space.resolve(h[0]);
                    alg.space.resolve(h[1]);
                    alg.blines.emplace_back(h[0], h[1], rat_payload(lv, alg.b_len(h[0], h[1])));
                } else if (w == "tbracket") {
                    lv.head_len = 2;
                    auto h = lv.head();
                    tsb.resolve(h[0]);
                    tsb.resolve(h[1]);
                    tbr.emplace_back(h[0], h[1], rat_payload(lv, tdim));
                } else if (w == "eps") {
                    lv.head_len = 1;
                    Tok lab = lv.head()[0];
                    auto [n, i] = alg.space.resolve(lab);
                    (void)i;
                    if (n != 0)
                        throw FixtureError("eps is defined on degree-zero labels only", lab.line,
                                           lab.col);
                    epslines.emplace_back(lab, rat_payload(lv, tdim));
                }
            }
            DGLA L = alg.build();
            DGLA T(tsb.build());
            std::set<std::tuple<int, int, int, int>> seen;
            for (const auto& [t1, t2, coords] : tbr) {
                auto [p, i] = tsb.resolve(t1);
                auto [q, j] = tsb.resolve(t2);
                std::tuple<int, int, int, int> canon =
                    std::make_pair(p, i) <= std::make_pair(q, j) ? std::make_tuple(p, i, q, j)
                                                                 : std::make_tuple(q, j, p, i);
                if (!seen.insert(canon).second)
                    throw FixtureError("duplicate bracket for [" + t1.text + "," + t2.text + "]",
                                       t1.line, t1.col);
                Vec v(coords.begin(), coords.end());
                try {
                    T.set_bracket(p, i, q, j, v);
                } catch (const std::exception& e) {
                    throw FixtureError(e.what(), t1.line, t1.col);
                }
            }
            int l0 = L.space().dim(0);
            Matrix eps(tdim, l0);
            std::set<int> eps_seen;
            for (const auto& [tok, coords] : epslines) {
                auto [n, i] = alg.space.resolve(tok);
                (void)n;
                if (!eps_seen.insert(i).second)
                    throw FixtureError("duplicate eps line for '" + tok.text + "'", tok.line,
                                       tok.col);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    eps.at(static_cast<int>(r), i) = coords[r];
            }
            doc.aug_source = std::move(L);
            doc.augmentation = Augmentation(std::move(T), std::move(eps));
            break;
        }
        case FixtureKind::weight_profile: {
            bool h1_seen = false, h2_seen = false;
            for (const PLine& pl : body) {
                if (pl[0].text == "h1" || pl[0].text == "h2") {
                    bool& seen = pl[0].text == "h1" ? h1_seen : h2_seen;
                    if (seen)
                        throw FixtureError("duplicate " + pl[0].text + " line", pl[0].line,
                                           pl[0].col);
                    seen = true;
                    std::vector<int>& dst =
                        pl[0].text == "h1" ? doc.h1_weights : doc.h2_weights;
                    for (const Tok& t : LineView{pl, 0}.payload()) dst.push_back(to_int(t));
                } else
                    throw bad_directive(pl[0]);
            }
            break;
        }
    }
    return doc;
}

inline std::string serialize_fixture(const FixtureDocument& doc) {
    using namespace fixio;
    std::ostringstream os;
    os << "kind " << fixture_kind_name(doc.kind) << '\n';
    switch (doc.kind) {
        case FixtureKind::dgla:
            if (doc.dgla) emit_dgla_body(os, *doc.dgla);
            break;
        case FixtureKind::linf: {
            if (!doc.linf) break;
            const LInfinity& S = *doc.linf;
            os << "cap " << S.max_arity() << '\n';
            emit_space(os, S.space());
            for (const auto& [key, val] : S.ops().table) {
                bool nonzero = false;
                for (const Rational& c : val.coords)
                    if (!c.is_zero()) nonzero = true;
                if (!nonzero) continue;
                os << "op";
                for (const auto& [d, i] : key) os << ' ' << S.space().label(d, i);
                os << " : " << join_rats(val.coords) << '\n';
            }
            break;
        }
        case FixtureKind::filtration:
            if (!doc.filtration) break;
            os << "ambient " << doc.filtration->ambient() << '\n';
            emit_filtration_rows(os, "row", *doc.filtration);
            break;
        case FixtureKind::nilpotent: {
            if (!doc.nilpotent) break;
            const Matrix& m = doc.nilpotent->mat;
            os << "dim " << m.rows() << '\n';
            for (int i = 0; i < m.rows(); ++i) {
                Vec row(m.cols());
                bool nonzero = false;
                for (int j = 0; j < m.cols(); ++j) {
                    row[static_cast<std::size_t>(j)] = m.at(i, j);
                    if (!m.at(i, j).is_zero()) nonzero = true;
                }
                if (nonzero) os << "nrow " << i << " : " << join_rats(row) << '\n';
            }
            if (doc.weight_filtration)
                emit_filtration_rows(os, "wrow", *doc.weight_filtration);
            break;
        }
        case FixtureKind::augmentation: {
            if (!doc.aug_source || !doc.augmentation) break;
            emit_dgla_body(os, *doc.aug_source);
            const GradedSpace& ts = doc.augmentation->target.space();
            os << "target :";
            for (int i = 0; i < ts.dim(0); ++i) os << ' ' << ts.label(0, i);
            os << '\n';
            for (int i = 0; i < ts.dim(0); ++i)
                for (int j = i; j < ts.dim(0); ++j) {
                    Vec v = doc.augmentation->target.bracket_basis(0, i, 0, j);
                    bool nonzero = false;
                    for (const Rational& c : v)
                        if (!c.is_zero()) nonzero = true;
                    if (nonzero)
                        os << "tbracket " << ts.label(0, i) << ' ' << ts.label(0, j) << " : "
                           << join_rats(v) << '\n';
                }
            const Matrix& eps = doc.augmentation->eps;
            const GradedSpace& ls = doc.aug_source->space();
            for (int j = 0; j < eps.cols(); ++j) {
                Vec col(eps.rows());
                bool nonzero = false;
                for (int r = 0; r < eps.rows(); ++r) {
                    col[static_cast<std::size_t>(r)] = eps.at(r, j);
                    if (!eps.at(r, j).is_zero()) nonzero = true;
                }
                if (nonzero) os << "eps " << ls.label(0, j) << " : " << join_rats(col) << '\n';
            }
            break;
        }
        case FixtureKind::weight_profile: {
            os << "h1 :";
            for (int w : doc.h1_weights) os << ' ' << w;
            os << "\nh2 :";
            for (int w : doc.h2_weights) os << ' ' << w;
            os << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace halg
