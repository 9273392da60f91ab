#pragma once
// Truncated polynomial coefficients for deformation problems.  The
// coefficient rings are local rings Q[t_1, ..., t_k] modulo the ideal of all
// monomials of a fixed total degree; deformation data lives in a graded
// vector space tensored with the maximal ideal, so polynomial elements never
// carry constant terms.  Relations between deformation parameters are
// ordinary rational-coefficient polynomials in named generators.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halg/matrix.hpp"

namespace halg {

// Exponent vector of a monomial in the coefficient ring generators.
struct Monomial {
    std::vector<int> e;

    int total() const {
        int s = 0;
        for (int x : e) s += x;
        return s;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    // Graded order: lower total degree first; within a degree, descending
    // exponent vectors so that powers of earlier generators come first.
    bool operator<(const Monomial& o) const {
        int a = total(), b = o.total();
        if (a != b) return a < b;
        return e > o.e;
    }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.e.size() != b.e.size())
        throw std::invalid_argument("Monomial: mismatched variable counts");
    Monomial m = a;
    for (size_t i = 0; i < m.e.size(); ++i) m.e[i] += b.e[i];
    return m;
}

// Q[t_1, ..., t_k] / (all monomials of total degree >= order).
struct ArtinAlgebra {
    std::vector<std::string> gens;
    int order;

    ArtinAlgebra(std::vector<std::string> g, int n) : gens(std::move(g)), order(n) {
        if (order < 1) throw std::invalid_argument("ArtinAlgebra: order must be at least one");
        if (gens.empty()) throw std::invalid_argument("ArtinAlgebra: at least one generator required");
        std::set<std::string> seen;
        for (const auto& s : gens)
            if (s.empty() || !seen.insert(s).second)
                throw std::invalid_argument(
                    "ArtinAlgebra: generator names must be nonempty and distinct");
    }

    int nvars() const { return static_cast<int>(gens.size()); }

    Monomial var(int i) const {
        if (i < 0 || i >= nvars()) throw std::invalid_argument("ArtinAlgebra: no such generator");
        Monomial m{std::vector<int>(gens.size(), 0)};
        m.e[static_cast<size_t>(i)] = 1;
        return m;
    }

    // Whether a monomial survives the truncation (and lies in the maximal
    // ideal, so degree zero never counts).
    bool keeps(const Monomial& m) const {
        if (static_cast<int>(m.e.size()) != nvars())
            throw std::invalid_argument("ArtinAlgebra: monomial has wrong variable count");
        for (int x : m.e)
            if (x < 0) throw std::invalid_argument("ArtinAlgebra: negative exponent");
        int t = m.total();
        return t >= 1 && t < order;
    }

    // Basis of the maximal ideal, in the graded monomial order.
    std::vector<Monomial> monomials() const {
        std::vector<Monomial> out;
        Monomial m{std::vector<int>(gens.size(), 0)};
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == nvars()) {
                if (m.total() >= 1) out.push_back(m);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                m.e[static_cast<size_t>(pos)] = k;
                rec(pos + 1, left - k);
            }
            m.e[static_cast<size_t>(pos)] = 0;
        };
        rec(0, order - 1);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string monomial_str(const Monomial& m) const {
        if (static_cast<int>(m.e.size()) != nvars())
            throw std::invalid_argument("ArtinAlgebra: monomial has wrong variable count");
        std::string out;
        for (int i = 0; i < nvars(); ++i) {
            int p = m.e[static_cast<size_t>(i)];
            if (p == 0) continue;
            if (!out.empty()) out += "*";
            out += gens[static_cast<size_t>(i)];
            if (p > 1) out += "^" + std::to_string(p);
        }
        return out.empty() ? "1" : out;
    }
};

// Element of (a fixed graded piece of) a vector space tensored with the
// maximal ideal: a finite sum of coordinate vectors weighted by monomials.
struct TruncatedPoly {
    std::map<Monomial, Vec> terms;

    bool is_zero() const {
        for (const auto& [m, v] : terms)
            for (const auto& c : v)
                if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const TruncatedPoly& o) const {
        auto pruned = [](const TruncatedPoly& p) {
            std::map<Monomial, Vec> out;
            for (const auto& [m, v] : p.terms) {
                bool nz = false;
                for (const auto& c : v)
                    if (!c.is_zero()) { nz = true; break; }
                if (nz) out[m] = v;
            }
            return out;
        };
        return pruned(*this) == pruned(o);
    }
    bool operator!=(const TruncatedPoly& o) const { return !(*this == o); }
};

// Add scale * v to the coefficient of m, creating or pruning the term as
// needed; monomials outside the truncation are dropped.
inline void tp_accumulate(TruncatedPoly& p, const Monomial& m, const Vec& v,
                          const Rational& scale, const ArtinAlgebra& a) {
    if (!a.keeps(m)) return;
    auto it = p.terms.find(m);
    if (it == p.terms.end()) it = p.terms.emplace(m, Vec(v.size(), Rational(0))).first;
    if (it->second.size() != v.size())
        throw std::invalid_argument("TruncatedPoly: mismatched coordinate dimensions");
    bool nz = false;
    for (size_t i = 0; i < v.size(); ++i) {
        it->second[i] += scale * v[i];
        if (!it->second[i].is_zero()) nz = true;
    }
    if (!nz) p.terms.erase(it);
}

inline TruncatedPoly tp_scale(const Rational& c, const TruncatedPoly& p) {
    TruncatedPoly out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : p.terms) {
        Vec w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
        out.terms[m] = std::move(w);
    }
    return out;
}

inline TruncatedPoly tp_add(const TruncatedPoly& a, const TruncatedPoly& b) {
    TruncatedPoly out = a;
    for (const auto& [m, v] : b.terms) {
        auto it = out.terms.find(m);
        if (it == out.terms.end()) {
            out.terms[m] = v;
            continue;
        }
        if (it->second.size() != v.size())
            throw std::invalid_argument("TruncatedPoly: mismatched coordinate dimensions");
        for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
    }
    return out;
}

inline std::string poly_str(const ArtinAlgebra& a, const TruncatedPoly& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (const auto& [m, v] : p.terms) {
        if (!out.empty()) out += "; ";
        out += a.monomial_str(m) + ": (";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += v[i].str();
        }
        out += ")";
    }
    return out;
}

// Polynomial with rational coefficients in named generators, used to present
// relations between deformation parameters.
struct MPoly {
    std::map<Monomial, Rational> coeff;

    bool is_zero() const {
        for (const auto& [m, c] : coeff)
            if (!c.is_zero()) return false;
        return true;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : coeff)
            if (!c.is_zero()) d = std::max(d, m.total());
        return d;
    }
};

inline std::string mpoly_str(const MPoly& p, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& [m, c] : p.coeff) {
        if (c.is_zero()) continue;
        if (static_cast<int>(m.e.size()) != static_cast<int>(names.size()))
            throw std::invalid_argument("mpoly_str: monomial has wrong variable count");
        std::string term;
        for (size_t i = 0; i < m.e.size(); ++i) {
            int pw = m.e[i];
            if (pw == 0) continue;
            if (!term.empty()) term += "*";
            term += names[i];
            if (pw > 1) term += "^" + std::to_string(pw);
        }
        Rational mag = c;
        bool neg = c < Rational(0);
        if (neg) mag = Rational(0) - c;
        std::string cs;
        if (term.empty())
            cs = mag.str();
        else if (mag == Rational(1))
            cs = term;
        else
            cs = mag.str() + "*" + term;
        if (out.empty())
            out = (neg ? "-" : "") + cs;
        else
            out += (neg ? " - " : " + ") + cs;
    }
    return out.empty() ? "0" : out;
}

}  // namespace halg
