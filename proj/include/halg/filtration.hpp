#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "halg/subspace.hpp"

namespace halg {

// Increasing filtration of Q^n by subspaces, indexed by integers.  The value
// at k is the subspace listed at the largest index ≤ k; below every listed
// index the filtration is zero, above the last it is constant.  Canonical
// form keeps exactly the indices where the subspace jumps, which makes
// equality of filtrations a syntactic comparison.
class Filtration {
public:
    Filtration() : ambient_(0) {}

    Filtration(int ambient, const std::map<int, Subspace>& steps) : ambient_(ambient) {
        const Subspace* prev = nullptr;
        for (const auto& [k, s] : steps) {
            if (s.ambient() != ambient) throw std::invalid_argument("Filtration: ambient mismatch");
            if (prev && !s.contains(*prev))
                throw std::invalid_argument("Filtration: steps not nested at index " + std::to_string(k));
            prev = &s;
        }
        // Canonicalize: keep only jumps (predecessor of the first step is 0).
        Subspace below = Subspace::zero(ambient);
        for (const auto& [k, s] : steps) {
            if (s != below) {
                steps_.emplace(k, s);
                below = s;
            }
        }
    }

    static Filtration pure(int ambient, int weight) {
        return Filtration(ambient, {{weight, Subspace::full(ambient)}});
    }

    int ambient() const { return ambient_; }
    const std::map<int, Subspace>& steps() const { return steps_; }

    Subspace value(int k) const {
        auto it = steps_.upper_bound(k);
        if (it == steps_.begin()) return Subspace::zero(ambient_);
        return std::prev(it)->second;
    }

    std::vector<int> jumps() const {
        std::vector<int> j;
        for (const auto& [k, s] : steps_) j.push_back(k);
        return j;
    }
    int lowest_jump() const {
        if (steps_.empty()) throw std::logic_error("Filtration: no jumps");
        return steps_.begin()->first;
    }
    int highest_jump() const {
        if (steps_.empty()) throw std::logic_error("Filtration: no jumps");
        return steps_.rbegin()->first;
    }

    bool is_exhaustive() const {
        return ambient_ == 0 || (!steps_.empty() && steps_.rbegin()->second.is_full());
    }

    friend bool operator==(const Filtration& a, const Filtration& b) {
        return a.ambient_ == b.ambient_ && a.steps_ == b.steps_;
    }
    friend bool operator!=(const Filtration& a, const Filtration& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (const auto& [k, s] : steps_) {
            os << (first ? "" : ", ") << k << ": dim " << s.dim();
            first = false;
        }
        os << "}";
        return os.str();
    }

private:
    int ambient_;
    std::map<int, Subspace> steps_;
};

// S1 ⊗ S2 inside Q^{n1·n2} with the lexicographic Kronecker basis
// (left factor major): e_i ⊗ f_j has flat index i·n2 + j.
inline Subspace tensor_subspace(const Subspace& a, const Subspace& b) {
    int n1 = a.ambient(), n2 = b.ambient();
    std::vector<Vec> rows;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) {
            Vec r(static_cast<size_t>(n1) * n2);
            Vec ra = a.basis_row(i), rb = b.basis_row(j);
            for (int x = 0; x < n1; ++x) {
                if (ra[x].is_zero()) continue;
                for (int y = 0; y < n2; ++y)
                    if (!rb[y].is_zero()) r[static_cast<size_t>(x) * n2 + y] = ra[x] * rb[y];
            }
            rows.push_back(std::move(r));
        }
    return Subspace::from_rows(n1 * n2, rows);
}

// (W1 ⊗ W2)_k = Σ_{i+j=k} W1_i ⊗ W2_j.  Summands with i below W1's lowest
// jump vanish; i beyond the highest jump is dominated by the top term.
inline Filtration tensor_filtration(const Filtration& f1, const Filtration& f2) {
    if (f1.steps().empty() || f2.steps().empty())
        return Filtration(f1.ambient() * f2.ambient(), {});
    int lo1 = f1.lowest_jump(), hi1 = f1.highest_jump();
    int lo2 = f2.lowest_jump(), hi2 = f2.highest_jump();
    int n = f1.ambient() * f2.ambient();
    std::map<int, Subspace> steps;
    for (int k = lo1 + lo2; k <= hi1 + hi2; ++k) {
        Subspace acc = Subspace::zero(n);
        for (int i = lo1; i <= hi1; ++i) acc = span_sum(acc, tensor_subspace(f1.value(i), f2.value(k - i)));
        steps.emplace(k, acc);
    }
    return Filtration(n, steps);
}

}  // namespace halg
