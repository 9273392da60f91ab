#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace halg {

// Sign conventions for permuting graded elements.  perm[k] is the index of
// the original element placed at position k, degs[i] the degree of original
// element i.  The Koszul sign collects a factor (-1)^{|a||b|} each time two
// elements cross; with_sgn additionally multiplies by the signature of the
// permutation (the antisymmetric convention).
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degs, bool with_sgn) {
    std::vector<int> p = perm;
    int sign = 1;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        for (size_t j = 0; j + 1 < p.size() - i; ++j)
            if (p[j] > p[j + 1]) {
                bool both_odd = (degs.at(p[j]) % 2 != 0) && (degs.at(p[j + 1]) % 2 != 0);
                if (both_odd) sign = -sign;
                if (with_sgn) sign = -sign;
                std::swap(p[j], p[j + 1]);
            }
    return sign;
}

// All (i, n-i) unshuffles: permutations increasing on the first i positions
// and on the last n-i positions, as perm vectors (position -> original index).
inline std::vector<std::vector<int>> unshuffles(int i, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    std::vector<bool> used(n, false);
    auto emit = [&]() {
        std::vector<int> perm = pick;
        for (int t = 0; t < n; ++t)
            if (!used[t]) perm.push_back(t);
        out.push_back(std::move(perm));
    };
    std::function<void(int, int)> rec = [&](int start, int left) {
        if (left == 0) {
            emit();
            return;
        }
        for (int t = start; t <= n - left; ++t) {
            pick.push_back(t);
            used[t] = true;
            rec(t + 1, left - 1);
            used[t] = false;
            pick.pop_back();
        }
    };
    rec(0, i);
    return out;
}

// Unordered partitions of {0..n-1} into exactly k nonempty blocks, each
// block sorted, blocks ordered by their minimal element (restricted-growth
// enumeration, so the order is canonical).
inline std::vector<std::vector<std::vector<int>>> partitions_into(int n, int k) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> assign(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int maxb) {
        if (pos == n) {
            if (maxb == k) {
                std::vector<std::vector<int>> blocks(k);
                for (int t = 0; t < n; ++t) blocks[assign[t]].push_back(t);
                out.push_back(std::move(blocks));
            }
            return;
        }
        for (int b = 0; b < std::min(maxb + 1, k); ++b) {
            assign[pos] = b;
            rec(pos + 1, std::max(maxb, b + 1));
        }
    };
    if (n >= k && k >= 1) rec(0, 0);
    return out;
}

}  // namespace halg
