#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace halg {

// Rooted trees with unordered children in which every internal vertex has at
// least two children; isomorphism classes are represented canonically by
// keeping children sorted.  Leaves carry one input each, so a tree with r
// leaves indexes an r-ary operation in the transfer expansion.
struct RootedTree {
    int leaves = 1;
    std::vector<RootedTree> children;  // empty for a leaf; sorted canonically

    bool is_leaf() const { return children.empty(); }

    std::string serial() const {
        if (is_leaf()) return "*";
        std::string s = "(";
        for (const auto& c : children) s += c.serial();
        s += ")";
        return s;
    }
};

inline bool operator<(const RootedTree& a, const RootedTree& b) {
    if (a.leaves != b.leaves) return a.leaves < b.leaves;
    return a.serial() < b.serial();
}

inline bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.leaves == b.leaves && a.serial() == b.serial();
}

namespace detail {

// Multisets of trees drawn from pool (all having the sizes listed in parts,
// parts sorted ascending); within a run of equal part sizes the chosen trees
// must be non-decreasing, which rules out duplicate multisets.
inline void tree_multisets(const std::vector<std::vector<RootedTree>>& by_size,
                           const std::vector<int>& parts, size_t at, size_t min_idx,
                           std::vector<RootedTree>& acc,
                           std::vector<std::vector<RootedTree>>& out) {
    if (at == parts.size()) {
        out.push_back(acc);
        return;
    }
    const auto& pool = by_size[parts[at]];
    size_t start = (at > 0 && parts[at] == parts[at - 1]) ? min_idx : 0;
    for (size_t t = start; t < pool.size(); ++t) {
        acc.push_back(pool[t]);
        tree_multisets(by_size, parts, at + 1, t, acc, out);
        acc.pop_back();
    }
}

inline void partitions_of_int(int n, int max_part, std::vector<int>& acc,
                              std::vector<std::vector<int>>& out) {
    if (n == 0) {
        if (acc.size() >= 2) {
            std::vector<int> parts(acc.rbegin(), acc.rend());  // ascending
            out.push_back(std::move(parts));
        }
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        acc.push_back(p);
        partitions_of_int(n - p, p, acc, out);
        acc.pop_back();
    }
}

}  // namespace detail

// All isomorphism classes of such trees with exactly r leaves, canonically
// ordered.  Counts for r = 1, 2, 3, 4 are 1, 1, 2, 5.
inline std::vector<RootedTree> enumerate_trees(int r) {
    static std::map<int, std::vector<RootedTree>> cache;
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    std::vector<RootedTree> out;
    if (r == 1) {
        out.push_back(RootedTree{});
    } else if (r >= 2) {
        std::vector<std::vector<RootedTree>> by_size(r);
        for (int s = 1; s < r; ++s) by_size[s] = enumerate_trees(s);
        std::vector<std::vector<int>> parts_list;
        std::vector<int> acc;
        detail::partitions_of_int(r, r - 1, acc, parts_list);
        for (const auto& parts : parts_list) {
            std::vector<std::vector<RootedTree>> multis;
            std::vector<RootedTree> macc;
            detail::tree_multisets(by_size, parts, 0, 0, macc, multis);
            for (auto& kids : multis) {
                RootedTree t;
                t.leaves = r;
                t.children = std::move(kids);
                std::sort(t.children.begin(), t.children.end());
                out.push_back(std::move(t));
            }
        }
        std::sort(out.begin(), out.end());
    }
    cache[r] = out;
    return out;
}

inline long tree_count(int r) { return static_cast<long>(enumerate_trees(r).size()); }

}  // namespace halg
