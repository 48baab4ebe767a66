#pragma once

#include <cstdint>
#include <vector>

#include "smb/errors.hpp"

// Complete binary tree over k = 2^D arms. Arms are the leaves, numbered
// 1..k left to right; level 0 is the leaves, level D the root. The movement
// cost between arms i and j is 2^d / k where d is the level of their least
// common ancestor, so it upper-bounds the line metric |i-j|/k.

namespace smb {

struct ArmRange {
    int level = 0;
    int lo = 0;  // inclusive, 1-based
    int hi = 0;  // inclusive

    int width() const { return hi - lo + 1; }
    bool contains(int arm) const { return lo <= arm && arm <= hi; }
    bool operator==(const ArmRange&) const = default;
};

class MetricTree {
public:
    // Throws NotPowerOfTwo unless k = 2^D with D >= 1.
    static MetricTree build(int k);

    int arms() const { return k_; }
    int depth() const { return depth_; }

    // Level of the least common ancestor of leaves i and j; 0 iff i == j.
    int lca_level(int i, int j) const;

    // (1/k) * 2^lca_level(i,j). Note the formula gives 1/k for i == j; the
    // regret accountant never charges stationary rounds (see movement_charge).
    double movement_cost(int i, int j) const;

    // The aligned block of width 2^d containing arm i.
    ArmRange subtree(int i, int d) const;

    // Movement actually charged for a transition: zero when the arm is
    // unchanged, movement_cost otherwise.
    double movement_charge(int from, int to) const {
        return from == to ? 0.0 : movement_cost(from, to);
    }

private:
    MetricTree(int k, int depth) : k_(k), depth_(depth) {}
    void check_arm(int i) const;

    int k_;
    int depth_;
};

// Action-count padding for a desired arm count k and horizon T.
// If k >= T^(1/3): k' is the next power of two >= k and trailing leaves map
// to the last real arm. Otherwise the tree is extended below the original
// leaf level: k' is the smallest power of two >= T^(1/3) and leaf l maps to
// ceil(l*k/k').
struct PaddedActions {
    int padded_k = 0;
    std::vector<int> leaf_to_arm;  // leaf_to_arm[l-1] = original arm for leaf l
};

PaddedActions pad_action_count(int k, std::int64_t T);

}  // namespace smb
