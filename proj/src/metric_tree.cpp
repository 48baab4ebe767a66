#include "smb/metric_tree.hpp"

#include <bit>
#include <string>

namespace smb {

MetricTree MetricTree::build(int k) {
    if (k < 2 || !std::has_single_bit(static_cast<unsigned>(k))) {
        throw NotPowerOfTwo("arm count must be a power of two >= 2, got " + std::to_string(k));
    }
    return MetricTree(k, std::countr_zero(static_cast<unsigned>(k)));
}

void MetricTree::check_arm(int i) const {
    if (i < 1 || i > k_) {
        throw ArmOutOfRange("arm " + std::to_string(i) + " outside 1.." + std::to_string(k_));
    }
}

int MetricTree::lca_level(int i, int j) const {
    check_arm(i);
    check_arm(j);
    const unsigned x = static_cast<unsigned>(i - 1) ^ static_cast<unsigned>(j - 1);
    return static_cast<int>(std::bit_width(x));
}

double MetricTree::movement_cost(int i, int j) const {
    return static_cast<double>(1 << lca_level(i, j)) / static_cast<double>(k_);
}

ArmRange MetricTree::subtree(int i, int d) const {
    check_arm(i);
    if (d < 0 || d > depth_) {
        throw LevelOutOfRange("level " + std::to_string(d) + " outside 0.." +
                              std::to_string(depth_));
    }
    const int lo = (((i - 1) >> d) << d) + 1;
    return ArmRange{d, lo, lo + (1 << d) - 1};
}

namespace {

// Smallest power of two p with p^3 >= T, i.e. p >= T^(1/3) exactly.
int pow2_at_least_cbrt(std::int64_t T) {
    int p = 2;
    while (static_cast<std::int64_t>(p) * p * p < T) p *= 2;
    return p;
}

}  // namespace

PaddedActions pad_action_count(int k, std::int64_t T) {
    if (k < 2) throw std::invalid_argument("pad_action_count requires k >= 2");
    if (T < 1) throw std::invalid_argument("pad_action_count requires T >= 1");

    PaddedActions out;
    const std::int64_t k3 = static_cast<std::int64_t>(k) * k * k;
    if (k3 >= T) {
        // k >= T^(1/3): round up to a power of two, pad with copies of the
        // last arm.
        out.padded_k = static_cast<int>(std::bit_ceil(static_cast<unsigned>(k)));
        out.leaf_to_arm.resize(out.padded_k);
        for (int l = 1; l <= out.padded_k; ++l) {
            out.leaf_to_arm[l - 1] = l <= k ? l : k;
        }
    } else {
        // Extend the tree below the original leaves; each new leaf acts as
        // its ancestor at the original leaf level.
        out.padded_k = pow2_at_least_cbrt(T);
        out.leaf_to_arm.resize(out.padded_k);
        for (int l = 1; l <= out.padded_k; ++l) {
            const std::int64_t num = static_cast<std::int64_t>(l) * k;
            out.leaf_to_arm[l - 1] = static_cast<int>((num + out.padded_k - 1) / out.padded_k);
        }
    }
    return out;
}

}  // namespace smb
