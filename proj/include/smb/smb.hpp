#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "smb/metric_tree.hpp"
#include "smb/rng.hpp"

// Slowly Moving Bandit: multiplicative-weights bandit learner whose sampling
// and loss estimator are built around the arm tree so that subtree marginals
// change rarely and movement stays cheap.
//
// Round structure (one round = sample_action + finish_round):
//   1. draw i_t from p_t conditioned on the previous round's level-d subtree
//      around the previous action (lazy sampling);
//   2. draw fair signs sigma_0..sigma_{D-1}; the rebalance level d_t is the
//      first negative sign (with a forced negative at level D);
//   3. build the balancing values: level 0 is the importance-weighted loss
//      at i_t, level d is a log-mix of level d-1 over the enclosing subtree;
//   4. zero the estimator if the chosen arm sits in a subtree with mass
//      below 2^d * eta at any level (bad event), otherwise assemble
//      ltilde = lbar_0 - lbar_{d_t} + sum_{h<d_t} lbar_h;
//   5. multiplicative update; blocks at levels >= d_t keep their mass.
//
// Weights are kept in log space. The dense path rematerializes the full
// probability vector every round; the sparse path maintains a log-sum-exp
// tree over subtree totals and touches only the 2^{d_t} arms in the
// estimator's support. Both paths consume randomness identically (one word
// for the action, then one per sign), so equal seeds replay equal runs.

namespace smb {

using LossOracle = std::function<double(int arm)>;

struct RoundTrace {
    std::int64_t round = 0;  // t, 1-based
    int action = 0;          // i_t
    double loss = 0.0;       // observed loss at i_t
    std::vector<int> signs;  // sigma_{t,0..D-1}
    int rebalance_level = 0; // d_t
    bool bad_event = false;
    // balancing[h] = value of the level-h balancing vector on subtree(action,h);
    // the vector is zero outside that block. balancing[0] = loss / p_t(i_t).
    std::vector<double> balancing;
    // block_mass[h] = p_t(subtree(action,h)) before the update, h = 0..D.
    std::vector<double> block_mass;
    double movement = 0.0;       // charged tree-metric movement from i_{t-1}
    double p_estimator_sq = 0.0; // p_t . ltilde_t^2
    int arms_touched = 0;        // leaf weights mutated by the update
    double top_marginal = 0.0;   // post-update mass of arms 1..k/2
};

// One step of the recursive balancing computation: the level-d value on the
// support block given the level-(d-1) value, where mass_ratio is
// p(A_{d-1}(i_t)) / p(A_d(i_t)).
double balancing_step(double eta, double mass_ratio, double prev_value, int sigma_prev);

// Index of the first negative sign, with a forced negative at level D.
int first_negative_level(const std::vector<int>& signs);

// Dense reconstruction of ltilde_t from a trace (tests and diagnostics).
std::vector<double> dense_estimator(const MetricTree& tree, const RoundTrace& trace);

// Dense reconstruction of a single balancing vector lbar_{t,h} from a trace.
std::vector<double> dense_balancing(const MetricTree& tree, const RoundTrace& trace, int level);

class Smb {
public:
    enum class Path { dense, sparse };

    // Throws InvalidEta unless eta > 0. p starts uniform and the first
    // sample conditions on the whole tree (initial level = D).
    Smb(const MetricTree& tree, double eta, std::uint64_t seed, Path path = Path::dense);

    // Phase 1: draw the round's action from p(. | A_{d_prev}(i_prev)).
    // Calling it again before finish_round abandons the previous draw.
    int sample_action();

    // Phases 2-5 for the pending action. Throws LossOutOfRange unless
    // loss is in [0,1].
    RoundTrace finish_round(double loss);

    // Full round; the oracle is called exactly once, at the sampled arm.
    RoundTrace step(const LossOracle& oracle);

    const MetricTree& tree() const { return tree_; }
    double eta() const { return eta_; }
    Path path() const { return path_; }
    std::int64_t rounds_completed() const { return rounds_; }
    int prev_action() const { return anchor_arm_; }
    int prev_level() const { return anchor_level_; }

    // Materialized p_t (sums to 1). O(k).
    std::vector<double> probabilities() const;
    // p_t(A) for an aligned block.
    double block_mass(const ArmRange& block) const;

private:
    int sample_in_block(const ArmRange& block, double u) const;
    void materialize_dense();

    MetricTree tree_;
    double eta_;
    Rng rng_;
    Path path_;

    std::vector<double> logw_;  // dense path: per-arm log weights
    std::vector<double> p_;     // dense path: materialized probabilities
    std::vector<double> lse_;   // sparse path: heap log-sum-exp tree, 1-based

    int anchor_arm_ = 1;    // i_{t-1}: conditioning arm for the next sample
    int anchor_level_;      // d_{t-1}: conditioning level for the next sample
    int last_action_ = 0;   // action of the last completed round (movement)
    std::int64_t rounds_ = 0;
    bool pending_ = false;
    int pending_action_ = 0;
};

}  // namespace smb
