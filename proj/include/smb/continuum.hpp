#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "smb/metric_tree.hpp"
#include "smb/smb.hpp"

// Reduction from Lipschitz losses on [0,1] with movement costs to the tree
// learner over the grid {1/k, 2/k, ..., 1}, plus the movement-regret
// accountant. The comparator over the continuum is approximated by a 10x
// finer grid; the resolution error L*T/(10k) is reported alongside.

namespace smb {

struct ContinuumPlan {
    double lipschitz = 1.0;    // L
    std::int64_t horizon = 0;  // T
    double target_k = 0.0;     // unrounded L^(2/3) T^(1/3)
    int k = 0;                 // power-of-two grid size
    double eta = 0.0;          // 1/sqrt(kT)

    double grid_point(int arm) const { return static_cast<double>(arm) / k; }
    int nearest_arm(double x) const;
};

// Throws InvalidLipschitz if L < 1; requires T >= 8.
ContinuumPlan plan_discretization(double L, std::int64_t T);

// One learner round: the loss function is evaluated once, at the chosen grid
// point. Returns the point played and the loss observed.
struct LipschitzRound {
    double point = 0.0;
    double loss = 0.0;
    RoundTrace trace;
};
LipschitzRound lipschitz_round(const ContinuumPlan& plan, Smb& learner,
                               const std::function<double(double)>& f);

using PointMetric = std::function<double(double, double)>;
PointMetric line_metric();
// Tree metric between the grid arms nearest to the two points.
PointMetric tree_point_metric(const ContinuumPlan& plan);

struct MovementRegretReport {
    double total_loss = 0.0;
    double total_movement = 0.0;
    double comparator_loss = 0.0;  // best refinement-grid point, in hindsight
    double comparator_point = 0.0;
    double regret = 0.0;
    double resolution_error = 0.0;  // L*T/(10k): gap to the true continuum minimum
};

// f(t, x) is the round-t loss at point x, t = 1..T. The comparator scans a
// refinement grid of 10k equally spaced points.
MovementRegretReport movement_regret(const std::vector<double>& points,
                                     const std::function<double(std::int64_t, double)>& f,
                                     const PointMetric& metric, const ContinuumPlan& plan);

}  // namespace smb
