#include "smb/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smb {

int ContinuumPlan::nearest_arm(double x) const {
    const int arm = static_cast<int>(std::lround(x * k));
    return std::clamp(arm, 1, k);
}

ContinuumPlan plan_discretization(double L, std::int64_t T) {
    if (!(L >= 1.0)) {
        throw InvalidLipschitz("Lipschitz constant must be >= 1, got " + std::to_string(L));
    }
    if (T < 8) throw std::invalid_argument("horizon must be >= 8");

    ContinuumPlan plan;
    plan.lipschitz = L;
    plan.horizon = T;
    plan.target_k = std::cbrt(L * L * static_cast<double>(T));  // L^(2/3) T^(1/3)
    const int rounded = std::max<int>(2, static_cast<int>(std::llround(plan.target_k)));
    plan.k = pad_action_count(rounded, T).padded_k;
    plan.eta = 1.0 / std::sqrt(static_cast<double>(plan.k) * static_cast<double>(T));
    return plan;
}

LipschitzRound lipschitz_round(const ContinuumPlan& plan, Smb& learner,
                               const std::function<double(double)>& f) {
    LipschitzRound out;
    out.trace = learner.step([&](int arm) { return f(plan.grid_point(arm)); });
    out.point = plan.grid_point(out.trace.action);
    out.loss = out.trace.loss;
    return out;
}

PointMetric line_metric() {
    return [](double x, double y) { return std::abs(x - y); };
}

PointMetric tree_point_metric(const ContinuumPlan& plan) {
    const MetricTree tree = MetricTree::build(plan.k);
    return [tree, plan](double x, double y) {
        return tree.movement_charge(plan.nearest_arm(x), plan.nearest_arm(y));
    };
}

MovementRegretReport movement_regret(const std::vector<double>& points,
                                     const std::function<double(std::int64_t, double)>& f,
                                     const PointMetric& metric, const ContinuumPlan& plan) {
    MovementRegretReport report;
    const std::int64_t T = static_cast<std::int64_t>(points.size());
    for (std::int64_t t = 1; t <= T; ++t) {
        report.total_loss += f(t, points[t - 1]);
        if (t >= 2) report.total_movement += metric(points[t - 1], points[t - 2]);
    }

    const int refinement = 10 * plan.k;
    double best = std::numeric_limits<double>::infinity();
    double best_point = 0.0;
    for (int j = 1; j <= refinement; ++j) {
        const double x = static_cast<double>(j) / refinement;
        double total = 0.0;
        for (std::int64_t t = 1; t <= T; ++t) total += f(t, x);
        if (total < best) {
            best = total;
            best_point = x;
        }
    }
    report.comparator_loss = best;
    report.comparator_point = best_point;
    report.regret = report.total_loss + report.total_movement - best;
    report.resolution_error =
        plan.lipschitz * static_cast<double>(T) / static_cast<double>(refinement);
    return report;
}

}  // namespace smb
