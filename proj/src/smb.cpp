#include "smb/smb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smb {

double balancing_step(double eta, double mass_ratio, double prev_value, int sigma_prev) {
    // -(1/eta) * log(1 - m + m * exp(-eta*(1+sigma)*prev)), written through
    // expm1/log1p so that sigma = -1 and prev = 0 give exactly zero.
    const double x = eta * (1.0 + static_cast<double>(sigma_prev)) * prev_value;
    return -std::log1p(mass_ratio * std::expm1(-x)) / eta;
}

int first_negative_level(const std::vector<int>& signs) {
    for (std::size_t d = 0; d < signs.size(); ++d) {
        if (signs[d] < 0) return static_cast<int>(d);
    }
    return static_cast<int>(signs.size());
}

std::vector<double> dense_balancing(const MetricTree& tree, const RoundTrace& trace, int level) {
    std::vector<double> out(tree.arms(), 0.0);
    if (level == 0) {
        out[trace.action - 1] = trace.balancing[0];
        return out;
    }
    const ArmRange block = tree.subtree(trace.action, level);
    for (int i = block.lo; i <= block.hi; ++i) out[i - 1] = trace.balancing[level];
    return out;
}

std::vector<double> dense_estimator(const MetricTree& tree, const RoundTrace& trace) {
    std::vector<double> out(tree.arms(), 0.0);
    const int dt = trace.rebalance_level;
    if (trace.bad_event || dt == 0) return out;
    out[trace.action - 1] += 2.0 * trace.balancing[0];
    for (int h = 1; h < dt; ++h) {
        const ArmRange block = tree.subtree(trace.action, h);
        for (int i = block.lo; i <= block.hi; ++i) out[i - 1] += trace.balancing[h];
    }
    if (dt < tree.depth()) {
        const ArmRange block = tree.subtree(trace.action, dt);
        for (int i = block.lo; i <= block.hi; ++i) out[i - 1] -= trace.balancing[dt];
    }
    return out;
}

namespace {

double lse2(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

Smb::Smb(const MetricTree& tree, double eta, std::uint64_t seed, Path path)
    : tree_(tree), eta_(eta), rng_(seed), path_(path), anchor_level_(tree.depth()) {
    if (!(eta > 0.0)) {
        throw InvalidEta("eta must be > 0, got " + std::to_string(eta));
    }
    const int k = tree_.arms();
    if (path_ == Path::dense) {
        logw_.assign(k, 0.0);
        p_.assign(k, 1.0 / k);
    } else {
        lse_.assign(2 * k, 0.0);
        for (int v = k - 1; v >= 1; --v) lse_[v] = lse2(lse_[2 * v], lse_[2 * v + 1]);
    }
}

int Smb::sample_in_block(const ArmRange& block, double u) const {
    if (block.lo == block.hi) return block.lo;
    if (path_ == Path::dense) {
        double mass = 0.0;
        for (int i = block.lo; i <= block.hi; ++i) mass += p_[i - 1];
        if (!(mass > 0.0)) throw DegenerateMass("no probability mass in sampling block");
        const double target = u * mass;
        double cum = 0.0;
        for (int i = block.lo; i <= block.hi; ++i) {
            cum += p_[i - 1];
            if (target < cum) return i;
        }
        return block.hi;
    }
    const int k = tree_.arms();
    const int root = (k + block.lo - 1) >> block.level;
    const double block_lse = lse_[root];
    if (!std::isfinite(block_lse)) throw DegenerateMass("no probability mass in sampling block");
    double target = u;
    int v = root;
    while (v < k) {
        const double left = std::exp(lse_[2 * v] - block_lse);
        if (target < left) {
            v = 2 * v;
        } else {
            target -= left;
            v = 2 * v + 1;
        }
    }
    return v - k + 1;
}

int Smb::sample_action() {
    const double u = rng_.next_double();
    const ArmRange block = tree_.subtree(anchor_arm_, anchor_level_);
    const int arm = sample_in_block(block, u);
    pending_action_ = arm;
    pending_ = true;
    anchor_arm_ = arm;
    return arm;
}

void Smb::materialize_dense() {
    const int k = tree_.arms();
    const double m = *std::max_element(logw_.begin(), logw_.end());
    double z = 0.0;
    for (int i = 0; i < k; ++i) {
        p_[i] = std::exp(logw_[i] - m);
        z += p_[i];
    }
    for (int i = 0; i < k; ++i) {
        p_[i] /= z;
        if (!(p_[i] > 0.0)) {
            throw NumericalUnderflow("arm weight underflowed at arm " + std::to_string(i + 1));
        }
    }
}

RoundTrace Smb::finish_round(double loss) {
    if (!pending_) throw std::logic_error("finish_round without a sampled action");
    if (!(loss >= 0.0 && loss <= 1.0)) {
        throw LossOutOfRange("loss must lie in [0,1], got " + std::to_string(loss));
    }
    const int k = tree_.arms();
    const int D = tree_.depth();
    const int it = pending_action_;

    RoundTrace trace;
    trace.round = rounds_ + 1;
    trace.action = it;
    trace.loss = loss;

    trace.signs.resize(D);
    for (int d = 0; d < D; ++d) trace.signs[d] = rng_.next_sign();
    const int dt = first_negative_level(trace.signs);
    trace.rebalance_level = dt;

    // Block masses around i_t, pre-update.
    trace.block_mass.assign(D + 1, 0.0);
    if (path_ == Path::dense) {
        double mass = p_[it - 1];
        trace.block_mass[0] = mass;
        for (int h = 1; h <= D; ++h) {
            const ArmRange outer = tree_.subtree(it, h);
            const ArmRange inner = tree_.subtree(it, h - 1);
            for (int i = outer.lo; i <= outer.hi; ++i) {
                if (!inner.contains(i)) mass += p_[i - 1];
            }
            trace.block_mass[h] = mass;
        }
    } else {
        const int leaf = k + it - 1;
        const double root_lse = lse_[1];
        for (int h = 0; h <= D; ++h) {
            trace.block_mass[h] = std::exp(lse_[leaf >> h] - root_lse);
        }
    }
    if (!(trace.block_mass[0] > 0.0)) throw DegenerateMass("sampled arm carries no mass");

    trace.bad_event = false;
    for (int d = 0; d < D; ++d) {
        if (trace.block_mass[d] < std::ldexp(eta_, d)) {
            trace.bad_event = true;
            break;
        }
    }

    // Balancing values on the support blocks; zero above the rebalance level.
    trace.balancing.assign(D, 0.0);
    trace.balancing[0] = loss / trace.block_mass[0];
    const int mmax = std::min(dt, D - 1);
    for (int h = 1; h <= mmax; ++h) {
        const double ratio = trace.block_mass[h - 1] / trace.block_mass[h];
        trace.balancing[h] = balancing_step(eta_, ratio, trace.balancing[h - 1], +1);
    }

    trace.movement = rounds_ >= 1 ? tree_.movement_charge(last_action_, it) : 0.0;

    if (!trace.bad_event && dt > 0) {
        // ltilde on ring g = A_g(i_t) \ A_{g-1}(i_t) is the suffix sum
        // ring_value[g] = sum_{h=g}^{dt-1} c_h - [dt < D] c_dt; the chosen
        // arm additionally carries 2*c_0.
        std::vector<double> ring_value(dt + 1, dt < D ? -trace.balancing[dt] : 0.0);
        for (int g = dt - 1; g >= 1; --g) ring_value[g] = ring_value[g + 1] + trace.balancing[g];
        const double own_value = 2.0 * trace.balancing[0] + (dt >= 1 ? ring_value[1] : 0.0);

        trace.p_estimator_sq = trace.block_mass[0] * own_value * own_value;
        for (int g = 1; g <= dt; ++g) {
            const double ring_mass = trace.block_mass[g] - trace.block_mass[g - 1];
            trace.p_estimator_sq += ring_mass * ring_value[g] * ring_value[g];
        }

        // Apply log-weight deltas.
        auto apply_leaf = [&](int arm, double delta) {
            if (path_ == Path::dense) {
                logw_[arm - 1] += delta;
            } else {
                lse_[k + arm - 1] += delta;
            }
        };
        apply_leaf(it, -eta_ * own_value);
        trace.arms_touched = 1;
        for (int g = 1; g <= dt; ++g) {
            if (ring_value[g] == 0.0) continue;
            const ArmRange outer = tree_.subtree(it, g);
            const ArmRange inner = tree_.subtree(it, g - 1);
            const double delta = -eta_ * ring_value[g];
            for (int i = outer.lo; i <= outer.hi; ++i) {
                if (inner.contains(i)) continue;
                apply_leaf(i, delta);
                ++trace.arms_touched;
            }
        }

        if (path_ == Path::dense) {
            materialize_dense();
        } else {
            // Recompute subtree totals under the touched block, then the
            // path to the root.
            const int touched_level = std::min(dt, D - 1);
            const int sub_root = (k + it - 1) >> touched_level;
            for (int r = touched_level - 1; r >= 0; --r) {
                const int first = sub_root << r;
                for (int v = first; v < first + (1 << r); ++v) {
                    lse_[v] = lse2(lse_[2 * v], lse_[2 * v + 1]);
                }
            }
            for (int v = sub_root >> 1; v >= 1; v >>= 1) {
                lse_[v] = lse2(lse_[2 * v], lse_[2 * v + 1]);
            }
        }
    }

    if (path_ == Path::dense) {
        double left = 0.0;
        for (int i = 0; i < k / 2; ++i) left += p_[i];
        trace.top_marginal = left;
    } else {
        trace.top_marginal = std::exp(lse_[2] - lse_[1]);
    }

    rounds_ += 1;
    last_action_ = it;
    anchor_arm_ = it;
    anchor_level_ = dt;
    pending_ = false;
    return trace;
}

RoundTrace Smb::step(const LossOracle& oracle) {
    const int arm = sample_action();
    return finish_round(oracle(arm));
}

std::vector<double> Smb::probabilities() const {
    const int k = tree_.arms();
    std::vector<double> out(k);
    if (path_ == Path::dense) {
        out = p_;
    } else {
        const double root_lse = lse_[1];
        for (int i = 0; i < k; ++i) {
            out[i] = std::exp(lse_[k + i] - root_lse);
            if (!(out[i] > 0.0)) {
                throw NumericalUnderflow("arm weight underflowed at arm " + std::to_string(i + 1));
            }
        }
    }
    return out;
}

double Smb::block_mass(const ArmRange& block) const {
    if (path_ == Path::dense) {
        double mass = 0.0;
        for (int i = block.lo; i <= block.hi; ++i) mass += p_[i - 1];
        return mass;
    }
    const int k = tree_.arms();
    return std::exp(lse_[(k + block.lo - 1) >> block.level] - lse_[1]);
}

}  // namespace smb
