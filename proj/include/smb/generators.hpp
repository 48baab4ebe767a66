#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smb/errors.hpp"
#include "smb/pricing.hpp"

// Deterministic loss and buyer generators for experiments. Losses are
// counter-based (pure in (seed, t, arm)) so learners see bandit feedback
// while the regret accountant can enumerate the full matrix.

namespace smb {

class LossStream {
public:
    // Specs: stochastic_gap(mu_star, gap)   arm 1 Bernoulli(mu_star), the
    //                                       rest Bernoulli(mu_star + gap)
    //        drifting_sine(period)          0.5 + 0.5 sin(2pi(t/period + i/k))
    //        adversarial_flip(epoch)        best arm alternates 1 <-> k per epoch
    // Throws UnknownSpec for anything else.
    LossStream(const std::string& spec, std::int64_t horizon, int k, std::uint64_t seed);

    double operator()(std::int64_t t, int arm) const;

    // Continuum version of the loss at point x in [0,1]; only defined for
    // drifting_sine.
    double at_point(std::int64_t t, double x) const;
    bool has_continuum() const;

    int arms() const { return k_; }
    const std::string& spec() const { return spec_; }

private:
    enum class Kind { stochastic_gap, drifting_sine, adversarial_flip };
    Kind kind_;
    std::string spec_;
    std::int64_t horizon_;
    int k_;
    std::uint64_t seed_;
    double a_ = 0.0;  // mu_star or period or epoch
    double b_ = 0.0;  // gap
};

struct ValueDist {
    // "point(v)" or "uniform"
    static ValueDist parse(const std::string& spec);
    bool is_point = false;
    double value = 0.5;
};

struct PatienceDist {
    // "point(p)" or "uniform" (over 0..tau_bar)
    static PatienceDist parse(const std::string& spec);
    bool is_point = false;
    int value = 0;
};

std::vector<Buyer> generate_buyers(std::int64_t horizon, int tau_bar, const ValueDist& values,
                                   const PatienceDist& patience, std::uint64_t seed);

}  // namespace smb
