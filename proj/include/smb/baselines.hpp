#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "smb/errors.hpp"
#include "smb/rng.hpp"

// Reference learners and bound checkers used for comparison runs:
// plain exponential-weights Exp3 (importance-weighted losses, no exploration
// mixing) and a standalone verifier for the second-order multiplicative
// weights regret bound.

namespace smb {

class Exp3 {
public:
    Exp3(int k, double eta, std::uint64_t seed);

    int sample_action();
    void update(int arm, double loss);

    struct Step {
        int action;
        double loss;
    };
    Step step(const std::function<double(int)>& oracle);

    const std::vector<double>& probabilities() const { return p_; }
    int arms() const { return static_cast<int>(p_.size()); }
    double eta() const { return eta_; }

private:
    double eta_;
    Rng rng_;
    std::vector<double> logw_;
    std::vector<double> p_;
};

// Second-order regret bound for multiplicative weights: for loss vectors
// c_t with c_t(i) >= -1/eta and q_{t+1} the MW update of q_t from uniform q_1,
//   max_i [ sum_t q_t.c_t - sum_t c_t(i) ] <= log(k)/eta + eta sum_t q_t.c_t^2.
struct SecondOrderCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// The caller supplies the trajectory q_1..q_T (see mw_trajectory) and the
// loss vectors c_1..c_T. A violated bound is returned, never thrown.
SecondOrderCheck verify_second_order_bound(const std::vector<std::vector<double>>& q,
                                           const std::vector<std::vector<double>>& c,
                                           double eta);

// q_1 uniform, q_{t+1}(i) proportional to q_t(i) exp(-eta c_t(i)).
std::vector<std::vector<double>> mw_trajectory(const std::vector<std::vector<double>>& c,
                                               double eta);

}  // namespace smb
