#include "smb/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smb {

Exp3::Exp3(int k, double eta, std::uint64_t seed) : eta_(eta), rng_(seed) {
    if (k < 2) throw std::invalid_argument("Exp3 requires k >= 2");
    if (!(eta > 0.0)) throw InvalidEta("eta must be > 0, got " + std::to_string(eta));
    logw_.assign(k, 0.0);
    p_.assign(k, 1.0 / k);
}

int Exp3::sample_action() {
    const double u = rng_.next_double();
    double cum = 0.0;
    const int k = arms();
    for (int i = 0; i < k; ++i) {
        cum += p_[i];
        if (u < cum) return i + 1;
    }
    return k;
}

void Exp3::update(int arm, double loss) {
    const int k = arms();
    if (arm < 1 || arm > k) throw ArmOutOfRange("arm " + std::to_string(arm));
    if (!(loss >= 0.0 && loss <= 1.0)) {
        throw LossOutOfRange("loss must lie in [0,1], got " + std::to_string(loss));
    }
    logw_[arm - 1] -= eta_ * loss / p_[arm - 1];
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

Exp3::Step Exp3::step(const std::function<double(int)>& oracle) {
    const int arm = sample_action();
    const double loss = oracle(arm);
    update(arm, loss);
    return Step{arm, loss};
}

std::vector<std::vector<double>> mw_trajectory(const std::vector<std::vector<double>>& c,
                                               double eta) {
    if (c.empty()) return {};
    const std::size_t k = c.front().size();
    std::vector<std::vector<double>> q;
    q.reserve(c.size());
    std::vector<double> logw(k, 0.0);
    for (std::size_t t = 0; t < c.size(); ++t) {
        const double m = *std::max_element(logw.begin(), logw.end());
        std::vector<double> qt(k);
        double z = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            qt[i] = std::exp(logw[i] - m);
            z += qt[i];
        }
        for (std::size_t i = 0; i < k; ++i) qt[i] /= z;
        q.push_back(std::move(qt));
        for (std::size_t i = 0; i < k; ++i) logw[i] -= eta * c[t][i];
    }
    return q;
}

SecondOrderCheck verify_second_order_bound(const std::vector<std::vector<double>>& q,
                                           const std::vector<std::vector<double>>& c,
                                           double eta) {
    SecondOrderCheck out;
    if (q.size() != c.size()) throw std::invalid_argument("trajectory/loss length mismatch");
    if (c.empty()) {
        out.holds = true;
        return out;
    }
    const std::size_t k = c.front().size();
    double mix_total = 0.0;    // sum_t q_t . c_t
    double second_order = 0.0; // sum_t q_t . c_t^2
    std::vector<double> arm_total(k, 0.0);
    for (std::size_t t = 0; t < c.size(); ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            mix_total += q[t][i] * c[t][i];
            second_order += q[t][i] * c[t][i] * c[t][i];
            arm_total[i] += c[t][i];
        }
    }
    out.lhs = mix_total - *std::min_element(arm_total.begin(), arm_total.end());
    out.rhs = std::log(static_cast<double>(k)) / eta + eta * second_order;
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

}  // namespace smb
