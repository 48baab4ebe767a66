#include "smb/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "smb/rng.hpp"
#include "smb/smb.hpp"

namespace smb {

double buyer_revenue(const Buyer& buyer, std::span<const double> window) {
    if (static_cast<int>(window.size()) != buyer.patience + 1) {
        throw WindowLengthMismatch("window of " + std::to_string(window.size()) +
                                   " days for patience " + std::to_string(buyer.patience));
    }
    const double lowest = *std::min_element(window.begin(), window.end());
    return lowest <= buyer.value ? lowest : 0.0;
}

namespace {

void validate_instance(const PricingInstance& instance) {
    if (instance.tau_bar < 1) throw std::invalid_argument("tau_bar must be >= 1");
    if (instance.horizon % (2 * static_cast<std::int64_t>(instance.tau_bar)) != 0) {
        throw IndivisibleHorizon("horizon " + std::to_string(instance.horizon) +
                                 " not divisible by 2*tau_bar = " +
                                 std::to_string(2 * instance.tau_bar));
    }
    if (static_cast<std::int64_t>(instance.buyers.size()) != instance.horizon) {
        throw std::invalid_argument("buyer stream length does not match horizon");
    }
    for (const Buyer& b : instance.buyers) {
        if (!(b.value >= 0.0 && b.value <= 1.0)) {
            throw std::invalid_argument("buyer value outside [0,1]");
        }
        if (b.patience < 0 || b.patience > instance.tau_bar) {
            throw std::invalid_argument("buyer patience outside 0..tau_bar");
        }
    }
}

int price_grid_size(std::int64_t blocks) {
    const int rounded =
        std::max<int>(2, static_cast<int>(std::llround(std::cbrt(static_cast<double>(blocks)))));
    return pad_action_count(rounded, std::max<std::int64_t>(blocks, 1)).padded_k;
}

}  // namespace

SellerRun run_pricing(const PricingInstance& instance, std::uint64_t seed,
                      const PricingOptions& options) {
    validate_instance(instance);
    const int tau = instance.tau_bar;
    const std::int64_t blocks =
        options.prose_blocks ? instance.horizon / tau : instance.horizon / (2 * tau);
    if (blocks < 1) throw std::invalid_argument("horizon too short for one block");

    SellerRun run;
    run.block_count = blocks;
    run.days_served = blocks * tau;
    run.tau_bar = tau;
    run.target_k = std::cbrt(static_cast<double>(blocks));
    run.k = price_grid_size(blocks);
    run.eta = 2.0 / std::sqrt(static_cast<double>(blocks) * run.k);

    Rng master(seed);
    const std::uint64_t learner_seed = master.next_u64();
    run.bernoulli.resize(blocks + 3);
    if (options.beta_override.empty()) {
        for (auto& b : run.bernoulli) b = static_cast<int>(master.next_u64() >> 63);
    } else {
        if (options.beta_override.size() < run.bernoulli.size()) {
            throw std::invalid_argument("beta override needs block_count+3 entries");
        }
        std::copy_n(options.beta_override.begin(), run.bernoulli.size(), run.bernoulli.begin());
    }

    const MetricTree tree = MetricTree::build(run.k);
    Smb learner(tree, run.eta, learner_seed, Smb::Path::dense);

    run.block_prices.resize(blocks + 2, 0.0);  // 1-based rho'_1..rho'_{blocks+1}
    run.daily_prices.resize((blocks + 1) * tau + 1, 0.0);  // 1-based
    run.block_feedback.assign(blocks + 1, 0.0);            // 1-based
    run.revenue_per_day.assign(run.days_served + 1, 0.0);  // 1-based
    run.switched.assign(blocks + 1, 0);
    run.updated.assign(blocks + 1, 0);

    int arm = learner.sample_action();
    run.block_prices[1] = static_cast<double>(arm) / run.k;
    for (int day = 1; day <= tau; ++day) run.daily_prices[day] = run.block_prices[1];

    const auto beta = [&](std::int64_t j) { return run.bernoulli[j]; };

    for (std::int64_t t = 1; t <= blocks; ++t) {
        // Price for block t+1: fresh arm only on a switch gate.
        if (beta(t) == 0 && beta(t + 1) == 1) {
            arm = learner.sample_action();
            run.switched[t] = 1;
        }
        run.block_prices[t + 1] = static_cast<double>(arm) / run.k;
        for (std::int64_t day = t * tau + 1; day <= (t + 1) * tau; ++day) {
            run.daily_prices[day] = run.block_prices[t + 1];
        }

        // Revenue for block t; every window is already announced.
        double total = 0.0;
        for (std::int64_t day = (t - 1) * tau + 1; day <= t * tau; ++day) {
            const Buyer& buyer = instance.buyers[day - 1];
            const std::span<const double> window(&run.daily_prices[day],
                                                 static_cast<std::size_t>(buyer.patience) + 1);
            const double r = buyer_revenue(buyer, window);
            run.revenue_per_day[day] = r;
            total += r;
        }
        run.block_feedback[t] = total / tau;

        if (beta(t + 1) == 0 && beta(t + 2) == 1) {
            learner.finish_round(1.0 - run.block_feedback[t]);
            run.updated[t] = 1;
        }
    }
    return run;
}

BestFixedPrice best_fixed_price(const PricingInstance& instance, std::int64_t day_limit) {
    const std::int64_t n = day_limit < 0
                               ? static_cast<std::int64_t>(instance.buyers.size())
                               : std::min<std::int64_t>(day_limit, instance.buyers.size());
    BestFixedPrice best;
    if (n == 0) return best;

    std::vector<double> values;
    values.reserve(n);
    for (std::int64_t i = 0; i < n; ++i) values.push_back(instance.buyers[i].value);
    std::sort(values.begin(), values.end());

    std::vector<double> candidates = values;
    const std::int64_t blocks = instance.horizon / (2 * static_cast<std::int64_t>(instance.tau_bar));
    const int k = price_grid_size(std::max<std::int64_t>(blocks, 1));
    for (int i = 1; i <= k; ++i) candidates.push_back(static_cast<double>(i) / k);

    best.revenue = -1.0;
    for (double rho : candidates) {
        const auto first = std::lower_bound(values.begin(), values.end(), rho);
        const double revenue = rho * static_cast<double>(values.end() - first);
        if (revenue > best.revenue) {
            best.revenue = revenue;
            best.price = rho;
        }
    }
    best.revenue = std::max(best.revenue, 0.0);
    return best;
}

double pricing_regret(const PricingInstance& instance, const SellerRun& run) {
    double realized = 0.0;
    for (std::int64_t day = 1; day <= run.days_served; ++day) {
        realized += run.revenue_per_day[day];
    }
    return best_fixed_price(instance, run.days_served).revenue - realized;
}

std::vector<Buyer> read_buyers_csv(std::istream& in) {
    std::vector<Buyer> buyers;
    std::string line;
    if (!std::getline(in, line)) return buyers;
    if (line != "value,patience") {
        throw std::invalid_argument("expected header 'value,patience', got '" + line + "'");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Buyer b;
        char comma = 0;
        if (!(row >> b.value >> comma >> b.patience) || comma != ',') {
            throw std::invalid_argument("malformed buyer row: '" + line + "'");
        }
        buyers.push_back(b);
    }
    return buyers;
}

void write_run_csv(const SellerRun& run, std::ostream& out) {
    out << "block,price,beta,switched,updated,block_revenue\n";
    char buf[160];
    for (std::int64_t t = 1; t <= run.block_count; ++t) {
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%d,%d,%d,%.17g\n",
                      static_cast<long long>(t), run.block_prices[t], run.bernoulli[t],
                      static_cast<int>(run.switched[t]), static_cast<int>(run.updated[t]),
                      run.block_feedback[t]);
        out << buf;
    }
}

}  // namespace smb
