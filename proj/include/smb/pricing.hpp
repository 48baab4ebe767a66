#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "smb/errors.hpp"
#include "smb/metric_tree.hpp"

// Adaptive posted pricing against patient buyers, reduced to the tree
// learner over grid prices {1/k, ..., 1}. Days are grouped into blocks of
// tau_bar consecutive days with a constant price; fair Bernoulli draws gate
// both price switches and learner updates so that feedback is only consumed
// on blocks whose price also holds through the following block.

namespace smb {

struct Buyer {
    double value = 0.0;  // in [0,1]
    int patience = 0;    // in {0..tau_bar}
};

// Pays the minimum price in its window if that minimum is at most the value.
// The window must span exactly patience+1 days.
double buyer_revenue(const Buyer& buyer, std::span<const double> window);

struct PricingInstance {
    std::vector<Buyer> buyers;  // b_1..b_T
    int tau_bar = 1;
    std::int64_t horizon = 0;  // T, divisible by 2*tau_bar
};

struct PricingOptions {
    // Block count: T/(2*tau_bar) by default; T/tau_bar when prose_blocks is
    // set. The default serves the first block_count*tau_bar days.
    bool prose_blocks = false;
    // When non-empty, replaces the Bernoulli draws (needs block_count+3
    // entries, indexed from beta_0).
    std::vector<int> beta_override;
};

struct SellerRun {
    std::int64_t block_count = 0;  // number of block rounds
    std::int64_t days_served = 0;  // block_count * tau_bar
    int tau_bar = 1;
    int k = 0;           // grid size (power of two)
    double target_k = 0; // unrounded block_count^(1/3)
    double eta = 0.0;

    std::vector<double> block_prices;   // rho'_1..rho'_{block_count+1}
    std::vector<double> daily_prices;   // rho_1..rho_{(block_count+1)*tau_bar}
    std::vector<int> bernoulli;         // beta_0..beta_{block_count+2}
    std::vector<double> block_feedback; // r'_1..r'_{block_count}
    std::vector<double> revenue_per_day;
    std::vector<char> switched;  // per block: fresh arm sampled
    std::vector<char> updated;   // per block: learner consumed 1 - r'_t
};

// Throws IndivisibleHorizon unless horizon is divisible by 2*tau_bar.
SellerRun run_pricing(const PricingInstance& instance, std::uint64_t seed,
                      const PricingOptions& options = {});

struct BestFixedPrice {
    double price = 1.0;
    double revenue = 0.0;
};

// Best fixed price in hindsight over the first day_limit buyers (all buyers
// when day_limit < 0). Candidates are every buyer value plus the price grid;
// under a fixed price each buyer pays iff the price is at most her value, so
// the buyer values cover the exact maximizer over [0,1].
BestFixedPrice best_fixed_price(const PricingInstance& instance, std::int64_t day_limit = -1);

// Best fixed revenue over the served days minus the run's realized revenue.
double pricing_regret(const PricingInstance& instance, const SellerRun& run);

// CSV header "value,patience".
std::vector<Buyer> read_buyers_csv(std::istream& in);
// CSV header "block,price,beta,switched,updated,block_revenue".
void write_run_csv(const SellerRun& run, std::ostream& out);

}  // namespace smb
