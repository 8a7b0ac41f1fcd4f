#pragma once

#include <random>
#include <vector>

#include "scsim/association.hpp"
#include "scsim/coloring.hpp"
#include "scsim/propagation.hpp"

namespace scsim {

// What an AP actually radiates: the PRBs some member occupies and the
// per-PRB transmit power.
struct ApTransmission {
    std::vector<int> prbs;
    double power_per_prb = 0.0;
};

// Cross-AP interference I[k * N + n]: every AP other than user k's serving
// AP that transmits on PRB n contributes power * h(i, k, n).
std::vector<double> interference_map(const ChannelState& ch, const Association& assoc,
                                     const std::vector<ApTransmission>& tx);

// Baseline: each AP independently draws a uniform random n_ap-subset of the
// N PRBs.
ChannelAllocation fixed_allocation(int n_aps, int n_prbs, int n_ap, std::mt19937_64& rng);

struct DropMetrics {
    double outage_fraction = 0.0;
    double min_rate = 0.0;
    double min_normalized = 0.0;
    double throughput = 0.0;        // sum of achieved rates
    double served_throughput = 0.0; // sum of min(rate, demand)
    std::vector<double> rates;
    std::vector<bool> outage; // rate strictly below demand
};

DropMetrics drop_metrics(const std::vector<double>& rates, const std::vector<double>& demands);

} // namespace scsim
