#include "scsim/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace scsim {

std::vector<double> interference_map(const ChannelState& ch, const Association& assoc,
                                     const std::vector<ApTransmission>& tx) {
    const int n_users = ch.n_users;
    const int n_prbs = ch.n_prbs;
    std::vector<double> interference(static_cast<std::size_t>(n_users) * n_prbs, 0.0);
    // accumulate every transmitter, then remove each user's serving AP
    for (int l = 0; l < ch.n_aps; ++l) {
        const double p = tx[l].power_per_prb;
        if (p <= 0.0 || tx[l].prbs.empty()) continue;
        for (int k = 0; k < n_users; ++k) {
            const std::size_t base = (static_cast<std::size_t>(l) * n_users + k) *
                                     static_cast<std::size_t>(n_prbs);
            double* row = interference.data() + static_cast<std::size_t>(k) * n_prbs;
            for (int n : tx[l].prbs) row[n] += p * ch.inst_gain[base + n];
        }
    }
    for (int k = 0; k < n_users; ++k) {
        const int l = assoc.serving_ap[k];
        const double p = tx[l].power_per_prb;
        if (p <= 0.0) continue;
        const std::size_t base =
            (static_cast<std::size_t>(l) * n_users + k) * static_cast<std::size_t>(n_prbs);
        double* row = interference.data() + static_cast<std::size_t>(k) * n_prbs;
        for (int n : tx[l].prbs) row[n] -= p * ch.inst_gain[base + n];
    }
    // clamp the subtraction residue
    for (auto& v : interference)
        if (v < 0.0) v = 0.0;
    return interference;
}

ChannelAllocation fixed_allocation(int n_aps, int n_prbs, int n_ap, std::mt19937_64& rng) {
    if (n_ap < 1 || n_ap > n_prbs)
        throw std::invalid_argument("fixed_allocation: need 1 <= N_AP <= N");
    ChannelAllocation alloc;
    alloc.prbs.assign(n_aps, {});
    alloc.requested.assign(n_aps, n_ap);
    std::vector<int> pool(n_prbs);
    for (int l = 0; l < n_aps; ++l) {
        std::iota(pool.begin(), pool.end(), 0);
        // partial Fisher-Yates draw of an n_ap-subset
        for (int i = 0; i < n_ap; ++i) {
            std::uniform_int_distribution<int> pick(i, n_prbs - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        alloc.prbs[l].assign(pool.begin(), pool.begin() + n_ap);
        std::sort(alloc.prbs[l].begin(), alloc.prbs[l].end());
    }
    alloc.colors_used = n_prbs; // identity palette; not meaningful here
    return alloc;
}

DropMetrics drop_metrics(const std::vector<double>& rates, const std::vector<double>& demands) {
    if (rates.size() != demands.size())
        throw std::invalid_argument("drop_metrics: size mismatch");
    DropMetrics m;
    m.rates = rates;
    m.outage.resize(rates.size());
    m.min_rate = std::numeric_limits<double>::infinity();
    m.min_normalized = std::numeric_limits<double>::infinity();
    int in_outage = 0;
    for (std::size_t k = 0; k < rates.size(); ++k) {
        m.outage[k] = rates[k] < demands[k];
        if (m.outage[k]) ++in_outage;
        m.throughput += rates[k];
        m.served_throughput += std::min(rates[k], demands[k]);
        m.min_rate = std::min(m.min_rate, rates[k]);
        if (demands[k] > 0.0) m.min_normalized = std::min(m.min_normalized, rates[k] / demands[k]);
    }
    m.outage_fraction = rates.empty() ? 0.0 : static_cast<double>(in_outage) / rates.size();
    if (rates.empty()) m.min_rate = m.min_normalized = 0.0;
    return m;
}

} // namespace scsim
