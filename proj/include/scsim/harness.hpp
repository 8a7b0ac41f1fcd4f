#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scsim/analytics.hpp"
#include "scsim/association.hpp"
#include "scsim/coloring.hpp"
#include "scsim/deployment.hpp"
#include "scsim/evaluation.hpp"
#include "scsim/load_estimation.hpp"
#include "scsim/propagation.hpp"
#include "scsim/scheduling.hpp"

namespace scsim {

enum class Scenario { hierarchical, fixed, both };
enum class DeploymentMode { poisson, fixed_count };
enum class LoadSolver { equal_power, newton };
enum class SchedulerMode { greedy, fractional };
enum class HierInterference { full, none };

struct ExperimentConfig {
    Scenario scenario = Scenario::both;
    DeploymentMode deployment = DeploymentMode::poisson;
    PropagationConfig prop; // lte_indoor by default
    // When false (default) the association/load pilot metric is the
    // path-loss-only gain; when true it includes the shadowing term.
    bool pilot_shadowing = false;
    double region_radius = 100.0;
    double lambda_f = 1.0 / 200.0;
    double lambda_u_ratio = 3.0;
    std::vector<double> demands_mbps = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    int n_prbs = 50;
    double tx_power_dbm = 20.0;
    double d_tilde = 20.0;
    int n_ap_fixed = 18;
    std::vector<int> nap_sweep; // non-empty switches simulate to the N_AP sweep
    int drops = 200;
    std::uint64_t base_seed = 1;
    LoadSolver solver = LoadSolver::equal_power;
    double newton_tol = 1e-8;
    int newton_max_iter = 100;
    SchedulerMode scheduler = SchedulerMode::greedy;
    HierInterference hier_interference = HierInterference::full;
    bool fixed_alloc_freeze = false; // reuse one subset draw across drops
    bool parallel = true;

    double lambda_u() const { return lambda_f * lambda_u_ratio; }
    double p_tot_w() const;
    Region region() const { return Region({0.0, 0.0}, region_radius); }
    AnalyticsConfig analytics() const;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
};

// Per-drop seeds are base_seed + drop index, so any drop can be re-run alone.
inline std::uint64_t drop_seed(std::uint64_t base, int index) {
    return base + static_cast<std::uint64_t>(index);
}

struct ResultRow {
    std::string scheme; // "hier" or "fixed"
    double demand_bps = 0.0;
    double lambda_f = 0.0;
    double lambda_u = 0.0;
    std::uint64_t drop_seed = 0;
    double outage_fraction = 0.0;
    double min_rate = 0.0;
    double min_normalized = 0.0;
    double throughput = 0.0;
    double mean_ap_load = 0.0;
    int colors_used = 0;
    int n_ap = 0;                    // 0 for the hierarchical scheme
    double served_throughput = 0.0;  // sum of min(rate, demand)
};

// Everything computed once per drop and shared by both schemes.
struct DropContext {
    NetworkRealization real;
    ChannelState channel;
    Association assoc;
    std::vector<double> demands;       // per user
    std::vector<double> loads;         // per AP
    InterferenceGraph graph;
    ChannelAllocation hier_alloc;
    int newton_failures = 0;
};

DropContext build_drop_context(const ExperimentConfig& cfg, double demand_bps,
                               std::uint64_t seed);

ResultRow evaluate_hierarchical(const DropContext& ctx, const ExperimentConfig& cfg,
                                std::uint64_t seed);
ResultRow evaluate_fixed(const DropContext& ctx, const ExperimentConfig& cfg, std::uint64_t seed,
                         int n_ap);

// One drop of the configured scenario; rows ordered hier-then-fixed.
std::vector<ResultRow> run_drop(const ExperimentConfig& cfg, double demand_bps,
                                std::uint64_t seed);

// Cartesian product of sweep values and drops; rows in deterministic
// (sweep value, drop, scheme) order regardless of worker interleaving.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

struct AggregateRow {
    std::string scheme;
    double demand_bps = 0.0;
    int n_ap = 0;
    int count = 0;
    double outage_mean = 0.0, outage_sem = 0.0;
    double min_rate_mean = 0.0, min_rate_sem = 0.0;
    double min_normalized_mean = 0.0;
    double throughput_mean = 0.0, throughput_sem = 0.0;
    double served_mean = 0.0;
    double mean_ap_load = 0.0;
};

std::vector<AggregateRow> aggregate_rows(const std::vector<ResultRow>& rows);

extern const char* kRowsCsvHeader;
void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
void write_manifest(std::ostream& os, const ExperimentConfig& cfg, std::size_t row_count,
                    double wall_seconds);

// ---- Monte Carlo counterparts of the closed forms --------------------------

// Connection distances of users on a disc of `region_radius` with the AP
// process extended `guard` metres beyond it (removes boundary truncation).
std::vector<double> mc_connection_distances(double lambda_f, double region_radius, double guard,
                                            int drops, int users_per_drop, std::uint64_t seed,
                                            bool parallel);

// Equal-power per-user loads under the power-law model, same geometry.
std::vector<double> mc_user_loads(const AnalyticsConfig& cfg, double demand_bps,
                                  double region_radius, double guard, int drops,
                                  int users_per_drop, std::uint64_t seed, bool parallel);

struct ApLoadSamples {
    std::vector<double> loads;
    int k_users = 0;
    int l_aps = 0;
};

// AP loads with PPP positions on the disc (Voronoi cells vary).
ApLoadSamples mc_ap_loads_ppp(const AnalyticsConfig& cfg, double demand_bps, int drops,
                              std::uint64_t seed, bool parallel);

// AP loads with a square lattice of equal-area cells (fixed-grid mode).
ApLoadSamples mc_ap_loads_grid(const AnalyticsConfig& cfg, double demand_bps, int drops,
                               std::uint64_t seed, bool parallel);

struct Step3OutagePoint {
    double demand_bps = 0.0;
    double shortfall = 0.0;        // DSATUR granted < requested, all APs
    double neighborhood = 0.0;     // closed-neighbourhood demand > N, all APs
    double shortfall_guard = 0.0;  // same, reference APs >= 2*d~ from the edge
    double neighborhood_guard = 0.0;
    long reference_aps = 0;
    long guarded_aps = 0;
};

Step3OutagePoint mc_step3_outage(const AnalyticsConfig& cfg, double demand_bps, int drops,
                                 std::uint64_t seed, bool parallel);

} // namespace scsim
