#include "scsim/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "scsim/parallel.hpp"

namespace scsim {

namespace {

constexpr std::uint64_t kChannelSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kFixedAllocSalt = 0xa24baed4963ee407ULL;

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::vector<double>& pilot_matrix(const ExperimentConfig& cfg, const ChannelState& ch) {
    return cfg.pilot_shadowing ? ch.avg_power : ch.pilot_power;
}

} // namespace

double ExperimentConfig::p_tot_w() const { return dbm_to_watt(tx_power_dbm); }

AnalyticsConfig ExperimentConfig::analytics() const {
    AnalyticsConfig a;
    a.lambda_f = lambda_f;
    a.lambda_u = lambda_u();
    a.alpha = prop.alpha;
    a.gamma0 = p_tot_w() * from_db(prop.l0_db) / (n_prbs * noise_power_w(prop));
    a.bandwidth = prop.prb_bandwidth_hz;
    a.n_prbs = n_prbs;
    a.k_users = lambda_u() * region().area();
    a.l_aps = lambda_f * region().area();
    a.d_tilde = d_tilde;
    a.region_radius = region_radius;
    return a;
}

// ---- configuration json -----------------------------------------------------

namespace {

const char* scenario_str(Scenario s) {
    switch (s) {
        case Scenario::hierarchical: return "hierarchical";
        case Scenario::fixed: return "fixed";
        default: return "both";
    }
}
Scenario scenario_from(const std::string& s) {
    if (s == "hierarchical") return Scenario::hierarchical;
    if (s == "fixed") return Scenario::fixed;
    if (s == "both") return Scenario::both;
    throw std::invalid_argument("unknown scenario: " + s);
}

} // namespace

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario_str(scenario);
    j["deployment"] = deployment == DeploymentMode::poisson ? "poisson" : "fixed_count";
    j["channel_model"] = prop.model == CarrierModel::lte_indoor ? "lte_indoor" : "power_law";
    j["alpha"] = prop.alpha;
    j["l0_db"] = prop.l0_db;
    j["shadowing_sigma_db"] = prop.shadowing_sigma_db;
    j["wall_loss_db"] = prop.wall_loss_db;
    j["window_loss_db"] = prop.window_loss_db;
    j["d_in_range"] = {prop.d_in_min, prop.d_in_max};
    j["min_distance_m"] = prop.min_distance_m;
    j["noise_psd_dbm_hz"] = prop.noise_psd_dbm_hz;
    j["noise_figure_db"] = prop.noise_figure_db;
    j["prb_bandwidth_hz"] = prop.prb_bandwidth_hz;
    j["pilot_shadowing"] = pilot_shadowing;
    j["region_radius_m"] = region_radius;
    j["lambda_f"] = lambda_f;
    j["lambda_u_ratio"] = lambda_u_ratio;
    j["demands_mbps"] = demands_mbps;
    j["n_prbs"] = n_prbs;
    j["tx_power_dbm"] = tx_power_dbm;
    j["d_tilde_m"] = d_tilde;
    j["n_ap_fixed"] = n_ap_fixed;
    j["nap_sweep"] = nap_sweep;
    j["drops"] = drops;
    j["base_seed"] = base_seed;
    j["load_solver"] = solver == LoadSolver::newton ? "newton" : "equal_power";
    j["newton_tol"] = newton_tol;
    j["newton_max_iter"] = newton_max_iter;
    j["scheduler"] = scheduler == SchedulerMode::fractional ? "fractional" : "greedy";
    j["hier_interference"] = hier_interference == HierInterference::none ? "none" : "full";
    j["fixed_alloc_freeze"] = fixed_alloc_freeze;
    j["parallel"] = parallel;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    c.scenario = scenario_from(j.value("scenario", "both"));
    c.deployment = j.value("deployment", "poisson") == std::string("fixed_count")
                       ? DeploymentMode::fixed_count
                       : DeploymentMode::poisson;
    c.prop.model = j.value("channel_model", "lte_indoor") == std::string("power_law")
                       ? CarrierModel::power_law
                       : CarrierModel::lte_indoor;
    c.prop.alpha = j.value("alpha", c.prop.alpha);
    c.prop.l0_db = j.value("l0_db", c.prop.l0_db);
    c.prop.shadowing_sigma_db = j.value("shadowing_sigma_db", c.prop.shadowing_sigma_db);
    c.prop.wall_loss_db = j.value("wall_loss_db", c.prop.wall_loss_db);
    c.prop.window_loss_db = j.value("window_loss_db", c.prop.window_loss_db);
    if (j.contains("d_in_range")) {
        c.prop.d_in_min = j["d_in_range"][0].get<double>();
        c.prop.d_in_max = j["d_in_range"][1].get<double>();
    }
    c.prop.min_distance_m = j.value("min_distance_m", c.prop.min_distance_m);
    c.prop.noise_psd_dbm_hz = j.value("noise_psd_dbm_hz", c.prop.noise_psd_dbm_hz);
    c.prop.noise_figure_db = j.value("noise_figure_db", c.prop.noise_figure_db);
    c.prop.prb_bandwidth_hz = j.value("prb_bandwidth_hz", c.prop.prb_bandwidth_hz);
    c.pilot_shadowing = j.value("pilot_shadowing", c.pilot_shadowing);
    c.region_radius = j.value("region_radius_m", c.region_radius);
    c.lambda_f = j.value("lambda_f", c.lambda_f);
    c.lambda_u_ratio = j.value("lambda_u_ratio", c.lambda_u_ratio);
    c.demands_mbps = j.value("demands_mbps", c.demands_mbps);
    c.n_prbs = j.value("n_prbs", c.n_prbs);
    c.tx_power_dbm = j.value("tx_power_dbm", c.tx_power_dbm);
    c.d_tilde = j.value("d_tilde_m", c.d_tilde);
    c.n_ap_fixed = j.value("n_ap_fixed", c.n_ap_fixed);
    c.nap_sweep = j.value("nap_sweep", c.nap_sweep);
    c.drops = j.value("drops", c.drops);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.solver = j.value("load_solver", "equal_power") == std::string("newton")
                   ? LoadSolver::newton
                   : LoadSolver::equal_power;
    c.newton_tol = j.value("newton_tol", c.newton_tol);
    c.newton_max_iter = j.value("newton_max_iter", c.newton_max_iter);
    c.scheduler = j.value("scheduler", "greedy") == std::string("fractional")
                      ? SchedulerMode::fractional
                      : SchedulerMode::greedy;
    c.hier_interference = j.value("hier_interference", "full") == std::string("none")
                              ? HierInterference::none
                              : HierInterference::full;
    c.fixed_alloc_freeze = j.value("fixed_alloc_freeze", c.fixed_alloc_freeze);
    c.parallel = j.value("parallel", c.parallel);
    return c;
}

// ---- drop pipeline ----------------------------------------------------------

DropContext build_drop_context(const ExperimentConfig& cfg, double demand_bps,
                               std::uint64_t seed) {
    DropContext ctx;
    const Region region = cfg.region();
    if (cfg.deployment == DeploymentMode::poisson) {
        ctx.real = sample_realization(cfg.lambda_f, cfg.lambda_u(), region, seed);
    } else {
        const auto l = static_cast<std::size_t>(std::lround(cfg.lambda_f * region.area()));
        const auto k = static_cast<std::size_t>(std::lround(cfg.lambda_u() * region.area()));
        ctx.real = sample_realization_fixed(std::max<std::size_t>(l, 1),
                                            std::max<std::size_t>(k, 1), region, seed);
    }

    std::mt19937_64 ch_rng(mix_seed(seed, kChannelSalt));
    ctx.channel = build_channel(ctx.real, cfg.prop, cfg.n_prbs, ch_rng);

    const int n_aps = ctx.channel.n_aps;
    const int n_users = ctx.channel.n_users;
    ctx.assoc = associate(n_aps, n_users, pilot_matrix(cfg, ctx.channel));
    ctx.demands.assign(n_users, demand_bps);

    const auto& pilot = pilot_matrix(cfg, ctx.channel);
    const double p_tot = cfg.p_tot_w();
    std::vector<LoadEstimate> estimates(n_aps);
    for (int l = 0; l < n_aps; ++l) {
        const auto& members = ctx.assoc.members[l];
        if (members.empty()) continue;
        LoadProblem prob;
        prob.p_tot = p_tot;
        prob.sigma2 = ctx.channel.noise_w;
        prob.bandwidth = cfg.prop.prb_bandwidth_hz;
        prob.n_prbs = cfg.n_prbs;
        prob.demands.reserve(members.size());
        prob.gains.reserve(members.size());
        for (int k : members) {
            prob.demands.push_back(demand_bps);
            prob.gains.push_back(pilot[static_cast<std::size_t>(l) * n_users + k]);
        }
        if (cfg.solver == LoadSolver::newton) {
            auto [est, state] = estimate_load_newton(
                prob, NewtonOptions{cfg.newton_tol, cfg.newton_max_iter});
            if (!state.converged) ++ctx.newton_failures;
            estimates[l] = std::move(est);
        } else {
            estimates[l] = estimate_load_equal_power(prob);
        }
    }
    ctx.loads = aggregate_ap_loads(ctx.assoc, estimates);

    ctx.graph = build_interference_graph(ctx.real.aps, cfg.d_tilde, ctx.loads);
    const std::vector<int> colors = dsatur_color(ctx.graph, cfg.n_prbs);
    ctx.hier_alloc = allocation_from_coloring(colors, ctx.graph);
    return ctx;
}

namespace {

struct SchemeEvaluation {
    DropMetrics metrics;
    int colors_used = 0;
};

// Schedules every AP on its allocation, evaluates cross-AP interference and
// produces per-user rates.
SchemeEvaluation evaluate_allocation(const DropContext& ctx, const ExperimentConfig& cfg,
                                     const ChannelAllocation& alloc, bool with_interference) {
    const ChannelState& ch = ctx.channel;
    const int n_aps = ch.n_aps;
    const int n_users = ch.n_users;
    const double p_tot = cfg.p_tot_w();

    std::vector<Schedule> schedules(n_aps);
    std::vector<std::vector<std::vector<double>>> gain_slabs(n_aps);
    for (int l = 0; l < n_aps; ++l) {
        const auto& members = ctx.assoc.members[l];
        const auto& granted = alloc.prbs[l];
        if (members.empty() || granted.empty()) continue;
        auto& gains = gain_slabs[l];
        gains.assign(members.size(), std::vector<double>(granted.size()));
        std::vector<double> demands(members.size());
        for (std::size_t m = 0; m < members.size(); ++m) {
            demands[m] = ctx.demands[members[m]];
            for (std::size_t jj = 0; jj < granted.size(); ++jj)
                gains[m][jj] = ch.h(l, members[m], granted[jj]);
        }
        Schedule sched =
            greedy_maxmin(gains, demands, granted, p_tot, ch.noise_w, cfg.prop.prb_bandwidth_hz);
        if (cfg.scheduler == SchedulerMode::fractional)
            sched = fractional_refine(sched, gains, demands, ch.noise_w,
                                      cfg.prop.prb_bandwidth_hz);
        schedules[l] = std::move(sched);
    }

    // what each AP radiates: granted slots that some member occupies
    std::vector<ApTransmission> tx(n_aps);
    for (int l = 0; l < n_aps; ++l) {
        const Schedule& s = schedules[l];
        if (s.granted.empty() || s.n_members == 0) continue;
        tx[l].power_per_prb = s.power_per_prb;
        for (std::size_t jj = 0; jj < s.granted.size(); ++jj) {
            double used = 0.0;
            for (int m = 0; m < s.n_members; ++m) used += s.frac(m, static_cast<int>(jj));
            if (used > 1e-12) tx[l].prbs.push_back(s.granted[jj]);
        }
    }

    std::vector<double> imap;
    if (with_interference) imap = interference_map(ch, ctx.assoc, tx);

    std::vector<double> rates(n_users, 0.0);
    for (int l = 0; l < n_aps; ++l) {
        const Schedule& s = schedules[l];
        const auto& members = ctx.assoc.members[l];
        if (s.granted.empty() || members.empty()) continue;
        std::vector<std::vector<double>> interference(
            members.size(), std::vector<double>(s.granted.size(), 0.0));
        if (with_interference) {
            for (std::size_t m = 0; m < members.size(); ++m)
                for (std::size_t jj = 0; jj < s.granted.size(); ++jj)
                    interference[m][jj] =
                        imap[static_cast<std::size_t>(members[m]) * ch.n_prbs + s.granted[jj]];
        }
        std::vector<double> demands(members.size());
        for (std::size_t m = 0; m < members.size(); ++m) demands[m] = ctx.demands[members[m]];
        const AchievedRates ar = achieved_rates(s, gain_slabs[l], interference, ch.noise_w,
                                                cfg.prop.prb_bandwidth_hz, demands);
        for (std::size_t m = 0; m < members.size(); ++m) rates[members[m]] = ar.rate[m];
    }

    SchemeEvaluation ev;
    ev.metrics = drop_metrics(rates, ctx.demands);
    return ev;
}

double mean_load(const std::vector<double>& loads) {
    if (loads.empty()) return 0.0;
    double s = 0.0;
    for (double v : loads) s += v;
    return s / loads.size();
}

ResultRow base_row(const DropContext& ctx, const ExperimentConfig& cfg, double demand,
                   std::uint64_t seed) {
    ResultRow row;
    row.demand_bps = demand;
    row.lambda_f = cfg.lambda_f;
    row.lambda_u = cfg.lambda_u();
    row.drop_seed = seed;
    row.mean_ap_load = mean_load(ctx.loads);
    return row;
}

} // namespace

ResultRow evaluate_hierarchical(const DropContext& ctx, const ExperimentConfig& cfg,
                                std::uint64_t seed) {
    SchemeEvaluation ev = evaluate_allocation(
        ctx, cfg, ctx.hier_alloc, cfg.hier_interference == HierInterference::full);
    ResultRow row = base_row(ctx, cfg, ctx.demands.empty() ? 0.0 : ctx.demands.front(), seed);
    row.scheme = "hier";
    row.outage_fraction = ev.metrics.outage_fraction;
    row.min_rate = ev.metrics.min_rate;
    row.min_normalized = ev.metrics.min_normalized;
    row.throughput = ev.metrics.throughput;
    row.served_throughput = ev.metrics.served_throughput;
    row.colors_used = ctx.hier_alloc.colors_used;
    row.n_ap = 0;
    return row;
}

ResultRow evaluate_fixed(const DropContext& ctx, const ExperimentConfig& cfg, std::uint64_t seed,
                         int n_ap) {
    const std::uint64_t draw_seed = cfg.fixed_alloc_freeze ? cfg.base_seed : seed;
    std::mt19937_64 rng(mix_seed(draw_seed, kFixedAllocSalt + static_cast<std::uint64_t>(n_ap)));
    const ChannelAllocation alloc =
        fixed_allocation(ctx.channel.n_aps, cfg.n_prbs, n_ap, rng);
    SchemeEvaluation ev = evaluate_allocation(ctx, cfg, alloc, true);
    ResultRow row = base_row(ctx, cfg, ctx.demands.empty() ? 0.0 : ctx.demands.front(), seed);
    row.scheme = "fixed";
    row.outage_fraction = ev.metrics.outage_fraction;
    row.min_rate = ev.metrics.min_rate;
    row.min_normalized = ev.metrics.min_normalized;
    row.throughput = ev.metrics.throughput;
    row.served_throughput = ev.metrics.served_throughput;
    std::set<int> used;
    for (const auto& prbs : alloc.prbs) used.insert(prbs.begin(), prbs.end());
    row.colors_used = static_cast<int>(used.size());
    row.n_ap = n_ap;
    return row;
}

std::vector<ResultRow> run_drop(const ExperimentConfig& cfg, double demand_bps,
                                std::uint64_t seed) {
    const DropContext ctx = build_drop_context(cfg, demand_bps, seed);
    std::vector<ResultRow> rows;
    if (cfg.scenario != Scenario::fixed) rows.push_back(evaluate_hierarchical(ctx, cfg, seed));
    if (cfg.scenario != Scenario::hierarchical)
        rows.push_back(evaluate_fixed(ctx, cfg, seed, cfg.n_ap_fixed));
    return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
    if (cfg.drops < 1) throw std::invalid_argument("run_sweep: drops must be >= 1");
    std::vector<ResultRow> rows;
    if (cfg.nap_sweep.empty()) {
        if (cfg.demands_mbps.empty()) throw std::invalid_argument("run_sweep: empty sweep");
        const int units = static_cast<int>(cfg.demands_mbps.size()) * cfg.drops;
        std::vector<std::vector<ResultRow>> unit_rows(units);
        parallel_for(units, cfg.parallel, [&](int u) {
            const int di = u / cfg.drops;
            const int dr = u % cfg.drops;
            unit_rows[u] = run_drop(cfg, cfg.demands_mbps[di] * 1e6,
                                    drop_seed(cfg.base_seed, dr));
        });
        for (auto& ur : unit_rows)
            for (auto& r : ur) rows.push_back(std::move(r));
    } else {
        // N_AP sweep reuses one realization/channel per drop across all points
        const double demand = cfg.demands_mbps.front() * 1e6;
        std::vector<std::vector<ResultRow>> unit_rows(cfg.drops);
        parallel_for(cfg.drops, cfg.parallel, [&](int dr) {
            const std::uint64_t seed = drop_seed(cfg.base_seed, dr);
            const DropContext ctx = build_drop_context(cfg, demand, seed);
            auto& out = unit_rows[dr];
            if (cfg.scenario != Scenario::fixed)
                out.push_back(evaluate_hierarchical(ctx, cfg, seed));
            if (cfg.scenario != Scenario::hierarchical)
                for (int nap : cfg.nap_sweep) out.push_back(evaluate_fixed(ctx, cfg, seed, nap));
        });
        for (auto& ur : unit_rows)
            for (auto& r : ur) rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        if (a.demand_bps != b.demand_bps) return a.demand_bps < b.demand_bps;
        if (a.n_ap != b.n_ap) return a.n_ap < b.n_ap;
        return a.drop_seed < b.drop_seed;
    });
    return rows;
}

std::vector<AggregateRow> aggregate_rows(const std::vector<ResultRow>& rows) {
    std::vector<AggregateRow> agg;
    auto find = [&](const ResultRow& r) -> AggregateRow& {
        for (auto& a : agg)
            if (a.scheme == r.scheme && a.demand_bps == r.demand_bps && a.n_ap == r.n_ap)
                return a;
        agg.emplace_back();
        agg.back().scheme = r.scheme;
        agg.back().demand_bps = r.demand_bps;
        agg.back().n_ap = r.n_ap;
        return agg.back();
    };
    // two passes: means, then standard errors
    for (const auto& r : rows) {
        AggregateRow& a = find(r);
        ++a.count;
        a.outage_mean += r.outage_fraction;
        a.min_rate_mean += r.min_rate;
        a.min_normalized_mean += r.min_normalized;
        a.throughput_mean += r.throughput;
        a.served_mean += r.served_throughput;
        a.mean_ap_load += r.mean_ap_load;
    }
    for (auto& a : agg) {
        a.outage_mean /= a.count;
        a.min_rate_mean /= a.count;
        a.min_normalized_mean /= a.count;
        a.throughput_mean /= a.count;
        a.served_mean /= a.count;
        a.mean_ap_load /= a.count;
    }
    for (const auto& r : rows) {
        AggregateRow& a = find(r);
        const double d1 = r.outage_fraction - a.outage_mean;
        const double d2 = r.min_rate - a.min_rate_mean;
        const double d3 = r.throughput - a.throughput_mean;
        a.outage_sem += d1 * d1;
        a.min_rate_sem += d2 * d2;
        a.throughput_sem += d3 * d3;
    }
    for (auto& a : agg) {
        const double denom = a.count > 1 ? static_cast<double>(a.count) * (a.count - 1) : 1.0;
        a.outage_sem = std::sqrt(a.outage_sem / denom);
        a.min_rate_sem = std::sqrt(a.min_rate_sem / denom);
        a.throughput_sem = std::sqrt(a.throughput_sem / denom);
    }
    return agg;
}

const char* kRowsCsvHeader =
    "scheme,R_bps,lambda_f,lambda_u,drop_seed,outage_fraction,min_rate_bps,min_normalized,"
    "throughput_bps,mean_ap_load,colors_used,n_ap,served_throughput_bps";

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kRowsCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.scheme << ',' << fmt_double(r.demand_bps) << ',' << fmt_double(r.lambda_f) << ','
           << fmt_double(r.lambda_u) << ',' << r.drop_seed << ','
           << fmt_double(r.outage_fraction) << ',' << fmt_double(r.min_rate) << ','
           << fmt_double(r.min_normalized) << ',' << fmt_double(r.throughput) << ','
           << fmt_double(r.mean_ap_load) << ',' << r.colors_used << ',' << r.n_ap << ','
           << fmt_double(r.served_throughput) << '\n';
    }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
    os << "scheme,R_bps,n_ap,drops,outage_mean,outage_sem,min_rate_mean,min_rate_sem,"
          "min_normalized_mean,throughput_mean,throughput_sem,served_throughput_mean,"
          "mean_ap_load\n";
    for (const auto& a : rows) {
        os << a.scheme << ',' << fmt_double(a.demand_bps) << ',' << a.n_ap << ',' << a.count
           << ',' << fmt_double(a.outage_mean) << ',' << fmt_double(a.outage_sem) << ','
           << fmt_double(a.min_rate_mean) << ',' << fmt_double(a.min_rate_sem) << ','
           << fmt_double(a.min_normalized_mean) << ',' << fmt_double(a.throughput_mean) << ','
           << fmt_double(a.throughput_sem) << ',' << fmt_double(a.served_mean) << ','
           << fmt_double(a.mean_ap_load) << '\n';
    }
}

void write_manifest(std::ostream& os, const ExperimentConfig& cfg, std::size_t row_count,
                    double wall_seconds) {
    nlohmann::json j;
    j["tool"] = "scsim";
    j["version"] = "0.1.0";
    j["config"] = nlohmann::json::parse(cfg.to_json());
    j["rows"] = row_count;
    j["wall_seconds"] = wall_seconds;
    j["workers"] = worker_count();
    os << j.dump(2) << '\n';
}

// ---- Monte Carlo validation helpers -----------------------------------------

std::vector<double> mc_connection_distances(double lambda_f, double region_radius, double guard,
                                            int drops, int users_per_drop, std::uint64_t seed,
                                            bool parallel) {
    std::vector<double> out(static_cast<std::size_t>(drops) * users_per_drop);
    const Region ap_region({0.0, 0.0}, region_radius + guard);
    const Region user_region({0.0, 0.0}, region_radius);
    parallel_for(drops, parallel, [&](int i) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        std::vector<Point> aps;
        do {
            aps = sample_ppp(lambda_f, ap_region, rng);
        } while (aps.empty());
        const std::vector<Point> users =
            sample_uniform_points(static_cast<std::size_t>(users_per_drop), user_region, rng);
        for (int k = 0; k < users_per_drop; ++k) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& ap : aps) best = std::min(best, pairwise_distance(users[k], ap));
            out[static_cast<std::size_t>(i) * users_per_drop + k] = best;
        }
    });
    return out;
}

std::vector<double> mc_user_loads(const AnalyticsConfig& cfg, double demand_bps,
                                  double region_radius, double guard, int drops,
                                  int users_per_drop, std::uint64_t seed, bool parallel) {
    std::vector<double> d = mc_connection_distances(cfg.lambda_f, region_radius, guard, drops,
                                                    users_per_drop, seed, parallel);
    for (auto& v : d) {
        const double dist = std::max(v, 1e-12);
        v = demand_bps /
            (cfg.bandwidth * std::log2(1.0 + cfg.gamma0 * std::pow(dist, -cfg.alpha)));
    }
    return d;
}

ApLoadSamples mc_ap_loads_ppp(const AnalyticsConfig& cfg, double demand_bps, int drops,
                              std::uint64_t seed, bool parallel) {
    ApLoadSamples out;
    out.l_aps = static_cast<int>(std::lround(cfg.l_aps));
    out.k_users = static_cast<int>(std::lround(cfg.k_users));
    const Region region({0.0, 0.0}, cfg.region_radius);
    std::vector<std::vector<double>> per_drop(drops);
    parallel_for(drops, parallel, [&](int i) {
        const NetworkRealization real =
            sample_realization(cfg.lambda_f, cfg.lambda_u, region,
                               seed + static_cast<std::uint64_t>(i));
        std::vector<double> loads(real.aps.size(), 0.0);
        for (const auto& user : real.users) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t serve = 0;
            for (std::size_t l = 0; l < real.aps.size(); ++l) {
                const double dist = pairwise_distance(user, real.aps[l]);
                if (dist < best) {
                    best = dist;
                    serve = l;
                }
            }
            loads[serve] += demand_bps /
                            (cfg.bandwidth *
                             std::log2(1.0 + cfg.gamma0 * std::pow(std::max(best, 1e-12),
                                                                   -cfg.alpha)));
        }
        per_drop[i] = std::move(loads);
    });
    for (auto& v : per_drop) out.loads.insert(out.loads.end(), v.begin(), v.end());
    return out;
}

ApLoadSamples mc_ap_loads_grid(const AnalyticsConfig& cfg, double demand_bps, int drops,
                               std::uint64_t seed, bool parallel) {
    ApLoadSamples out;
    const int side = std::max(1, static_cast<int>(std::lround(std::sqrt(cfg.l_aps))));
    out.l_aps = side * side;
    out.k_users = static_cast<int>(std::lround(cfg.eta() * out.l_aps));
    const double cell = std::sqrt(1.0 / cfg.lambda_f);
    const double extent = side * cell;
    std::vector<std::vector<double>> per_drop(drops);
    parallel_for(drops, parallel, [&](int i) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> u(0.0, extent);
        std::vector<double> loads(static_cast<std::size_t>(out.l_aps), 0.0);
        for (int k = 0; k < out.k_users; ++k) {
            const double x = u(rng);
            const double y = u(rng);
            const int ix = std::min(static_cast<int>(x / cell), side - 1);
            const int iy = std::min(static_cast<int>(y / cell), side - 1);
            const double dx = x - (ix + 0.5) * cell;
            const double dy = y - (iy + 0.5) * cell;
            const double dist = std::max(std::hypot(dx, dy), 1e-12);
            loads[static_cast<std::size_t>(ix) * side + iy] +=
                demand_bps /
                (cfg.bandwidth * std::log2(1.0 + cfg.gamma0 * std::pow(dist, -cfg.alpha)));
        }
        per_drop[i] = std::move(loads);
    });
    for (auto& v : per_drop) out.loads.insert(out.loads.end(), v.begin(), v.end());
    return out;
}

Step3OutagePoint mc_step3_outage(const AnalyticsConfig& cfg, double demand_bps, int drops,
                                 std::uint64_t seed, bool parallel) {
    Step3OutagePoint pt;
    pt.demand_bps = demand_bps;
    const Region region({0.0, 0.0}, cfg.region_radius);
    const double r_tilde = 2.0 * cfg.d_tilde;
    std::vector<std::array<long, 6>> partial(drops, {0, 0, 0, 0, 0, 0});
    parallel_for(drops, parallel, [&](int i) {
        const NetworkRealization real = sample_realization(
            cfg.lambda_f, cfg.lambda_u, region, seed + static_cast<std::uint64_t>(i));
        const int n_aps = static_cast<int>(real.aps.size());
        std::vector<double> loads(n_aps, 0.0);
        for (const auto& user : real.users) {
            double best = std::numeric_limits<double>::infinity();
            int serve = 0;
            for (int l = 0; l < n_aps; ++l) {
                const double dist = pairwise_distance(user, real.aps[l]);
                if (dist < best) {
                    best = dist;
                    serve = l;
                }
            }
            loads[serve] += demand_bps /
                            (cfg.bandwidth *
                             std::log2(1.0 + cfg.gamma0 * std::pow(std::max(best, 1e-12),
                                                                   -cfg.alpha)));
        }
        const InterferenceGraph graph =
            build_interference_graph(real.aps, cfg.d_tilde, loads);
        const std::vector<int> colors = dsatur_color(graph, cfg.n_prbs);
        const ChannelAllocation alloc = allocation_from_coloring(colors, graph);
        const std::vector<bool> shortfall = ap_outage_from_allocation(alloc);
        auto& acc = partial[i];
        for (int a = 0; a < n_aps; ++a) {
            double sum = loads[a];
            for (int b : graph.ap_adj[a]) sum += loads[b];
            const bool over = sum > cfg.n_prbs;
            const bool guarded =
                pairwise_distance(real.aps[a], region.center) <= cfg.region_radius - r_tilde;
            acc[0] += shortfall[a] ? 1 : 0;
            acc[1] += over ? 1 : 0;
            acc[2] += 1;
            if (guarded) {
                acc[3] += shortfall[a] ? 1 : 0;
                acc[4] += over ? 1 : 0;
                acc[5] += 1;
            }
        }
    });
    long sf = 0, nb = 0, refs = 0, sfg = 0, nbg = 0, guards = 0;
    for (const auto& acc : partial) {
        sf += acc[0];
        nb += acc[1];
        refs += acc[2];
        sfg += acc[3];
        nbg += acc[4];
        guards += acc[5];
    }
    pt.reference_aps = refs;
    pt.guarded_aps = guards;
    pt.shortfall = refs > 0 ? static_cast<double>(sf) / refs : 0.0;
    pt.neighborhood = refs > 0 ? static_cast<double>(nb) / refs : 0.0;
    pt.shortfall_guard = guards > 0 ? static_cast<double>(sfg) / guards : 0.0;
    pt.neighborhood_guard = guards > 0 ? static_cast<double>(nbg) / guards : 0.0;
    return pt;
}

} // namespace scsim
