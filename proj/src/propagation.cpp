#include "scsim/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace scsim {

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

double path_loss_lte_db(double d_m, double d_in_m, Penetration pen, double shadow_db,
                        const PropagationConfig& cfg) {
    if (d_m < cfg.min_distance_m) d_m = cfg.min_distance_m;
    const double lp = pen == Penetration::wall ? cfg.wall_loss_db : cfg.window_loss_db;
    return 38.46 + 20.0 * std::log10(d_in_m) + 37.6 * std::log10(d_m) + lp + shadow_db;
}

double avg_power_law(double d_m, double l0_linear, double alpha) {
    if (d_m <= 0.0) throw std::domain_error("avg_power_law: distance must be positive");
    return l0_linear * std::pow(d_m, -alpha);
}

std::vector<double> sample_fading(double mean_gain, int n_prbs, std::mt19937_64& rng) {
    std::vector<double> h(static_cast<std::size_t>(n_prbs), 0.0);
    if (mean_gain <= 0.0) return h; // degenerate mean, all-zero fades
    std::exponential_distribution<double> exp1(1.0);
    for (auto& v : h) v = mean_gain * exp1(rng);
    return h;
}

double noise_power_w(const PropagationConfig& cfg) {
    const double dbm =
        cfg.noise_psd_dbm_hz + 10.0 * std::log10(cfg.prb_bandwidth_hz) + cfg.noise_figure_db;
    return dbm_to_watt(dbm);
}

ChannelState build_channel(const NetworkRealization& real, const PropagationConfig& cfg,
                           int n_prbs, std::mt19937_64& rng, bool sample_inst) {
    ChannelState ch;
    ch.n_aps = static_cast<int>(real.aps.size());
    ch.n_users = static_cast<int>(real.users.size());
    ch.n_prbs = n_prbs;
    ch.noise_w = noise_power_w(cfg);
    const std::size_t links = real.aps.size() * real.users.size();
    ch.avg_power.resize(links);
    ch.pilot_power.resize(links);

    std::uniform_real_distribution<double> u_din(cfg.d_in_min, cfg.d_in_max);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> shadow(0.0, cfg.shadowing_sigma_db);

    const double l0 = from_db(cfg.l0_db);
    std::size_t idx = 0;
    for (const auto& ap : real.aps) {
        for (const auto& us : real.users) {
            const double d = pairwise_distance(ap, us);
            if (cfg.model == CarrierModel::lte_indoor) {
                if (d < cfg.min_distance_m) ++ch.clamped_links;
                const double d_in = u_din(rng);
                const Penetration pen =
                    u01(rng) < 0.5 ? Penetration::wall : Penetration::window;
                const double ls = shadow(rng);
                const double pl_no_shadow = path_loss_lte_db(d, d_in, pen, 0.0, cfg);
                ch.pilot_power[idx] = from_db(-pl_no_shadow);
                ch.avg_power[idx] = from_db(-(pl_no_shadow + ls));
            } else {
                const double g = avg_power_law(d > 0.0 ? d : 1e-9, l0, cfg.alpha);
                ch.pilot_power[idx] = g;
                ch.avg_power[idx] = g;
            }
            ++idx;
        }
    }

    if (sample_inst) {
        ch.inst_gain.resize(links * static_cast<std::size_t>(n_prbs));
        std::exponential_distribution<double> exp1(1.0);
        std::size_t pos = 0;
        for (std::size_t link = 0; link < links; ++link) {
            const double mean = ch.avg_power[link];
            for (int n = 0; n < n_prbs; ++n) ch.inst_gain[pos++] = mean * exp1(rng);
        }
    }
    return ch;
}

} // namespace scsim
