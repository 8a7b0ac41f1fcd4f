#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scsim/deployment.hpp"

namespace scsim {

enum class CarrierModel { lte_indoor, power_law };
enum class Penetration { wall, window };

struct PropagationConfig {
    CarrierModel model = CarrierModel::lte_indoor;
    double alpha = 3.0;             // path-loss exponent (power_law)
    double l0_db = -38.46;          // reference gain at 1 m (power_law), dB
    double shadowing_sigma_db = 10.0;
    double wall_loss_db = 10.0;
    double window_loss_db = 3.0;
    double d_in_min = 1.0;
    double d_in_max = 5.0;
    double min_distance_m = 1.0;    // serving/interfering links are clamped here (lte only)
    double noise_psd_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double prb_bandwidth_hz = 180e3;
    // Table-I entries kept for documentation; both are no-ops at 0 dB / 1x1.
    double antenna_gain_db = 0.0;
    int antennas = 1;
};

double to_db(double linear);
double from_db(double db);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// 38.46 + 20 log10(d_in) + 37.6 log10(d) + L_p + L_s, d clamped to 1 m.
double path_loss_lte_db(double d_m, double d_in_m, Penetration pen, double shadow_db,
                        const PropagationConfig& cfg = PropagationConfig{});

// L0 * d^-alpha; d must be positive.
double avg_power_law(double d_m, double l0_linear, double alpha);

// i.i.d. exponential fades with mean H, one per PRB.
std::vector<double> sample_fading(double mean_gain, int n_prbs, std::mt19937_64& rng);

// Thermal noise per PRB in watts.
double noise_power_w(const PropagationConfig& cfg);

// Large-scale and per-PRB channel state for every (AP, user) link.
//
// `avg_power` is the true large-scale gain (the mean of the per-PRB fades).
// `pilot_power` excludes the shadowing term in lte_indoor mode; in
// power_law mode the two coincide.
struct ChannelState {
    int n_aps = 0;
    int n_users = 0;
    int n_prbs = 0;
    std::vector<double> avg_power;   // [l * K + k]
    std::vector<double> pilot_power; // [l * K + k]
    std::vector<double> inst_gain;   // [(l * K + k) * N + n]
    double noise_w = 0.0;
    long clamped_links = 0; // links shorter than the minimum distance

    double H(int l, int k) const { return avg_power[static_cast<std::size_t>(l) * n_users + k]; }
    double pilot(int l, int k) const {
        return pilot_power[static_cast<std::size_t>(l) * n_users + k];
    }
    double h(int l, int k, int n) const {
        return inst_gain[(static_cast<std::size_t>(l) * n_users + k) * n_prbs + n];
    }
};

// Draw order per link: d_in, penetration, shadowing; then all fades in
// (l, k, n) order. sample_inst=false skips the fading tensor.
ChannelState build_channel(const NetworkRealization& real, const PropagationConfig& cfg,
                           int n_prbs, std::mt19937_64& rng, bool sample_inst = true);

} // namespace scsim
