#pragma once

#include <vector>

namespace scsim {

// Per-AP schedule over the PRBs the AP was granted. c[m][j] is the fraction
// of granted slot j given to member m (whole PRBs under the greedy rule,
// time-shares after refinement). Stored powers are subframe averages, so the
// instantaneous transmit power while serving is power_per_prb = c > 0 ?
// avg_power / c : 0.
struct Schedule {
    std::vector<int> granted; // global PRB indices
    int n_members = 0;
    std::vector<double> c;    // [m * granted.size() + j]
    double power_per_prb = 0.0;

    double frac(int m, int j) const {
        return c[static_cast<std::size_t>(m) * granted.size() + j];
    }
    double avg_power(int m, int j) const { return frac(m, j) * power_per_prb; }
};

struct GreedyStats {
    int iterations = 0; // equals the number of granted PRBs
};

// Equal-power greedy max-min assignment: repeatedly hand the user with the
// lowest normalized rate its best remaining PRB. Ties break on lowest user
// index, then lowest PRB position. Zero-demand users are excluded.
Schedule greedy_maxmin(const std::vector<std::vector<double>>& gains, // [member][slot]
                       const std::vector<double>& demands, const std::vector<int>& granted,
                       double p_tot, double sigma2, double bandwidth,
                       GreedyStats* stats = nullptr);

// Max-min time-share refinement at fixed equal power: maximizes
// t = min_m sum_j c[m][j] r[m][j] / R_m over column-substochastic c.
// Never worse than its greedy input (falls back to it if the solve fails).
Schedule fractional_refine(const Schedule& base, const std::vector<std::vector<double>>& gains,
                           const std::vector<double>& demands, double sigma2, double bandwidth);

struct AchievedRates {
    std::vector<double> rate;       // bit/s per member
    std::vector<double> normalized; // rate / demand
};

// Shannon rates with supplied per-slot interference powers; fractions scale
// the rate, powers are per-activation (p/c).
AchievedRates achieved_rates(const Schedule& sched,
                             const std::vector<std::vector<double>>& gains,
                             const std::vector<std::vector<double>>& interference,
                             double sigma2, double bandwidth,
                             const std::vector<double>& demands);

} // namespace scsim
