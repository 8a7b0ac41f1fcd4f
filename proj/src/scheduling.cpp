#include "scsim/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scsim {

namespace {

// Primal simplex for  max t  s.t.  sum_j q[m][j] c[m][j] >= t  (per member),
// sum_m c[m][j] <= 1 (per slot), c >= 0. The all-slack basis (c=0, t=0) is
// feasible, so a single phase suffices. Returns false if the iteration cap
// trips; q must be nonnegative.
bool maxmin_share_lp(const std::vector<std::vector<double>>& q, std::vector<double>& c_out,
                     double& t_out) {
    const int m = static_cast<int>(q.size());
    const int nslots = m > 0 ? static_cast<int>(q[0].size()) : 0;
    if (m == 0 || nslots == 0) return false;
    const int nc = m * nslots;           // share variables
    const int nvar = nc + 1;             // + t
    const int nrow = m + nslots;
    const int ncol = nvar + nrow;        // + slack per row
    // tableau rows: [A | I | rhs], objective appended last
    std::vector<double> tab(static_cast<std::size_t>(nrow + 1) * (ncol + 1), 0.0);
    auto at = [&](int r, int col) -> double& {
        return tab[static_cast<std::size_t>(r) * (ncol + 1) + col];
    };
    // member rows: -sum_j q c + t <= 0
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nslots; ++j) at(i, i * nslots + j) = -q[i][j];
        at(i, nc) = 1.0;
        at(i, nvar + i) = 1.0;
        at(i, ncol) = 0.0;
    }
    // slot rows: sum_m c <= 1
    for (int j = 0; j < nslots; ++j) {
        for (int i = 0; i < m; ++i) at(m + j, i * nslots + j) = 1.0;
        at(m + j, nvar + m + j) = 1.0;
        at(m + j, ncol) = 1.0;
    }
    // objective: maximize t -> row holds -t coefficients
    at(nrow, nc) = -1.0;

    std::vector<int> basis(nrow);
    for (int r = 0; r < nrow; ++r) basis[r] = nvar + r;

    const int max_pivots = 50 * (nrow + 2);
    for (int it = 0; it < max_pivots; ++it) {
        // entering: most negative reduced cost
        int enter = -1;
        double best = -1e-9;
        for (int col = 0; col < ncol; ++col)
            if (at(nrow, col) < best) {
                best = at(nrow, col);
                enter = col;
            }
        if (enter < 0) break; // optimal
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < nrow; ++r) {
            const double a = at(r, enter);
            if (a > 1e-11) {
                const double ratio = at(r, ncol) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || basis[r] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) return false; // unbounded; cannot happen with capped slots
        const double piv = at(leave, enter);
        for (int col = 0; col <= ncol; ++col) at(leave, col) /= piv;
        for (int r = 0; r <= nrow; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            for (int col = 0; col <= ncol; ++col) at(r, col) -= f * at(leave, col);
        }
        basis[leave] = enter;
        if (it + 1 == max_pivots) return false;
    }

    c_out.assign(nc, 0.0);
    t_out = 0.0;
    for (int r = 0; r < nrow; ++r) {
        if (basis[r] < nc)
            c_out[basis[r]] = std::max(0.0, at(r, ncol));
        else if (basis[r] == nc)
            t_out = at(r, ncol);
    }
    return true;
}

} // namespace

Schedule greedy_maxmin(const std::vector<std::vector<double>>& gains,
                       const std::vector<double>& demands, const std::vector<int>& granted,
                       double p_tot, double sigma2, double bandwidth, GreedyStats* stats) {
    Schedule sched;
    sched.granted = granted;
    sched.n_members = static_cast<int>(demands.size());
    const int nslots = static_cast<int>(granted.size());
    sched.c.assign(static_cast<std::size_t>(sched.n_members) * nslots, 0.0);
    if (stats) stats->iterations = 0;
    if (sched.n_members == 0 || nslots == 0) return sched;
    sched.power_per_prb = p_tot / nslots;

    std::vector<double> rate(demands.size(), 0.0);
    std::vector<char> taken(nslots, 0);
    int assigned = 0;
    while (assigned < nslots) {
        int user = -1;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < demands.size(); ++k) {
            if (demands[k] <= 0.0) continue;
            const double norm = rate[k] / demands[k];
            if (norm < worst) {
                worst = norm;
                user = static_cast<int>(k);
            }
        }
        if (user < 0) break; // nobody wants spectrum
        int slot = -1;
        double best_gain = -1.0;
        for (int j = 0; j < nslots; ++j)
            if (!taken[j] && gains[user][j] > best_gain) {
                best_gain = gains[user][j];
                slot = j;
            }
        taken[slot] = 1;
        sched.c[static_cast<std::size_t>(user) * nslots + slot] = 1.0;
        rate[user] +=
            bandwidth * std::log2(1.0 + sched.power_per_prb * gains[user][slot] / sigma2);
        ++assigned;
        if (stats) ++stats->iterations;
    }
    return sched;
}

Schedule fractional_refine(const Schedule& base, const std::vector<std::vector<double>>& gains,
                           const std::vector<double>& demands, double sigma2, double bandwidth) {
    const int m = base.n_members;
    const int nslots = static_cast<int>(base.granted.size());
    if (m == 0 || nslots == 0) return base;

    // normalized per-unit-share rates q[m][j] = r[m][j] / R_m
    std::vector<std::vector<double>> q(m, std::vector<double>(nslots, 0.0));
    for (int i = 0; i < m; ++i) {
        if (demands[i] <= 0.0) continue;
        for (int j = 0; j < nslots; ++j)
            q[i][j] = bandwidth * std::log2(1.0 + base.power_per_prb * gains[i][j] / sigma2) /
                      demands[i];
    }

    std::vector<double> c;
    double t = 0.0;
    if (!maxmin_share_lp(q, c, t)) return base;

    // guard against numerical regression relative to the greedy input
    auto min_norm = [&](const std::vector<double>& shares) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (demands[i] <= 0.0) continue;
            double s = 0.0;
            for (int j = 0; j < nslots; ++j)
                s += shares[static_cast<std::size_t>(i) * nslots + j] * q[i][j];
            worst = std::min(worst, s);
        }
        return worst;
    };
    if (min_norm(c) < min_norm(base.c) - 1e-9) return base;

    Schedule out = base;
    out.c = std::move(c);
    return out;
}

AchievedRates achieved_rates(const Schedule& sched, const std::vector<std::vector<double>>& gains,
                             const std::vector<std::vector<double>>& interference, double sigma2,
                             double bandwidth, const std::vector<double>& demands) {
    AchievedRates out;
    out.rate.assign(sched.n_members, 0.0);
    out.normalized.assign(sched.n_members, 0.0);
    const int nslots = static_cast<int>(sched.granted.size());
    for (int i = 0; i < sched.n_members; ++i) {
        for (int j = 0; j < nslots; ++j) {
            const double f = sched.frac(i, j);
            if (f <= 0.0) continue;
            const double sinr =
                sched.power_per_prb * gains[i][j] / (interference[i][j] + sigma2);
            out.rate[i] += f * bandwidth * std::log2(1.0 + sinr);
        }
        out.normalized[i] = demands[i] > 0.0 ? out.rate[i] / demands[i] : 0.0;
    }
    return out;
}

} // namespace scsim
