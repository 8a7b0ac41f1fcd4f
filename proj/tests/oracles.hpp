// Test-only reference implementations, independent of the library paths
// they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "scsim/analytics.hpp"

namespace oracles {

// ---- statistics -------------------------------------------------------------

// Kolmogorov-Smirnov distance of samples against a continuous CDF.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

// Sup distance between an empirical CDF and a step CDF with jumps at
// multiples of `step`, both evaluated at plateau midpoints (the step-edge
// values are ill-conditioned by half the jump mass).
inline double plateau_sup_distance(std::vector<double> samples, double step,
                                   const std::function<double(double)>& cdf, int plateaus) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (int m = 0; m < plateaus; ++m) {
        const double x = (m + 0.5) * step;
        const double emp =
            std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
        d = std::max(d, std::abs(emp / n - cdf(x)));
    }
    return d;
}

// Chi-square goodness-of-fit p-value for observed counts vs expected.
inline double chi_square_pvalue(const std::vector<double>& observed,
                                const std::vector<double>& expected) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = observed[i] - expected[i];
        chi2 += diff * diff / expected[i];
    }
    const double dof = static_cast<double>(observed.size()) - 1.0;
    return scsim::regularized_gamma_q(dof / 2.0, chi2 / 2.0);
}

// ---- load estimation --------------------------------------------------------

// Minimum n with n * B * log2(1 + p*h/(n*sigma2)) = demand, by bisection.
// Returns +inf when the demand exceeds the power-limited capacity.
inline double bisect_user_load(double demand, double gain, double power, double sigma2,
                               double bandwidth) {
    const double gamma = power * gain / sigma2;
    const double cap = bandwidth * gamma / std::log(2.0); // n -> inf limit
    if (demand >= cap) return std::numeric_limits<double>::infinity();
    auto rate = [&](double n) { return bandwidth * n * std::log2(1.0 + gamma / n); };
    double hi = 1.0;
    while (rate(hi) < demand) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rate(mid) < demand ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Grid search over power splits (with per-split bisection) for the minimum
// total spectrum of 1..3 users sharing p_tot.
inline double grid_search_load(const std::vector<double>& demands,
                               const std::vector<double>& gains, double p_tot, double sigma2,
                               double bandwidth, int grid) {
    const int m = static_cast<int>(demands.size());
    double best = std::numeric_limits<double>::infinity();
    auto total = [&](const std::vector<double>& powers) {
        double sum = 0.0;
        for (int k = 0; k < m; ++k) {
            if (powers[k] <= 0.0) return std::numeric_limits<double>::infinity();
            sum += bisect_user_load(demands[k], gains[k], powers[k], sigma2, bandwidth);
        }
        return sum;
    };
    if (m == 1) return total({p_tot});
    if (m == 2) {
        for (int i = 1; i < grid; ++i) {
            const double p1 = p_tot * i / grid;
            best = std::min(best, total({p1, p_tot - p1}));
        }
        return best;
    }
    for (int i = 1; i < grid; ++i)
        for (int j = 1; i + j < grid; ++j) {
            const double p1 = p_tot * i / grid;
            const double p2 = p_tot * j / grid;
            best = std::min(best, total({p1, p2, p_tot - p1 - p2}));
        }
    return best;
}

// ---- graph coloring ---------------------------------------------------------

// Exact chromatic number by branch and bound over an adjacency matrix
// (intended for <= 9 nodes).
inline bool colorable_with(const std::vector<std::vector<bool>>& adj, int k,
                           std::vector<int>& colors, int vertex) {
    const int n = static_cast<int>(adj.size());
    if (vertex == n) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (int u = 0; u < vertex; ++u)
            if (adj[vertex][u] && colors[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        colors[vertex] = c;
        if (colorable_with(adj, k, colors, vertex + 1)) return true;
        colors[vertex] = -1;
    }
    return false;
}

inline int chromatic_number(const std::vector<std::vector<bool>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 0) return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> colors(n, -1);
        if (colorable_with(adj, k, colors, 0)) return k;
    }
    return n;
}

// ---- scheduling -------------------------------------------------------------

// Best min normalized rate over all whole-PRB assignments (users^slots
// enumeration).
inline double exhaustive_assignment_optimum(const std::vector<std::vector<double>>& rate,
                                            const std::vector<double>& demands) {
    const int m = static_cast<int>(rate.size());
    const int slots = m > 0 ? static_cast<int>(rate[0].size()) : 0;
    long combos = 1;
    for (int j = 0; j < slots; ++j) combos *= m;
    double best = 0.0;
    for (long code = 0; code < combos; ++code) {
        std::vector<double> sum(m, 0.0);
        long c = code;
        for (int j = 0; j < slots; ++j) {
            sum[c % m] += rate[c % m][j];
            c /= m;
        }
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < m; ++k) worst = std::min(worst, sum[k] / demands[k]);
        best = std::max(best, worst);
    }
    return best;
}

// PRBs in index order handed to users cyclically by index.
inline double round_robin_min_normalized(const std::vector<std::vector<double>>& rate,
                                         const std::vector<double>& demands) {
    const int m = static_cast<int>(rate.size());
    const int slots = m > 0 ? static_cast<int>(rate[0].size()) : 0;
    std::vector<double> sum(m, 0.0);
    for (int j = 0; j < slots; ++j) sum[j % m] += rate[j % m][j];
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) worst = std::min(worst, sum[k] / demands[k]);
    return worst;
}

// Exact max-min time share for two users and two slots by vertex
// enumeration of the lifted LP in (c10, c11, t).
inline double vertex_enum_maxmin_2x2(const std::vector<std::vector<double>>& q) {
    // constraints: a*q00 + b*q01 >= t; (1-a)*q10 + (1-b)*q11 >= t;
    //              0 <= a, b <= 1; maximize t.
    struct Plane {
        double ca, cb, ct, rhs; // ca*a + cb*b + ct*t = rhs when active
    };
    const std::vector<Plane> planes = {
        {q[0][0], q[0][1], -1.0, 0.0},   // user-0 rate tight
        {-q[1][0], -q[1][1], -1.0, -(q[1][0] + q[1][1])}, // user-1 rate tight
        {1.0, 0.0, 0.0, 0.0},            // a = 0
        {1.0, 0.0, 0.0, 1.0},            // a = 1
        {0.0, 1.0, 0.0, 0.0},            // b = 0
        {0.0, 1.0, 0.0, 1.0},            // b = 1
    };
    auto feasible = [&](double a, double b, double t) {
        const double eps = 1e-9;
        return a >= -eps && a <= 1 + eps && b >= -eps && b <= 1 + eps &&
               a * q[0][0] + b * q[0][1] >= t - eps &&
               (1 - a) * q[1][0] + (1 - b) * q[1][1] >= t - eps;
    };
    double best = 0.0;
    const int np = static_cast<int>(planes.size());
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            for (int k = j + 1; k < np; ++k) {
                const double m[3][3] = {
                    {planes[i].ca, planes[i].cb, planes[i].ct},
                    {planes[j].ca, planes[j].cb, planes[j].ct},
                    {planes[k].ca, planes[k].cb, planes[k].ct}};
                const double rhs[3] = {planes[i].rhs, planes[j].rhs, planes[k].rhs};
                const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                if (std::abs(det) < 1e-12) continue;
                auto solve = [&](int col) {
                    double mm[3][3];
                    for (int r = 0; r < 3; ++r)
                        for (int cc = 0; cc < 3; ++cc) mm[r][cc] = m[r][cc];
                    for (int r = 0; r < 3; ++r) mm[r][col] = rhs[r];
                    return (mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1]) -
                            mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0]) +
                            mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0])) /
                           det;
                };
                const double a = solve(0), b = solve(1), t = solve(2);
                if (feasible(a, b, t)) best = std::max(best, t);
            }
    return best;
}

} // namespace oracles
