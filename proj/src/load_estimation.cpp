#include "scsim/load_estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scsim {

namespace {

// natural-log capacity slope: C = B log2(e), so B log2(1+x) = C ln(1+x)
double cap_const(double bandwidth) { return bandwidth / std::numbers::ln2_v<double>; }

// g(gamma) = ln(1+gamma) - gamma/(1+gamma); appears in dL/dn_k
double g_of(double gamma) { return std::log1p(gamma) - gamma / (1.0 + gamma); }

// g'(gamma) = gamma/(1+gamma)^2
double gp_of(double gamma) { return gamma / ((1.0 + gamma) * (1.0 + gamma)); }

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> warm_start(const LoadProblem& prob, const LoadEstimate& eq) {
    const int m = static_cast<int>(prob.demands.size());
    const double c = cap_const(prob.bandwidth);
    std::vector<double> x(3 * m);
    for (int k = 0; k < m; ++k) {
        x[k] = prob.p_tot * eq.n_k[k] / eq.total;
        x[m + k] = eq.n_k[k];
        const double gamma = x[k] * prob.gains[k] / (x[m + k] * prob.sigma2);
        x[2 * m + k] = 1.0 / (c * g_of(gamma));
    }
    return x;
}

// The raw rows span ~20 orders of magnitude (rate rows in bit/s, the
// multiplier-ratio rows at the mu*H scale), so each row is normalized by a
// constant derived from the problem: ratio rows by the warm-start value of
// mu_1 H_1/(1+gamma_1), the power row by P_tot and rate rows by R_k.
std::vector<double> row_scales(const LoadProblem& prob) {
    const int m = static_cast<int>(prob.demands.size());
    std::vector<double> scale(3 * m, 1.0);
    const LoadEstimate eq = estimate_load_equal_power(prob);
    const std::vector<double> x0 = warm_start(prob, eq);
    const double gamma_1 = x0[0] * prob.gains[0] / (x0[m] * prob.sigma2);
    const double phi_ref = x0[2 * m] * prob.gains[0] / (1.0 + gamma_1);
    for (int k = 1; k < m; ++k) scale[m + k - 1] = 1.0 / phi_ref;
    scale[2 * m - 1] = 1.0 / prob.p_tot;
    for (int k = 0; k < m; ++k) scale[2 * m + k] = 1.0 / prob.demands[k];
    return scale;
}

} // namespace

double user_load_equal_power(double demand, double gain, double p_tot, int n_prbs, double sigma2,
                             double bandwidth) {
    if (demand <= 0.0 || gain <= 0.0 || p_tot <= 0.0 || n_prbs <= 0 || sigma2 <= 0.0 ||
        bandwidth <= 0.0)
        throw std::invalid_argument("user_load_equal_power: inputs must be positive");
    const double snr = p_tot * gain / (n_prbs * sigma2);
    return demand / (bandwidth * std::log2(1.0 + snr));
}

LoadEstimate estimate_load_equal_power(const LoadProblem& prob) {
    if (prob.demands.empty()) throw std::invalid_argument("estimate_load: empty member set");
    LoadEstimate est;
    est.n_k.resize(prob.demands.size());
    est.p_k.resize(prob.demands.size());
    for (std::size_t i = 0; i < prob.demands.size(); ++i) {
        est.n_k[i] = user_load_equal_power(prob.demands[i], prob.gains[i], prob.p_tot,
                                           prob.n_prbs, prob.sigma2, prob.bandwidth);
        est.total += est.n_k[i];
    }
    for (std::size_t i = 0; i < prob.demands.size(); ++i)
        est.p_k[i] = prob.p_tot * est.n_k[i] / est.total;
    return est;
}

std::vector<double> kkt_residual(const std::vector<double>& x, const LoadProblem& prob) {
    const int m = static_cast<int>(prob.demands.size());
    const double c = cap_const(prob.bandwidth);
    const std::vector<double> scale = row_scales(prob);
    std::vector<double> g(3 * m, 0.0);
    const double* p = x.data();
    const double* n = x.data() + m;
    const double* mu = x.data() + 2 * m;
    // stationarity in n_k
    for (int k = 0; k < m; ++k) {
        const double gamma = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        g[k] = 1.0 - mu[k] * c * g_of(gamma);
    }
    // power stationarity: mu_k H_k/(1+gamma_k) equal across users
    for (int k = 1; k < m; ++k) {
        const double gamma_k = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        const double gamma_0 = p[0] * prob.gains[0] / (n[0] * prob.sigma2);
        g[m + k - 1] =
            mu[k] * prob.gains[k] / (1.0 + gamma_k) - mu[0] * prob.gains[0] / (1.0 + gamma_0);
    }
    // full transmit power
    double sum_p = 0.0;
    for (int k = 0; k < m; ++k) sum_p += p[k];
    g[2 * m - 1] = sum_p - prob.p_tot;
    // tight rate constraints
    for (int k = 0; k < m; ++k) {
        const double gamma = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        g[2 * m + k] = c * n[k] * std::log1p(gamma) - prob.demands[k];
    }
    for (int r = 0; r < 3 * m; ++r) g[r] *= scale[r];
    return g;
}

std::vector<double> kkt_jacobian(const std::vector<double>& x, const LoadProblem& prob) {
    const int m = static_cast<int>(prob.demands.size());
    const int dim = 3 * m;
    const double c = cap_const(prob.bandwidth);
    const std::vector<double> scale = row_scales(prob);
    std::vector<double> jac(static_cast<std::size_t>(dim) * dim, 0.0);
    auto at = [&](int r, int col) -> double& {
        return jac[static_cast<std::size_t>(r) * dim + col];
    };
    const double* p = x.data();
    const double* n = x.data() + m;
    const double* mu = x.data() + 2 * m;

    for (int k = 0; k < m; ++k) {
        const double gamma = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        const double gp = gp_of(gamma);
        at(k, k) = -mu[k] * c * gp * gamma / p[k];
        at(k, m + k) = mu[k] * c * gp * gamma / n[k];
        at(k, 2 * m + k) = -c * g_of(gamma);
    }
    for (int k = 1; k < m; ++k) {
        const int r = m + k - 1;
        const double gamma_k = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        const double gamma_0 = p[0] * prob.gains[0] / (n[0] * prob.sigma2);
        const double dk = mu[k] * prob.gains[k] / ((1.0 + gamma_k) * (1.0 + gamma_k));
        const double d0 = mu[0] * prob.gains[0] / ((1.0 + gamma_0) * (1.0 + gamma_0));
        at(r, k) = -dk * gamma_k / p[k];
        at(r, m + k) = dk * gamma_k / n[k];
        at(r, 2 * m + k) = prob.gains[k] / (1.0 + gamma_k);
        at(r, 0) = d0 * gamma_0 / p[0];
        at(r, m) = -d0 * gamma_0 / n[0];
        at(r, 2 * m) = -prob.gains[0] / (1.0 + gamma_0);
    }
    for (int k = 0; k < m; ++k) at(2 * m - 1, k) = 1.0;
    for (int k = 0; k < m; ++k) {
        const int r = 2 * m + k;
        const double gamma = p[k] * prob.gains[k] / (n[k] * prob.sigma2);
        at(r, k) = c * prob.gains[k] / (prob.sigma2 * (1.0 + gamma));
        at(r, m + k) = c * g_of(gamma);
    }
    for (int r = 0; r < dim; ++r)
        for (int col = 0; col < dim; ++col) at(r, col) *= scale[r];
    return jac;
}

namespace detail {

bool gauss_jordan_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[static_cast<std::size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a[static_cast<std::size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > 1e-300)) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            std::swap(b[pivot], b[col]);
        }
        const double inv = 1.0 / a[static_cast<std::size_t>(col) * n + col];
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(col) * n + j] *= inv;
        b[col] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[static_cast<std::size_t>(r) * n + col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j)
                a[static_cast<std::size_t>(r) * n + j] -=
                    f * a[static_cast<std::size_t>(col) * n + j];
            b[r] -= f * b[col];
        }
    }
    return true;
}

} // namespace detail

std::pair<LoadEstimate, KktState> estimate_load_newton(const LoadProblem& prob,
                                                       const NewtonOptions& opts) {
    if (prob.demands.empty()) throw std::invalid_argument("estimate_load: empty member set");
    if (opts.tol <= 0.0) throw std::invalid_argument("estimate_load_newton: tol must be positive");
    const int m = static_cast<int>(prob.demands.size());
    const int dim = 3 * m;
    const double c = cap_const(prob.bandwidth);

    const LoadEstimate eq = estimate_load_equal_power(prob);

    KktState state;
    state.x = warm_start(prob, eq);

    std::vector<double> g = kkt_residual(state.x, prob);
    state.residual = max_norm(g);
    bool failed = false;

    while (state.residual > opts.tol && state.iterations < opts.max_iter) {
        std::vector<double> jac = kkt_jacobian(state.x, prob);
        std::vector<double> step(g);
        for (auto& v : step) v = -v;
        if (!detail::gauss_jordan_solve(jac, step, dim)) {
            failed = true;
            break;
        }
        // keep P, n, mu strictly positive
        double s = 1.0;
        for (int i = 0; i < dim; ++i)
            if (step[i] < 0.0) s = std::min(s, -0.95 * state.x[i] / step[i]);
        // backtrack until the residual decreases
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            std::vector<double> trial(state.x);
            for (int i = 0; i < dim; ++i) trial[i] += s * step[i];
            std::vector<double> gt = kkt_residual(trial, prob);
            const double res = max_norm(gt);
            if (res < state.residual) {
                state.x = std::move(trial);
                g = std::move(gt);
                state.residual = res;
                improved = true;
                break;
            }
            s *= 0.5;
        }
        ++state.iterations;
        if (!improved) {
            failed = true;
            break;
        }
    }

    state.converged = !failed && state.residual <= opts.tol;
    if (!state.converged) return {eq, state}; // caller keeps the equal-power estimate

    LoadEstimate est;
    est.n_k.assign(state.x.begin() + m, state.x.begin() + 2 * m);
    est.p_k.assign(state.x.begin(), state.x.begin() + m);
    for (double v : est.n_k) est.total += v;
    double mu0 = 0.0;
    for (int k = 0; k < m; ++k) {
        const double gamma = state.x[k] * prob.gains[k] / (state.x[m + k] * prob.sigma2);
        mu0 += state.x[2 * m + k] * c * (prob.gains[k] / prob.sigma2) / (1.0 + gamma);
    }
    state.mu0 = mu0 / m;
    return {est, state};
}

std::vector<double> aggregate_ap_loads(const Association& assoc,
                                       const std::vector<LoadEstimate>& estimates) {
    std::vector<double> loads(assoc.members.size(), 0.0);
    for (std::size_t l = 0; l < assoc.members.size(); ++l)
        if (!assoc.members[l].empty()) loads[l] = estimates[l].total;
    return loads;
}

} // namespace scsim
