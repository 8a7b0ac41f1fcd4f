#pragma once

#include <utility>
#include <vector>

#include "scsim/association.hpp"

namespace scsim {

// Spectrum estimate for one AP; entries follow the member order used to
// build it. `total` is the AP load N_l = sum of n_k.
struct LoadEstimate {
    std::vector<double> n_k; // fractional subchannels per user
    std::vector<double> p_k; // bookkeeping power split per user (W)
    double total = 0.0;
};

// State of the Newton iteration on the 3M-variable KKT system.
// x = [P_1..P_M, n_1..n_M, mu_1..mu_M].
struct KktState {
    std::vector<double> x;
    double mu0 = 0.0;      // power-constraint multiplier
    double residual = 0.0; // max-norm of the nonlinear system
    int iterations = 0;
    bool converged = false;
};

struct LoadProblem {
    std::vector<double> demands; // R_k, bit/s
    std::vector<double> gains;   // H_k, linear
    double p_tot = 0.0;          // W
    double sigma2 = 0.0;         // W per PRB
    double bandwidth = 0.0;      // Hz per PRB
    int n_prbs = 0;              // N, used by the equal-power form
};

struct NewtonOptions {
    double tol = 1e-8;
    int max_iter = 100;
};

// Minimum subchannels for one user when transmit power is spread evenly
// over all N subchannels: R / (B log2(1 + P_tot H / (N sigma2))).
double user_load_equal_power(double demand, double gain, double p_tot, int n_prbs, double sigma2,
                             double bandwidth);

LoadEstimate estimate_load_equal_power(const LoadProblem& prob);

// Joint (P_k, n_k) minimization of the AP load via damped Newton-Raphson on
// the KKT system. Falls back to the equal-power estimate (converged=false)
// on non-convergence or a singular Jacobian.
std::pair<LoadEstimate, KktState> estimate_load_newton(const LoadProblem& prob,
                                                       const NewtonOptions& opts = {});

// Residual G(x) and Jacobian dG/dx of the KKT system; exposed for tests.
std::vector<double> kkt_residual(const std::vector<double>& x, const LoadProblem& prob);
std::vector<double> kkt_jacobian(const std::vector<double>& x, const LoadProblem& prob);

// Per-AP totals, zero for APs with no members.
std::vector<double> aggregate_ap_loads(const Association& assoc,
                                       const std::vector<LoadEstimate>& estimates);

namespace detail {
// Row-reduces the n x n system A x = b in place; false if a pivot vanishes.
bool gauss_jordan_solve(std::vector<double>& a, std::vector<double>& b, int n);
} // namespace detail

} // namespace scsim
