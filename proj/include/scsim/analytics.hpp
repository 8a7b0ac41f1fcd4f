#pragma once

namespace scsim {

// Parameters of the closed-form load/outage expressions.
struct AnalyticsConfig {
    double lambda_f = 0.0;    // AP density, 1/m^2
    double lambda_u = 0.0;    // user density, 1/m^2
    double alpha = 3.0;       // path-loss exponent
    double gamma0 = 0.0;      // P_tot * L0 / (N * sigma2)
    double bandwidth = 180e3; // Hz per PRB
    int n_prbs = 50;          // N
    double k_users = 0.0;     // expected K
    double l_aps = 0.0;       // expected L
    double d_tilde = 20.0;    // interference radius is 2 * d_tilde
    double region_radius = 100.0;

    double eta() const { return k_users / l_aps; }
};

// ---- special functions ----------------------------------------------------

// Regularized lower/upper incomplete gamma, series for x < s+1 and
// continued fraction otherwise; absolute tolerance 1e-12.
double regularized_gamma_p(double s, double x);
double regularized_gamma_q(double s, double x);

// CDF of a Poisson(mean) variable at floor(k); negative k gives 0.
double poisson_cdf(double k, double mean);
double poisson_pmf(int k, double mean);

double binomial_pmf(int k, int n, double p);
// CDF at floor(k); negative k gives 0.
double binomial_cdf(double k, int n, double p);

// ---- closed forms ----------------------------------------------------------

// P(D < d) = 1 - exp(-lambda_f pi d^2) for the nearest-AP distance.
double cdf_connection_distance(double d, double lambda_f);
double pdf_connection_distance(double d, double lambda_f);

// argmax of the connection-distance density: sqrt(1 / (2 pi lambda_f)).
double most_probable_distance(double lambda_f);

// CDF of the per-user equal-power load, composition of the distance CDF
// with the inverted rate relation.
double cdf_user_load(double n, double demand, const AnalyticsConfig& cfg);

// Load of a user at the most probable distance.
double typical_user_load(double demand, const AnalyticsConfig& cfg);

// Binomial membership probability P_u(m), K trials, p = 1/L.
double pmf_users_per_ap(int m, int k_users, int l_aps);

enum class ApLoadModel { binomial, poisson };

// CDF of the AP load at n_l: binomial CDF at floor(n_l / n*), or its
// Poisson(eta) approximation.
double cdf_ap_load(double n_l, double demand, const AnalyticsConfig& cfg,
                   ApLoadModel model = ApLoadModel::binomial);

// CDF of the combined load of L_tilde mutually interfering APs.
double cdf_system_load(double n_tilde, int l_tilde, double demand, const AnalyticsConfig& cfg);

enum class AreaCountModel { poisson, binomial };

// Probability that a reference AP plus its interferers need more than N
// subchannels. The neighbour count is Poisson(lambda_f * pi * (2 d~)^2) or
// Binomial(L, (2 d~ / R_c)^2).
double outage_probability(double demand, const AnalyticsConfig& cfg,
                          AreaCountModel model = AreaCountModel::poisson);

} // namespace scsim
