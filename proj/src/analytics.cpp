#include "scsim/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scsim {

namespace {

constexpr double kGammaTol = 1e-12;

// lower-gamma series, valid for x < s + 1
double gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double ap = s;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaTol)
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// upper-gamma Lentz continued fraction, valid for x >= s + 1
double gamma_cont_fraction(double s, double x) {
    const double tiny = std::numeric_limits<double>::min() / kGammaTol;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kGammaTol) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace

double regularized_gamma_p(double s, double x) {
    if (s <= 0.0 || x < 0.0) throw std::domain_error("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < s + 1.0 ? gamma_series(s, x) : 1.0 - gamma_cont_fraction(s, x);
}

double regularized_gamma_q(double s, double x) {
    if (s <= 0.0 || x < 0.0) throw std::domain_error("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return x < s + 1.0 ? 1.0 - gamma_series(s, x) : gamma_cont_fraction(s, x);
}

double poisson_cdf(double k, double mean) {
    if (k < 0.0) return 0.0;
    if (mean <= 0.0) return 1.0;
    const double kk = std::floor(k);
    return regularized_gamma_q(kk + 1.0, mean);
}

double poisson_pmf(int k, double mean) {
    if (k < 0) return 0.0;
    if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

double binomial_pmf(int k, int n, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p);
    return std::exp(lg);
}

double binomial_cdf(double k, int n, double p) {
    if (k < 0.0) return 0.0;
    const int kk = static_cast<int>(std::floor(k));
    if (kk >= n) return 1.0;
    double sum = 0.0;
    for (int i = 0; i <= kk; ++i) sum += binomial_pmf(i, n, p);
    return std::min(sum, 1.0);
}

double cdf_connection_distance(double d, double lambda_f) {
    if (d < 0.0) return 0.0;
    return 1.0 - std::exp(-lambda_f * M_PI * d * d);
}

double pdf_connection_distance(double d, double lambda_f) {
    if (d < 0.0) return 0.0;
    return 2.0 * M_PI * d * lambda_f * std::exp(-lambda_f * M_PI * d * d);
}

double most_probable_distance(double lambda_f) {
    if (lambda_f <= 0.0) throw std::domain_error("most_probable_distance: lambda_f <= 0");
    return std::sqrt(1.0 / (2.0 * M_PI * lambda_f));
}

double cdf_user_load(double n, double demand, const AnalyticsConfig& cfg) {
    if (n <= 0.0) return 0.0;
    const double snr_needed = std::exp2(demand / (n * cfg.bandwidth)) - 1.0;
    if (snr_needed <= 0.0) return 1.0; // n -> infinity limit
    const double d = std::pow(snr_needed / cfg.gamma0, -1.0 / cfg.alpha);
    return cdf_connection_distance(d, cfg.lambda_f);
}

double typical_user_load(double demand, const AnalyticsConfig& cfg) {
    const double d_star = most_probable_distance(cfg.lambda_f);
    return demand /
           (cfg.bandwidth * std::log2(1.0 + cfg.gamma0 * std::pow(d_star, -cfg.alpha)));
}

double pmf_users_per_ap(int m, int k_users, int l_aps) {
    if (m < 0 || m > k_users) return 0.0;
    return binomial_pmf(m, k_users, 1.0 / l_aps);
}

double cdf_ap_load(double n_l, double demand, const AnalyticsConfig& cfg, ApLoadModel model) {
    if (n_l < 0.0) return 0.0;
    const double n_star = typical_user_load(demand, cfg);
    const double arg = n_l / n_star;
    if (model == ApLoadModel::binomial)
        return binomial_cdf(arg, static_cast<int>(std::lround(cfg.k_users)), 1.0 / cfg.l_aps);
    return poisson_cdf(arg, cfg.eta());
}

double cdf_system_load(double n_tilde, int l_tilde, double demand, const AnalyticsConfig& cfg) {
    if (l_tilde < 1) throw std::invalid_argument("cdf_system_load: l_tilde must be >= 1");
    const double n_star = typical_user_load(demand, cfg);
    return poisson_cdf(n_tilde / n_star, l_tilde * cfg.eta());
}

double outage_probability(double demand, const AnalyticsConfig& cfg, AreaCountModel model) {
    const double n_star = typical_user_load(demand, cfg);
    const double budget = std::floor(cfg.n_prbs / n_star);
    const double r_tilde = 2.0 * cfg.d_tilde;
    const int l_max = static_cast<int>(std::lround(cfg.l_aps));
    double covered = 0.0; // probability mass of "enough spectrum"
    double tail = 1.0;    // remaining area-count mass
    if (model == AreaCountModel::poisson) {
        const double area_mean = cfg.lambda_f * M_PI * r_tilde * r_tilde;
        tail -= poisson_pmf(0, area_mean);
        for (int lt = 1; lt <= l_max; ++lt) {
            const double w = poisson_pmf(lt, area_mean);
            covered += poisson_cdf(budget, lt * cfg.eta()) * w;
            tail -= w;
            if (tail < 1e-12) break;
        }
    } else {
        const double p = (r_tilde / cfg.region_radius) * (r_tilde / cfg.region_radius);
        tail -= binomial_pmf(0, l_max, p);
        for (int lt = 1; lt <= l_max; ++lt) {
            const double w = binomial_pmf(lt, l_max, p);
            covered += poisson_cdf(budget, lt * cfg.eta()) * w;
            tail -= w;
            if (tail < 1e-12) break;
        }
    }
    return 1.0 - covered;
}

} // namespace scsim
