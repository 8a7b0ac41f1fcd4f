#include "scsim/deployment.hpp"

#include <cstdio>
#include <stdexcept>

namespace scsim {

std::vector<Point> sample_uniform_points(std::size_t count, const Region& region,
                                         std::mt19937_64& rng) {
    std::vector<Point> pts;
    pts.reserve(count);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
    for (std::size_t i = 0; i < count; ++i) {
        // sqrt of a uniform variate makes the position uniform in area
        const double r = region.radius * std::sqrt(u01(rng));
        const double th = uang(rng);
        pts.push_back({region.center.x + r * std::cos(th), region.center.y + r * std::sin(th)});
    }
    return pts;
}

std::vector<Point> sample_ppp(double lambda, const Region& region, std::mt19937_64& rng) {
    if (lambda <= 0.0) throw std::invalid_argument("sample_ppp: lambda must be positive");
    std::poisson_distribution<std::size_t> count(lambda * region.area());
    return sample_uniform_points(count(rng), region, rng);
}

std::vector<Point> sample_ppp(double lambda, const Region& region, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_ppp(lambda, region, rng);
}

NetworkRealization sample_realization(double lambda_f, double lambda_u, const Region& region,
                                      std::uint64_t seed) {
    if (lambda_f <= 0.0 || lambda_u <= 0.0)
        throw std::invalid_argument("sample_realization: densities must be positive");
    NetworkRealization real;
    real.lambda_f = lambda_f;
    real.lambda_u = lambda_u;
    real.region = region;
    real.seed = seed;
    for (int attempt = 0;; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        real.aps = sample_ppp(lambda_f, region, rng);
        real.users = sample_ppp(lambda_u, region, rng);
        if (!real.aps.empty() && !real.users.empty()) {
            real.regen_attempts = attempt;
            if (attempt > 0)
                std::fprintf(stderr,
                             "deployment: empty drop for seed %llu, regenerated %d time(s)\n",
                             static_cast<unsigned long long>(seed), attempt);
            return real;
        }
    }
}

NetworkRealization sample_realization_fixed(std::size_t n_aps, std::size_t n_users,
                                            const Region& region, std::uint64_t seed) {
    if (n_aps == 0 || n_users == 0)
        throw std::invalid_argument("sample_realization_fixed: counts must be positive");
    NetworkRealization real;
    real.lambda_f = static_cast<double>(n_aps) / region.area();
    real.lambda_u = static_cast<double>(n_users) / region.area();
    real.region = region;
    real.seed = seed;
    std::mt19937_64 rng(seed);
    real.aps = sample_uniform_points(n_aps, region, rng);
    real.users = sample_uniform_points(n_users, region, rng);
    return real;
}

} // namespace scsim
