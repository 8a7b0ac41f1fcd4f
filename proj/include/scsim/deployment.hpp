#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scsim/geometry.hpp"

namespace scsim {

// One Monte Carlo drop worth of node positions.
struct NetworkRealization {
    std::vector<Point> aps;
    std::vector<Point> users;
    double lambda_f = 0.0; // AP density, 1/m^2
    double lambda_u = 0.0; // user density, 1/m^2
    Region region;
    std::uint64_t seed = 0;
    int regen_attempts = 0; // >0 if an empty drop had to be re-sampled
};

// Homogeneous PPP on a disc: Poisson count, then uniform placement.
std::vector<Point> sample_ppp(double lambda, const Region& region, std::mt19937_64& rng);
std::vector<Point> sample_ppp(double lambda, const Region& region, std::uint64_t seed);

// Exactly `count` points uniform on the disc (conditioned PPP).
std::vector<Point> sample_uniform_points(std::size_t count, const Region& region,
                                         std::mt19937_64& rng);

// Poisson-count realization. Drops with zero APs or zero users are
// re-sampled with the next seed increment (and counted in regen_attempts).
NetworkRealization sample_realization(double lambda_f, double lambda_u, const Region& region,
                                      std::uint64_t seed);

// Fixed-count mode: exactly n_aps / n_users uniform points.
NetworkRealization sample_realization_fixed(std::size_t n_aps, std::size_t n_users,
                                            const Region& region, std::uint64_t seed);

} // namespace scsim
