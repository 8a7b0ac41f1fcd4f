#pragma once

#include <vector>

#include "scsim/deployment.hpp"

namespace scsim {

// User-to-AP partition: serving_ap[k] = l  <=>  k in members[l].
struct Association {
    std::vector<int> serving_ap;           // per user
    std::vector<std::vector<int>> members; // per AP, ascending user indices
};

// argmax over APs of the supplied average power matrix (row-major [l*K+k]).
// Ties break toward the lowest AP index.
Association associate(int n_aps, int n_users, const std::vector<double>& avg_power);

// Distance from each user to its serving AP.
std::vector<double> connection_distances(const NetworkRealization& real,
                                         const Association& assoc);

} // namespace scsim
