#include "scsim/association.hpp"

#include <stdexcept>

namespace scsim {

Association associate(int n_aps, int n_users, const std::vector<double>& avg_power) {
    if (n_aps <= 0) throw std::invalid_argument("associate: no APs");
    if (avg_power.size() != static_cast<std::size_t>(n_aps) * n_users)
        throw std::invalid_argument("associate: power matrix shape mismatch");
    Association assoc;
    assoc.serving_ap.resize(n_users);
    assoc.members.assign(n_aps, {});
    for (int k = 0; k < n_users; ++k) {
        int best = 0;
        double best_p = avg_power[k];
        for (int l = 1; l < n_aps; ++l) {
            const double p = avg_power[static_cast<std::size_t>(l) * n_users + k];
            if (p > best_p) {
                best_p = p;
                best = l;
            }
        }
        assoc.serving_ap[k] = best;
        assoc.members[best].push_back(k);
    }
    return assoc;
}

std::vector<double> connection_distances(const NetworkRealization& real,
                                         const Association& assoc) {
    std::vector<double> d(real.users.size());
    for (std::size_t k = 0; k < real.users.size(); ++k)
        d[k] = pairwise_distance(real.users[k], real.aps[assoc.serving_ap[k]]);
    return d;
}

} // namespace scsim
