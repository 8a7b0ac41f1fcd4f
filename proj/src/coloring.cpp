#include "scsim/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace scsim {

bool InterferenceGraph::aps_adjacent(int a, int b) const {
    const auto& adj = ap_adj[a];
    return std::binary_search(adj.begin(), adj.end(), b);
}

int InterferenceGraph::node_degree(int u) const {
    const int own = node_of[u];
    int deg = static_cast<int>(ap_nodes[own].size()) - 1;
    for (int b : ap_adj[own]) deg += static_cast<int>(ap_nodes[b].size());
    return deg;
}

InterferenceGraph build_interference_graph(const std::vector<Point>& aps, double d_tilde,
                                           const std::vector<double>& loads) {
    if (d_tilde <= 0.0)
        throw std::invalid_argument("build_interference_graph: d_tilde must be positive");
    if (loads.size() != aps.size())
        throw std::invalid_argument("build_interference_graph: loads size mismatch");
    InterferenceGraph g;
    g.ap_count = static_cast<int>(aps.size());
    g.ap_adj.assign(aps.size(), {});
    const double reach = 2.0 * d_tilde;
    for (int a = 0; a < g.ap_count; ++a)
        for (int b = a + 1; b < g.ap_count; ++b)
            if (pairwise_distance(aps[a], aps[b]) <= reach) {
                g.ap_adj[a].push_back(b);
                g.ap_adj[b].push_back(a);
            }
    for (auto& adj : g.ap_adj) std::sort(adj.begin(), adj.end());

    g.ap_nodes.assign(aps.size(), {});
    for (int a = 0; a < g.ap_count; ++a) {
        const int n = loads[a] > 0.0 ? static_cast<int>(std::ceil(loads[a])) : 0;
        for (int i = 0; i < n; ++i) {
            g.ap_nodes[a].push_back(g.node_count());
            g.node_of.push_back(a);
        }
    }
    return g;
}

std::vector<int> dsatur_color(const InterferenceGraph& graph, int max_colors) {
    if (max_colors < 1) throw std::invalid_argument("dsatur_color: need at least one color");
    const int nn = graph.node_count();
    std::vector<int> colors(nn, kUncolored);
    // per-node bitmap of neighbour colors; saturation = popcount
    std::vector<std::vector<char>> seen(nn, std::vector<char>(max_colors, 0));
    std::vector<int> sat(nn, 0);
    std::vector<int> uncolored_degree(nn);
    for (int u = 0; u < nn; ++u) uncolored_degree[u] = graph.node_degree(u);
    std::vector<char> done(nn, 0);

    auto neighbours = [&](int u, auto&& fn) {
        const int a = graph.node_of[u];
        for (int v : graph.ap_nodes[a])
            if (v != u) fn(v);
        for (int b : graph.ap_adj[a])
            for (int v : graph.ap_nodes[b]) fn(v);
    };

    for (int step = 0; step < nn; ++step) {
        int pick = -1;
        for (int u = 0; u < nn; ++u) {
            if (done[u]) continue;
            if (pick == -1 || sat[u] > sat[pick] ||
                (sat[u] == sat[pick] && uncolored_degree[u] > uncolored_degree[pick]))
                pick = u;
        }
        done[pick] = 1;
        int c = kUncolored;
        for (int i = 0; i < max_colors; ++i)
            if (!seen[pick][i]) {
                c = i;
                break;
            }
        colors[pick] = c;
        neighbours(pick, [&](int v) {
            if (c != kUncolored && !seen[v][c]) {
                seen[v][c] = 1;
                ++sat[v];
            }
            --uncolored_degree[v];
        });
    }
    return colors;
}

ChannelAllocation allocation_from_coloring(const std::vector<int>& colors,
                                           const InterferenceGraph& graph) {
    ChannelAllocation alloc;
    alloc.prbs.assign(graph.ap_count, {});
    alloc.requested.assign(graph.ap_count, 0);
    std::set<int> used;
    for (int a = 0; a < graph.ap_count; ++a) {
        alloc.requested[a] = static_cast<int>(graph.ap_nodes[a].size());
        for (int u : graph.ap_nodes[a]) {
            if (colors[u] == kUncolored) continue;
            alloc.prbs[a].push_back(colors[u]);
            used.insert(colors[u]);
        }
        std::sort(alloc.prbs[a].begin(), alloc.prbs[a].end());
    }
    alloc.colors_used = static_cast<int>(used.size());
    return alloc;
}

std::vector<bool> ap_outage_from_allocation(const ChannelAllocation& alloc) {
    std::vector<bool> flags(alloc.prbs.size());
    for (std::size_t a = 0; a < alloc.prbs.size(); ++a)
        flags[a] = static_cast<int>(alloc.prbs[a].size()) < alloc.requested[a];
    return flags;
}

void write_edge_list(std::ostream& os, const InterferenceGraph& graph) {
    long edges = 0;
    const int nn = graph.node_count();
    for (int u = 0; u < nn; ++u)
        for (int v = u + 1; v < nn; ++v)
            if (graph.nodes_adjacent(u, v)) ++edges;
    os << "p edge " << nn << ' ' << edges << '\n';
    for (int a = 0; a < graph.ap_count; ++a) {
        os << "c ap " << a << " nodes";
        for (int u : graph.ap_nodes[a]) os << ' ' << u + 1;
        os << '\n';
    }
    for (int u = 0; u < nn; ++u)
        for (int v = u + 1; v < nn; ++v)
            if (graph.nodes_adjacent(u, v)) os << "e " << u + 1 << ' ' << v + 1 << '\n';
}

} // namespace scsim
