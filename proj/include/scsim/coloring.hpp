#pragma once

#include <iosfwd>
#include <vector>

#include "scsim/geometry.hpp"

namespace scsim {

// AP-level interference graph expanded so that AP l contributes
// ceil(N_l) nodes forming a clique; nodes of adjacent APs are fully
// interconnected.
struct InterferenceGraph {
    int ap_count = 0;
    std::vector<std::vector<int>> ap_adj;     // per-AP neighbour lists (sorted)
    std::vector<int> node_of;                 // expansion node -> owning AP
    std::vector<std::vector<int>> ap_nodes;   // AP -> its node ids

    int node_count() const { return static_cast<int>(node_of.size()); }

    bool aps_adjacent(int a, int b) const;
    bool nodes_adjacent(int u, int v) const {
        if (u == v) return false;
        const int a = node_of[u], b = node_of[v];
        return a == b || aps_adjacent(a, b);
    }
    int node_degree(int u) const;
};

// Edge (i,j) iff the APs are within 2*d_tilde of each other; APs with a
// non-positive load contribute zero nodes.
InterferenceGraph build_interference_graph(const std::vector<Point>& aps, double d_tilde,
                                           const std::vector<double>& loads);

inline constexpr int kUncolored = -1;

// Brelaz (DSATUR) heuristic under a color budget. Ties break on highest
// saturation, then highest degree among uncolored nodes, then lowest node
// index; the smallest feasible color is chosen. Nodes whose neighbourhood
// exhausts the budget stay kUncolored and coloring continues.
std::vector<int> dsatur_color(const InterferenceGraph& graph, int max_colors);

struct ChannelAllocation {
    std::vector<std::vector<int>> prbs; // per AP, sorted PRB indices
    std::vector<int> requested;         // ceil(N_l) per AP
    int colors_used = 0;                // distinct colors over all nodes
};

// Color i maps to PRB i.
ChannelAllocation allocation_from_coloring(const std::vector<int>& colors,
                                           const InterferenceGraph& graph);

// Shortfall flag per AP: granted fewer PRBs than requested.
std::vector<bool> ap_outage_from_allocation(const ChannelAllocation& alloc);

// DIMACS-like edge list of the expanded node graph ("p edge V E" header,
// "e u v" lines, 1-based; "c" comments map nodes to APs).
void write_edge_list(std::ostream& os, const InterferenceGraph& graph);

} // namespace scsim
