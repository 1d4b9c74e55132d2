#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netmap/graph.hpp"

namespace netmap {

/// Peeling order core decomposition (Batagelj-Zaversnik). Degree is the count
/// of distinct neighbors on the undirected projection, all edge kinds merged.
inline std::vector<std::uint32_t> core_numbers(const InteractionGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> degree(n);
    std::uint32_t max_degree = 0;
    for (std::size_t u = 0; u < n; ++u) {
        degree[u] = static_cast<std::uint32_t>(g.undirected_degree(
            static_cast<InteractionGraph::NodeIndex>(u)));
        max_degree = std::max(max_degree, degree[u]);
    }

    // bucket sort nodes by degree
    std::vector<std::uint32_t> bin(max_degree + 2, 0);
    for (std::size_t u = 0; u < n; ++u) ++bin[degree[u]];
    std::uint32_t start = 0;
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
        std::uint32_t count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<std::uint32_t> order(n);
    std::vector<std::uint32_t> pos(n);
    {
        std::vector<std::uint32_t> next = bin;
        for (std::uint32_t u = 0; u < n; ++u) {
            pos[u] = next[degree[u]]++;
            order[pos[u]] = u;
        }
    }

    std::vector<std::uint32_t> core(degree);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t u = order[i];
        core[u] = degree[u];
        for (auto v : g.undirected_neighbors(u)) {
            if (degree[v] > degree[u]) {
                // swap v toward the front of its bucket, then shrink its degree
                std::uint32_t dv = degree[v];
                std::uint32_t pv = pos[v];
                std::uint32_t pw = bin[dv];
                std::uint32_t w = order[pw];
                if (v != w) {
                    std::swap(order[pv], order[pw]);
                    pos[v] = pw;
                    pos[w] = pv;
                }
                ++bin[dv];
                --degree[v];
            }
        }
    }
    return core;
}

/// Maximal subgraph in which every node keeps at least k undirected neighbors.
/// k = 0 returns the input unchanged; an empty result is valid.
inline InteractionGraph kcore_decompose(const InteractionGraph& g, std::uint32_t k) {
    auto core = core_numbers(g);
    std::vector<bool> keep(g.node_count());
    for (std::size_t u = 0; u < core.size(); ++u) keep[u] = core[u] >= k;
    return g.induced(keep);
}

struct KCoreSelection {
    std::uint32_t k = 0;
    std::size_t core_size = 0;
    InteractionGraph core;
};

/// Picks the largest k whose core still holds at least target_size nodes
/// (the tightest core meeting the target) and returns that core.
inline KCoreSelection select_k_for_target(const InteractionGraph& g, std::size_t target_size) {
    if (target_size == 0) throw std::invalid_argument("target_size must be >= 1");
    if (target_size > g.node_count())
        throw std::invalid_argument("target_size " + std::to_string(target_size) +
                                    " exceeds node count " + std::to_string(g.node_count()));
    auto core = core_numbers(g);
    std::uint32_t max_core = 0;
    for (auto c : core) max_core = std::max(max_core, c);

    // size of the k-core = number of nodes with core number >= k
    std::vector<std::size_t> count_at(max_core + 1, 0);
    for (auto c : core) ++count_at[c];
    std::uint32_t best_k = 0;
    std::size_t suffix = 0;
    for (std::uint32_t k = max_core + 1; k-- > 0;) {
        suffix += count_at[k];
        if (suffix >= target_size) {
            best_k = k;
            break;
        }
    }

    KCoreSelection sel;
    sel.k = best_k;
    std::vector<bool> keep(g.node_count());
    for (std::size_t u = 0; u < core.size(); ++u) keep[u] = core[u] >= best_k;
    sel.core = g.induced(keep);
    sel.core_size = sel.core.node_count();
    return sel;
}

} // namespace netmap
