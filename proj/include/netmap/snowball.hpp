#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "netmap/errors.hpp"
#include "netmap/graph.hpp"

namespace netmap {

/// Expands the seed set by breadth-first steps over edges traversed in either
/// direction (an account is pulled in whether it liked or was liked by one
/// already in the sample). Returns the seeds plus everything within `depth`
/// steps, as sorted account ids.
inline std::vector<std::string> snowball_expand(const InteractionGraph& g,
                                                const std::vector<std::string>& seeds,
                                                unsigned depth) {
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");

    std::vector<std::string> missing;
    std::vector<InteractionGraph::NodeIndex> frontier;
    for (const auto& seed : seeds) {
        auto idx = g.find(seed);
        if (!idx)
            missing.push_back(seed);
        else
            frontier.push_back(*idx);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::vector<std::string> problems;
        problems.reserve(missing.size());
        for (const auto& id : missing) problems.push_back("seed not in graph: " + id);
        throw ValidationError(std::move(problems));
    }

    std::vector<bool> visited(g.node_count(), false);
    for (auto u : frontier) visited[u] = true;
    for (unsigned step = 0; step < depth && !frontier.empty(); ++step) {
        std::vector<InteractionGraph::NodeIndex> next;
        for (auto u : frontier) {
            for (auto v : g.undirected_neighbors(u)) {
                if (!visited[v]) {
                    visited[v] = true;
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }

    std::vector<std::string> result;
    for (InteractionGraph::NodeIndex u = 0; u < g.node_count(); ++u)
        if (visited[u]) result.push_back(g.id_of(u));
    std::sort(result.begin(), result.end());
    return result;
}

/// Subgraph induced on a set of account ids; ids absent from the graph are ignored.
inline InteractionGraph induced_on_ids(const InteractionGraph& g,
                                       const std::vector<std::string>& ids) {
    std::vector<bool> keep(g.node_count(), false);
    for (const auto& id : ids)
        if (auto idx = g.find(id)) keep[*idx] = true;
    return g.induced(keep);
}

} // namespace netmap
