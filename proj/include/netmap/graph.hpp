#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace netmap {

enum class EdgeKind : std::uint8_t { Follow = 0, Like = 1, Mention = 2 };

inline constexpr std::array<EdgeKind, 3> kAllEdgeKinds{EdgeKind::Follow, EdgeKind::Like,
                                                       EdgeKind::Mention};

inline std::string_view to_string(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::Follow: return "follow";
    case EdgeKind::Like: return "like";
    case EdgeKind::Mention: return "mention";
    }
    return "follow";
}

inline std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
    if (text == "follow") return EdgeKind::Follow;
    if (text == "like") return EdgeKind::Like;
    if (text == "mention") return EdgeKind::Mention;
    return std::nullopt;
}

/// Directed typed graph of accounts. Nodes are opaque string ids; edges are
/// deduplicated simple directed edges per kind, self-loops excluded.
/// Immutable once built (see GraphBuilder); safe to share across readers.
class InteractionGraph {
public:
    using NodeIndex = std::uint32_t;

    std::size_t node_count() const noexcept { return ids_.size(); }

    std::size_t edge_count() const noexcept {
        std::size_t total = 0;
        for (const auto& per_kind : out_) total += count_of(per_kind);
        return total;
    }

    std::size_t edge_count(EdgeKind kind) const noexcept {
        return count_of(out_[static_cast<std::size_t>(kind)]);
    }

    bool has_node(std::string_view id) const { return find(id).has_value(); }

    std::optional<NodeIndex> find(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& id_of(NodeIndex node) const { return ids_.at(node); }

    const std::vector<std::string>& node_ids() const noexcept { return ids_; }

    /// Out-neighbors of `node` over edges of `kind`, sorted by index.
    const std::vector<NodeIndex>& out_neighbors(NodeIndex node, EdgeKind kind) const {
        return out_[static_cast<std::size_t>(kind)].at(node);
    }

    const std::vector<NodeIndex>& in_neighbors(NodeIndex node, EdgeKind kind) const {
        return in_[static_cast<std::size_t>(kind)].at(node);
    }

    bool has_edge(NodeIndex src, NodeIndex dst, EdgeKind kind) const {
        const auto& adj = out_neighbors(src, kind);
        return std::binary_search(adj.begin(), adj.end(), dst);
    }

    /// Distinct neighbors over all edge kinds, ignoring direction. This is the
    /// degree notion used for k-core reduction and tie counting.
    const std::vector<NodeIndex>& undirected_neighbors(NodeIndex node) const {
        return undirected_.at(node);
    }

    std::size_t undirected_degree(NodeIndex node) const { return undirected_.at(node).size(); }

    /// All distinct undirected node pairs {u, v} with at least one edge in
    /// either direction, as (min, max) index pairs sorted ascending.
    std::vector<std::pair<NodeIndex, NodeIndex>> undirected_pairs() const {
        std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
        for (NodeIndex u = 0; u < undirected_.size(); ++u)
            for (NodeIndex v : undirected_[u])
                if (u < v) pairs.emplace_back(u, v);
        return pairs;
    }

    /// Subgraph induced on the given node indices: the kept nodes and exactly
    /// the edges with both endpoints kept.
    InteractionGraph induced(const std::vector<bool>& keep) const;

private:
    friend class GraphBuilder;

    using Adjacency = std::vector<std::vector<NodeIndex>>;

    static std::size_t count_of(const Adjacency& adj) {
        std::size_t total = 0;
        for (const auto& row : adj) total += row.size();
        return total;
    }

    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::array<Adjacency, 3> out_{};
    std::array<Adjacency, 3> in_{};
    Adjacency undirected_;
};

/// Accumulates nodes and edges, then produces an immutable InteractionGraph.
/// Duplicate edges collapse to one; self-loops are rejected.
class GraphBuilder {
public:
    using NodeIndex = InteractionGraph::NodeIndex;

    NodeIndex add_node(std::string_view id) {
        if (id.empty()) throw std::invalid_argument("empty account id");
        auto it = index_.find(std::string(id));
        if (it != index_.end()) return it->second;
        NodeIndex idx = static_cast<NodeIndex>(ids_.size());
        ids_.emplace_back(id);
        index_.emplace(ids_.back(), idx);
        return idx;
    }

    /// Adds a directed edge, creating endpoints as needed.
    /// Throws std::invalid_argument on self-loops.
    void add_edge(std::string_view src, std::string_view dst, EdgeKind kind) {
        if (src == dst)
            throw std::invalid_argument("self-loop on account '" + std::string(src) + "'");
        NodeIndex s = add_node(src);
        NodeIndex d = add_node(dst);
        edges_.push_back(Pending{s, d, kind});
    }

    InteractionGraph build() const {
        InteractionGraph g;
        g.ids_ = ids_;
        g.index_ = index_;
        const std::size_t n = ids_.size();
        for (auto& adj : g.out_) adj.assign(n, {});
        for (auto& adj : g.in_) adj.assign(n, {});
        g.undirected_.assign(n, {});

        auto sorted = edges_;
        std::sort(sorted.begin(), sorted.end(), [](const Pending& a, const Pending& b) {
            return std::tie(a.kind, a.src, a.dst) < std::tie(b.kind, b.src, b.dst);
        });
        sorted.erase(std::unique(sorted.begin(), sorted.end(),
                                 [](const Pending& a, const Pending& b) {
                                     return a.kind == b.kind && a.src == b.src && a.dst == b.dst;
                                 }),
                     sorted.end());

        for (const Pending& e : sorted) {
            auto k = static_cast<std::size_t>(e.kind);
            g.out_[k][e.src].push_back(e.dst);
            g.in_[k][e.dst].push_back(e.src);
            g.undirected_[e.src].push_back(e.dst);
            g.undirected_[e.dst].push_back(e.src);
        }
        for (auto& adj : g.out_)
            for (auto& row : adj) std::sort(row.begin(), row.end());
        for (auto& adj : g.in_)
            for (auto& row : adj) std::sort(row.begin(), row.end());
        for (auto& row : g.undirected_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        return g;
    }

private:
    struct Pending {
        NodeIndex src;
        NodeIndex dst;
        EdgeKind kind;
    };

    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<Pending> edges_;
};

inline InteractionGraph InteractionGraph::induced(const std::vector<bool>& keep) const {
    if (keep.size() != node_count())
        throw std::invalid_argument("induced: keep mask size does not match node count");
    GraphBuilder builder;
    for (NodeIndex u = 0; u < node_count(); ++u)
        if (keep[u]) builder.add_node(ids_[u]);
    for (EdgeKind kind : kAllEdgeKinds) {
        const auto& adj = out_[static_cast<std::size_t>(kind)];
        for (NodeIndex u = 0; u < node_count(); ++u) {
            if (!keep[u]) continue;
            for (NodeIndex v : adj[u])
                if (keep[v]) builder.add_edge(ids_[u], ids_[v], kind);
        }
    }
    return builder.build();
}

} // namespace netmap
