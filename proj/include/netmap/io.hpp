#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netmap/errors.hpp"
#include "netmap/graph.hpp"

namespace netmap {

struct LoadStats {
    std::size_t lines = 0;           // physical lines seen
    std::size_t records = 0;         // non-comment, non-blank lines
    std::size_t self_loops = 0;      // records skipped because src == dst
    std::size_t duplicates = 0;      // records collapsed into an existing edge
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.emplace_back(trim(line.substr(start)));
            break;
        }
        fields.emplace_back(trim(line.substr(start, tab - start)));
        start = tab + 1;
    }
    return fields;
}

/// Feeds each data line (comments and blanks skipped) to `fn` with its 1-based
/// line number. Record streams are UTF-8, one record per line, `#` comments.
inline void for_each_record(std::istream& in, LoadStats* stats,
                            const std::function<void(std::string_view, std::size_t)>& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (stats) ++stats->lines;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        if (stats) ++stats->records;
        fn(view, lineno);
    }
}

} // namespace detail

/// Parses a two-column edge list (src<TAB>dst). Malformed records raise
/// ParseError with the line number; self-loops are skipped and counted.
inline InteractionGraph load_edge_list(std::istream& in, EdgeKind kind,
                                       LoadStats* stats = nullptr) {
    GraphBuilder builder;
    std::size_t raw_edges = 0;
    detail::for_each_record(in, stats, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() != 2)
            throw ParseError("expected 2 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        if (fields[0].empty() || fields[1].empty())
            throw ParseError("empty account field", lineno);
        if (fields[0] == fields[1]) {
            if (stats) ++stats->self_loops;
            return;
        }
        builder.add_edge(fields[0], fields[1], kind);
        ++raw_edges;
    });
    InteractionGraph g = builder.build();
    if (stats) stats->duplicates = raw_edges - g.edge_count();
    return g;
}

inline InteractionGraph load_edge_list_file(const std::string& path, EdgeKind kind,
                                            LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in, kind, stats);
}

/// Deterministic snapshot: `src<TAB>dst<TAB>kind` lines sorted lexicographically.
inline void save_graph(const InteractionGraph& g, std::ostream& out) {
    std::vector<std::string> lines;
    lines.reserve(g.edge_count());
    for (EdgeKind kind : kAllEdgeKinds)
        for (InteractionGraph::NodeIndex u = 0; u < g.node_count(); ++u)
            for (InteractionGraph::NodeIndex v : g.out_neighbors(u, kind))
                lines.push_back(g.id_of(u) + '\t' + g.id_of(v) + '\t' +
                                std::string(to_string(kind)));
    std::sort(lines.begin(), lines.end());
    // isolated nodes are kept as single-field records so round-trips are exact
    std::vector<std::string> isolated;
    for (InteractionGraph::NodeIndex u = 0; u < g.node_count(); ++u) {
        bool has_any = !g.undirected_neighbors(u).empty();
        if (!has_any) isolated.push_back(g.id_of(u));
    }
    std::sort(isolated.begin(), isolated.end());
    for (const auto& id : isolated) out << id << '\n';
    for (const auto& line : lines) out << line << '\n';
}

inline void save_graph_file(const InteractionGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph snapshot: " + path);
    save_graph(g, out);
}

/// Reads a snapshot produced by save_graph. Single-field lines register
/// isolated nodes; three-field lines are typed edges.
inline InteractionGraph load_graph_snapshot(std::istream& in, LoadStats* stats = nullptr) {
    GraphBuilder builder;
    detail::for_each_record(in, stats, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() == 1) {
            if (fields[0].empty()) throw ParseError("empty account field", lineno);
            builder.add_node(fields[0]);
            return;
        }
        if (fields.size() != 3)
            throw ParseError("expected 1 or 3 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        if (fields[0].empty() || fields[1].empty())
            throw ParseError("empty account field", lineno);
        auto kind = parse_edge_kind(fields[2]);
        if (!kind) throw ParseError("unknown edge kind '" + fields[2] + "'", lineno);
        if (fields[0] == fields[1]) {
            if (stats) ++stats->self_loops;
            return;
        }
        builder.add_edge(fields[0], fields[1], *kind);
    });
    return builder.build();
}

inline InteractionGraph load_graph_snapshot_file(const std::string& path,
                                                 LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph snapshot: " + path);
    return load_graph_snapshot(in, stats);
}

/// One account id per line.
inline std::vector<std::string> load_seeds(std::istream& in) {
    std::vector<std::string> seeds;
    detail::for_each_record(in, nullptr, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() != 1 || fields[0].empty())
            throw ParseError("expected a single account id", lineno);
        seeds.push_back(fields[0]);
    });
    return seeds;
}

inline std::vector<std::string> load_seeds_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open seeds file: " + path);
    return load_seeds(in);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

} // namespace netmap
