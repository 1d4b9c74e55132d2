#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "netmap/errors.hpp"
#include "netmap/graph.hpp"
#include "netmap/io.hpp"

namespace netmap {

/// Sparse binary incidence of map accounts (rows) against external entities
/// (columns). Row order is the caller's account order and stays stable; columns
/// are the union of affiliated entities, sorted by id, so no column is all-zero.
class AffiliationMatrix {
public:
    AffiliationMatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                      std::vector<std::vector<std::uint32_t>> row_cols)
        : rows_(std::move(rows)), cols_(std::move(cols)), row_cols_(std::move(row_cols)) {}

    std::size_t row_count() const noexcept { return rows_.size(); }
    std::size_t col_count() const noexcept { return cols_.size(); }

    const std::string& row_id(std::size_t r) const { return rows_.at(r); }
    const std::string& col_id(std::size_t c) const { return cols_.at(c); }
    const std::vector<std::string>& row_ids() const noexcept { return rows_; }

    /// Sorted column indices the row affiliates with.
    const std::vector<std::uint32_t>& row(std::size_t r) const { return row_cols_.at(r); }

    std::size_t row_size(std::size_t r) const { return row_cols_.at(r).size(); }

    /// Rows with no affiliations at all; they carry no similarity signal.
    std::vector<std::size_t> zero_rows() const {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < row_cols_.size(); ++r)
            if (row_cols_[r].empty()) out.push_back(r);
        return out;
    }

private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<std::vector<std::uint32_t>> row_cols_;
};

/// Bipartite incidence between `map_accounts` and every account they reach via
/// a `relation` edge, including accounts outside the map itself.
inline AffiliationMatrix build_affiliation(const InteractionGraph& g,
                                           const std::vector<std::string>& map_accounts,
                                           EdgeKind relation) {
    if (map_accounts.empty()) throw std::invalid_argument("map_accounts must be non-empty");
    std::vector<std::string> problems;
    std::vector<InteractionGraph::NodeIndex> row_nodes;
    std::set<std::string> seen;
    for (const auto& id : map_accounts) {
        if (!seen.insert(id).second) problems.push_back("duplicate map account: " + id);
        auto idx = g.find(id);
        if (!idx)
            problems.push_back("map account not in graph: " + id);
        else
            row_nodes.push_back(*idx);
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));

    std::set<std::string> entity_ids;
    for (auto node : row_nodes)
        for (auto target : g.out_neighbors(node, relation)) entity_ids.insert(g.id_of(target));

    std::vector<std::string> cols(entity_ids.begin(), entity_ids.end());
    std::unordered_map<std::string, std::uint32_t> col_index;
    for (std::uint32_t c = 0; c < cols.size(); ++c) col_index.emplace(cols[c], c);

    std::vector<std::vector<std::uint32_t>> row_cols(row_nodes.size());
    for (std::size_t r = 0; r < row_nodes.size(); ++r) {
        for (auto target : g.out_neighbors(row_nodes[r], relation))
            row_cols[r].push_back(col_index.at(g.id_of(target)));
        std::sort(row_cols[r].begin(), row_cols[r].end());
    }
    return AffiliationMatrix(std::vector<std::string>(map_accounts), std::move(cols),
                             std::move(row_cols));
}

/// Cosine similarity of two binary affiliation rows; 0 when either is all-zero.
inline double cosine_similarity(const AffiliationMatrix& m, std::size_t a, std::size_t b) {
    const auto& ra = m.row(a);
    const auto& rb = m.row(b);
    if (ra.empty() || rb.empty()) return 0.0;
    std::size_t overlap = 0;
    auto ia = ra.begin();
    auto ib = rb.begin();
    while (ia != ra.end() && ib != rb.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++overlap; ++ia; ++ib; }
    }
    return static_cast<double>(overlap) /
           (std::sqrt(static_cast<double>(ra.size())) * std::sqrt(static_cast<double>(rb.size())));
}

enum class HacLinkage : std::uint8_t { Average, Complete, Single };
enum class HacTieBreak : std::uint8_t {
    RowIndexPair,  // smallest (row, row) pair; reproducible for a fixed row order
    AccountIdPair, // smallest (id, id) pair; invariant under row permutation
};

struct HacParams {
    HacLinkage linkage = HacLinkage::Average;
    std::optional<std::size_t> cut_segments;  // exactly one of the two cuts set
    std::optional<double> cut_threshold;
    HacTieBreak tie_break = HacTieBreak::RowIndexPair;
};

struct Segment {
    int id = 0;
    std::vector<std::string> members; // sorted account ids
    std::string label;                // optional human-readable name
};

struct Merge {
    std::size_t step = 0;
    std::uint32_t into_row = 0;  // representative row index of the surviving cluster
    std::uint32_t from_row = 0;  // representative row index of the absorbed cluster
    double similarity = 0.0;
    std::size_t merged_size = 0;
};

struct ClusterResult {
    std::vector<Segment> segments;      // disjoint, covering all rows
    std::vector<Merge> dendrogram;
    std::vector<std::string> zero_rows; // members of the residual segment, if any
    int residual_segment_id = 0;        // 0 when no residual segment exists
};

namespace detail {

struct HacCluster {
    std::vector<std::uint32_t> members;
    std::uint32_t rep_row = 0;   // smallest original row index
    std::string rep_id;          // smallest member account id
    bool active = true;
};

inline bool pair_less(const HacCluster& a1, const HacCluster& b1, const HacCluster& a2,
                      const HacCluster& b2, HacTieBreak rule) {
    if (rule == HacTieBreak::RowIndexPair) {
        auto key1 = std::minmax(a1.rep_row, b1.rep_row);
        auto key2 = std::minmax(a2.rep_row, b2.rep_row);
        return key1 < key2;
    }
    auto key1 = std::minmax(a1.rep_id, b1.rep_id);
    auto key2 = std::minmax(a2.rep_id, b2.rep_id);
    return key1 < key2;
}

} // namespace detail

/// Bottom-up agglomerative clustering over the affiliation similarity matrix.
/// Each row starts as its own cluster; the most similar pair merges first, with
/// the declared tie-break making the merge order deterministic. All-zero rows
/// never merge; at cut time they form one residual segment, counted toward a
/// segment-count cut. Segments are numbered from 1 in row order, residual last.
inline ClusterResult hac_cluster(const AffiliationMatrix& m, const HacParams& params) {
    if (m.row_count() == 0) throw std::invalid_argument("matrix has no rows");
    if (params.cut_segments.has_value() == params.cut_threshold.has_value())
        throw std::invalid_argument("exactly one cut criterion must be set");
    if (params.cut_segments) {
        if (*params.cut_segments == 0) throw std::invalid_argument("cut target must be >= 1");
        if (*params.cut_segments > m.row_count())
            throw std::invalid_argument("cut target " + std::to_string(*params.cut_segments) +
                                        " exceeds row count " + std::to_string(m.row_count()));
    }

    ClusterResult result;
    std::vector<bool> is_zero(m.row_count(), false);
    for (std::size_t r : m.zero_rows()) {
        is_zero[r] = true;
        result.zero_rows.push_back(m.row_id(r));
    }

    std::vector<std::uint32_t> live_rows;
    for (std::uint32_t r = 0; r < m.row_count(); ++r)
        if (!is_zero[r]) live_rows.push_back(r);
    const std::size_t n = live_rows.size();

    std::size_t target = n; // no merging by default
    if (params.cut_segments) {
        std::size_t want = *params.cut_segments;
        if (!result.zero_rows.empty()) want = want > 1 ? want - 1 : 1;
        target = std::min(want, n);
    }

    std::vector<detail::HacCluster> clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
        clusters[i].members = {live_rows[i]};
        clusters[i].rep_row = live_rows[i];
        clusters[i].rep_id = m.row_id(live_rows[i]);
    }

    // dense similarity between live clusters, updated in place on merge
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            sim[i][j] = sim[j][i] = cosine_similarity(m, live_rows[i], live_rows[j]);

    std::size_t active_count = n;
    std::size_t step = 0;
    while (active_count > (params.cut_segments ? target : std::size_t{1})) {
        std::size_t best_i = n, best_j = n;
        double best_sim = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!clusters[i].active) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!clusters[j].active) continue;
                double s = sim[i][j];
                if (s > best_sim ||
                    (s == best_sim && best_i < n &&
                     detail::pair_less(clusters[i], clusters[j], clusters[best_i],
                                       clusters[best_j], params.tie_break))) {
                    best_sim = s;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i == n) break;
        if (params.cut_threshold && best_sim < *params.cut_threshold) break;

        auto& a = clusters[best_i];
        auto& b = clusters[best_j];
        const double size_a = static_cast<double>(a.members.size());
        const double size_b = static_cast<double>(b.members.size());
        for (std::size_t c = 0; c < n; ++c) {
            if (!clusters[c].active || c == best_i || c == best_j) continue;
            double merged;
            switch (params.linkage) {
            case HacLinkage::Average:
                merged = (size_a * sim[best_i][c] + size_b * sim[best_j][c]) / (size_a + size_b);
                break;
            case HacLinkage::Complete:
                merged = std::min(sim[best_i][c], sim[best_j][c]);
                break;
            case HacLinkage::Single:
            default:
                merged = std::max(sim[best_i][c], sim[best_j][c]);
                break;
            }
            sim[best_i][c] = sim[c][best_i] = merged;
        }
        a.members.insert(a.members.end(), b.members.begin(), b.members.end());
        Merge rec;
        rec.step = ++step;
        rec.into_row = std::min(a.rep_row, b.rep_row);
        rec.from_row = std::max(a.rep_row, b.rep_row);
        rec.similarity = best_sim;
        rec.merged_size = a.members.size();
        result.dendrogram.push_back(rec);
        a.rep_row = std::min(a.rep_row, b.rep_row);
        a.rep_id = std::min(a.rep_id, b.rep_id);
        b.active = false;
        --active_count;
    }

    // segments in row order, residual last
    std::vector<const detail::HacCluster*> finals;
    for (const auto& c : clusters)
        if (c.active) finals.push_back(&c);
    std::sort(finals.begin(), finals.end(),
              [](const detail::HacCluster* a, const detail::HacCluster* b) {
                  return a->rep_row < b->rep_row;
              });

    int next_id = 1;
    for (const auto* c : finals) {
        Segment seg;
        seg.id = next_id++;
        for (auto r : c->members) seg.members.push_back(m.row_id(r));
        std::sort(seg.members.begin(), seg.members.end());
        result.segments.push_back(std::move(seg));
    }
    if (!result.zero_rows.empty()) {
        Segment residual;
        residual.id = next_id++;
        residual.members = result.zero_rows;
        std::sort(residual.members.begin(), residual.members.end());
        std::sort(result.zero_rows.begin(), result.zero_rows.end());
        result.residual_segment_id = residual.id;
        result.segments.push_back(std::move(residual));
    }
    return result;
}

struct Group {
    std::string label;
    std::vector<int> segment_ids; // sorted
};

/// Two-level partition: segments nested in labeled groups. Every segment
/// belongs to exactly one group.
class Grouping {
public:
    Grouping(std::vector<Segment> segments, std::vector<Group> groups)
        : segments_(std::move(segments)), groups_(std::move(groups)) {
        for (const auto& group : groups_)
            for (int seg_id : group.segment_ids) group_of_segment_[seg_id] = group.label;
        for (const auto& seg : segments_) {
            auto it = group_of_segment_.find(seg.id);
            if (it == group_of_segment_.end()) continue;
            for (const auto& member : seg.members) account_group_[member] = it->second;
        }
    }

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    const std::vector<Group>& groups() const noexcept { return groups_; }

    std::optional<std::string> group_of(std::string_view account) const {
        auto it = account_group_.find(std::string(account));
        if (it == account_group_.end()) return std::nullopt;
        return it->second;
    }

    /// Group labels, sorted.
    std::vector<std::string> group_labels() const {
        std::vector<std::string> labels;
        for (const auto& g : groups_) labels.push_back(g.label);
        std::sort(labels.begin(), labels.end());
        return labels;
    }

    std::size_t group_size(std::string_view label) const {
        std::size_t total = 0;
        for (const auto& g : groups_) {
            if (g.label != label) continue;
            for (int seg_id : g.segment_ids) total += segment_by_id(seg_id).members.size();
        }
        return total;
    }

    std::size_t total_accounts() const {
        std::size_t total = 0;
        for (const auto& seg : segments_) total += seg.members.size();
        return total;
    }

    const Segment& segment_by_id(int id) const {
        for (const auto& seg : segments_)
            if (seg.id == id) return seg;
        throw std::out_of_range("unknown segment id " + std::to_string(id));
    }

private:
    std::vector<Segment> segments_;
    std::vector<Group> groups_;
    std::map<int, std::string> group_of_segment_;
    std::unordered_map<std::string, std::string> account_group_;
};

/// Assignment file: `segment_id<TAB>group_label`.
inline std::vector<std::pair<int, std::string>> load_assignment(std::istream& in) {
    std::vector<std::pair<int, std::string>> out;
    detail::for_each_record(in, nullptr, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() != 2 || fields[1].empty())
            throw ParseError("expected segment_id<TAB>group_label", lineno);
        try {
            std::size_t used = 0;
            int id = std::stoi(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("id");
            out.emplace_back(id, fields[1]);
        } catch (const std::exception&) {
            throw ParseError("invalid segment id '" + fields[0] + "'", lineno);
        }
    });
    return out;
}

inline std::vector<std::pair<int, std::string>> load_assignment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open assignment file: " + path);
    return load_assignment(in);
}

/// Assembles segments into labeled groups per the assignment. Problems are
/// collected exhaustively: unknown ids, duplicate assignments, and segments
/// left unassigned are all reported in one error.
inline Grouping group_segments(const std::vector<Segment>& segments,
                               const std::vector<std::pair<int, std::string>>& assignment) {
    std::vector<std::string> problems;
    std::set<int> known;
    for (const auto& seg : segments) known.insert(seg.id);

    std::map<int, std::string> assigned;
    for (const auto& [id, label] : assignment) {
        if (!known.count(id)) {
            problems.push_back("assignment references unknown segment id " + std::to_string(id));
            continue;
        }
        if (assigned.count(id)) {
            problems.push_back("duplicate assignment for segment id " + std::to_string(id));
            continue;
        }
        assigned.emplace(id, label);
    }
    for (int id : known)
        if (!assigned.count(id))
            problems.push_back("segment id " + std::to_string(id) + " has no group assignment");
    if (!problems.empty()) throw ValidationError(std::move(problems));

    std::map<std::string, Group> by_label;
    for (const auto& [id, label] : assigned) {
        auto& group = by_label[label];
        group.label = label;
        group.segment_ids.push_back(id);
    }
    std::vector<Group> groups;
    for (auto& [label, group] : by_label) {
        std::sort(group.segment_ids.begin(), group.segment_ids.end());
        groups.push_back(std::move(group));
    }
    return Grouping(segments, std::move(groups));
}

/// Adjusted Rand Index between two partitions given as per-item labels.
/// 1.0 for identical partitions, ~0 for independent ones.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
    const std::size_t n = a.size();
    if (n == 0) return 1.0;

    std::map<std::pair<int, int>, std::uint64_t> contingency;
    std::map<int, std::uint64_t> row_sums, col_sums;
    for (std::size_t i = 0; i < n; ++i) {
        ++contingency[{a[i], b[i]}];
        ++row_sums[a[i]];
        ++col_sums[b[i]];
    }
    auto choose2 = [](std::uint64_t x) {
        return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0;
    };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, count] : contingency) sum_cells += choose2(count);
    for (const auto& [key, count] : row_sums) sum_rows += choose2(count);
    for (const auto& [key, count] : col_sums) sum_cols += choose2(count);
    const double total_pairs = choose2(n);
    const double expected = sum_rows * sum_cols / total_pairs;
    const double max_index = (sum_rows + sum_cols) / 2.0;
    if (max_index == expected) return 1.0;
    return (sum_cells - expected) / (max_index - expected);
}

/// Per-row segment labels for a clustering result, aligned to matrix row order.
inline std::vector<int> segment_labels(const ClusterResult& result, const AffiliationMatrix& m) {
    std::unordered_map<std::string, int> by_account;
    for (const auto& seg : result.segments)
        for (const auto& member : seg.members) by_account[member] = seg.id;
    std::vector<int> labels(m.row_count());
    for (std::size_t r = 0; r < m.row_count(); ++r) labels[r] = by_account.at(m.row_id(r));
    return labels;
}

} // namespace netmap
