#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netmap/clustering.hpp"
#include "netmap/domain.hpp"
#include "netmap/errors.hpp"
#include "netmap/io.hpp"

namespace netmap {

enum class NewsCategory : std::uint8_t { Junk = 0, Professional = 1, StateSponsored = 2, VetOps = 3 };

inline constexpr std::array<NewsCategory, 4> kAllNewsCategories{
    NewsCategory::Junk, NewsCategory::Professional, NewsCategory::StateSponsored,
    NewsCategory::VetOps};

inline std::string_view to_string(NewsCategory c) {
    switch (c) {
    case NewsCategory::Junk: return "junk";
    case NewsCategory::Professional: return "professional";
    case NewsCategory::StateSponsored: return "state_sponsored";
    case NewsCategory::VetOps: return "vetops";
    }
    return "junk";
}

inline std::optional<NewsCategory> parse_news_category(std::string_view text) {
    if (text == "junk") return NewsCategory::Junk;
    if (text == "professional") return NewsCategory::Professional;
    if (text == "state_sponsored") return NewsCategory::StateSponsored;
    if (text == "vetops") return NewsCategory::VetOps;
    return std::nullopt;
}

/// Base-domain -> news category mapping. Domains are stored normalized
/// (lowercase, no scheme, no leading www), one category per domain.
class DomainDictionary {
public:
    void insert(std::string_view domain, NewsCategory category) {
        std::string normalized = normalize_domain(domain);
        auto [it, inserted] = entries_.emplace(std::move(normalized), category);
        if (!inserted && it->second != category)
            throw std::invalid_argument("conflicting category for domain '" + it->first + "'");
    }

    std::optional<NewsCategory> lookup(std::string_view domain) const {
        auto it = entries_.find(std::string(domain));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Tracked domains of the given categories, sorted.
    std::vector<std::string> domains_of(const std::vector<NewsCategory>& categories) const {
        std::vector<std::string> out;
        for (const auto& [domain, cat] : entries_)
            if (std::find(categories.begin(), categories.end(), cat) != categories.end())
                out.push_back(domain);
        std::sort(out.begin(), out.end());
        return out;
    }

    const std::map<std::string, NewsCategory>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, NewsCategory> entries_;
};

/// Dictionary file: `domain<TAB>category`, categories junk | professional |
/// state_sponsored | vetops.
inline DomainDictionary load_dictionary(std::istream& in) {
    DomainDictionary dict;
    detail::for_each_record(in, nullptr, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() != 2)
            throw ParseError("expected domain<TAB>category", lineno);
        auto category = parse_news_category(fields[1]);
        if (!category) throw ParseError("unknown category '" + fields[1] + "'", lineno);
        try {
            dict.insert(fields[0], *category);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), lineno);
        }
    });
    return dict;
}

inline DomainDictionary load_dictionary_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dictionary: " + path);
    return load_dictionary(in);
}

struct CitationRecord {
    std::string account;
    std::string url;
    std::string base_domain;  // normalized at load
    std::uint64_t shares = 0; // reshare count of the post carrying the URL
    std::string posted_at;    // optional ISO 8601 timestamp, empty if absent
};

/// Citation file: `account<TAB>url<TAB>shares[<TAB>iso8601]`.
inline std::vector<CitationRecord> load_citations(std::istream& in,
                                                  LoadStats* stats = nullptr) {
    std::vector<CitationRecord> records;
    detail::for_each_record(in, stats, [&](std::string_view record, std::size_t lineno) {
        auto fields = detail::split_tabs(record);
        if (fields.size() != 3 && fields.size() != 4)
            throw ParseError("expected account<TAB>url<TAB>shares[<TAB>timestamp]", lineno);
        if (fields[0].empty()) throw ParseError("empty account field", lineno);
        CitationRecord rec;
        rec.account = fields[0];
        rec.url = fields[1];
        try {
            rec.base_domain = normalize_domain(fields[1]);
        } catch (const UrlParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        try {
            std::size_t used = 0;
            long long shares = std::stoll(fields[2], &used);
            if (used != fields[2].size() || shares < 0) throw std::invalid_argument("shares");
            rec.shares = static_cast<std::uint64_t>(shares);
        } catch (const std::exception&) {
            throw ParseError("invalid share count '" + fields[2] + "'", lineno);
        }
        if (fields.size() == 4) rec.posted_at = fields[3];
        records.push_back(std::move(rec));
    });
    return records;
}

inline std::vector<CitationRecord> load_citations_file(const std::string& path,
                                                       LoadStats* stats = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open citations: " + path);
    return load_citations(in, stats);
}

/// Dictionary category for a normalized domain, or nullopt (unclassified).
/// Falls back label by label down to the registrable domain, so a dictionary
/// entry for rt.example also classifies news.rt.example.
inline std::optional<NewsCategory> classify_source(
    std::string_view domain, const DomainDictionary& dict,
    const PublicSuffixList& psl = PublicSuffixList::bundled()) {
    std::string current(domain);
    std::string registrable = psl.registrable_domain(current);
    while (true) {
        if (auto hit = dict.lookup(current)) return hit;
        if (current == registrable) return std::nullopt;
        std::size_t dot = current.find('.');
        if (dot == std::string::npos) return std::nullopt;
        current.erase(0, dot + 1);
        if (current.size() < registrable.size()) return std::nullopt;
    }
}

struct ShareRow {
    std::string group;
    std::array<double, 4> pct{};   // indexed by NewsCategory, sums to 100 when n > 0
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t n = 0;           // classified URL occurrences
};

/// Table of news-category shares per group plus an overall row. Unclassified
/// links never enter the denominators.
struct ShareTable {
    std::vector<ShareRow> rows;    // sorted by group label
    ShareRow overall;              // group = "total"
    std::size_t unmapped_citations = 0;     // account not in any group
    std::size_t unclassified_citations = 0; // domain not in the dictionary
};

inline ShareTable share_table(const std::vector<CitationRecord>& citations,
                              const Grouping& grouping, const DomainDictionary& dict) {
    std::map<std::string, ShareRow> by_group;
    ShareTable table;
    table.overall.group = "total";
    for (const auto& rec : citations) {
        auto group = grouping.group_of(rec.account);
        if (!group) {
            ++table.unmapped_citations;
            continue;
        }
        auto category = classify_source(rec.base_domain, dict);
        if (!category) {
            ++table.unclassified_citations;
            continue;
        }
        auto& row = by_group[*group];
        row.group = *group;
        ++row.counts[static_cast<std::size_t>(*category)];
        ++row.n;
        ++table.overall.counts[static_cast<std::size_t>(*category)];
        ++table.overall.n;
    }
    if (table.overall.n == 0)
        throw std::runtime_error("no classifiable citations (all unmapped or unclassified)");

    auto fill_pct = [](ShareRow& row) {
        if (row.n == 0) return;
        for (std::size_t c = 0; c < 4; ++c)
            row.pct[c] = 100.0 * static_cast<double>(row.counts[c]) / static_cast<double>(row.n);
    };
    for (auto& [label, row] : by_group) {
        fill_pct(row);
        table.rows.push_back(row);
    }
    fill_pct(table.overall);
    return table;
}

struct AmplifierEntry {
    std::string account;
    std::uint64_t flagged_shares = 0;   // junk + state-sponsored links posted
    double median_reshares = 0.0;       // median reshare count of those posts
    std::vector<NewsCategory> categories; // flagged categories actually shared
};

struct AmplifierReport {
    std::vector<AmplifierEntry> accounts; // sorted by flagged_shares descending
    std::uint64_t min_shares = 0;
    std::uint64_t max_median_reshare = 0;
};

/// Flags accounts that push out many junk or state-sponsored links whose posts
/// are rarely reshared by anyone else: flagged-category link count >=
/// min_shares and median reshare count of those posts <= max_median_reshare.
inline AmplifierReport detect_amplifiers(const std::vector<CitationRecord>& citations,
                                         const DomainDictionary& dict,
                                         std::uint64_t min_shares,
                                         std::uint64_t max_median_reshare) {
    if (min_shares == 0) throw std::invalid_argument("min_shares must be positive");

    struct PerAccount {
        std::vector<std::uint64_t> reshares;
        bool junk = false;
        bool state = false;
    };
    std::map<std::string, PerAccount> per_account;
    for (const auto& rec : citations) {
        auto category = classify_source(rec.base_domain, dict);
        if (!category) continue;
        if (*category != NewsCategory::Junk && *category != NewsCategory::StateSponsored)
            continue;
        auto& acc = per_account[rec.account];
        acc.reshares.push_back(rec.shares);
        if (*category == NewsCategory::Junk) acc.junk = true;
        if (*category == NewsCategory::StateSponsored) acc.state = true;
    }

    AmplifierReport report;
    report.min_shares = min_shares;
    report.max_median_reshare = max_median_reshare;
    for (auto& [account, acc] : per_account) {
        if (acc.reshares.size() < min_shares) continue;
        std::sort(acc.reshares.begin(), acc.reshares.end());
        std::size_t n = acc.reshares.size();
        double median = (n % 2 == 1)
                            ? static_cast<double>(acc.reshares[n / 2])
                            : (static_cast<double>(acc.reshares[n / 2 - 1]) +
                               static_cast<double>(acc.reshares[n / 2])) / 2.0;
        if (median > static_cast<double>(max_median_reshare)) continue;
        AmplifierEntry entry;
        entry.account = account;
        entry.flagged_shares = n;
        entry.median_reshares = median;
        if (acc.junk) entry.categories.push_back(NewsCategory::Junk);
        if (acc.state) entry.categories.push_back(NewsCategory::StateSponsored);
        report.accounts.push_back(std::move(entry));
    }
    std::sort(report.accounts.begin(), report.accounts.end(),
              [](const AmplifierEntry& a, const AmplifierEntry& b) {
                  if (a.flagged_shares != b.flagged_shares)
                      return a.flagged_shares > b.flagged_shares;
                  return a.account < b.account;
              });
    return report;
}

} // namespace netmap
