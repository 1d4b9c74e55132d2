#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "netmap/psl_snapshot.hpp"

namespace netmap {

class UrlParseError : public std::runtime_error {
public:
    explicit UrlParseError(std::string raw)
        : std::runtime_error("cannot parse URL: '" + raw + "'"), raw_(std::move(raw)) {}

    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

/// Public-suffix rule table. Follows the publicsuffix.org matching algorithm:
/// the prevailing rule is the longest match, exception rules beat wildcards,
/// and an unmatched host falls back to the implicit `*` rule (last label).
class PublicSuffixList {
public:
    PublicSuffixList() { parse(kPublicSuffixSnapshot); }

    explicit PublicSuffixList(std::string_view rules_text) { parse(rules_text); }

    static const PublicSuffixList& bundled() {
        static const PublicSuffixList psl;
        return psl;
    }

    /// Number of labels in the public suffix of `host` (host must already be
    /// lowercase, no scheme). Returns 1 for unknown TLDs (implicit `*` rule).
    std::size_t suffix_label_count(std::string_view host) const {
        auto labels = split_labels(host);
        std::size_t best = 1; // implicit `*`
        for (std::size_t take = 1; take <= labels.size(); ++take) {
            std::string candidate = join_tail(labels, take);
            if (exceptions_.count(candidate)) return take - 1;
            if (rules_.count(candidate)) best = std::max(best, take);
            if (take >= 2) {
                // wildcard rule covers one label under its parent
                std::string parent = join_tail(labels, take - 1);
                if (wildcards_.count(parent)) best = std::max(best, take);
            }
        }
        return best;
    }

    /// The registrable domain: public suffix plus one label. Returns `host`
    /// unchanged when it is itself a bare public suffix or has no extra label.
    std::string registrable_domain(std::string_view host) const {
        auto labels = split_labels(host);
        std::size_t suffix = suffix_label_count(host);
        if (labels.size() <= suffix) return std::string(host);
        return join_tail(labels, suffix + 1);
    }

    bool is_public_suffix(std::string_view host) const {
        auto labels = split_labels(host);
        return !labels.empty() && suffix_label_count(host) == labels.size();
    }

private:
    void parse(std::string_view text) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                line.remove_suffix(1);
            while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            if (line.empty() || line.substr(0, 2) == "//") continue;
            if (line.front() == '!') {
                exceptions_.emplace(line.substr(1));
            } else if (line.substr(0, 2) == "*.") {
                wildcards_.emplace(line.substr(2));
            } else {
                rules_.emplace(line);
            }
        }
    }

    static std::vector<std::string> split_labels(std::string_view host) {
        std::vector<std::string> labels;
        std::size_t start = 0;
        while (start <= host.size()) {
            std::size_t dot = host.find('.', start);
            if (dot == std::string_view::npos) {
                labels.emplace_back(host.substr(start));
                break;
            }
            labels.emplace_back(host.substr(start, dot - start));
            start = dot + 1;
        }
        return labels;
    }

    static std::string join_tail(const std::vector<std::string>& labels, std::size_t count) {
        std::string out;
        for (std::size_t i = labels.size() - count; i < labels.size(); ++i) {
            if (!out.empty()) out += '.';
            out += labels[i];
        }
        return out;
    }

    std::unordered_set<std::string> rules_;
    std::unordered_set<std::string> wildcards_;
    std::unordered_set<std::string> exceptions_;
};

namespace detail {

inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool valid_host_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_';
}

} // namespace detail

/// Extracts the base domain of a URL: scheme, userinfo, port, path, query and
/// fragment dropped, lowercased, a single leading "www." label stripped. Other
/// subdomains are preserved; dictionary lookups walk down to the registrable
/// domain separately (see classify_source). Idempotent: feeding the result
/// back in returns it unchanged.
inline std::string normalize_domain(std::string_view url,
                                    const PublicSuffixList& psl = PublicSuffixList::bundled()) {
    std::string raw(url);
    std::string_view rest = url;

    // optional scheme
    std::size_t scheme_end = rest.find("://");
    if (scheme_end != std::string_view::npos) rest.remove_prefix(scheme_end + 3);

    // authority ends at first /, ?, or #
    std::size_t authority_end = rest.find_first_of("/?#");
    std::string_view authority =
        authority_end == std::string_view::npos ? rest : rest.substr(0, authority_end);

    // userinfo@
    std::size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority.remove_prefix(at + 1);

    // :port
    std::size_t colon = authority.rfind(':');
    if (colon != std::string_view::npos &&
        authority.find(']') == std::string_view::npos) // leave IPv6 literals alone
        authority = authority.substr(0, colon);

    if (authority.empty()) throw UrlParseError(raw);
    for (char c : authority)
        if (!detail::valid_host_char(c)) throw UrlParseError(raw);

    std::string host = detail::ascii_lower(authority);
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty() || host.front() == '.' || host.find("..") != std::string::npos)
        throw UrlParseError(raw);

    if (host.size() > 4 && host.compare(0, 4, "www.") == 0) {
        std::string stripped = host.substr(4);
        // never strip down to a bare public suffix (e.g. www.ck stays)
        if (!psl.is_public_suffix(stripped)) host = stripped;
    }
    return host;
}

} // namespace netmap
