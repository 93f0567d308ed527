#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishembed {

/// Textual red flags of a hyperlink. No network access is involved.
struct UrlFeatureReport {
    bool has_https = false;
    std::size_t domain_dot_count = 0;
    std::size_t url_length = 0;
    bool contains_ip = false;
    bool contains_misspelling = false;
    /// Number of true flags among {dots >= 5, length > 75, ip, misspelling}.
    int suspicious_count = 0;

    bool operator==(const UrlFeatureReport&) const = default;
};

inline constexpr std::size_t kSuspiciousDomainDots = 5;
inline constexpr std::size_t kSuspiciousUrlLength = 75;

/// Host part of `url`: text after "://" up to the first '/' (or end), port stripped.
/// Throws StructuralError when the scheme or host is missing.
std::string extract_domain(std::string_view url);

/// True for a dotted-quad IPv4 literal with octets in [0, 255].
bool is_dotted_quad(std::string_view host);

/// Optimal-string-alignment Damerau-Levenshtein distance (adjacent transpositions count 1).
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

/// True if some label of `domain` (TLD excluded, labels shorter than 4 skipped)
/// is within distance 1-2 of a brand while equal to none of them.
bool domain_has_misspelling(std::string_view domain, std::span<const std::string> brands);

UrlFeatureReport analyze_url(std::string_view url, std::span<const std::string> brands);

/// Shipped list of ~50 commonly impersonated service names (lowercase).
const std::vector<std::string>& default_brand_list();

}  // namespace phishembed
