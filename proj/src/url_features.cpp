#include "phishembed/url_features.hpp"

#include "phishembed/errors.hpp"

#include <algorithm>
#include <cctype>

namespace phishembed {

namespace {

constexpr std::size_t kMinLabelLength = 4;

std::vector<std::string_view> split_labels(std::string_view domain) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (start <= domain.size()) {
        const std::size_t dot = domain.find('.', start);
        const std::size_t end = dot == std::string_view::npos ? domain.size() : dot;
        labels.push_back(domain.substr(start, end - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return labels;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string extract_domain(std::string_view url) {
    const std::size_t sep = url.find("://");
    if (sep == std::string_view::npos || sep == 0)
        throw StructuralError("malformed url: missing scheme in '" + std::string(url) + "'");
    for (std::size_t i = 0; i < sep; ++i) {
        const auto c = static_cast<unsigned char>(url[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.')
            throw StructuralError("malformed url: invalid scheme in '" + std::string(url) + "'");
    }
    std::string_view rest = url.substr(sep + 3);
    std::string_view host = rest.substr(0, rest.find('/'));
    if (const auto colon = host.find(':'); colon != std::string_view::npos) host = host.substr(0, colon);
    if (host.empty())
        throw StructuralError("malformed url: empty domain in '" + std::string(url) + "'");
    return std::string(host);
}

bool is_dotted_quad(std::string_view host) {
    const auto parts = split_labels(host);
    if (parts.size() != 4) return false;
    for (auto part : parts) {
        if (part.empty() || part.size() > 3) return false;
        int value = 0;
        for (char c : part) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            value = value * 10 + (c - '0');
        }
        if (value > 255) return false;
    }
    return true;
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
        }
    }
    return d[n][m];
}

bool domain_has_misspelling(std::string_view domain, std::span<const std::string> brands) {
    const std::string lowered = to_lower(domain);
    const auto labels = split_labels(lowered);
    if (labels.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
        const auto label = labels[i];
        if (label.size() < kMinLabelLength) continue;
        const bool exact = std::any_of(brands.begin(), brands.end(),
                                       [&](const std::string& b) { return b == label; });
        if (exact) continue;
        for (const auto& brand : brands) {
            if (brand.size() < kMinLabelLength) continue;
            const std::size_t dist = damerau_levenshtein(label, brand);
            if (dist >= 1 && dist <= 2) return true;
        }
    }
    return false;
}

UrlFeatureReport analyze_url(std::string_view url, std::span<const std::string> brands) {
    if (url.empty()) throw StructuralError("malformed url: empty string");
    const std::string domain = extract_domain(url);

    UrlFeatureReport r;
    r.has_https = url.starts_with("https://");
    r.domain_dot_count = static_cast<std::size_t>(std::count(domain.begin(), domain.end(), '.'));
    r.url_length = url.size();
    r.contains_ip = is_dotted_quad(domain);
    r.contains_misspelling = !r.contains_ip && domain_has_misspelling(domain, brands);
    r.suspicious_count = int{r.domain_dot_count >= kSuspiciousDomainDots} +
                         int{r.url_length > kSuspiciousUrlLength} + int{r.contains_ip} +
                         int{r.contains_misspelling};
    return r;
}

const std::vector<std::string>& default_brand_list() {
    static const std::vector<std::string> brands = {
        "paypal",    "google",     "amazon",     "apple",          "microsoft",
        "netflix",   "spotify",    "facebook",   "instagram",      "twitter",
        "linkedin",  "dropbox",    "ebay",       "chase",          "wellsfargo",
        "bankofamerica", "citibank", "capitalone", "americanexpress", "discover",
        "outlook",   "office365",  "yahoo",      "gmail",          "icloud",
        "adobe",     "docusign",   "fedex",      "usps",           "walmart",
        "bestbuy",   "costco",     "venmo",      "zelle",          "coinbase",
        "binance",   "discord",    "zoom",       "slack",          "github",
        "whatsapp",  "telegram",   "skype",      "hulu",           "disneyplus",
        "airbnb",    "doordash",   "grubhub",    "verizon",        "xfinity",
    };
    return brands;
}

}  // namespace phishembed
