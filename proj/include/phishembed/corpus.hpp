#pragma once

#include "phishembed/url_features.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phishembed {

enum class Label { Legitimate = 0, Phishing = 1 };

std::string_view to_string(Label label);
/// Accepts only the lowercase wire names "phishing" and "legitimate".
std::optional<Label> parse_label(std::string_view text);

struct EmailSample {
    std::string id;
    std::string sender_address;
    std::string subject;
    std::string body_text;
    std::string url;
    Label label = Label::Legitimate;

    bool operator==(const EmailSample&) const = default;
};

inline constexpr std::size_t kMinBodyWords = 50;
inline constexpr std::size_t kMaxBodyWords = 100;
inline constexpr std::size_t kSamplesPerClass = 12;

struct Corpus {
    std::vector<EmailSample> samples;
    std::optional<std::uint64_t> seed;

    bool operator==(const Corpus&) const = default;
};

/// Maximal runs of non-whitespace characters.
std::size_t count_words(std::string_view text);

// Names of the per-sample rules reported by validate_sample.
inline constexpr std::string_view kRuleBodyWordCount = "body-word-count-50-100";
inline constexpr std::string_view kRuleBodyContainsUrl = "body-contains-url";
inline constexpr std::string_view kRuleMalformedUrl = "url-well-formed";
inline constexpr std::string_view kRuleLegitimateHttps = "legitimate-requires-https";
inline constexpr std::string_view kRulePhishingNoHttps = "phishing-forbids-https";
inline constexpr std::string_view kRulePhishingSuspicious = "phishing-requires-two-suspicious-features";

struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationResult validate_sample(const EmailSample& sample, std::span<const std::string> brands);

/// Corpus-level checks: unique ids and, in strict mode, a 12/12 split.
std::vector<std::string> validate_corpus_structure(const Corpus& corpus, bool strict);

/// One fill-in-the-blanks email. Text fields use {slot} placeholders and the
/// body must contain "{url}". Legitimate templates give a fixed https
/// `url_pattern` (which may use {campus_host}); phishing templates name the
/// impersonated `brand` and the generator builds a suspicious link for it.
struct EmailTemplate {
    std::string sender;
    std::string subject;
    std::string body;
    std::string url_pattern;
    std::string brand;
};

/// A university name together with the host its web services live on.
struct Campus {
    std::string name;
    std::string host;
};

/// Slot fillers. Legitimate templates draw on the targeted-messaging slots
/// ({name}, {city}, {university}); phishing templates must not.
struct TemplateBank {
    std::vector<EmailTemplate> legitimate;
    std::vector<EmailTemplate> phishing;
    std::vector<std::string> first_names;
    std::vector<std::string> cities;
    std::vector<Campus> campuses;
    std::vector<std::string> amounts;
    std::vector<std::string> days;
    std::vector<std::string> codes;
};

const TemplateBank& default_template_bank();

/// Slots that mark a body as targeted at the recipient.
const std::vector<std::string>& targeted_slots();

/// Builds 12 legitimate + 12 phishing samples that all pass validate_sample.
/// Deterministic in `seed`. Throws ConfigError if the bank is too small.
Corpus generate_corpus(std::uint64_t seed, const TemplateBank& bank = default_template_bank(),
                       std::span<const std::string> brands = default_brand_list());

/// JSON Lines, one sample per line.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct LoadedCorpus {
    Corpus corpus;
    std::vector<std::string> warnings;
};

/// Throws ParseError (with line number) on schema violations, IoError when unreadable.
/// A record count other than 24 in strict mode is a warning only.
LoadedCorpus load_corpus(const std::filesystem::path& path, bool strict = true);
LoadedCorpus parse_corpus(std::string_view jsonl, bool strict = true);
std::string serialize_corpus(const Corpus& corpus);

}  // namespace phishembed
