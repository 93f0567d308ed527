#include "phishembed/corpus.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace phishembed {

std::string_view to_string(Label label) {
    return label == Label::Phishing ? "phishing" : "legitimate";
}

std::optional<Label> parse_label(std::string_view text) {
    if (text == "phishing") return Label::Phishing;
    if (text == "legitimate") return Label::Legitimate;
    return std::nullopt;
}

std::size_t count_words(std::string_view text) {
    std::size_t words = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

ValidationResult validate_sample(const EmailSample& sample, std::span<const std::string> brands) {
    ValidationResult result;
    auto fail = [&](std::string_view rule) { result.violations.emplace_back(rule); };

    const std::size_t words = count_words(sample.body_text);
    if (words < kMinBodyWords || words > kMaxBodyWords) fail(kRuleBodyWordCount);
    if (sample.url.empty() || sample.body_text.find(sample.url) == std::string::npos)
        fail(kRuleBodyContainsUrl);

    std::optional<UrlFeatureReport> report;
    try {
        report = analyze_url(sample.url, brands);
    } catch (const StructuralError&) {
        fail(kRuleMalformedUrl);
    }

    const bool https = sample.url.starts_with("https://");
    if (sample.label == Label::Legitimate) {
        if (!https) fail(kRuleLegitimateHttps);
    } else {
        if (https) fail(kRulePhishingNoHttps);
        if (!report || report->suspicious_count < 2) fail(kRulePhishingSuspicious);
    }
    return result;
}

std::vector<std::string> validate_corpus_structure(const Corpus& corpus, bool strict) {
    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& s : corpus.samples)
        if (!seen.insert(s.id).second) problems.push_back("duplicate id '" + s.id + "'");
    if (strict) {
        const auto phishing = std::count_if(corpus.samples.begin(), corpus.samples.end(),
                                            [](const EmailSample& s) { return s.label == Label::Phishing; });
        const auto legitimate = static_cast<std::ptrdiff_t>(corpus.samples.size()) - phishing;
        if (phishing != static_cast<std::ptrdiff_t>(kSamplesPerClass) ||
            legitimate != static_cast<std::ptrdiff_t>(kSamplesPerClass)) {
            problems.push_back("expected 12 phishing and 12 legitimate samples, found " +
                               std::to_string(phishing) + " and " + std::to_string(legitimate));
        }
    }
    return problems;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

constexpr int kMaxAttemptsPerSample = 64;

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
    return items[static_cast<std::size_t>(uniform_index(rng, items.size()))];
}

std::string slugify(std::string_view text) {
    std::string out;
    for (char c : text)
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::string random_token(Rng& rng, std::size_t length) {
    static constexpr std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string out;
    for (std::size_t i = 0; i < length; ++i) out.push_back(alphabet[uniform_index(rng, alphabet.size())]);
    return out;
}

std::string random_ip(Rng& rng) {
    std::ostringstream os;
    os << (11 + uniform_index(rng, 200)) << '.' << uniform_index(rng, 256) << '.'
       << uniform_index(rng, 256) << '.' << (1 + uniform_index(rng, 254));
    return os.str();
}

/// Single-edit variant of `brand` that is not itself a brand.
std::string misspell(const std::string& brand, std::span<const std::string> brands, Rng& rng) {
    static constexpr std::string_view vowels = "aeiou";
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::string m = brand;
        const std::size_t pos = static_cast<std::size_t>(uniform_index(rng, m.size()));
        switch (uniform_index(rng, 4)) {
            case 0:  // doubled letter, e.g. spottify
                m.insert(pos, 1, m[pos]);
                break;
            case 1:  // swapped neighbours
                if (pos + 1 < m.size()) std::swap(m[pos], m[pos + 1]);
                break;
            case 2: {  // look-alike substitution
                const char c = m[pos];
                if (c == 'l' || c == 'i') m[pos] = '1';
                else if (c == 'o') m[pos] = '0';
                else if (c == 'e') m[pos] = '3';
                else m[pos] = vowels[uniform_index(rng, vowels.size())];
                break;
            }
            default:  // dropped letter
                if (m.size() > 4) m.erase(pos, 1);
                break;
        }
        if (m == brand) continue;
        if (std::find(brands.begin(), brands.end(), m) != brands.end()) continue;
        return m;
    }
    return brand + brand.back();
}

std::string pad_to_length(std::string url, std::size_t target, Rng& rng) {
    if (url.size() < target) url += random_token(rng, target - url.size());
    return url;
}

/// Non-https link with at least two red flags for `brand`.
std::string suspicious_url(const std::string& brand, std::span<const std::string> brands, Rng& rng) {
    const std::size_t long_target = 78 + static_cast<std::size_t>(uniform_index(rng, 18));
    const std::string slug = slugify(brand);
    switch (uniform_index(rng, 5)) {
        case 0:  // IP host + long
            return pad_to_length("http://" + random_ip(rng) + "/" + slug + "/account/verify/session?id=",
                                 long_target, rng);
        case 1:  // many dots + misspelling
            return "http://" + misspell(slug, brands, rng) + ".com.account-security.verify.login.update.info/signin";
        case 2:  // misspelling + long
            return pad_to_length("http://www." + misspell(slug, brands, rng) +
                                     ".com/account/security/confirm/identity?session=",
                                 long_target, rng);
        case 3:  // many dots + long
            return pad_to_length("http://" + slug + ".secure.account.verify.session.support-center.com/login?ref=",
                                 long_target, rng);
        default:  // IP host with port + misspelled path + long
            return pad_to_length("http://" + random_ip(rng) + ":8080/" + misspell(slug, brands, rng) +
                                     "/login.php?session=",
                                 long_target, rng);
    }
}

struct SlotValues {
    std::string name;
    std::string city;
    Campus campus;
    std::string amount;
    std::string day;
    std::string code;
    std::string url;
};

std::string fill(std::string_view text, const SlotValues& v) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '{') {
            out.push_back(text[i++]);
            continue;
        }
        const std::size_t close = text.find('}', i);
        if (close == std::string_view::npos) throw ConfigError("unterminated slot in template");
        const std::string_view slot = text.substr(i + 1, close - i - 1);
        if (slot == "name") out += v.name;
        else if (slot == "city") out += v.city;
        else if (slot == "city_slug") out += slugify(v.city);
        else if (slot == "university") out += v.campus.name;
        else if (slot == "campus_host") out += v.campus.host;
        else if (slot == "amount") out += v.amount;
        else if (slot == "day") out += v.day;
        else if (slot == "code") out += v.code;
        else if (slot == "url") out += v.url;
        else throw ConfigError("unknown template slot {" + std::string(slot) + "}");
        i = close + 1;
    }
    return out;
}

void check_bank(const TemplateBank& bank) {
    if (bank.legitimate.size() < kSamplesPerClass || bank.phishing.size() < kSamplesPerClass)
        throw ConfigError("template bank needs at least 12 legitimate and 12 phishing templates, has " +
                          std::to_string(bank.legitimate.size()) + " and " +
                          std::to_string(bank.phishing.size()));
    if (bank.first_names.empty() || bank.cities.empty() || bank.campuses.empty() ||
        bank.amounts.empty() || bank.days.empty() || bank.codes.empty())
        throw ConfigError("template bank is missing slot fillers");
    for (const auto& t : bank.phishing) {
        if (t.brand.empty()) throw ConfigError("phishing template without a brand");
        for (const auto& slot : targeted_slots())
            if (t.body.find(slot) != std::string::npos)
                throw ConfigError("phishing template uses targeted slot " + slot);
    }
    for (const auto& t : bank.legitimate)
        if (!t.url_pattern.starts_with("https://"))
            throw ConfigError("legitimate template url must start with https://");
}

}  // namespace

Corpus generate_corpus(std::uint64_t seed, const TemplateBank& bank, std::span<const std::string> brands) {
    check_bank(bank);
    Rng rng(seed);

    // One fictional recipient per corpus.
    SlotValues recipient;
    recipient.name = pick(bank.first_names, rng);
    recipient.city = pick(bank.cities, rng);
    recipient.campus = pick(bank.campuses, rng);

    auto choose = [&](std::size_t available) {
        std::vector<std::size_t> order(available);
        for (std::size_t i = 0; i < available; ++i) order[i] = i;
        shuffle_in_place(order, rng);
        order.resize(kSamplesPerClass);
        return order;
    };
    const auto phishing_picks = choose(bank.phishing.size());
    const auto legitimate_picks = choose(bank.legitimate.size());

    Corpus corpus;
    corpus.seed = seed;

    auto render = [&](const EmailTemplate& t, Label label, std::string id) {
        for (int attempt = 0; attempt < kMaxAttemptsPerSample; ++attempt) {
            SlotValues v = recipient;
            v.amount = pick(bank.amounts, rng);
            v.day = pick(bank.days, rng);
            v.code = pick(bank.codes, rng);
            v.url = label == Label::Phishing ? suspicious_url(t.brand, brands, rng) : fill(t.url_pattern, v);

            EmailSample s;
            s.id = id;
            s.label = label;
            s.url = v.url;
            s.sender_address = fill(t.sender, v);
            s.subject = fill(t.subject, v);
            s.body_text = fill(t.body, v);
            if (validate_sample(s, brands).ok()) return s;
        }
        throw ConfigError("template for sample " + id + " cannot satisfy the corpus rules");
    };

    auto make_id = [](char prefix, std::size_t i) {
        std::string id(1, prefix);
        if (i + 1 < 10) id += '0';
        return id + std::to_string(i + 1);
    };
    for (std::size_t i = 0; i < phishing_picks.size(); ++i)
        corpus.samples.push_back(render(bank.phishing[phishing_picks[i]], Label::Phishing, make_id('p', i)));
    for (std::size_t i = 0; i < legitimate_picks.size(); ++i)
        corpus.samples.push_back(render(bank.legitimate[legitimate_picks[i]], Label::Legitimate, make_id('l', i)));
    return corpus;
}

// ---------------------------------------------------------------------------
// JSON Lines persistence

std::string serialize_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& s : corpus.samples) {
        nlohmann::ordered_json j;
        j["id"] = s.id;
        j["sender_address"] = s.sender_address;
        j["subject"] = s.subject;
        j["body_text"] = s.body_text;
        j["url"] = s.url;
        j["label"] = to_string(s.label);
        out += j.dump();
        out += '\n';
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << serialize_corpus(corpus);
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

LoadedCorpus parse_corpus(std::string_view jsonl, bool strict) {
    LoadedCorpus loaded;
    std::set<std::string> ids;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < jsonl.size()) {
        std::size_t end = jsonl.find('\n', start);
        if (end == std::string_view::npos) end = jsonl.size();
        std::string_view line = jsonl.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!j.is_object()) throw ParseError("record is not a JSON object", line_no);

        auto field = [&](const char* name) -> std::string {
            const auto it = j.find(name);
            if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'", line_no);
            if (!it->is_string()) throw ParseError(std::string("field '") + name + "' must be a string", line_no);
            return it->get<std::string>();
        };
        EmailSample s;
        s.id = field("id");
        s.sender_address = field("sender_address");
        s.subject = field("subject");
        s.body_text = field("body_text");
        s.url = field("url");
        const std::string label = field("label");
        const auto parsed = parse_label(label);
        if (!parsed)
            throw ParseError("field 'label' must be \"phishing\" or \"legitimate\", got \"" + label + "\"", line_no);
        s.label = *parsed;
        if (s.id.empty()) throw ParseError("field 'id' is empty", line_no);
        if (!ids.insert(s.id).second) throw ParseError("duplicate id '" + s.id + "'", line_no);
        loaded.corpus.samples.push_back(std::move(s));
    }
    if (strict) {
        for (auto& problem : validate_corpus_structure(loaded.corpus, true))
            loaded.warnings.push_back("count mismatch: " + problem);
    }
    return loaded;
}

LoadedCorpus load_corpus(const std::filesystem::path& path, bool strict) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_corpus(buf.str(), strict);
}

}  // namespace phishembed
