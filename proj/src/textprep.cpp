#include "phishembed/textprep.hpp"

#include <json.hpp>

#include <cctype>

namespace phishembed {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_ascii_punct(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > text.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (ascii_lower(text[pos + i]) != prefix[i]) return false;
    return true;
}

// Offset of the first "http://" or "https://" inside the token, or npos.
std::size_t find_url_start(std::string_view token) {
    for (std::size_t i = 0; i < token.size(); ++i)
        if (starts_with_ci(token, i, "http://") || starts_with_ci(token, i, "https://")) return i;
    return std::string_view::npos;
}

bool is_email_token(std::string_view token) {
    const std::size_t at = token.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 >= token.size()) return false;
    const std::string_view domain = token.substr(at + 1);
    const std::size_t dot = domain.find('.');
    // A dot strictly inside the domain part.
    return dot != std::string_view::npos && dot > 0 && dot + 1 < domain.size();
}

}  // namespace

std::string strip_urls_and_emails(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        const std::string_view token = text.substr(i, end - i);

        if (is_email_token(token) && find_url_start(token) == std::string_view::npos) {
            out.push_back(' ');
        } else if (const std::size_t url = find_url_start(token); url != std::string_view::npos) {
            out.append(token.substr(0, url));
            out.push_back(' ');
        } else {
            out.append(token);
        }
        i = end;
    }
    return out;
}

std::vector<std::string> tokenize_and_clean(std::string_view text, const StopwordList& stopwords) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty() && !stopwords.contains(current)) tokens.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if (is_space(c)) {
            flush();
        } else if (!is_ascii_punct(c)) {
            current.push_back(ascii_lower(c));
        }
    }
    flush();
    return tokens;
}

TokenDoc preprocess(const EmailSample& sample, const StopwordList& stopwords, const PreprocessOptions& options) {
    std::string text = sample.body_text;
    if (options.include_subject) text = sample.subject + "\n" + text;

    TokenDoc doc;
    doc.doc_id = sample.id;
    for (auto& token : tokenize_and_clean(strip_urls_and_emails(text), stopwords))
        doc.tokens.push_back(porter_stem(token));
    return doc;
}

std::vector<TokenDoc> preprocess_corpus(const Corpus& corpus, const StopwordList& stopwords,
                                        const PreprocessOptions& options) {
    std::vector<TokenDoc> docs;
    docs.reserve(corpus.samples.size());
    for (const auto& s : corpus.samples) docs.push_back(preprocess(s, stopwords, options));
    return docs;
}

std::string serialize_token_docs(const std::vector<TokenDoc>& docs) {
    std::string out;
    for (const auto& d : docs) {
        nlohmann::ordered_json j;
        j["doc_id"] = d.doc_id;
        j["tokens"] = d.tokens;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace phishembed
