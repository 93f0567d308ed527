#pragma once

#include "phishembed/corpus.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace phishembed {

struct TokenDoc {
    std::string doc_id;
    std::vector<std::string> tokens;

    bool operator==(const TokenDoc&) const = default;
};

struct StopwordList {
    std::string name;
    std::set<std::string, std::less<>> words;

    bool contains(std::string_view w) const { return words.find(w) != words.end(); }
};

/// Pinned English list shipped with the library ("english-v1").
const StopwordList& default_stopwords();

/// Replaces every http(s) URL and every e-mail address with a single space.
std::string strip_urls_and_emails(std::string_view text);

/// ASCII-lowercase, delete ASCII punctuation, split on whitespace, drop stopwords.
std::vector<std::string> tokenize_and_clean(std::string_view text, const StopwordList& stopwords);

/// Porter (1980) suffix stripper. Words that are not lowercase ASCII letters
/// come back unchanged.
std::string porter_stem(std::string_view word);

/// Which EmailSample fields feed the pipeline.
struct PreprocessOptions {
    bool include_subject = false;
};

/// strip_urls_and_emails -> tokenize_and_clean -> porter_stem per token.
TokenDoc preprocess(const EmailSample& sample, const StopwordList& stopwords,
                    const PreprocessOptions& options = {});

std::vector<TokenDoc> preprocess_corpus(const Corpus& corpus, const StopwordList& stopwords,
                                        const PreprocessOptions& options = {});

/// JSON Lines dump: {"doc_id": ..., "tokens": [...]}.
std::string serialize_token_docs(const std::vector<TokenDoc>& docs);

}  // namespace phishembed
