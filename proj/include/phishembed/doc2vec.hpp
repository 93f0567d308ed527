#pragma once

#include "phishembed/corpus.hpp"
#include "phishembed/linalg.hpp"
#include "phishembed/textprep.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace phishembed {

struct Vocabulary {
    std::vector<std::string> words;  // index -> token
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, std::size_t> index;
    std::size_t min_count = 1;

    std::size_t size() const noexcept { return words.size(); }
    std::optional<std::size_t> find(const std::string& token) const;
};

/// Keeps tokens seen at least `min_count` times; index 0 is the most frequent,
/// ties broken lexicographically. Throws ConfigError if nothing survives.
Vocabulary build_vocab(const std::vector<TokenDoc>& docs, std::size_t min_count);

struct Doc2VecConfig {
    std::size_t dim = 20;
    std::size_t window = 3;
    std::size_t epochs = 200;
    std::size_t negative_samples = 5;
    double initial_learning_rate = 0.025;
    double min_learning_rate = 0.0005;
    std::size_t min_count = 1;
    std::uint64_t seed = 7;

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// PV-DM parameters. Rows of `word_vectors`/`output_weights` follow vocab order,
/// rows of `doc_vectors` follow `doc_ids`.
struct Doc2VecModel {
    Doc2VecConfig config;
    Vocabulary vocab;
    Matrix word_vectors;
    Matrix doc_vectors;
    Matrix output_weights;
    std::vector<std::string> doc_ids;
    /// Mean negative-sampling loss per epoch.
    std::vector<double> epoch_losses;

    std::optional<std::size_t> doc_index(const std::string& doc_id) const;
};

/// Deterministic single-threaded PV-DM training with negative sampling.
Doc2VecModel train_doc2vec(const std::vector<TokenDoc>& docs, const Doc2VecConfig& config);

/// Fits a fresh document vector for `doc` against frozen word/output weights.
/// Throws ConfigError("no trainable tokens") if every token is out of vocabulary.
std::vector<double> infer_vector(const Doc2VecModel& model, const TokenDoc& doc, std::size_t steps,
                                 std::uint64_t seed);

struct EmbeddingMatrix {
    std::vector<std::string> doc_ids;
    Matrix vectors;
    std::vector<Label> labels;
};

/// Document vectors in training order with labels attached. Throws ConfigError
/// naming the first doc id missing from `labels`.
EmbeddingMatrix doc_embeddings(const Doc2VecModel& model, const std::map<std::string, Label>& labels);

void save_doc2vec(const Doc2VecModel& model, const std::filesystem::path& path);
Doc2VecModel load_doc2vec(const std::filesystem::path& path);

}  // namespace phishembed
