#include "phishembed/doc2vec.hpp"

#include "phishembed/errors.hpp"
#include "phishembed/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace phishembed {

std::optional<std::size_t> Vocabulary::find(const std::string& token) const {
    const auto it = index.find(token);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Doc2VecModel::doc_index(const std::string& doc_id) const {
    const auto it = std::find(doc_ids.begin(), doc_ids.end(), doc_id);
    if (it == doc_ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - doc_ids.begin());
}

Vocabulary build_vocab(const std::vector<TokenDoc>& docs, std::size_t min_count) {
    if (docs.empty()) throw ConfigError("build_vocab: no documents");
    std::map<std::string, std::uint64_t> freq;
    for (const auto& d : docs)
        for (const auto& t : d.tokens) ++freq[t];

    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [word, count] : freq)
        if (count >= min_count) kept.emplace_back(word, count);
    if (kept.empty())
        throw ConfigError("vocabulary is empty with min_count=" + std::to_string(min_count) +
                          "; lower min_count");
    // freq is already lexicographic, so a stable sort by count keeps that as the tie-break.
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    Vocabulary vocab;
    vocab.min_count = min_count;
    for (auto& [word, count] : kept) {
        vocab.index.emplace(word, vocab.words.size());
        vocab.words.push_back(word);
        vocab.counts.push_back(count);
    }
    return vocab;
}

void Doc2VecConfig::validate() const {
    if (dim < 1) throw ConfigError("doc2vec dim must be >= 1");
    if (window < 1) throw ConfigError("doc2vec window must be >= 1");
    if (epochs < 1) throw ConfigError("doc2vec epochs must be >= 1");
    if (negative_samples < 1) throw ConfigError("doc2vec negative_samples must be >= 1");
    if (!(min_learning_rate > 0.0) || !(min_learning_rate <= initial_learning_rate))
        throw ConfigError("doc2vec learning rates must satisfy 0 < min <= initial");
}

namespace {

double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// Draws from the unigram distribution raised to the 3/4 power.
class NoiseSampler {
public:
    explicit NoiseSampler(const Vocabulary& vocab) {
        cumulative_.reserve(vocab.size());
        double total = 0.0;
        for (auto c : vocab.counts) {
            total += std::pow(static_cast<double>(c), 0.75);
            cumulative_.push_back(total);
        }
    }

    std::size_t draw(Rng& rng) const {
        const double u = uniform_unit(rng) * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

    std::size_t size() const { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

double learning_rate_at(const Doc2VecConfig& c, std::size_t epoch, std::size_t epochs) {
    if (epochs <= 1) return c.initial_learning_rate;
    const double progress = static_cast<double>(epoch) / static_cast<double>(epochs - 1);
    return c.initial_learning_rate + (c.min_learning_rate - c.initial_learning_rate) * progress;
}

std::vector<std::size_t> in_vocab_indices(const Vocabulary& vocab, const TokenDoc& doc) {
    std::vector<std::size_t> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens)
        if (auto i = vocab.find(t)) ids.push_back(*i);
    return ids;
}

void init_uniform(Matrix& m, Rng& rng) {
    const double half = 0.5 / static_cast<double>(m.cols());
    for (double& x : m.data()) x = uniform_real(rng, -half, half);
}

/// Scratch buffers for one PV-DM update.
struct Workspace {
    std::vector<double> hidden;
    std::vector<double> grad;
    std::vector<std::size_t> context;
};

/// Parameters touched by a PV-DM step. Null `trainable_*` pointers freeze
/// the corresponding matrix (inference mode).
struct StepParams {
    const Matrix& word_vectors;
    const Matrix& output_weights;
    Matrix* trainable_words = nullptr;
    Matrix* trainable_output = nullptr;
};

// One PV-DM step for the target at `pos`. Returns the negative-sampling loss.
double pvdm_step(std::span<double> doc_vec, const StepParams& p, std::span<const std::size_t> words,
                 std::size_t pos, std::size_t window, std::size_t negatives, const NoiseSampler& noise,
                 double lr, Rng& rng, Workspace& ws) {
    const std::size_t dim = doc_vec.size();
    ws.context.clear();
    const std::size_t lo = pos >= window ? pos - window : 0;
    const std::size_t hi = std::min(words.size() - 1, pos + window);
    for (std::size_t c = lo; c <= hi; ++c)
        if (c != pos) ws.context.push_back(words[c]);

    const double inv_count = 1.0 / static_cast<double>(1 + ws.context.size());
    ws.hidden.assign(doc_vec.begin(), doc_vec.end());
    for (auto w : ws.context) {
        auto v = p.word_vectors.row(w);
        for (std::size_t k = 0; k < dim; ++k) ws.hidden[k] += v[k];
    }
    for (double& h : ws.hidden) h *= inv_count;
    ws.grad.assign(dim, 0.0);

    const std::size_t target = words[pos];
    double loss = 0.0;
    for (std::size_t s = 0; s <= negatives; ++s) {
        std::size_t out;
        double label;
        if (s == 0) {
            out = target;
            label = 1.0;
        } else {
            if (noise.size() < 2) break;
            do {
                out = noise.draw(rng);
            } while (out == target);
            label = 0.0;
        }
        auto u = p.output_weights.row(out);
        const double f = dot(u, ws.hidden);
        loss -= label > 0.0 ? log_sigmoid(f) : log_sigmoid(-f);
        const double g = (label - sigmoid(f)) * lr;
        for (std::size_t k = 0; k < dim; ++k) ws.grad[k] += g * u[k];
        if (p.trainable_output) {
            auto target_row = p.trainable_output->row(out);
            for (std::size_t k = 0; k < dim; ++k) target_row[k] += g * ws.hidden[k];
        }
    }

    // The hidden layer is a mean, so each input receives grad / count.
    for (std::size_t k = 0; k < dim; ++k) doc_vec[k] += ws.grad[k] * inv_count;
    if (p.trainable_words) {
        for (auto w : ws.context) {
            auto v = p.trainable_words->row(w);
            for (std::size_t k = 0; k < dim; ++k) v[k] += ws.grad[k] * inv_count;
        }
    }
    return loss;
}

bool all_finite(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Doc2VecModel train_doc2vec(const std::vector<TokenDoc>& docs, const Doc2VecConfig& config) {
    config.validate();
    if (docs.empty()) throw ConfigError("train_doc2vec: no documents");

    Doc2VecModel model;
    model.config = config;
    model.vocab = build_vocab(docs, config.min_count);
    for (const auto& d : docs) model.doc_ids.push_back(d.doc_id);

    Rng rng(config.seed);
    model.word_vectors = Matrix(model.vocab.size(), config.dim);
    model.doc_vectors = Matrix(docs.size(), config.dim);
    model.output_weights = Matrix(model.vocab.size(), config.dim);
    init_uniform(model.word_vectors, rng);
    init_uniform(model.doc_vectors, rng);

    std::vector<std::vector<std::size_t>> encoded;
    encoded.reserve(docs.size());
    for (const auto& d : docs) encoded.push_back(in_vocab_indices(model.vocab, d));

    const NoiseSampler noise(model.vocab);
    const StepParams params{model.word_vectors, model.output_weights, &model.word_vectors, &model.output_weights};
    Workspace ws;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const double lr = learning_rate_at(config, epoch, config.epochs);
        double loss = 0.0;
        std::size_t examples = 0;
        for (std::size_t d = 0; d < encoded.size(); ++d) {
            const auto& words = encoded[d];
            for (std::size_t pos = 0; pos < words.size(); ++pos) {
                loss += pvdm_step(model.doc_vectors.row(d), params, words, pos, config.window,
                                  config.negative_samples, noise, lr, rng, ws);
                ++examples;
            }
        }
        const double mean = examples ? loss / static_cast<double>(examples) : 0.0;
        if (!std::isfinite(mean) || !all_finite(model.word_vectors) || !all_finite(model.doc_vectors) ||
            !all_finite(model.output_weights))
            throw NumericError("doc2vec training diverged in epoch " + std::to_string(epoch + 1));
        model.epoch_losses.push_back(mean);
    }
    return model;
}

std::vector<double> infer_vector(const Doc2VecModel& model, const TokenDoc& doc, std::size_t steps,
                                 std::uint64_t seed) {
    if (steps < 1) throw ConfigError("infer_vector: steps must be >= 1");
    const auto words = in_vocab_indices(model.vocab, doc);
    if (words.empty()) throw ConfigError("no trainable tokens in document '" + doc.doc_id + "'");

    const std::size_t dim = model.config.dim;
    Rng rng(seed);
    Matrix vec(1, dim);
    init_uniform(vec, rng);

    const StepParams frozen{model.word_vectors, model.output_weights};
    const NoiseSampler noise(model.vocab);
    Workspace ws;
    for (std::size_t step = 0; step < steps; ++step) {
        const double lr = learning_rate_at(model.config, step, steps);
        for (std::size_t pos = 0; pos < words.size(); ++pos)
            pvdm_step(vec.row(0), frozen, words, pos, model.config.window, model.config.negative_samples,
                      noise, lr, rng, ws);
    }
    return {vec.data().begin(), vec.data().end()};
}

EmbeddingMatrix doc_embeddings(const Doc2VecModel& model, const std::map<std::string, Label>& labels) {
    EmbeddingMatrix out;
    out.doc_ids = model.doc_ids;
    out.vectors = model.doc_vectors;
    for (const auto& id : model.doc_ids) {
        const auto it = labels.find(id);
        if (it == labels.end()) throw ConfigError("no label for document '" + id + "'");
        out.labels.push_back(it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t cols) {
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto row = j.at(r).get<std::vector<double>>();
        if (row.size() != cols) throw DimensionError("stored matrix row has wrong width");
        std::copy(row.begin(), row.end(), m.row(r).begin());
    }
    return m;
}

}  // namespace

void save_doc2vec(const Doc2VecModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    const auto& c = model.config;
    j["format"] = "phishembed-doc2vec-v1";
    j["config"] = {{"dim", c.dim},
                   {"window", c.window},
                   {"epochs", c.epochs},
                   {"negative_samples", c.negative_samples},
                   {"initial_learning_rate", c.initial_learning_rate},
                   {"min_learning_rate", c.min_learning_rate},
                   {"min_count", c.min_count},
                   {"seed", c.seed}};
    j["vocab"] = {{"words", model.vocab.words}, {"counts", model.vocab.counts}, {"min_count", model.vocab.min_count}};
    j["doc_ids"] = model.doc_ids;
    j["epoch_losses"] = model.epoch_losses;
    j["word_vectors"] = matrix_to_json(model.word_vectors);
    j["doc_vectors"] = matrix_to_json(model.doc_vectors);
    j["output_weights"] = matrix_to_json(model.output_weights);

    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << j.dump() << '\n';
}

Doc2VecModel load_doc2vec(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid doc2vec model: ") + e.what(), 1);
    }
    try {
        Doc2VecModel m;
        const auto& c = j.at("config");
        m.config.dim = c.at("dim");
        m.config.window = c.at("window");
        m.config.epochs = c.at("epochs");
        m.config.negative_samples = c.at("negative_samples");
        m.config.initial_learning_rate = c.at("initial_learning_rate");
        m.config.min_learning_rate = c.at("min_learning_rate");
        m.config.min_count = c.at("min_count");
        m.config.seed = c.at("seed");
        m.vocab.words = j.at("vocab").at("words").get<std::vector<std::string>>();
        m.vocab.counts = j.at("vocab").at("counts").get<std::vector<std::uint64_t>>();
        m.vocab.min_count = j.at("vocab").at("min_count");
        for (std::size_t i = 0; i < m.vocab.words.size(); ++i) m.vocab.index.emplace(m.vocab.words[i], i);
        m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
        m.epoch_losses = j.at("epoch_losses").get<std::vector<double>>();
        m.word_vectors = matrix_from_json(j.at("word_vectors"), m.config.dim);
        m.doc_vectors = matrix_from_json(j.at("doc_vectors"), m.config.dim);
        m.output_weights = matrix_from_json(j.at("output_weights"), m.config.dim);
        if (m.word_vectors.rows() != m.vocab.size() || m.output_weights.rows() != m.vocab.size() ||
            m.doc_vectors.rows() != m.doc_ids.size())
            throw DimensionError("doc2vec model matrices do not match vocabulary/document counts");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid doc2vec model: ") + e.what(), 1);
    }
}

}  // namespace phishembed
