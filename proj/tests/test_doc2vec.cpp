#include "phishembed/doc2vec.hpp"
#include "phishembed/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

using namespace phishembed;

namespace {

std::vector<TokenDoc> corpus_docs(std::uint64_t seed) {
    return preprocess_corpus(generate_corpus(seed), default_stopwords());
}

std::map<std::string, Label> labels_of(const Corpus& c) {
    std::map<std::string, Label> out;
    for (const auto& s : c.samples) out[s.id] = s.label;
    return out;
}

bool all_finite(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

TEST_SUITE("doc2vec") {

TEST_CASE("vocabulary threshold and ordering") {
    const auto v = build_vocab({{"d", {"a", "a", "b"}}}, 2);
    CHECK(v.words == std::vector<std::string>{"a"});

    const auto w = build_vocab({{"d1", {"a", "b"}}, {"d2", {"b", "c"}}}, 1);
    CHECK(w.size() == 3);
    CHECK(w.find("b") == 0u);
    CHECK(w.find("a") == 1u);
    CHECK(w.find("c") == 2u);
    CHECK_FALSE(w.find("z").has_value());
    CHECK_THROWS_AS(build_vocab({{"d", {"a", "b"}}}, 10), ConfigError);
}

TEST_CASE("vocabulary indexes are a bijection") {
    const auto v = build_vocab(corpus_docs(7), 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v.find(v.words[i]) == i);
        CHECK(v.counts[i] >= 1);
        if (i > 0) CHECK(v.counts[i - 1] >= v.counts[i]);
    }
    CHECK(v.index.size() == v.size());
}

TEST_CASE("config validation") {
    Doc2VecConfig c;
    CHECK_NOTHROW(c.validate());
    c.dim = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.min_learning_rate = 0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.negative_samples = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("training shapes, finiteness and falling loss") {
    const auto corpus = generate_corpus(7);
    const auto docs = preprocess_corpus(corpus, default_stopwords());
    Doc2VecConfig cfg;
    const auto m = train_doc2vec(docs, cfg);
    CHECK(m.doc_vectors.rows() == 24);
    CHECK(m.doc_vectors.cols() == 20);
    CHECK(m.word_vectors.rows() == m.vocab.size());
    CHECK(m.output_weights.rows() == m.vocab.size());
    CHECK(all_finite(m.doc_vectors));
    CHECK(all_finite(m.word_vectors));
    CHECK(all_finite(m.output_weights));
    REQUIRE(m.epoch_losses.size() == cfg.epochs);
    for (double l : m.epoch_losses) CHECK(std::isfinite(l));
    CHECK(m.epoch_losses.back() < m.epoch_losses.front());
    CHECK(m.epoch_losses[1] < m.epoch_losses[0]);
}

TEST_CASE("first epoch starts from the zero-output-layer loss") {
    // With zero output weights every score is 0, so each positive and negative
    // term costs log 2 at the very first step. One epoch on a single short
    // document barely moves the output layer, so the epoch mean stays close.
    Doc2VecConfig cfg;
    cfg.epochs = 1;
    cfg.initial_learning_rate = cfg.min_learning_rate = 1e-6;
    const auto m = train_doc2vec({{"d", {"a", "b", "c", "d"}}}, cfg);
    CHECK(m.epoch_losses[0] == doctest::Approx((1.0 + cfg.negative_samples) * std::log(2.0)).epsilon(1e-4));
}

TEST_CASE("training is deterministic") {
    const auto docs = corpus_docs(7);
    Doc2VecConfig cfg;
    cfg.epochs = 30;
    const auto a = train_doc2vec(docs, cfg);
    const auto b = train_doc2vec(docs, cfg);
    CHECK(a.doc_vectors == b.doc_vectors);
    CHECK(a.word_vectors == b.word_vectors);
    cfg.seed = 8;
    CHECK_FALSE(train_doc2vec(docs, cfg).doc_vectors == a.doc_vectors);
}

TEST_CASE("duplicated documents end as mutual nearest neighbours") {
    auto docs = corpus_docs(7);
    TokenDoc dup = docs[3];
    dup.doc_id = "dup";
    docs.push_back(dup);
    const std::size_t a = 3, b = docs.size() - 1;
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Doc2VecConfig cfg;
        cfg.seed = seed;
        const auto m = train_doc2vec(docs, cfg);
        auto nearest = [&](std::size_t i) {
            std::size_t best = i;
            double best_sim = -2.0;
            for (std::size_t j = 0; j < docs.size(); ++j) {
                if (j == i) continue;
                const double s = cosine_similarity(m.doc_vectors.row(i), m.doc_vectors.row(j));
                if (s > best_sim) {
                    best_sim = s;
                    best = j;
                }
            }
            return best;
        };
        hits += nearest(a) == b && nearest(b) == a;
    }
    CHECK(hits >= 18);
}

TEST_CASE("embeddings carry labels in training order") {
    const auto corpus = generate_corpus(7);
    const auto docs = preprocess_corpus(corpus, default_stopwords());
    Doc2VecConfig cfg;
    cfg.epochs = 20;
    const auto m = train_doc2vec(docs, cfg);
    const auto e = doc_embeddings(m, labels_of(corpus));
    CHECK(e.vectors.rows() == 24);
    CHECK(e.vectors.cols() == 20);
    CHECK(e.doc_ids == m.doc_ids);
    const auto idx = m.doc_index("p03");
    REQUIRE(idx.has_value());
    const auto row = e.vectors.row(*idx);
    const auto stored = m.doc_vectors.row(*idx);
    CHECK(std::equal(row.begin(), row.end(), stored.begin()));
    CHECK(e.labels[*idx] == Label::Phishing);

    auto partial = labels_of(corpus);
    partial.erase("l05");
    try {
        doc_embeddings(m, partial);
        FAIL("expected an error");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("l05") != std::string::npos);
    }
}

TEST_CASE("inference") {
    const auto docs = corpus_docs(7);
    const auto m = train_doc2vec(docs, Doc2VecConfig{});
    const auto v1 = infer_vector(m, docs[5], 200, 11);
    const auto v2 = infer_vector(m, docs[5], 200, 11);
    CHECK(v1 == v2);
    CHECK(v1.size() == 20);

    // The inferred vector sits closer to its own trained vector than the median document does.
    std::vector<double> sims;
    double own = 0.0;
    for (std::size_t j = 0; j < docs.size(); ++j) {
        const double s = cosine_similarity(v1, m.doc_vectors.row(j));
        if (j == 5) own = s;
        else sims.push_back(s);
    }
    std::sort(sims.begin(), sims.end());
    const double median = 0.5 * (sims[sims.size() / 2 - 1] + sims[sims.size() / 2]);
    CHECK(own > median);

    CHECK_THROWS_WITH_AS(infer_vector(m, {"x", {"zzzzqq", "qqqzzz"}}, 10, 1),
                         doctest::Contains("no trainable tokens"), ConfigError);
    CHECK_THROWS_AS(infer_vector(m, docs[0], 0, 1), ConfigError);
}

TEST_CASE("model save/load round trip") {
    Doc2VecConfig cfg;
    cfg.epochs = 5;
    const auto m = train_doc2vec(corpus_docs(7), cfg);
    const auto path = std::filesystem::temp_directory_path() / "phishembed_d2v.json";
    save_doc2vec(m, path);
    const auto back = load_doc2vec(path);
    CHECK(back.doc_vectors == m.doc_vectors);
    CHECK(back.word_vectors == m.word_vectors);
    CHECK(back.output_weights == m.output_weights);
    CHECK(back.vocab.words == m.vocab.words);
    CHECK(back.doc_ids == m.doc_ids);
    CHECK(back.config.seed == m.config.seed);
}

}
