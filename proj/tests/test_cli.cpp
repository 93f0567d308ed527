#include "phishembed/classifier.hpp"
#include "phishembed/doc2vec.hpp"
#include "phishembed/projection.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace phishembed;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::current_path() / "cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Outcome cli(const std::string& args, const fs::path& dir) {
    const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd =
        std::string("\"") + PHISHEMBED_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp(out);
    o.err = slurp(err);
    return o;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

fs::path generated_corpus(const fs::path& dir) {
    const auto path = dir / "corpus.jsonl";
    REQUIRE(cli("corpus generate --seed 7 --out \"" + path.string() + "\"", dir).code == 0);
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("corpus generate and validate") {
    const auto dir = scratch("corpus");
    const auto path = generated_corpus(dir);
    CHECK(lines_of(slurp(path)).size() == 24);
    CHECK(fs::exists(path.string() + ".manifest.json"));
    const auto v = cli("corpus validate --in \"" + path.string() + "\"", dir);
    CHECK(v.code == 0);

    // Break the first phishing URL: https and no red flags.
    std::ostringstream broken;
    for (const auto& line : lines_of(slurp(path))) {
        auto j = nlohmann::ordered_json::parse(line);
        if (j.at("id") == "p01") j["url"] = "https://example.com/login";
        broken << j.dump() << '\n';
    }
    const auto bad = dir / "bad.jsonl";
    std::ofstream(bad) << broken.str();
    const auto b = cli("corpus validate --in \"" + bad.string() + "\"", dir);
    CHECK(b.code == 1);
    CHECK(b.out.find("p01") != std::string::npos);
}

TEST_CASE("preprocess writes one token document per email") {
    const auto dir = scratch("preprocess");
    const auto corpus = generated_corpus(dir);
    const auto out = dir / "tokens.jsonl";
    REQUIRE(cli("preprocess --corpus \"" + corpus.string() + "\" --out \"" + out.string() + "\"", dir).code == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 24);
    const auto first = nlohmann::json::parse(lines[0]);
    CHECK(first.contains("doc_id"));
    CHECK(first.at("tokens").is_array());
}

TEST_CASE("run, rerun and classify") {
    const auto dir = scratch("run");
    const auto corpus = generated_corpus(dir);
    const auto out1 = dir / "out1", out2 = dir / "out2";
    const std::string base = "run --corpus \"" + corpus.string() + "\" --scenario pca2 --seed 7 --out ";
    const auto r1 = cli(base + "\"" + out1.string() + "\"", dir);
    REQUIRE(r1.code == 0);
    REQUIRE(cli(base + "\"" + out2.string() + "\"", dir).code == 0);
    CHECK(slurp(out1 / "results.json") == slurp(out2 / "results.json"));
    CHECK(r1.out.find("LinearPca2") != std::string::npos);

    const auto curve = lines_of(slurp(out1 / "variance_curve.csv"));
    REQUIRE(curve.size() == 21);
    CHECK(curve[0] == "n,R_n");
    CHECK(std::stod(curve.back().substr(curve.back().find(',') + 1)) == doctest::Approx(1.0).epsilon(1e-12));
    for (const char* f : {"embeddings.csv", "projection_pca2.csv", "boundary_pca2.csv", "boundary_pca2_scatter.csv",
                          "boundary_pca2.svg", "variance_curve.svg", "manifest.json"})
        CHECK_MESSAGE(fs::exists(out1 / f), f);

    // Training emails come back with the saved model's own predictions.
    const auto model = out1 / "models" / "pca2";
    const auto d2v = load_doc2vec(model / "doc2vec.json");
    const auto pca = load_pca(model / "pca.json");
    const auto clf = load_classifier(model / "classifier.json");
    const auto expected = clf.predict(transform_pca(pca, d2v.doc_vectors));

    const auto table = dir / "labels.csv";
    const auto c = cli("classify --model \"" + model.string() + "\" --in \"" + corpus.string() + "\" --out \"" +
                           table.string() + "\"",
                       dir);
    REQUIRE(c.code == 0);
    const auto rows = lines_of(slurp(table));
    REQUIRE(rows.size() == 25);
    CHECK(rows[0] == "doc_id,label,score,error");
    for (std::size_t i = 0; i < 24; ++i) {
        const auto& row = rows[i + 1];
        CHECK(row.substr(0, row.find(',')) == d2v.doc_ids[i]);
        const std::string want = expected[i] == 1 ? "phishing" : "legitimate";
        CHECK(row.find("," + want + ",") != std::string::npos);
    }

    // Empty input: header only. URL-only body: row-level error, exit 0.
    const auto empty = dir / "empty.jsonl";
    std::ofstream(empty).close();
    const auto e = cli("classify --model \"" + model.string() + "\" --in \"" + empty.string() + "\"", dir);
    CHECK(e.code == 0);
    CHECK(lines_of(e.out) == std::vector<std::string>{"doc_id,label,score,error"});

    const auto odd = dir / "odd.jsonl";
    std::ofstream(odd) << R"({"id": "x1", "body_text": "https://a.example/b"})" << '\n'
                       << R"({"id": "x2", "body_text": "Please verify your account password today."})" << '\n';
    const auto o = cli("classify --model \"" + model.string() + "\" --in \"" + odd.string() + "\"", dir);
    CHECK(o.code == 0);
    const auto orows = lines_of(o.out);
    REQUIRE(orows.size() == 3);
    CHECK(orows[1].find("no trainable tokens") != std::string::npos);
    CHECK(orows[2].back() == ',');
    CHECK(o.err.find("warning") != std::string::npos);
}

TEST_CASE("exit codes for bad invocations") {
    const auto dir = scratch("errors");
    const auto m = cli("classify --model \"" + (dir / "nowhere").string() + "\" --in x.jsonl", dir);
    CHECK(m.code == 3);
    CHECK(m.err.find("pipeline.json") != std::string::npos);
    CHECK(cli("run --bogus-flag", dir).code == 2);
    CHECK(cli("run --corpus c.jsonl --scenario pca9", dir).code != 0);
    CHECK(cli("corpus validate --in \"" + (dir / "missing.jsonl").string() + "\"", dir).code == 3);
    CHECK(cli("--help", dir).code == 0);
}

}
