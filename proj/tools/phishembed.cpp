// phishembed: corpus generation, preprocessing, the three-scenario experiment
// and classification of new emails with a saved pipeline.

#include "phishembed/boundary.hpp"
#include "phishembed/corpus.hpp"
#include "phishembed/export.hpp"
#include "phishembed/random.hpp"
#include "phishembed/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace phishembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitContent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

/// Maps library exceptions onto exit codes and prints the message.
int report_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const Error*>(&e)) return kExitContent;
    return kExitContent;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) ensure_dir(file.parent_path());
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// corpus

struct CorpusArgs {
    std::uint64_t seed = 7;
    std::string out;
    std::string in;
    std::string manifest;
};

int cmd_corpus_generate(const CorpusArgs& a) {
    const auto corpus = generate_corpus(a.seed);
    ensure_parent(a.out);
    save_corpus(corpus, a.out);

    RunManifest m;
    m.command = "corpus generate";
    m.flags = {{"seed", a.seed}, {"out", a.out}};
    m.seeds = {{"corpus", a.seed}};
    m.outputs = {a.out};
    write_manifest(m, a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    std::cout << "wrote " << corpus.samples.size() << " samples to " << a.out << '\n';
    return kExitOk;
}

int cmd_corpus_validate(const CorpusArgs& a) {
    const auto loaded = load_corpus(a.in);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    std::size_t bad = 0;
    for (const auto& s : loaded.corpus.samples) {
        const auto result = validate_sample(s, default_brand_list());
        for (const auto& v : result.violations) std::cout << s.id << ": " << v << '\n';
        if (!result.ok()) ++bad;
    }
    const auto structural = validate_corpus_structure(loaded.corpus, true);
    for (const auto& v : structural) std::cout << "corpus: " << v << '\n';

    RunManifest m;
    m.command = "corpus validate";
    m.flags = {{"in", a.in}};
    m.inputs = {a.in};
    const std::string manifest = a.manifest.empty() ? a.in + ".validation.manifest.json" : a.manifest;
    m.outputs = {manifest};
    write_manifest(m, manifest);

    const bool ok = bad == 0 && structural.empty();
    std::cout << loaded.corpus.samples.size() << " samples, " << bad << " with violations"
              << (ok ? "" : " (invalid)") << '\n';
    return ok ? kExitOk : kExitContent;
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
    std::string corpus;
    std::string out;
    bool include_subject = false;
    std::string manifest;
};

int cmd_preprocess(const PreprocessArgs& a) {
    const auto loaded = load_corpus(a.corpus);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    PreprocessOptions opt;
    opt.include_subject = a.include_subject;
    const auto docs = preprocess_corpus(loaded.corpus, default_stopwords(), opt);
    ensure_parent(a.out);
    write_text(a.out, serialize_token_docs(docs));

    RunManifest m;
    m.command = "preprocess";
    m.flags = {{"corpus", a.corpus}, {"out", a.out}, {"include_subject", a.include_subject}};
    m.inputs = {a.corpus};
    m.outputs = {a.out};
    write_manifest(m, a.manifest.empty() ? a.out + ".manifest.json" : a.manifest);
    std::cout << "wrote " << docs.size() << " token documents to " << a.out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    std::string corpus;
    std::string scenario = "all";
    std::uint64_t seed = 7;
    bool leakage_free = false;
    bool stratify = true;
    std::optional<double> gamma;
    std::string out = "results";
    std::size_t jobs = 1;
    std::size_t folds = 10;
    std::size_t resolution = 100;
    bool include_subject = false;
};

void save_pipeline(const fs::path& dir, const RunResult& run, const ScenarioResult& s) {
    ensure_dir(dir);
    const auto& e = run.embeddings;
    save_doc2vec(e.doc2vec, dir / "doc2vec.json");
    std::string projection;
    if (s.pca) {
        projection = "pca.json";
        save_pca(*s.pca, dir / projection);
    } else if (s.kernel_pca) {
        projection = "kernel_pca.json";
        save_kernel_pca(*s.kernel_pca, dir / projection);
    }
    save_classifier(s.classifiers.at(s.best_classifier).full_model, dir / "classifier.json");

    nlohmann::ordered_json p;
    p["format"] = "phishembed-pipeline-v1";
    p["scenario"] = to_string(s.scenario);
    p["stopwords"] = default_stopwords().name;
    p["include_subject"] = run.config.preprocess.include_subject;
    p["doc2vec"] = "doc2vec.json";
    if (projection.empty()) p["projection"] = nullptr;
    else p["projection"] = projection;
    p["classifier"] = "classifier.json";
    p["infer_steps"] = run.config.doc2vec.epochs;
    p["infer_seed"] = run.config.doc2vec.seed;
    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    for (const auto& d : e.docs) docs.push_back({{"doc_id", d.doc_id}, {"tokens", d.tokens}});
    p["training_docs"] = std::move(docs);
    write_json_file(dir / "pipeline.json", p);
}

void print_summary(const RunResult& run) {
    std::printf("%-12s %-20s %8s %9s %8s %8s\n", "scenario", "classifier", "accuracy", "precision", "recall", "f1");
    for (const auto& s : run.scenarios) {
        for (const auto& c : s.classifiers) {
            const auto& m = c.final_report.mean;
            std::printf("%-12s %-20s %8.3f %9.3f %8.3f %8.3f\n", std::string(to_string(s.scenario)).c_str(),
                        c.final_report.classifier_name.c_str(), m.accuracy, m.precision, m.recall, m.f1);
        }
    }
}

int cmd_run(const RunArgs& a) {
    std::vector<Scenario> scenarios;
    if (a.scenario == "all") {
        scenarios.assign(std::begin(kAllScenarios), std::end(kAllScenarios));
    } else {
        const auto s = parse_scenario(a.scenario);
        if (!s) {
            std::cerr << "error: unknown scenario '" << a.scenario << "'\n";
            return kExitUsage;
        }
        scenarios.push_back(*s);
    }

    const auto loaded = load_corpus(a.corpus);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';

    RunConfig config;
    config.seed = a.seed;
    config.doc2vec.seed = a.seed;
    config.preprocess.include_subject = a.include_subject;
    config.folds = a.folds;
    config.stratify = a.stratify;
    config.leakage_free = a.leakage_free;
    config.kpca_gamma = a.gamma;
    config.jobs = a.jobs;

    const auto run = run_pipeline(loaded.corpus, scenarios, config);

    const fs::path out(a.out);
    ensure_dir(out);
    std::vector<std::string> outputs;
    auto emit = [&](const fs::path& p, std::string_view text) {
        write_text(p, text);
        outputs.push_back(p.string());
    };

    emit(out / "results.json", results_json(run).dump(2) + "\n");
    const auto& e = run.embeddings;
    emit(out / "embeddings.csv", embeddings_csv(e.matrix.doc_ids, e.labels, e.matrix.vectors));
    for (const auto& s : run.scenarios) {
        const std::string name(cli_name(s.scenario));
        if (s.scenario != Scenario::Full20)
            emit(out / ("projection_" + name + ".csv"), projection_csv(e.matrix.doc_ids, e.labels, s.features));
        if (s.pca) {
            emit(out / "variance_curve.csv", variance_curve_csv(s.variance_curve));
            emit(out / "variance_curve.svg", variance_curve_svg(s.variance_curve, config.variance_threshold));
        }
        if (s.best_rbf_svm) {
            const auto grid = decision_boundary_grid(*s.best_rbf_svm, s.features, e.labels, e.matrix.doc_ids,
                                                     a.resolution);
            emit(out / ("boundary_" + name + ".csv"), boundary_lattice_csv(grid));
            emit(out / ("boundary_" + name + "_scatter.csv"), boundary_scatter_csv(grid));
            emit(out / ("boundary_" + name + ".svg"),
                 boundary_svg(grid, std::string(to_string(s.scenario)) + ": RBF SVM " +
                                        hyperparameters_json(s.best_rbf_svm->config).dump()));
        }
        save_pipeline(out / "models" / name, run, s);
        outputs.push_back((out / "models" / name).string());
    }

    RunManifest m;
    m.command = "run";
    m.flags = {{"corpus", a.corpus},       {"scenario", a.scenario}, {"seed", a.seed},
               {"leakage_free", a.leakage_free}, {"stratify", a.stratify},
               {"gamma", a.gamma ? nlohmann::ordered_json(*a.gamma) : nlohmann::ordered_json("default")},
               {"out", a.out},             {"jobs", a.jobs},         {"folds", a.folds},
               {"boundary_resolution", a.resolution}, {"include_subject", a.include_subject}};
    m.seeds = {{"run", a.seed}, {"doc2vec", config.doc2vec.seed}, {"folds", config.seed}};
    m.inputs = {a.corpus};
    m.outputs = outputs;
    write_manifest(m, out / "manifest.json");

    print_summary(run);
    for (const auto& s : run.scenarios) {
        const auto& best = s.classifiers.at(s.best_classifier).final_report;
        std::cout << "best " << to_string(s.scenario) << ": " << best.classifier_name << " accuracy "
                  << best.mean.accuracy << " f1 " << best.mean.f1 << '\n';
        if (s.pca)
            std::cout << "variance threshold " << config.variance_threshold << " reached at n="
                      << s.components_for_threshold << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
    std::string model;
    std::string in;
    std::string out;
};

nlohmann::json read_json(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw IoError("cannot open '" + p.string() + "'");
    try {
        nlohmann::json j;
        is >> j;
        return j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError("invalid JSON in '" + p.string() + "': " + ex.what(), 1);
    }
}

std::vector<EmailSample> read_emails(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw IoError("cannot open '" + p.string() + "'");
    std::vector<EmailSample> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            EmailSample s;
            s.id = j.at("id").get<std::string>();
            s.body_text = j.at("body_text").get<std::string>();
            s.subject = j.value("subject", std::string());
            s.sender_address = j.value("sender_address", std::string());
            s.url = j.value("url", std::string());
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(ex.what(), n);
        }
    }
    return out;
}

int cmd_classify(const ClassifyArgs& a) {
    const fs::path dir(a.model);
    std::vector<std::string> missing;
    for (const char* f : {"pipeline.json", "doc2vec.json", "classifier.json"})
        if (!fs::exists(dir / f)) missing.push_back((dir / f).string());
    nlohmann::json pipeline;
    if (fs::exists(dir / "pipeline.json")) {
        pipeline = read_json(dir / "pipeline.json");
        if (pipeline.contains("projection") && pipeline["projection"].is_string() &&
            !fs::exists(dir / pipeline["projection"].get<std::string>()))
            missing.push_back((dir / pipeline["projection"].get<std::string>()).string());
    }
    if (!missing.empty()) {
        std::cerr << "error: missing model artifacts:\n";
        for (const auto& m : missing) std::cerr << "  " << m << '\n';
        return kExitIo;
    }

    const auto doc2vec = load_doc2vec(dir / "doc2vec.json");
    const auto clf = load_classifier(dir / "classifier.json");
    std::optional<PcaModel> pca;
    std::optional<KernelPcaModel> kpca;
    if (pipeline["projection"].is_string()) {
        const auto name = pipeline["projection"].get<std::string>();
        if (name == "pca.json") pca = load_pca(dir / name);
        else kpca = load_kernel_pca(dir / name);
    }
    PreprocessOptions opt;
    opt.include_subject = pipeline.value("include_subject", false);
    const std::size_t steps = pipeline.value("infer_steps", doc2vec.config.epochs);
    const std::uint64_t infer_seed = pipeline.value("infer_seed", doc2vec.config.seed);
    std::map<std::string, std::vector<std::string>> training_tokens;
    for (const auto& d : pipeline.at("training_docs"))
        training_tokens[d.at("doc_id").get<std::string>()] = d.at("tokens").get<std::vector<std::string>>();

    const auto emails = read_emails(a.in);
    std::ostringstream table;
    table << "doc_id,label,score,error\n";
    std::size_t errors = 0;
    for (const auto& email : emails) {
        const auto doc = preprocess(email, default_stopwords(), opt);
        std::vector<double> vec;
        const auto known = training_tokens.find(doc.doc_id);
        const auto idx = doc2vec.doc_index(doc.doc_id);
        if (known != training_tokens.end() && known->second == doc.tokens && idx) {
            const auto row = doc2vec.doc_vectors.row(*idx);
            vec.assign(row.begin(), row.end());
        } else {
            try {
                vec = infer_vector(doc2vec, doc, steps, derive_seed(infer_seed, fnv1a(doc.doc_id)));
            } catch (const ConfigError& ex) {
                table << doc.doc_id << ",,," << ex.what() << '\n';
                ++errors;
                continue;
            }
        }
        Matrix x(1, vec.size());
        std::copy(vec.begin(), vec.end(), x.row(0).begin());
        if (pca) x = transform_pca(*pca, x);
        if (kpca) x = transform_kernel_pca(*kpca, x);
        const int label = clf.predict(x).front();
        table << doc.doc_id << ',' << (label == 1 ? "phishing" : "legitimate") << ','
              << format_double(clf.decision_score(x.row(0))) << ",\n";
    }
    std::cout << table.str();
    if (!a.out.empty()) {
        ensure_parent(a.out);
        write_text(a.out, table.str());
    }
    if (errors > 0) std::cerr << "warning: " << errors << " email(s) could not be embedded\n";

    RunManifest m;
    m.command = "classify";
    m.flags = {{"model", a.model}, {"in", a.in}, {"out", a.out}};
    m.seeds = {{"infer", infer_seed}};
    m.inputs = {a.model, a.in};
    const std::string manifest = a.out.empty() ? (dir / "classify.manifest.json").string() : a.out + ".manifest.json";
    if (!a.out.empty()) m.outputs = {a.out};
    write_manifest(m, manifest);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phishing email embeddings: corpus, features and classifier evaluation"};
    app.require_subcommand(1);

    CorpusArgs corpus_args;
    auto* corpus = app.add_subcommand("corpus", "Generate or validate a stimulus corpus");
    corpus->require_subcommand(1);
    auto* generate = corpus->add_subcommand("generate", "Write a seeded 24-email corpus as JSON Lines");
    generate->add_option("--seed", corpus_args.seed, "Generator seed")->capture_default_str();
    generate->add_option("--out", corpus_args.out, "Output JSONL path")->required();
    generate->add_option("--manifest", corpus_args.manifest, "Manifest path (default: <out>.manifest.json)");
    auto* validate = corpus->add_subcommand("validate", "Check every sample against the corpus rules");
    validate->add_option("--in", corpus_args.in, "Corpus JSONL")->required();
    validate->add_option("--manifest", corpus_args.manifest, "Manifest path");

    PreprocessArgs pre_args;
    auto* pre = app.add_subcommand("preprocess", "Tokenize, filter and stem a corpus");
    pre->add_option("--corpus", pre_args.corpus, "Corpus JSONL")->required();
    pre->add_option("--out", pre_args.out, "Token JSONL output")->required();
    pre->add_flag("--include-subject", pre_args.include_subject, "Prepend the subject line to the body");
    pre->add_option("--manifest", pre_args.manifest, "Manifest path");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Embed, project and evaluate the classifiers");
    run->add_option("--corpus", run_args.corpus, "Corpus JSONL")->required();
    run->add_option("--scenario", run_args.scenario, "full20, pca2, kpca2 or all")
        ->check(CLI::IsMember({"full20", "pca2", "kpca2", "all"}))
        ->capture_default_str();
    run->add_option("--seed", run_args.seed, "Seed for Doc2Vec, folds and classifiers")->capture_default_str();
    run->add_flag("--leakage-free", run_args.leakage_free, "Fit Doc2Vec and projections inside each fold");
    run->add_flag("--stratify,!--no-stratify", run_args.stratify, "Stratify folds by label (default on)");
    run->add_option("--gamma", run_args.gamma, "Kernel PCA gamma (default 1/(d * mean feature variance))")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", run_args.out, "Output directory")->capture_default_str();
    run->add_option("--jobs", run_args.jobs, "Threads for grid-search trials")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    run->add_option("--folds", run_args.folds, "Cross-validation folds")->check(CLI::Range(2, 1000))->capture_default_str();
    run->add_option("--boundary-resolution", run_args.resolution, "Lattice points per axis for boundary plots")
        ->check(CLI::Range(2, 2000))
        ->capture_default_str();
    run->add_flag("--include-subject", run_args.include_subject, "Prepend the subject line to the body");

    ClassifyArgs cls_args;
    auto* classify = app.add_subcommand("classify", "Label new emails with a saved pipeline");
    classify->add_option("--model", cls_args.model, "Model directory written by run (models/<scenario>)")->required();
    classify->add_option("--in", cls_args.in, "Email JSONL (id, body_text; subject optional)")->required();
    classify->add_option("--out", cls_args.out, "Also write the table to this CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate) return cmd_corpus_generate(corpus_args);
        if (*validate) return cmd_corpus_validate(corpus_args);
        if (*pre) return cmd_preprocess(pre_args);
        if (*run) return cmd_run(run_args);
        if (*classify) return cmd_classify(cls_args);
    } catch (const std::exception& e) {
        return report_error(e);
    }
    return kExitUsage;
}
