// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures (capped) so ctest reports any miss.

#include "oracles.hpp"

#include "phishembed/corpus.hpp"
#include "phishembed/cross_validation.hpp"
#include "phishembed/doc2vec.hpp"
#include "phishembed/projection.hpp"
#include "phishembed/textprep.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace phishembed;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0) {
        std::ostringstream lim;
        lim << "took " << secs << " s (limit " << time_limit_s << " s)";
        c.expect(secs < time_limit_s, lim.str());
    }
    std::printf("%s  %2d  %-34s %8.3f s", c.ok ? "PASS" : "FAIL", id, name.c_str(), secs);
    if (!c.ok) std::printf("  -- %s", c.why.str().c_str());
    std::printf("\n");
    std::fflush(stdout);
    failures += !c.ok;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string("\"") + PHISHEMBED_CLI + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "metric oracle", 1.0, [](Check& c) {
        Rng rng(2024);
        for (int t = 0; t < 1000; ++t) {
            ConfusionMatrix cm{uniform_index(rng, 50), uniform_index(rng, 50), uniform_index(rng, 50),
                               uniform_index(rng, 50)};
            if (cm.total() == 0) cm.tp = 1;
            const auto m = compute_metrics(cm);
            const auto o = oracle::metrics_by_counting(cm, rng);
            c.expect(m.accuracy == o.accuracy && m.precision == o.precision && m.recall == o.recall && m.f1 == o.f1,
                     "mismatch on trial " + std::to_string(t));
        }
        const auto m = compute_metrics({3825, 0, 475, 0});
        c.expect(std::abs(m.accuracy - 0.8895) <= 1e-4, "accuracy " + num(m.accuracy));
        c.expect(m.recall == 1.0, "recall " + num(m.recall));
        c.expect(std::abs(m.f1 - 0.9415) <= 1e-4, "f1 " + num(m.f1));
    });

    criterion(2, "pca oracle", 5.0, [](Check& c) {
        Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            const auto x = oracle::random_matrix(rng, 10, 5);
            const auto pca = fit_pca(x, 5);
            const auto ref = oracle::eigen_pca(x);
            double total_var = 0.0, ratio_sum = 0.0;
            for (double v : ref.values) total_var += v;
            for (std::size_t k = 0; k < 5; ++k) {
                c.expect(std::abs(pca.explained_variance_ratio[k] - ref.values[k] / total_var) <= 1e-8,
                         "ratio " + std::to_string(k) + " on set " + std::to_string(t));
                double plus = 0.0, minus = 0.0;
                for (std::size_t j = 0; j < 5; ++j) {
                    plus = std::max(plus, std::abs(pca.components(k, j) - ref.vectors[k][j]));
                    minus = std::max(minus, std::abs(pca.components(k, j) + ref.vectors[k][j]));
                }
                c.expect(std::min(plus, minus) <= 1e-8, "component " + std::to_string(k) + " on set " +
                                                            std::to_string(t) + " off by " + num(std::min(plus, minus)));
                ratio_sum += pca.explained_variance_ratio[k];
            }
            c.expect(std::abs(ratio_sum - 1.0) <= 1e-9, "ratios sum to " + num(ratio_sum));
            const auto curve = cumulative_variance_curve(pca);
            for (std::size_t i = 1; i < curve.size(); ++i) c.expect(curve[i] >= curve[i - 1], "curve decreases");
        }
    });

    criterion(3, "kernel pca linear consistency", 5.0, [](Check& c) {
        Rng rng(6);
        for (int t = 0; t < 20; ++t) {
            const std::size_t n = 8 + uniform_index(rng, 20), d = 3 + uniform_index(rng, 6);
            const auto x = oracle::random_matrix(rng, n, d);
            const auto kp = fit_kernel_pca(x, 2, 1.0, PcaKernel::Linear);
            const auto z = transform_pca(fit_pca(x, 2), x);
            for (std::size_t k = 0; k < 2; ++k) {
                const double r = oracle::pearson(oracle::column(kp.training_projection, k), oracle::column(z, k));
                c.expect(std::abs(r) > 1.0 - 1e-6, "|r| = " + num(std::abs(r)));
            }
        }
    });

    criterion(4, "svm oracle", 10.0, [](Check& c) {
        Rng rng(44);
        for (int t = 0; t < 20; ++t) {
            const auto d = oracle::separable_four(rng);
            const auto kernel = make_kernel_params(t % 2 ? SvmKernel::Rbf : SvmKernel::Linear, 0.5);
            SvmOptions opt;
            opt.c = t < 10 ? 1.0 : 10.0;
            opt.tolerance = 1e-6;
            const auto m = svm_fit(d, kernel, opt);
            const double smo = svm_dual_objective(d.x, d.y, kernel, svm_full_alphas(m, d.x));
            const double brute = oracle::brute_force_dual(d.x, d.y, kernel, opt.c);
            c.expect(std::abs(smo - brute) <= 1e-3, "set " + std::to_string(t) + ": smo " + num(smo) + " vs " + num(brute));
        }
        LabeledDataset xr{Matrix::from_rows({{0, 0}, {1, 1}, {0, 1}, {1, 0}}), {0, 0, 1, 1}, {}};
        SvmOptions opt;
        opt.c = 10.0;
        const auto m = svm_fit(xr, make_kernel_params(SvmKernel::Rbf, 1.0), opt);
        c.expect(svm_predict(m, xr.x) == xr.y, "xor not separated");
    });

    criterion(5, "logistic gradient check", 2.0, [](Check& c) {
        Rng rng(55);
        for (int t = 0; t < 20; ++t) {
            const std::size_t n = 2 + uniform_index(rng, 9), d = 1 + uniform_index(rng, 5);
            LabeledDataset data;
            data.x = oracle::random_matrix(rng, n, d);
            for (std::size_t i = 0; i < n; ++i) data.y.push_back(static_cast<int>(uniform_index(rng, 2)));
            std::vector<double> w(d + 1);
            for (auto& v : w) v = standard_normal(rng);
            const double lambda = t % 2 ? 0.1 : 0.0;
            const auto g = logreg_gradient(data, w, lambda);
            const auto fd = oracle::central_difference(
                [&](const std::vector<double>& p) { return logreg_loss(data, p, lambda); }, w);
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double rel = std::abs(g[i] - fd[i]) / std::max(1e-8, std::max(std::abs(g[i]), std::abs(fd[i])));
                c.expect(rel < 1e-4 || std::abs(g[i] - fd[i]) < 1e-10, "relative error " + num(rel));
            }
        }
    });

    criterion(6, "gaussian naive bayes", 0.0, [](Check& c) {
        LabeledDataset d{Matrix::from_rows({{0.0, 1.0}, {2.0, 3.0}, {-1.0, 4.0}, {-3.0, 0.0}}), {1, 1, 0, 0}, {}};
        const auto m = gnb_fit(d);
        const double pi = 3.14159265358979323846;
        auto log_n = [&](double v, double mu, double s2) {
            return -0.5 * std::log(2.0 * pi * s2) - (v - mu) * (v - mu) / (2.0 * s2);
        };
        const std::vector<double> x = {0.5, 2.5};
        const double ll1 = std::log(0.5) + log_n(0.5, 1.0, 1.0) + log_n(2.5, 2.0, 1.0);
        const double ll0 = std::log(0.5) + log_n(0.5, -2.0, 1.0) + log_n(2.5, 2.0, 4.0);
        const double hand = 1.0 / (1.0 + std::exp(ll0 - ll1));
        const double a = gnb_joint_log_likelihood(m, 0, x), b = gnb_joint_log_likelihood(m, 1, x);
        const double got = 1.0 / (1.0 + std::exp(a - b));
        c.expect(std::abs(got - hand) <= 1e-10, "posterior " + num(got) + " vs " + num(hand));

        LabeledDataset flat{Matrix::from_rows({{1.0, 0.0}, {1.0, 1.0}, {2.0, 5.0}, {2.0, 6.0}}), {1, 1, 0, 0}, {}};
        const auto fm = gnb_fit(flat);
        for (const auto& probe : {std::vector<double>{1.0, 0.5}, {1.5, 3.0}, {7.0, -4.0}}) {
            c.expect(std::isfinite(gnb_joint_log_likelihood(fm, 0, probe)) &&
                         std::isfinite(gnb_joint_log_likelihood(fm, 1, probe)),
                     "non-finite likelihood for a constant feature");
        }
    });

    criterion(7, "fold structure", 0.0, [](Check& c) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::vector<int> y(24);
            for (std::size_t i = 0; i < 24; ++i) y[i] = i < 12;
            for (bool strat : {false, true}) {
                const auto folds = kfold_indices(24, 10, seed, strat ? &y : nullptr);
                std::size_t twos = 0, threes = 0, plo = 24, phi = 0;
                std::vector<int> seen(24, 0);
                for (const auto& f : folds) {
                    twos += f.size() == 2;
                    threes += f.size() == 3;
                    std::size_t pos = 0;
                    for (auto i : f) {
                        ++seen[i];
                        pos += static_cast<std::size_t>(y[i]);
                    }
                    plo = std::min(plo, pos);
                    phi = std::max(phi, pos);
                }
                c.expect(twos == 6 && threes == 4, "fold sizes");
                c.expect(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }), "not a partition");
                if (strat) c.expect(phi - plo <= 1, "class counts differ by more than one");
            }
        }
    });

    criterion(8, "porter stemmer sample", 0.0, [](Check& c) {
        std::ifstream is(std::string(PHISHEMBED_TEST_DATA) + "/porter_sample.tsv");
        c.expect(static_cast<bool>(is), "sample file missing");
        std::size_t total = 0, agree = 0;
        for (std::string line; std::getline(is, line);) {
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            ++total;
            const auto word = line.substr(0, tab), stem = line.substr(tab + 1);
            if (porter_stem(word) == stem) ++agree;
            else c.expect(false, word + " -> " + porter_stem(word) + ", expected " + stem);
        }
        c.expect(total == 100, "sample has " + std::to_string(total) + " words");
        c.expect(agree == total, std::to_string(agree) + "/" + std::to_string(total));
    });

    const auto work = fs::current_path() / "acceptance_runs";
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string corpus = PHISHEMBED_CORPUS;

    criterion(9, "end-to-end band", 60.0, [&](Check& c) {
        const int code = run_cli("run --corpus \"" + corpus + "\" --scenario all --seed 7 --out \"" +
                                     (work / "a").string() + "\"",
                                 work / "a.log");
        c.expect(code == 0, "run exited " + std::to_string(code) + ": " + slurp(work / "a.log"));
        if (code != 0) return;
        const auto j = nlohmann::json::parse(slurp(work / "a" / "results.json"));
        std::size_t reports = 0;
        std::ostringstream summary;
        for (const auto& s : j.at("scenarios")) {
            reports += s.at("reports").size();
            const double acc = s.at("best").at("mean_accuracy");
            summary << s.at("scenario").get<std::string>() << "=" << acc << " ";
            c.expect(acc >= 0.70, s.at("scenario").get<std::string>() + " best accuracy " + num(acc));
        }
        c.expect(reports == 12, std::to_string(reports) + " reports");
        std::printf("      best mean accuracy: %s\n", summary.str().c_str());
    });

    criterion(10, "determinism", 0.0, [&](Check& c) {
        if (!fs::exists(work / "a" / "results.json"))
            run_cli("run --corpus \"" + corpus + "\" --scenario all --seed 7 --out \"" + (work / "a").string() + "\"",
                    work / "a.log");
        const int code = run_cli("run --corpus \"" + corpus + "\" --scenario all --seed 7 --out \"" +
                                     (work / "b").string() + "\"",
                                 work / "b.log");
        c.expect(code == 0, "second run exited " + std::to_string(code));
        const auto a = slurp(work / "a" / "results.json"), b = slurp(work / "b" / "results.json");
        c.expect(!a.empty() && a == b, "results differ between runs");
    });

    criterion(11, "corpus validity", 0.0, [](Check& c) {
        const auto& brands = default_brand_list();
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto corpus = generate_corpus(seed);
            c.expect(corpus.samples.size() == 24, "corpus size");
            for (const auto& s : corpus.samples) {
                const auto v = validate_sample(s, brands);
                c.expect(v.ok(), "seed " + std::to_string(seed) + " " + s.id + " invalid");
                const auto u = analyze_url(s.url, brands);
                if (s.label == Label::Phishing)
                    c.expect(u.suspicious_count >= 2 && !u.has_https, "phishing url " + s.url);
                else
                    c.expect(u.has_https, "legitimate url " + s.url);
            }
        }
    });

    criterion(12, "doc2vec sanity", 0.0, [](Check& c) {
        auto docs = preprocess_corpus(generate_corpus(7), default_stopwords());
        const auto m = train_doc2vec(docs, Doc2VecConfig{});
        c.expect(m.epoch_losses.back() < m.epoch_losses.front(),
                 "loss " + num(m.epoch_losses.front()) + " -> " + num(m.epoch_losses.back()));

        TokenDoc dup = docs[4];
        dup.doc_id = "dup";
        docs.push_back(dup);
        const std::size_t a = 4, b = docs.size() - 1;
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Doc2VecConfig cfg;
            cfg.seed = seed;
            const auto dm = train_doc2vec(docs, cfg);
            auto nearest = [&](std::size_t i) {
                std::size_t best = i;
                double top = -2.0;
                for (std::size_t j = 0; j < docs.size(); ++j) {
                    if (j == i) continue;
                    const double s = cosine_similarity(dm.doc_vectors.row(i), dm.doc_vectors.row(j));
                    if (s > top) {
                        top = s;
                        best = j;
                    }
                }
                return best;
            };
            hits += nearest(a) == b && nearest(b) == a;
        }
        c.expect(hits >= 18, std::to_string(hits) + "/20 seeds");
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
