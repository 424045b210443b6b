// Acceptance gate: one pass/fail line per criterion, exit code equals the
// number of failures. argv[1] must point at the CLI binary (used by the
// schema and determinism criteria).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "umap_one_tables.hpp"
#include "umstm/cluster.hpp"
#include "umstm/experiments.hpp"
#include "umstm/pmi.hpp"
#include "umstm/scom.hpp"
#include "umstm/sequential.hpp"

using namespace umstm;
using fixtures::round2;

namespace {

int g_failures = 0;
std::string g_cli;
std::string g_dir;

void criterion(int n, const std::string& what, double max_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (max_seconds > 0.0 && secs > max_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("took ") + std::to_string(secs) +
                  "s, limit " + std::to_string(max_seconds) + "s";
    }
    if (!ok) ++g_failures;
    std::printf("criterion %2d: %s - %s%s%s\n", n, ok ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : " | ", detail.c_str());
    std::fflush(stdout);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Runs the CLI, returns (exit code, output bytes).
std::pair<int, std::string> run_cli(const std::string& args) {
    std::string out = g_dir + "/cli_out";
    std::string cmd = g_cli + " " + args + " > " + out + " 2> " + g_dir + "/cli_err";
    int rc = std::system(cmd.c_str());
    return {rc, read_file(out)};
}

struct Ctx {
    UnderstandingMap map = fixtures::six_concept_map();
    DistanceMatrix matrix{map};
    CandidateTopicSet candidates{map, {}};
    NormalizationTable table = group_statistics(map, matrix, candidates.spec());
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 64;
    }
    g_cli = argv[1];
    g_dir = "acceptance_tmp";
    std::system(("mkdir -p " + g_dir).c_str());
    write_file(g_dir + "/map.txt", "A B\nA C\nC D\nC E\nD E\nD F\n");
    write_file(g_dir + "/doc.txt", "A 10\nC 1\nD 5\nF 3\n");

    criterion(1, "distance matrix rebuilt from the singleton oracle rows", 1.0,
              [](std::string& detail) {
        // Edges are exactly the concept pairs at squared distance 1 in the
        // first six (singleton) oracle rows.
        std::vector<Edge> edges;
        const char* names = "ABCDEF";
        for (int i = 0; i < 6; ++i) {
            for (int j = i + 1; j < 6; ++j) {
                if (umap_one_tables::kSquared[i][j] == 1.0) {
                    edges.push_back(Edge{std::string(1, names[i]), std::string(1, names[j])});
                }
            }
        }
        auto map = UnderstandingMap::build(edges);
        if (map.size() != 6) {
            detail = "unexpected concept count";
            return false;
        }
        DistanceMatrix m(map);
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                if (m.squared(i, j) != umap_one_tables::kSquared[i][j]) {
                    detail = "mismatch at " + std::to_string(i) + "," + std::to_string(j);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(2, "62-topic distance tables match the frozen oracles", 1.0,
              [](std::string& detail) {
        Ctx ctx;
        auto noisy = group_statistics(ctx.map, ctx.matrix, ctx.candidates.spec(),
                                      GroupStatisticsOptions{0.2});
        const auto& topics = ctx.candidates.topics();
        if (topics.size() != 62) {
            detail = "topic count " + std::to_string(topics.size());
            return false;
        }
        for (int t = 0; t < 62; ++t) {
            int len = topics[t].length();
            for (int c = 0; c < 6; ++c) {
                double d2 = concept_topic_distance(c, topics[t], ctx.matrix);
                if (d2 != umap_one_tables::kSquared[t][c] ||
                    round2(ctx.table.phi(len) * d2) != umap_one_tables::kNormalized[t][c] ||
                    round2(d2 + 0.2) != umap_one_tables::kNoisy[t][c] ||
                    round2(noisy.phi(len) * (d2 + 0.2)) !=
                        umap_one_tables::kNormalizedNoisy[t][c]) {
                    detail = "mismatch at topic " + std::string(umap_one_tables::kTopics[t]);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(3, "per-length statistics match the published summary", 0.0,
              [](std::string& detail) {
        Ctx ctx;
        auto noisy = group_statistics(ctx.map, ctx.matrix, ctx.candidates.spec(),
                                      GroupStatisticsOptions{0.2});
        const double means[] = {3.83, 1.56, 0.79, 0.40, 0.17};
        const double phis[] = {1.00, 2.46, 4.84, 9.58, 23.00};
        const double sparse[] = {0.17, 0.33, 0.50, 0.67, 0.83};
        const double nmeans[] = {4.03, 1.76, 0.99, 0.60, 0.37};
        const double nphis[] = {1.00, 2.30, 4.07, 6.72, 11.00};
        for (int i = 0; i < 5; ++i) {
            const auto& g = ctx.table.groups[i];
            const auto& n = noisy.groups[i];
            if (std::abs(g.mean - means[i]) >= 0.005 || std::abs(g.phi - phis[i]) >= 0.005 ||
                std::abs(g.sparsity - sparse[i]) >= 0.005 ||
                std::abs(n.mean - nmeans[i]) >= 0.005 || std::abs(n.phi - nphis[i]) >= 0.005 ||
                n.sparsity != 0.0) {
                detail = "mismatch at length " + std::to_string(i + 1);
                return false;
            }
        }
        return true;
    });

    criterion(4, "worked-example SCOM ground truth", 0.0, [](std::string& detail) {
        Ctx ctx;
        auto doc = fixtures::tau(ctx.map);
        auto one = one_scom(doc, ctx.matrix);
        if (one.scom.label(ctx.map) != "C" || one.cost != 27.0) {
            detail = "one-SCOM is " + one.scom.label(ctx.map);
            return false;
        }
        ScoreConfig raw;
        raw.mode = ScoreMode::Raw;
        auto champs = local_champions(doc, ctx.matrix, ctx.candidates, ctx.table, raw);
        if (champs[1].champion.label(ctx.map) != "AD" || champs[1].distance != 4.0) {
            detail = "length-2 champion is " + champs[1].champion.label(ctx.map);
            return false;
        }
        return true;
    });

    criterion(5, "co-occurrence network: exact fractions, pruning, distances", 1.0,
              [](std::string& detail) {
        auto stats = CorpusStats::compute(fixtures::cooccurrence_corpus());
        if (stats.probability("A") != Rational(1, 2) ||
            pmi_distance("A", "B", stats) != std::optional<Rational>(Rational(1, 2)) ||
            pmi_distance("E", "F", stats) != std::optional<Rational>(Rational(3, 4)) ||
            pmi_distance("B", "D", stats).has_value() ||
            pmi_distance("A", "F", stats) != std::optional<Rational>(Rational(3, 2))) {
            detail = "pairwise values differ";
            return false;
        }
        auto g = build_complete_graph(stats);
        auto pruned = prune_redundant_edges(g);
        bool af = false, bd = false;
        for (const auto& [a, b] : pruned.removed) {
            if (a == "A" && b == "F") af = true;
            if (b == "A" && a == "F") af = true;
            if ((a == "B" && b == "D") || (a == "D" && b == "B")) bd = true;
        }
        if (!af || !bd) {
            detail = "AF/BD not reported removed";
            return false;
        }
        auto before = g.all_pairs_shortest_paths();
        auto after = pruned.graph.all_pairs_shortest_paths();
        for (std::size_t i = 0; i < g.concepts.size(); ++i) {
            for (std::size_t j = 0; j < g.concepts.size(); ++j) {
                if (before[i][j] != after[i][j]) {
                    detail = "distance changed by pruning";
                    return false;
                }
            }
        }
        return true;
    });

    criterion(6, "raw champion distance non-increasing in topic length", 30.0,
              [](std::string& detail) {
        std::mt19937_64 rng(6001);
        ScoreConfig raw;
        raw.mode = ScoreMode::Raw;
        int docs_checked = 0;
        auto check_map = [&](const UnderstandingMap& map) {
            DistanceMatrix matrix(map);
            CandidateTopicSet candidates(map, {});
            auto table = group_statistics(map, matrix, candidates.spec());
            std::uniform_int_distribution<std::size_t> cl(1, map.size());
            for (int d = 0; d < 4; ++d) {
                auto doc = random_document(map, cl(rng), 1, 40, rng);
                auto champs = local_champions(doc, matrix, candidates, table, raw);
                for (std::size_t i = 1; i < champs.size(); ++i) {
                    if (champs[i].distance > champs[i - 1].distance) return false;
                }
                ++docs_checked;
            }
            return true;
        };
        if (!check_map(fixtures::six_concept_map())) {
            detail = "violated on the six-concept map";
            return false;
        }
        for (int t = 0; t < 50; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(3, 12);
            auto map = random_connected_map(nodes(rng), 3, rng);
            if (!check_map(map)) {
                detail = "violated on random map " + std::to_string(t);
                return false;
            }
        }
        detail = std::to_string(docs_checked) + " documents checked";
        return docs_checked >= 200;
    });

    criterion(7, "normalization equalizes group means (rel err < 1e-9)", 0.0,
              [](std::string& detail) {
        std::mt19937_64 rng(7001);
        for (int t = 0; t < 20; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(3, 10);
            auto map = random_connected_map(nodes(rng), 2, rng);
            DistanceMatrix matrix(map);
            auto table = group_statistics(map, matrix, {});
            double mean1 = table.group(1).mean;
            for (const auto& g : table.groups) {
                if (std::abs(g.mean * g.phi - mean1) / mean1 >= 1e-9) {
                    detail = "map " + std::to_string(t) + " length " + std::to_string(g.length);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(8, "tf scaling leaves every method's SCOM unchanged", 0.0,
              [](std::string& detail) {
        std::mt19937_64 rng(8001);
        MethodConfig cfg;
        for (int t = 0; t < 30; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(4, 7);
            auto map = random_connected_map(nodes(rng), 2, rng);
            DistanceMatrix matrix(map);
            CandidateTopicSet candidates(map, {});
            auto table = group_statistics(map, matrix, candidates.spec());
            std::uniform_int_distribution<std::size_t> cl(2, map.size());
            auto doc = random_document(map, cl(rng), 1, 40, rng);
            Topic c = scom_curve_fitting(doc, map, matrix, candidates, table, cfg).scom;
            Topic p = scom_penalty_voting(doc, map, matrix, candidates, table, cfg).scom;
            Topic n = scom_noise_voting(doc, map, matrix, candidates, table, cfg).scom;
            for (std::uint64_t k : {2ull, 5ull, 10ull}) {
                auto s = doc.scaled(k);
                if (scom_curve_fitting(s, map, matrix, candidates, table, cfg).scom != c ||
                    scom_penalty_voting(s, map, matrix, candidates, table, cfg).scom != p ||
                    scom_noise_voting(s, map, matrix, candidates, table, cfg).scom != n) {
                    detail = "case " + std::to_string(t) + " scale " + std::to_string(k);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(9, "parameter-zero degeneration and large-alpha convergence", 0.0,
              [](std::string& detail) {
        Ctx ctx;
        auto doc = fixtures::tau(ctx.map);
        const double m = static_cast<double>(doc.length());
        // Full-ranking equality over all 62 topics: the penalty objective at
        // alpha = 0 and the noise objective at delta = 0 must order the topic
        // space exactly as the normalized distance does.
        struct Entry {
            Topic t;
            double norm, pen0, noise0;
        };
        std::vector<Entry> entries;
        for (Topic t : ctx.candidates.topics()) {
            double raw = 0.0;
            for (const auto& [idx, count] : doc.entries()) {
                raw += static_cast<double>(count) * concept_topic_distance(idx, t, ctx.matrix);
            }
            Entry e;
            e.t = t;
            e.norm = ctx.table.phi(t.length()) / m * raw;
            e.pen0 = 0.0 * t.length() + e.norm;
            e.noise0 = noisy_phi(ctx.table, t.length(), 0.0) * (e.norm / ctx.table.phi(t.length()) + 0.0);
            entries.push_back(e);
        }
        auto order = [&](auto key) {
            std::vector<std::size_t> idx(entries.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                double va = key(entries[a]), vb = key(entries[b]);
                if (va != vb) return va < vb;
                return topic_less(entries[a].t, entries[b].t);
            });
            return idx;
        };
        auto by_norm = order([](const Entry& e) { return e.norm; });
        auto by_pen = order([](const Entry& e) { return e.pen0; });
        auto by_noise = order([](const Entry& e) { return e.noise0; });
        if (by_pen != by_norm || by_noise != by_norm) {
            detail = "ranking differs at parameter zero";
            return false;
        }

        // alpha = 10 pushes every winner to length 1.
        std::mt19937_64 rng(9001);
        MethodConfig big;
        big.alpha_start = 10.0;
        for (int t = 0; t < 30; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(4, 7);
            auto map = random_connected_map(nodes(rng), 2, rng);
            DistanceMatrix matrix(map);
            CandidateTopicSet candidates(map, {});
            auto table = group_statistics(map, matrix, candidates.spec());
            std::uniform_int_distribution<std::size_t> cl(2, map.size());
            auto doc2 = random_document(map, cl(rng), 1, 40, rng);
            auto res = scom_penalty_voting(doc2, map, matrix, candidates, table, big);
            if (res.votes.back().length != 1) {
                detail = "alpha=10 winner has length " +
                         std::to_string(res.votes.back().length);
                return false;
            }
        }
        return true;
    });

    criterion(10, "one-SCOM equals the exhaustive medoid", 0.0, [](std::string& detail) {
        std::mt19937_64 rng(10001);
        for (int t = 0; t < 50; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(2, 12);
            auto map = random_connected_map(nodes(rng), 3, rng);
            DistanceMatrix matrix(map);
            std::uniform_int_distribution<std::size_t> cl(1, map.size());
            auto doc = random_document(map, cl(rng), 1, 40, rng);
            auto res = one_scom(doc, matrix);
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_node = 0;
            for (std::size_t node = 0; node < map.size(); ++node) {
                double cost = 0.0;
                for (const auto& [idx, count] : doc.entries()) {
                    cost += static_cast<double>(count) * matrix.squared(idx, node);
                }
                if (cost < best) {
                    best = cost;
                    best_node = node;
                }
            }
            if (res.cost != best || res.scom.members() != std::vector<std::size_t>{best_node}) {
                detail = "case " + std::to_string(t);
                return false;
            }
        }
        return true;
    });

    criterion(11, "PAM cost bounded below by the exhaustive optimum", 0.0,
              [](std::string& detail) {
        std::mt19937_64 rng(11001);
        int equal = 0;
        const int total = 20;
        for (int t = 0; t < total; ++t) {
            std::uniform_int_distribution<std::size_t> nodes(4, 8), kk(1, 3);
            auto map = random_connected_map(nodes(rng), 2, rng);
            DistanceMatrix matrix(map);
            std::uniform_int_distribution<std::size_t> cl(2, map.size());
            auto doc = random_document(map, cl(rng), 1, 20, rng);
            std::size_t k = kk(rng);
            auto res = pam_k_scom(doc, map, matrix, k, 1);
            // Exhaustive optimum over all center sets of size k.
            std::vector<std::size_t> comb(k);
            for (std::size_t i = 0; i < k; ++i) comb[i] = i;
            double opt = std::numeric_limits<double>::infinity();
            const std::size_t n = map.size();
            while (true) {
                double cost = 0.0;
                for (const auto& [idx, count] : doc.entries()) {
                    double d = std::numeric_limits<double>::infinity();
                    for (auto c : comb) d = std::min(d, matrix.squared(idx, c));
                    cost += static_cast<double>(count) * d;
                }
                opt = std::min(opt, cost);
                std::size_t i = k;
                bool done = true;
                while (i-- > 0) {
                    if (comb[i] != n - k + i) {
                        done = false;
                        break;
                    }
                }
                if (done) break;
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            }
            if (res.cost < opt - 1e-9) {
                detail = "PAM beat the exhaustive optimum (bug) on case " + std::to_string(t);
                return false;
            }
            if (std::abs(res.cost - opt) < 1e-9) ++equal;
        }
        detail = "optimal in " + std::to_string(equal) + "/" + std::to_string(total) +
                 " cases (informational)";
        return true;
    });

    criterion(12, "sequence vector oracle and order sensitivity", 0.0,
              [](std::string& detail) {
        Ctx ctx;
        ScoreConfig norm;
        auto fwd = sequential_vector(SequentialDocument::from_labels(ctx.map, {{"A", "B", "C"}}),
                                     ctx.map, ctx.candidates, ctx.matrix, ctx.table, norm);
        Topic c = topic_from_labels(ctx.map, {"C"});
        std::size_t ci = 0;
        for (; ci < fwd.topics.size(); ++ci) {
            if (fwd.topics[ci] == c) break;
        }
        if (std::abs(fwd.values[ci] - 31.0 / 18.0) > 1e-9) {
            detail = "component is " + std::to_string(fwd.values[ci]);
            return false;
        }
        auto rev = sequential_vector(SequentialDocument::from_labels(ctx.map, {{"C", "B", "A"}}),
                                     ctx.map, ctx.candidates, ctx.matrix, ctx.table, norm);
        if (!(cosine_similarity(fwd, rev) < 1.0 - 1e-6)) {
            detail = "reversal is not distinguished";
            return false;
        }
        return true;
    });

    criterion(13, "champion/vote table schemas and 0/1 agreement rule", 0.0,
              [](std::string& detail) {
        auto base = " --graph " + g_dir + "/map.txt --doc " + g_dir + "/doc.txt";
        auto [rc1, curve] = run_cli("analyze --method curve" + base);
        if (rc1 != 0 ||
            curve.find("Topic_len,Topic,Distance,Mean,SD,Actual,Supposed,Final") ==
                std::string::npos) {
            detail = "champion table header missing";
            return false;
        }
        auto [rc2, pen] = run_cli("analyze --method penalty" + base);
        if (rc2 != 0 ||
            pen.find("Topic,Distance,Topic-len,alpha,Votes counter") == std::string::npos) {
            detail = "alpha vote table header missing";
            return false;
        }
        auto [rc3, noise] = run_cli("analyze --method noise" + base);
        if (rc3 != 0 ||
            noise.find("Topic,Distance,Topic-len,Noise,Votes counter") == std::string::npos) {
            detail = "noise vote table header missing";
            return false;
        }
        // The 0/1 scoring rule on synthetic outcomes.
        auto map = fixtures::six_concept_map();
        AgreementCase c;
        c.curve = c.penalty = topic_from_labels(map, {"A"});
        c.noise = topic_from_labels(map, {"B"});
        score_agreement(c);
        if (c.score_curve != 1 || c.score_penalty != 1 || c.score_noise != 0) {
            detail = "dissenter rule broken";
            return false;
        }
        c.noise = c.curve;
        score_agreement(c);
        if (c.score_curve + c.score_penalty + c.score_noise != 3) {
            detail = "unanimous rule broken";
            return false;
        }
        c.curve = topic_from_labels(map, {"C"});
        c.penalty = topic_from_labels(map, {"D"});
        c.noise = topic_from_labels(map, {"E"});
        score_agreement(c);
        if (c.score_curve + c.score_penalty + c.score_noise != 0) {
            detail = "total-disagreement rule broken";
            return false;
        }
        return true;
    });

    criterion(14, "seeded commands byte-identical across runs and worker counts", 0.0,
              [](std::string& detail) {
        auto base = " --graph " + g_dir + "/map.txt --doc " + g_dir + "/doc.txt";
        std::vector<std::pair<std::string, std::string>> cases = {
            {"analyze w1 vs w8",
             "analyze --method noise --format json --seed 3" + base + " --workers "},
            {"analyze curve w1 vs w8",
             "analyze --method curve --seed 3" + base + " --workers "},
        };
        for (const auto& [name, cmd] : cases) {
            auto [r1, o1] = run_cli(cmd + "1");
            auto [r2, o2] = run_cli(cmd + "8");
            auto [r3, o3] = run_cli(cmd + "8");
            if (r1 != 0 || r2 != 0 || r3 != 0 || o1 != o2 || o2 != o3) {
                detail = name + " differs";
                return false;
            }
        }
        std::vector<std::string> repeats = {
            "stats --graph " + g_dir + "/map.txt --seed 7",
            "experiment agreement --cases 3 --nodes 6 --concept-length 3 --seed 5",
            "experiment similarity --docs 12 --nodes 7 --concept-length 3 --seed 5",
            "experiment partiality --docs 5 --nodes 7 --concept-length 3 --seed 5",
        };
        for (const auto& cmd : repeats) {
            auto [r1, o1] = run_cli(cmd);
            auto [r2, o2] = run_cli(cmd);
            if (r1 != 0 || r2 != 0 || o1 != o2 || o1.empty()) {
                detail = "repeat of '" + cmd + "' differs";
                return false;
            }
        }
        return true;
    });

    if (g_failures == 0) {
        std::printf("all 14 criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", g_failures);
    }
    return g_failures;
}
