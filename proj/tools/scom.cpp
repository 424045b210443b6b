// Command-line front end: SCOM discovery, distance tables, vectorization,
// semantic-network construction, clustering, partitioning, ranking, training
// and the experiment harnesses. CSV or JSON on stdout or --out.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "umstm/cluster.hpp"
#include "umstm/experiments.hpp"
#include "umstm/pmi.hpp"
#include "umstm/retrieval.hpp"
#include "umstm/scom.hpp"
#include "umstm/sequential.hpp"

using json = nlohmann::ordered_json;
using namespace umstm;

namespace {

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Common {
    std::string graph_path;
    std::string doc_path;
    std::string out_path;
    std::string format = "csv";
    std::string topics = "all";
    std::string whitelist;
    std::uint64_t seed = 1;
    int workers = 1;

    void attach(CLI::App* app, bool need_graph = true, bool need_doc = false) {
        auto* g = app->add_option("--graph", graph_path, "edge-list graph file");
        if (need_graph) g->required();
        auto* d = app->add_option("--doc", doc_path, "bag-of-concepts document file");
        if (need_doc) d->required();
        app->add_option("--out", out_path, "output file (default stdout)");
        app->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        app->add_option("--topics", topics, "all | len=K | maxlen=P | connected");
        app->add_option("--whitelist", whitelist, "comma-separated concept whitelist");
        app->add_option("--seed", seed, "random seed");
        app->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    }

    TopicStrategySpec strategy() const {
        TopicStrategySpec spec;
        if (topics == "all") {
            spec.strategy = TopicStrategy::All;
        } else if (topics == "connected") {
            spec.strategy = TopicStrategy::ConnectedOnly;
        } else if (topics.rfind("len=", 0) == 0) {
            spec.strategy = TopicStrategy::LengthExact;
            spec.k = std::stoi(topics.substr(4));
        } else if (topics.rfind("maxlen=", 0) == 0) {
            spec.strategy = TopicStrategy::LengthAtMost;
            spec.k = std::stoi(topics.substr(7));
        } else {
            throw CLI::ValidationError("--topics", "expected all|len=K|maxlen=P|connected");
        }
        if (!whitelist.empty()) {
            std::stringstream ss(whitelist);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) spec.whitelist.push_back(item);
            }
        }
        return spec;
    }

    // Writes to --out or stdout; returns the sink.
    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw DataError("cannot open output file " + out_path);
            f << text;
        }
    }
};

std::string champion_csv(const std::vector<ChampionRecord>& records,
                         const UnderstandingMap& map) {
    std::string out = "Topic_len,Topic,Distance,Mean,SD,Actual,Supposed,Final\n";
    for (const auto& r : records) {
        out += std::to_string(r.length) + "," + r.champion.label(map) + "," +
               fmt(r.distance) + "," + fmt(r.group_mean) + "," + fmt(r.group_sd) + "," +
               fmt(r.score) + "," + fmt(r.fitted) + "," + fmt(r.margin);
        if (r.excluded) out += ",excluded:" + r.exclusion_reason;
        out += "\n";
    }
    return out;
}

std::string vote_csv(const std::vector<VoteRow>& votes, const UnderstandingMap& map,
                     const std::string& param_name) {
    std::string out = "Topic,Distance,Topic-len," + param_name + ",Votes counter\n";
    for (const auto& v : votes) {
        out += v.topic.label(map) + "," + fmt(v.distance) + "," + std::to_string(v.length) +
               "," + fmt(v.param, 2) + "," + std::to_string(v.votes) + "\n";
    }
    return out;
}

json champion_json(const std::vector<ChampionRecord>& records, const UnderstandingMap& map) {
    json arr = json::array();
    for (const auto& r : records) {
        json row;
        row["length"] = r.length;
        row["topic"] = r.champion.label(map);
        json co = json::array();
        for (const auto& t : r.co_champions) co.push_back(t.label(map));
        row["co_champions"] = co;
        row["distance"] = fmt(r.distance);
        row["mean"] = fmt(r.group_mean);
        row["sd"] = fmt(r.group_sd);
        row["actual"] = fmt(r.score);
        row["supposed"] = fmt(r.fitted);
        row["final"] = fmt(r.margin);
        if (r.excluded) row["excluded"] = r.exclusion_reason;
        arr.push_back(row);
    }
    return arr;
}

json result_json(const ScomResult& res, const UnderstandingMap& map) {
    json j;
    j["method"] = res.method;
    j["scom"] = res.scom.label(map);
    json co = json::array();
    for (const auto& t : res.co_scoms) co.push_back(t.label(map));
    j["co_scoms"] = co;
    j["champions"] = champion_json(res.champions, map);
    if (!res.votes.empty()) {
        json votes = json::array();
        for (const auto& v : res.votes) {
            votes.push_back({{"topic", v.topic.label(map)},
                             {"distance", fmt(v.distance)},
                             {"length", v.length},
                             {"param", fmt(v.param, 2)},
                             {"votes", v.votes}});
        }
        j["votes"] = votes;
    }
    if (res.curve_degree >= 0) {
        j["curve_degree"] = res.curve_degree;
        json coeffs = json::array();
        for (double c : res.curve_coeffs) coeffs.push_back(fmt(c));
        j["curve_coeffs"] = coeffs;
    }
    return j;
}

int cmd_analyze(const Common& common, const std::string& method, const MethodConfig& cfg) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    Document doc = load_document(map, common.doc_path);
    CandidateTopicSet candidates(map, common.strategy());
    GroupStatisticsOptions opts;
    opts.power = cfg.power;
    opts.seed = common.seed;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);

    if (method == "one") {
        OneScomResult res = one_scom(doc, matrix);
        if (common.format == "json") {
            json j;
            j["method"] = "one-scom";
            j["scom"] = res.scom.label(map);
            json co = json::array();
            for (const auto& t : res.co_scoms) co.push_back(t.label(map));
            j["co_scoms"] = co;
            j["cost"] = fmt(res.cost);
            common.emit(j.dump(2) + "\n");
        } else {
            common.emit("Method,SCOM,Cost\none-scom," + res.scom.label(map) + "," +
                        fmt(res.cost) + "\n");
        }
        return 0;
    }

    ScomResult res;
    if (method == "curve") {
        res = scom_curve_fitting(doc, map, matrix, candidates, table, cfg);
    } else if (method == "penalty") {
        res = scom_penalty_voting(doc, map, matrix, candidates, table, cfg);
    } else {
        res = scom_noise_voting(doc, map, matrix, candidates, table, cfg);
    }

    if (common.format == "json") {
        common.emit(result_json(res, map).dump(2) + "\n");
    } else {
        std::string out = "Method,SCOM\n" + res.method + "," + res.scom.label(map) + "\n\n";
        out += champion_csv(res.champions, map);
        if (!res.votes.empty()) {
            out += "\n" + vote_csv(res.votes, map, method == "penalty" ? "alpha" : "Noise");
        }
        common.emit(out);
    }
    return 0;
}

int cmd_distance_table(const Common& common, double delta, bool normalized) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    CandidateTopicSet candidates(map, common.strategy());
    GroupStatisticsOptions opts;
    opts.delta = delta;
    opts.seed = common.seed;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);

    std::string out = ",Topic";
    for (const auto& c : map.concepts()) out += "," + c;
    out += "\n";
    std::size_t row = 0;
    for (Topic t : candidates.topics()) {
        out += std::to_string(row++) + "," + t.label(map);
        double phi = normalized ? table.phi(t.length()) : 1.0;
        for (std::size_t c = 0; c < map.size(); ++c) {
            double d = concept_topic_distance(c, t, matrix) + delta;
            out += "," + fmt(phi * d);
        }
        out += "\n";
    }
    common.emit(out);
    return 0;
}

int cmd_stats(const Common& common, double delta) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    GroupStatisticsOptions base;
    base.seed = common.seed;
    GroupStatisticsOptions noisy = base;
    noisy.delta = delta;
    NormalizationTable t0 = group_statistics(map, matrix, common.strategy(), base);
    NormalizationTable tn = group_statistics(map, matrix, common.strategy(), noisy);

    if (common.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < t0.groups.size(); ++i) {
            const auto& g = t0.groups[i];
            const auto& n = tn.groups[i];
            arr.push_back({{"length", g.length},
                           {"avg_dis", fmt(g.mean)},
                           {"norm_factor", fmt(g.phi)},
                           {"avg_dis_norm", fmt(g.mean * g.phi)},
                           {"data_sparse", fmt(g.sparsity)},
                           {"avg_dis_noise", fmt(n.mean)},
                           {"norm_factor_noise", fmt(n.phi)},
                           {"avg_dis_norm_noise", fmt(n.mean * n.phi)},
                           {"data_sparse_noise", fmt(n.sparsity)}});
        }
        common.emit(arr.dump(2) + "\n");
        return 0;
    }
    std::string out =
        "Topic_len,Avg_dis,Norm_factor,Avg_dis_norm,Data_sparse,"
        "Avg_dis_noise,Norm_factor_noise,Avg_dis_norm_noise,Data_sparse_noise\n";
    for (std::size_t i = 0; i < t0.groups.size(); ++i) {
        const auto& g = t0.groups[i];
        const auto& n = tn.groups[i];
        out += std::to_string(g.length) + "," + fmt(g.mean, 2) + "," + fmt(g.phi, 2) + "," +
               fmt(g.mean * g.phi, 2) + "," + fmt(g.sparsity, 2) + "," + fmt(n.mean, 2) + "," +
               fmt(n.phi, 2) + "," + fmt(n.mean * n.phi, 2) + "," + fmt(n.sparsity, 2) + "\n";
    }
    common.emit(out);
    return 0;
}

std::string vector_csv(const DocumentVector& vec, const UnderstandingMap& map) {
    std::string out = "Topic,Value\n";
    for (std::size_t i = 0; i < vec.topics.size(); ++i) {
        out += vec.topics[i].label(map) + "," + fmt(vec.values[i]) + "\n";
    }
    return out;
}

json vector_json(const DocumentVector& vec, const UnderstandingMap& map) {
    json arr = json::array();
    for (std::size_t i = 0; i < vec.topics.size(); ++i) {
        arr.push_back({{"topic", vec.topics[i].label(map)}, {"value", fmt(vec.values[i])}});
    }
    return arr;
}

int cmd_vectorize(const Common& common, const ScoreConfig& cfg) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    Document doc = load_document(map, common.doc_path);
    CandidateTopicSet candidates(map, common.strategy());
    GroupStatisticsOptions opts;
    opts.delta = cfg.delta;
    opts.power = cfg.power;
    opts.seed = common.seed;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);
    DocumentVector vec = vectorize(doc, candidates, matrix, table, cfg);
    if (common.format == "json") {
        common.emit(vector_json(vec, map).dump(2) + "\n");
    } else {
        common.emit(vector_csv(vec, map));
    }
    return 0;
}

int cmd_seq_vectorize(const Common& common, const std::string& seq_path, bool segmented,
                      const ScoreConfig& cfg) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    SequentialDocument seq = load_sequence(map, seq_path);
    CandidateTopicSet candidates(map, common.strategy());
    GroupStatisticsOptions opts;
    opts.delta = cfg.delta;
    opts.power = cfg.power;
    opts.seed = common.seed;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);
    DocumentVector vec = segmented
                             ? segmented_sequential_vector(seq, map, candidates, matrix, table, cfg)
                             : sequential_vector(seq, map, candidates, matrix, table, cfg);
    if (common.format == "json") {
        common.emit(vector_json(vec, map).dump(2) + "\n");
    } else {
        common.emit(vector_csv(vec, map));
    }
    return 0;
}

int cmd_pmi_build(const Common& common, const std::string& corpus_path, bool prune) {
    auto corpus = load_corpus(corpus_path);
    CorpusStats stats = CorpusStats::compute(corpus);
    PmiGraph complete = build_complete_graph(stats);

    auto rational_str = [](const Rational& r) {
        return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    };

    PruneResult pruned;
    if (prune) pruned = prune_redundant_edges(complete);
    const PmiGraph& g = prune ? pruned.graph : complete;

    if (common.format == "json") {
        json j;
        j["concepts"] = g.concepts;
        json edges = json::array();
        for (const auto& e : g.edges) {
            edges.push_back({{"a", g.concepts[e.a]},
                             {"b", g.concepts[e.b]},
                             {"weight", rational_str(e.weight)}});
        }
        j["edges"] = edges;
        json inf = json::array();
        for (const auto& [a, b] : g.infinite_pairs) {
            inf.push_back({g.concepts[a], g.concepts[b]});
        }
        j["infinite_pairs"] = inf;
        if (prune) {
            json rem = json::array();
            for (const auto& [a, b] : pruned.removed) rem.push_back({a, b});
            j["removed"] = rem;
        }
        common.emit(j.dump(2) + "\n");
    } else {
        // Edge-list output, loadable straight back into the graph reader.
        std::string out;
        for (const auto& e : g.edges) {
            out += g.concepts[e.a] + " " + g.concepts[e.b] + " " +
                   fmt(boost::rational_cast<double>(e.weight)) + "\n";
        }
        for (const auto& [a, b] : g.infinite_pairs) {
            out += "# infinite: " + g.concepts[a] + " " + g.concepts[b] + "\n";
        }
        if (prune) {
            for (const auto& [a, b] : pruned.removed) {
                out += "# removed: " + a + " " + b + "\n";
            }
        }
        common.emit(out);
    }
    return 0;
}

int cmd_cluster(const Common& common, std::size_t k, const std::string& algorithm) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    Document doc = load_document(map, common.doc_path);
    ClusterAssignment res = algorithm == "pam"
                                ? pam_k_scom(doc, map, matrix, k, common.seed)
                                : kmeans_on_graph(doc, map, matrix, k, common.seed);
    auto dist = distribution_over_subtopics(doc, res.centers, matrix);

    if (common.format == "json") {
        json j;
        j["algorithm"] = algorithm;
        j["k"] = k;
        json centers = json::array();
        for (std::size_t c : res.centers) centers.push_back(map.label(c));
        j["centers"] = centers;
        j["cost"] = fmt(res.cost);
        j["iterations"] = res.iterations;
        json d = json::array();
        for (const auto& [c, p] : dist) {
            d.push_back({{"center", map.label(c)}, {"proportion", fmt(p)}});
        }
        j["distribution"] = d;
        common.emit(j.dump(2) + "\n");
    } else {
        std::string out = "Center,Proportion\n";
        for (const auto& [c, p] : dist) out += map.label(c) + "," + fmt(p) + "\n";
        out += "\nCost," + fmt(res.cost) + "\nIterations," + std::to_string(res.iterations) +
               "\n";
        common.emit(out);
    }
    return 0;
}

int cmd_partition(const Common& common, const MethodConfig& cfg) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    PartitionResult res = partition_graph(map, matrix, cfg);

    if (common.format == "json") {
        json j;
        j["k"] = res.k;
        json centers = json::array();
        for (std::size_t c : res.centers) centers.push_back(map.label(c));
        j["centers"] = centers;
        json co = json::array();
        for (const auto& t : res.co_champion_sets) co.push_back(t.label(map));
        j["co_center_sets"] = co;
        json assign = json::array();
        for (std::size_t node = 0; node < map.size(); ++node) {
            assign.push_back({{"concept", map.label(node)},
                              {"center", map.label(res.centers[res.node_assignment[node]])}});
        }
        j["assignment"] = assign;
        common.emit(j.dump(2) + "\n");
    } else {
        std::string out = "Concept,Center\n";
        for (std::size_t node = 0; node < map.size(); ++node) {
            out += map.label(node) + "," + map.label(res.centers[res.node_assignment[node]]) +
                   "\n";
        }
        common.emit(out);
    }
    return 0;
}

int cmd_rank(const Common& common, const std::string& needs_text,
             const std::string& docs_path) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    NeedsDistribution needs = parse_needs(map, needs_text);

    // One document distribution per line: `<id> <concept:weight,...>`.
    std::ifstream f(docs_path);
    if (!f) throw DataError("cannot open document list " + docs_path);
    std::vector<std::pair<std::string, ScomDistribution>> docs;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string id, spec;
        ss >> id >> spec;
        if (id.empty() || spec.empty()) throw DataError("bad ranking line: " + line);
        docs.emplace_back(id, parse_needs(map, spec));
    }
    auto ranked = rank_documents(needs, docs, matrix);

    if (common.format == "json") {
        json arr = json::array();
        for (const auto& r : ranked) arr.push_back({{"id", r.id}, {"score", fmt(r.score)}});
        common.emit(arr.dump(2) + "\n");
    } else {
        std::string out = "Rank,Doc,Score\n";
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            out += std::to_string(i + 1) + "," + ranked[i].id + "," + fmt(ranked[i].score) +
                   "\n";
        }
        common.emit(out);
    }
    return 0;
}

int cmd_train(const Common& common, const std::string& method_name,
              const std::string& train_path, double grid_start, double grid_step,
              std::size_t grid_count) {
    UnderstandingMap map = load_map(common.graph_path);
    DistanceMatrix matrix(map);
    CandidateTopicSet candidates(map, common.strategy());
    GroupStatisticsOptions opts;
    opts.seed = common.seed;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);

    // Training file: `<tag-labels joined by +> <concept:count> <concept:count> ...`
    std::ifstream f(train_path);
    if (!f) throw DataError("cannot open training file " + train_path);
    std::vector<TrainingExample> training;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag, token;
        ss >> tag;
        std::vector<ConceptId> tag_labels;
        std::stringstream ts(tag);
        std::string part;
        while (std::getline(ts, part, '+')) tag_labels.push_back(part);
        std::vector<std::pair<ConceptId, std::uint64_t>> counts;
        while (ss >> token) {
            auto colon = token.find(':');
            if (colon == std::string::npos) throw DataError("bad count token: " + token);
            counts.emplace_back(token.substr(0, colon),
                                std::stoull(token.substr(colon + 1)));
        }
        training.push_back(TrainingExample{Document::from_counts(map, counts),
                                           topic_from_labels(map, tag_labels)});
    }

    std::vector<double> grid;
    for (std::size_t i = 0; i < grid_count; ++i) grid.push_back(grid_start + grid_step * i);
    TrainedMethod method = method_name == "noise" ? TrainedMethod::Noise : TrainedMethod::Penalty;
    TrainingResult res = train_supervised_parameter(training, method, grid, map, matrix,
                                                    candidates, table, common.workers);

    if (common.format == "json") {
        json j;
        j["method"] = method_name;
        j["best_param"] = fmt(res.best_param, 4);
        j["best_objective"] = fmt(res.best_objective);
        json trace = json::array();
        for (const auto& [p, o] : res.trace) {
            trace.push_back({{"param", fmt(p, 4)}, {"objective", fmt(o)}});
        }
        j["trace"] = trace;
        common.emit(j.dump(2) + "\n");
    } else {
        std::string out = "Param,Objective\n";
        for (const auto& [p, o] : res.trace) out += fmt(p, 4) + "," + fmt(o) + "\n";
        out += "\nBest," + fmt(res.best_param, 4) + "," + fmt(res.best_objective) + "\n";
        common.emit(out);
    }
    return 0;
}

int cmd_experiment_partiality(const Common& common, std::size_t docs, std::size_t nodes,
                              std::size_t extra_edges, std::size_t concept_length,
                              std::uint64_t tf_max) {
    std::mt19937_64 rng(common.seed);
    UnderstandingMap map = common.graph_path.empty()
                               ? random_connected_map(nodes, extra_edges, rng)
                               : load_map(common.graph_path);
    DistanceMatrix matrix(map);
    std::vector<Document> generated;
    std::size_t cl = std::min<std::size_t>(concept_length, map.size());
    for (std::size_t i = 0; i < docs; ++i) {
        generated.push_back(random_document(map, cl, 1, tf_max, rng));
    }
    auto rows = run_partiality_experiment(map, matrix, generated, common.workers);

    if (common.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"doc", r.doc_index},
                           {"length", r.length},
                           {"champion_score", fmt(r.champion_score)}});
        }
        common.emit(arr.dump(2) + "\n");
    } else {
        std::string out = "Doc,Topic_len,Champion_score\n";
        for (const auto& r : rows) {
            out += std::to_string(r.doc_index) + "," + std::to_string(r.length) + "," +
                   fmt(r.champion_score) + "\n";
        }
        common.emit(out);
    }
    return 0;
}

int cmd_experiment_agreement(const Common& common, const AgreementSpec& spec) {
    AgreementSummary summary = run_agreement_experiment(spec);
    // Rebuild per-case maps just for labeling; cheap at these sizes.
    std::mt19937_64 rng(spec.seed);

    if (common.format == "json") {
        json j;
        json cases = json::array();
        for (const auto& c : summary.cases) {
            UnderstandingMap map = random_connected_map(spec.nodes, spec.extra_edges, rng);
            random_document(map, spec.concept_length, 1, spec.tf_max, rng);
            cases.push_back({{"case", c.case_index},
                             {"curve", c.curve.label(map)},
                             {"penalty", c.penalty.label(map)},
                             {"noise", c.noise.label(map)},
                             {"score_curve", c.score_curve},
                             {"score_penalty", c.score_penalty},
                             {"score_noise", c.score_noise}});
        }
        j["cases"] = cases;
        j["unanimous_rate"] = fmt(summary.unanimous_rate, 4);
        j["at_least_two_rate"] = fmt(summary.at_least_two_rate, 4);
        common.emit(j.dump(2) + "\n");
    } else {
        std::string out = "Doc_ID,Curve_fitting,AIC,Noise,Agreement\n";
        for (const auto& c : summary.cases) {
            out += std::to_string(c.case_index + 1) + "," + std::to_string(c.score_curve) +
                   "," + std::to_string(c.score_penalty) + "," +
                   std::to_string(c.score_noise) + "," +
                   std::to_string(c.score_curve + c.score_penalty + c.score_noise) + "\n";
        }
        out += "\nUnanimous_rate," + fmt(summary.unanimous_rate, 4) + "\nAt_least_two_rate," +
               fmt(summary.at_least_two_rate, 4) + "\n";
        common.emit(out);
    }
    return 0;
}

int cmd_experiment_similarity(const Common& common, const SimilaritySpec& spec) {
    auto rows = run_similarity_experiment(spec);
    if (common.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"rank", r.rank},
                           {"tf", r.tf_doc},
                           {"tf_similarity", fmt(r.tf_similarity)},
                           {"scom", r.scom_doc},
                           {"scom_similarity", fmt(r.scom_similarity)},
                           {"scom_no_norm", r.scom_no_norm_doc},
                           {"scom_no_norm_similarity", fmt(r.scom_no_norm_similarity)}});
        }
        common.emit(arr.dump(2) + "\n");
    } else {
        std::string out = "Rank,TF,SCOM,SCOM-no-norm\n";
        for (const auto& r : rows) {
            out += std::to_string(r.rank) + "," + r.tf_doc + "," + r.scom_doc + "," +
                   r.scom_no_norm_doc + "\n";
        }
        common.emit(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concept-graph supervised topic analysis"};
    app.require_subcommand(1);

    Common common;
    MethodConfig method_cfg;
    ScoreConfig score_cfg;
    std::string method = "curve";
    std::string score_mode = "normalized";
    std::string curve_score = "zscore";
    double delta = 0.2;       // stats noise columns
    double dist_delta = 0.0;  // distance-table noise level
    bool normalized = false;
    bool segmented = false;
    bool prune = false;
    std::string seq_path, corpus_path, needs_text, docs_path, train_path;
    std::string algorithm = "kmeans";
    std::size_t k = 2;
    double grid_start = 0.1, grid_step = 0.1;
    std::size_t grid_count = 20;
    std::size_t exp_docs = 100, exp_nodes = 10, exp_extra = 4, exp_cl = 4, exp_top_k = 10;
    std::uint64_t exp_tf_max = 40;
    std::size_t exp_cases = 22;

    auto add_method_flags = [&](CLI::App* cmd) {
        cmd->add_option("--alpha-start", method_cfg.alpha_start);
        cmd->add_option("--alpha-step", method_cfg.alpha_step);
        cmd->add_option("--delta-start", method_cfg.delta_start);
        cmd->add_option("--delta-step", method_cfg.delta_step);
        cmd->add_option("--max-iterations", method_cfg.max_iterations);
        cmd->add_option("--curve-score", curve_score, "zscore | raw | log")
            ->check(CLI::IsMember({"zscore", "raw", "log"}));
    };

    auto* analyze = app.add_subcommand("analyze", "discover a document's SCOM");
    common.attach(analyze, true, true);
    analyze->add_option("--method", method, "curve | penalty | noise | one")
        ->check(CLI::IsMember({"curve", "penalty", "noise", "one"}));
    add_method_flags(analyze);

    auto* dist = app.add_subcommand("distance-table", "topic-by-concept distance table");
    common.attach(dist);
    dist->add_option("--delta", dist_delta, "noise level");
    dist->add_flag("--normalized", normalized, "apply the per-length factor");

    auto* stats = app.add_subcommand("stats", "per-length group statistics");
    common.attach(stats);
    stats->add_option("--delta", delta, "noise level for the noise columns");

    auto* vec = app.add_subcommand("vectorize", "document-to-domain distance vector");
    common.attach(vec, true, true);
    vec->add_option("--mode", score_mode, "normalized | raw")
        ->check(CLI::IsMember({"normalized", "raw"}));

    auto* seqv = app.add_subcommand("seq-vectorize", "sequential document vector");
    common.attach(seqv);
    seqv->add_option("--sequence", seq_path, "one concept per line, blank = segment")
        ->required();
    seqv->add_flag("--segmented", segmented, "mean over segments");
    seqv->add_option("--mode", score_mode, "normalized | raw")
        ->check(CLI::IsMember({"normalized", "raw"}));

    auto* pmi = app.add_subcommand("pmi-build", "co-occurrence semantic network");
    common.attach(pmi, false);
    pmi->add_option("--corpus", corpus_path, "one document per line")->required();
    pmi->add_flag("--prune", prune, "remove redundant edges");

    auto* cluster = app.add_subcommand("cluster", "K-SCOM clustering");
    common.attach(cluster, true, true);
    cluster->add_option("--k", k, "cluster count")->required();
    cluster->add_option("--algorithm", algorithm, "kmeans | pam")
        ->check(CLI::IsMember({"kmeans", "pam"}));

    auto* partition = app.add_subcommand("partition", "partition the graph itself");
    common.attach(partition);
    add_method_flags(partition);

    auto* rank = app.add_subcommand("rank", "rank documents against a needs distribution");
    common.attach(rank);
    rank->add_option("--needs", needs_text, "concept:weight,...")->required();
    rank->add_option("--docs", docs_path, "per-line `<id> <concept:weight,...>`")->required();

    auto* train = app.add_subcommand("train", "tune alpha or delta on tagged documents");
    common.attach(train);
    train->add_option("--method", method, "penalty | noise")
        ->check(CLI::IsMember({"penalty", "noise"}));
    train->add_option("--train", train_path, "tagged training documents")->required();
    train->add_option("--grid-start", grid_start);
    train->add_option("--grid-step", grid_step);
    train->add_option("--grid-count", grid_count);

    auto* experiment = app.add_subcommand("experiment", "seeded experiment harnesses");
    experiment->require_subcommand(1);
    auto* partiality = experiment->add_subcommand("partiality", "champion score vs length");
    common.attach(partiality, false);
    partiality->add_option("--docs", exp_docs, "generated document count");
    partiality->add_option("--nodes", exp_nodes);
    partiality->add_option("--extra-edges", exp_extra);
    partiality->add_option("--concept-length", exp_cl);
    partiality->add_option("--tf-max", exp_tf_max);

    auto* agreement = experiment->add_subcommand("agreement", "three-method agreement");
    common.attach(agreement, false);
    agreement->add_option("--cases", exp_cases);
    agreement->add_option("--nodes", exp_nodes);
    agreement->add_option("--extra-edges", exp_extra);
    agreement->add_option("--concept-length", exp_cl);
    agreement->add_option("--tf-max", exp_tf_max);

    auto* similarity = experiment->add_subcommand("similarity", "top-k neighbor tables");
    common.attach(similarity, false);
    similarity->add_option("--docs", exp_docs, "generated document count");
    similarity->add_option("--top-k", exp_top_k);
    similarity->add_option("--nodes", exp_nodes);
    similarity->add_option("--extra-edges", exp_extra);
    similarity->add_option("--concept-length", exp_cl);
    similarity->add_option("--tf-max", exp_tf_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage errors exit 1; --help exits 0
    }

    method_cfg.workers = common.workers;
    if (curve_score == "raw") method_cfg.curve_score = CurveScore::Raw;
    if (curve_score == "log") method_cfg.curve_score = CurveScore::Log;
    score_cfg.mode = score_mode == "raw" ? ScoreMode::Raw : ScoreMode::Normalized;

    try {
        if (*analyze) return cmd_analyze(common, method, method_cfg);
        if (*dist) return cmd_distance_table(common, dist_delta, normalized);
        if (*stats) return cmd_stats(common, delta);
        if (*vec) return cmd_vectorize(common, score_cfg);
        if (*seqv) return cmd_seq_vectorize(common, seq_path, segmented, score_cfg);
        if (*pmi) return cmd_pmi_build(common, corpus_path, prune);
        if (*cluster) return cmd_cluster(common, k, algorithm);
        if (*partition) return cmd_partition(common, method_cfg);
        if (*rank) return cmd_rank(common, needs_text, docs_path);
        if (*train) {
            if (method != "penalty" && method != "noise") method = "penalty";
            return cmd_train(common, method, train_path, grid_start, grid_step, grid_count);
        }
        if (*experiment) {
            if (*partiality) {
                return cmd_experiment_partiality(common, exp_docs, exp_nodes, exp_extra,
                                                 exp_cl, exp_tf_max);
            }
            if (*agreement) {
                AgreementSpec spec;
                spec.cases = exp_cases;
                spec.nodes = exp_nodes;
                spec.extra_edges = exp_extra;
                spec.concept_length = exp_cl;
                spec.tf_max = exp_tf_max;
                spec.seed = common.seed;
                spec.workers = common.workers;
                return cmd_experiment_agreement(common, spec);
            }
            SimilaritySpec spec;
            spec.documents = exp_docs;
            spec.top_k = exp_top_k;
            spec.nodes = exp_nodes;
            spec.extra_edges = exp_extra;
            spec.concept_length = exp_cl;
            spec.tf_max = exp_tf_max;
            spec.seed = common.seed;
            spec.workers = common.workers;
            return cmd_experiment_similarity(common, spec);
        }
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
