#include "umstm/experiments.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace umstm {

UnderstandingMap random_connected_map(std::size_t nodes, std::size_t extra_edges,
                                      std::mt19937_64& rng) {
    if (nodes < 2) throw DataError("random map needs at least 2 nodes");
    auto label = [](std::size_t i) { return "N" + std::to_string(i); };

    // Random spanning tree: attach each new node to a uniformly chosen
    // earlier one.
    std::vector<Edge> edges;
    std::vector<std::size_t> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        edges.push_back(Edge{label(order[pick(rng)]), label(order[i]), 1.0});
    }

    auto key = [&](const Edge& e) {
        return std::minmax(e.a, e.b);
    };
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : edges) seen.insert(key(e));

    std::uniform_int_distribution<std::size_t> any(0, nodes - 1);
    std::size_t added = 0, attempts = 0;
    while (added < extra_edges && attempts < extra_edges * 50 + 100) {
        ++attempts;
        std::size_t a = any(rng), b = any(rng);
        if (a == b) continue;
        Edge e{label(a), label(b), 1.0};
        if (!seen.insert(key(e)).second) continue;
        edges.push_back(e);
        ++added;
    }
    return UnderstandingMap::build(edges);
}

Document random_document(const UnderstandingMap& map, std::size_t concept_length,
                         std::uint64_t tf_min, std::uint64_t tf_max, std::mt19937_64& rng) {
    if (concept_length < 1 || concept_length > map.size()) {
        throw DataError("concept length out of range");
    }
    std::vector<std::size_t> pool(map.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::uint64_t> tf(tf_min, tf_max);
    std::vector<std::pair<ConceptId, std::uint64_t>> counts;
    for (std::size_t i = 0; i < concept_length; ++i) {
        counts.emplace_back(map.label(pool[i]), tf(rng));
    }
    return Document::from_counts(map, counts);
}

std::vector<PartialityRow> run_partiality_experiment(const UnderstandingMap& map,
                                                     const DistanceMatrix& matrix,
                                                     const std::vector<Document>& docs,
                                                     int workers) {
    CandidateTopicSet candidates(map, TopicStrategySpec{});
    NormalizationTable table = group_statistics(map, matrix, candidates.spec());
    ScoreConfig cfg;
    cfg.mode = ScoreMode::Normalized;

    std::vector<PartialityRow> rows;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        auto champs = local_champions(docs[d], matrix, candidates, table, cfg, workers);
        for (const auto& r : champs) {
            rows.push_back(PartialityRow{d, r.length, r.distance});
        }
    }
    return rows;
}

void score_agreement(AgreementCase& c) {
    bool cp = c.curve == c.penalty;
    bool cn = c.curve == c.noise;
    bool pn = c.penalty == c.noise;
    if (cp && cn) {
        c.score_curve = c.score_penalty = c.score_noise = 1;
    } else if (cp) {
        c.score_curve = c.score_penalty = 1;
        c.score_noise = 0;
    } else if (cn) {
        c.score_curve = c.score_noise = 1;
        c.score_penalty = 0;
    } else if (pn) {
        c.score_penalty = c.score_noise = 1;
        c.score_curve = 0;
    } else {
        c.score_curve = c.score_penalty = c.score_noise = 0;
    }
}

AgreementSummary run_agreement_experiment(const AgreementSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    AgreementSummary summary;
    std::size_t unanimous = 0, at_least_two = 0;

    for (std::size_t i = 0; i < spec.cases; ++i) {
        UnderstandingMap map = random_connected_map(spec.nodes, spec.extra_edges, rng);
        DistanceMatrix matrix(map);
        Document doc = random_document(map, spec.concept_length, 1, spec.tf_max, rng);
        CandidateTopicSet candidates(map, TopicStrategySpec{});
        NormalizationTable table = group_statistics(map, matrix, candidates.spec());
        MethodConfig cfg;
        cfg.workers = spec.workers;

        AgreementCase c;
        c.case_index = i;
        c.curve = scom_curve_fitting(doc, map, matrix, candidates, table, cfg).scom;
        c.penalty = scom_penalty_voting(doc, map, matrix, candidates, table, cfg).scom;
        c.noise = scom_noise_voting(doc, map, matrix, candidates, table, cfg).scom;
        score_agreement(c);
        if (c.score_curve + c.score_penalty + c.score_noise == 3) ++unanimous;
        if (c.score_curve + c.score_penalty + c.score_noise >= 2) ++at_least_two;
        summary.cases.push_back(c);
    }
    summary.unanimous_rate = static_cast<double>(unanimous) / static_cast<double>(spec.cases);
    summary.at_least_two_rate =
        static_cast<double>(at_least_two) / static_cast<double>(spec.cases);
    return summary;
}

std::vector<SimilarityRow> run_similarity_experiment(const SimilaritySpec& spec) {
    if (spec.documents < 11) throw DataError("similarity experiment needs at least 11 documents");
    std::mt19937_64 rng(spec.seed);
    UnderstandingMap map = random_connected_map(spec.nodes, spec.extra_edges, rng);
    DistanceMatrix matrix(map);
    CandidateTopicSet candidates(map, TopicStrategySpec{});
    NormalizationTable table = group_statistics(map, matrix, candidates.spec());

    std::vector<Document> docs;
    for (std::size_t i = 0; i < spec.documents; ++i) {
        docs.push_back(random_document(map, spec.concept_length, 1, spec.tf_max, rng));
    }

    auto tf_vector = [&](const Document& d) {
        std::vector<double> v(map.size(), 0.0);
        for (const auto& [idx, count] : d.entries()) v[idx] = static_cast<double>(count);
        return v;
    };
    ScoreConfig norm_cfg;
    norm_cfg.mode = ScoreMode::Normalized;
    ScoreConfig raw_cfg;
    raw_cfg.mode = ScoreMode::Raw;

    std::vector<std::vector<double>> tf_vecs, scom_vecs, raw_vecs;
    for (const auto& d : docs) {
        tf_vecs.push_back(tf_vector(d));
        scom_vecs.push_back(vectorize(d, candidates, matrix, table, norm_cfg).values);
        raw_vecs.push_back(vectorize(d, candidates, matrix, table, raw_cfg).values);
    }

    // Document 0 is its own best match (similarity 1) and heads every table,
    // mirroring the reference layout.
    auto top = [&](const std::vector<std::vector<double>>& vecs) {
        std::vector<std::pair<double, std::size_t>> sims;
        for (std::size_t i = 0; i < docs.size(); ++i) {
            sims.emplace_back(cosine_similarity(vecs[0], vecs[i]), i);
        }
        std::stable_sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
            return a.first > b.first;
        });
        sims.resize(std::min(sims.size(), spec.top_k));
        return sims;
    };

    auto tf_top = top(tf_vecs);
    auto scom_top = top(scom_vecs);
    auto raw_top = top(raw_vecs);

    std::vector<SimilarityRow> rows;
    for (std::size_t r = 0; r < tf_top.size(); ++r) {
        SimilarityRow row;
        row.rank = r + 1;
        row.tf_doc = std::to_string(tf_top[r].second);
        row.tf_similarity = tf_top[r].first;
        row.scom_doc = std::to_string(scom_top[r].second);
        row.scom_similarity = scom_top[r].first;
        row.scom_no_norm_doc = std::to_string(raw_top[r].second);
        row.scom_no_norm_similarity = raw_top[r].first;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace umstm
