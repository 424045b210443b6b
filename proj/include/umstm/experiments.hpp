#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "umstm/scom.hpp"

namespace umstm {

/// Random connected graph: uniform random spanning tree plus extra uniform
/// non-tree edges. Labels are N0, N1, ...
UnderstandingMap random_connected_map(std::size_t nodes, std::size_t extra_edges,
                                      std::mt19937_64& rng);

/// Random document: `concept_length` distinct concepts chosen uniformly,
/// term frequencies uniform in [tf_min, tf_max].
Document random_document(const UnderstandingMap& map, std::size_t concept_length,
                         std::uint64_t tf_min, std::uint64_t tf_max, std::mt19937_64& rng);

struct PartialityRow {
    std::size_t doc_index = 0;
    int length = 0;
    double champion_score = 0.0;  // Revision-two distance of the length champion
};

std::vector<PartialityRow> run_partiality_experiment(const UnderstandingMap& map,
                                                     const DistanceMatrix& matrix,
                                                     const std::vector<Document>& docs,
                                                     int workers = 1);

struct AgreementCase {
    std::size_t case_index = 0;
    Topic curve;
    Topic penalty;
    Topic noise;
    int score_curve = 0;  // the 0/1 scoring rule
    int score_penalty = 0;
    int score_noise = 0;
};

struct AgreementSummary {
    std::vector<AgreementCase> cases;
    double unanimous_rate = 0.0;
    double at_least_two_rate = 0.0;
};

/// Per-case 0/1 method scores: unanimous -> all 1; one dissenter -> the
/// agreeing pair scores 1; total disagreement -> all 0.
void score_agreement(AgreementCase& c);

struct AgreementSpec {
    std::size_t cases = 30;
    std::size_t nodes = 10;
    std::size_t extra_edges = 4;
    std::size_t concept_length = 4;
    std::uint64_t tf_max = 40;
    std::uint64_t seed = 1;
    int workers = 1;
};

AgreementSummary run_agreement_experiment(const AgreementSpec& spec);

struct SimilarityRow {
    std::size_t rank = 0;
    std::string tf_doc;       // doc id ranked by term-frequency cosine
    double tf_similarity = 0.0;
    std::string scom_doc;     // doc id ranked by normalized vectorization
    double scom_similarity = 0.0;
    std::string scom_no_norm_doc;  // without the phi factor
    double scom_no_norm_similarity = 0.0;
};

struct SimilaritySpec {
    std::size_t documents = 30;
    std::size_t top_k = 10;
    std::size_t nodes = 10;
    std::size_t extra_edges = 4;
    std::size_t concept_length = 4;
    std::uint64_t tf_max = 40;
    std::uint64_t seed = 1;
    int workers = 1;
};

std::vector<SimilarityRow> run_similarity_experiment(const SimilaritySpec& spec);

}  // namespace umstm
