#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "umstm/document.hpp"
#include "umstm/graph.hpp"
#include "umstm/topics.hpp"

namespace umstm {

/// Non-squared concept-to-topic distances: an alternative kept behind a
/// config flag; all table oracles use the squared form.
enum class DistancePower { Squared, Plain };

double concept_topic_distance(std::size_t concept_index, Topic topic,
                              const DistanceMatrix& matrix,
                              DistancePower power = DistancePower::Squared);

struct LengthGroupStats {
    int length = 0;
    double mean = 0.0;       // of (noisy) squared concept-to-topic distances
    double sd = 0.0;         // population SD of the same
    double sparsity = 0.0;   // fraction of exactly-zero entries
    double phi = 0.0;        // mean_1 / mean_length
    bool sampled = false;
    std::uint64_t population = 0;
};

/// Per-topic-length normalization factors and group statistics, computed at
/// a fixed noise level delta.
struct NormalizationTable {
    double delta = 0.0;
    DistancePower power = DistancePower::Squared;
    std::vector<LengthGroupStats> groups;  // one entry per topic length present

    const LengthGroupStats& group(int length) const;
    double phi(int length) const { return group(length).phi; }
};

struct GroupStatisticsOptions {
    double delta = 0.0;
    DistancePower power = DistancePower::Squared;
    // When a length group is larger than this, its statistics are estimated
    // from a seeded uniform sample of that many topics instead of full
    // enumeration.
    std::uint64_t sample_per_length = 10000;
    std::uint64_t seed = 1;
};

NormalizationTable group_statistics(const UnderstandingMap& map, const DistanceMatrix& matrix,
                                    const TopicStrategySpec& strategy,
                                    const GroupStatisticsOptions& opts = {});

enum class ScoreMode { Normalized, Raw, Penalized, Noisy };

struct ScoreConfig {
    ScoreMode mode = ScoreMode::Normalized;
    double alpha = 0.0;  // Penalized
    double delta = 0.0;  // Noisy; must match the table it is used with
    DistancePower power = DistancePower::Squared;
};

/// Selected objective value for one (document, topic) pair.
///   Raw:        sum_i m_i d^2(x, c_i)
///   Normalized: (phi_L / M) * raw
///   Penalized:  alpha * L + Normalized
///   Noisy:      (phi_L(delta) / M) * sum_i m_i (d^2(x, c_i) + delta)
double document_topic_distance(const Document& doc, Topic topic, const DistanceMatrix& matrix,
                               const NormalizationTable& table, const ScoreConfig& cfg);

/// Document-to-domain distance: one score per candidate topic, in the
/// candidate set's enumeration order.
struct DocumentVector {
    std::vector<Topic> topics;
    std::vector<double> values;
};

DocumentVector vectorize(const Document& doc, const CandidateTopicSet& candidates,
                         const DistanceMatrix& matrix, const NormalizationTable& table,
                         const ScoreConfig& cfg);

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v);
double cosine_similarity(const DocumentVector& u, const DocumentVector& v);

}  // namespace umstm
