#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "umstm/distance.hpp"

namespace umstm {

/// Per-length local champion with its group statistics. Group mean/SD are
/// over the scored document-to-topic distances of every topic of that
/// length; `z` is the champion's relative position in its group.
struct ChampionRecord {
    int length = 0;
    Topic champion;
    std::vector<Topic> co_champions;  // every topic tied at the minimum
    double distance = 0.0;
    double group_mean = 0.0;
    double group_sd = 0.0;
    double z = std::numeric_limits<double>::quiet_NaN();
    // Curve-fitting annotations.
    double score = std::numeric_limits<double>::quiet_NaN();     // "Actual"
    double fitted = std::numeric_limits<double>::quiet_NaN();    // "Supposed"
    double margin = std::numeric_limits<double>::quiet_NaN();    // "Final"
    bool excluded = false;
    std::string exclusion_reason;
};

struct VoteRow {
    Topic topic;
    double distance = 0.0;  // objective value at this parameter setting
    int length = 0;
    double param = 0.0;     // alpha or delta
    int votes = 0;          // cumulative votes of this topic so far
};

enum class CurveScore { ZScore, Raw, Log };

struct MethodConfig {
    double alpha_start = 0.1;
    double alpha_step = 0.1;
    double delta_start = 0.5;
    double delta_step = 0.5;
    std::uint64_t max_iterations = 10000;
    CurveScore curve_score = CurveScore::ZScore;
    std::vector<int> degree_grid = {1, 2, 3, 4, 5};
    bool curve_use_phi = false;  // Method 1 defaults to raw distances
    DistancePower power = DistancePower::Squared;
    int workers = 1;
};

struct ScomResult {
    std::string method;
    Topic scom;
    std::vector<Topic> co_scoms;          // topics tied with the winner
    std::vector<ChampionRecord> champions;
    std::vector<VoteRow> votes;           // methods 2 and 3
    int curve_degree = -1;                // method 1
    std::vector<double> curve_coeffs;     // lowest power first
};

/// One champion per topic length, found in a single (optionally sharded)
/// pass over the candidate set. Deterministic for any worker count.
std::vector<ChampionRecord> local_champions(const Document& doc, const DistanceMatrix& matrix,
                                            const CandidateTopicSet& candidates,
                                            const NormalizationTable& table,
                                            const ScoreConfig& cfg, int workers = 1);

ScomResult scom_curve_fitting(const Document& doc, const UnderstandingMap& map,
                              const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                              const NormalizationTable& table, const MethodConfig& cfg);

ScomResult scom_penalty_voting(const Document& doc, const UnderstandingMap& map,
                               const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                               const NormalizationTable& table, const MethodConfig& cfg);

ScomResult scom_noise_voting(const Document& doc, const UnderstandingMap& map,
                             const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                             const NormalizationTable& table, const MethodConfig& cfg);

/// SCOM over singletons only: argmin over concepts of sum_i m_i d^2.
/// Co-winners are reported; ties break lexicographically.
struct OneScomResult {
    Topic scom;
    std::vector<Topic> co_scoms;
    double cost = 0.0;  // raw mass-weighted squared distance
};
OneScomResult one_scom(const Document& doc, const DistanceMatrix& matrix);

struct ConjectureReport {
    int scom_length = 0;
    std::size_t concept_length = 0;
    bool satisfied = false;
};
ConjectureReport check_conjecture(const ScomResult& result, const Document& doc);

/// phi at noise level delta, derived from a zero-noise table:
/// phi_L(delta) = (mean_1 + delta) / (mean_L + delta).
double noisy_phi(const NormalizationTable& base, int length, double delta);

enum class TrainedMethod { Penalty, Noise };

struct TrainingExample {
    Document doc;
    Topic tag;
};

struct TrainingResult {
    double best_param = 0.0;
    double best_objective = 0.0;
    std::vector<std::pair<double, double>> trace;  // (param, objective)
};

/// Symmetric mean concept-to-topic dissimilarity between two topics, using
/// plain (non-squared) distances.
double topic_dissimilarity(Topic x, Topic y, const DistanceMatrix& matrix);

TrainingResult train_supervised_parameter(const std::vector<TrainingExample>& training,
                                          TrainedMethod method, const std::vector<double>& grid,
                                          const UnderstandingMap& map,
                                          const DistanceMatrix& matrix,
                                          const CandidateTopicSet& candidates,
                                          const NormalizationTable& table, int workers = 1);

}  // namespace umstm
