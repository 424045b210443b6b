#pragma once

#include <cstdint>

#include "umstm/scom.hpp"

namespace umstm {

struct ClusterAssignment {
    std::vector<std::size_t> centers;          // concept indices, sorted
    std::vector<std::size_t> assignment;       // per document entry: index into centers
    std::vector<std::uint64_t> cluster_mass;   // per center
    double cost = 0.0;                         // sum m_i d^2(center(i), c_i)
    int iterations = 0;
};

/// K-means on the graph: nearest-center assignment alternated with a
/// per-cluster One-SCOM update over all graph nodes.
ClusterAssignment kmeans_on_graph(const Document& doc, const UnderstandingMap& map,
                                  const DistanceMatrix& matrix, std::size_t k,
                                  std::uint64_t seed, int max_iterations = 100);

/// PAM adapted to K-SCOM search: centers may be any graph node (including
/// zero-tf concepts) and the swap cost is mass-weighted squared distance.
/// Initialized from the K-means result.
ClusterAssignment pam_k_scom(const Document& doc, const UnderstandingMap& map,
                             const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed);

/// Proportion of document mass nearest each center; sums to 1.
std::vector<std::pair<std::size_t, double>> distribution_over_subtopics(
    const Document& doc, const std::vector<std::size_t>& centers, const DistanceMatrix& matrix);

struct PartitionResult {
    std::size_t k = 0;
    std::vector<std::size_t> centers;              // SCOM members
    std::vector<Topic> co_champion_sets;  // tied center sets, each a topic
    std::vector<std::size_t> node_assignment;      // per map node: index into centers
    ScomResult method_result;
};

/// Graph partition via the special all-ones document and Method-1 curve
/// fitting; K is the SCOM length, nodes go to their nearest center.
PartitionResult partition_graph(const UnderstandingMap& map, const DistanceMatrix& matrix,
                                const MethodConfig& cfg);

}  // namespace umstm
