#pragma once

#include <string>
#include <vector>

#include "umstm/distance.hpp"

namespace umstm {

/// Distribution over concepts with positive proportions summing to 1.
/// Inputs within 1e-6 of unit mass are renormalized, anything else rejected.
class ConceptDistribution {
public:
    static ConceptDistribution from_proportions(
        const UnderstandingMap& map,
        const std::vector<std::pair<ConceptId, double>>& proportions);

    const std::vector<std::pair<std::size_t, double>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::size_t, double>> entries_;
};

using NeedsDistribution = ConceptDistribution;
using ScomDistribution = ConceptDistribution;

/// Bilinear expected concept distance between two distributions; symmetric,
/// smaller is better.
double score_distribution(const NeedsDistribution& needs, const ScomDistribution& doc_dist,
                          const DistanceMatrix& matrix,
                          DistancePower power = DistancePower::Plain);

/// Expected concept-to-topic distance under the document distribution.
double score_topic(Topic needs, const ScomDistribution& doc_dist, const DistanceMatrix& matrix,
                   DistancePower power = DistancePower::Plain);

struct RankedDocument {
    std::string id;
    double score = 0.0;
};

/// Ascending score, stable ties by document id order of the input.
std::vector<RankedDocument> rank_documents(
    const NeedsDistribution& needs,
    const std::vector<std::pair<std::string, ScomDistribution>>& docs,
    const DistanceMatrix& matrix, DistancePower power = DistancePower::Plain);

/// Parse a `concept:weight,concept:weight` needs list.
NeedsDistribution parse_needs(const UnderstandingMap& map, const std::string& text);

}  // namespace umstm
