#include "umstm/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace umstm {

ConceptDistribution ConceptDistribution::from_proportions(
    const UnderstandingMap& map, const std::vector<std::pair<ConceptId, double>>& proportions) {
    if (proportions.empty()) throw DataError("empty distribution");
    double total = 0.0;
    ConceptDistribution d;
    for (const auto& [label, p] : proportions) {
        if (p <= 0.0) throw DataError("distribution proportions must be positive");
        d.entries_.emplace_back(map.require_index(label), p);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw DataError("distribution proportions sum to " + std::to_string(total) +
                        ", expected 1");
    }
    for (auto& [idx, p] : d.entries_) p /= total;
    std::sort(d.entries_.begin(), d.entries_.end());
    return d;
}

double score_distribution(const NeedsDistribution& needs, const ScomDistribution& doc_dist,
                          const DistanceMatrix& matrix, DistancePower power) {
    double score = 0.0;
    for (const auto& [i, p] : needs.entries()) {
        for (const auto& [j, q] : doc_dist.entries()) {
            double d = matrix.at(i, j);
            if (power == DistancePower::Squared) d *= d;
            score += p * q * d;
        }
    }
    return score;
}

double score_topic(Topic needs, const ScomDistribution& doc_dist, const DistanceMatrix& matrix,
                   DistancePower power) {
    if (needs.mask == 0) throw DataError("needs topic must be non-empty");
    double score = 0.0;
    for (const auto& [j, q] : doc_dist.entries()) {
        score += q * concept_topic_distance(j, needs, matrix, power);
    }
    return score;
}

std::vector<RankedDocument> rank_documents(
    const NeedsDistribution& needs,
    const std::vector<std::pair<std::string, ScomDistribution>>& docs,
    const DistanceMatrix& matrix, DistancePower power) {
    if (docs.empty()) throw DataError("no documents to rank");
    std::vector<RankedDocument> out;
    for (const auto& [id, dist] : docs) {
        out.push_back(RankedDocument{id, score_distribution(needs, dist, matrix, power)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedDocument& a, const RankedDocument& b) {
                         return a.score < b.score;
                     });
    return out;
}

NeedsDistribution parse_needs(const UnderstandingMap& map, const std::string& text) {
    std::vector<std::pair<ConceptId, double>> props;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw DataError("needs entry missing ':': " + item);
        std::string label = item.substr(0, colon);
        label.erase(0, label.find_first_not_of(" \t"));
        label.erase(label.find_last_not_of(" \t") + 1);
        double weight = std::stod(item.substr(colon + 1));
        props.emplace_back(label, weight);
    }
    return NeedsDistribution::from_proportions(map, props);
}

}  // namespace umstm
