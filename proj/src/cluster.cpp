#include "umstm/cluster.hpp"

#include <algorithm>
#include <random>

namespace umstm {

namespace {

// Nearest-center index for one concept; ties go to the smallest concept
// index, which is the lexicographically smallest label.
std::size_t nearest_center(std::size_t concept_index, const std::vector<std::size_t>& centers,
                           const DistanceMatrix& matrix) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < centers.size(); ++c) {
        if (matrix.at(concept_index, centers[c]) < matrix.at(concept_index, centers[best])) {
            best = c;
        }
    }
    return best;
}

void assign_all(const Document& doc, const std::vector<std::size_t>& centers,
                const DistanceMatrix& matrix, ClusterAssignment& out) {
    out.centers = centers;
    out.assignment.clear();
    out.cluster_mass.assign(centers.size(), 0);
    out.cost = 0.0;
    for (const auto& [idx, count] : doc.entries()) {
        std::size_t c = nearest_center(idx, centers, matrix);
        out.assignment.push_back(c);
        out.cluster_mass[c] += count;
        out.cost += static_cast<double>(count) * matrix.squared(idx, centers[c]);
    }
}

double assignment_cost(const Document& doc, const std::vector<std::size_t>& centers,
                       const DistanceMatrix& matrix) {
    double cost = 0.0;
    for (const auto& [idx, count] : doc.entries()) {
        std::size_t c = nearest_center(idx, centers, matrix);
        cost += static_cast<double>(count) * matrix.squared(idx, centers[c]);
    }
    return cost;
}

// One-SCOM of the cluster's mass over all graph nodes.
std::size_t cluster_one_scom(const Document& doc, const std::vector<std::size_t>& assignment,
                             std::size_t cluster, const DistanceMatrix& matrix) {
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t node = 0; node < matrix.size(); ++node) {
        double cost = 0.0;
        for (std::size_t e = 0; e < doc.entries().size(); ++e) {
            if (assignment[e] != cluster) continue;
            const auto& [idx, count] = doc.entries()[e];
            cost += static_cast<double>(count) * matrix.squared(idx, node);
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = node;
        }
    }
    return best;
}

std::vector<std::size_t> initial_centers(const Document& doc, const UnderstandingMap& map,
                                         std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool;
    std::vector<double> mass;
    for (const auto& [idx, count] : doc.entries()) {
        pool.push_back(idx);
        mass.push_back(static_cast<double>(count));
    }
    std::vector<std::size_t> centers;
    while (centers.size() < k && !pool.empty()) {
        std::discrete_distribution<std::size_t> dist(mass.begin(), mass.end());
        std::size_t pick = dist(rng);
        centers.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        mass.erase(mass.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    // If K exceeds the distinct doc concepts, pad with the smallest unused
    // graph nodes.
    for (std::size_t node = 0; centers.size() < k && node < map.size(); ++node) {
        if (std::find(centers.begin(), centers.end(), node) == centers.end()) {
            centers.push_back(node);
        }
    }
    std::sort(centers.begin(), centers.end());
    return centers;
}

}  // namespace

ClusterAssignment kmeans_on_graph(const Document& doc, const UnderstandingMap& map,
                                  const DistanceMatrix& matrix, std::size_t k,
                                  std::uint64_t seed, int max_iterations) {
    if (k < 1 || k > map.size()) throw DataError("K must be in [1, concept count]");

    std::vector<std::size_t> centers = initial_centers(doc, map, k, seed);
    ClusterAssignment cur;
    assign_all(doc, centers, matrix, cur);

    for (int it = 0; it < max_iterations; ++it) {
        cur.iterations = it + 1;
        std::vector<std::size_t> next = centers;
        for (std::size_t c = 0; c < k; ++c) {
            if (cur.cluster_mass[c] == 0) {
                // Empty cluster: reseed at the heaviest-cost unclaimed concept.
                std::size_t best_e = doc.entries().size();
                double best_v = -1.0;
                for (std::size_t e = 0; e < doc.entries().size(); ++e) {
                    const auto& [idx, count] = doc.entries()[e];
                    if (std::find(next.begin(), next.end(), idx) != next.end()) continue;
                    double v = static_cast<double>(count) *
                               matrix.squared(idx, centers[cur.assignment[e]]);
                    if (v > best_v) {
                        best_v = v;
                        best_e = e;
                    }
                }
                if (best_e < doc.entries().size()) next[c] = doc.entries()[best_e].first;
            } else {
                next[c] = cluster_one_scom(doc, cur.assignment, c, matrix);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        // Collapsed centers: keep the old ones to preserve K.
        for (std::size_t c = 0; next.size() < k && c < centers.size(); ++c) {
            if (std::find(next.begin(), next.end(), centers[c]) == next.end()) {
                next.push_back(centers[c]);
            }
        }
        std::sort(next.begin(), next.end());

        ClusterAssignment cand;
        assign_all(doc, next, matrix, cand);
        cand.iterations = cur.iterations;
        if (cand.centers == cur.centers && cand.assignment == cur.assignment) break;
        if (cand.cost > cur.cost) break;  // reseeding repair may not help; keep the better state
        centers = next;
        cur = cand;
    }
    return cur;
}

ClusterAssignment pam_k_scom(const Document& doc, const UnderstandingMap& map,
                             const DistanceMatrix& matrix, std::size_t k, std::uint64_t seed) {
    ClusterAssignment cur = kmeans_on_graph(doc, map, matrix, k, seed);
    std::vector<std::size_t> centers = cur.centers;

    bool improved = true;
    while (improved) {
        improved = false;
        double best_cost = cur.cost;
        std::vector<std::size_t> best_centers;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            for (std::size_t node = 0; node < map.size(); ++node) {
                if (std::find(centers.begin(), centers.end(), node) != centers.end()) continue;
                std::vector<std::size_t> trial = centers;
                trial[c] = node;
                std::sort(trial.begin(), trial.end());
                double cost = assignment_cost(doc, trial, matrix);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_centers = trial;
                }
            }
        }
        if (!best_centers.empty()) {
            centers = best_centers;
            assign_all(doc, centers, matrix, cur);
            improved = true;
        }
    }
    return cur;
}

std::vector<std::pair<std::size_t, double>> distribution_over_subtopics(
    const Document& doc, const std::vector<std::size_t>& centers, const DistanceMatrix& matrix) {
    if (centers.empty()) throw DataError("centers must be non-empty");
    std::vector<std::uint64_t> mass(centers.size(), 0);
    for (const auto& [idx, count] : doc.entries()) {
        mass[nearest_center(idx, centers, matrix)] += count;
    }
    std::vector<std::pair<std::size_t, double>> out;
    const double m = static_cast<double>(doc.length());
    for (std::size_t c = 0; c < centers.size(); ++c) {
        out.emplace_back(centers[c], static_cast<double>(mass[c]) / m);
    }
    return out;
}

PartitionResult partition_graph(const UnderstandingMap& map, const DistanceMatrix& matrix,
                                const MethodConfig& cfg) {
    // The special document: every concept with term frequency one.
    std::vector<std::pair<ConceptId, std::uint64_t>> counts;
    for (const auto& label : map.concepts()) counts.emplace_back(label, 1);
    Document special = Document::from_counts(map, counts);

    CandidateTopicSet candidates(map, TopicStrategySpec{});
    GroupStatisticsOptions opts;
    opts.power = cfg.power;
    NormalizationTable table = group_statistics(map, matrix, candidates.spec(), opts);

    PartitionResult result;
    result.method_result = scom_curve_fitting(special, map, matrix, candidates, table, cfg);
    result.centers = result.method_result.scom.members();
    result.k = result.centers.size();
    for (const auto& rec : result.method_result.champions) {
        if (rec.champion == result.method_result.scom) {
            result.co_champion_sets = rec.co_champions;
            break;
        }
    }
    for (std::size_t node = 0; node < map.size(); ++node) {
        result.node_assignment.push_back(nearest_center(node, result.centers, matrix));
    }
    return result;
}

}  // namespace umstm
