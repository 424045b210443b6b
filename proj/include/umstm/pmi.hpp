#pragma once

#include <boost/rational.hpp>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "umstm/graph.hpp"

namespace umstm {

using Rational = boost::rational<long long>;

/// Document-frequency counts of a corpus. Probabilities are exact rationals;
/// term frequencies are deliberately not tracked.
class CorpusStats {
public:
    static CorpusStats compute(const std::vector<std::vector<ConceptId>>& corpus);

    long long document_count() const { return n_; }
    const std::vector<ConceptId>& concepts() const { return concepts_; }

    Rational probability(const ConceptId& x) const;
    Rational joint_probability(const ConceptId& x, const ConceptId& y) const;

private:
    long long n_ = 0;
    std::vector<ConceptId> concepts_;
    std::map<ConceptId, long long> df_;
    std::map<std::pair<ConceptId, ConceptId>, long long> joint_;
};

/// PMI distance p(x)p(y)/p(x,y); nullopt encodes infinity (no co-occurrence),
/// x == y gives zero.
std::optional<Rational> pmi_distance(const ConceptId& x, const ConceptId& y,
                                     const CorpusStats& stats);

struct RationalEdge {
    std::size_t a;
    std::size_t b;
    Rational weight;
};

/// Weighted graph over the corpus concepts with exact rational weights.
/// Infinite-distance pairs carry no edge and are listed separately.
struct PmiGraph {
    std::vector<ConceptId> concepts;  // sorted
    std::vector<RationalEdge> edges;
    std::vector<std::pair<std::size_t, std::size_t>> infinite_pairs;

    std::vector<std::vector<std::optional<Rational>>> all_pairs_shortest_paths() const;
    /// Lossy conversion for the downstream distance machinery.
    std::vector<Edge> to_edge_list() const;
};

PmiGraph build_complete_graph(const CorpusStats& stats);

struct PruneResult {
    PmiGraph graph;
    /// Every conceptually removed edge: the infinite pairs first, then the
    /// finite redundant edges in removal order (heaviest first).
    std::vector<std::pair<ConceptId, ConceptId>> removed;
};

/// Remove redundant edges (an alternative path of less-or-equal total weight
/// exists) one at a time, heaviest first, ties lexicographic. Shortest-path
/// distances are preserved exactly.
PruneResult prune_redundant_edges(const PmiGraph& graph);

/// Corpus file: one document per line, whitespace-separated concept tokens.
std::vector<std::vector<ConceptId>> parse_corpus(std::istream& in);
std::vector<std::vector<ConceptId>> load_corpus(const std::string& path);

}  // namespace umstm
