#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "umstm/errors.hpp"

namespace umstm {

using ConceptId = std::string;

struct Edge {
    ConceptId a;
    ConceptId b;
    double weight = 1.0;
};

/// Undirected connected concept graph. Concepts are kept in sorted label
/// order; all indices below refer to that order. Immutable once built.
class UnderstandingMap {
public:
    static UnderstandingMap build(const std::vector<Edge>& edges);

    std::size_t size() const { return labels_.size(); }
    const std::vector<ConceptId>& concepts() const { return labels_; }
    const ConceptId& label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> index_of(const ConceptId& label) const;
    std::size_t require_index(const ConceptId& label) const;

    bool unit_weights() const { return unit_weights_; }
    std::size_t edge_count() const;

    /// Adjacency as (neighbor index, weight) pairs.
    const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const {
        return adj_;
    }

    /// True iff the subgraph induced by `members` (concept indices) is connected.
    bool induced_connected(const std::vector<std::size_t>& members) const;

private:
    UnderstandingMap() = default;
    std::vector<ConceptId> labels_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
    bool unit_weights_ = true;
};

/// All-pairs shortest-path distances of a map, plus the squared companion.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const UnderstandingMap& map);

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double squared(std::size_t i, std::size_t j) const { return d2_[i * n_ + j]; }

    /// Row i of the (optionally squared) matrix: the distance-vector
    /// coordinate of concept i.
    std::vector<double> coordinates(std::size_t i, bool use_squared) const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
    std::vector<double> d2_;
};

/// Parse the standard graph format: one `<label> <label> [weight]` edge per
/// line, `#` starts a comment, missing weight means 1.0.
std::vector<Edge> parse_edge_list(std::istream& in);
UnderstandingMap load_map(const std::string& path);

}  // namespace umstm
