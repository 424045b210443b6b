// Shared test fixtures: the six-concept example map and its documents.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "umstm/document.hpp"
#include "umstm/graph.hpp"

namespace fixtures {

// Six concepts A-F in a tree-plus-cycle shape; all edges unit weight.
inline umstm::UnderstandingMap six_concept_map() {
    return umstm::UnderstandingMap::build({
        {"A", "B"}, {"A", "C"}, {"C", "D"}, {"C", "E"}, {"D", "E"}, {"D", "F"},
    });
}

// The worked bag-of-concepts example: {A:10, C:1, D:5, F:3}, M = 19.
inline umstm::Document tau(const umstm::UnderstandingMap& map) {
    return umstm::Document::from_counts(map, {{"A", 10}, {"C", 1}, {"D", 5}, {"F", 3}});
}

// Round half away from zero to two decimals, the convention of the frozen
// oracle tables.
inline double round2(double v) {
    return std::round(v * 100.0) / 100.0;
}

// The co-occurrence example corpus: six documents, term frequencies ignored.
inline std::vector<std::vector<umstm::ConceptId>> cooccurrence_corpus() {
    return {
        {"A", "B", "C"}, {"A", "B", "F"}, {"A", "C"},
        {"D", "E", "F"}, {"D", "E"},      {"E", "F"},
    };
}

}  // namespace fixtures
