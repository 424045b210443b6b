#pragma once

#include <iosfwd>

#include "umstm/distance.hpp"

namespace umstm {

/// Ordered concept sequence, optionally segmented into sentences or
/// paragraphs. Segments partition the sequence in order.
struct SequentialDocument {
    std::vector<std::size_t> concepts;       // concept indices, repeats allowed
    std::vector<std::size_t> segment_sizes;  // empty = one segment

    static SequentialDocument from_labels(const UnderstandingMap& map,
                                          const std::vector<std::vector<ConceptId>>& segments);
};

/// Element-wise mean of the M prefix-document vectors of the sequence.
DocumentVector sequential_vector(const SequentialDocument& seq, const UnderstandingMap& map,
                                 const CandidateTopicSet& candidates,
                                 const DistanceMatrix& matrix, const NormalizationTable& table,
                                 const ScoreConfig& cfg);

/// Mean over segments of each segment's sequential vector.
DocumentVector segmented_sequential_vector(const SequentialDocument& seq,
                                           const UnderstandingMap& map,
                                           const CandidateTopicSet& candidates,
                                           const DistanceMatrix& matrix,
                                           const NormalizationTable& table,
                                           const ScoreConfig& cfg);

/// Sequence file: one concept per line, blank line = segment boundary.
SequentialDocument parse_sequence(const UnderstandingMap& map, std::istream& in);
SequentialDocument load_sequence(const UnderstandingMap& map, const std::string& path);

}  // namespace umstm
