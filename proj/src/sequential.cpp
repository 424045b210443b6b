#include "umstm/sequential.hpp"

#include <fstream>
#include <sstream>

namespace umstm {

SequentialDocument SequentialDocument::from_labels(
    const UnderstandingMap& map, const std::vector<std::vector<ConceptId>>& segments) {
    SequentialDocument seq;
    for (const auto& seg : segments) {
        if (seg.empty()) throw EmptySegment("empty segment in sequential document");
        for (const auto& label : seg) seq.concepts.push_back(map.require_index(label));
        seq.segment_sizes.push_back(seg.size());
    }
    if (seq.concepts.empty()) throw DataError("empty sequential document");
    return seq;
}

namespace {

// One segment's vector: mean over prefixes of the prefix-document vectors.
// A running per-topic raw-sum cache makes each step O(|Omega|).
void add_segment_vector(const std::vector<std::size_t>& concepts, std::size_t lo, std::size_t hi,
                        const std::vector<Topic>& topics, const DistanceMatrix& matrix,
                        const NormalizationTable& table, const ScoreConfig& cfg,
                        std::vector<double>& out) {
    std::vector<double> raw(topics.size(), 0.0);
    std::vector<double> acc(topics.size(), 0.0);
    const std::size_t m = hi - lo;
    for (std::size_t i = lo; i < hi; ++i) {
        std::size_t c = concepts[i];
        double prefix_len = static_cast<double>(i - lo + 1);
        for (std::size_t t = 0; t < topics.size(); ++t) {
            raw[t] += concept_topic_distance(c, topics[t], matrix, cfg.power);
            double v;
            switch (cfg.mode) {
                case ScoreMode::Raw:
                    v = raw[t];
                    break;
                case ScoreMode::Noisy:
                    v = table.phi(topics[t].length()) / prefix_len *
                        (raw[t] + cfg.delta * prefix_len);
                    break;
                default:
                    v = table.phi(topics[t].length()) / prefix_len * raw[t];
                    break;
            }
            acc[t] += v;
        }
    }
    for (std::size_t t = 0; t < topics.size(); ++t) {
        out[t] += acc[t] / static_cast<double>(m);
    }
}

}  // namespace

DocumentVector sequential_vector(const SequentialDocument& seq, const UnderstandingMap& map,
                                 const CandidateTopicSet& candidates,
                                 const DistanceMatrix& matrix, const NormalizationTable& table,
                                 const ScoreConfig& cfg) {
    (void)map;
    if (seq.concepts.empty()) throw DataError("empty sequential document");
    DocumentVector out;
    out.topics = candidates.topics();
    out.values.assign(out.topics.size(), 0.0);
    add_segment_vector(seq.concepts, 0, seq.concepts.size(), out.topics, matrix, table, cfg,
                       out.values);
    return out;
}

DocumentVector segmented_sequential_vector(const SequentialDocument& seq,
                                           const UnderstandingMap& map,
                                           const CandidateTopicSet& candidates,
                                           const DistanceMatrix& matrix,
                                           const NormalizationTable& table,
                                           const ScoreConfig& cfg) {
    (void)map;
    if (seq.concepts.empty()) throw DataError("empty sequential document");
    std::vector<std::size_t> sizes = seq.segment_sizes;
    if (sizes.empty()) sizes.push_back(seq.concepts.size());
    std::size_t total = 0;
    for (auto s : sizes) {
        if (s == 0) throw EmptySegment("empty segment");
        total += s;
    }
    if (total != seq.concepts.size()) throw DataError("segment sizes do not cover the sequence");

    DocumentVector out;
    out.topics = candidates.topics();
    out.values.assign(out.topics.size(), 0.0);
    std::size_t lo = 0;
    for (auto s : sizes) {
        add_segment_vector(seq.concepts, lo, lo + s, out.topics, matrix, table, cfg, out.values);
        lo += s;
    }
    for (auto& v : out.values) v /= static_cast<double>(sizes.size());
    return out;
}

SequentialDocument parse_sequence(const UnderstandingMap& map, std::istream& in) {
    std::vector<std::vector<ConceptId>> segments;
    std::vector<ConceptId> current;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ConceptId label;
        if (!(ls >> label)) {
            if (!current.empty()) {
                segments.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        current.push_back(label);
    }
    if (!current.empty()) segments.push_back(std::move(current));
    return SequentialDocument::from_labels(map, segments);
}

SequentialDocument load_sequence(const UnderstandingMap& map, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sequence file: " + path);
    return parse_sequence(map, in);
}

}  // namespace umstm
