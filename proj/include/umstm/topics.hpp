#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "umstm/graph.hpp"

namespace umstm {

class Document;

/// Non-empty subset of a domain's concepts, as a bitmask over concept
/// indices in the map's sorted label order. Domains are limited to 64
/// concepts, well past the scale the topic-space cap admits.
struct Topic {
    std::uint64_t mask = 0;

    int length() const { return __builtin_popcountll(mask); }
    bool contains(std::size_t concept_index) const {
        return (mask >> concept_index) & 1u;
    }
    std::vector<std::size_t> members() const;
    std::string label(const UnderstandingMap& map, const std::string& sep = "") const;

    bool operator==(const Topic&) const = default;
};

/// Canonical ordering used for all tie-breaking: shorter topics first, then
/// lexicographic on the sorted member sequence.
bool topic_less(Topic a, Topic b);

Topic topic_from_labels(const UnderstandingMap& map, const std::vector<ConceptId>& labels);

enum class TopicStrategy { All, LengthExact, LengthAtMost, ConnectedOnly };

struct TopicStrategySpec {
    TopicStrategy strategy = TopicStrategy::All;
    int k = 0;                                  // LengthExact / LengthAtMost parameter
    std::vector<ConceptId> whitelist;           // empty = whole domain
    std::uint64_t cap = std::uint64_t{1} << 22; // TopicSpaceTooLarge threshold
};

/// Candidate topic set Ω: streamed enumeration in canonical order (length
/// ascending, combinations lexicographic). Under "all", length-at-most and
/// connected-only strategies the full-domain topic is excluded; an explicit
/// length-exact-n request admits it.
class CandidateTopicSet {
public:
    CandidateTopicSet(const UnderstandingMap& map, TopicStrategySpec spec);

    const UnderstandingMap& map() const { return *map_; }
    const TopicStrategySpec& spec() const { return spec_; }

    std::uint64_t count() const;

    /// Streaming enumeration; no materialization, no cap.
    void for_each(const std::function<void(Topic)>& fn) const;

    /// Materialized topic list in enumeration order; throws
    /// TopicSpaceTooLarge past the cap. Cached after the first call.
    const std::vector<Topic>& topics() const;

    int min_length() const;
    int max_length() const;

private:
    bool admits(std::uint64_t mask) const;
    const UnderstandingMap* map_;
    TopicStrategySpec spec_;
    std::vector<std::size_t> universe_;  // concept indices open to enumeration
    mutable std::vector<Topic> cache_;
    mutable bool cached_ = false;
    mutable std::uint64_t count_ = 0;
    mutable bool counted_ = false;
};

CandidateTopicSet enumerate_topics(const UnderstandingMap& map, TopicStrategySpec spec);

/// The topic containing exactly the concepts the document contains.
Topic ingredient_topic(const Document& doc, const UnderstandingMap& map);

}  // namespace umstm
