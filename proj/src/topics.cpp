#include "umstm/topics.hpp"

#include <algorithm>

#include "umstm/document.hpp"

namespace umstm {

std::vector<std::size_t> Topic::members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask; m; m &= m - 1) {
        out.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
    }
    return out;
}

std::string Topic::label(const UnderstandingMap& map, const std::string& sep) const {
    std::string out;
    bool first = true;
    for (auto i : members()) {
        if (!first) out += sep;
        out += map.label(i);
        first = false;
    }
    return out;
}

bool topic_less(Topic a, Topic b) {
    int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    std::uint64_t diff = a.mask ^ b.mask;
    if (diff == 0) return false;
    // The lowest differing bit marks the first position where the sorted
    // member sequences diverge; the side holding it has the smaller member.
    return (diff & (~diff + 1)) & a.mask;
}

Topic topic_from_labels(const UnderstandingMap& map, const std::vector<ConceptId>& labels) {
    Topic t;
    for (const auto& l : labels) t.mask |= std::uint64_t{1} << map.require_index(l);
    if (t.mask == 0) throw DataError("topic must be non-empty");
    return t;
}

CandidateTopicSet::CandidateTopicSet(const UnderstandingMap& map, TopicStrategySpec spec)
    : map_(&map), spec_(std::move(spec)) {
    if (map.size() > 64) throw TopicSpaceTooLarge("maps beyond 64 concepts are not supported");
    if (spec_.whitelist.empty()) {
        universe_.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) universe_[i] = i;
    } else {
        for (const auto& l : spec_.whitelist) universe_.push_back(map.require_index(l));
        std::sort(universe_.begin(), universe_.end());
        universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
        if (universe_.empty()) throw DataError("whitelist is empty");
    }
    switch (spec_.strategy) {
        case TopicStrategy::LengthExact:
        case TopicStrategy::LengthAtMost:
            if (spec_.k < 1) throw DataError("topic length parameter must be >= 1");
            break;
        default:
            break;
    }
}

bool CandidateTopicSet::admits(std::uint64_t mask) const {
    // Full-domain topic: uninformative, excluded unless explicitly requested
    // by a length-exact-n strategy.
    bool full_domain = __builtin_popcountll(mask) == static_cast<int>(map_->size());
    switch (spec_.strategy) {
        case TopicStrategy::All:
        case TopicStrategy::LengthAtMost:
            return !full_domain;
        case TopicStrategy::LengthExact:
            return true;
        case TopicStrategy::ConnectedOnly: {
            if (full_domain) return false;
            Topic t{mask};
            return map_->induced_connected(t.members());
        }
    }
    return false;
}

void CandidateTopicSet::for_each(const std::function<void(Topic)>& fn) const {
    const std::size_t u = universe_.size();
    int lo = 1, hi = static_cast<int>(u);
    if (spec_.strategy == TopicStrategy::LengthExact) {
        if (spec_.k > hi) return;
        lo = hi = spec_.k;
    } else if (spec_.strategy == TopicStrategy::LengthAtMost) {
        hi = std::min(hi, spec_.k);
    }
    std::vector<std::size_t> comb;
    for (int len = lo; len <= hi; ++len) {
        comb.resize(len);
        for (int i = 0; i < len; ++i) comb[i] = i;
        while (true) {
            std::uint64_t mask = 0;
            for (auto c : comb) mask |= std::uint64_t{1} << universe_[c];
            if (admits(mask)) fn(Topic{mask});
            // next combination in lexicographic order
            int i = len - 1;
            while (i >= 0 && comb[i] == u - static_cast<std::size_t>(len - i)) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < len; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
}

std::uint64_t CandidateTopicSet::count() const {
    if (!counted_) {
        std::uint64_t c = 0;
        for_each([&](Topic) { ++c; });
        count_ = c;
        counted_ = true;
    }
    return count_;
}

const std::vector<Topic>& CandidateTopicSet::topics() const {
    if (!cached_) {
        if (count() > spec_.cap) {
            throw TopicSpaceTooLarge("candidate topic set has " + std::to_string(count()) +
                                     " topics, cap is " + std::to_string(spec_.cap));
        }
        cache_.reserve(count());
        for_each([&](Topic t) { cache_.push_back(t); });
        cached_ = true;
    }
    return cache_;
}

int CandidateTopicSet::min_length() const {
    return spec_.strategy == TopicStrategy::LengthExact ? spec_.k : 1;
}

int CandidateTopicSet::max_length() const {
    int n = static_cast<int>(universe_.size());
    switch (spec_.strategy) {
        case TopicStrategy::LengthExact:
            return spec_.k;
        case TopicStrategy::LengthAtMost:
            return std::min(n, spec_.k);
        case TopicStrategy::All:
        case TopicStrategy::ConnectedOnly:
            return universe_.size() == map_->size() ? n - 1 : n;
    }
    return n;
}

CandidateTopicSet enumerate_topics(const UnderstandingMap& map, TopicStrategySpec spec) {
    return CandidateTopicSet(map, std::move(spec));
}

Topic ingredient_topic(const Document& doc, const UnderstandingMap& map) {
    (void)map;
    Topic t;
    for (const auto& [idx, count] : doc.entries()) t.mask |= std::uint64_t{1} << idx;
    return t;
}

}  // namespace umstm
