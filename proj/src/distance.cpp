#include "umstm/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace umstm {

double concept_topic_distance(std::size_t concept_index, Topic topic,
                              const DistanceMatrix& matrix, DistancePower power) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t m = topic.mask; m; m &= m - 1) {
        std::size_t j = static_cast<std::size_t>(__builtin_ctzll(m));
        best = std::min(best, matrix.at(concept_index, j));
    }
    return power == DistancePower::Squared ? best * best : best;
}

const LengthGroupStats& NormalizationTable::group(int length) const {
    for (const auto& g : groups) {
        if (g.length == length) return g;
    }
    throw DataError("no statistics for topic length " + std::to_string(length));
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t zeros = 0;
    std::uint64_t count = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        if (v == 0.0) ++zeros;
        ++count;
    }
};

void accumulate_topic(const DistanceMatrix& matrix, Topic t, double delta, DistancePower power,
                      Accumulator& acc) {
    for (std::size_t c = 0; c < matrix.size(); ++c) {
        acc.add(concept_topic_distance(c, t, matrix, power) + delta);
    }
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

NormalizationTable group_statistics(const UnderstandingMap& map, const DistanceMatrix& matrix,
                                    const TopicStrategySpec& strategy,
                                    const GroupStatisticsOptions& opts) {
    if (opts.delta < 0.0) throw DataError("noise parameter must be non-negative");

    // Statistics cover every topic length of the strategy's universe; the
    // strategy's own length bounds do not apply here, its whitelist and
    // connectivity constraints do.
    std::vector<std::size_t> universe;
    if (strategy.whitelist.empty()) {
        universe.resize(map.size());
        for (std::size_t i = 0; i < map.size(); ++i) universe[i] = i;
    } else {
        for (const auto& l : strategy.whitelist) universe.push_back(map.require_index(l));
        std::sort(universe.begin(), universe.end());
        universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    }
    const std::size_t u = universe.size();
    int max_len = static_cast<int>(u) - (u == map.size() ? 1 : 0);
    if (max_len < 1) max_len = 1;  // 1-node map: only the singleton group exists

    const bool connected_only = strategy.strategy == TopicStrategy::ConnectedOnly;

    NormalizationTable table;
    table.delta = opts.delta;
    table.power = opts.power;

    for (int len = 1; len <= std::min<int>(max_len, static_cast<int>(u)); ++len) {
        Accumulator acc;
        std::uint64_t population = binomial_capped(u, static_cast<std::uint64_t>(len),
                                                   std::numeric_limits<std::uint64_t>::max() / 2);
        bool sampled = !connected_only && population > opts.sample_per_length;
        if (!sampled) {
            TopicStrategySpec sub = strategy;
            sub.strategy = connected_only ? TopicStrategy::ConnectedOnly : TopicStrategy::LengthExact;
            sub.k = len;
            CandidateTopicSet set(map, sub);
            set.for_each([&](Topic t) {
                if (t.length() != len) return;
                if (static_cast<std::size_t>(t.length()) == map.size()) return;  // full topic
                accumulate_topic(matrix, t, opts.delta, opts.power, acc);
            });
        } else {
            // Seeded uniform sample of length-len topics, one RNG per group so
            // group results do not depend on which other lengths are computed.
            std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(len));
            std::vector<std::size_t> pick(u);
            for (std::size_t i = 0; i < u; ++i) pick[i] = i;
            for (std::uint64_t s = 0; s < opts.sample_per_length; ++s) {
                // partial Fisher-Yates for a uniform len-subset
                for (int i = 0; i < len; ++i) {
                    std::uniform_int_distribution<std::size_t> dist(i, u - 1);
                    std::swap(pick[i], pick[dist(rng)]);
                }
                Topic t;
                for (int i = 0; i < len; ++i) t.mask |= std::uint64_t{1} << universe[pick[i]];
                accumulate_topic(matrix, t, opts.delta, opts.power, acc);
            }
        }
        if (acc.count == 0) continue;  // e.g. no connected topics of this length

        LengthGroupStats g;
        g.length = len;
        g.population = population;
        g.sampled = sampled;
        g.mean = acc.sum / static_cast<double>(acc.count);
        double var = acc.sumsq / static_cast<double>(acc.count) - g.mean * g.mean;
        g.sd = std::sqrt(std::max(var, 0.0));
        g.sparsity = static_cast<double>(acc.zeros) / static_cast<double>(acc.count);
        table.groups.push_back(g);
    }

    if (table.groups.empty()) throw DataError("no topic length groups");
    double mean1 = table.groups.front().length == 1 ? table.groups.front().mean : 0.0;
    for (auto& g : table.groups) {
        if (g.mean == 0.0) {
            throw ZeroGroupMean("zero mean squared distance at topic length " +
                                std::to_string(g.length));
        }
        g.phi = mean1 / g.mean;
    }
    return table;
}

double document_topic_distance(const Document& doc, Topic topic, const DistanceMatrix& matrix,
                               const NormalizationTable& table, const ScoreConfig& cfg) {
    if (cfg.mode == ScoreMode::Noisy && cfg.delta != table.delta) {
        throw ModeMismatch("noise level " + std::to_string(cfg.delta) +
                           " does not match table delta " + std::to_string(table.delta));
    }
    if (cfg.mode != ScoreMode::Noisy && cfg.mode != ScoreMode::Raw && table.delta != 0.0) {
        throw ModeMismatch("normalized scoring requires a zero-noise table");
    }
    if (doc.entries().empty()) throw DataError("empty document");

    double raw = 0.0;
    for (const auto& [idx, count] : doc.entries()) {
        raw += static_cast<double>(count) *
               concept_topic_distance(idx, topic, matrix, cfg.power);
    }
    const double m = static_cast<double>(doc.length());
    const int len = topic.length();
    switch (cfg.mode) {
        case ScoreMode::Raw:
            return raw;
        case ScoreMode::Normalized:
            return table.phi(len) / m * raw;
        case ScoreMode::Penalized:
            return cfg.alpha * static_cast<double>(len) + table.phi(len) / m * raw;
        case ScoreMode::Noisy:
            // sum_i m_i (d^2 + delta) = raw + delta * M
            return table.phi(len) / m * (raw + cfg.delta * m);
    }
    return raw;
}

DocumentVector vectorize(const Document& doc, const CandidateTopicSet& candidates,
                         const DistanceMatrix& matrix, const NormalizationTable& table,
                         const ScoreConfig& cfg) {
    DocumentVector out;
    out.topics = candidates.topics();
    out.values.reserve(out.topics.size());
    for (Topic t : out.topics) {
        out.values.push_back(document_topic_distance(doc, t, matrix, table, cfg));
    }
    return out;
}

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw DataError("cosine over mismatched vector lengths");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) throw ZeroVector("cosine of a zero vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double cosine_similarity(const DocumentVector& u, const DocumentVector& v) {
    if (u.topics != v.topics) throw DataError("cosine over different candidate sets");
    return cosine_similarity(u.values, v.values);
}

}  // namespace umstm
