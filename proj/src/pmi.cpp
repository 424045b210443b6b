#include "umstm/pmi.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace umstm {

CorpusStats CorpusStats::compute(const std::vector<std::vector<ConceptId>>& corpus) {
    if (corpus.empty()) throw DataError("corpus is empty");
    CorpusStats s;
    s.n_ = static_cast<long long>(corpus.size());
    std::set<ConceptId> all;
    for (const auto& doc : corpus) {
        if (doc.empty()) throw DataError("corpus contains an empty document");
        std::set<ConceptId> uniq(doc.begin(), doc.end());
        for (const auto& x : uniq) {
            ++s.df_[x];
            all.insert(x);
        }
        for (auto it = uniq.begin(); it != uniq.end(); ++it) {
            for (auto jt = std::next(it); jt != uniq.end(); ++jt) {
                ++s.joint_[{*it, *jt}];
            }
        }
    }
    s.concepts_.assign(all.begin(), all.end());
    return s;
}

Rational CorpusStats::probability(const ConceptId& x) const {
    auto it = df_.find(x);
    if (it == df_.end() || it->second == 0) {
        throw ConceptNeverOccurs("concept '" + x + "' occurs in no document");
    }
    return Rational(it->second, n_);
}

Rational CorpusStats::joint_probability(const ConceptId& x, const ConceptId& y) const {
    auto key = std::minmax(x, y);
    auto it = joint_.find({key.first, key.second});
    long long t = it == joint_.end() ? 0 : it->second;
    return Rational(t, n_);
}

std::optional<Rational> pmi_distance(const ConceptId& x, const ConceptId& y,
                                     const CorpusStats& stats) {
    if (x == y) {
        stats.probability(x);  // still reject never-occurring concepts
        return Rational(0);
    }
    Rational px = stats.probability(x);
    Rational py = stats.probability(y);
    Rational pxy = stats.joint_probability(x, y);
    if (pxy == Rational(0)) return std::nullopt;
    return px * py / pxy;
}

PmiGraph build_complete_graph(const CorpusStats& stats) {
    PmiGraph g;
    g.concepts = stats.concepts();
    const std::size_t n = g.concepts.size();
    std::vector<char> has_edge(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto d = pmi_distance(g.concepts[i], g.concepts[j], stats);
            if (d) {
                g.edges.push_back(RationalEdge{i, j, *d});
                has_edge[i] = has_edge[j] = 1;
            } else {
                g.infinite_pairs.emplace_back(i, j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (n > 1 && !has_edge[i]) {
            throw DisconnectedConceptSpace("concept '" + g.concepts[i] +
                                           "' co-occurs with nothing");
        }
    }
    return g;
}

namespace {

// O(n^2) Dijkstra with exact rational weights; nullopt = unreachable.
std::vector<std::optional<Rational>> shortest_from(
    const std::vector<std::vector<std::pair<std::size_t, Rational>>>& adj, std::size_t src) {
    const std::size_t n = adj.size();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<char> done(n, 0);
    dist[src] = Rational(0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || !dist[i]) continue;
            if (u == n || *dist[i] < *dist[u]) u = i;
        }
        if (u == n) break;
        done[u] = 1;
        for (const auto& [v, w] : adj[u]) {
            Rational nd = *dist[u] + w;
            if (!dist[v] || nd < *dist[v]) dist[v] = nd;
        }
    }
    return dist;
}

std::vector<std::vector<std::pair<std::size_t, Rational>>> adjacency(const PmiGraph& g) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(g.concepts.size());
    for (const auto& e : g.edges) {
        adj[e.a].emplace_back(e.b, e.weight);
        adj[e.b].emplace_back(e.a, e.weight);
    }
    return adj;
}

}  // namespace

std::vector<std::vector<std::optional<Rational>>> PmiGraph::all_pairs_shortest_paths() const {
    auto adj = adjacency(*this);
    std::vector<std::vector<std::optional<Rational>>> out;
    for (std::size_t i = 0; i < concepts.size(); ++i) out.push_back(shortest_from(adj, i));
    return out;
}

std::vector<Edge> PmiGraph::to_edge_list() const {
    std::vector<Edge> out;
    for (const auto& e : edges) {
        out.push_back(Edge{concepts[e.a], concepts[e.b], boost::rational_cast<double>(e.weight)});
    }
    return out;
}

PruneResult prune_redundant_edges(const PmiGraph& graph) {
    PruneResult result;
    result.graph.concepts = graph.concepts;
    result.graph.edges = graph.edges;

    // Infinite pairs are redundant by definition on a connected concept
    // space; they are reported as removed up front.
    for (const auto& [i, j] : graph.infinite_pairs) {
        result.removed.emplace_back(graph.concepts[i], graph.concepts[j]);
    }

    auto edge_key = [&](const RationalEdge& e) {
        return std::make_pair(graph.concepts[e.a], graph.concepts[e.b]);
    };

    while (true) {
        auto& edges = result.graph.edges;
        // Find the heaviest redundant edge, ties lexicographic by endpoints.
        std::size_t pick = edges.size();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            // Alternative path not using edge k.
            PmiGraph without = result.graph;
            without.edges.erase(without.edges.begin() + static_cast<std::ptrdiff_t>(k));
            auto adj = adjacency(without);
            auto dist = shortest_from(adj, edges[k].a);
            auto alt = dist[edges[k].b];
            if (!alt || *alt > edges[k].weight) continue;
            if (pick == edges.size() || edges[k].weight > edges[pick].weight ||
                (edges[k].weight == edges[pick].weight && edge_key(edges[k]) < edge_key(edges[pick]))) {
                pick = k;
            }
        }
        if (pick == edges.size()) break;
        result.removed.push_back(edge_key(edges[pick]));
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return result;
}

std::vector<std::vector<ConceptId>> parse_corpus(std::istream& in) {
    std::vector<std::vector<ConceptId>> corpus;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<ConceptId> doc;
        ConceptId tok;
        while (ls >> tok) doc.push_back(tok);
        if (!doc.empty()) corpus.push_back(std::move(doc));
    }
    return corpus;
}

std::vector<std::vector<ConceptId>> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path);
    return parse_corpus(in);
}

}  // namespace umstm
