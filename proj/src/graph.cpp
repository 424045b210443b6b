#include "umstm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace umstm {

UnderstandingMap UnderstandingMap::build(const std::vector<Edge>& edges) {
    if (edges.empty()) throw DataError("edge list is empty");

    std::set<ConceptId> labels;
    for (const auto& e : edges) {
        if (e.a.empty() || e.b.empty()) throw DataError("empty concept label");
        if (e.a == e.b) throw SelfLoop("self-loop on concept '" + e.a + "'");
        if (e.weight <= 0.0) throw DataError("non-positive edge weight on " + e.a + "-" + e.b);
        labels.insert(e.a);
        labels.insert(e.b);
    }

    UnderstandingMap m;
    m.labels_.assign(labels.begin(), labels.end());
    std::map<ConceptId, std::size_t> index;
    for (std::size_t i = 0; i < m.labels_.size(); ++i) index[m.labels_[i]] = i;

    // Direction of input edges is discarded; duplicates with the same weight
    // are deduplicated, conflicting weights are rejected.
    std::map<std::pair<std::size_t, std::size_t>, double> uniq;
    for (const auto& e : edges) {
        std::size_t i = index[e.a], j = index[e.b];
        auto key = std::minmax(i, j);
        auto [it, inserted] = uniq.emplace(key, e.weight);
        if (!inserted && it->second != e.weight) {
            throw DuplicateEdge("conflicting weights for edge " + e.a + "-" + e.b);
        }
    }

    m.adj_.resize(m.labels_.size());
    m.unit_weights_ = true;
    for (const auto& [key, w] : uniq) {
        m.adj_[key.first].emplace_back(key.second, w);
        m.adj_[key.second].emplace_back(key.first, w);
        if (w != 1.0) m.unit_weights_ = false;
    }

    std::vector<std::size_t> all(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) all[i] = i;
    if (!m.induced_connected(all)) throw DisconnectedGraph("input graph is disconnected");
    return m;
}

std::optional<std::size_t> UnderstandingMap::index_of(const ConceptId& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t UnderstandingMap::require_index(const ConceptId& label) const {
    auto idx = index_of(label);
    if (!idx) throw UnknownConcept("unknown concept '" + label + "'");
    return *idx;
}

std::size_t UnderstandingMap::edge_count() const {
    std::size_t deg = 0;
    for (const auto& nbrs : adj_) deg += nbrs.size();
    return deg / 2;
}

bool UnderstandingMap::induced_connected(const std::vector<std::size_t>& members) const {
    if (members.empty()) return false;
    std::vector<char> in(size(), 0), seen(size(), 0);
    for (auto i : members) in[i] = 1;
    std::deque<std::size_t> queue{members.front()};
    seen[members.front()] = 1;
    std::size_t reached = 0;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        ++reached;
        for (const auto& [v, w] : adj_[u]) {
            if (in[v] && !seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return reached == members.size();
}

namespace {

void bfs_from(const UnderstandingMap& map, std::size_t src, double* out) {
    const std::size_t n = map.size();
    std::fill(out, out + n, -1.0);
    std::deque<std::size_t> queue{src};
    out[src] = 0.0;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& [v, w] : map.adjacency()[u]) {
            if (out[v] < 0.0) {
                out[v] = out[u] + 1.0;
                queue.push_back(v);
            }
        }
    }
}

void dijkstra_from(const UnderstandingMap& map, std::size_t src, double* out) {
    const std::size_t n = map.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::fill(out, out + n, inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    out[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > out[u]) continue;
        for (const auto& [v, w] : map.adjacency()[u]) {
            double dv = du + w;
            if (dv < out[v]) {
                out[v] = dv;
                heap.emplace(dv, v);
            }
        }
    }
}

}  // namespace

DistanceMatrix::DistanceMatrix(const UnderstandingMap& map) : n_(map.size()) {
    d_.resize(n_ * n_);
    d2_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double* row = d_.data() + i * n_;
        if (map.unit_weights()) {
            bfs_from(map, i, row);
        } else {
            dijkstra_from(map, i, row);
        }
    }
    for (std::size_t k = 0; k < d_.size(); ++k) d2_[k] = d_[k] * d_[k];
}

std::vector<double> DistanceMatrix::coordinates(std::size_t i, bool use_squared) const {
    const double* row = (use_squared ? d2_.data() : d_.data()) + i * n_;
    return std::vector<double>(row, row + n_);
}

std::vector<Edge> parse_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.a)) continue;  // blank line
        if (!(ls >> e.b)) throw DataError("malformed edge line: " + line);
        if (!(ls >> e.weight)) e.weight = 1.0;
        std::string extra;
        if (ls >> extra) throw DataError("trailing tokens on edge line: " + line);
        edges.push_back(e);
    }
    return edges;
}

UnderstandingMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file: " + path);
    return UnderstandingMap::build(parse_edge_list(in));
}

}  // namespace umstm
