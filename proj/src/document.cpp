#include "umstm/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace umstm {

Document Document::from_counts(const UnderstandingMap& map,
                               const std::vector<std::pair<ConceptId, std::uint64_t>>& counts,
                               bool lenient) {
    std::map<std::size_t, std::uint64_t> merged;
    for (const auto& [label, count] : counts) {
        auto idx = map.index_of(label);
        if (!idx) {
            if (lenient) continue;
            throw UnknownConcept("document concept '" + label + "' not in map");
        }
        if (count > 0) merged[*idx] += count;
    }
    Document d;
    for (const auto& [idx, count] : merged) {
        d.entries_.emplace_back(idx, count);
        d.length_ += count;
    }
    if (d.entries_.empty()) throw DataError("document has no concepts with positive count");
    return d;
}

Document Document::scaled(std::uint64_t k) const {
    Document d = *this;
    d.length_ = 0;
    for (auto& [idx, count] : d.entries_) {
        count *= k;
        d.length_ += count;
    }
    return d;
}

Document parse_document(const UnderstandingMap& map, std::istream& in, bool lenient) {
    std::vector<std::pair<ConceptId, std::uint64_t>> counts;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ConceptId label;
        std::uint64_t count;
        if (!(ls >> label)) continue;
        if (!(ls >> count)) throw DataError("malformed document line: " + line);
        counts.emplace_back(label, count);
    }
    return Document::from_counts(map, counts, lenient);
}

Document load_document(const UnderstandingMap& map, const std::string& path, bool lenient) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open document file: " + path);
    return parse_document(map, in, lenient);
}

}  // namespace umstm
