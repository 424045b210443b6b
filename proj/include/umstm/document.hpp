#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "umstm/graph.hpp"

namespace umstm {

/// Bag-of-concepts with term frequencies. Entries are (concept index, count)
/// with count > 0, sorted by index.
class Document {
public:
    /// `lenient` drops concepts absent from the map instead of throwing.
    static Document from_counts(const UnderstandingMap& map,
                                const std::vector<std::pair<ConceptId, std::uint64_t>>& counts,
                                bool lenient = false);

    const std::vector<std::pair<std::size_t, std::uint64_t>>& entries() const {
        return entries_;
    }
    std::uint64_t length() const { return length_; }                // M
    std::size_t concept_length() const { return entries_.size(); }

    Document scaled(std::uint64_t k) const;

private:
    std::vector<std::pair<std::size_t, std::uint64_t>> entries_;
    std::uint64_t length_ = 0;
};

/// Document file format: one `<concept> <count>` pair per line, `#` comments.
Document parse_document(const UnderstandingMap& map, std::istream& in, bool lenient = false);
Document load_document(const UnderstandingMap& map, const std::string& path,
                       bool lenient = false);

}  // namespace umstm
