#pragma once

#include <stdexcept>
#include <string>

namespace umstm {

// Data-level errors map to CLI exit code 2, convergence failures to 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DisconnectedGraph : DataError {
    using DataError::DataError;
};
struct DuplicateEdge : DataError {
    using DataError::DataError;
};
struct SelfLoop : DataError {
    using DataError::DataError;
};
struct UnknownConcept : DataError {
    using DataError::DataError;
};
struct TopicSpaceTooLarge : DataError {
    using DataError::DataError;
};
struct ZeroGroupMean : DataError {
    using DataError::DataError;
};
struct ModeMismatch : DataError {
    using DataError::DataError;
};
struct ZeroVector : DataError {
    using DataError::DataError;
};
struct ZeroSD : DataError {
    using DataError::DataError;
};
struct InsufficientGroups : DataError {
    using DataError::DataError;
};
struct EmptySegment : DataError {
    using DataError::DataError;
};
struct ConceptNeverOccurs : DataError {
    using DataError::DataError;
};
struct DisconnectedConceptSpace : DataError {
    using DataError::DataError;
};
struct EmptyTrainingSet : DataError {
    using DataError::DataError;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace umstm
