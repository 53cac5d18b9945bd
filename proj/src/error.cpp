#include "mapwss/error.hpp"

namespace mapwss {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::InvalidCardinality: return "InvalidCardinality";
    case ErrorCode::InvalidScope: return "InvalidScope";
    case ErrorCode::TableSizeMismatch: return "TableSizeMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NotBinaryPairwise: return "NotBinaryPairwise";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::ZeroAssociativity: return "ZeroAssociativity";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotSingleEnodeForm: return "NotSingleEnodeForm";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::ObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorCode::IntractableTopology: return "IntractableTopology";
    case ErrorCode::NotSupermodular: return "NotSupermodular";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mapwss
