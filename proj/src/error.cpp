#include "metasc/error.hpp"

namespace metasc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FullSet: return "FullSet";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::BadL: return "BadL";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::ZeroEmbeddingNorm: return "ZeroEmbeddingNorm";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::KMismatch: return "KMismatch";
    case ErrorCode::DegenerateProbabilities: return "DegenerateProbabilities";
    case ErrorCode::TooManyRetries: return "TooManyRetries";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DuplicatePointsExceedK: return "DuplicatePointsExceedK";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace metasc
