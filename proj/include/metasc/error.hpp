#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace metasc {

enum class ErrorCode {
  InvalidArgument,
  NegativeWeight,
  SelfLoop,
  DuplicateEdge,
  IsolatedVertex,
  VertexOutOfRange,
  EmptySet,
  FullSet,
  TooLarge,
  InvalidK,
  BadL,
  NoConvergence,
  KTooLarge,
  DegeneratePoints,
  LabelOutOfRange,
  EmptyCluster,
  ZeroEmbeddingNorm,
  ZeroDenominator,
  DisconnectedGraph,
  KMismatch,
  DegenerateProbabilities,
  TooManyRetries,
  BadParams,
  DuplicatePointsExceedK,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace metasc
