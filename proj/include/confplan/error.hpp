#pragma once

#include <stdexcept>
#include <string>

namespace confplan {

enum class Errc {
  ParseError,
  ValidationError,
  NotATree,
  RootNotUnivalent,
  PointNotOnGraph,
  MalformedTrajectory,
  EndpointMismatch,
  AgentCountMismatch,
  NoEssentialVertex,
  DimensionMismatch,
  NotOnRootEdge,
  SubdivisionTooCoarse,
  NotConnected,
  SnapInfeasible,
  InvalidArgument,
  InvariantViolation,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::NotATree: return "NotATree";
    case Errc::RootNotUnivalent: return "RootNotUnivalent";
    case Errc::PointNotOnGraph: return "PointNotOnGraph";
    case Errc::MalformedTrajectory: return "MalformedTrajectory";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::AgentCountMismatch: return "AgentCountMismatch";
    case Errc::NoEssentialVertex: return "NoEssentialVertex";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotOnRootEdge: return "NotOnRootEdge";
    case Errc::SubdivisionTooCoarse: return "SubdivisionTooCoarse";
    case Errc::NotConnected: return "NotConnected";
    case Errc::SnapInfeasible: return "SnapInfeasible";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` is machine readable, `what()` is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code), message_(message) {}

  Errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace confplan
