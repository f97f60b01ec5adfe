#include "journeynet/error.hpp"

namespace journeynet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateBoundary: return "DegenerateBoundary";
    case ErrorKind::MissingRegion: return "MissingRegion";
    case ErrorKind::UnknownRegion: return "UnknownRegion";
    case ErrorKind::EmptyNetwork: return "EmptyNetwork";
    case ErrorKind::TooFewWindows: return "TooFewWindows";
    case ErrorKind::MissingInterval: return "MissingInterval";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::InvalidP: return "InvalidP";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::DegenerateTable: return "DegenerateTable";
    case ErrorKind::DegenerateGroup: return "DegenerateGroup";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::MissingAttributes: return "MissingAttributes";
    case ErrorKind::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IntegrityError: return "IntegrityError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace journeynet
