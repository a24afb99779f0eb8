#include "pansharp/error.hpp"

namespace pansharp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::IOFailure: return "IOFailure";
    case ErrorKind::BandTooSmall: return "BandTooSmall";
    case ErrorKind::NeedThreeBands: return "NeedThreeBands";
    case ErrorKind::DegenerateStatistics: return "DegenerateStatistics";
    case ErrorKind::IdenticalImages: return "IdenticalImages";
    case ErrorKind::AllPixelsExcluded: return "AllPixelsExcluded";
    case ErrorKind::MalformedReport: return "MalformedReport";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace pansharp
