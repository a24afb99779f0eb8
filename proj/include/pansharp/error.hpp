#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pansharp {

enum class ErrorKind {
  MalformedFile,
  ValueOutOfRange,
  IOFailure,
  BandTooSmall,
  NeedThreeBands,
  DegenerateStatistics,
  IdenticalImages,
  AllPixelsExcluded,
  MalformedReport,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` carries the
/// category so callers (the report writer in particular) can map it to a
/// sentinel without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace pansharp
