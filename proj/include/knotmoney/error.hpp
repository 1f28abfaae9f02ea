#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotmoney {

enum class ErrorKind {
  NotAPermutation,
  NotDisjoint,
  DimensionTooSmall,
  MalformedEncoding,
  IllegalTransposition,
  NoMarkerAtPosition,
  IllegalDestabilization,
  ExplosionLimit,
  DisconnectedProjection,
  StateTooLarge,
  SpaceTooLarge,
  ZeroProbability,
  SerialMismatch,
  InvalidParameter,
  MalformedFile,
  CapacityExceeded,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Structured failure carrying a machine-readable kind. Every throwing
/// operation in the library reports through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace knotmoney
