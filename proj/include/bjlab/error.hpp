#pragma once

#include <stdexcept>
#include <string>

namespace bjlab {

enum class ErrorKind {
  ZeroVector,
  ZeroElement,
  NotSmooth,
  ShapeMismatch,
  NonFiniteValue,
  UnsupportedExponent,
  BadSpec,
  DegenerateDraw,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bjlab
