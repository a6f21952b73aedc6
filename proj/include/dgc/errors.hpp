#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dgc {

enum class ErrorKind {
  FieldMismatch,
  GradingMismatch,
  DimensionMismatch,
  CompositionNotZero,
  InvalidComplex,
  InvalidArgument,
  CategoryMismatch,
  NonUnital,
  NonUnitalMiddle,
  TruncationTooSmall,
  DepthExceeded,
  Schema,
  NotFound,
  ValidationFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Validators never throw; they collect one line per violated law.
struct ValidationReport {
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  void fail(std::string message) { failures.push_back(std::move(message)); }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& f : other.failures) failures.push_back(prefix + f);
  }
};

}  // namespace dgc
