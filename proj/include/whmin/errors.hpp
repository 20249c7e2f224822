#pragma once

#include <stdexcept>
#include <string>

namespace whmin {

// Base class for data-level failures surfaced to callers (exit code 2 in the CLI).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed word text, dataset file or model file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Model training could not complete (starved classes, singular covariance).
class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what) : Error(what) {}
};

// Dataset generation exhausted its retry budget.
class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what) : Error(what) {}
};

// Inconsistent engine configuration (missing or mismatched models).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace whmin
