#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bpmkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model type invariant was violated while constructing a model.
class ModelError : public Error {
 public:
  using Error::Error;
};

// bpmn-io
class XmlError : public Error {
 public:
  using Error::Error;
};
class SchemaError : public Error {
 public:
  using Error::Error;
};
class DanglingRefError : public Error {
 public:
  using Error::Error;
};

// Structural analysis
class CyclicModelError : public Error {
 public:
  using Error::Error;
};
class UnstructuredError : public Error {
 public:
  using Error::Error;
};
class InclusiveGatewayUnsupported : public Error {
 public:
  using Error::Error;
};

// Scenario parsing. Both carry the 1-based line number of the offending line.
class ScenarioLineError : public Error {
 public:
  ScenarioLineError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};
class ScenarioSyntaxError : public ScenarioLineError {
 public:
  using ScenarioLineError::ScenarioLineError;
};
class ScenarioRangeError : public ScenarioLineError {
 public:
  using ScenarioLineError::ScenarioLineError;
};

// Scenario binding
class MissingDurationError : public Error {
 public:
  explicit MissingDurationError(std::vector<std::string> labels);
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
};
class MissingProbabilityError : public Error {
 public:
  using Error::Error;
};
class AmbiguousMatchError : public Error {
 public:
  using Error::Error;
};
class SumError : public Error {
 public:
  using Error::Error;
};

}  // namespace bpmkit
