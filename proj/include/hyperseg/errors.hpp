#pragma once

#include <stdexcept>
#include <string>

namespace hyperseg {

/// Bad argument or dimension mismatch. The CLI maps these to exit code 2.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation called before its inputs were populated.
class StateError : public std::logic_error {
 public:
  explicit StateError(const std::string& msg) : std::logic_error(msg) {}
};

/// Cloud whose centered Gram matrix carries no usable signal.
class DegenerateSpectrumError : public std::runtime_error {
 public:
  explicit DegenerateSpectrumError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solver failed to converge within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Metric undefined for the given partition (e.g. silhouette with one cluster).
class MetricError : public std::runtime_error {
 public:
  explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical backend failure or violated numerical invariant.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyperseg
