#pragma once

#include <stdexcept>
#include <string>

namespace nonet {

// Input violates a model invariant (graph, network, parameters, config).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A spectrum does not have the structure an operation requires
// (e.g. a zero eigenvalue that is not simple).
class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative method hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonet
