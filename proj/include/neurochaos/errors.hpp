#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace neurochaos {

// Error taxonomy mirrors the CLI exit codes: usage/argument (1),
// data (2), protocol (3).

class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// A chaotic neuron hit its iteration cap before reaching the stimulus
// neighbourhood while approximating a function.
class ApproximationError : public std::runtime_error {
 public:
  ApproximationError(const std::string& what, std::vector<std::size_t> indices)
      : std::runtime_error(what), unfired_indices(std::move(indices)) {}

  std::vector<std::size_t> unfired_indices;
};

}  // namespace neurochaos
