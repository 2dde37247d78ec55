#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isokit {

// Error raised when an operation is asked for parameters outside its domain
// (e.g. D <= d for an error-detection task, malformed diagrams, bad indices).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Error raised when a computation would exceed the configured resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error raised when an operator fails a structural precondition beyond
// tolerance (comb conditions violated, instrument not of the expected form).
class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  explicit StructureError(const std::string& what)
      : std::runtime_error(what), residual_(0.0) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Global resource / tolerance knobs.  All dense tensor allocations are checked
// against memory_cap_mb; numeric structure checks use `tolerance`.
struct ResourceConfig {
  std::size_t memory_cap_mb = 4096;
  double tolerance = 1e-10;
};

ResourceConfig& resource_config();

// Throws ResourceError if an allocation of `bytes` would exceed the cap.
void check_allocation(std::size_t bytes, const char* what);

}  // namespace isokit
