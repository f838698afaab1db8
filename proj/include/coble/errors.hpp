#pragma once

#include <stdexcept>
#include <string>

namespace coble {

enum class ErrorKind {
  // exact_arith
  DegenerateAlgebra,
  NotABasis,
  // plane_config / coble_gamma
  DegenerateConfig,
  NotDefinedHere,
  InsufficientSamples,
  // weyl_e6
  InternalInconsistency,
  NotInGroup,
  // clebsch_inv / surface_builder
  ZeroVector,
  NoProperPentahedron,
  MultipleZeroes,
  UnexpectedKernel,
  // galois_twist
  DescentDimensionMismatch,
  RelationTransportError,
  NotFoundWithinBound,
  // input handling
  InvalidInput,
};

const char* error_name(ErrorKind kind);

/// Input errors are the caller's fault; everything else is a mathematical
/// outcome of otherwise well-formed input.
inline bool is_input_error(ErrorKind kind) { return kind == ErrorKind::InvalidInput || kind == ErrorKind::NotInGroup; }

class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw MathError(kind, detail); }

}  // namespace coble
