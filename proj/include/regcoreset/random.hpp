#pragma once

#include "regcoreset/matrix.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace regcoreset {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derive a child seed from a parent seed and a path of indices. Used to give
/// every experiment cell and trial its own stream, independent of scheduling.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

/// Seeded random source. Every draw is built from raw 64-bit engine output so
/// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  /// Standard Cauchy, tan(pi (u - 1/2)).
  double cauchy();
  /// Symmetric alpha-stable draw (Chambers-Mallows-Stuck), alpha in (0, 2].
  double symmetric_stable(double alpha);

  Vector normal_vector(Eigen::Index size);
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace regcoreset
