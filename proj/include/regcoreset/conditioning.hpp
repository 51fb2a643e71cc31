#pragma once

#include "regcoreset/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace regcoreset {

enum class BasisConstruction { orthonormal, p_stable_sketch };

std::string_view to_string(BasisConstruction construction);

/// Factorization A' = U V where U is an (alpha, beta, p) well-conditioned basis:
/// ||U||_p <= alpha (entrywise) and ||z||_q <= beta ||U z||_p with 1/p + 1/q = 1.
struct WellConditionedBasis {
  Matrix basis;            // U, n x m
  Matrix change_of_basis;  // V, m x m
  double alpha = 0.0;
  double beta = 0.0;
  double p = 2.0;
  BasisConstruction construction = BasisConstruction::orthonormal;
  std::size_t sketch_rows = 0;     // 0 for the orthonormal construction
  std::size_t beta_trials = 0;     // directions used to certify beta
};

struct ConditioningReport {
  double empirical_beta = 0.0;  // max over probed z of ||z||_q / ||Uz||_p
  double alpha_witness = 0.0;   // entrywise_p_norm(U, p)
  std::size_t trials = 0;
  bool violation = false;       // empirical_beta > beta or alpha_witness > alpha
};

/// Safety factors used by the sketch construction.
inline constexpr double kSketchRowConstant = 8.0;
inline constexpr double kAlphaSafety = 1.01;
inline constexpr double kBetaSafety = 1.25;
inline constexpr std::size_t kDefaultBetaTrials = 2000;

/// Dual exponent q with 1/p + 1/q = 1 (p = 1 gives infinity).
double dual_exponent(double p);

/// Thin QR of A': U has orthonormal columns, V = R. A (sqrt(m), 1, 2) basis.
WellConditionedBasis orthonormal_basis(const Matrix& aprime);

/// Sketch-based basis: QR of S A' for a p-stable (p <= 2) or Gaussian (p > 2)
/// sketch S with ceil(8 m ln m) rows, then U = A' R^-1. alpha is the measured
/// entrywise norm times 1.01; beta is the empirical bound times 1.25. Of three
/// independent sketches, the one with the smallest alpha * beta is returned.
WellConditionedBasis p_conditioned_basis(const Matrix& aprime, double p, std::uint64_t seed,
                                         std::size_t beta_trials = kDefaultBetaTrials);

/// Probe `trials` seeded directions (plus coordinate axes and the weakest
/// singular direction of U) for the worst ||z||_q / ||Uz||_p.
ConditioningReport verify_conditioning(const WellConditionedBasis& basis, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace regcoreset
