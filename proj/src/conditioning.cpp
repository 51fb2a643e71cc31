#include "regcoreset/conditioning.hpp"

#include "regcoreset/error.hpp"
#include "regcoreset/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace regcoreset {

std::string_view to_string(BasisConstruction construction) {
  switch (construction) {
    case BasisConstruction::orthonormal: return "orthonormal";
    case BasisConstruction::p_stable_sketch: return "p_stable_sketch";
  }
  return "orthonormal";
}

double dual_exponent(double p) {
  require(p >= 1.0, ErrorKind::invalid_parameter, "p must be >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr std::size_t kBatch = 128;
constexpr int kRefineSteps = 200;

bool full_column_rank(const Matrix& m) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(kRankTolerance);
  return qr.rank() == m.cols();
}

double direction_ratio(const Matrix& u, const Vector& z, double p, double q) {
  const double denom = lp_norm(u * z, p);
  const double num = lp_norm(z, q);
  if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / denom;
}

/// Worst ||z||_q / ||Uz||_p over axes, right singular directions, `trials`
/// random directions (Gaussian, sign and Cauchy mixtures), then a seeded
/// local search around the best direction found.
double probe_beta(const Matrix& u, double p, std::size_t trials, std::uint64_t seed) {
  const Eigen::Index m = u.cols();
  const double q = dual_exponent(p);
  Rng rng(seed);
  double best = 0.0;
  Vector best_z = Vector::Unit(m, 0);
  auto consider = [&](const Vector& z, double ratio) {
    if (ratio > best) {
      best = ratio;
      best_z = z;
    }
  };

  for (Eigen::Index k = 0; k < m; ++k) {
    const Vector e = Vector::Unit(m, k);
    consider(e, direction_ratio(u, e, p, q));
  }
  Eigen::JacobiSVD<Matrix> jsvd(u, Eigen::ComputeThinV);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vector v = jsvd.matrixV().col(k);
    consider(v, direction_ratio(u, v, p, q));
  }

  for (std::size_t start = 0; start < trials; start += kBatch) {
    const std::size_t count = std::min(kBatch, trials - start);
    Matrix z(m, static_cast<Eigen::Index>(count));
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t kind = (start + t) % 3;
      for (Eigen::Index k = 0; k < m; ++k) {
        z(k, static_cast<Eigen::Index>(t)) =
            kind == 0 ? rng.normal() : kind == 1 ? (rng.uniform() < 0.5 ? -1.0 : 1.0) : rng.cauchy();
      }
    }
    const Matrix uz = u * z;
    for (std::size_t t = 0; t < count; ++t) {
      const auto col = static_cast<Eigen::Index>(t);
      const double denom = lp_norm(uz.col(col), p);
      const double num = lp_norm(z.col(col), q);
      consider(z.col(col), denom == 0.0 ? std::numeric_limits<double>::infinity() : num / denom);
    }
  }

  if (trials > 0 && std::isfinite(best)) {
    double step = 0.5;
    for (int it = 0; it < kRefineSteps; ++it) {
      Vector candidate = best_z / lp_norm(best_z, 2.0);
      for (Eigen::Index k = 0; k < m; ++k) candidate(k) += step * rng.normal() / std::sqrt(double(m));
      const double before = best;
      consider(candidate, direction_ratio(u, candidate, p, q));
      if (best == before) step *= 0.97;
    }
  }
  return best;
}

}  // namespace

WellConditionedBasis orthonormal_basis(const Matrix& aprime) {
  require_finite(aprime, "augmented matrix");
  require(aprime.rows() >= aprime.cols(), ErrorKind::shape_error,
          "basis construction needs rows >= cols");
  require(full_column_rank(aprime), ErrorKind::rank_deficiency,
          "augmented matrix is not of full column rank");
  const Eigen::Index m = aprime.cols();
  Eigen::HouseholderQR<Matrix> qr(aprime);
  WellConditionedBasis out;
  out.basis = qr.householderQ() * Matrix::Identity(aprime.rows(), m);
  out.change_of_basis = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  out.alpha = std::sqrt(static_cast<double>(m));
  out.beta = 1.0;
  out.p = 2.0;
  out.construction = BasisConstruction::orthonormal;
  return out;
}

WellConditionedBasis p_conditioned_basis(const Matrix& aprime, double p, std::uint64_t seed,
                                         std::size_t beta_trials) {
  require_finite(aprime, "augmented matrix");
  require(p >= 1.0 && p <= 4.0, ErrorKind::invalid_parameter, "p must lie in [1, 4]");
  const Eigen::Index n = aprime.rows();
  const Eigen::Index m = aprime.cols();
  require(n >= m, ErrorKind::shape_error, "basis construction needs rows >= cols");

  const double md = static_cast<double>(m);
  // 8 m ln m vanishes at m = 1, so never go below 2m rows.
  const auto sketch_rows = static_cast<Eigen::Index>(
      std::max(std::ceil(kSketchRowConstant * md * std::log(md)), 2.0 * md));

  // Stable sketches are heavy-tailed, so a few independent draws are made and
  // the one with the smallest alpha * beta is kept. Singular draws are
  // reseeded; four of them in a row give up.
  constexpr int kCandidates = 3;
  constexpr int kSingularLimit = 4;
  std::optional<WellConditionedBasis> best;
  int valid = 0;
  int singular = 0;
  for (std::uint64_t attempt = 0; valid < kCandidates && singular < kSingularLimit; ++attempt) {
    Rng rng(derive_seed(seed, {0x5ce7c4ULL, attempt}));
    Matrix sketch(sketch_rows, n);
    const double gaussian_scale = 1.0 / std::sqrt(static_cast<double>(sketch_rows));
    for (Eigen::Index i = 0; i < sketch_rows; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (p > 2.0) {
          sketch(i, j) = gaussian_scale * rng.normal();
        } else {
          sketch(i, j) = rng.symmetric_stable(p);
        }
      }
    }
    const Matrix sa = sketch * aprime;
    bool ok = sa.allFinite();
    Matrix r;
    if (ok) {
      Eigen::HouseholderQR<Matrix> qr(sa);
      r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
      const double rmax = r.diagonal().cwiseAbs().maxCoeff();
      ok = rmax > 0.0 && r.diagonal().cwiseAbs().minCoeff() > kRankTolerance * rmax && full_column_rank(sa);
    }
    if (!ok) {
      ++singular;
      continue;
    }
    singular = 0;

    WellConditionedBasis out;
    out.basis = r.transpose().triangularView<Eigen::Lower>().solve(aprime.transpose()).transpose();
    out.change_of_basis = r;
    out.p = p;
    out.construction = BasisConstruction::p_stable_sketch;
    out.sketch_rows = static_cast<std::size_t>(sketch_rows);
    out.beta_trials = beta_trials;
    out.alpha = kAlphaSafety * entrywise_p_norm(out.basis, p);
    const double measured = probe_beta(out.basis, p, beta_trials, derive_seed(seed, {0xbe7aULL, attempt}));
    if (!std::isfinite(measured)) {
      ++singular;
      continue;
    }
    out.beta = kBetaSafety * measured;
    ++valid;
    if (!best || out.alpha * out.beta < best->alpha * best->beta) best = std::move(out);
  }
  if (!best) {
    throw Error(ErrorKind::conditioning_failure,
                "sketch produced a singular triangular factor after 3 reseeds");
  }
  return *best;
}

ConditioningReport verify_conditioning(const WellConditionedBasis& basis, std::size_t trials,
                                       std::uint64_t seed) {
  require(trials >= 1, ErrorKind::invalid_parameter, "trials must be >= 1");
  ConditioningReport report;
  report.trials = trials;
  report.empirical_beta = probe_beta(basis.basis, basis.p, trials, seed);
  report.alpha_witness = entrywise_p_norm(basis.basis, basis.p);
  report.violation = report.empirical_beta > basis.beta * (1.0 + 1e-9) ||
                     report.alpha_witness > basis.alpha * (1.0 + 1e-12);
  return report;
}

}  // namespace regcoreset
