#include "regcoreset/sensitivity.hpp"

#include "regcoreset/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace regcoreset {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::lp_lp_bound: return "lp_lp_bound";
    case Scheme::rlad_bound: return "rlad_bound";
    case Scheme::multiresponse_rlad_bound: return "multiresponse_rlad_bound";
    case Scheme::ridge_leverage: return "ridge_leverage";
    case Scheme::uniform: return "uniform";
    case Scheme::brute_force: return "brute_force";
  }
  return "uniform";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::lp_lp_bound, Scheme::rlad_bound, Scheme::multiresponse_rlad_bound,
                   Scheme::ridge_leverage, Scheme::uniform, Scheme::brute_force}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

SensitivityScores lp_lp_sensitivity_bounds(const WellConditionedBasis& basis, double lambda,
                                           double induced_p_norm_aprime, std::size_t n) {
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::invalid_parameter,
          "lambda must be finite and >= 0");
  require(induced_p_norm_aprime > 0.0, ErrorKind::invalid_parameter,
          "induced norm of A' must be positive");
  require(n >= 1 && static_cast<Eigen::Index>(n) == basis.basis.rows(), ErrorKind::shape_error,
          "n must equal the number of basis rows");
  const double p = basis.p;
  const double shrink = 1.0 + lambda / std::pow(induced_p_norm_aprime, p);
  const double beta_p = std::pow(basis.beta, p);
  const double inv_n = 1.0 / static_cast<double>(n);

  SensitivityScores out;
  out.values.resize(static_cast<Eigen::Index>(n));
  out.scheme = Scheme::lp_lp_bound;
  out.lambda = lambda;
  out.p = p;
  double row_mass = 0.0;
  for (Eigen::Index i = 0; i < basis.basis.rows(); ++i) {
    const double row_norm_p = std::pow(lp_norm(basis.basis.row(i).transpose(), p), p);
    row_mass += row_norm_p;
    out.values(i) = beta_p * row_norm_p / shrink + inv_n;
  }
  out.total = out.values.sum();

  // sum_i ||u_i||_p^p = ||U||_p^p <= alpha^p, so the total obeys the certificate.
  const double certificate = std::pow(basis.alpha * basis.beta, p) / shrink + 1.0;
  if (row_mass > std::pow(basis.alpha, p) * (1.0 + 1e-9) || out.total > certificate * (1.0 + 1e-9)) {
    throw std::logic_error("sensitivity total exceeds the (alpha beta)^p certificate");
  }
  return out;
}

SensitivityScores rlad_sensitivity_bounds(const WellConditionedBasis& basis, double lambda,
                                          const Matrix& aprime) {
  require(basis.p == 1.0, ErrorKind::scheme_mismatch, "RLAD bounds need a basis with p = 1");
  require(aprime.rows() == basis.basis.rows(), ErrorKind::shape_error,
          "basis and A' row counts differ");
  SensitivityScores out = lp_lp_sensitivity_bounds(basis, lambda, induced_norm_upper(aprime, 1.0),
                                                   static_cast<std::size_t>(aprime.rows()));
  out.scheme = Scheme::rlad_bound;
  return out;
}

MultiresponseScores multiresponse_rlad_sensitivity_bounds(const WellConditionedBasis& basis_of_ahat,
                                                          double lambda, const Matrix& ahat,
                                                          std::size_t k) {
  require(k >= 1, ErrorKind::invalid_parameter, "number of responses k must be >= 1");
  require(basis_of_ahat.p == 1.0, ErrorKind::scheme_mismatch,
          "multiresponse RLAD bounds need a basis with p = 1");
  const auto kk = static_cast<Eigen::Index>(k);
  require(ahat.cols() > kk, ErrorKind::shape_error, "Ahat must hold at least one design column");
  require(ahat.rows() == basis_of_ahat.basis.rows(), ErrorKind::shape_error,
          "basis and Ahat row counts differ");

  MultiresponseScores out;
  out.design_block_norm = induced_norm_upper(ahat.leftCols(ahat.cols() - kk), 1.0);
  out.augmented_norm = induced_norm_upper(ahat, 1.0);
  require(out.design_block_norm > 0.0, ErrorKind::invalid_parameter, "design block is zero");
  out.scores = lp_lp_sensitivity_bounds(basis_of_ahat, lambda, out.design_block_norm,
                                        static_cast<std::size_t>(ahat.rows()));
  out.scores.scheme = Scheme::multiresponse_rlad_bound;
  return out;
}

SensitivityScores ridge_leverage_scores(const Matrix& aprime, double lambda) {
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::invalid_parameter,
          "lambda must be finite and >= 0");
  const SvdResult dec = svd(aprime);
  const double smax = dec.singular_values(0);
  const double smin = dec.singular_values(dec.singular_values.size() - 1);
  if (lambda == 0.0) {
    require(smax > 0.0 && smin > 1e-12 * smax, ErrorKind::rank_deficiency,
            "lambda = 0 leverage scores need a full-rank matrix");
  }
  Vector shrink(dec.singular_values.size());
  for (Eigen::Index j = 0; j < shrink.size(); ++j) {
    const double s2 = dec.singular_values(j) * dec.singular_values(j);
    shrink(j) = s2 == 0.0 ? 0.0 : s2 / (s2 + lambda);
  }
  SensitivityScores out;
  out.values = dec.left.array().square().matrix() * shrink;
  out.total = out.values.sum();
  out.scheme = Scheme::ridge_leverage;
  out.lambda = lambda;
  out.p = 2.0;
  return out;
}

namespace {

/// Unit directions covering the sphere in R^m for m in {1, 2, 3}; antipodal
/// points are skipped because every ratio is even in x'.
std::vector<Vector> sphere_grid(Eigen::Index m, std::size_t resolution) {
  std::vector<Vector> dirs;
  const double pi = std::numbers::pi;
  if (m == 1) {
    dirs.push_back(Vector::Ones(1));
  } else if (m == 2) {
    for (std::size_t k = 0; k < 2 * resolution; ++k) {
      const double t = pi * static_cast<double>(k) / static_cast<double>(2 * resolution);
      Vector v(2);
      v << std::cos(t), std::sin(t);
      dirs.push_back(v);
    }
  } else {
    const std::size_t polar = resolution;
    const std::size_t azimuth = 2 * resolution;
    for (std::size_t a = 0; a <= polar; ++a) {
      const double theta = pi * static_cast<double>(a) / static_cast<double>(polar);
      const std::size_t steps = (a == 0 || a == polar) ? 1 : azimuth;
      for (std::size_t b = 0; b < steps; ++b) {
        const double phi = 2.0 * pi * static_cast<double>(b) / static_cast<double>(azimuth);
        Vector v(3);
        v << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
        dirs.push_back(v);
      }
    }
  }
  return dirs;
}

}  // namespace

SensitivityScores brute_force_sensitivity(const RegressionInstance& instance,
                                          const ObjectiveSpec& spec, std::size_t grid_resolution,
                                          std::size_t radius_levels) {
  instance.validate();
  require(spec.p >= 1.0, ErrorKind::invalid_parameter, "p must be >= 1");
  require(spec.lambda >= 0.0, ErrorKind::invalid_parameter, "lambda must be >= 0");
  require(instance.d() + 1 <= 3, ErrorKind::dimension_too_large,
          "brute-force oracle supports d + 1 <= 3 only");
  require(grid_resolution >= 16, ErrorKind::invalid_parameter, "grid_resolution must be >= 16");

  const Matrix aprime = augment(instance);
  const Eigen::Index n = aprime.rows();
  const Eigen::Index m = aprime.cols();
  const double p = spec.p;
  const double lambda = spec.lambda;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<Vector> queries = sphere_grid(m, grid_resolution);
  // Regression-shaped queries x' = (rho w, -1) over a log-spaced radius sweep.
  const std::vector<Vector> inner = sphere_grid(m - 1, grid_resolution);
  for (std::size_t level = 0; level < radius_levels; ++level) {
    const double expo = radius_levels == 1
                            ? 0.0
                            : -3.0 + 6.0 * static_cast<double>(level) /
                                         static_cast<double>(radius_levels - 1);
    const double rho = std::pow(10.0, expo);
    for (const Vector& w : inner) {
      Vector x(m);
      x.head(m - 1) = rho * w;
      x(m - 1) = -1.0;
      queries.push_back(x);
      x.head(m - 1) = -rho * w;
      queries.push_back(x);
    }
  }
  Vector last = Vector::Zero(m);
  last(m - 1) = -1.0;
  queries.push_back(last);

  SensitivityScores out;
  out.values = Vector::Zero(n);
  out.scheme = Scheme::brute_force;
  out.lambda = lambda;
  out.p = p;
  Vector contrib(n);
  for (const Vector& x : queries) {
    const Vector ax = aprime * x;
    for (Eigen::Index i = 0; i < n; ++i) contrib(i) = std::pow(std::abs(ax(i)), p);
    const double reg = lambda * std::pow(lp_norm(x, p), p);
    const double denom = contrib.sum() + reg;
    if (!(denom > 0.0)) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      out.values(i) = std::max(out.values(i), (contrib(i) + reg * inv_n) / denom);
    }
  }
  out.total = out.values.sum();
  return out;
}

SensitivityScores uniform_scores(std::size_t n) {
  require(n >= 1, ErrorKind::invalid_parameter, "n must be >= 1");
  SensitivityScores out;
  out.values = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  out.total = 1.0;
  out.scheme = Scheme::uniform;
  return out;
}

}  // namespace regcoreset
