#include "regcoreset/matrix.hpp"

#include "regcoreset/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace regcoreset {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::shape_error: return "shape-error";
    case ErrorKind::rank_deficiency: return "rank-deficiency-error";
    case ErrorKind::conditioning_failure: return "conditioning-failure";
    case ErrorKind::scheme_mismatch: return "scheme-mismatch";
    case ErrorKind::dimension_too_large: return "dimension-too-large";
    case ErrorKind::invalid_scores: return "invalid-scores";
    case ErrorKind::theorem_inapplicable: return "theorem-inapplicable";
    case ErrorKind::degenerate_signal: return "degenerate-signal";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::schema_error: return "schema-error";
  }
  return "unknown-error";
}

void require_finite(const Matrix& m, const char* what) {
  require(m.rows() >= 1 && m.cols() >= 1, ErrorKind::shape_error,
          std::string(what) + " must have at least one row and one column");
  require(m.allFinite(), ErrorKind::invalid_parameter,
          std::string(what) + " contains non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  require(v.size() >= 1, ErrorKind::shape_error, std::string(what) + " is empty");
  require(v.allFinite(), ErrorKind::invalid_parameter,
          std::string(what) + " contains non-finite entries");
}

void RegressionInstance::validate(bool require_tall) const {
  require_finite(design, "design matrix");
  require_finite(response, "response");
  require(response.size() == design.rows(), ErrorKind::shape_error,
          "response length " + std::to_string(response.size()) + " does not match " +
              std::to_string(design.rows()) + " design rows");
  if (require_tall) {
    require(design.rows() >= design.cols(), ErrorKind::shape_error,
            "instance must have at least as many rows as columns");
  }
}

double lp_norm(const Vector& v, double p) {
  require(p >= 1.0, ErrorKind::invalid_parameter, "norm exponent must be >= 1");
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.lpNorm<1>();
  if (p == 2.0) return v.norm();
  // Scale by the max entry so large exponents do not overflow.
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return scale * std::pow((v.cwiseAbs() / scale).array().pow(p).sum(), 1.0 / p);
}

double entrywise_p_norm(const Matrix& m, double p) {
  require(p >= 1.0, ErrorKind::invalid_parameter, "entrywise norm exponent must be >= 1");
  const Eigen::Map<const Vector> flat(m.data(), m.size());
  return lp_norm(flat, p);
}

double induced_norm_upper(const Matrix& m, double p) {
  require(p >= 1.0, ErrorKind::invalid_parameter, "induced norm exponent must be >= 1");
  const double col_sum = m.cwiseAbs().colwise().sum().maxCoeff();
  const double row_sum = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (p == 1.0) return col_sum;
  if (std::isinf(p)) return row_sum;
  if (p == 2.0) {
    Eigen::JacobiSVD<Matrix> jsvd(m);
    return jsvd.singularValues()(0);
  }
  return std::pow(col_sum, 1.0 / p) * std::pow(row_sum, 1.0 - 1.0 / p);
}

SvdResult svd(const Matrix& m) {
  require_finite(m, "svd input");
  require(m.rows() >= m.cols(), ErrorKind::shape_error, "svd requires rows >= cols");
  Eigen::JacobiSVD<Matrix> jsvd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdResult{jsvd.matrixU(), jsvd.singularValues(), jsvd.matrixV()};
}

double statistical_dimension(const Vector& singular_values, double lambda) {
  require(lambda >= 0.0, ErrorKind::invalid_parameter, "lambda must be >= 0");
  require(singular_values.size() >= 1, ErrorKind::shape_error, "empty spectrum");
  double total = 0.0;
  for (Eigen::Index j = 0; j < singular_values.size(); ++j) {
    const double sigma = singular_values(j);
    require(sigma > 0.0, ErrorKind::rank_deficiency, "singular value must be positive");
    const double s2 = sigma * sigma;
    total += s2 / (s2 + lambda);
  }
  return total;
}

Matrix augment(const RegressionInstance& instance) {
  instance.validate();
  Matrix out(instance.design.rows(), instance.design.cols() + 1);
  out.leftCols(instance.design.cols()) = instance.design;
  out.col(instance.design.cols()) = instance.response;
  return out;
}

RegressionInstance split_augmented(const Matrix& augmented) {
  require(augmented.cols() >= 2, ErrorKind::shape_error,
          "augmented matrix needs at least one design column and the response");
  return RegressionInstance{augmented.leftCols(augmented.cols() - 1),
                            augmented.col(augmented.cols() - 1)};
}

}  // namespace regcoreset
