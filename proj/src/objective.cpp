#include "regcoreset/objective.hpp"

#include "regcoreset/error.hpp"

#include <cmath>

namespace regcoreset {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::lp_lp: return "lp_lp";
    case Family::ridge: return "ridge";
    case Family::lasso: return "lasso";
    case Family::modified_lasso: return "modified_lasso";
    case Family::rlad: return "rlad";
    case Family::multiresponse_rlad: return "multiresponse_rlad";
    case Family::general: return "general";
  }
  return "general";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (Family f : {Family::lp_lp, Family::ridge, Family::lasso, Family::modified_lasso,
                   Family::rlad, Family::multiresponse_rlad, Family::general}) {
    if (name == to_string(f)) return f;
  }
  // Accept the dashed spellings used on the command line.
  if (name == "lp-lp") return Family::lp_lp;
  if (name == "modified-lasso") return Family::modified_lasso;
  if (name == "multiresponse-rlad") return Family::multiresponse_rlad;
  return std::nullopt;
}

ObjectiveSpec ObjectiveSpec::lp_lp(double p, double lambda) {
  return {p, p, p, p, lambda, Family::lp_lp};
}
ObjectiveSpec ObjectiveSpec::ridge(double lambda) { return {2, 2, 2, 2, lambda, Family::ridge}; }
ObjectiveSpec ObjectiveSpec::lasso(double lambda) { return {2, 1, 2, 1, lambda, Family::lasso}; }
ObjectiveSpec ObjectiveSpec::modified_lasso(double lambda) {
  return {2, 1, 2, 2, lambda, Family::modified_lasso};
}
ObjectiveSpec ObjectiveSpec::rlad(double lambda) { return {1, 1, 1, 1, lambda, Family::rlad}; }
ObjectiveSpec ObjectiveSpec::multiresponse_rlad(double lambda) {
  return {1, 1, 1, 1, lambda, Family::multiresponse_rlad};
}
ObjectiveSpec ObjectiveSpec::general(double p, double q, double r, double s, double lambda) {
  return {p, q, r, s, lambda, Family::general};
}

ObjectiveSpec ObjectiveSpec::for_family(Family family, double lambda, double p) {
  switch (family) {
    case Family::lp_lp: return lp_lp(p, lambda);
    case Family::ridge: return ridge(lambda);
    case Family::lasso: return lasso(lambda);
    case Family::modified_lasso: return modified_lasso(lambda);
    case Family::rlad: return rlad(lambda);
    case Family::multiresponse_rlad: return multiresponse_rlad(lambda);
    case Family::general: break;
  }
  throw Error(ErrorKind::invalid_parameter, "general family needs explicit exponents");
}

void ObjectiveSpec::validate() const {
  require(p >= 1.0 && q >= 1.0, ErrorKind::invalid_parameter, "norm exponents p, q must be >= 1");
  require(r > 0.0 && s > 0.0, ErrorKind::invalid_parameter, "powers r, s must be positive");
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::invalid_parameter,
          "lambda must be finite and >= 0");
  auto expect = [&](double ep, double eq, double er, double es) {
    require(p == ep && q == eq && r == er && s == es, ErrorKind::invalid_parameter,
            "exponents do not match family " + std::string(to_string(family)));
  };
  switch (family) {
    case Family::lp_lp:
      require(q == p && r == p && s == p, ErrorKind::invalid_parameter,
              "lp_lp family requires p = q = r = s");
      break;
    case Family::ridge: expect(2, 2, 2, 2); break;
    case Family::lasso: expect(2, 1, 2, 1); break;
    case Family::modified_lasso: expect(2, 1, 2, 2); break;
    case Family::rlad:
    case Family::multiresponse_rlad: expect(1, 1, 1, 1); break;
    case Family::general: break;
  }
}

double weighted_loss(const Vector& residual, const Vector& weights, double p, double r) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    const double a = std::abs(residual(i));
    sum += weights(i) * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p));
  }
  return r == p ? sum : std::pow(sum, r / p);
}

double evaluate_objective(const RegressionInstance& instance, const Vector& x,
                          const ObjectiveSpec& spec) {
  spec.validate();
  require(x.size() == instance.design.cols(), ErrorKind::shape_error,
          "solution length does not match design columns");
  require(instance.response.size() == instance.design.rows(), ErrorKind::shape_error,
          "response length does not match design rows");
  const Vector residual = instance.design * x - instance.response;
  const double loss = weighted_loss(residual, Vector::Ones(residual.size()), spec.p, spec.r);
  if (spec.lambda == 0.0) return loss;
  return loss + spec.lambda * std::pow(lp_norm(x, spec.q), spec.s);
}

}  // namespace regcoreset
