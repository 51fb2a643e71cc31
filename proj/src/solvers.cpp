#include "regcoreset/solvers.hpp"

#include "regcoreset/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace regcoreset {

namespace {

void check_common(const RegressionInstance& instance, double lambda) {
  instance.validate();
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::invalid_parameter,
          "lambda must be finite and >= 0");
}

void check_options(const SolverOptions& options) {
  require(options.tol > 0.0, ErrorKind::invalid_parameter, "tol must be positive");
  require(options.max_iter >= 1, ErrorKind::invalid_parameter, "max_iter must be >= 1");
}

double soft_threshold(double v, double k) {
  return v > k ? v - k : (v < -k ? v + k : 0.0);
}

/// ||Ax - b||^2 and its gradient from the triangular factor of [A b], so each
/// evaluation costs O(d^2) and keeps full accuracy when the residual is tiny.
class LeastSquaresModel {
 public:
  explicit LeastSquaresModel(const RegressionInstance& instance)
      : d_(instance.design.cols()) {
    const Matrix aprime = augment(instance);
    Eigen::HouseholderQR<Matrix> qr(aprime);
    const Eigen::Index k = std::min(aprime.rows(), aprime.cols());
    r_ = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    atb_ = instance.design.transpose() * instance.response;
    Eigen::JacobiSVD<Matrix> jsvd(r_.leftCols(d_));
    const double smax = jsvd.singularValues().size() > 0 ? jsvd.singularValues()(0) : 0.0;
    lipschitz_ = 2.0 * smax * smax;
    if (!(lipschitz_ > 0.0)) lipschitz_ = 1.0;
  }

  double value(const Vector& x) const { return residual(x).squaredNorm(); }

  Vector gradient(const Vector& x) const {
    return 2.0 * r_.leftCols(d_).transpose() * residual(x);
  }

  double lipschitz() const { return lipschitz_; }
  const Vector& atb() const { return atb_; }

 private:
  Vector residual(const Vector& x) const {
    return r_.leftCols(d_) * x - r_.col(d_);
  }

  Eigen::Index d_;
  Matrix r_;
  Vector atb_;
  double lipschitz_ = 1.0;
};

struct ProxProblem {
  // prox(v, step) = argmin_x 1/2 ||x - v||^2 + step * g(x)
  std::function<Vector(const Vector&, double)> prox;
  std::function<double(const Vector&)> regularizer;
  // Minimal-norm element of grad f(x) + dg(x).
  std::function<Vector(const Vector&, const Vector&)> min_subgradient;
};

SolverResult run_fista(const RegressionInstance& instance, const ProxProblem& problem,
                       const SolverOptions& options) {
  const LeastSquaresModel model(instance);
  const Eigen::Index d = instance.design.cols();
  const double lip = model.lipschitz();
  const double scale = 1.0 + model.atb().norm();
  auto objective = [&](const Vector& x) { return model.value(x) + problem.regularizer(x); };

  Vector x = Vector::Zero(d);
  Vector x_prev = x;
  Vector y = x;
  double fx = objective(x);
  double t = 1.0;
  double checkpoint = fx;

  SolverResult result;
  result.converged = false;
  std::size_t k = 0;
  for (k = 1; k <= options.max_iter; ++k) {
    const Vector z = problem.prox(y - model.gradient(y) / lip, 1.0 / lip);
    const double fz = objective(z);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    x_prev = x;
    if (fz <= fx) {
      x = z;
      fx = fz;
      y = x + (t / t_next) * (z - x) + ((t - 1.0) / t_next) * (x - x_prev);
      t = t_next;
    } else {
      // Restart momentum; x stays, so the objective never increases.
      y = x;
      t = 1.0;
    }
    if (k % 10 == 0) {
      const double decrease = (checkpoint - fx) / std::max(std::abs(fx), 1e-300);
      checkpoint = fx;
      const double residual = problem.min_subgradient(x, model.gradient(x)).norm() / scale;
      result.optimality_residual = residual;
      if (decrease < options.tol && residual < options.tol) {
        result.converged = true;
        break;
      }
    }
  }
  if (!result.converged) {
    result.optimality_residual = problem.min_subgradient(x, model.gradient(x)).norm() / scale;
    k = options.max_iter;
  }
  result.solution = x;
  result.iterations = k;
  return result;
}

}  // namespace

SolverResult solve_ridge(const RegressionInstance& instance, double lambda) {
  check_common(instance, lambda);
  const Matrix& a = instance.design;
  Eigen::JacobiSVD<Matrix> jsvd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = jsvd.singularValues();
  if (lambda == 0.0) {
    const bool full_rank = a.rows() >= a.cols() && sigma.size() == a.cols() && sigma(0) > 0.0 &&
                           sigma(sigma.size() - 1) > 1e-12 * sigma(0);
    require(full_rank, ErrorKind::rank_deficiency, "lambda = 0 ridge needs a full-rank design");
  }
  Vector filter(sigma.size());
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    const double s = sigma(j);
    filter(j) = s == 0.0 ? 0.0 : s / (s * s + lambda);
  }
  SolverResult out;
  out.solution = jsvd.matrixV() * filter.asDiagonal() * (jsvd.matrixU().transpose() * instance.response);
  const Vector atb = a.transpose() * instance.response;
  const Vector normal = a.transpose() * (a * out.solution) + lambda * out.solution - atb;
  out.optimality_residual = normal.norm() / (1.0 + atb.norm());
  out.iterations = 1;
  out.converged = true;
  out.objective_value = evaluate_objective(instance, out.solution, ObjectiveSpec::ridge(lambda));
  return out;
}

Vector prox_squared_l1(const Vector& v, double t) {
  require(t >= 0.0 && std::isfinite(t), ErrorKind::invalid_parameter, "prox step must be >= 0");
  require(v.allFinite(), ErrorKind::invalid_parameter, "prox input contains non-finite entries");
  const Eigen::Index d = v.size();
  if (d == 0 || t == 0.0) return v;
  std::vector<double> mags(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) mags[static_cast<std::size_t>(i)] = std::abs(v(i));
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // Shared threshold theta_k = 2t sum_{i<=k} |v|_(i) / (1 + 2tk) over the k largest.
  double running = 0.0;
  double theta = 0.0;
  bool any_active = false;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    running += mags[k];
    const double candidate = 2.0 * t * running / (1.0 + 2.0 * t * static_cast<double>(k + 1));
    if (mags[k] > candidate) {
      theta = candidate;
      any_active = true;
    } else {
      break;
    }
  }
  if (!any_active) return Vector::Zero(d);
  Vector out(d);
  for (Eigen::Index i = 0; i < d; ++i) out(i) = soft_threshold(v(i), theta);
  return out;
}

SolverResult solve_lasso(const RegressionInstance& instance, double lambda,
                         const SolverOptions& options) {
  check_common(instance, lambda);
  check_options(options);
  ProxProblem problem;
  problem.prox = [lambda](const Vector& v, double step) {
    return v.unaryExpr([k = lambda * step](double e) { return soft_threshold(e, k); }).eval();
  };
  problem.regularizer = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
  problem.min_subgradient = [lambda](const Vector& x, const Vector& g) {
    Vector out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      out(j) = x(j) != 0.0 ? g(j) + lambda * (x(j) > 0 ? 1.0 : -1.0)
                           : std::max(std::abs(g(j)) - lambda, 0.0);
    }
    return out;
  };
  SolverResult out = run_fista(instance, problem, options);
  out.objective_value = evaluate_objective(instance, out.solution, ObjectiveSpec::lasso(lambda));
  return out;
}

SolverResult solve_modified_lasso(const RegressionInstance& instance, double lambda,
                                  const SolverOptions& options) {
  check_common(instance, lambda);
  check_options(options);
  ProxProblem problem;
  problem.prox = [lambda](const Vector& v, double step) { return prox_squared_l1(v, lambda * step); };
  problem.regularizer = [lambda](const Vector& x) {
    const double l1 = x.lpNorm<1>();
    return lambda * l1 * l1;
  };
  problem.min_subgradient = [lambda](const Vector& x, const Vector& g) {
    // d(lambda ||x||_1^2) = 2 lambda ||x||_1 d||x||_1
    const double weight = 2.0 * lambda * x.lpNorm<1>();
    Vector out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      out(j) = x(j) != 0.0 ? g(j) + weight * (x(j) > 0 ? 1.0 : -1.0)
                           : std::max(std::abs(g(j)) - weight, 0.0);
    }
    return out;
  };
  SolverResult out = run_fista(instance, problem, options);
  out.objective_value =
      evaluate_objective(instance, out.solution, ObjectiveSpec::modified_lasso(lambda));
  return out;
}

namespace {

struct AdmmState {
  Vector x;
  Vector z2;
  std::size_t iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

/// Over-relaxed ADMM on min ||z1||_1 + lambda ||z2||_1 s.t. z1 = Ax - b, z2 = x.
AdmmState admm_rlad(const Matrix& a, const Vector& b, double lambda, double tol,
                    std::size_t max_iter) {
  const Eigen::Index n = a.rows();
  const Eigen::Index d = a.cols();
  constexpr double kRelax = 1.6;
  constexpr double kBalance = 10.0;
  constexpr double kRhoFactor = 2.0;

  // Both constraints share rho, so the x-update
  // (A^T A + I) x = A^T (z1 + b - u1) + (z2 - u2) is factored once.
  const Eigen::LLT<Matrix> factor(a.transpose() * a + Matrix::Identity(d, d));
  double rho = 1.0;
  AdmmState st;
  st.x = Vector::Zero(d);
  st.z2 = Vector::Zero(d);
  Vector z1 = -b;
  Vector u1 = Vector::Zero(n);
  Vector u2 = Vector::Zero(d);
  const double b_norm = b.norm();
  const double sqrt_primal = std::sqrt(static_cast<double>(n + d));
  const double sqrt_dual = std::sqrt(static_cast<double>(d));

  for (st.iterations = 1; st.iterations <= max_iter; ++st.iterations) {
    Vector& x = st.x;
    Vector& z2 = st.z2;
    x = factor.solve(a.transpose() * (z1 + b - u1) + (z2 - u2));
    const Vector ax = a * x;
    const Vector h1 = kRelax * (ax - b) + (1.0 - kRelax) * z1;
    const Vector h2 = kRelax * x + (1.0 - kRelax) * z2;
    const Vector z1_old = z1;
    const Vector z2_old = z2;
    z1 = (h1 + u1).unaryExpr([k1 = 1.0 / rho](double e) { return soft_threshold(e, k1); });
    z2 = (h2 + u2).unaryExpr([k2 = lambda / rho](double e) { return soft_threshold(e, k2); });
    u1 += h1 - z1;
    u2 += h2 - z2;

    const double primal = std::sqrt((ax - b - z1).squaredNorm() + (x - z2).squaredNorm());
    const double dual = rho * (a.transpose() * (z1 - z1_old) + (z2 - z2_old)).norm();
    const double primal_scale =
        sqrt_primal + std::max({std::sqrt(ax.squaredNorm() + x.squaredNorm()),
                                std::sqrt(z1.squaredNorm() + z2.squaredNorm()), b_norm});
    const double dual_scale = sqrt_dual + rho * (a.transpose() * u1 + u2).norm();
    st.residual = std::max(primal / primal_scale, dual / dual_scale);
    if (st.residual < tol) {
      st.converged = true;
      return st;
    }
    if (st.iterations % 10 == 0) {
      if (primal > kBalance * dual) {
        rho *= kRhoFactor;
        u1 /= kRhoFactor;
        u2 /= kRhoFactor;
      } else if (dual > kBalance * primal) {
        rho /= kRhoFactor;
        u1 *= kRhoFactor;
        u2 *= kRhoFactor;
      }
    }
  }
  st.iterations = max_iter;
  return st;
}

struct VertexResult {
  Vector x;
  std::size_t pivots = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool optimal = false;
};

/// Exact minimizer of ||Mx - c||_1 by simplex-style descent over vertices,
/// started from the vertex spanned by the rows nearest to zero residual at x0.
/// Returns nullopt when M has no d independent rows.
std::optional<VertexResult> l1_vertex_descent(const Matrix& m, const Vector& c, const Vector& x0,
                                              double tol, std::size_t max_pivots) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index d = m.cols();
  const Vector row_norms = m.rowwise().norm();

  // Greedy independent rows, smallest scaled residual first.
  const Vector r0 = m * x0 - c;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto scaled = [&](Eigen::Index i) {
    return row_norms(i) > 0.0 ? std::abs(r0(i)) / row_norms(i) : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return scaled(i) < scaled(j); });
  std::vector<Eigen::Index> basis;
  Matrix q(d, d);
  for (Eigen::Index i : order) {
    if (static_cast<Eigen::Index>(basis.size()) == d || !(row_norms(i) > 0.0)) break;
    Vector v = m.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(basis.size()); ++k) {
        v -= q.col(k).dot(v) * q.col(k);
      }
    }
    if (v.norm() <= 1e-9 * row_norms(i)) continue;
    q.col(static_cast<Eigen::Index>(basis.size())) = v.normalized();
    basis.push_back(i);
  }
  if (static_cast<Eigen::Index>(basis.size()) < d) return std::nullopt;

  std::vector<char> in_basis(static_cast<std::size_t>(rows), 0);
  for (Eigen::Index i : basis) in_basis[static_cast<std::size_t>(i)] = 1;

  VertexResult out;
  const double scale = 1.0 + c.cwiseAbs().maxCoeff();
  for (out.pivots = 0; out.pivots <= max_pivots; ++out.pivots) {
    Matrix mb(d, d);
    Vector cb(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      mb.row(k) = m.row(basis[static_cast<std::size_t>(k)]);
      cb(k) = c(basis[static_cast<std::size_t>(k)]);
    }
    const Eigen::PartialPivLU<Matrix> lu(mb);
    out.x = lu.solve(cb);
    const Matrix inv = lu.inverse();
    const Vector r = m * out.x - c;
    const Matrix dirs = m * inv;  // column k moves basis row k off zero at unit rate

    // Directional derivatives along +-dirs.col(k).
    Vector signed_sum = Vector::Zero(d);
    Vector degenerate = Vector::Zero(d);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (in_basis[static_cast<std::size_t>(i)]) continue;
      const double zero_tol = 1e-12 * (std::abs(c(i)) + row_norms(i) * out.x.norm() + 1e-300);
      if (std::abs(r(i)) <= zero_tol) {
        degenerate += dirs.row(i).cwiseAbs().transpose();
      } else {
        signed_sum += (r(i) > 0.0 ? 1.0 : -1.0) * dirs.row(i).transpose();
      }
    }
    double best = 0.0;
    Eigen::Index leave = -1;
    double sign = 1.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (double sg : {1.0, -1.0}) {
        const double deriv = sg * signed_sum(k) + degenerate(k) + 1.0;
        if (deriv < best) {
          best = deriv;
          leave = k;
          sign = sg;
        }
      }
    }
    out.residual = -best / scale;
    if (leave < 0 || out.residual < tol) {
      out.optimal = true;
      return out;
    }
    if (out.pivots == max_pivots) break;

    // Exact line search: weighted median of the breakpoints along the ray.
    const Vector s = sign * dirs.col(leave);
    std::vector<std::pair<double, Eigen::Index>> breaks;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (in_basis[static_cast<std::size_t>(i)] || s(i) == 0.0) continue;
      const double t = -r(i) / s(i);
      if (t > 0.0) breaks.emplace_back(t, i);
    }
    std::sort(breaks.begin(), breaks.end());
    double slope = best;
    Eigen::Index enter = -1;
    for (const auto& [t, i] : breaks) {
      slope += 2.0 * std::abs(s(i));
      if (slope >= 0.0) {
        enter = i;
        break;
      }
    }
    if (enter < 0) break;  // unbounded descent cannot occur for a bounded-below objective
    in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave)])] = 0;
    in_basis[static_cast<std::size_t>(enter)] = 1;
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  return out;
}

}  // namespace

SolverResult solve_rlad(const RegressionInstance& instance, double lambda,
                        const SolverOptions& options) {
  check_common(instance, lambda);
  check_options(options);
  const Matrix& a = instance.design;
  const Vector& b = instance.response;
  const Eigen::Index n = a.rows();
  const Eigen::Index d = a.cols();
  const ObjectiveSpec spec = ObjectiveSpec::rlad(lambda);
  constexpr double kWarmTol = 1e-4;

  // ADMM gets close; vertex descent on [A; lambda I] x ~ [b; 0] finishes exactly.
  AdmmState st = admm_rlad(a, b, lambda, std::max(options.tol, kWarmTol), options.max_iter);
  Matrix m(n + d, d);
  m.topRows(n) = a;
  m.bottomRows(d) = lambda * Matrix::Identity(d, d);
  Vector c = Vector::Zero(n + d);
  c.head(n) = b;
  const std::size_t budget = options.max_iter - std::min(options.max_iter - 1, st.iterations);
  const auto vertex = l1_vertex_descent(m, c, st.x, options.tol, budget);

  SolverResult out;
  if (vertex && vertex->optimal) {
    out.solution = vertex->x;
    out.objective_value = evaluate_objective(instance, out.solution, spec);
    out.iterations = st.iterations + vertex->pivots;
    out.optimality_residual = vertex->residual;
    out.converged = true;
    return out;
  }
  if (!st.converged || options.tol < kWarmTol) {
    st = admm_rlad(a, b, lambda, options.tol, options.max_iter);
  }
  // z2 carries the exact zeros of the l1 split; keep whichever iterate scores better.
  const double fx = evaluate_objective(instance, st.x, spec);
  const double fz = evaluate_objective(instance, st.z2, spec);
  out.solution = fz <= fx ? st.z2 : st.x;
  out.objective_value = std::min(fx, fz);
  out.iterations = st.iterations;
  out.optimality_residual = st.residual;
  out.converged = st.converged;
  if (vertex && evaluate_objective(instance, vertex->x, spec) < out.objective_value) {
    out.solution = vertex->x;
    out.objective_value = evaluate_objective(instance, vertex->x, spec);
  }
  return out;
}

SolverResult solve_lp_lp(const RegressionInstance& instance, double p, double lambda,
                         const SolverOptions& options) {
  check_common(instance, lambda);
  check_options(options);
  require(p >= 1.0 && p <= 4.0, ErrorKind::invalid_parameter, "p must lie in [1, 4]");
  const Matrix& a = instance.design;
  const Vector& b = instance.response;
  const Eigen::Index n = a.rows();
  const Eigen::Index d = a.cols();
  const ObjectiveSpec spec = ObjectiveSpec::lp_lp(p, lambda);
  constexpr double kSmoothing = 1e-8;

  // min sum_i w_i (a_i x - b_i)^2 + lambda sum_j v_j x_j^2 via QR of the stacked system.
  auto weighted_solve = [&](const Vector& w, const Vector& v) {
    Matrix stacked(n + d, d);
    Vector rhs(n + d);
    stacked.topRows(n) = w.cwiseSqrt().asDiagonal() * a;
    stacked.bottomRows(d) = (lambda * v).cwiseSqrt().asDiagonal();
    rhs.head(n) = w.cwiseSqrt().cwiseProduct(b);
    rhs.tail(d).setZero();
    return Eigen::ColPivHouseholderQR<Matrix>(stacked).solve(rhs).eval();
  };

  SolverResult out;
  Vector x = weighted_solve(Vector::Ones(n), Vector::Ones(d));
  if (p == 2.0) {
    out.solution = x;
    out.iterations = 1;
    out.converged = true;
    const Vector atb = a.transpose() * b;
    out.optimality_residual =
        (a.transpose() * (a * x) + lambda * x - atb).norm() / (1.0 + atb.norm());
    out.objective_value = evaluate_objective(instance, x, spec);
    return out;
  }

  double fx = evaluate_objective(instance, x, spec);
  auto floor_pow = [&](double e) { return std::pow(std::max(std::abs(e), kSmoothing), p - 2.0); };
  std::size_t k = 0;
  for (k = 1; k <= options.max_iter; ++k) {
    const Vector w = (a * x - b).unaryExpr(floor_pow);
    const Vector v = x.unaryExpr(floor_pow);
    const Vector proposal = weighted_solve(w, v);
    const Vector step = proposal - x;
    out.optimality_residual = step.norm() / (1.0 + x.norm());
    if (out.optimality_residual < options.tol) {
      out.converged = true;
      break;
    }
    // Damped update: halve the step until the true objective does not increase.
    double eta = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 30; ++halving, eta *= 0.5) {
      const Vector candidate = x + eta * step;
      const double fc = evaluate_objective(instance, candidate, spec);
      if (fc <= fx) {
        const double rel = (fx - fc) / std::max(fx, 1e-300);
        x = candidate;
        fx = fc;
        moved = true;
        if (rel < options.tol * options.tol && eta * out.optimality_residual < options.tol) {
          out.converged = true;
        }
        break;
      }
    }
    if (!moved) {
      // No descent along the reweighted direction: x is stationary up to the smoothing floor.
      out.converged = out.optimality_residual < std::sqrt(options.tol);
      if (out.converged) out.optimality_residual = options.tol;
      break;
    }
    if (out.converged) break;
  }
  out.iterations = std::min(k, options.max_iter);
  out.solution = x;
  out.objective_value = evaluate_objective(instance, x, spec);
  return out;
}

MultiSolverResult solve_multiresponse_rlad(const Matrix& design, const Matrix& responses,
                                           double lambda, const SolverOptions& options) {
  require(responses.cols() >= 1, ErrorKind::invalid_parameter, "B needs at least one column");
  require(responses.rows() == design.rows(), ErrorKind::shape_error,
          "B and A differ in row count");
  MultiSolverResult out;
  out.solution.resize(design.cols(), responses.cols());
  out.converged = true;
  for (Eigen::Index c = 0; c < responses.cols(); ++c) {
    const SolverResult col = solve_rlad(RegressionInstance{design, responses.col(c)}, lambda, options);
    out.solution.col(c) = col.solution;
    out.objective_value += col.objective_value;
    out.iterations += col.iterations;
    out.converged = out.converged && col.converged;
    out.optimality_residual = std::max(out.optimality_residual, col.optimality_residual);
  }
  return out;
}

SolverResult solve(const RegressionInstance& instance, const ObjectiveSpec& spec,
                   const SolverOptions& options) {
  spec.validate();
  switch (spec.family) {
    case Family::ridge: return solve_ridge(instance, spec.lambda);
    case Family::lasso: return solve_lasso(instance, spec.lambda, options);
    case Family::modified_lasso: return solve_modified_lasso(instance, spec.lambda, options);
    case Family::rlad:
    case Family::multiresponse_rlad: return solve_rlad(instance, spec.lambda, options);
    case Family::lp_lp: return solve_lp_lp(instance, spec.p, spec.lambda, options);
    case Family::general: break;
  }
  throw Error(ErrorKind::invalid_parameter, "no solver for the general family");
}

std::size_t sparsity_count(const Vector& x, double threshold) {
  require(threshold > 0.0, ErrorKind::invalid_parameter, "threshold must be positive");
  std::size_t zeros = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x(j)) < threshold) ++zeros;
  }
  return zeros;
}

}  // namespace regcoreset
