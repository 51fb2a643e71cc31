#include "regcoreset/coreset.hpp"
#include "regcoreset/error.hpp"
#include "regcoreset/experiments.hpp"
#include "regcoreset/lowerbound.hpp"
#include "regcoreset/sensitivity.hpp"
#include "regcoreset/serialization.hpp"
#include "regcoreset/solvers.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace regcoreset;

namespace {

RegressionInstance make_instance(const Matrix& a, const Vector& b) {
  RegressionInstance inst{a, b};
  inst.validate();
  return inst;
}

SolverOptions make_options(double tol, std::size_t max_iter) { return SolverOptions{tol, max_iter}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coresets for norm-regularized regression";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<SolverResult>(m, "SolverResult")
      .def_readonly("solution", &SolverResult::solution)
      .def_readonly("objective_value", &SolverResult::objective_value)
      .def_readonly("iterations", &SolverResult::iterations)
      .def_readonly("converged", &SolverResult::converged)
      .def_readonly("optimality_residual", &SolverResult::optimality_residual);

  py::class_<SensitivityScores>(m, "SensitivityScores")
      .def_readonly("values", &SensitivityScores::values)
      .def_readonly("total", &SensitivityScores::total)
      .def_property_readonly("scheme", [](const SensitivityScores& s) { return std::string(to_string(s.scheme)); });

  py::class_<Coreset>(m, "Coreset")
      .def_readonly("rows", &Coreset::rows)
      .def_readonly("weights", &Coreset::weights)
      .def_readonly("source_indices", &Coreset::source_indices)
      .def_readonly("seed", &Coreset::seed)
      .def("__len__", &Coreset::size)
      .def("to_json", [](const Coreset& c) { return coreset_to_json(c).dump(); });

  py::class_<CoresetVerificationReport>(m, "VerificationReport")
      .def_readonly("max_relative_deviation", &CoresetVerificationReport::max_relative_deviation)
      .def_readonly("queries_checked", &CoresetVerificationReport::queries_checked)
      .def_readonly("passed", &CoresetVerificationReport::passed);

  py::class_<CounterexampleWitness>(m, "CounterexampleWitness")
      .def_readonly("base_x", &CounterexampleWitness::base_x)
      .def_readonly("alpha", &CounterexampleWitness::alpha)
      .def_readonly("y", &CounterexampleWitness::y)
      .def_readonly("epsilon_prime", &CounterexampleWitness::epsilon_prime)
      .def_readonly("regularized_ratio", &CounterexampleWitness::regularized_ratio)
      .def_property_readonly("direction",
                             [](const CounterexampleWitness& w) { return std::string(to_string(w.direction)); });

  m.def("statistical_dimension", &statistical_dimension, py::arg("singular_values"), py::arg("lam"));
  m.def("sample_size", &sample_size, py::arg("total"), py::arg("epsilon"), py::arg("delta"), py::arg("d"),
        py::arg("constant") = kDefaultSampleSizeConstant);

  m.def("generate_ng_matrix", &generate_ng_matrix, py::arg("n"), py::arg("d"), py::arg("alpha") = 0.00065,
        py::arg("seed") = 0);
  m.def("generate_response", &generate_response, py::arg("a"), py::arg("x_true"), py::arg("noise_scale") = 1e-5,
        py::arg("seed") = 0);

  m.def("ridge_leverage_scores", &ridge_leverage_scores, py::arg("aprime"), py::arg("lam"));
  m.def("uniform_scores", &uniform_scores, py::arg("n"));
  m.def(
      "rlad_sensitivity_bounds",
      [](const Matrix& aprime, double lambda, std::uint64_t seed) {
        return rlad_sensitivity_bounds(p_conditioned_basis(aprime, 1.0, seed), lambda, aprime);
      },
      py::arg("aprime"), py::arg("lam"), py::arg("seed") = 0);

  m.def(
      "build_coreset",
      [](const Matrix& a, const Vector& b, const SensitivityScores& scores, std::size_t r, double p,
         std::uint64_t seed) { return build_coreset(make_instance(a, b), scores, r, p, seed); },
      py::arg("a"), py::arg("b"), py::arg("scores"), py::arg("r"), py::arg("p") = 2.0, py::arg("seed") = 0);

  m.def(
      "verify_coreset",
      [](const Matrix& a, const Vector& b, const Coreset& coreset, const std::string& family, double lambda,
         std::size_t queries, double epsilon, std::uint64_t seed) {
        const auto f = family_from_string(family);
        require(f.has_value(), ErrorKind::invalid_parameter, "unknown family " + family);
        return verify_coreset(make_instance(a, b), coreset, ObjectiveSpec::for_family(*f, lambda),
                              random_queries(static_cast<std::size_t>(a.cols()), queries, seed), epsilon);
      },
      py::arg("a"), py::arg("b"), py::arg("coreset"), py::arg("family"), py::arg("lam"),
      py::arg("queries") = 200, py::arg("epsilon") = 0.1, py::arg("seed") = 0);

  m.def(
      "solve",
      [](const Matrix& a, const Vector& b, const std::string& family, double lambda, double p, double tol,
         std::size_t max_iter) {
        const auto f = family_from_string(family);
        require(f.has_value(), ErrorKind::invalid_parameter, "unknown family " + family);
        return solve(make_instance(a, b), ObjectiveSpec::for_family(*f, lambda, p), make_options(tol, max_iter));
      },
      py::arg("a"), py::arg("b"), py::arg("family"), py::arg("lam"), py::arg("p") = 2.0, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 200000);
  m.def(
      "evaluate_objective",
      [](const Matrix& a, const Vector& b, const Vector& x, const std::string& family, double lambda, double p) {
        const auto f = family_from_string(family);
        require(f.has_value(), ErrorKind::invalid_parameter, "unknown family " + family);
        return evaluate_objective(make_instance(a, b), x, ObjectiveSpec::for_family(*f, lambda, p));
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("family"), py::arg("lam"), py::arg("p") = 2.0);
  m.def("prox_squared_l1", &prox_squared_l1, py::arg("v"), py::arg("t"));
  m.def("sparsity_count", &sparsity_count, py::arg("x"), py::arg("threshold") = 1e-6);

  m.def("counterexample_alpha", &counterexample_alpha, py::arg("epsilon"), py::arg("epsilon_prime"),
        py::arg("lam"), py::arg("norm_mx_p_r"), py::arg("norm_x_q_s"), py::arg("r"), py::arg("s"));
  m.def(
      "demonstrate_violation",
      [](const Matrix& m_full, const Matrix& coreset_rows, double p, double q, double r, double s, double lambda,
         double epsilon, std::uint64_t seed) -> std::optional<CounterexampleWitness> {
        Coreset c;
        c.rows = coreset_rows;
        c.weights = Vector::Ones(coreset_rows.rows());
        for (Eigen::Index i = 0; i < coreset_rows.rows(); ++i) c.source_indices.push_back(0);
        c.n = static_cast<std::size_t>(m_full.rows());
        return demonstrate_violation(m_full, c, ObjectiveSpec::general(p, q, r, s, lambda), epsilon, seed);
      },
      py::arg("m"), py::arg("coreset_rows"), py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"),
      py::arg("lam"), py::arg("epsilon"), py::arg("seed") = 0);

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::string& format) {
        const ExperimentConfig config = config_from_json(Json::parse(config_json));
        return emit_report(run_relative_error_experiment(config),
                           format == "csv" ? ReportFormat::csv : ReportFormat::json);
      },
      py::arg("config_json"), py::arg("format") = "json");
  m.def(
      "run_sparsity",
      [](const std::string& config_json, const std::string& format) {
        const ExperimentConfig config = config_from_json(Json::parse(config_json));
        return emit_report(run_sparsity_experiment(config), format == "csv" ? ReportFormat::csv : ReportFormat::json);
      },
      py::arg("config_json"), py::arg("format") = "json");
}
