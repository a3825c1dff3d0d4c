#include "sparsesel/errors.hpp"
#include "sparsesel/harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sparsesel;

namespace {

ExperimentSpec spec_from_text(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

py::dict extremal_dict(const ExtremalSolution& s) {
    py::dict d;
    d["r"] = s.r;
    d["eps"] = s.eps;
    d["a0_sq"] = s.a0_sq;
    d["cutoff"] = s.cutoff;
    d["a_value"] = s.a_value;
    d["support"] = s.profile.size();
    d["sum_theta2"] = s.profile.sum();
    d["sum_c2_theta2"] = s.profile.weighted_sum(s.spec);
    return d;
}

AMode mode_arg(const std::string& m) { return parse_amode(m); }

Catalogue catalogue_arg(const std::string& id) {
    static const char* names[] = {"g1", "g2", "g3", "g4", "g5"};
    for (int i = 0; i < 5; ++i)
        if (id == names[i]) return static_cast<Catalogue>(i);
    throw InvalidArgument("unknown catalogue function '" + id + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sparse additive model selection: extremal profiles, selectors and risk experiments.";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<EmptyEllipsoid>(m, "EmptyEllipsoid", PyExc_ValueError);
    py::register_exception<OutOfRange>(m, "OutOfRange", PyExc_ValueError);

    m.def("sparsity_index", &sparsity_index, py::arg("d"), py::arg("k"), py::arg("n_active"));
    m.def("active_count", &active_count, py::arg("d"), py::arg("k"), py::arg("beta"));
    m.def("threshold", &threshold, py::arg("d"), py::arg("k"), py::arg("M") = 20, py::arg("epsilon_slack") = 0.1);
    m.def("selection_target", [](double beta, int d, int k) { return selection_target(beta, log_binomial(d, k)); },
          py::arg("beta"), py::arg("d"), py::arg("k"));

    m.def("solve_extremal_exact",
          [](double r, int k, double sigma, double eps) {
              return extremal_dict(solve_extremal_exact(r, EllipsoidSpec(k, sigma), eps));
          },
          py::arg("r"), py::arg("k"), py::arg("sigma"), py::arg("eps"));
    m.def("a_asymptotic", [](double r, int k, double sigma, double eps) {
              return a_asymptotic_fixed_k(r, EllipsoidSpec(k, sigma), eps);
          },
          py::arg("r"), py::arg("k"), py::arg("sigma"), py::arg("eps"));
    m.def("solve_r_star",
          [](double target, int k, double sigma, double eps, const std::string& mode) {
              return solve_r_star(target, EllipsoidSpec(k, sigma), eps, mode_arg(mode));
          },
          py::arg("target"), py::arg("k"), py::arg("sigma"), py::arg("eps"), py::arg("mode") = "asymptotic");
    m.def("weights",
          [](double beta, int d, int k, double sigma, double eps, const std::string& mode) {
              const auto w = profile_for_beta(beta, EllipsoidSpec(k, sigma), d, eps, mode_arg(mode));
              std::vector<std::vector<int>> idx;
              idx.reserve(w.size());
              for (const auto& l : w.indices) idx.push_back(l.coords());
              return py::make_tuple(idx, w.weights, w.r_star);
          },
          py::arg("beta"), py::arg("d"), py::arg("k"), py::arg("sigma"), py::arg("eps"),
          py::arg("mode") = "asymptotic");

    m.def("fourier_coefficients",
          [](const std::string& id, int lmax) {
              const auto row = fourier_coefficients_1d(ComponentFunction::catalogue(catalogue_arg(id)), lmax);
              return row.values;
          },
          py::arg("id"), py::arg("lmax"));

    m.def("_risk_json",
          [](const std::string& config) {
              const auto spec = spec_from_text(config);
              py::gil_scoped_release release;
              return to_json(run_risk_experiment(spec), spec).dump();
          },
          py::arg("config"));
    m.def("_table1_csv",
          [](const std::string& config) {
              const auto spec = spec_from_text(config);
              py::gil_scoped_release release;
              return table1_csv(reproduce_table1(spec, spec.alphas, spec.ds));
          },
          py::arg("config"));
    m.def("_boundary_json",
          [](const std::string& config) {
              const auto spec = spec_from_text(config);
              py::gil_scoped_release release;
              return to_json(boundary_sweep(spec, spec.multipliers)).dump();
          },
          py::arg("config"));
    m.def("_phase_vector_json",
          [](int d, int k, double beta, const std::vector<double>& multipliers, int replicates, std::uint64_t seed) {
              return to_json(phase_sweep_vector(d, k, beta, multipliers, replicates, seed)).dump();
          },
          py::arg("d"), py::arg("k"), py::arg("beta"), py::arg("multipliers"), py::arg("replicates"),
          py::arg("seed"));
}
