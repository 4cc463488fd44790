#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fragsim/integrator.hpp"
#include "fragsim/observables.hpp"
#include "fragsim/scenario.hpp"
#include "fragsim/spectral.hpp"

namespace py = pybind11;
using namespace fragsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete decay-fragmentation simulation and spectral analysis";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<MultiplicityError>(m, "MultiplicityError", PyExc_ArithmeticError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::class_<RateFamily>(m, "RateFamily")
      .def_static("constant", &RateFamily::constant, py::arg("c"))
      .def_static("linear", &RateFamily::linear, py::arg("c"))
      .def_static("power_law", &RateFamily::power_law, py::arg("c"), py::arg("p"))
      .def_static("tabulated", &RateFamily::tabulated, py::arg("values"))
      .def("__call__", &RateFamily::operator(), py::arg("i"))
      .def("growth_exponent", &RateFamily::growth_exponent);

  py::class_<RateModel>(m, "RateModel")
      .def(py::init([](RateFamily decay, RateFamily death, RateFamily frag) {
             return RateModel{std::move(decay), std::move(death), std::move(frag)};
           }),
           py::arg("decay"), py::arg("death"), py::arg("frag"))
      .def("decay", &RateModel::decay, py::arg("i"))
      .def("death", &RateModel::death, py::arg("i"))
      .def("frag", &RateModel::frag, py::arg("i"))
      .def("validate", &RateModel::validate, py::arg("N"),
           py::arg("require_positive_decay") = true);

  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("uniform_binary", &KernelSpec::uniform_binary)
      .def_static("tabulated", &KernelSpec::tabulated, py::arg("rows"))
      .def("eval", &KernelSpec::eval, py::arg("i"), py::arg("j"));

  m.def(
      "theta",
      [](const RateModel& model, std::size_t N) { return theta(model, N).values; },
      py::arg("model"), py::arg("N"), "theta_i = r_i + a_i + d_i for i = 1..N");

  py::class_<KernelConservationReport>(m, "KernelConservationReport")
      .def_readonly("max_abs_deviation", &KernelConservationReport::max_abs_deviation)
      .def_readonly("worst_j", &KernelConservationReport::worst_j);
  m.def("check_kernel_conservation", &check_kernel_conservation, py::arg("kernel"),
        py::arg("jmax"));

  py::class_<RegimeReport>(m, "RegimeReport")
      .def_readonly("analytic_domination", &RegimeReport::analytic_domination)
      .def_readonly("domination_constant", &RegimeReport::domination_constant)
      .def_readonly("frag_death_ratio_bounded", &RegimeReport::frag_death_ratio_bounded)
      .def_readonly("theta_divergent", &RegimeReport::theta_divergent)
      .def_readonly("strict_min_unique", &RegimeReport::strict_min_unique)
      .def_readonly("argmin_index", &RegimeReport::argmin_index)
      .def_readonly("heuristic", &RegimeReport::heuristic);
  m.def("classify_regime", &classify_regime, py::arg("model"), py::arg("N"));

  py::class_<TruncatedGenerator>(m, "TruncatedGenerator")
      .def_static("build", &TruncatedGenerator::build, py::arg("model"), py::arg("kernel"),
                  py::arg("N"))
      .def("size", &TruncatedGenerator::size)
      .def("theta", &TruncatedGenerator::theta, py::arg("i"))
      .def("entry", &TruncatedGenerator::entry, py::arg("i"), py::arg("j"))
      .def("apply", &TruncatedGenerator::apply, py::arg("f"))
      .def("apply_adjoint", &TruncatedGenerator::apply_adjoint, py::arg("g"))
      .def("solve_shifted", &TruncatedGenerator::solve_shifted, py::arg("c"),
           py::arg("rhs"));

  m.def("decay_resolvent_apply", &decay_resolvent_apply, py::arg("model"), py::arg("N"),
        py::arg("lam"), py::arg("f"),
        "(lambda - A)^{-1} f for the pure decay part, by backward recurrence");
  m.def("mass_norm", &mass_norm, py::arg("f"));

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def_readwrite("t_end", &IntegratorConfig::t_end)
      .def_readwrite("dt_init", &IntegratorConfig::dt_init)
      .def_readwrite("rtol", &IntegratorConfig::rtol)
      .def_readwrite("atol", &IntegratorConfig::atol)
      .def_readwrite("dt_min", &IntegratorConfig::dt_min)
      .def_readwrite("dt_max", &IntegratorConfig::dt_max)
      .def_readwrite("sample_every", &IntegratorConfig::sample_every);

  py::class_<ClusterState>(m, "ClusterState")
      .def(py::init([](std::vector<double> f, double t) {
             return ClusterState{std::move(f), t};
           }),
           py::arg("f"), py::arg("t") = 0.0)
      .def_readwrite("f", &ClusterState::f)
      .def_readwrite("t", &ClusterState::t);

  py::class_<StepStats>(m, "StepStats")
      .def_readonly("accepted", &StepStats::accepted)
      .def_readonly("rejected", &StepStats::rejected);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("accepted", &Trajectory::accepted)
      .def_readonly("stats", &Trajectory::stats);

  m.def("step_trbdf2", &step_trbdf2, py::arg("G"), py::arg("f"), py::arg("dt"));
  m.def("integrate", &integrate, py::arg("G"), py::arg("f0"), py::arg("config"));
  m.def("expm_oracle", &expm_oracle, py::arg("G"), py::arg("f0"), py::arg("t"),
        "dense matrix-exponential reference, N <= 256");

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("lambda1", &SpectralData::lambda1)
      .def_readonly("N0", &SpectralData::N0)
      .def_readonly("e_right", &SpectralData::e_right)
      .def_readonly("e_left", &SpectralData::e_left)
      .def_readonly("gap", &SpectralData::gap)
      .def_readonly("ill_conditioned_index", &SpectralData::ill_conditioned_index);

  m.def(
      "dominant_eigenvalue",
      [](const std::vector<double>& th) { return dominant_eigenvalue(Theta{th}); },
      py::arg("theta"), "(lambda1, N0) from a theta vector; N0 is 1-based");
  m.def("compute_spectral", &compute_spectral, py::arg("model"), py::arg("kernel"),
        py::arg("N"));
  m.def("project", &project, py::arg("spectral"), py::arg("f"),
        "rank-one projection <e*, f> e");

  py::class_<GapSeries>(m, "GapSeries")
      .def_readonly("points", &GapSeries::points)
      .def_readonly("fitted_rate", &GapSeries::fitted_rate)
      .def_readonly("fit_t_lo", &GapSeries::fit_t_lo)
      .def_readonly("fit_t_hi", &GapSeries::fit_t_hi);
  m.def("gap_series", &gap_series, py::arg("trajectory"), py::arg("spectral"),
        py::arg("f0"), py::arg("fit_window") = std::nullopt);

  m.def("total_mass", &total_mass, py::arg("f"));
  m.def("particle_count", &particle_count, py::arg("f"));
  m.def("mass_loss_rate", &mass_loss_rate, py::arg("model"), py::arg("f"));

  py::class_<ScenarioOutcome>(m, "ScenarioOutcome")
      .def_readonly("status", &ScenarioOutcome::status)
      .def_readonly("name", &ScenarioOutcome::name)
      .def_readonly("out_dir", &ScenarioOutcome::out_dir)
      .def_readonly("error", &ScenarioOutcome::error)
      .def_readonly("lambda1", &ScenarioOutcome::lambda1)
      .def_readonly("fitted_rate", &ScenarioOutcome::fitted_rate)
      .def_readonly("final_mass", &ScenarioOutcome::final_mass)
      .def_readonly("wall_seconds", &ScenarioOutcome::wall_seconds);

  m.def(
      "run_scenario",
      [](const std::string& path, std::optional<std::string> out_dir) {
        RunOptions opts;
        opts.out_dir = std::move(out_dir);
        return run_scenario(path, opts);
      },
      py::arg("path"), py::arg("out_dir") = std::nullopt,
      "run a scenario JSON file end to end, writing CSV and manifest outputs");
}
