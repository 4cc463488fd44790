#include <doctest.h>

#include <cmath>

#include "fragsim/observables.hpp"
#include "helpers.hpp"

using namespace fragsim;
using namespace fragsim::testing;

TEST_CASE("scalar observables") {
  const auto f0 = monodisperse(64, 32, 10.0);
  CHECK(total_mass(f0) == 320.0);
  CHECK(particle_count(f0) == 10.0);
  CHECK(total_mass(std::vector<double>{}) == 0.0);
  CHECK(particle_count(std::vector<double>(4, 0.0)) == 0.0);
  CHECK(total_mass({1.0, 1.0, 1.0}) == 6.0);
  CHECK(particle_count({1.0, 1.0, 1.0}) == 3.0);
}

TEST_CASE("mass loss functional") {
  const auto f0 = monodisperse(64, 32, 10.0);
  CHECK(mass_loss_rate(model_sec4_1(), f0) == 10.0);  // c(f) = sum r_n f_n
  CHECK(mass_loss_rate(model_sec4_1(), std::vector<double>(64, 0.0)) == 0.0);
  CHECK(mass_loss_rate(model_sec4_3(), monodisperse(4, 1, 1.0)) == 2.0);  // r_1 + d_1

  // nonnegative on nonnegative states
  CHECK(mass_loss_rate(model_sec4_4(), f0) >= 0.0);
}

TEST_CASE("total mass equals the mass norm on nonnegative states") {
  const std::vector<double> f{0.5, 0.0, 2.0, 0.25};
  CHECK(total_mass(f) == mass_norm(f));
}

TEST_CASE("series extraction and CSV format") {
  Trajectory traj;
  traj.samples.push_back({{1.0, 0.5}, 0.0});
  traj.samples.push_back({{0.5, 0.25}, 0.125});
  const auto series = extract_series(traj, model_sec4_1());
  CHECK(series.mass.points.size() == 2);
  CHECK(series.mass.points[0].second == 2.0);
  CHECK(series.count.points[1].second == 0.75);

  const std::string csv = to_csv(series.mass);
  CHECK(csv == "t,value\n0,2\n0.125,1\n");

  // zero trajectory -> zero series
  Trajectory zero;
  zero.samples.push_back({std::vector<double>(4, 0.0), 0.0});
  const auto zs = extract_series(zero, model_sec4_1());
  CHECK(zs.mass.points[0].second == 0.0);
  CHECK(zs.loss_rate.points[0].second == 0.0);
}

TEST_CASE("dM/dt matches the negative mass-loss functional along a trajectory") {
  const auto model = model_sec4_3();
  const auto G = TruncatedGenerator::build(model, KernelSpec::uniform_binary(), 64);
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  cfg.rtol = 1e-8;
  cfg.atol = 1e-12;
  cfg.dt_max = 0.02;  // keeps the centered-difference truncation error under 1%
  const auto traj = integrate(G, {monodisperse(64, 32, 10.0), 0.0}, cfg);
  const auto series = extract_series(traj.accepted, model);

  REQUIRE(series.mass.points.size() >= 3);
  for (std::size_t k = 1; k + 1 < series.mass.points.size(); ++k) {
    const auto [t0, m0] = series.mass.points[k - 1];
    const auto [t1, m1] = series.mass.points[k];
    const auto [t2, m2] = series.mass.points[k + 1];
    // centered difference on a nonuniform grid
    const double h1 = t1 - t0, h2 = t2 - t1;
    const double dmdt =
        (m2 * h1 * h1 - m0 * h2 * h2 + m1 * (h2 * h2 - h1 * h1)) / (h1 * h2 * (h1 + h2));
    const double expected = -series.loss_rate.points[k].second;
    CHECK(std::abs(dmdt - expected) <= 0.01 * std::abs(expected));
  }
}
