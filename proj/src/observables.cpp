#include "fragsim/observables.hpp"

#include <cstdio>

namespace fragsim {

double total_mass(const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) s += static_cast<double>(n + 1) * f[n];
  return s;
}

double particle_count(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s;
}

double mass_loss_rate(const RateModel& model, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t n = 1; n <= f.size(); ++n) {
    s += (model.decay(n) + static_cast<double>(n) * model.death(n)) * f[n - 1];
  }
  return s;
}

namespace {

ObservableSeries extract(const std::vector<ClusterState>& states, const RateModel& model) {
  ObservableSeries out;
  out.mass = {"mass", {}, "mass"};
  out.count = {"count", {}, "count"};
  out.loss_rate = {"loss_rate", {}, "mass/time"};
  for (const auto& s : states) {
    out.mass.points.emplace_back(s.t, total_mass(s.f));
    out.count.points.emplace_back(s.t, particle_count(s.f));
    out.loss_rate.points.emplace_back(s.t, mass_loss_rate(model, s.f));
  }
  return out;
}

}  // namespace

ObservableSeries extract_series(const Trajectory& traj, const RateModel& model) {
  return extract(traj.samples, model);
}

ObservableSeries extract_series(const std::vector<ClusterState>& states,
                                const RateModel& model) {
  return extract(states, model);
}

std::string to_csv(const TimeSeries& s) {
  std::string out = "t,value\n";
  char buf[80];
  for (const auto& [t, v] : s.points) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", t, v);
    out += buf;
  }
  return out;
}

}  // namespace fragsim
