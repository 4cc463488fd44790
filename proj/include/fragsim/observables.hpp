#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fragsim/integrator.hpp"
#include "fragsim/rates.hpp"

namespace fragsim {

struct TimeSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  std::string units;
};

/// M = sum_n n f_n, the total mass.
double total_mass(const std::vector<double>& f);

/// N_p = sum_n f_n, the total particle count.
double particle_count(const std::vector<double>& f);

/// c(f) = sum_n (r_n + n d_n) f_n, the instantaneous mass-loss rate.
double mass_loss_rate(const RateModel& model, const std::vector<double>& f);

struct ObservableSeries {
  TimeSeries mass;
  TimeSeries count;
  TimeSeries loss_rate;
};

/// Observables at the trajectory's dense sample times.
ObservableSeries extract_series(const Trajectory& traj, const RateModel& model);

/// Same observables evaluated on an explicit list of states (used for
/// accepted-step diagnostics).
ObservableSeries extract_series(const std::vector<ClusterState>& states,
                                const RateModel& model);

/// CSV serialization: header "t,value", rows "%.12g,%.12g", newline
/// terminated, no trailing blank line.
std::string to_csv(const TimeSeries& s);

}  // namespace fragsim
