#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fragsim/generator.hpp"

namespace fragsim {

struct IntegratorConfig {
  double t_end = 20.0;
  double dt_init = 1e-3;
  double rtol = 1e-6;
  double atol = 1e-9;   // absolute tolerance in the mass norm
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double sample_every = 0.05;

  void validate() const;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

struct Trajectory {
  std::vector<ClusterState> samples;   // dense output at the sampling grid
  std::vector<ClusterState> accepted;  // accepted integration steps
  StepStats stats;
};

/// Integration ran out of admissible step sizes; carries the last good state.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, ClusterState last)
      : std::runtime_error(what), last_good(std::move(last)) {}
  ClusterState last_good;
};

/// One TR-BDF2 step (gamma = 2 - sqrt(2)): a trapezoidal stage over
/// gamma*dt followed by a BDF2 stage. Both stage systems are solved exactly
/// by back-substitution on the upper-triangular stage matrix.
std::vector<double> step_trbdf2(const TruncatedGenerator& G, const std::vector<double>& f,
                                double dt);

/// Same step, also returning the embedded third-order error estimate
/// (filtered through the stage matrix, as in the reference solver family).
struct TrBdf2Result {
  std::vector<double> value;
  std::vector<double> error;
};
TrBdf2Result step_trbdf2_with_error(const TruncatedGenerator& G,
                                    const std::vector<double>& f, double dt);

/// Adaptive integration of f' = G f over [0, cfg.t_end]. Per-step error test
/// in the mass norm: err <= rtol * ||f|| + atol. Dense output by linear
/// interpolation between accepted steps.
Trajectory integrate(const TruncatedGenerator& G, const ClusterState& f0,
                     const IntegratorConfig& cfg);

/// Dense matrix-exponential reference: e^{tG} f0 via scaling-and-squaring.
/// Refuses N > 256.
std::vector<double> expm_oracle(const TruncatedGenerator& G, const std::vector<double>& f0,
                                double t);

}  // namespace fragsim
