#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fragsim/integrator.hpp"
#include "fragsim/rates.hpp"

namespace fragsim {

/// The minimum of theta is attained at more than one index, so the dominant
/// eigenvalue is not simple and the eigenvector recursions are refused.
class MultiplicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dominant eigenpair data of the truncated generator.
struct SpectralData {
  double lambda1 = 0.0;          // -min theta_n
  std::size_t N0 = 0;            // index of the strict minimum, 1-based
  std::vector<double> e_right;   // e, e_{N0} = 1, zero above N0
  std::vector<double> e_left;    // e*, e*_{N0} = 1, zero below N0
  double gap = 0.0;              // second-smallest theta minus smallest
  // set when 0 < theta_n - theta_N0 < 1e-8 * theta_N0 for some n
  std::optional<std::size_t> ill_conditioned_index;
};

/// lambda_1 = -min theta_n and its index; refuses non-strict minima.
std::pair<double, std::size_t> dominant_eigenvalue(const Theta& th);

/// Left eigenvector by the forward recursion
/// e*_n = (r_n e*_{n-1} + a_n sum_{j<n} b_{j,n} e*_j) / (theta_n - theta_N0),
/// with e*_{N0} = 1 and zeros below N0. Aborts with std::range_error if a
/// component exceeds 1e300.
std::vector<double> left_eigenvector(const RateModel& model, const KernelSpec& kernel,
                                     const Theta& th, std::size_t N0, std::size_t N);

/// Right eigenvector by the backward recursion
/// e_n = (r_{n+1} e_{n+1} + sum_{j>n} a_j b_{n,j} e_j) / (theta_n - theta_N0),
/// with e_{N0} = 1 and zeros above N0.
std::vector<double> right_eigenvector(const RateModel& model, const KernelSpec& kernel,
                                      const Theta& th, std::size_t N0);

/// Computes the full dominant eigenpair package for the model at size N.
SpectralData compute_spectral(const RateModel& model, const KernelSpec& kernel,
                              std::size_t N);

/// Rank-one spectral projection Pi f = <e*, f> e.
std::vector<double> project(const SpectralData& sd, const std::vector<double>& f);

struct GapSeries {
  std::vector<std::pair<double, double>> points;  // (t, gap_norm)
  std::optional<double> fitted_rate;  // least-squares slope of log gap_norm
  double fit_t_lo = 0.0;
  double fit_t_hi = 0.0;
};

inline constexpr double kGapNormFloor = 1e-13;

/// gap_norm(t) = || e^{-lambda1 t} f(t) - <e*, f0> e || in the mass norm,
/// over the trajectory's sample grid. The rate fit uses points inside the
/// window (default: last half of the samples above the norm floor); a fit
/// needs at least 4 usable points.
GapSeries gap_series(const Trajectory& traj, const SpectralData& sd,
                     const std::vector<double>& f0,
                     std::optional<std::pair<double, double>> fit_window = std::nullopt);

}  // namespace fragsim
