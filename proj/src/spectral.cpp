#include "fragsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fragsim {

std::pair<double, std::size_t> dominant_eigenvalue(const Theta& th) {
  const std::size_t N = th.size();
  if (N == 0) throw std::invalid_argument("dominant_eigenvalue: empty theta");
  std::size_t argmin = 1;
  for (std::size_t i = 2; i <= N; ++i) {
    if (th[i] < th[argmin]) argmin = i;
  }
  for (std::size_t i = 1; i <= N; ++i) {
    if (i != argmin && th[i] == th[argmin]) {
      throw MultiplicityError("dominant eigenvalue: minimum of theta attained at indices " +
                              std::to_string(argmin) + " and " + std::to_string(i));
    }
  }
  return {-th[argmin], argmin};
}

namespace {

constexpr double kOverflowGuard = 1e300;

void check_overflow(double v, std::size_t n) {
  if (std::abs(v) > kOverflowGuard) {
    throw std::range_error("eigenvector recursion overflow at index " + std::to_string(n));
  }
}

}  // namespace

std::vector<double> left_eigenvector(const RateModel& model, const KernelSpec& kernel,
                                     const Theta& th, std::size_t N0, std::size_t N) {
  if (N0 < 1 || N0 > N || N > th.size()) {
    throw std::invalid_argument("left_eigenvector: bad indices");
  }
  std::vector<double> e(N, 0.0);
  e[N0 - 1] = 1.0;
  for (std::size_t n = N0 + 1; n <= N; ++n) {
    double frag_sum = 0.0;
    const double an = model.frag(n);
    if (an != 0.0) {
      for (std::size_t j = N0; j < n; ++j) frag_sum += kernel.eval(j, n) * e[j - 1];
    }
    const double denom = th[n] - th[N0];
    e[n - 1] = (model.decay(n) * e[n - 2] + an * frag_sum) / denom;
    check_overflow(e[n - 1], n);
  }
  return e;
}

std::vector<double> right_eigenvector(const RateModel& model, const KernelSpec& kernel,
                                      const Theta& th, std::size_t N0) {
  const std::size_t N = th.size();
  if (N0 < 1 || N0 > N) throw std::invalid_argument("right_eigenvector: bad index");
  std::vector<double> e(N, 0.0);
  e[N0 - 1] = 1.0;
  for (std::size_t n = N0 - 1; n >= 1; --n) {
    double acc = model.decay(n + 1) * e[n];
    for (std::size_t j = n + 1; j <= N0; ++j) {
      acc += model.frag(j) * kernel.eval(n, j) * e[j - 1];
    }
    const double denom = th[n] - th[N0];
    e[n - 1] = acc / denom;
    check_overflow(e[n - 1], n);
  }
  return e;
}

SpectralData compute_spectral(const RateModel& model, const KernelSpec& kernel,
                              std::size_t N) {
  const Theta th = theta(model, N);
  SpectralData sd;
  std::tie(sd.lambda1, sd.N0) = dominant_eigenvalue(th);
  sd.e_left = left_eigenvector(model, kernel, th, sd.N0, N);
  sd.e_right = right_eigenvector(model, kernel, th, sd.N0);
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= N; ++i) {
    if (i == sd.N0) continue;
    second = std::min(second, th[i]);
    const double sep = th[i] - th[sd.N0];
    if (sep > 0.0 && sep < 1e-8 * th[sd.N0] && !sd.ill_conditioned_index) {
      sd.ill_conditioned_index = i;
    }
  }
  sd.gap = second - th[sd.N0];
  return sd;
}

std::vector<double> project(const SpectralData& sd, const std::vector<double>& f) {
  if (f.size() != sd.e_left.size()) throw std::invalid_argument("project: dimension mismatch");
  double coeff = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) coeff += sd.e_left[i] * f[i];
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = coeff * sd.e_right[i];
  return out;
}

GapSeries gap_series(const Trajectory& traj, const SpectralData& sd,
                     const std::vector<double>& f0,
                     std::optional<std::pair<double, double>> fit_window) {
  GapSeries gs;
  const std::vector<double> pi_f0 = project(sd, f0);
  auto gap_norm = [&](const ClusterState& s) {
    const double scale = std::exp(-sd.lambda1 * s.t);
    double norm = 0.0;
    for (std::size_t n = 0; n < s.f.size(); ++n) {
      norm += static_cast<double>(n + 1) * std::abs(scale * s.f[n] - pi_f0[n]);
    }
    return norm;
  };
  for (const auto& s : traj.samples) gs.points.emplace_back(s.t, gap_norm(s));

  // The rate fit uses accepted steps only; interpolated dense-output points
  // carry O(dt^2) interpolation error that is not error-controlled.
  std::vector<std::pair<double, double>> usable;
  for (const auto& s : traj.accepted) {
    const double g = gap_norm(s);
    if (g > kGapNormFloor) usable.emplace_back(s.t, g);
  }
  if (fit_window) {
    gs.fit_t_lo = fit_window->first;
    gs.fit_t_hi = fit_window->second;
    std::erase_if(usable, [&](const auto& p) {
      return p.first < fit_window->first || p.first > fit_window->second;
    });
  } else if (!usable.empty()) {
    // default: last half of the usable samples
    usable.erase(usable.begin(), usable.begin() + static_cast<std::ptrdiff_t>(usable.size() / 2));
    gs.fit_t_lo = usable.front().first;
    gs.fit_t_hi = usable.back().first;
  }
  if (usable.size() < 4) return gs;  // fit unavailable, series still returned

  // least squares slope of log(gap_norm) vs t
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& [t, g] : usable) {
    const double y = std::log(g);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(usable.size());
  const double denom = n * stt - st * st;
  if (denom <= 0.0) return gs;
  gs.fitted_rate = (n * sty - st * sy) / denom;
  return gs;
}

}  // namespace fragsim
