#include "fragsim/integrator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace fragsim {

namespace {

constexpr double kGamma = 2.0 - 1.4142135623730951;  // 2 - sqrt(2)

// Butcher data for TR-BDF2 as a 3-stage SDIRK with its third-order
// embedded weights (Hosea & Shampine).
constexpr double kW = 1.4142135623730951 / 4.0;      // sqrt(2)/4
constexpr double kD = 1.0 - 1.4142135623730951 / 2.0;  // diagonal entry
// b    = [w, w, d]
// bhat = [(1 - w)/3, (3w + 1)/3, d/3]

std::vector<double> axpy(const std::vector<double>& x, double a,
                         const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

struct Stages {
  std::vector<double> value;  // f at t + dt
  std::vector<double> k1, k2, k3;
};

Stages run_stages(const TruncatedGenerator& G, const std::vector<double>& f, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step_trbdf2: dt must be > 0");
  Stages s;
  s.k1 = G.apply(f);
  // trapezoidal stage over gamma*dt: (I - (gamma dt/2) G) f_mid = f + (gamma dt/2) k1
  const double half = kGamma * dt / 2.0;
  const auto f_mid = G.solve_shifted(half, axpy(f, half, s.k1));
  s.k2 = G.apply(f_mid);
  // BDF2 stage: (I - d dt G) f_new = f + dt (w k1 + w k2)
  std::vector<double> rhs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = f[i] + dt * kW * (s.k1[i] + s.k2[i]);
  s.value = G.solve_shifted(kD * dt, rhs);
  s.k3 = G.apply(s.value);
  return s;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be > 0");
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
    throw std::invalid_argument("IntegratorConfig: need 0 < dt_min <= dt_init <= dt_max");
  }
  if (!(rtol > 0.0 && atol > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: rtol and atol must be > 0");
  }
  if (!(sample_every > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: sample_every must be > 0");
  }
}

std::vector<double> step_trbdf2(const TruncatedGenerator& G, const std::vector<double>& f,
                                double dt) {
  return run_stages(G, f, dt).value;
}

TrBdf2Result step_trbdf2_with_error(const TruncatedGenerator& G,
                                    const std::vector<double>& f, double dt) {
  const Stages s = run_stages(G, f, dt);
  // (bhat - b) = [(1 - 4w)/3, 1/3, -2d/3]
  const double c1 = (1.0 - 4.0 * kW) / 3.0;
  const double c2 = 1.0 / 3.0;
  const double c3 = -2.0 * kD / 3.0;
  std::vector<double> raw(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    raw[i] = dt * (c1 * s.k1[i] + c2 * s.k2[i] + c3 * s.k3[i]);
  }
  // Filtered estimate (I - d dt G)^{-1} raw keeps the test meaningful for
  // step sizes far above the stiff scale.
  return {s.value, G.solve_shifted(kD * dt, raw)};
}

Trajectory integrate(const TruncatedGenerator& G, const ClusterState& f0,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  if (f0.f.size() != G.size()) throw std::invalid_argument("integrate: dimension mismatch");
  for (double v : f0.f) {
    if (v < 0.0) throw std::invalid_argument("integrate: initial state must be nonnegative");
  }

  Trajectory traj;
  double t = 0.0;
  std::vector<double> f = f0.f;
  traj.accepted.push_back({f, 0.0});
  traj.samples.push_back({f, 0.0});
  double next_sample = cfg.sample_every;

  auto emit_samples = [&](double t_prev, const std::vector<double>& f_prev, double t_new,
                          const std::vector<double>& f_new) {
    while (next_sample <= t_new + 1e-12 * cfg.t_end && next_sample <= cfg.t_end) {
      const double w = (next_sample - t_prev) / (t_new - t_prev);
      std::vector<double> fi(f_prev.size());
      for (std::size_t i = 0; i < fi.size(); ++i) {
        fi[i] = (1.0 - w) * f_prev[i] + w * f_new[i];
      }
      traj.samples.push_back({std::move(fi), next_sample});
      next_sample += cfg.sample_every;
    }
  };

  double dt = std::min(cfg.dt_init, cfg.t_end);
  while (t < cfg.t_end) {
    const bool final_step = (t + dt >= cfg.t_end);
    const double dt_eff = final_step ? (cfg.t_end - t) : dt;
    const auto step = step_trbdf2_with_error(G, f, dt_eff);
    const double err = mass_norm(step.error);
    const double tol = cfg.rtol * mass_norm(f) + cfg.atol;
    if (err <= tol) {
      const double t_new = final_step ? cfg.t_end : t + dt_eff;
      emit_samples(t, f, t_new, step.value);
      t = t_new;
      f = step.value;
      traj.accepted.push_back({f, t});
      ++traj.stats.accepted;
      const double grow = (err > 0.0) ? 0.9 * std::cbrt(tol / err) : 5.0;
      dt = std::clamp(dt * std::clamp(grow, 0.2, 5.0), cfg.dt_min, cfg.dt_max);
    } else {
      ++traj.stats.rejected;
      const double shrink = std::clamp(0.9 * std::cbrt(tol / err), 0.1, 0.5);
      dt = dt_eff * shrink;
      if (dt < cfg.dt_min) {
        throw IntegrationError("integrate: step size underflow at t = " + std::to_string(t),
                               {f, t});
      }
    }
  }
  // make sure the terminal time is sampled
  if (traj.samples.back().t < cfg.t_end - 1e-12 * cfg.t_end) {
    traj.samples.push_back({f, cfg.t_end});
  }
  return traj;
}

std::vector<double> expm_oracle(const TruncatedGenerator& G, const std::vector<double>& f0,
                                double t) {
  const std::size_t n = G.size();
  if (n > 256) throw std::domain_error("expm_oracle: N > 256 dense limit");
  if (t < 0.0) throw std::domain_error("expm_oracle: t must be >= 0");
  if (f0.size() != n) throw std::invalid_argument("expm_oracle: dimension mismatch");
  if (t == 0.0) return f0;
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) M(i - 1, j - 1) = t * G.entry(i, j);
  }
  const Eigen::MatrixXd E = M.exp();
  Eigen::VectorXd v(n);
  for (std::size_t i = 0; i < n; ++i) v(i) = f0[i];
  const Eigen::VectorXd out = E * v;
  return {out.data(), out.data() + n};
}

}  // namespace fragsim
