#include "fragsim/generator.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fragsim {

TruncatedGenerator TruncatedGenerator::build(const RateModel& model,
                                             const KernelSpec& kernel, std::size_t N) {
  if (N < 1) throw ValidationError("build_generator: N must be >= 1");
  model.validate(N, /*require_positive_decay=*/false);
  if (N >= 2) {
    const auto report = check_kernel_conservation(kernel, N);
    if (report.max_abs_deviation > kKernelConservationTol) {
      throw ValidationError("kernel violates mass conservation at j = " +
                            std::to_string(report.worst_j) + " (deviation " +
                            std::to_string(report.max_abs_deviation) + ")");
    }
  }

  TruncatedGenerator g;
  g.n_ = N;
  g.diag_.resize(N);
  g.superdiag_.resize(N > 0 ? N - 1 : 0);
  g.frag_cols_.resize(N);
  for (std::size_t i = 1; i <= N; ++i) {
    g.diag_[i - 1] = -(model.decay(i) + model.frag(i) + model.death(i));
  }
  for (std::size_t i = 1; i < N; ++i) {
    g.superdiag_[i - 1] = model.decay(i + 1);
  }
  for (std::size_t j = 2; j <= N; ++j) {
    const double aj = model.frag(j);
    if (aj == 0.0) continue;
    auto& col = g.frag_cols_[j - 1];
    col.resize(j - 1);
    for (std::size_t i = 1; i < j; ++i) {
      col[i - 1] = aj * kernel.eval(i, j);
    }
  }
  return g;
}

double TruncatedGenerator::entry(std::size_t i, std::size_t j) const {
  if (i == j) return diag_[i - 1];
  if (j == i + 1 && i < n_) {
    double v = superdiag_[i - 1];
    const auto& col = frag_cols_[j - 1];
    if (i - 1 < col.size()) v += col[i - 1];
    return v;
  }
  if (j > i) {
    const auto& col = frag_cols_[j - 1];
    return i - 1 < col.size() ? col[i - 1] : 0.0;
  }
  return 0.0;
}

std::vector<double> TruncatedGenerator::apply(const std::vector<double>& f) const {
  if (f.size() != n_) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) out[i] = diag_[i] * f[i];
  for (std::size_t i = 0; i + 1 < n_; ++i) out[i] += superdiag_[i] * f[i + 1];
  for (std::size_t j = 2; j <= n_; ++j) {
    const auto& col = frag_cols_[j - 1];
    if (col.empty()) continue;
    const double fj = f[j - 1];
    if (fj == 0.0) continue;
    for (std::size_t i = 0; i < col.size(); ++i) out[i] += col[i] * fj;
  }
  return out;
}

std::vector<double> TruncatedGenerator::apply_adjoint(const std::vector<double>& g) const {
  if (g.size() != n_) throw std::invalid_argument("apply_adjoint: dimension mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) out[j] = diag_[j] * g[j];
  for (std::size_t i = 0; i + 1 < n_; ++i) out[i + 1] += superdiag_[i] * g[i];
  for (std::size_t j = 2; j <= n_; ++j) {
    const auto& col = frag_cols_[j - 1];
    double acc = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) acc += col[i] * g[i];
    out[j - 1] += acc;
  }
  return out;
}

std::vector<double> TruncatedGenerator::solve_shifted(double c,
                                                      const std::vector<double>& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("solve_shifted: dimension mismatch");
  if (c < 0.0) throw std::domain_error("solve_shifted: c must be >= 0");
  std::vector<double> x(n_, 0.0);
  for (std::size_t i = n_; i >= 1; --i) {
    double acc = rhs[i - 1];
    if (i < n_) acc += c * superdiag_[i - 1] * x[i];
    for (std::size_t j = i + 1; j <= n_; ++j) {
      const auto& col = frag_cols_[j - 1];
      if (i - 1 < col.size()) acc += c * col[i - 1] * x[j - 1];
    }
    x[i - 1] = acc / (1.0 - c * diag_[i - 1]);
  }
  return x;
}

std::string TruncatedGenerator::dense_dump() const {
  std::string out;
  char buf[40];
  for (std::size_t i = 1; i <= n_; ++i) {
    for (std::size_t j = 1; j <= n_; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", entry(i, j));
      out += buf;
      out += (j == n_) ? '\n' : ' ';
    }
  }
  return out;
}

std::vector<double> decay_resolvent_apply(const RateModel& model, std::size_t N,
                                          double lambda, const std::vector<double>& f) {
  if (lambda <= 0.0) throw std::domain_error("decay_resolvent_apply: lambda must be > 0");
  if (f.size() != N) throw std::invalid_argument("decay_resolvent_apply: dimension mismatch");
  const Theta th = theta(model, N);
  // Backward recurrence u_i = (f_i + r_{i+1} u_{i+1}) / (lambda + theta_i),
  // algebraically identical to the truncated product-sum formula but free of
  // underflowing long products.
  std::vector<double> u(N, 0.0);
  for (std::size_t i = N; i >= 1; --i) {
    double acc = f[i - 1];
    if (i < N) acc += model.decay(i + 1) * u[i];
    u[i - 1] = acc / (lambda + th[i]);
  }
  return u;
}

double mass_norm(const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) s += static_cast<double>(n + 1) * std::abs(f[n]);
  return s;
}

}  // namespace fragsim
