#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fragsim/generator.hpp"
#include "fragsim/rates.hpp"

namespace fragsim::testing {

// The four simulation scenarios: constant/linear decay, death, fragmentation.
inline RateModel model_sec4_1() {
  return {RateFamily::constant(1.0), RateFamily::constant(0.0), RateFamily::constant(1.0)};
}
inline RateModel model_sec4_2() {
  return {RateFamily::linear(1.0), RateFamily::constant(0.0), RateFamily::constant(1.0)};
}
inline RateModel model_sec4_3() {
  return {RateFamily::constant(1.0), RateFamily::linear(1.0), RateFamily::linear(1.0)};
}
inline RateModel model_sec4_4() {
  return {RateFamily::linear(1.0), RateFamily::linear(1.0), RateFamily::linear(1.0)};
}

inline std::vector<RateModel> all_sec4_models() {
  return {model_sec4_1(), model_sec4_2(), model_sec4_3(), model_sec4_4()};
}

inline Eigen::MatrixXd dense_matrix(const TruncatedGenerator& G) {
  const std::size_t n = G.size();
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) M(i - 1, j - 1) = G.entry(i, j);
  }
  return M;
}

inline std::vector<double> random_vector(std::mt19937& rng, std::size_t n,
                                         bool nonnegative = false) {
  std::uniform_real_distribution<double> dist(nonnegative ? 0.0 : -1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// Shifted inverse iteration on a dense matrix: eigenvector for the
/// eigenvalue closest to `shift`. Deterministic start, 100 iterations.
inline Eigen::VectorXd inverse_iteration(const Eigen::MatrixXd& M, double shift_target,
                                         double offset) {
  const auto n = M.rows();
  Eigen::MatrixXd shifted =
      M - (shift_target + offset) * Eigen::MatrixXd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  for (int k = 0; k < 100; ++k) v = lu.solve(v).normalized();
  return v;
}

inline double mass_norm_rel_err(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<double>& ref) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return mass_norm(diff) / mass_norm(ref);
}

inline std::vector<double> monodisperse(std::size_t N, std::size_t size, double amount) {
  std::vector<double> f(N, 0.0);
  f[size - 1] = amount;
  return f;
}

}  // namespace fragsim::testing
