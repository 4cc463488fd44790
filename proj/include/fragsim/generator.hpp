#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fragsim/rates.hpp"

namespace fragsim {

/// Truncated distribution vector (f_1 ... f_N) with a timestamp.
struct ClusterState {
  std::vector<double> f;
  double t = 0.0;
};

/// Sparse form of the truncated generator G_N = A + B. The matrix is upper
/// triangular: diag(i,i) = -theta_i, superdiag(i,i+1) = r_{i+1}, and the
/// strictly-upper fragmentation block (i,j) = a_j b_{i,j} for j > i. The
/// fragmentation block is stored column-wise; for the uniform-binary kernel
/// it is dense upper.
class TruncatedGenerator {
 public:
  /// Builds G_N from the model and kernel. The kernel must pass the
  /// mass-conservation check up to N (for N >= 2).
  static TruncatedGenerator build(const RateModel& model, const KernelSpec& kernel,
                                  std::size_t N);

  std::size_t size() const { return n_; }
  double theta(std::size_t i) const { return -diag_[i - 1]; }  // 1-based
  const std::vector<double>& diagonal() const { return diag_; }

  /// Dense entry G(i,j), 1-based; zero below the diagonal.
  double entry(std::size_t i, std::size_t j) const;

  /// G * f, O(N + nnz) sweep.
  std::vector<double> apply(const std::vector<double>& f) const;

  /// G^T * g (the adjoint in the truncated duality pairing).
  std::vector<double> apply_adjoint(const std::vector<double>& g) const;

  /// Solves (I - c G) x = rhs by back-substitution; c >= 0. The system is
  /// upper triangular with diagonal 1 + c theta_i > 0.
  std::vector<double> solve_shifted(double c, const std::vector<double>& rhs) const;

  /// Row-major dense text dump, one row per line, %.17g entries.
  std::string dense_dump() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> diag_;       // -theta_i, i = 1..N
  std::vector<double> superdiag_;  // r_{i+1}, i = 1..N-1
  // frag_cols_[j-1] holds a_j * b_{i,j} for i = 1..j-1 (empty for j <= 2... j=1)
  std::vector<std::vector<double>> frag_cols_;
};

/// Applies the explicit decay resolvent R_lambda = (lambda I - A_N)^{-1},
/// where A_N is the decay part (diagonal + superdiagonal) of the truncated
/// generator. Single backward sweep, O(N).
std::vector<double> decay_resolvent_apply(const RateModel& model, std::size_t N,
                                          double lambda, const std::vector<double>& f);

/// Mass norm: sum_n n |f_n|.
double mass_norm(const std::vector<double>& f);

}  // namespace fragsim
