#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragsim {

/// Thrown when a rate model or kernel violates a structural constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RateKind { Constant, Linear, PowerLaw, Tabulated };

/// One coefficient family i -> c * i^p (or an explicit table).
struct RateFamily {
  RateKind kind = RateKind::Constant;
  double c = 0.0;
  double p = 0.0;                  // exponent, power-law only
  std::vector<double> table;       // tabulated only, table[i-1] = value at i

  double operator()(std::size_t i) const;

  /// Asymptotic exponent q such that the family behaves like c * i^q
  /// for large i. Unavailable for tabulated data.
  std::optional<double> growth_exponent() const;

  static RateFamily constant(double c) { return {RateKind::Constant, c, 0.0, {}}; }
  static RateFamily linear(double c) { return {RateKind::Linear, c, 0.0, {}}; }
  static RateFamily power_law(double c, double p) { return {RateKind::PowerLaw, c, p, {}}; }
  static RateFamily tabulated(std::vector<double> v) {
    return {RateKind::Tabulated, 0.0, 0.0, std::move(v)};
  }
};

/// Decay r_i, sedimentation/death d_i and fragmentation a_i coefficients.
/// frag(1) is forced to zero regardless of the underlying family.
struct RateModel {
  RateFamily decay_family;
  RateFamily death_family;
  RateFamily frag_family;

  double decay(std::size_t i) const { return decay_family(i); }
  double death(std::size_t i) const { return death_family(i); }
  double frag(std::size_t i) const { return i == 1 ? 0.0 : frag_family(i); }

  /// Checks r_i > 0 and d_i, a_i >= 0 over 1..N. Zero fragmentation is
  /// accepted (pure decay); with `require_positive_decay` false, r_i = 0 is
  /// also accepted (pure fragmentation, outside the growth hypotheses but
  /// useful as a solver check).
  void validate(std::size_t N, bool require_positive_decay = true) const;
};

enum class KernelKind { UniformBinary, Tabulated };

/// Fragmentation kernel b_{i,j}: expected number of i-mers from a breaking
/// j-mer. Zero whenever i >= j.
struct KernelSpec {
  KernelKind kind = KernelKind::UniformBinary;
  // tabulated only: rows indexed by j (2..jmax), row j holds b_{1,j}..b_{j-1,j}
  std::vector<std::vector<double>> table;

  double eval(std::size_t i, std::size_t j) const;

  static KernelSpec uniform_binary() { return {KernelKind::UniformBinary, {}}; }
  static KernelSpec tabulated(std::vector<std::vector<double>> rows) {
    return {KernelKind::Tabulated, std::move(rows)};
  }
};

/// theta_i = r_i + a_i + d_i, the negated diagonal of the generator.
struct Theta {
  std::vector<double> values;  // values[i-1] = theta_i

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i - 1]; }  // 1-based
};

Theta theta(const RateModel& model, std::size_t N, bool require_positive_decay = true);

struct KernelConservationReport {
  double max_abs_deviation = 0.0;
  std::size_t worst_j = 0;
};

/// Checks sum_{i<j} i*b_{i,j} = j for 2 <= j <= jmax.
KernelConservationReport check_kernel_conservation(const KernelSpec& kernel,
                                                   std::size_t jmax);

inline constexpr double kKernelConservationTol = 1e-12;

/// Verdicts for the analyticity/compactness/spectral-gap hypotheses,
/// evaluated over indices 1..N. For tabulated families the asymptotic
/// conditions are finite-window heuristics and `heuristic` is set.
struct RegimeReport {
  bool analytic_domination = false;   // d_n + a_n >= C r_n for some C > 0
  double domination_constant = 0.0;   // inf over the window of (d_n+a_n)/r_n
  bool frag_death_ratio_bounded = false;  // limsup a_n/d_n < inf
  bool theta_divergent = false;           // liminf theta_n = inf
  bool strict_min_unique = false;
  std::size_t argmin_index = 0;  // N0, 1-based
  bool heuristic = false;
};

RegimeReport classify_regime(const RateModel& model, std::size_t N);

}  // namespace fragsim
