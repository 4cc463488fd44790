#include <doctest.h>

#include <cmath>
#include <random>

#include "fragsim/generator.hpp"
#include "helpers.hpp"

using namespace fragsim;
using namespace fragsim::testing;

namespace {

const KernelSpec kKernel = KernelSpec::uniform_binary();

// Residual of the bidiagonal decay system (lambda I - A_N) u = f, computed
// directly from the model; independent of the resolvent sweep.
std::vector<double> decay_residual(const RateModel& m, std::size_t N, double lambda,
                                   const std::vector<double>& u,
                                   const std::vector<double>& f) {
  std::vector<double> res(N);
  for (std::size_t i = 1; i <= N; ++i) {
    const double th = m.decay(i) + m.frag(i) + m.death(i);
    double v = (lambda + th) * u[i - 1] - f[i - 1];
    if (i < N) v -= m.decay(i + 1) * u[i];
    res[i - 1] = v;
  }
  return res;
}

}  // namespace

TEST_CASE("generator assembly at small sizes") {
  const auto g41 = TruncatedGenerator::build(model_sec4_1(), kKernel, 2);
  CHECK(g41.entry(1, 1) == -1.0);
  CHECK(g41.entry(1, 2) == 3.0);  // r_2 + a_2 b_{1,2} = 1 + 1*2
  CHECK(g41.entry(2, 1) == 0.0);
  CHECK(g41.entry(2, 2) == -2.0);

  const auto g43 = TruncatedGenerator::build(model_sec4_3(), kKernel, 2);
  CHECK(g43.entry(1, 1) == -2.0);
  CHECK(g43.entry(1, 2) == 5.0);  // r_2 + a_2 b_{1,2} = 1 + 2*2
  CHECK(g43.entry(2, 2) == -5.0);

  // a single class cannot fragment: G = [[-(r_1 + d_1)]]
  const auto g1 = TruncatedGenerator::build(model_sec4_3(), kKernel, 1);
  CHECK(g1.entry(1, 1) == -2.0);
}

TEST_CASE("generator build rejects a non-conservative kernel") {
  const auto broken = KernelSpec::tabulated({{1.0}});
  CHECK_THROWS_AS(TruncatedGenerator::build(model_sec4_1(), broken, 2), ValidationError);
}

TEST_CASE("apply matches hand values and dense multiplication") {
  const auto G = TruncatedGenerator::build(model_sec4_1(), kKernel, 2);
  CHECK(G.apply({0.0, 1.0}) == std::vector<double>{3.0, -2.0});
  CHECK(G.apply({1.0, 0.0}) == std::vector<double>{-1.0, 0.0});
  CHECK(G.apply({0.0, 0.0}) == std::vector<double>{0.0, 0.0});

  std::mt19937 rng(11);
  for (const auto& model : all_sec4_models()) {
    const auto G8 = TruncatedGenerator::build(model, kKernel, 8);
    const auto M = dense_matrix(G8);
    for (int rep = 0; rep < 20; ++rep) {
      const auto f = random_vector(rng, 8);
      const auto out = G8.apply(f);
      Eigen::VectorXd fe(8);
      for (int i = 0; i < 8; ++i) fe(i) = f[i];
      const Eigen::VectorXd ref = M * fe;
      for (int i = 0; i < 8; ++i) CHECK(out[i] == doctest::Approx(ref(i)).epsilon(1e-14));
    }
  }
}

TEST_CASE("apply_adjoint matches the transpose and the duality pairing") {
  const auto G = TruncatedGenerator::build(model_sec4_1(), kKernel, 2);
  CHECK(G.apply_adjoint({1.0, 0.0}) == std::vector<double>{-1.0, 3.0});
  CHECK(G.apply_adjoint({0.0, 0.0}) == std::vector<double>{0.0, 0.0});

  std::mt19937 rng(13);
  for (std::size_t N : {4u, 16u, 64u}) {
    const auto GN = TruncatedGenerator::build(model_sec4_3(), kKernel, N);
    for (int rep = 0; rep < 100; ++rep) {
      const auto f = random_vector(rng, N);
      const auto g = random_vector(rng, N);
      const auto Gf = GN.apply(f);
      const auto Gtg = GN.apply_adjoint(g);
      double lhs = 0.0, rhs = 0.0, ginf = 0.0, f1 = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        lhs += Gtg[i] * f[i];
        rhs += g[i] * Gf[i];
        ginf = std::max(ginf, std::abs(g[i]));
        f1 += std::abs(f[i]);
      }
      CHECK(std::abs(lhs - rhs) <= 1e-12 * ginf * f1 * static_cast<double>(N));
    }
  }
}

TEST_CASE("mass-balance identity on interior-supported states") {
  std::mt19937 rng(17);
  for (const auto& model : all_sec4_models()) {
    const std::size_t N = 32;
    const auto G = TruncatedGenerator::build(model, kKernel, N);
    for (int rep = 0; rep < 20; ++rep) {
      auto f = random_vector(rng, N);
      f[N - 1] = 0.0;  // keep the truncation boundary inactive
      const auto Gf = G.apply(f);
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t n = 1; n <= N; ++n) {
        lhs += static_cast<double>(n) * Gf[n - 1];
        rhs -= (model.decay(n) + static_cast<double>(n) * model.death(n)) * f[n - 1];
      }
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(rhs) + mass_norm(f)));
    }
  }
}

TEST_CASE("decay resolvent: single class") {
  const auto m = model_sec4_3();  // theta_1 = 2
  const auto u = decay_resolvent_apply(m, 1, 0.5, {3.0});
  CHECK(u[0] == doctest::Approx(3.0 / 2.5).epsilon(1e-15));
}

TEST_CASE("decay resolvent rejects lambda <= 0") {
  CHECK_THROWS_AS(decay_resolvent_apply(model_sec4_1(), 4, 0.0, {1, 1, 1, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(decay_resolvent_apply(model_sec4_1(), 4, -1.0, {1, 1, 1, 1}),
                  std::domain_error);
}

TEST_CASE("decay resolvent: mass bound, residual, positivity") {
  std::mt19937 rng(19);
  const std::size_t N = 64;
  for (const auto& model : all_sec4_models()) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      for (int rep = 0; rep < 20; ++rep) {
        const auto f = random_vector(rng, N, /*nonnegative=*/true);
        const auto u = decay_resolvent_apply(model, N, lambda, f);
        for (double v : u) CHECK(v >= 0.0);
        CHECK(mass_norm(u) <= (1.0 / lambda) * mass_norm(f) * (1.0 + 1e-14));
        const auto res = decay_residual(model, N, lambda, u, f);
        CHECK(mass_norm(res) <= 1e-10 * mass_norm(f));
      }
    }
  }
}
