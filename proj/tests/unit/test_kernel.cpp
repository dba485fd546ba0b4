#include "nlnet/error.hpp"
#include "nlnet/kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace nlnet;

namespace {
  // Antiderivative of the linear kernel, 2 (eta x - x^2 / 2) / eta^2.
  double linear_primitive(double eta, double x) { return 2.0 * (eta * x - 0.5 * x * x) / (eta * eta); }
}  // namespace

TEST_CASE("constant kernel weights") {
  auto const w = gamma_weights(Kernel::constant(0.4), 0.1);
  REQUIRE(w.size() == 4);
  for (double g : w.gamma) {
    CHECK(g == doctest::Approx(0.25));
  }
}

TEST_CASE("linear kernel weights follow the antiderivative") {
  auto const w = gamma_weights(Kernel::linear(0.2), 0.1);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(0.75));
  CHECK(w[1] == doctest::Approx(0.25));

  double const eta = 0.5, dx = 0.01;
  auto const d = gamma_weights(Kernel::linear(eta), dx);
  REQUIRE(d.size() == 50);
  for (std::size_t k = 0; k < d.size(); ++k) {
    double const want = linear_primitive(eta, (k + 1) * dx) - linear_primitive(eta, k * dx);
    CHECK(d[k] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(d[0] == doctest::Approx(0.0396));
}

TEST_CASE("range must be a multiple of the cell size") {
  CHECK_THROWS_AS(gamma_weights(Kernel::linear(0.5), 0.03), ConfigError);
  CHECK_THROWS_AS(cells_per_range(0.5, 0.3), ConfigError);
  CHECK(cells_per_range(0.5, 0.01) == 50);
}

TEST_CASE("weights are nonnegative, nonincreasing and sum to one") {
  for (double eta : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    for (Kernel const& k : {Kernel::linear(eta), Kernel::constant(eta)}) {
      auto const w = gamma_weights(k, 0.01);
      CHECK(std::accumulate(w.gamma.begin(), w.gamma.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(w[i] >= 0.0);
        if (i > 0) {
          CHECK(w[i] <= w[i - 1] + 1e-15);
        }
      }
      CHECK(w[0] <= k(0.0) * 0.01 + 1e-15);
    }
  }
}

TEST_CASE("gamma_0 vanishes as the cell size shrinks") {
  double prev = 1.0;
  for (double dx : {0.1, 0.05, 0.01, 0.005, 0.001}) {
    double const g0 = gamma_weights(Kernel::linear(1.0), dx)[0];
    CHECK(g0 < prev);
    prev = g0;
  }
  CHECK(prev < 0.0021);
}

TEST_CASE("tabulated kernels") {
  auto const k = Kernel::tabulated({{0.0, 4.0}, {0.5, 0.0}});
  CHECK_FALSE(k.renormalised());
  CHECK(k.integral(0.0, 0.5) == doctest::Approx(1.0));
  CHECK(k(0.25) == doctest::Approx(2.0));

  auto const scaled = Kernel::tabulated({{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}});
  CHECK(scaled.renormalised());
  CHECK(scaled.integral(0.0, 2.0) == doctest::Approx(1.0));
  CHECK(scaled(1.0) == doctest::Approx(0.5));

  CHECK_THROWS_AS(Kernel::tabulated({{0.0, 1.0}, {0.5, 2.0}, {1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(Kernel::tabulated({{0.1, 1.0}, {1.0, 0.0}}), ConfigError);

  auto const stretched = k.with_eta(1.0);
  CHECK(stretched.eta() == doctest::Approx(1.0));
  CHECK(stretched.integral(0.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("kernel family names") {
  for (auto f : {KernelFamily::linear_decreasing, KernelFamily::constant, KernelFamily::tabulated}) {
    CHECK(parse_kernel_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_kernel_family("gaussian"), ConfigError);
}
