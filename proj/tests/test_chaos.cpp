#include <doctest.h>

#include <cmath>

#include "neurochaos/chaos.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

using namespace neurochaos;
using chaos::GlsParams;

// Independent re-iteration of the map, written without reusing fire().
namespace {

double tent_oracle_step(double x, double b) { return x < b ? x / b : (1.0 - x) / (1.0 - b); }

// First t with |orbit(t) - stimulus| < eps, or SIZE_MAX if none within cap.
std::size_t oracle_firing_time(double stimulus, const GlsParams& p) {
  double x = p.q;
  for (std::size_t t = 0; t <= p.max_iters; ++t) {
    if (std::abs(x - stimulus) < p.epsilon) return t;
    x = tent_oracle_step(x, p.b);
  }
  return SIZE_MAX;
}

}  // namespace

TEST_CASE("skew_tent_step piecewise values") {
  CHECK(chaos::skew_tent_step(0.0, 0.499) == 0.0);
  CHECK(chaos::skew_tent_step(0.25, 0.5) == 0.5);
  CHECK(chaos::skew_tent_step(1.0, 0.5) == 0.0);
  CHECK(chaos::skew_tent_step(0.5, 0.5) == 1.0);  // peak at the threshold
}

TEST_CASE("skew_tent_step rejects out-of-domain arguments") {
  CHECK_THROWS_AS(chaos::skew_tent_step(-0.1, 0.5), ArgumentError);
  CHECK_THROWS_AS(chaos::skew_tent_step(1.1, 0.5), ArgumentError);
  CHECK_THROWS_AS(chaos::skew_tent_step(0.5, 0.0), ArgumentError);
  CHECK_THROWS_AS(chaos::skew_tent_step(0.5, 1.0), ArgumentError);
  CHECK_THROWS_AS(chaos::skew_tent_step(std::nan(""), 0.5), ArgumentError);
}

TEST_CASE("orbit closure: map stays inside [0,1]") {
  Rng rng(11);
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform();
    const double b = rng.uniform(1e-6, 1.0 - 1e-6);
    const double y = chaos::skew_tent_step(x, b);
    REQUIRE(y >= 0.0);
    REQUIRE(y <= 1.0);
  }
  // boundary values included
  CHECK(chaos::skew_tent_step(1.0, 0.3) == 0.0);
}

TEST_CASE("tent symmetry at b = 0.5") {
  // exactly representable points map exactly
  CHECK(chaos::skew_tent_step(0.25, 0.5) == chaos::skew_tent_step(0.75, 0.5));
  Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    const double x = rng.uniform();
    const double a = chaos::skew_tent_step(x, 0.5);
    const double b = chaos::skew_tent_step(1.0 - x, 0.5);
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("GlsParams validates ranges") {
  CHECK_NOTHROW(GlsParams(0.0, 0.5, 0.1));
  CHECK_NOTHROW(GlsParams(1.0, 0.5, 0.999));
  CHECK_THROWS_AS(GlsParams(-0.1, 0.5, 0.1), ArgumentError);
  CHECK_THROWS_AS(GlsParams(1.1, 0.5, 0.1), ArgumentError);
  CHECK_THROWS_AS(GlsParams(0.5, 0.0, 0.1), ArgumentError);
  CHECK_THROWS_AS(GlsParams(0.5, 1.0, 0.1), ArgumentError);
  CHECK_THROWS_AS(GlsParams(0.5, 0.5, 0.0), ArgumentError);
  CHECK_THROWS_AS(GlsParams(0.5, 0.5, 1.0), ArgumentError);
  CHECK_THROWS_AS(GlsParams(0.5, 0.5, 0.1, 0), ArgumentError);
}

TEST_CASE("fire halts immediately when q is within epsilon of the stimulus") {
  const auto traj = chaos::fire(0.34, GlsParams(0.34, 0.499, 0.18));
  CHECK(traj.fired);
  CHECK(traj.firing_time() == 0);
  REQUIRE(traj.samples.size() == 1);
  CHECK(traj.samples[0] == 0.34);
}

TEST_CASE("fire hand-iterated trajectory 0.1 -> 0.2 -> 0.4 -> 0.8") {
  const auto traj = chaos::fire(0.8, GlsParams(0.1, 0.5, 0.05, 100));
  CHECK(traj.fired);
  CHECK(traj.firing_time() == 3);
  REQUIRE(traj.samples.size() == 4);
  CHECK(traj.samples[0] == 0.1);
  CHECK(traj.samples[1] == 0.2);
  CHECK(traj.samples[2] == 0.4);
  CHECK(traj.samples[3] == 0.8);
}

TEST_CASE("fire reports non-firing for the degenerate fixed point at 0") {
  const auto traj = chaos::fire(0.9, GlsParams(0.0, 0.5, 0.01, 50));
  CHECK_FALSE(traj.fired);
  CHECK(traj.samples.size() == 51);  // max_iters + 1
  for (const double s : traj.samples) CHECK(s == 0.0);
}

TEST_CASE("fire validates the stimulus") {
  CHECK_THROWS_AS(chaos::fire(-0.2, GlsParams(0.5, 0.5, 0.1)), ArgumentError);
  CHECK_THROWS_AS(chaos::fire(1.2, GlsParams(0.5, 0.5, 0.1)), ArgumentError);
}

TEST_CASE("fire is deterministic and minimal (brute-force oracle)") {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double stimulus = rng.uniform();
    const GlsParams p(rng.uniform(), rng.uniform(0.05, 0.95), rng.uniform(0.001, 0.3), 2000);
    const auto a = chaos::fire(stimulus, p);
    const auto b = chaos::fire(stimulus, p);
    REQUIRE(a.samples == b.samples);  // bitwise identical
    REQUIRE(a.fired == b.fired);

    const std::size_t oracle = oracle_firing_time(stimulus, p);
    if (a.fired) {
      REQUIRE(oracle == a.firing_time());
    } else {
      REQUIRE(oracle == SIZE_MAX);
    }
    for (const double s : a.samples) {
      REQUIRE(s >= 0.0);
      REQUIRE(s <= 1.0);
    }
  }
}

TEST_CASE("approximate_function is exact for a constant function at q") {
  const GlsParams p(0.34, 0.499, 0.01, 1000);
  const std::vector<double> f{0.34, 0.34, 0.34};
  const auto result = chaos::approximate_function(f, p);
  CHECK(result.total_error == 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(result.approximations[i] == 0.34);
    CHECK(result.firing_times[i] == 0);
  }
}

TEST_CASE("approximate_function satisfies the 2*L*epsilon bound") {
  // L = 16 samples in [0.05, 0.95], per-neuron epsilon = 0.1 / (2*16)
  Rng rng(31);
  std::vector<double> f(16);
  for (auto& v : f) v = rng.uniform(0.05, 0.95);
  const GlsParams p(0.34, 0.499, 0.003125, 1000000);
  const auto result = chaos::approximate_function(f, p);
  CHECK(result.total_error < 16.0 * 2.0 * 0.003125);

  // independent recomputation of the distance
  double check = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) check += std::abs(f[i] - result.approximations[i]);
  CHECK(result.total_error == check);
}

TEST_CASE("approximate_function reaches a stimulus of exactly 0") {
  const GlsParams p(0.34, 0.499, 0.01, 1000000);
  const std::vector<double> f{0.0};
  const auto result = chaos::approximate_function(f, p);
  CHECK(std::abs(result.approximations[0]) < p.epsilon);

  // brute-force scan confirms some iterate enters [0, epsilon)
  const std::size_t t = oracle_firing_time(0.0, p);
  CHECK(t == result.firing_times[0]);
}

TEST_CASE("approximate_function names the unfired indices") {
  // q = 0 never leaves the fixed point, so every stimulus > eps fails
  const GlsParams p(0.0, 0.5, 0.01, 20);
  const std::vector<double> f{0.5, 0.001, 0.9};
  try {
    chaos::approximate_function(f, p);
    FAIL("expected ApproximationError");
  } catch (const ApproximationError& e) {
    CHECK(e.unfired_indices == std::vector<std::size_t>{0, 2});
    CHECK(std::string(e.what()).find("[0, 2]") != std::string::npos);
  }
}

TEST_CASE("UAT bound holds across random functions when all neurons fire") {
  Rng rng(41);
  for (const std::size_t L : {4ul, 16ul, 64ul}) {
    const double eps = 0.05 / (2.0 * static_cast<double>(L));
    const GlsParams p(0.34, 0.499, eps, 1000000);
    std::vector<double> f(L);
    for (auto& v : f) v = rng.uniform();
    const auto result = chaos::approximate_function(f, p);
    CHECK(result.total_error < 2.0 * static_cast<double>(L) * eps);
  }
}
