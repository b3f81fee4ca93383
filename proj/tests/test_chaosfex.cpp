#include <doctest.h>

#include <cmath>

#include "neurochaos/chaosfex.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

using namespace neurochaos;
using chaos::GlsParams;

TEST_CASE("symbolic_entropy of the binary symbol distribution") {
  CHECK(chaosfex::symbolic_entropy(0.0) == 0.0);
  CHECK(chaosfex::symbolic_entropy(1.0) == 0.0);
  CHECK(chaosfex::symbolic_entropy(0.5) == 1.0);
  CHECK(chaosfex::symbolic_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-15));
  // symmetric in p <-> 1-p
  CHECK(chaosfex::symbolic_entropy(0.25) == chaosfex::symbolic_entropy(0.75));
}

TEST_CASE("extract_features of a zero-length firing") {
  // trajectory is [0.34]: below threshold, energy = q^2, entropy 0
  const auto f = chaosfex::extract_features(0.34, GlsParams(0.34, 0.499, 0.18));
  CHECK(f.firing_time == 0.0);
  CHECK(f.firing_rate == 0.0);
  CHECK(f.energy == 0.34 * 0.34);
  CHECK(f.energy == doctest::Approx(0.1156).epsilon(1e-12));
  CHECK(f.entropy == 0.0);
  CHECK(f.fired);
}

TEST_CASE("extract_features of the hand-iterated trajectory") {
  // [0.1, 0.2, 0.4, 0.8]: one sample >= b, energy 0.85, H(0.25)
  const auto f = chaosfex::extract_features(0.8, GlsParams(0.1, 0.5, 0.05));
  CHECK(f.firing_time == 3.0);
  CHECK(f.firing_rate == 0.25);
  CHECK(f.energy == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(f.entropy == doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("extract_features with q at or above the threshold") {
  const auto f = chaosfex::extract_features(0.9, GlsParams(0.9, 0.5, 0.1));
  CHECK(f.firing_time == 0.0);
  CHECK(f.firing_rate == 1.0);
  CHECK(f.entropy == 0.0);
}

TEST_CASE("extract_features flags capped trajectories") {
  const auto f = chaosfex::extract_features(0.9, GlsParams(0.0, 0.5, 0.01, 50));
  CHECK_FALSE(f.fired);
  CHECK(f.firing_time == 50.0);
}

TEST_CASE("transform shape and single-cell value") {
  Matrix one(1, 1);
  one(0, 0) = 0.34;
  const auto r = chaosfex::transform(one, GlsParams(0.34, 0.499, 0.18));
  REQUIRE(r.features.rows() == 1);
  REQUIRE(r.features.cols() == 4);
  CHECK(r.features(0, 0) == 0.0);
  CHECK(r.features(0, 1) == 0.0);
  CHECK(r.features(0, 2) == 0.34 * 0.34);
  CHECK(r.features(0, 3) == 0.0);

  Matrix two(2, 2, 0.5);
  CHECK(chaosfex::transform(two, GlsParams(0.34, 0.499, 0.18)).features.cols() == 8);
}

TEST_CASE("transform equals the scalar double loop and is thread-invariant") {
  Rng rng(5);
  Matrix data(100, 10);
  for (auto& v : data.data()) v = rng.uniform();
  const GlsParams p(0.22, 0.96, 0.018, 10000);

  const auto serial = chaosfex::transform(data, p, 1);

  // naive cell-by-cell oracle
  Matrix expected(100, 40);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < data.cols(); ++k) {
      const auto f = chaosfex::extract_features(data(i, k), p);
      expected(i, 4 * k + 0) = f.firing_time;
      expected(i, 4 * k + 1) = f.firing_rate;
      expected(i, 4 * k + 2) = f.energy;
      expected(i, 4 * k + 3) = f.entropy;
    }
  }
  REQUIRE(serial.features == expected);  // bitwise

  const auto parallel = chaosfex::transform(data, p, 3);
  REQUIRE(parallel.features == serial.features);  // bitwise
  CHECK(parallel.unfired_cells == serial.unfired_cells);
}

TEST_CASE("row permutation permutes features identically") {
  Rng rng(6);
  Matrix data(20, 3);
  for (auto& v : data.data()) v = rng.uniform();
  const GlsParams p(0.34, 0.499, 0.05);
  const auto base = chaosfex::transform(data, p);

  Matrix reversed(20, 3);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 3; ++j) reversed(i, j) = data(19 - i, j);
  }
  const auto flipped = chaosfex::transform(reversed, p);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      REQUIRE(flipped.features(i, j) == base.features(19 - i, j));
    }
  }
}

TEST_CASE("entropy bounds follow the firing rate") {
  Rng rng(7);
  const GlsParams p(0.34, 0.499, 0.02);
  for (int i = 0; i < 2000; ++i) {
    const auto f = chaosfex::extract_features(rng.uniform(), p);
    CHECK(f.firing_rate >= 0.0);
    CHECK(f.firing_rate <= 1.0);
    CHECK(f.entropy >= 0.0);
    CHECK(f.entropy <= 1.0);
    if (f.firing_rate == 0.0 || f.firing_rate == 1.0) {
      CHECK(f.entropy == 0.0);
    } else {
      CHECK(f.entropy > 0.0);
    }
    if (f.firing_rate == 0.5) CHECK(f.entropy == 1.0);
  }
}

TEST_CASE("energy grows with firing time along a trajectory") {
  // prefixes of one orbit: energy is the running sum of squares
  const GlsParams p(0.37, 0.499, 0.001, 3000);
  const auto traj = chaos::fire(0.9123, p);
  REQUIRE(traj.fired);
  REQUIRE(traj.firing_time() > 10);
  double cumulative = 0.0;
  double previous = -1.0;
  for (const double s : traj.samples) {
    cumulative += s * s;
    if (s != 0.0) CHECK(cumulative > previous);
    previous = cumulative;
  }
}

TEST_CASE("transform rejects out-of-range stimuli with row/col") {
  Matrix bad(2, 1);
  bad(0, 0) = 0.5;
  bad(1, 0) = 1.5;
  try {
    chaosfex::transform(bad, GlsParams(0.34, 0.499, 0.18));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 1") != std::string::npos);
    CHECK(msg.find("col 0") != std::string::npos);
  }
}

TEST_CASE("feature_header naming") {
  const auto h = chaosfex::feature_header(2);
  REQUIRE(h.size() == 8);
  CHECK(h[0] == "f0_time");
  CHECK(h[1] == "f0_rate");
  CHECK(h[2] == "f0_energy");
  CHECK(h[3] == "f0_entropy");
  CHECK(h[4] == "f1_time");
  CHECK(h[7] == "f1_entropy");
}
