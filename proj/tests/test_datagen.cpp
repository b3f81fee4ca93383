#include <doctest.h>

#include <cmath>

#include "neurochaos/datagen.hpp"
#include "neurochaos/errors.hpp"

using namespace neurochaos;

namespace {

datagen::CircleGenConfig config(double alpha, std::size_t n0, std::size_t n1,
                                std::uint64_t seed) {
  datagen::CircleGenConfig c;
  c.alpha = alpha;
  c.n0 = n0;
  c.n1 = n1;
  c.seed = seed;
  return c;
}

double radius(const Matrix& X, std::size_t i) { return std::hypot(X(i, 0), X(i, 1)); }

}  // namespace

TEST_CASE("noiseless circle points") {
  const auto ds = datagen::generate(config(0.0, 4, 4, 1));
  // class 0, theta = 0
  CHECK(ds.X(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(std::abs(ds.X(0, 1)) <= 1e-15);
  // class 1, theta = 90 degrees (second of four sweep points)
  CHECK(std::abs(ds.X(5, 0)) <= 1e-15);
  CHECK(ds.X(5, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(ds.y == LabelVector{0, 0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("generation is deterministic and balanced") {
  const auto a = datagen::generate(config(0.1, 251, 263, 99));
  const auto b = datagen::generate(config(0.1, 251, 263, 99));
  CHECK(a.X == b.X);  // bitwise
  CHECK(a.y == b.y);

  std::size_t n0 = 0, n1 = 0;
  for (const int y : a.y) (y == 0 ? n0 : n1)++;
  CHECK(n0 == 251);
  CHECK(n1 == 263);

  const auto c = datagen::generate(config(0.1, 251, 263, 100));
  CHECK_FALSE(a.X == c.X);
}

TEST_CASE("CCD radial bands do not overlap at desk scale") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto ds = datagen::generate(config(0.01, 2513, 2527, seed));
    double min_r0 = 1e9, max_r1 = 0.0;
    for (std::size_t i = 0; i < ds.X.rows(); ++i) {
      const double r = radius(ds.X, i);
      if (ds.y[i] == 0) {
        min_r0 = std::min(min_r0, r);
      } else {
        max_r1 = std::max(max_r1, r);
      }
    }
    CHECK(min_r0 > max_r1);
  }
}

TEST_CASE("OCCD bands overlap substantially") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto ds = datagen::generate(config(0.1, 2513, 2527, seed));
    const double overlap = datagen::radial_overlap_fraction(ds.X, ds.y);
    CHECK(overlap >= 0.2);
    CHECK(overlap <= 0.45);
  }
}

TEST_CASE("class mean radii concentrate around the noise-corrected centers") {
  // E||r u + alpha eta|| ~= r + alpha^2/(2r); the raw class radius alone
  // underestimates the mean by that Jensen term.
  const auto ds = datagen::generate(config(0.1, 2513, 2527, 5));
  double sum0 = 0.0, sum1 = 0.0;
  std::size_t c0 = 0, c1 = 0;
  for (std::size_t i = 0; i < ds.X.rows(); ++i) {
    if (ds.y[i] == 0) {
      sum0 += radius(ds.X, i);
      ++c0;
    } else {
      sum1 += radius(ds.X, i);
      ++c1;
    }
  }
  const double mean0 = sum0 / static_cast<double>(c0);
  const double mean1 = sum1 / static_cast<double>(c1);
  const double center0 = 0.6 + 0.1 * 0.1 / (2.0 * 0.6);
  const double center1 = 0.4 + 0.1 * 0.1 / (2.0 * 0.4);
  CHECK(std::abs(mean0 - center0) <= 4.0 * 0.1 / std::sqrt(2513.0));
  CHECK(std::abs(mean1 - center1) <= 4.0 * 0.1 / std::sqrt(2527.0));
}

TEST_CASE("quadrant_of covers axes deterministically") {
  CHECK(datagen::quadrant_of(0.5, 0.5) == 0);
  CHECK(datagen::quadrant_of(-0.5, 0.5) == 1);
  CHECK(datagen::quadrant_of(-0.5, -0.5) == 2);
  CHECK(datagen::quadrant_of(0.5, -0.5) == 3);
  CHECK(datagen::quadrant_of(0.0, 0.0) == 0);
  CHECK(datagen::quadrant_of(0.0, -0.1) == 3);
}

TEST_CASE("reduce_for_low_sample removes ceil(30%) per cell") {
  // ten points in one quadrant, increasing norm
  Matrix X(10, 2);
  LabelVector y(10, 0);
  for (std::size_t i = 0; i < 10; ++i) {
    X(i, 0) = 0.1 * static_cast<double>(i + 1);
    X(i, 1) = 0.05;
  }
  const auto reduced = datagen::reduce_for_low_sample(X, y);
  REQUIRE(reduced.y.size() == 7);
  // the three largest norms (last three rows) are gone
  for (std::size_t i = 0; i < reduced.X.rows(); ++i) CHECK(reduced.X(i, 0) <= 0.7 + 1e-15);

  // 7 points -> ceil(2.1) = 3 removed
  Matrix X7(7, 2);
  LabelVector y7(7, 0);
  for (std::size_t i = 0; i < 7; ++i) {
    X7(i, 0) = 0.1 * static_cast<double>(i + 1);
    X7(i, 1) = 0.01;
  }
  CHECK(datagen::reduce_for_low_sample(X7, y7).y.size() == 4);
}

TEST_CASE("reduce_for_low_sample breaks norm ties by original index") {
  // four rows with identical norm in quadrant 0: ceil(1.2) = 2 removed,
  // ties resolved toward the earliest rows, survivors keep their order
  Matrix X(4, 2);
  LabelVector y(4, 0);
  X(0, 0) = 0.3; X(0, 1) = 0.4;
  X(1, 0) = 0.4; X(1, 1) = 0.3;
  X(2, 0) = 0.5; X(2, 1) = 0.0;
  X(3, 0) = 0.0; X(3, 1) = 0.5;
  const auto reduced = datagen::reduce_for_low_sample(X, y);
  REQUIRE(reduced.y.size() == 2);
  CHECK(reduced.X(0, 0) == 0.5);
  CHECK(reduced.X(1, 1) == 0.5);

  const auto again = datagen::reduce_for_low_sample(X, y);
  CHECK(reduced.X == again.X);
}

TEST_CASE("reduce_for_low_sample per-quadrant totals on a seeded OCCD") {
  const auto ds = datagen::generate(config(0.1, 2513, 2527, 5));
  // independent expected count: per class-quadrant cell size minus ceil(30%)
  std::size_t expected = 0;
  for (const int cls : {0, 1}) {
    for (std::size_t quad = 0; quad < 4; ++quad) {
      std::size_t n = 0;
      for (std::size_t i = 0; i < ds.X.rows(); ++i) {
        if (ds.y[i] == cls && datagen::quadrant_of(ds.X(i, 0), ds.X(i, 1)) == quad) ++n;
      }
      expected += n - (3 * n + 9) / 10;
    }
  }
  const auto reduced = datagen::reduce_for_low_sample(ds.X, ds.y);
  CHECK(reduced.y.size() == expected);
}

TEST_CASE("generator validates its config") {
  CHECK_THROWS_AS(datagen::generate(config(-0.1, 2, 2, 0)), ArgumentError);
  CHECK_THROWS_AS(datagen::generate(config(0.1, 0, 2, 0)), ArgumentError);
  auto bad = config(0.1, 2, 2, 0);
  bad.r0 = 0.0;
  CHECK_THROWS_AS(datagen::generate(bad), ArgumentError);
}
