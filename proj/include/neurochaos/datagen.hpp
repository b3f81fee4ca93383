#pragma once

#include <cstdint>

#include "neurochaos/matrix.hpp"

namespace neurochaos::datagen {

// Two concentric circles with additive Gaussian noise. alpha = 0.01 gives the
// clean variant (CCD), alpha = 0.1 the overlapping one (OCCD).
struct CircleGenConfig {
  double r0 = 0.6;  // class-0 radius
  double r1 = 0.4;  // class-1 radius
  double alpha = 0.1;
  std::size_t n0 = 1;  // samples for class 0
  std::size_t n1 = 1;  // samples for class 1
  std::uint64_t seed = 0;
};

// For each class: theta evenly spaced over [0, 360) degrees, point
// (r cos t + alpha*eta1, r sin t + alpha*eta2) with independent standard
// normals. Class-0 rows first, then class-1. Deterministic given seed.
Dataset generate(const CircleGenConfig& config);

// Low-training-sample pool reduction: within each (class, quadrant) cell,
// drops the ceil(30%) points of largest euclidean norm; ties broken by
// original index, survivors keep their original order.
Dataset reduce_for_low_sample(const Matrix& X, const LabelVector& y);

// Quadrant of a 2-D point; axes (>= 0) count as the adjacent lower quadrant
// index so that every point lands in exactly one cell.
std::size_t quadrant_of(double f1, double f2);

// Fraction of class-0 points whose radius lies below the 95th percentile of
// class-1 radii; a seed-stable summary of how far the noisy bands mix.
double radial_overlap_fraction(const Matrix& X, const LabelVector& y);

}  // namespace neurochaos::datagen
