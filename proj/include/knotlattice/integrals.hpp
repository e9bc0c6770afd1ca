#pragma once

// Monte Carlo estimates of the configuration space integrals of degree 1
// and 2, and the assembled degree-2 term Z_2.

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "knotlattice/curve.hpp"

namespace knotlattice {

struct McEstimate {
  double value = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool converged = true;  // standard_error <= SamplingOptions::max_standard_error
};

// Samples are split into kStreams fixed streams, so results depend on the
// seed and sample count but not on the worker count.
constexpr int kStreams = 64;

struct SamplingOptions {
  std::uint64_t samples = 4'000'000;
  std::uint64_t seed = 1;
  int workers = 1;
  // Samples with two points closer than epsilon are rejected.
  double epsilon = 1e-9;
  double max_standard_error = 0.05;
  // Radial scale of the free-point proposal; 0 means half of curve_scale(curve).
  double scale = 0;
};

// Gauss kernel det(da, db, xa - xb) / (4 pi |xa - xb|^3): the pull-back of
// the unit-mass area form along (xa - xb)/|xa - xb| per unit of both curve
// parameters.  Symmetric under exchanging a and b.
double gauss_kernel(const Vec3& xa, const Vec3& da, const Vec3& xb, const Vec3& db);

// Density of the same form on a surface through y with normal `normal`,
// pulled back along (y - x)/|y - x|.  Integrates to 1 over any closed
// surface around x.
double gauss_form(const Vec3& x, const Vec3& y, const Vec3& normal);

// ((z - x) x dx) / (4 pi |z - x|^3): the form of the edge from a knot point x
// to a free point z, contracted with the knot tangent.
Vec3 tripod_weight(const Vec3& z, const Vec3& x, const Vec3& dx);

// Integral of the Gauss kernel over the whole square of parameters: the
// writhe of the curve.
McEstimate self_link_integral(const KnotCurve& curve, const SamplingOptions& options);

struct Degree2Integrals {
  McEstimate theta;
  McEstimate crossed;
  McEstimate parallel;
  McEstimate tripod;
  // Covariance of (theta, crossed, parallel, tripod), including the
  // rejection term on the diagonal.
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  std::uint64_t rejected = 0;
  double scale = 0;
};

// All four integrals from one sample stream so that their correlations are
// known.
Degree2Integrals degree2_integrals(const KnotCurve& curve, const SamplingOptions& options);

struct LatticeCheck {
  int k = 0;
  std::vector<double> coordinates;  // in A_2^k after the framing shift
  std::vector<double> sigma;
  std::vector<double> nearest;
  std::vector<double> residual;
  bool within = false;
};

struct Z2Report {
  Degree2Integrals integrals;
  // Coordinates of Z_2 in the basis of A_2 (parallel, crossed) with errors.
  std::array<double, 2> coordinates{};
  std::array<double, 2> sigma{};
  double v2 = 0;
  double v2_sigma = 0;
  long v2_nearest = 0;
  // I^2/8 [parallel] + (round(v2) - 1/24)([crossed] - [parallel]).
  std::array<double, 2> closed_form{};
  std::array<double, 2> closed_form_residual{};
  std::array<double, 2> closed_form_sigma{};
  bool closed_form_ok = false;
  // round(I); the lattice check uses Z_2 + (m^2 - I^2)/8 [parallel].
  long framing = 0;
  std::vector<LatticeCheck> lattice;
  bool lattice_ok = false;
  bool converged = false;
};

Z2Report z2(const KnotCurve& curve, const SamplingOptions& options, double tolerance_sigmas = 3.0);

}  // namespace knotlattice
