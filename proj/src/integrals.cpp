#include "knotlattice/integrals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "knotlattice/lattice.hpp"

namespace knotlattice {

namespace {

constexpr double kFourPi = 4 * std::numbers::pi;

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec3 isotropic(std::mt19937_64& rng) {
  const double c = 2 * uniform(rng) - 1;
  const double phi = 2 * std::numbers::pi * uniform(rng);
  const double r = std::sqrt(std::max(0.0, 1 - c * c));
  return {r * std::cos(phi), r * std::sin(phi), c};
}

// Per-stream sums of a sample vector f and of f f^T.
template <int D>
struct Sums {
  std::uint64_t count = 0;
  std::uint64_t rejected = 0;
  Eigen::Matrix<double, D, 1> sum = Eigen::Matrix<double, D, 1>::Zero();
  Eigen::Matrix<double, D, D> square = Eigen::Matrix<double, D, D>::Zero();
};

// Runs `sample(rng, f) -> accepted` over kStreams streams, merged in stream
// order.
template <int D, class Sample>
Sums<D> run_streams(const SamplingOptions& options, Sample sample) {
  if (options.samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<Sums<D>> streams(kStreams);
  std::atomic<int> next{0};
  const int workers = std::clamp(options.workers, 1, kStreams);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (int s; (s = next++) < kStreams;) {
        const std::uint64_t n =
            options.samples / kStreams + (static_cast<std::uint64_t>(s) < options.samples % kStreams ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(s)};
        std::mt19937_64 rng(seq);
        Sums<D>& acc = streams[s];
        Eigen::Matrix<double, D, 1> f;
        for (std::uint64_t i = 0; i < n; ++i) {
          ++acc.count;
          if (!sample(rng, f)) {
            ++acc.rejected;
            continue;
          }
          acc.sum += f;
          acc.square.noalias() += f * f.transpose();
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Sums<D> total;
  for (const auto& s : streams) {
    total.count += s.count;
    total.rejected += s.rejected;
    total.sum += s.sum;
    total.square += s.square;
  }
  return total;
}

// Mean and covariance of the mean.  Rejected samples count as zeros; the
// mass they would have carried, estimated from the accepted mean, is added
// to the variance.
template <int D>
void moments(const Sums<D>& s, Eigen::Matrix<double, D, 1>& mean, Eigen::Matrix<double, D, D>& cov) {
  const double n = static_cast<double>(s.count);
  mean = s.sum / n;
  cov = (s.square / n - mean * mean.transpose()) * (n / (n - 1)) / n;
  const double rejected = static_cast<double>(s.rejected) / n;
  for (int i = 0; i < D; ++i) {
    const double bias = rejected * std::abs(mean[i]) / std::max(1e-300, 1 - rejected);
    cov(i, i) += bias * bias;
  }
}

McEstimate estimate(double value, double variance, const SamplingOptions& options) {
  McEstimate e;
  e.value = value;
  e.standard_error = std::sqrt(std::max(0.0, variance));
  e.samples = options.samples;
  e.seed = options.seed;
  e.converged = e.standard_error <= options.max_standard_error;
  return e;
}

}  // namespace

double gauss_kernel(const Vec3& xa, const Vec3& da, const Vec3& xb, const Vec3& db) {
  const Vec3 r = xa - xb;
  const double n = r.norm();
  return da.cross(db).dot(r) / (kFourPi * n * n * n);
}

double gauss_form(const Vec3& x, const Vec3& y, const Vec3& normal) {
  const Vec3 r = y - x;
  const double n = r.norm();
  return r.dot(normal) / (kFourPi * n * n * n);
}

Vec3 tripod_weight(const Vec3& z, const Vec3& x, const Vec3& dx) {
  const Vec3 r = z - x;
  const double n = r.norm();
  return r.cross(dx) / (kFourPi * n * n * n);
}

McEstimate self_link_integral(const KnotCurve& curve, const SamplingOptions& options) {
  const double eps = options.epsilon;
  const auto sums = run_streams<1>(options, [&](std::mt19937_64& rng, Eigen::Matrix<double, 1, 1>& f) {
    const double a = uniform(rng);
    const double b = uniform(rng);
    const Vec3 xa = curve.position(a);
    const Vec3 xb = curve.position(b);
    if ((xa - xb).norm() < eps) return false;
    f[0] = gauss_kernel(xa, curve.derivative(a), xb, curve.derivative(b));
    return true;
  });
  Eigen::Matrix<double, 1, 1> mean;
  Eigen::Matrix<double, 1, 1> cov;
  moments(sums, mean, cov);
  return estimate(mean[0], cov(0, 0), options);
}

Degree2Integrals degree2_integrals(const KnotCurve& curve, const SamplingOptions& options) {
  const double eps = options.epsilon;
  const double lambda = options.scale > 0 ? options.scale : 0.5 * curve_scale(curve);
  const auto sums = run_streams<4>(options, [&](std::mt19937_64& rng, Eigen::Vector4d& f) {
    // theta: an unordered pair over the full square.
    const double a = uniform(rng);
    const double b = uniform(rng);
    const Vec3 xa = curve.position(a);
    const Vec3 xb = curve.position(b);
    if ((xa - xb).norm() < eps) return false;
    f[0] = gauss_kernel(xa, curve.derivative(a), xb, curve.derivative(b));

    // Two chords: four points in increasing order.
    std::array<double, 4> s{uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
    std::sort(s.begin(), s.end());
    std::array<Vec3, 4> x, dx;
    for (int i = 0; i < 4; ++i) {
      x[i] = curve.position(s[i]);
      dx[i] = curve.derivative(s[i]);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if ((x[i] - x[j]).norm() < eps) return false;
    auto g = [&](int i, int j) { return gauss_kernel(x[i], dx[i], x[j], dx[j]); };
    f[1] = g(0, 2) * g(1, 3) / 6;
    f[2] = (g(0, 1) * g(2, 3) + g(1, 2) * g(0, 3)) / 12;

    // Tripod: three points in increasing order, from a mixture of the
    // uniform law and a clustered law (one point, then two more uniformly in
    // a window of uniform length after it).  The clustered part has density
    // ~ 1/spread, matching the integrand near the collapse of all three.
    std::array<double, 3> t;
    if (uniform(rng) < 0.5) {
      t = {uniform(rng), uniform(rng), uniform(rng)};
    } else {
      const double s0 = uniform(rng);
      const double window = uniform(rng);
      auto wrap = [](double v) { return v >= 1 ? v - 1 : v; };
      t = {s0, wrap(s0 + window * uniform(rng)), wrap(s0 + window * uniform(rng))};
    }
    std::sort(t.begin(), t.end());
    const std::array<double, 3> gap{t[1] - t[0], t[2] - t[1], 1 - t[2] + t[0]};
    double clustered = 0;
    for (int i = 0; i < 3; ++i) {
      // Forward span from point i over the other two.
      const double span = gap[i] + gap[(i + 1) % 3];
      if (span <= 0) return false;
      clustered += 2 * (1 / span - 1);
    }
    const double triple_weight = 6 / (0.5 * 6 + 0.5 * clustered);
    std::array<Vec3, 3> y, dy;
    for (int i = 0; i < 3; ++i) {
      y[i] = curve.position(t[i]);
      dy[i] = curve.derivative(t[i]);
    }
    // Free point: radial law l/(l+r)^2 around one of the three knot points,
    // with l the global scale, the size of the triple or the closest
    // distance, so that collapsed triples and collapsed pairs still put most
    // samples where the integrand lives.
    double diameter = 0;
    double closest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      const double d = (y[i] - y[(i + 1) % 3]).norm();
      diameter = std::max(diameter, d);
      closest = std::min(closest, d);
    }
    auto clamp = [&](double l) { return std::max(eps, std::min(lambda, l)); };
    const std::array<double, 3> scales{lambda, clamp(0.5 * diameter), clamp(closest)};
    const int centre = std::min(2, static_cast<int>(3 * uniform(rng)));
    const double l = scales[std::min(2, static_cast<int>(3 * uniform(rng)))];
    const double q = uniform(rng);
    const Vec3 z = y[centre] + (l * q / (1 - q)) * isotropic(rng);
    auto proposal = [&](const Vec3& p) {
      double density = 0;
      for (int i = 0; i < 3; ++i) {
        const double r = (p - y[i]).norm();
        for (double s : scales) density += s / ((s + r) * (s + r) * kFourPi * r * r) / 9;
      }
      return density;
    };
    int pi = 0, pj = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        if ((y[i] - y[j]).norm() < eps) return false;
        if ((y[i] - y[j]).norm() < (y[pi] - y[pj]).norm()) pi = i, pj = j;
      }
    // The integrand is summed with its image under the reflection through
    // the midpoint of the closest pair and divided by the proposal summed the
    // same way.  The reflection is a volume preserving involution, so this is
    // unbiased; the leading singularity where that pair and z collide
    // cancels, and a mirror image landing next to a knot point is covered by
    // the proposal mass there.
    const Vec3 mirror = y[pi] + y[pj] - z;
    auto integrand = [&](const Vec3& p) {
      Eigen::Matrix3d w;
      for (int i = 0; i < 3; ++i) w.col(i) = tripod_weight(p, y[i], dy[i]);
      return -w.determinant();
    };
    for (int i = 0; i < 3; ++i)
      if ((z - y[i]).norm() < eps || (mirror - y[i]).norm() < eps) return false;
    f[3] = (integrand(z) + integrand(mirror)) / (proposal(z) + proposal(mirror)) * triple_weight / 2;
    return true;
  });

  Eigen::Vector4d mean;
  Eigen::Matrix4d cov;
  moments(sums, mean, cov);
  Degree2Integrals r;
  r.theta = estimate(mean[0], cov(0, 0), options);
  r.crossed = estimate(mean[1], cov(1, 1), options);
  r.parallel = estimate(mean[2], cov(2, 2), options);
  r.tripod = estimate(mean[3], cov(3, 3), options);
  r.covariance = cov;
  r.rejected = sums.rejected;
  r.scale = lambda;
  return r;
}

namespace {

Eigen::Vector2d chord_coordinates(ClassKey key, int sign = 1) {
  const RationalVector c = quotient_space(2).coordinates(key);
  return Eigen::Vector2d(sign * c.at(0).get_d(), sign * c.at(1).get_d());
}

std::vector<double> diagonal_sigma(const Eigen::MatrixXd& cov) {
  std::vector<double> s(cov.rows());
  for (int i = 0; i < cov.rows(); ++i) s[i] = std::sqrt(std::max(0.0, cov(i, i)));
  return s;
}

}  // namespace

Z2Report z2(const KnotCurve& curve, const SamplingOptions& options, double tolerance_sigmas) {
  const QuotientSpace& space = quotient_space(2);
  if (space.dimension() != 2) throw std::logic_error("z2: expected a two-dimensional A_2");
  const DegreeTwoClasses& classes = degree_two_classes();
  const LabelledDiagram tripod = representative(classes.tripod);

  Z2Report r;
  r.integrals = degree2_integrals(curve, options);
  const Degree2Integrals& in = r.integrals;
  const Eigen::Vector4d mu(in.theta.value, in.crossed.value, in.parallel.value, in.tripod.value);

  // Z_2 = I(par)/|par| [par] + I(cr)/|cr| [cr] + I(Y)/|Y| [Y], with the
  // tripod oriented along the cycle of its legs.
  const Eigen::Vector2d par = chord_coordinates(classes.parallel);
  const Eigen::Vector2d cr = chord_coordinates(classes.crossed);
  const Eigen::Vector2d y = chord_coordinates(classes.tripod, tripod_orientation(tripod));
  const double aut_par = make_class(classes.parallel).automorphisms;
  const double aut_cr = make_class(classes.crossed).automorphisms;
  const double aut_y = make_class(classes.tripod).automorphisms;
  Eigen::Matrix<double, 2, 4> linear;
  linear.col(0).setZero();
  linear.col(1) = cr / aut_cr;
  linear.col(2) = par / aut_par;
  linear.col(3) = y / aut_y;
  const Eigen::Vector2d coords = linear * mu;
  const Eigen::Matrix2d cov = linear * in.covariance * linear.transpose();
  r.coordinates = {coords[0], coords[1]};
  r.sigma = {std::sqrt(cov(0, 0)), std::sqrt(cov(1, 1))};

  // v2 - 1/24 is the coefficient of [crossed] - [parallel] in the frame
  // ([parallel], [crossed] - [parallel]).
  const Eigen::Matrix2d frame = (Eigen::Matrix2d() << par, cr - par).finished();
  const Eigen::RowVector2d dual = frame.inverse().row(1);
  r.v2 = dual * coords + 1.0 / 24;
  r.v2_sigma = std::sqrt(dual * cov * dual.transpose());
  r.v2_nearest = std::lround(r.v2);

  const double theta = in.theta.value;
  const Eigen::Vector2d closed = theta * theta / 8 * par + (r.v2_nearest - 1.0 / 24) * (cr - par);
  Eigen::Matrix<double, 2, 4> jacobian = linear;
  jacobian.col(0) = -theta / 4 * par;
  const Eigen::Matrix2d residual_cov = jacobian * in.covariance * jacobian.transpose();
  r.closed_form = {closed[0], closed[1]};
  r.closed_form_ok = true;
  for (int i = 0; i < 2; ++i) {
    r.closed_form_residual[i] = coords[i] - closed[i];
    r.closed_form_sigma[i] = std::sqrt(std::max(0.0, residual_cov(i, i)));
    if (std::abs(r.closed_form_residual[i]) > tolerance_sigmas * r.closed_form_sigma[i] + 1e-12)
      r.closed_form_ok = false;
  }

  // Framing shift to the nearest integer Gauss integral, then the lattice of
  // each A_2^k.  The jacobian of the shift is the same as for the residual.
  r.framing = std::lround(theta);
  const Eigen::Vector2d shifted = coords + (static_cast<double>(r.framing * r.framing) - theta * theta) / 8 * par;
  r.lattice_ok = true;
  for (int k = 0; k <= 4; ++k) {
    const QuotientSpace& qk = quotient_space_nk(2, k);
    Eigen::MatrixXd to_k(qk.dimension(), 2);
    for (int j = 0; j < 2; ++j) {
      const RationalVector c = qk.coordinates(space.basis()[j]);
      for (int i = 0; i < qk.dimension(); ++i) to_k(i, j) = c[i].get_d();
    }
    const Eigen::VectorXd v = to_k * shifted;
    const Eigen::MatrixXd vcov = to_k * residual_cov * to_k.transpose();
    LatticeCheck check;
    check.k = k;
    check.coordinates.assign(v.data(), v.data() + v.size());
    check.sigma = diagonal_sigma(vcov);
    const LatticeBasis basis = lattice_generators(2, k);
    const ApproximateMembership m = lattice_membership(basis, check.coordinates, check.sigma, tolerance_sigmas);
    check.nearest = m.nearest;
    check.residual = m.residual;
    check.within = m.within;
    r.lattice_ok = r.lattice_ok && check.within;
    r.lattice.push_back(std::move(check));
  }
  r.converged = in.theta.converged && in.crossed.converged && in.parallel.converged && in.tripod.converged;
  return r;
}

}  // namespace knotlattice
