#pragma once

// Closed space curves parametrized by s in [0, 1).

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

namespace knotlattice {

using Vec3 = Eigen::Vector3d;

class KnotCurve {
 public:
  virtual ~KnotCurve() = default;
  virtual Vec3 position(double s) const = 0;
  // dK/ds
  virtual Vec3 derivative(double s) const = 0;
  virtual std::string name() const = 0;

  Vec3 tangent(double s) const { return derivative(s).normalized(); }
};

// Analytic curve t = 2 pi s with closed-form derivative.
class CircleCurve : public KnotCurve {
 public:
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return "circle"; }
};

// ((R + r cos qt) cos pt, (R + r cos qt) sin pt, r sin qt) with R = 2, r = 1.
class TorusCurve : public KnotCurve {
 public:
  // Throws std::invalid_argument unless p, q >= 1 and gcd(p, q) = 1.
  TorusCurve(int p, int q);
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override;
  int p() const { return p_; }
  int q() const { return q_; }

 private:
  int p_;
  int q_;
};

// (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t): a trefoil not on a torus.
class TrefoilAltCurve : public KnotCurve {
 public:
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return "trefoil-alt"; }
};

// ((2 + cos 2t) cos 3t, (2 + cos 2t) sin 3t, sin 4t)
class FigureEightCurve : public KnotCurve {
 public:
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return "figure-eight"; }
};

// (cos t, sin t, 0.3 sin 3t): a non-planar unknot.
class WobblyCurve : public KnotCurve {
 public:
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return "wobbly"; }
};

// Closed polygon through points given at increasing parameters in [0, 1).
class PolylineCurve : public KnotCurve {
 public:
  PolylineCurve(std::vector<double> params, std::vector<Vec3> points, std::string name = "polyline");
  // Lines "s x y z"; blank lines and lines starting with '#' are skipped.
  static PolylineCurve from_file(const std::string& path);
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return name_; }

 private:
  int segment(double s) const;

  std::vector<double> params_;
  std::vector<Vec3> points_;
  std::string name_;
};

// x -> rotation * x + shift
class TransformedCurve : public KnotCurve {
 public:
  TransformedCurve(std::shared_ptr<const KnotCurve> base, const Eigen::Matrix3d& rotation, const Vec3& shift);
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return base_->name() + "-moved"; }

 private:
  std::shared_ptr<const KnotCurve> base_;
  Eigen::Matrix3d rotation_;
  Vec3 shift_;
};

// s -> 1 - s
class ReversedCurve : public KnotCurve {
 public:
  explicit ReversedCurve(std::shared_ptr<const KnotCurve> base) : base_(std::move(base)) {}
  Vec3 position(double s) const override;
  Vec3 derivative(double s) const override;
  std::string name() const override { return base_->name() + "-reversed"; }

 private:
  std::shared_ptr<const KnotCurve> base_;
};

// Registered names: circle, torus (with p, q), trefoil, trefoil-alt,
// figure-eight, wobbly; anything else is read as a polyline file path.
// Throws std::invalid_argument on an unknown name that is not a file.
std::shared_ptr<const KnotCurve> make_curve(const std::string& name, int p = 2, int q = 3);
std::vector<std::string> curve_presets();

// Root mean square distance from the centroid over `points` samples.
double curve_scale(const KnotCurve& c, int points = 256);

}  // namespace knotlattice
