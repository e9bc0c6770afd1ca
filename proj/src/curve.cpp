#include "knotlattice/curve.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace knotlattice {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap(double s) {
  s -= std::floor(s);
  return s >= 1.0 ? 0.0 : s;
}

}  // namespace

Vec3 CircleCurve::position(double s) const {
  const double t = kTwoPi * s;
  return {std::cos(t), std::sin(t), 0.0};
}

Vec3 CircleCurve::derivative(double s) const {
  const double t = kTwoPi * s;
  return kTwoPi * Vec3(-std::sin(t), std::cos(t), 0.0);
}

TorusCurve::TorusCurve(int p, int q) : p_(p), q_(q) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    throw std::invalid_argument("torus knot needs p, q >= 1 with gcd(p, q) = 1");
}

Vec3 TorusCurve::position(double s) const {
  const double t = kTwoPi * s;
  const double rho = 2.0 + std::cos(q_ * t);
  return {rho * std::cos(p_ * t), rho * std::sin(p_ * t), std::sin(q_ * t)};
}

Vec3 TorusCurve::derivative(double s) const {
  const double t = kTwoPi * s;
  const double rho = 2.0 + std::cos(q_ * t);
  const double drho = -q_ * std::sin(q_ * t);
  return kTwoPi * Vec3(drho * std::cos(p_ * t) - rho * p_ * std::sin(p_ * t),
                       drho * std::sin(p_ * t) + rho * p_ * std::cos(p_ * t), q_ * std::cos(q_ * t));
}

std::string TorusCurve::name() const {
  return "torus(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
}

Vec3 TrefoilAltCurve::position(double s) const {
  const double t = kTwoPi * s;
  return {std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)};
}

Vec3 TrefoilAltCurve::derivative(double s) const {
  const double t = kTwoPi * s;
  return kTwoPi * Vec3(std::cos(t) + 4 * std::cos(2 * t), -std::sin(t) + 4 * std::sin(2 * t),
                       -3 * std::cos(3 * t));
}

Vec3 FigureEightCurve::position(double s) const {
  const double t = kTwoPi * s;
  const double rho = 2 + std::cos(2 * t);
  return {rho * std::cos(3 * t), rho * std::sin(3 * t), std::sin(4 * t)};
}

Vec3 FigureEightCurve::derivative(double s) const {
  const double t = kTwoPi * s;
  const double rho = 2 + std::cos(2 * t);
  const double drho = -2 * std::sin(2 * t);
  return kTwoPi * Vec3(drho * std::cos(3 * t) - 3 * rho * std::sin(3 * t),
                       drho * std::sin(3 * t) + 3 * rho * std::cos(3 * t), 4 * std::cos(4 * t));
}

Vec3 WobblyCurve::position(double s) const {
  const double t = kTwoPi * s;
  return {std::cos(t), std::sin(t), 0.3 * std::sin(3 * t)};
}

Vec3 WobblyCurve::derivative(double s) const {
  const double t = kTwoPi * s;
  return kTwoPi * Vec3(-std::sin(t), std::cos(t), 0.9 * std::cos(3 * t));
}

PolylineCurve::PolylineCurve(std::vector<double> params, std::vector<Vec3> points, std::string name)
    : params_(std::move(params)), points_(std::move(points)), name_(std::move(name)) {
  if (params_.size() != points_.size() || params_.size() < 3)
    throw std::invalid_argument("polyline needs at least three points with one parameter each");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i] < 0 || params_[i] >= 1) throw std::invalid_argument("polyline parameters must lie in [0, 1)");
    if (i > 0 && params_[i] <= params_[i - 1]) throw std::invalid_argument("polyline parameters must increase");
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    if ((points_[i] - points_[(i + 1) % points_.size()]).norm() == 0)
      throw std::invalid_argument("polyline has a zero-length segment");
}

PolylineCurve PolylineCurve::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open polyline file '" + path + "'");
  std::vector<double> params;
  std::vector<Vec3> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double s, x, y, z;
    if (!(fields >> s >> x >> y >> z))
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 's x y z'");
    params.push_back(s);
    points.emplace_back(x, y, z);
  }
  return PolylineCurve(std::move(params), std::move(points), std::filesystem::path(path).filename().string());
}

int PolylineCurve::segment(double s) const {
  // Segment i runs from params_[i] to params_[i+1]; the last wraps to 1 + params_[0].
  const auto it = std::upper_bound(params_.begin(), params_.end(), s);
  if (it == params_.begin()) return static_cast<int>(params_.size()) - 1;
  return static_cast<int>(it - params_.begin()) - 1;
}

Vec3 PolylineCurve::position(double s) const {
  s = wrap(s);
  const int n = static_cast<int>(params_.size());
  const int i = segment(s);
  const int j = (i + 1) % n;
  double a = params_[i];
  double b = params_[j];
  if (j == 0) b += 1;
  if (s < a) s += 1;
  const double w = (s - a) / (b - a);
  return (1 - w) * points_[i] + w * points_[j];
}

Vec3 PolylineCurve::derivative(double s) const {
  s = wrap(s);
  const int n = static_cast<int>(params_.size());
  const int i = segment(s);
  const int j = (i + 1) % n;
  double length = params_[j] - params_[i];
  if (j == 0) length += 1;
  return (points_[j] - points_[i]) / length;
}

TransformedCurve::TransformedCurve(std::shared_ptr<const KnotCurve> base, const Eigen::Matrix3d& rotation,
                                   const Vec3& shift)
    : base_(std::move(base)), rotation_(rotation), shift_(shift) {}

Vec3 TransformedCurve::position(double s) const { return rotation_ * base_->position(s) + shift_; }

Vec3 TransformedCurve::derivative(double s) const { return rotation_ * base_->derivative(s); }

Vec3 ReversedCurve::position(double s) const { return base_->position(wrap(1.0 - s)); }

Vec3 ReversedCurve::derivative(double s) const { return -base_->derivative(wrap(1.0 - s)); }

std::shared_ptr<const KnotCurve> make_curve(const std::string& name, int p, int q) {
  if (name == "circle") return std::make_shared<CircleCurve>();
  if (name == "torus") return std::make_shared<TorusCurve>(p, q);
  if (name == "trefoil") return std::make_shared<TorusCurve>(2, 3);
  if (name == "trefoil-alt") return std::make_shared<TrefoilAltCurve>();
  if (name == "figure-eight") return std::make_shared<FigureEightCurve>();
  if (name == "wobbly") return std::make_shared<WobblyCurve>();
  if (std::filesystem::is_regular_file(name)) return std::make_shared<PolylineCurve>(PolylineCurve::from_file(name));
  throw std::invalid_argument("unknown curve '" + name + "' (not a preset and not a file)");
}

std::vector<std::string> curve_presets() {
  return {"circle", "torus", "trefoil", "trefoil-alt", "figure-eight", "wobbly"};
}

double curve_scale(const KnotCurve& c, int points) {
  Vec3 centroid = Vec3::Zero();
  for (int i = 0; i < points; ++i) centroid += c.position(static_cast<double>(i) / points);
  centroid /= points;
  double sum = 0;
  for (int i = 0; i < points; ++i) sum += (c.position(static_cast<double>(i) / points) - centroid).squaredNorm();
  return std::sqrt(sum / points);
}

}  // namespace knotlattice
