#include "knotlattice/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace knotlattice {

bool RowEchelon::insert(RationalVector row) {
  if (static_cast<int>(row.size()) > columns_) throw std::invalid_argument("RowEchelon: row too long");
  row.resize(columns_);
  row = reduce(std::move(row));
  int p = 0;
  while (p < columns_ && sgn(row[p]) == 0) ++p;
  if (p == columns_) return false;
  const Rational lead = row[p];
  for (auto& x : row) x /= lead;
  for (auto& r : rows_) {
    if (sgn(r[p]) == 0) continue;
    const Rational f = r[p];
    for (int c = p; c < columns_; ++c) r[c] -= f * row[c];
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

std::vector<int> RowEchelon::free_columns() const {
  std::vector<int> out;
  std::size_t i = 0;
  for (int c = 0; c < columns_; ++c) {
    if (i < pivots_.size() && pivots_[i] == c) {
      ++i;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

RationalVector RowEchelon::reduce(RationalVector v) const {
  v.resize(std::max<std::size_t>(v.size(), columns_));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int p = pivots_[i];
    if (sgn(v[p]) == 0) continue;
    const Rational f = v[p];
    for (int c = p; c < columns_; ++c)
      if (sgn(rows_[i][c]) != 0) v[c] -= f * rows_[i][c];
  }
  return v;
}

RowEchelon row_reduce(const std::vector<RationalVector>& rows, int columns) {
  RowEchelon e(columns);
  for (const auto& r : rows) e.insert(r);
  return e;
}

int rank(const std::vector<RationalVector>& rows, int columns) {
  return row_reduce(rows, columns).rank();
}

std::vector<IntegerVector> hermite_normal_form(std::vector<IntegerVector> rows, int columns) {
  for (auto& r : rows) r.resize(columns);
  std::size_t r = 0;
  for (int c = 0; c < columns && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][c]) != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (int j = c; j < columns; ++j) rows[i][j] -= q * rows[r][j];
        if (sgn(rows[i][c]) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (r >= rows.size() || sgn(rows[r][c]) == 0) continue;
    if (sgn(rows[r][c]) < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (sgn(q) == 0) continue;
      for (int j = c; j < columns; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

RationalLattice::RationalLattice(const std::vector<RationalVector>& generators, int columns)
    : columns_(columns), span_(columns) {
  for (const auto& g : generators)
    for (const auto& x : g) {
      Integer l;
      mpz_lcm(l.get_mpz_t(), denominator_.get_mpz_t(), x.get_den().get_mpz_t());
      denominator_ = l;
    }
  std::vector<IntegerVector> scaled;
  for (const auto& g : generators) {
    IntegerVector row(columns);
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Rational s = g[c] * denominator_;
      row[c] = s.get_num();
    }
    scaled.push_back(std::move(row));
    span_.insert(g);
  }
  basis_ = hermite_normal_form(std::move(scaled), columns);
}

std::vector<RationalVector> RationalLattice::basis() const {
  std::vector<RationalVector> out;
  for (const auto& b : basis_) {
    RationalVector v(columns_);
    for (int c = 0; c < columns_; ++c) v[c] = Rational(b[c]) / denominator_;
    out.push_back(std::move(v));
  }
  return out;
}

bool RationalLattice::in_rational_span(const RationalVector& v) const { return span_.in_span(v); }

namespace {

int pivot_of(const IntegerVector& row) {
  for (std::size_t c = 0; c < row.size(); ++c)
    if (sgn(row[c]) != 0) return static_cast<int>(c);
  return -1;
}

}  // namespace

bool RationalLattice::contains(const RationalVector& v, std::vector<Integer>* coefficients) const {
  RationalVector w(columns_);
  for (int c = 0; c < columns_ && c < static_cast<int>(v.size()); ++c) w[c] = v[c] * denominator_;
  std::vector<Integer> z;
  for (const auto& b : basis_) {
    const int p = pivot_of(b);
    const Rational q = w[p] / Rational(b[p]);
    if (q.get_den() != 1) return false;
    z.push_back(q.get_num());
    for (int c = p; c < columns_; ++c) w[c] -= q * b[c];
  }
  if (!is_zero(w)) return false;
  if (coefficients) *coefficients = std::move(z);
  return true;
}

RationalLattice::Nearest RationalLattice::nearest(const std::vector<double>& v,
                                                  const std::vector<double>& scale) const {
  const int r = rank();
  std::vector<std::vector<double>> b(r, std::vector<double>(columns_));
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < columns_; ++c)
      b[i][c] = Rational(Rational(basis_[i][c]) / denominator_).get_d();
  // Real coordinates from the pivot equations.
  std::vector<double> w(v.begin(), v.end());
  w.resize(columns_);
  std::vector<double> z(r);
  for (int i = 0; i < r; ++i) {
    const int p = pivot_of(basis_[i]);
    z[i] = w[p] / b[i][p];
    for (int c = 0; c < columns_; ++c) w[c] -= z[i] * b[i][c];
  }
  auto weight = [&](int c) { return scale.empty() || scale[c] <= 0 ? 1.0 : scale[c]; };

  Nearest best;
  best.weighted_distance = std::numeric_limits<double>::infinity();
  std::vector<int> offset(r, -1);
  if (r > 8) throw std::invalid_argument("RationalLattice::nearest: rank too large");
  while (true) {
    std::vector<Integer> coeff(r);
    std::vector<double> point(columns_, 0.0);
    for (int i = 0; i < r; ++i) {
      const double zi = std::round(z[i]) + offset[i];
      coeff[i] = Integer(static_cast<long>(zi));
      for (int c = 0; c < columns_; ++c) point[c] += zi * b[i][c];
    }
    double dist = 0;
    std::vector<double> residual(columns_);
    for (int c = 0; c < columns_; ++c) {
      residual[c] = (c < static_cast<int>(v.size()) ? v[c] : 0.0) - point[c];
      dist += (residual[c] / weight(c)) * (residual[c] / weight(c));
    }
    dist = std::sqrt(dist);
    if (dist < best.weighted_distance) {
      best = {std::move(point), std::move(residual), std::move(coeff), dist};
    }
    int i = 0;
    while (i < r && offset[i] == 1) offset[i++] = -1;
    if (i == r) break;
    ++offset[i];
  }
  return best;
}

}  // namespace knotlattice
