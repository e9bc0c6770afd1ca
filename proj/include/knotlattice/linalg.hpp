#pragma once

// Exact linear algebra over Q and Z for the small systems used here.

#include <vector>

#include "knotlattice/rational.hpp"

namespace knotlattice {

// Reduced row echelon form: each pivot is 1 and its column is zero in every
// other row.  Rows are kept in increasing pivot order.
class RowEchelon {
 public:
  explicit RowEchelon(int columns = 0) : columns_(columns) {}

  // Adds a row (extending with zeros to the column count) and keeps the
  // form reduced.  Returns false if the row was already in the span.
  bool insert(RationalVector row);

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<int> free_columns() const;

  // v minus the unique combination of rows that clears every pivot column.
  RationalVector reduce(RationalVector v) const;
  bool in_span(const RationalVector& v) const { return is_zero(reduce(v)); }

 private:
  int columns_;
  std::vector<RationalVector> rows_;
  std::vector<int> pivots_;
};

RowEchelon row_reduce(const std::vector<RationalVector>& rows, int columns);
int rank(const std::vector<RationalVector>& rows, int columns);

using IntegerVector = std::vector<Integer>;

// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
// rows only, pivots strictly increasing, pivot entries positive and entries
// above a pivot reduced into [0, pivot).
std::vector<IntegerVector> hermite_normal_form(std::vector<IntegerVector> rows, int columns);

// Lattice generated by rational vectors; stored as a common denominator and
// the HNF of the scaled integer generators.
class RationalLattice {
 public:
  RationalLattice() = default;
  RationalLattice(const std::vector<RationalVector>& generators, int columns);

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const Integer& denominator() const { return denominator_; }
  // Basis vectors as rationals (HNF rows divided by the denominator).
  std::vector<RationalVector> basis() const;

  // Exact test.  When `coefficients` is non-null and v is a member, the
  // integer coordinates of v in basis() are written there.
  bool contains(const RationalVector& v, std::vector<Integer>* coefficients = nullptr) const;
  bool in_rational_span(const RationalVector& v) const;

  struct Nearest {
    std::vector<double> point;
    std::vector<double> residual;
    std::vector<Integer> coefficients;
    double weighted_distance = 0;  // sqrt(sum (residual_i / scale_i)^2)
  };
  // Nearest lattice point to a real vector under the diagonal metric given
  // by `scale` (all ones if empty).  Searches the rounded coefficients and
  // their +-1 neighbours in each coordinate.
  Nearest nearest(const std::vector<double>& v, const std::vector<double>& scale = {}) const;

 private:
  int columns_ = 0;
  Integer denominator_ = 1;
  std::vector<IntegerVector> basis_;
  RowEchelon span_;
};

}  // namespace knotlattice
