#pragma once

// Dense Gauss-Jordan over Q: particular solutions and nullspaces for the
// small linear systems behind unit searches and kernel slicing.

#include <optional>
#include <vector>

#include "confalg/rational.hpp"

namespace confalg {

struct QSolveResult {
  std::vector<Rational> particular;              // free variables set to 0
  std::vector<std::vector<Rational>> nullspace;  // basis of homogeneous solutions
};

// Solve A x = b (rows of A paired with entries of b). Empty optional when
// inconsistent.
std::optional<QSolveResult> solve_linear(std::vector<std::vector<Rational>> A,
                                         std::vector<Rational> b);

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> A,
                                             int num_unknowns);

// Incrementally maintained row space over Q in reduced echelon form.
class QRowSpace {
 public:
  explicit QRowSpace(int cols) : cols_(cols) {}

  // Reduces v against the current rows; inserts the remainder if nonzero.
  // Returns true when the row space grew.
  bool add(std::vector<Rational> v);
  // Remainder of v after reduction.
  std::vector<Rational> reduce(std::vector<Rational> v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::vector<int>& pivot_columns() const { return pivots_; }

 private:
  int cols_;
  std::vector<std::vector<Rational>> rows_;  // reduced, pivots normalized to 1
  std::vector<int> pivots_;
};

}  // namespace confalg
