// Copyright 2026 The proxlp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROXLP_NUMERICS_HPP_
#define PROXLP_NUMERICS_HPP_

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxlp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Sorted, duplicate-free list of coordinates.
using IndexSet = std::vector<int>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tolerance {
  double zero_tol = 1e-11;
  double residual_tol = 1e-8;
  // Relative slack applied to every measured bound comparison.
  double slack() const { return 1.0 + 10.0 * residual_tol; }
};

enum class ErrorKind {
  kRankDeficient,
  kInconsistentProjection,
  kNotInSubspace,
  kInfeasibleBounds,
  kNotInterior,
  kResidualTooLarge,
  kIterationLimit,
  kNumericalBreakdown,
  kContractViolation,
  kInternalInconsistency,
  kTooLarge,
  kParseError,
  kRestartLimit,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Reduced row echelon form with identity on the basis columns.
// Row r of `normal` has a 1 in column basis[r].
struct NormalForm {
  IndexSet basis;  // in row order, not sorted
  Matrix normal;
  std::vector<int> kept_rows;  // rows of the input that survived
};

// Gauss-Jordan elimination that pivots only on the columns listed in
// `order`, in that order, with partial pivoting over the rows. Returns the
// transformed matrix with the `rank` pivot rows on top; the rows below are
// zero on every visited column (up to zero_tol).
struct PivotResult {
  Matrix w;
  int rank = 0;
  std::vector<int> pivot_cols;  // pivot_cols[r] has the unit entry of row r
  std::vector<int> row_id;      // original row of each transformed row
};
PivotResult pivot_on(const Matrix& a, const std::vector<int>& order,
                     double zero_tol);

// Gauss-Jordan with partial pivoting; columns are visited in `order`
// (all columns in index order when empty). Dependent rows are dropped.
NormalForm row_reduce(const Matrix& a, double zero_tol,
                      const std::vector<int>& order = {});

// Like row_reduce but throws kRankDeficient when a row has to be dropped.
// All-zero rows are removed first and do not count as deficiency.
NormalForm gaussian_normalize(const Matrix& a, double zero_tol);

// Minimum-norm least-squares solution of a x = b.
Vector least_squares(const Matrix& a, const Vector& b);

// Orthogonal projection of v onto the row space of m.
Vector project_orthogonal(const Matrix& m, const Vector& v);

// Vector helpers.
double norm1(const Vector& v);
double norm_inf(const Vector& v);
Vector neg_part(const Vector& v);  // v^- = max(-v, 0)
Vector pos_part(const Vector& v);
Vector restrict_to(const Vector& v, const IndexSet& idx);
Vector scatter(int n, const IndexSet& idx, const Vector& vals);
Matrix columns(const Matrix& a, const IndexSet& idx);

IndexSet full_set(int n);
IndexSet complement(const IndexSet& s, int n);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
// Positions of the members of `sub` inside `super` (sub must be a subset).
std::vector<int> positions_in(const IndexSet& super, const IndexSet& sub);
// Maps local indices of `local` through `outer`.
IndexSet compose(const IndexSet& outer, const IndexSet& local);

IndexSet support(const Vector& v, double zero_tol);
IndexSet neg_support(const Vector& v, double zero_tol);
IndexSet pos_support(const Vector& v, double zero_tol);

// supp(a^-) cup supp(b^+), each sign test relative to the vector's scale.
IndexSet lambda_set(const Vector& a, const Vector& b, double zero_tol);

}  // namespace proxlp

#endif  // PROXLP_NUMERICS_HPP_
