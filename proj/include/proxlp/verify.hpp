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

#ifndef PROXLP_VERIFY_HPP_
#define PROXLP_VERIFY_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "proxlp/subspace.hpp"

namespace proxlp {

// Exact arithmetic for ground truth. Doubles convert without rounding.
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major

QVector to_rational(const Vector& v);
QMatrix to_rational(const Matrix& a);
Vector to_double(const QVector& v);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(QMatrix& a);
// Basis of ker(a), one vector per free column.
std::vector<QVector> kernel_basis(const QMatrix& a, int n);

// An exact matrix whose kernel is the space described by `w`, replayed from
// the recorded construction steps starting at the root matrix.
QMatrix exact_matrix(const SubspaceRep& w);

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kOptimal;
  Rational opt;
  QVector x;         // optimal vertex
  QVector y;         // optimal duals (a^t y <= c)
  IndexSet basis;    // basic columns of the optimal vertex
  QVector farkas;    // infeasible: a^t y >= 0, b^t y < 0
  QVector ray;       // unbounded: a x = 0, x >= 0, c^t x < 0
  int pivots = 0;
};

// min c^t x, a x = b, x >= 0 by the two-phase simplex with Bland's rule.
SimplexResult rational_simplex(const QMatrix& a, const QVector& b,
                               const QVector& c);

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& what)
      : Error(ErrorKind::kTooLarge, what) {}
};

constexpr int kKappaGuard = 20;
constexpr int kChiBarGuard = 12;

// Circuit imbalance of ker(a): maximum of max|g|/min|g| over circuits g.
// Taken as 1 when ker(a) = {0}.
Rational brute_kappa(const QMatrix& a, int n);
// Same enumeration without threads.
Rational brute_kappa_serial(const QMatrix& a, int n);
// max over bases B of max |(a_B^{-1} a)_{ij}|.
Rational kappa_via_bases(const QMatrix& a, int n);

// max over bases B of ||a_B^{-1} a||_2.
double brute_chibar(const Matrix& a);

// Exact witnesses for (1/n) chibar <= kappa <= sqrt(chibar^2 - 1).
struct BandReport {
  Rational kappa;
  Rational max_row_sq;  // largest squared row norm of a_B^{-1} a
  Rational max_frob_sq;  // largest squared Frobenius norm of a_B^{-1} a
  bool upper_ok = false;  // kappa <= 1 or max_row_sq >= 1 + kappa^2
  bool lower_ok = false;  // max_frob_sq <= n^2 kappa^2
};
BandReport kappa_chi_band(const QMatrix& a, int n);

// A matrix whose kernel is the row space of a.
QMatrix orthogonal_complement(const QMatrix& a, int n);

struct CertReport {
  bool ok = false;
  std::string violated;  // first failing line, empty when ok
  double measured = 0.0;
};

// ||L_I(p)||_inf > M ||p||_1 for the exact projection of p onto pi_I(W).
CertReport check_certificate(const LiftingCertificate& cert);
// y in W^perp, y >= 0, <d,y> < 0 for the exact cleanup of y on its support.
CertReport check_farkas_primal(const SubspaceRep& w, const Vector& d,
                               const Vector& y);
// Standard form: y' = a^t u >= 0 on the support of y and b^t u < 0.
CertReport check_farkas_primal(const QMatrix& a, const QVector& b,
                               const Vector& y);
// x in W, x >= 0, <c,x> < 0.
CertReport check_farkas_dual(const SubspaceRep& w, const Vector& c,
                             const Vector& x);

}  // namespace proxlp

#endif  // PROXLP_VERIFY_HPP_
