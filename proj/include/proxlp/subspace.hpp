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

#ifndef PROXLP_SUBSPACE_HPP_
#define PROXLP_SUBSPACE_HPP_

#include <memory>
#include <optional>

#include "proxlp/numerics.hpp"

namespace proxlp {

// How a subspace was derived from a root kernel ker(A). Lets the exact
// checker rebuild the same subspace in rational arithmetic.
struct Provenance {
  enum class Op { kRoot, kProject, kFix, kDual };
  Op op = Op::kRoot;
  IndexSet index;  // coordinates of the parent kept by kProject / kFix
  std::shared_ptr<const Provenance> parent;
  Matrix root;  // only for kRoot
};

// W = ker(N) for a matrix N in normal form (identity on basis columns).
// Immutable.
class SubspaceRep {
 public:
  SubspaceRep() = default;

  // Builds ker(a). Dependent rows are dropped.
  static SubspaceRep from_matrix(const Matrix& a, const Tolerance& tol = {});

  int n() const { return n_; }
  // dim of the orthogonal complement.
  int codim() const { return static_cast<int>(nf_.basis.size()); }
  int dim() const { return n_ - codim(); }
  const Matrix& normal() const { return nf_.normal; }
  const IndexSet& basis() const { return nf_.basis; }
  const Tolerance& tol() const { return tol_; }
  const std::shared_ptr<const Provenance>& provenance() const { return prov_; }

  // Orthogonal complement, as a kernel of (-T^t | I).
  SubspaceRep dual() const;

  bool contains(const Vector& v) const;
  double residual(const Vector& v) const;
  // Orthogonal projection onto W.
  Vector project(const Vector& v) const;
  // d/W: the minimum-norm element of W + d.
  Vector min_norm_point(const Vector& d) const;
  // True when d lies in W at the d-in-W test threshold.
  bool affine_contains_zero(const Vector& d) const;

  Vector lift(const IndexSet& idx, const Vector& p) const;
  Vector lift_dual(const IndexSet& idx, const Vector& q) const;
  IndexSet closure(const IndexSet& k) const;
  SubspaceRep project_coords(const IndexSet& idx) const;
  SubspaceRep fix_coords(const IndexSet& idx) const;
  // Coordinates i with e_i in W.
  IndexSet loops() const;

 private:
  SubspaceRep derived(const Matrix& a, Provenance::Op op,
                      const IndexSet& idx) const;

  int n_ = 0;
  NormalForm nf_;
  Tolerance tol_;
  std::shared_ptr<const Provenance> prov_;
};

// (I, p) with ||L_I(p)||_inf > M ||p||_1, a proof that M < kappa of `space`.
struct LiftingCertificate {
  SubspaceRep space;
  IndexSet idx;
  Vector p;
  Vector z;  // the lift, on all coordinates of `space`
  double ratio = 0.0;     // ||z||_inf / ||p||_1
  double ratio_l2 = 0.0;  // ||z||_2 / ||p||_1
  double issued_at = 2.0;  // value of M that was refuted

  double suggested_m() const;
};

// Relative margin by which a lift must exceed M ||p||_1 to be reported.
constexpr double kLiftSlack = 1e-9;

std::optional<LiftingCertificate> check_lift_certificate(
    const SubspaceRep& w, const IndexSet& idx, const Vector& p, double m);

// Builds the certificate record for a known lift z without re-lifting.
LiftingCertificate make_certificate(const SubspaceRep& w, const IndexSet& idx,
                                    const Vector& z, double m);

}  // namespace proxlp

#endif  // PROXLP_SUBSPACE_HPP_
