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

#include "proxlp/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace proxlp {
namespace {

double max_abs(const Matrix& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

NormalForm reduce_nonzero(const Matrix& a, double zero_tol) {
  const double scale = max_abs(a);
  std::vector<int> keep;
  for (int i = 0; i < a.rows(); ++i)
    if (a.row(i).cwiseAbs().maxCoeff() > zero_tol * scale) keep.push_back(i);
  Matrix b(keep.size(), a.cols());
  for (size_t k = 0; k < keep.size(); ++k) b.row(k) = a.row(keep[k]);
  NormalForm nf = row_reduce(b, zero_tol);
  for (auto& k : nf.kept_rows) k = keep[k];
  return nf;
}

}  // namespace

SubspaceRep SubspaceRep::from_matrix(const Matrix& a, const Tolerance& tol) {
  SubspaceRep w;
  w.n_ = static_cast<int>(a.cols());
  w.tol_ = tol;
  w.nf_ = reduce_nonzero(a, tol.zero_tol);
  auto p = std::make_shared<Provenance>();
  p->op = Provenance::Op::kRoot;
  p->root = a;
  w.prov_ = p;
  return w;
}

SubspaceRep SubspaceRep::derived(const Matrix& a, Provenance::Op op,
                                 const IndexSet& idx) const {
  SubspaceRep w;
  w.n_ = static_cast<int>(a.cols());
  w.tol_ = tol_;
  w.nf_ = reduce_nonzero(a, tol_.zero_tol);
  auto p = std::make_shared<Provenance>();
  p->op = op;
  p->index = idx;
  p->parent = prov_;
  w.prov_ = p;
  return w;
}

SubspaceRep SubspaceRep::dual() const {
  const int r = codim();
  const IndexSet nonbasic = complement(
      [&] {
        IndexSet b = nf_.basis;
        std::sort(b.begin(), b.end());
        return b;
      }(),
      n_);
  Matrix perp = Matrix::Zero(nonbasic.size(), n_);
  for (size_t k = 0; k < nonbasic.size(); ++k) {
    const int j = nonbasic[k];
    perp(k, j) = 1.0;
    for (int i = 0; i < r; ++i) perp(k, nf_.basis[i]) = -nf_.normal(i, j);
  }
  SubspaceRep w;
  w.n_ = n_;
  w.tol_ = tol_;
  w.nf_.normal = perp;
  w.nf_.basis = nonbasic;
  w.nf_.kept_rows = full_set(static_cast<int>(nonbasic.size()));
  auto p = std::make_shared<Provenance>();
  p->op = Provenance::Op::kDual;
  p->parent = prov_;
  w.prov_ = p;
  return w;
}

double SubspaceRep::residual(const Vector& v) const {
  if (codim() == 0) return 0.0;
  return (nf_.normal * v).norm();
}

bool SubspaceRep::contains(const Vector& v) const {
  return residual(v) <=
         tol_.residual_tol * (1.0 + norm1(v)) * std::max(1.0, max_abs(normal()));
}

Vector SubspaceRep::project(const Vector& v) const {
  return v - project_orthogonal(nf_.normal, v);
}

Vector SubspaceRep::min_norm_point(const Vector& d) const {
  return project_orthogonal(nf_.normal, d);
}

bool SubspaceRep::affine_contains_zero(const Vector& d) const {
  return norm1(min_norm_point(d)) <= tol_.residual_tol * (1.0 + norm1(d));
}

Vector SubspaceRep::lift(const IndexSet& idx, const Vector& p) const {
  const IndexSet rest = complement(idx, n_);
  Vector z = scatter(n_, idx, p);
  if (codim() == 0) return z;
  const Matrix ni = columns(nf_.normal, idx);
  const Vector rhs = -(ni * p);
  if (!rest.empty()) {
    const Matrix nr = columns(nf_.normal, rest);
    const Vector x = least_squares(nr, rhs);
    for (size_t k = 0; k < rest.size(); ++k) z[rest[k]] = x[k];
  }
  const double res = (nf_.normal * z).norm();
  if (res > tol_.residual_tol * (1.0 + norm1(p)) *
                std::max(1.0, max_abs(normal())))
    throw Error(ErrorKind::kInconsistentProjection,
                "no extension into W, residual " + std::to_string(res));
  return z;
}

Vector SubspaceRep::lift_dual(const IndexSet& idx, const Vector& q) const {
  return dual().lift(idx, q);
}

IndexSet SubspaceRep::closure(const IndexSet& k) const {
  if (k.empty()) return {};
  if (codim() == 0) return k;
  PivotResult pr = pivot_on(nf_.normal, k, tol_.zero_tol);
  const double t = tol_.zero_tol * std::max(1.0, max_abs(pr.w));
  IndexSet out = k;
  for (int j = 0; j < n_; ++j) {
    if (std::binary_search(k.begin(), k.end(), j)) continue;
    bool in_span = true;
    for (int i = pr.rank; i < pr.w.rows(); ++i)
      if (std::abs(pr.w(i, j)) > t) {
        in_span = false;
        break;
      }
    if (in_span) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubspaceRep SubspaceRep::project_coords(const IndexSet& idx) const {
  const IndexSet rest = complement(idx, n_);
  PivotResult pr = pivot_on(nf_.normal, rest, tol_.zero_tol);
  Matrix a(pr.w.rows() - pr.rank, idx.size());
  for (int i = pr.rank; i < pr.w.rows(); ++i)
    for (size_t k = 0; k < idx.size(); ++k)
      a(i - pr.rank, k) = pr.w(i, idx[k]);
  return derived(a, Provenance::Op::kProject, idx);
}

SubspaceRep SubspaceRep::fix_coords(const IndexSet& idx) const {
  return derived(columns(nf_.normal, idx), Provenance::Op::kFix, idx);
}

IndexSet SubspaceRep::loops() const {
  IndexSet out;
  const double t = tol_.zero_tol * std::max(1.0, max_abs(normal()));
  for (int j = 0; j < n_; ++j)
    if (codim() == 0 || nf_.normal.col(j).cwiseAbs().maxCoeff() <= t)
      out.push_back(j);
  return out;
}

double LiftingCertificate::suggested_m() const {
  return std::max(2.0 * ratio, issued_at * issued_at);
}

LiftingCertificate make_certificate(const SubspaceRep& w, const IndexSet& idx,
                                    const Vector& z, double m) {
  LiftingCertificate c;
  c.space = w;
  c.idx = idx;
  c.p = restrict_to(z, idx);
  c.z = z;
  const double p1 = norm1(c.p);
  c.ratio = norm_inf(z) / p1;
  c.ratio_l2 = z.norm() / p1;
  c.issued_at = m;
  return c;
}

std::optional<LiftingCertificate> check_lift_certificate(
    const SubspaceRep& w, const IndexSet& idx, const Vector& p, double m) {
  if (idx.empty() || norm1(p) == 0.0) return std::nullopt;
  const Vector z = w.lift(idx, p);
  // Float lifts at M = kappa land within round-off of the bound; only a
  // clear excess counts.
  if (norm_inf(z) <= m * norm1(p) * (1.0 + kLiftSlack)) return std::nullopt;
  LiftingCertificate c = make_certificate(w, idx, z, m);
  c.p = p;
  return c;
}

}  // namespace proxlp
