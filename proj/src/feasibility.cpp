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

#include "proxlp/feasibility.hpp"

#include <cmath>

#include "proxlp/prox_oracles.hpp"

namespace proxlp {
namespace {

Vector snap_nonneg(const Vector& x, double zero_tol) {
  const double t = zero_tol * std::max(1.0, norm_inf(x));
  Vector y = x;
  for (int i = 0; i < y.size(); ++i)
    if (y[i] < 0 && y[i] >= -t) y[i] = 0.0;
  return y;
}

Outcome feasibility_rec(Context& ctx, const SubspaceRep& w, Vector d, double m,
                        int depth);

// Strips loops (e_i in W): those coordinates are set to d_i^+ and the rest
// is solved on pi_rest(W).
Outcome strip_loops(Context& ctx, const SubspaceRep& w, const Vector& d,
                    double m, int depth) {
  const int n = w.n();
  const IndexSet loops = w.codim() ? w.loops() : IndexSet{};
  if (loops.empty()) return feasibility_rec(ctx, w, d, m, depth);
  const IndexSet rest = complement(loops, n);
  Vector x = Vector::Zero(n);
  for (int i : loops) x[i] = std::max(d[i], 0.0);
  if (rest.empty()) return Outcome::solution(x);
  Outcome r = feasibility_rec(ctx, w.project_coords(rest),
                              restrict_to(d, rest), m, depth);
  if (r.status == Status::kFarkasPrimal)
    return Outcome::farkas_primal(scatter(n, rest, r.farkas));
  if (!r.ok()) return r;
  for (size_t k = 0; k < rest.size(); ++k) x[rest[k]] = r.x[k];
  return Outcome::solution(x);
}

Outcome feasibility_rec(Context& ctx, const SubspaceRep& w, Vector d, double m,
                        int depth) {
  const Tolerance& tol = w.tol();
  const int n = w.n();
  if (n == 0) return Outcome::solution(Vector::Zero(0));

  const Vector dw = w.min_norm_point(d);
  const double dneg = norm1(neg_part(d));
  if (dneg > 0 &&
      dneg >= std::max(m * norm1(dw), norm_inf(d) / (4.0 * m * m * n)))
    d = dw;
  if (norm_inf(neg_part(d)) <= tol.zero_tol * norm_inf(d))
    return Outcome::solution(d.cwiseMax(0.0));

  ctx.stats.max_feas_depth = std::max(ctx.stats.max_feas_depth, depth + 1);
  const double eps = 1.0 / std::pow(2.0 * m * n, 4);
  Outcome r = prox_feas_oracle(ctx, w, d, m, eps);
  if (!r.ok()) return r;
  const Vector x = r.x;
  const double xneg = norm1(neg_part(x));
  if (norm_inf(neg_part(x)) <= tol.zero_tol * norm_inf(x))
    return Outcome::solution(x.cwiseMax(0.0));

  const double big = 16.0 * n * n * m * m * m * xneg;
  IndexSet k;
  for (int i = 0; i < n; ++i)
    if (x[i] >= big) k.push_back(i);
  if (k.empty())
    throw Error(ErrorKind::kInternalInconsistency,
                "feasibility: no large coordinate");
  const IndexSet cl = w.closure(k);
  const IndexSet j = set_difference(cl, k);
  const IndexSet in = complement(cl, n);

  Vector child = Vector::Zero(0);
  if (!in.empty()) {
    Outcome c = strip_loops(ctx, w.project_coords(in), restrict_to(x, in), m,
                            depth + 1);
    if (c.status == Status::kFarkasPrimal)
      return Outcome::farkas_primal(scatter(n, in, c.farkas));
    if (!c.ok()) return c;
    child = c.x;
  }

  const IndexSet ij = set_union(in, j);
  if (ij.empty()) return Outcome::solution(snap_nonneg(x, tol.zero_tol));
  Vector p(ij.size());
  const std::vector<int> pos_i = positions_in(ij, in);
  const std::vector<int> pos_j = positions_in(ij, j);
  for (size_t t = 0; t < in.size(); ++t)
    p[pos_i[t]] = child[t] - x[in[t]];
  for (size_t t = 0; t < j.size(); ++t)
    p[pos_j[t]] = std::max(-x[j[t]], 0.0);
  if (norm1(p) == 0.0) return Outcome::solution(snap_nonneg(x, tol.zero_tol));
  const Vector lift = w.lift(ij, p);
  if (norm_inf(lift) > m * norm1(p) * (1.0 + kLiftSlack)) {
    LiftingCertificate cert = make_certificate(w, ij, lift, m);
    cert.p = p;
    return emit_lifting(ctx, std::move(cert));
  }
  return Outcome::solution(snap_nonneg(x + lift, tol.zero_tol));
}

}  // namespace

Outcome solve_feasibility(Context& ctx, const SubspaceRep& w, const Vector& d,
                          double m) {
  return strip_loops(ctx, w, d, m, 0);
}

bool verify_feas_lp(const SubspaceRep& w, const Vector& d, double m,
                    const Vector& x) {
  const Tolerance& tol = w.tol();
  if (x.size() != d.size() || x.size() != w.n()) return false;
  if (x.size() == 0) return true;
  const double scale = std::max(1.0, norm_inf(d));
  if (!w.contains(x - d)) return false;
  if (x.minCoeff() < -tol.residual_tol * scale) return false;
  const double bound = 16.0 * m * m * w.n() * norm1(neg_part(d));
  return norm_inf(x - d) <= bound * tol.slack() + tol.residual_tol * scale;
}

bool verify_farkas_primal(const SubspaceRep& w, const Vector& d,
                          const Vector& y) {
  const Tolerance& tol = w.tol();
  const double s = norm_inf(y);
  if (y.size() != w.n() || s == 0.0) return false;
  const Vector yn = y / s;
  if (yn.minCoeff() < -tol.zero_tol) return false;
  if (!w.dual().contains(yn)) return false;
  return d.dot(yn) < -tol.zero_tol * std::max(1.0, norm1(d));
}

}  // namespace proxlp
