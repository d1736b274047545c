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

#include "proxlp/optimization.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "proxlp/circuits.hpp"
#include "proxlp/feasibility.hpp"
#include "proxlp/prox_oracles.hpp"

namespace proxlp {
namespace {

// `ref` is the scale of c at the top level; below it c counts as zero.
Outcome inner_rec(Context& ctx, const SubspaceRep& w, const Vector& d,
                  Vector c, double m, double eps, double ref, int depth) {
  ctx.stats.max_inner_depth = std::max(ctx.stats.max_inner_depth, depth + 1);
  const Tolerance& tol = w.tol();
  const int n = w.n();
  if (n == 0) return Outcome::solution(Vector::Zero(0), Vector::Zero(0));

  // Sign tests below are relative to the top-level scale.
  const double snap = tol.zero_tol * ref;
  for (int i = 0; i < n; ++i)
    if (std::abs(c[i]) <= snap) c[i] = 0.0;
  const Vector cw = w.project(c);
  const double lam = norm1(restrict_to(c, lambda_set(c, d, tol.zero_tol)));
  if (lam > 0 &&
      lam >= std::max(m * norm1(cw), norm_inf(c) / (4.0 * m * m * n)))
    c = cw;
  if (norm1(c) <= tol.zero_tol * ref)
    return Outcome::solution(d, Vector::Zero(n));

  // The oracle runs on the dual orientation: s in W^perp + c is its primal.
  const SubspaceRep wp = w.dual();
  Outcome r = prox_opt_oracle(ctx, wp, c, d, m, eps);
  if (r.status == Status::kFarkasPrimal) return Outcome::farkas_dual(r.farkas);
  if (r.status == Status::kFarkasDual) return Outcome::farkas_primal(r.farkas);
  if (!r.ok()) return r;
  Vector s = r.x;
  for (int i = 0; i < n; ++i)
    if (std::abs(s[i]) <= snap) s[i] = 0.0;
  const Vector x = r.s;
  const Vector shift = d - r.c_tilde;

  const double thr = 16.0 * n * n * n * m * m * m *
                     norm1(restrict_to(s, lambda_set(s, x, tol.zero_tol)));
  IndexSet small, big;
  for (int i = 0; i < n; ++i) (s[i] <= thr ? small : big).push_back(i);
  if (small.empty()) return Outcome::solution(x + shift, s);
  if (big.empty())
    throw Error(ErrorKind::kInternalInconsistency,
                "inner loop: no coordinate left to fix");

  Outcome ch = inner_rec(ctx, w.fix_coords(small), restrict_to(x, small),
                         restrict_to(s, small), m, eps, ref, depth + 1);
  if (ch.status == Status::kFarkasPrimal)
    throw Error(ErrorKind::kInternalInconsistency,
                "inner loop: primal Farkas vector in a recursive call");
  if (ch.status == Status::kFarkasDual)
    return Outcome::farkas_dual(scatter(n, small, ch.farkas));
  if (!ch.ok()) return ch;

  const Vector p = ch.s - restrict_to(s, small);
  Vector lift = Vector::Zero(n);
  if (norm1(p) > 0.0) {
    lift = w.lift_dual(small, p);
    if (norm_inf(lift) > m * norm1(p) * (1.0 + kLiftSlack)) {
      LiftingCertificate cert = make_certificate(wp, small, lift, m);
      cert.p = p;
      return emit_lifting(ctx, std::move(cert));
    }
  }
  Vector xt = scatter(n, small, ch.x);
  for (int j : big) xt[j] = x[j];
  return Outcome::solution(xt + shift, s + lift);
}

// x supported on `cols` with x - d in W, by least squares on those columns.
std::optional<Vector> particular_on(const SubspaceRep& w, const IndexSet& cols,
                                    const Vector& d) {
  if (w.codim() == 0) return restrict_to(d, cols);
  const Matrix& a = w.normal();
  const Vector rhs = a * d;
  Vector xb = Vector::Zero(cols.size());
  Vector res = -rhs;
  if (!cols.empty()) {
    const Matrix ac = columns(a, cols);
    xb = least_squares(ac, rhs);
    res = ac * xb - rhs;
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (res.norm() > w.tol().residual_tol * (1.0 + rhs.norm()) * scale)
    return std::nullopt;
  return xb;
}

// Nonnegative x supported on `cols` with x - d in W; nullopt if infeasible.
Outcome feasible_on(Context& ctx, const SubspaceRep& w, const IndexSet& cols,
                    const Vector& d, double m) {
  const std::optional<Vector> xb = particular_on(w, cols, d);
  if (!xb) return Outcome::farkas_primal(Vector());
  if (cols.empty()) return Outcome::solution(Vector::Zero(w.n()));
  Outcome r = solve_feasibility(ctx, w.fix_coords(cols), *xb, m);
  if (!r.ok()) return r;
  return Outcome::solution(scatter(w.n(), cols, r.x));
}

bool contains_sorted(const IndexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

}  // namespace

Outcome inner_loop(Context& ctx, const SubspaceRep& w, const Vector& d,
                   const Vector& c, double m) {
  const Tolerance& tol = w.tol();
  const int n = w.n();
  if (n && d.minCoeff() < 0.0)
    throw Error(ErrorKind::kContractViolation, "inner_loop needs d >= 0");
  const double eps = 1.0 / (32.0 * std::pow(m, 4) * std::pow(n, 4));
  const double ref = std::max(norm1(c), 1e-300);
  Outcome r = inner_rec(ctx, w, d, c, m, eps, ref, 0);
  if (!r.ok()) return r;

  // Zero x on Lambda(x, s) and s on its numerical zeros; the change of x
  // moves into d_tilde.
  const Vector& x = r.x;
  Vector s = r.s;
  const double st = tol.zero_tol * norm_inf(s);
  for (int i = 0; i < n; ++i)
    if (std::abs(s[i]) <= st) s[i] = 0.0;
  Vector xt = x;
  for (int i : lambda_set(x, s, tol.zero_tol)) xt[i] = 0.0;
  xt = xt.cwiseMax(0.0);
  Outcome o = Outcome::solution(xt, s.cwiseMax(0.0));
  o.d_tilde = d - x + xt;
  PerturbationRecord rec;
  rec.lhs = norm1(o.d_tilde - d);
  rec.rhs = norm_inf(xt) / (4.0 * n * n * m * m);
  ctx.stats.perturbations.push_back(rec);
  return o;
}

OptResult solve_optimization(Context& ctx, const SubspaceRep& w0,
                             const Vector& d0, const Vector& c0, double m) {
  const Tolerance& tol = w0.tol();
  const int n0 = w0.n();
  OptResult res;
  SubspaceRep w = w0;
  Vector d = d0;
  Vector c = w0.project(c0);
  // A constant objective on W + d leaves only rounding noise here.
  if (norm1(c) <= tol.zero_tol * norm1(c0)) c.setZero();
  IndexSet live = full_set(n0);
  IndexSet basic, nonbasic;
  int iterations = 0;

  while (!live.empty() && !w.affine_contains_zero(d)) {
    if (iterations >= n0)
      throw Error(ErrorKind::kInternalInconsistency,
                  "outer loop does not terminate");
    ++iterations;
    ctx.stats.outer_iterations =
        std::max(ctx.stats.outer_iterations, iterations);
    Outcome r = inner_loop(ctx, w, d, c, m);
    if (!r.ok()) {
      res.outcome = r;
      return res;
    }
    const int n = w.n();
    const double t = norm_inf(r.x);
    OuterRecord rec;
    rec.live = live;
    rec.w = w;
    rec.d = d;
    rec.c = c;
    rec.x_tilde = r.x;
    rec.s_tilde = r.s;
    rec.d_tilde = r.d_tilde;
    rec.x_hat = r.x + d - r.d_tilde;
    IndexSet small;
    for (int i = 0; i < n; ++i) {
      const double v = r.x[i];
      // The maximum counts as large also when n = 1.
      if (v > t / n || (t > 0 && v == t))
        rec.large.push_back(i);
      else if (v > t / (3.0 * n * n * m))
        rec.medium.push_back(i);
      else
        small.push_back(i);
    }
    if (rec.large.empty())
      throw Error(ErrorKind::kInternalInconsistency,
                  "outer loop: perturbed optimum is zero");
    const IndexSet cl = w.closure(rec.large);
    rec.small_closed = set_intersection(small, cl);
    rec.small_free = set_difference(small, cl);
    basic = set_union(basic,
                      compose(live, set_union(rec.large, rec.medium)));
    nonbasic = set_union(nonbasic, compose(live, rec.small_closed));

    const IndexSet kept = set_union(set_union(rec.large, rec.medium),
                                    rec.small_free);
    if (!rec.small_free.empty())
      rec.w_next = w.fix_coords(kept).project_coords(
          positions_in(kept, rec.small_free));
    const SubspaceRep next = rec.w_next;
    const IndexSet sf = rec.small_free;
    const Vector s_next = restrict_to(r.s, sf);
    res.history.push_back(std::move(rec));
    w = next;
    d = restrict_to(d, sf);
    c = s_next;
    live = compose(live, sf);
  }

  if (!live.empty()) {
    const IndexSet sc = support(c, tol.zero_tol);
    const IndexSet glob = compose(live, sc);
    nonbasic = set_union(nonbasic, glob);
    basic = set_union(basic, set_difference(live, glob));
  }
  res.basic = basic;
  res.nonbasic = nonbasic;

  Outcome px = feasible_on(ctx, w0, basic, d0, m);
  if (px.status == Status::kLifting) {
    res.outcome = px;
    return res;
  }
  if (px.status == Status::kFarkasPrimal) {
    res.outcome = certificate_backtrack(ctx, res.history, nonbasic, m);
    return res;
  }
  const SubspaceRep w0p = w0.dual();
  Outcome ps = feasible_on(ctx, w0p, nonbasic, c0, m);
  if (ps.status == Status::kLifting) {
    res.outcome = ps;
    return res;
  }
  if (!ps.ok())
    throw Error(ErrorKind::kInternalInconsistency,
                "dual solution on the nonbasic set not found");
  res.outcome = Outcome::solution(px.x, ps.x);
  return res;
}

Outcome certificate_backtrack(Context& ctx,
                              const std::vector<OuterRecord>& history,
                              const IndexSet& nonbasic, double m) {
  if (history.empty())
    throw Error(ErrorKind::kInternalInconsistency,
                "no outer iteration to pull back through");
  Vector zeta = Vector::Zero(history.back().small_free.size());
  for (int t = static_cast<int>(history.size()) - 1; t >= 0; --t) {
    const OuterRecord& r = history[t];
    const IndexSet& sf = r.small_free;
    const Vector xs = restrict_to(r.x_hat, sf);
    Vector y = Vector::Zero(sf.size());
    if (!sf.empty()) {
      Vector up = Vector::Constant(sf.size(), kInf);
      const IndexSet glob = compose(r.live, sf);
      for (size_t k = 0; k < sf.size(); ++k)
        if (contains_sorted(nonbasic, glob[k])) up[k] = -xs[k];
      const VectorOrCert h = hoffman_point(r.w_next, zeta - xs, -xs, up, m);
      if (is_cert(h)) return emit_lifting(ctx, std::get<LiftingCertificate>(h));
      y = std::get<Vector>(h);
    }

    auto values = [&](const IndexSet& idx) {
      Vector p = Vector::Zero(idx.size());
      const std::vector<int> pf = positions_in(idx, sf);
      for (size_t k = 0; k < sf.size(); ++k) p[pf[k]] = y[k];
      const std::vector<int> pc = positions_in(idx, r.small_closed);
      for (size_t k = 0; k < r.small_closed.size(); ++k)
        p[pc[k]] = -r.x_hat[r.small_closed[k]];
      return p;
    };
    IndexSet idx = set_union(sf, set_union(r.small_closed, r.medium));
    Vector p = values(idx);
    Vector v = Vector::Zero(r.w.n());
    if (norm1(p) > 0.0) {
      try {
        v = r.w.lift(idx, p);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInconsistentProjection) throw;
        // Medium coordinates cannot stay pinned; let them move.
        idx = set_union(sf, r.small_closed);
        p = values(idx);
        v = r.w.lift(idx, p);
      }
      if (norm_inf(v) > m * norm1(p) * (1.0 + kLiftSlack)) {
        LiftingCertificate cert = make_certificate(r.w, idx, v, m);
        cert.p = p;
        return emit_lifting(ctx, std::move(cert));
      }
    }
    zeta = r.x_hat + v;
  }
  throw Error(ErrorKind::kInternalInconsistency,
              "backtracking reached the root without a certificate");
}

}  // namespace proxlp
