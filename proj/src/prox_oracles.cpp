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

#include "proxlp/prox_oracles.hpp"

#include <cmath>
#include <optional>

#include "proxlp/circuits.hpp"
#include "proxlp/extended_init.hpp"

namespace proxlp {
namespace {

void count_solve(Context& ctx, const ApproxSolution& sol) {
  ++ctx.stats.solver_calls;
  ctx.stats.ipm_iterations += sol.iterations;
}

// Cleans an approximate Farkas vector y in V (V = W^perp for the primal
// side) into an exact one, or returns a certificate for V.
std::optional<Outcome> clean_farkas(Context& ctx, const SubspaceRep& v,
                                    const Vector& y, const Vector& d,
                                    double m) {
  const double scale = norm_inf(y);
  if (scale == 0.0 || d.dot(y) >= 0.0) return std::nullopt;
  const Vector yn = y / scale;
  const IndexSet j = neg_support(yn, v.tol().zero_tol);
  VectorOrCert r = eliminate_with_proximity(v, yn, j, m);
  if (is_cert(r)) return emit_lifting(ctx, std::get<LiftingCertificate>(r));
  Vector z = std::get<Vector>(r);
  const double zs = norm_inf(z);
  if (zs == 0.0) return std::nullopt;
  z /= zs;
  if (z.minCoeff() < -v.tol().zero_tol) return std::nullopt;
  z = z.cwiseMax(0.0);
  if (d.dot(z) >= -v.tol().zero_tol * norm1(d)) return std::nullopt;
  return Outcome::farkas_primal(z);
}

IndexSet at_most(const Vector& v, double t) {
  IndexSet s;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] <= t) s.push_back(i);
  return s;
}

}  // namespace

double solver_delta(const Context& ctx, double eps, int n, double m) {
  return std::max(kGamma * eps * std::pow(n, -4.5) / (m * m),
                  ctx.delta_floor);
}

Outcome near_feasible(Context& ctx, const SubspaceRep& w, const Vector& d,
                      double m, double eps) {
  ++ctx.stats.near_feasible_calls;
  ctx.stats.eps_requested.push_back(eps);
  const Tolerance& tol = w.tol();
  const int n = w.n();
  if (n == 0 || d.minCoeff() >= 0.0) return Outcome::solution(d);
  const double e = ctx.eps_eff(eps);
  const Vector dw = w.min_norm_point(d);
  const double nd = norm1(dw);
  if (nd <= tol.zero_tol * (1.0 + norm1(d)))
    return Outcome::solution(Vector::Zero(n));
  if (norm1(neg_part(dw)) <= e * nd) return Outcome::solution(dw);
  if (w.dim() == 0) {
    // W + d is the single point d/W.
    return Outcome::farkas_primal(neg_part(dw) / norm_inf(neg_part(dw)));
  }

  const ExtendedSystem ext =
      build_extended(w, dw / nd, Vector::Zero(n), m, e, 1.0, 2.0 * m);
  const ApproxSolution sol =
      solve_extended(ext, solver_delta(ctx, e, n, m), ctx.solver);
  count_solve(ctx, sol);

  const double slack = tol.slack();
  const Vector xh = (sol.primal.x - sol.primal.xl) * nd;
  const bool primal_ok = norm1(neg_part(xh)) <= e * nd * slack &&
                         norm_inf(xh) <= 2.0 * m * nd * slack;
  const Vector sh = sol.dual.s - sol.dual.su;
  const SubspaceRep wp = w.dual();

  if (sol.dual_objective > 0.0) {
    if (auto f = clean_farkas(ctx, wp, sh, dw, m)) return *f;
    if (primal_ok) return Outcome::solution(xh);
  } else {
    if (primal_ok) return Outcome::solution(xh);
    if (auto f = clean_farkas(ctx, wp, sh, dw, m)) return *f;
  }
  throw Error(ErrorKind::kInternalInconsistency,
              "near_feasible: neither a near-feasible point nor a Farkas "
              "vector; dual objective " +
                  std::to_string(sol.dual_objective));
}

Outcome near_optimal(Context& ctx, const SubspaceRep& w, const Vector& d_in,
                     const Vector& c_in, double m, double eps) {
  ++ctx.stats.near_optimal_calls;
  ctx.stats.eps_requested.push_back(eps);
  const Tolerance& tol = w.tol();
  const int n = w.n();
  const Vector d = w.min_norm_point(d_in);
  const Vector c = w.project(c_in);
  const double nd = norm1(d), nc = norm1(c);
  const bool d_zero = nd <= tol.zero_tol * (1.0 + norm1(d_in));
  const bool c_zero = nc <= tol.zero_tol * (1.0 + norm1(c_in));
  if (n == 0 || (d_zero && c_zero))
    return Outcome::solution(Vector::Zero(n), Vector::Zero(n));
  const SubspaceRep wp = w.dual();

  if (d_zero) {
    Outcome r = near_feasible(ctx, wp, c, m, eps);
    if (r.status == Status::kFarkasPrimal)
      return Outcome::farkas_dual(r.farkas);
    if (!r.ok()) return r;
    return Outcome::solution(Vector::Zero(n), r.x);
  }
  if (c_zero) {
    Outcome r = near_feasible(ctx, w, d, m, eps);
    if (!r.ok()) return r;
    return Outcome::solution(r.x, Vector::Zero(n));
  }

  const Outcome pf = near_feasible(ctx, w, d, m, eps / 4);
  if (!pf.ok()) return pf;
  const Outcome df = near_feasible(ctx, wp, c, m, eps / 4);
  if (df.status == Status::kFarkasPrimal)
    return Outcome::farkas_dual(df.farkas);
  if (!df.ok()) return df;

  const double slack = tol.slack();
  double e = eps;
  for (int attempt = 0; attempt < 2; ++attempt, e *= 0.5) {
    if (attempt) ++ctx.stats.retries;
    const double ee = ctx.eps_eff(e);
    const ExtendedSystem ext = build_extended(w, d / nd, c / nc, m, ee);
    const ApproxSolution sol =
        solve_extended(ext, solver_delta(ctx, ee, n, m), ctx.solver);
    count_solve(ctx, sol);
    const Vector xt = (sol.primal.x - sol.primal.xl) * nd;
    const Vector st = (sol.dual.s - sol.dual.su) * nc;
    const bool p_ok = norm1(neg_part(xt)) <= ee * nd * slack;
    const bool d_ok = norm1(neg_part(st)) <= ee * nc * slack;
    if (p_ok && d_ok) return Outcome::solution(xt, st);

    // Case II: a short move towards the preliminary point exists unless
    // M < kappa.
    if (!p_ok) {
      const double reach = std::max(2.0 * m * nd, norm_inf(pf.x));
      const VectorOrCert r =
          hoffman_point(w, xt - pf.x, xt - Vector::Constant(n, reach),
                        xt + neg_part(pf.x), m);
      if (is_cert(r)) return emit_lifting(ctx, std::get<LiftingCertificate>(r));
    }
    if (!d_ok) {
      const double reach = std::max(2.0 * m * nc, norm_inf(df.x));
      const VectorOrCert r =
          hoffman_point(wp, st - df.x, st - Vector::Constant(n, reach),
                        st + neg_part(df.x), m);
      if (is_cert(r)) return emit_lifting(ctx, std::get<LiftingCertificate>(r));
    }
    // Below the precision floor the solver cannot reach e and halving is
    // useless. The callers repair the small negative parts.
    if (ee > e) {
      ++ctx.stats.floor_repairs;
      return Outcome::solution(xt, st);
    }
  }
  throw Error(ErrorKind::kInternalInconsistency,
              "near_optimal: case II produced no certificate");
}

Outcome prox_feas_oracle(Context& ctx, const SubspaceRep& w, const Vector& d,
                         double m, double eps) {
  ++ctx.stats.feas_oracle_calls;
  const int n = w.n();
  if (n == 0 || d.minCoeff() >= 0.0) return Outcome::solution(d);
  const double tau = norm1(neg_part(d));
  const IndexSet keep = at_most(d, 2.0 * m * tau);
  const double eps1 = eps / (2.0 * std::pow(n, 1.5) * m);

  const SubspaceRep wi = w.project_coords(keep);
  Outcome r = near_feasible(ctx, wi, restrict_to(d, keep), m, eps1);
  if (r.status == Status::kFarkasPrimal)
    return Outcome::farkas_primal(scatter(n, keep, r.farkas));
  if (!r.ok()) return r;

  const Vector xp = d + w.lift(keep, r.x - restrict_to(d, keep));
  const VectorOrCert z = hoffman_point(w, xp - d, -d - neg_part(xp),
                                       Vector::Constant(n, kInf), m);
  if (is_cert(z)) return emit_lifting(ctx, std::get<LiftingCertificate>(z));
  return Outcome::solution(d + std::get<Vector>(z));
}

Outcome prox_opt_oracle(Context& ctx, const SubspaceRep& w, const Vector& d,
                        const Vector& c, double m, double eps) {
  ++ctx.stats.opt_oracle_calls;
  const Tolerance& tol = w.tol();
  const int n = w.n();
  if (c.size() && c.minCoeff() < -tol.zero_tol * norm_inf(c))
    throw Error(ErrorKind::kContractViolation,
                "prox_opt_oracle needs c >= 0");
  const IndexSet lam = lambda_set(d, c, tol.zero_tol);
  const double tau = norm1(restrict_to(d, lam));
  if (n == 0 || tau <= tol.zero_tol * norm_inf(d)) {
    Outcome o = Outcome::solution(d, c);
    o.c_tilde = c;
    return o;
  }
  const IndexSet keep = at_most(d, 2.0 * m * tau);
  const double eps1 = eps * eps / (28.0 * m * m * m * n * n * n);

  const SubspaceRep wi = w.project_coords(keep);
  const Vector ci = restrict_to(c, keep);
  Outcome r = near_optimal(ctx, wi, restrict_to(d, keep), ci, m, eps1);
  if (r.status == Status::kFarkasPrimal)
    return Outcome::farkas_primal(scatter(n, keep, r.farkas));
  if (r.status == Status::kFarkasDual)
    throw Error(ErrorKind::kInternalInconsistency,
                "dual Farkas vector although c >= 0");
  if (!r.ok()) return r;

  // Primal: extend, then pull back within the proximity bound.
  const Vector xp = d + w.lift(keep, r.x - restrict_to(d, keep));
  const IndexSet supp_c = support(c, tol.zero_tol);
  Vector up = Vector::Constant(n, kInf);
  for (int i : supp_c) up[i] = xp[i] - d[i];
  const VectorOrCert z = hoffman_point(w, xp - d, -d - neg_part(xp), up, m);
  if (is_cert(z)) return emit_lifting(ctx, std::get<LiftingCertificate>(z));
  const Vector x = d + std::get<Vector>(z);

  // Dual: fix the small negative part of s inside pi_I(W)^perp.
  const SubspaceRep vi = wi.dual();
  const VectorOrCert q =
      hoffman_point(vi, ci - r.s, -r.s, Vector::Constant(ci.size(), kInf), m);
  if (is_cert(q)) return emit_lifting(ctx, std::get<LiftingCertificate>(q));
  const Vector s_bar =
      scatter(n, keep, (r.s + std::get<Vector>(q)).cwiseMax(0.0));

  // Below the floor the dual carries noise of order n eps_floor.
  const double theta =
      std::max(eps / n, n * ctx.eps_floor) * norm1(w.project(c));
  Vector s = s_bar;
  for (int i = 0; i < n; ++i)
    if (s[i] <= theta) s[i] = 0.0;
  Outcome o = Outcome::solution(x, s);
  o.c_tilde = c - s_bar + s;
  return o;
}

}  // namespace proxlp
