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

#include "proxlp/extended_init.hpp"

#include <cmath>

namespace proxlp {

ExtendedSystem build_extended(const SubspaceRep& w, const Vector& d,
                              const Vector& c, double m, double eps,
                              double m_p_override, double m_d_override) {
  ExtendedSystem e;
  e.w = w;
  e.d = d;
  e.c = c;
  e.m = m;
  e.eps = eps;
  const int n = w.n();
  const int r = w.codim();
  e.m_p = m_p_override >= 0 ? m_p_override : 2.0 * norm1(c) * m;
  e.m_d = m_d_override >= 0 ? m_d_override : 2.0 * norm1(d) * m;
  e.m_p_hat = e.m_p - eps * norm1(c);
  e.m_d_hat = e.m_d - eps * norm1(d);
  e.box_primal = 2.0 * n * e.m_d;
  e.box_dual = 2.0 * n * e.m_p;

  const Matrix& a = w.normal();
  e.a_hat = Matrix::Zero(r + n, 3 * n);
  e.a_hat.block(0, 0, r, n) = a;
  e.a_hat.block(0, n, r, n) = -a;
  for (int i = 0; i < n; ++i) {
    e.a_hat(r + i, i) = 1.0;
    e.a_hat(r + i, n + i) = -0.5;
    e.a_hat(r + i, 2 * n + i) = 1.0;
  }
  e.b_hat.resize(r + n);
  if (r) e.b_hat.head(r) = a * d;
  e.b_hat.tail(n).setConstant(e.m_d_hat);
  e.c_hat.resize(3 * n);
  e.c_hat.head(n) = c;
  e.c_hat.segment(n, n) = Vector::Constant(n, e.m_p_hat) - c;
  e.c_hat.tail(n).setZero();
  return e;
}

std::pair<PrimalTriple, DualQuad> initial_point(const ExtendedSystem& e) {
  const int n = e.w.n();
  const double td = 2.0 / 3.0 * e.m_d_hat, tp = 2.0 / 3.0 * e.m_p_hat;
  PrimalTriple p;
  p.x = Vector::Constant(n, td) + e.d;
  p.xl = Vector::Constant(n, td);
  p.xu = Vector::Constant(n, td) - e.d;
  DualQuad q;
  q.y = Vector::Zero(e.w.codim());
  q.s = Vector::Constant(n, tp);
  q.sl = Vector::Constant(n, tp) - 0.5 * e.c;
  q.su = Vector::Constant(n, tp) - e.c;
  auto positive = [](const Vector& v) { return (v.array() > 0).all(); };
  if (!positive(p.x) || !positive(p.xl) || !positive(p.xu) ||
      !positive(q.s) || !positive(q.sl) || !positive(q.su))
    throw Error(ErrorKind::kNotInterior,
                "initial point of the extended system is not interior");
  return {p, q};
}

SolverRequest extended_request(const ExtendedSystem& e, double delta) {
  const int n = e.w.n();
  const int r = e.w.codim();
  auto [p, q] = initial_point(e);
  SolverRequest req;
  req.a = e.a_hat;
  req.b = e.b_hat;
  req.c = e.c_hat;
  req.x0.resize(3 * n);
  req.x0 << p.x, p.xl, p.xu;
  req.y0.resize(r + n);
  req.y0 << q.y, -q.su;
  req.s0.resize(3 * n);
  req.s0 << q.s, q.sl, q.su;
  req.delta = delta;
  const double root = std::sqrt(3.0 * n);
  req.rp = root * e.box_primal;
  req.rd = root * e.box_dual;
  return req;
}

ApproxSolution repair_to_subspace(const ExtendedSystem& e,
                                  const SolverResponse& raw) {
  const int n = e.w.n();
  const int r = e.w.codim();
  ApproxSolution out;
  out.iterations = raw.iterations;
  PrimalTriple& p = out.primal;
  DualQuad& q = out.dual;
  p.x = raw.x.head(n);
  p.xl = raw.x.segment(n, n);
  q.y = raw.y.head(r);
  q.s = raw.s.head(n);
  q.sl = raw.s.segment(n, n);
  q.su = raw.s.tail(n);
  const double slack = 1.0 + 1e-7;

  // Primal: rows of the normal form carry a unit entry at basis[i].
  Vector res = Vector::Zero(r);
  if (r) res = e.w.normal() * (p.x - p.xl - e.d);
  out.primal_residual = res.norm();
  if (out.primal_residual > raw.measure.primal_bound * slack + 1e-300)
    throw Error(ErrorKind::kResidualTooLarge,
                "primal residual " + std::to_string(out.primal_residual));
  for (int i = 0; i < r; ++i) {
    const int j = e.w.basis()[i];
    if (res[i] > 0)
      p.x[j] -= res[i];
    else
      p.xl[j] += res[i];
  }
  const double shift_p = std::max(2.0 * kGamma * e.eps * norm1(e.d) / n,
                                  2.0 * norm_inf(res));
  if (shift_p > 0) {
    p.x.array() += shift_p;
    p.xl.array() += shift_p;
  }
  p.x = p.x.cwiseMax(0.0);
  p.xl = p.xl.cwiseMax(0.0);
  p.xu = (Vector::Constant(n, e.m_d) - p.x + 0.5 * p.xl).cwiseMax(0.0);

  // Dual: the same on the complement, whose rows carry unit entries at the
  // nonbasic coordinates.
  const SubspaceRep wp = e.w.dual();
  Vector dres = Vector::Zero(wp.codim());
  if (wp.codim()) dres = wp.normal() * (q.s - q.su - e.c);
  out.dual_residual = dres.norm();
  const double perp_norm = wp.codim() ? wp.normal().norm() : 0.0;
  if (out.dual_residual >
      raw.measure.dual_bound * (1.0 + perp_norm) * slack + 1e-300)
    throw Error(ErrorKind::kResidualTooLarge,
                "dual residual " + std::to_string(out.dual_residual));
  for (int k = 0; k < wp.codim(); ++k) {
    const int j = wp.basis()[k];
    if (dres[k] > 0)
      q.s[j] -= dres[k];
    else
      q.su[j] += dres[k];
  }
  const double shift_d = std::max(2.0 * kGamma * e.eps * norm1(e.c) / n,
                                  2.0 * norm_inf(dres));
  if (shift_d > 0) {
    q.s.array() += shift_d;
    q.su.array() += shift_d;
  }
  q.s = q.s.cwiseMax(0.0);
  q.su = q.su.cwiseMax(0.0);
  q.sl = (Vector::Constant(n, e.m_p) - q.s + 0.5 * q.su).cwiseMax(0.0);

  out.primal_objective = e.c.dot(p.x - p.xl) + e.m_p * p.xl.sum();
  out.dual_objective =
      e.d.dot(e.c) - e.d.dot(q.s - q.su) - e.m_d * q.su.sum();
  out.gap_bound = out.primal_objective - out.dual_objective;
  return out;
}

ApproxSolution solve_extended(const ExtendedSystem& e, double delta,
                              const ApproxSolver& solver) {
  return repair_to_subspace(e, solver.solve(extended_request(e, delta)));
}

}  // namespace proxlp
