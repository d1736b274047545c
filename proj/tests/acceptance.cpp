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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check compares against an exact rational oracle or
// re-measures a bound from scratch.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "proxlp/circuits.hpp"
#include "proxlp/driver.hpp"
#include "proxlp/extended_init.hpp"
#include "proxlp/feasibility.hpp"
#include "proxlp/generators.hpp"
#include "proxlp/verify.hpp"

namespace {

using namespace proxlp;

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};
std::vector<Line> lines;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  lines.push_back({id, name, pass, detail});
  std::printf("[%s] %2d %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

// Run-wide tallies shared by criteria 6, 8 and 9.
struct Tally {
  long certs = 0, bad_certs = 0;
  long perturbations = 0, bad_perturbations = 0;
  double worst_perturbation = 0.0;
  long structural = 0, bad_structural = 0;
  std::string first_structural;

  void absorb(const SolveReport& r, int rows) {
    for (const auto& c : r.stats.certificates) {
      ++certs;
      if (!check_certificate(c).ok) ++bad_certs;
    }
    bad_certs += r.discarded_certificates;
    for (const auto& p : r.stats.perturbations) {
      ++perturbations;
      const double q = p.rhs > 0 ? p.lhs / p.rhs : (p.lhs > 0 ? kInf : 0.0);
      worst_perturbation = std::max(worst_perturbation, q);
      if (p.lhs > p.rhs * (1.0 + 1e-9) + 1e-300) ++bad_perturbations;
    }
    ++structural;
    if (r.stats.max_feas_depth > rows || r.stats.outer_iterations > rows) {
      if (!bad_structural++)
        first_structural = "depth " + std::to_string(r.stats.max_feas_depth) +
                           ", outer " +
                           std::to_string(r.stats.outer_iterations) +
                           " with m=" + std::to_string(rows);
    }
  }
} tally;

double kappa_of(const Instance& inst) {
  return std::max(2.0, brute_kappa(inst.a_q, inst.n()).get_d()) *
         (1.0 + 1e-9);
}

// Random integer instance in the corpus range; b and c are planted half the
// time so that enough instances are feasible on both sides.
Instance corpus_instance(Rng& rng) {
  std::uniform_int_distribution<int> mdist(1, 6), ndist(2, 12), e(-3, 3),
      nn(0, 3);
  std::bernoulli_distribution coin(0.5), sparse(0.4), plant(0.75);
  const int m = mdist(rng), n = ndist(rng);
  const Matrix a = random_int_matrix(m, n, 3, rng);
  Vector b(m), c(n);
  if (plant(rng)) {
    Vector x0 = Vector::Zero(n);
    for (int j = 0; j < n; ++j)
      if (sparse(rng)) x0[j] = nn(rng);
    b = a * x0;
  } else {
    for (int i = 0; i < m; ++i) b[i] = e(rng);
  }
  if (coin(rng)) {
    Vector y0(m), s0(n);
    for (int i = 0; i < m; ++i) y0[i] = e(rng);
    for (int j = 0; j < n; ++j) s0[j] = sparse(rng) ? nn(rng) : 0;
    c = a.transpose() * y0 + s0;
  } else {
    for (int j = 0; j < n; ++j) c[j] = e(rng);
  }
  return make_instance(a, b, &c, "corpus");
}

bool objective_matches(double got, const Rational& opt) {
  const double o = opt.get_d();
  return std::abs(got - o) <= 1e-7 * (1.0 + std::abs(o));
}

// Criteria 1, 2 and 8 on one corpus.
void corpus_criteria() {
  Rng rng(20261017);
  int opt_n = 0, opt_ok = 0, feas_n = 0, feas_ok = 0, inf_n = 0, inf_ok = 0;
  std::string opt_fail, feas_fail;
  int generated = 0;
  while (opt_n < 500 || feas_n < 500 || inf_n < 100) {
    if (++generated > 20000) break;
    const Instance inst = corpus_instance(rng);
    const SimplexResult ex = rational_simplex(inst.a_q, inst.b_q, inst.c_q);
    const double m = kappa_of(inst);
    RunFlags f;
    f.m0 = m;
    f.max_restarts = 0;
    const bool infeasible = ex.status == SimplexStatus::kInfeasible;

    if ((!infeasible && feas_n < 500) || (infeasible && inf_n < 100)) {
      f.mode = "feas";
      const SolveReport r = run(inst, f);
      tally.absorb(r, inst.m());
      bool ok = false;
      if (!infeasible) {
        ++feas_n;
        const SubspaceRep w = SubspaceRep::from_matrix(inst.a);
        ok = r.outcome == "Feasible" && verify_feas_lp(w, inst.d, m, r.x);
        feas_ok += ok;
      } else {
        ++inf_n;
        if (r.outcome == "FarkasPrimal") {
          if (r.farkas_rows.size()) {
            // a^t u = 0 and b^t u < 0, exactly
            const QVector u = to_rational(r.farkas_rows);
            Rational bu = 0;
            bool zero = true;
            for (int j = 0; j < inst.n(); ++j) {
              Rational col = 0;
              for (int i = 0; i < inst.m(); ++i) col += inst.a_q[i][j] * u[i];
              zero = zero && col == 0;
            }
            for (int i = 0; i < inst.m(); ++i) bu += inst.b_q[i] * u[i];
            ok = zero && bu < 0;
          } else {
            ok = check_farkas_primal(inst.a_q, inst.b_q, r.farkas).ok;
          }
        }
        inf_ok += ok;
        if (!ok) ++tally.bad_certs;
      }
      if (!ok && feas_fail.empty())
        feas_fail = " first failure: " + r.outcome + " on " +
                    std::to_string(inst.m()) + "x" + std::to_string(inst.n());
    }

    if (ex.status == SimplexStatus::kOptimal && opt_n < 500) {
      ++opt_n;
      f.mode = "opt";
      const SolveReport r = run(inst, f);
      tally.absorb(r, inst.m());
      bool ok = r.outcome == "Optimal" && objective_matches(r.objective, ex.opt);
      if (ok) {
        const SubspaceRep w = SubspaceRep::from_matrix(inst.a);
        const double scale =
            std::max(1.0, norm_inf(r.x)) * std::max(1.0, norm_inf(r.s));
        const double pres = (inst.a * r.x - inst.b).norm();
        const double dres = w.project(r.s - inst.c).norm();
        ok = r.x.minCoeff() >= 0 && r.s.minCoeff() >= 0 &&
             r.x.dot(r.s) <= 1e-8 * scale &&
             pres <= 1e-8 * (1.0 + inst.b.norm()) &&
             dres <= 1e-8 * (1.0 + inst.c.norm());
      }
      opt_ok += ok;
      if (!ok && opt_fail.empty()) {
        std::ostringstream o;
        o << " first failure: " << r.outcome << " obj " << r.objective
          << " vs " << ex.opt.get_d() << " on " << inst.m() << "x" << inst.n();
        if (!r.failure_messages.empty()) o << " (" << r.failure_messages[0] << ")";
        opt_fail = o.str();
      }
    }
  }
  report(1, "exactness vs rational simplex", opt_n >= 500 && opt_ok == opt_n,
         std::to_string(opt_ok) + "/" + std::to_string(opt_n) +
             " optimal instances agree" + opt_fail);
  report(2, "feasibility exactness",
         feas_n >= 500 && feas_ok == feas_n && inf_n > 0 && inf_ok == inf_n,
         std::to_string(feas_ok) + "/" + std::to_string(feas_n) +
             " feasible verified, " + std::to_string(inf_ok) + "/" +
             std::to_string(inf_n) + " infeasible with exact Farkas" +
             feas_fail);
}

void tu_criterion() {
  Rng rng(7);
  int runs = 0, ok = 0, restarts = 0;
  std::string fail;
  for (int arcs = 4; arcs <= 30; ++arcs)
    for (int k = 0; k < 4; ++k) {
      const int nodes = std::max(3, arcs / 2 + 1);
      const Instance inst = tu_network_instance(nodes, arcs, rng);
      RunFlags f;
      f.mode = "opt";
      f.verify = true;
      const SolveReport r = run(inst, f);
      tally.absorb(r, inst.m());
      ++runs;
      restarts += r.restarts() + static_cast<int>(r.stats.certificates.size());
      const bool good = r.restarts() == 0 && r.stats.certificates.empty() &&
                        r.verified &&
                        (r.outcome == "Optimal" ? r.exact_status == "optimal"
                                                : r.exit_code == kExitInfeasible);
      ok += good;
      if (!good && fail.empty())
        fail = " first failure: " + r.outcome + " n=" + std::to_string(inst.n());
    }
  report(3, "TU sanity at M = 2", ok == runs && restarts == 0,
         std::to_string(ok) + "/" + std::to_string(runs) +
             " network instances, " + std::to_string(restarts) +
             " lifting events" + fail);
}

void hoffman_criterion() {
  Rng rng(11);
  std::uniform_int_distribution<int> ndist(2, 10), kind(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int trials = 0, ok = 0, certs = 0;
  double worst = 0.0;
  std::string fail;
  while (trials < 1000) {
    const int n = ndist(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const Matrix a = random_int_matrix(m, n, 3, rng);
    const SubspaceRep w = SubspaceRep::from_matrix(a);
    if (w.dim() == 0) continue;
    const double kappa = brute_kappa(to_rational(a), n).get_d();
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = 4.0 * unit(rng) - 2.0;
    const Vector x = w.project(v);
    Vector l(n), u(n);
    for (int i = 0; i < n; ++i) {
      switch (kind(rng)) {
        case 0: l[i] = -kInf; break;
        case 1: l[i] = x[i] - 2.0 * unit(rng); break;
        default: l[i] = x[i] > 0 ? x[i] * unit(rng) : x[i] - unit(rng);
      }
      switch (kind(rng)) {
        case 0: u[i] = kInf; break;
        case 1: u[i] = x[i] + 2.0 * unit(rng); break;
        default: u[i] = x[i] < 0 ? x[i] * unit(rng) : x[i] + unit(rng);
      }
    }
    ++trials;
    const VectorOrCert r = hoffman_point(w, x, l, u, kappa);
    if (is_cert(r)) {
      ++certs;
      if (fail.empty()) fail = " first failure: certificate at M = kappa";
      continue;
    }
    const Vector& y = std::get<Vector>(r);
    double budget = 0.0;
    for (int i = 0; i < n; ++i)
      budget += std::max(l[i], 0.0) + std::max(-u[i], 0.0);
    const double scale = std::max(1.0, norm_inf(x));
    bool good = (a * y).norm() <= 1e-9 * scale * (1.0 + a.norm());
    for (int i = 0; i < n; ++i)
      good = good && y[i] >= l[i] - 1e-9 * scale && y[i] <= u[i] + 1e-9 * scale;
    const double lhs = norm_inf(y), rhs = kappa * budget;
    good = good && lhs <= rhs * (1.0 + 1e-9) + 1e-12;
    if (rhs > 0) worst = std::max(worst, lhs / rhs);
    ok += good;
    if (!good && fail.empty())
      fail = " first failure: bound or feasibility, n=" + std::to_string(n);
  }
  std::ostringstream d;
  d << ok << "/" << trials << " within bound, " << certs
    << " certificates, worst ratio " << worst << fail;
  report(4, "constructive Hoffman bound", ok == trials && certs == 0, d.str());
}

void band_criterion() {
  Rng rng(13);
  std::uniform_int_distribution<int> ndist(2, 7);
  int trials = 0, band_ok = 0, dual_ok = 0;
  while (trials < 200) {
    const int n = ndist(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const QMatrix a = to_rational(random_int_matrix(m, n, 3, rng));
    ++trials;
    const BandReport b = kappa_chi_band(a, n);
    band_ok += b.upper_ok && b.lower_ok;
    dual_ok += brute_kappa(a, n) == brute_kappa(orthogonal_complement(a, n), n);
  }
  report(5, "kappa/chibar band, self-duality",
         band_ok == trials && dual_ok == trials,
         std::to_string(band_ok) + "/" + std::to_string(trials) + " band, " +
             std::to_string(dual_ok) + "/" + std::to_string(trials) +
             " kappa(W) = kappa(W^perp) in exact arithmetic");
}

void high_kappa_criterion() {
  Rng rng(17);
  int runs = 0, ok = 0, max_restarts = 0;
  std::string fail;
  for (int blocks = 1; blocks <= 6; ++blocks)
    for (int k = 0; k < 5; ++k) {
      const Instance inst = high_kappa_instance(blocks, 100, rng);
      RunFlags f;
      f.mode = "opt";
      f.verify = true;
      const SolveReport r = run(inst, f);
      tally.absorb(r, inst.m());
      ++runs;
      max_restarts = std::max(max_restarts, r.restarts());
      const bool good = r.outcome == "Optimal" && r.verified &&
                        r.restarts() <= 3 && r.exact_opt &&
                        objective_matches(r.objective, *r.exact_opt);
      ok += good;
      if (!good && fail.empty())
        fail = " first failure: " + r.outcome + " after " +
               std::to_string(r.restarts()) + " restarts";
    }
  report(6, "lifting soundness, high-kappa",
         tally.bad_certs == 0 && ok == runs,
         std::to_string(tally.certs) + " certificates re-verified, " +
             std::to_string(tally.bad_certs) + " unverified; high-kappa " +
             std::to_string(ok) + "/" + std::to_string(runs) +
             " solved, max restarts " + std::to_string(max_restarts) + fail);
}

void contract_criterion() {
  Rng rng(19);
  int solves = 0, ok = 0;
  std::string fail;
  const double deltas[] = {1e-6, 1e-8, 1e-10};
  while (solves < 120) {
    const Instance inst = corpus_instance(rng);
    const SubspaceRep w = SubspaceRep::from_matrix(inst.a);
    const Vector d = w.min_norm_point(inst.d);
    const Vector c = w.project(inst.c);
    if (norm1(d) < 1e-9 || norm1(c) < 1e-9) continue;
    const double m = 2.0 + solves % 7;
    const ExtendedSystem e =
        build_extended(w, d / norm1(d), c / norm1(c), m, 1e-6);
    const double delta = deltas[solves % 3];
    const SolverRequest req = extended_request(e, delta);
    const SolverResponse resp = builtin_ipm(req);
    ++solves;
    // contract lines, re-measured here from the raw response
    const double af = req.a.norm();
    const double gap = req.c.dot(resp.x) - req.b.dot(resp.y);
    const double gap_bound =
        delta * (req.c.norm() * req.rp + req.x0.norm() * req.rd);
    const double pres = (req.a * resp.x - req.b).norm();
    const double dres = (req.a.transpose() * resp.y + resp.s - req.c).norm();
    const bool good = resp.x.minCoeff() >= 0 && resp.s.minCoeff() >= 0 &&
                      gap <= gap_bound &&
                      pres <= delta * (af * req.rp + req.b.norm()) &&
                      dres <= delta * (af * req.rd + req.c.norm());
    ok += good;
    if (!good && fail.empty()) {
      std::ostringstream o;
      o << " first failure: gap " << gap << "/" << gap_bound << " delta "
        << delta;
      fail = o.str();
    }
  }
  report(7, "solver contract (i)-(iii)", ok == solves,
         std::to_string(ok) + "/" + std::to_string(solves) +
             " extended solves" + fail);
}

// Exact Init-LP matrix (a, -a, 0; I, -I/2, I) over the integer a.
QMatrix init_lp_matrix(const QMatrix& a, int n) {
  const int m = static_cast<int>(a.size());
  QMatrix h(m + n, QVector(3 * n, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      h[i][j] = a[i][j];
      h[i][n + j] = -a[i][j];
    }
  for (int j = 0; j < n; ++j) {
    h[m + j][j] = 1;
    h[m + j][n + j] = Rational(-1, 2);
    h[m + j][2 * n + j] = 1;
  }
  return h;
}

void init_kappa_criterion() {
  Rng rng(23);
  std::uniform_int_distribution<int> ndist(2, 4);
  int trials = 0, ok = 0, same = 0;
  std::string fail;
  while (trials < 60) {
    const int n = ndist(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const Matrix af = random_int_matrix(m, n, 3, rng);
    const QMatrix a = to_rational(af);
    ++trials;
    const QMatrix h = init_lp_matrix(a, n);
    const Rational kw = brute_kappa(a, n);
    const Rational kh = brute_kappa(h, 3 * n);
    const bool good = kh <= 4 * kw;
    ok += good;
    // The solver's extended matrix must describe the same subspace.
    const SubspaceRep w = SubspaceRep::from_matrix(af);
    const ExtendedSystem e =
        build_extended(w, Vector::Zero(n), Vector::Zero(n), 2.0, 1e-6, 1.0, 1.0);
    double res = 0.0;
    for (const QVector& v : kernel_basis(h, 3 * n))
      res = std::max(res, (e.a_hat * to_double(v)).norm());
    const bool kernel_same =
        e.a_hat.cols() == 3 * n &&
        Eigen::FullPivLU<Matrix>(e.a_hat).rank() == w.codim() + n &&
        res <= 1e-9;
    same += kernel_same;
    if ((!good || !kernel_same) && fail.empty())
      fail = " first failure: kappa " + kh.get_str() + " vs " + kw.get_str();
  }
  report(10, "Init-LP keeps kappa within 4x", ok == trials && same == trials,
         std::to_string(ok) + "/" + std::to_string(trials) +
             " tiny instances, " + std::to_string(same) +
             " with matching extended kernel" + fail);
}

}  // namespace

int main() {
  corpus_criteria();
  tu_criterion();
  hoffman_criterion();
  band_criterion();
  high_kappa_criterion();
  contract_criterion();
  report(8, "structural counters <= m", tally.bad_structural == 0,
         std::to_string(tally.structural - tally.bad_structural) + "/" +
             std::to_string(tally.structural) + " runs" +
             (tally.first_structural.empty()
                  ? ""
                  : " first failure: " + tally.first_structural));
  {
    std::ostringstream d;
    d << tally.perturbations - tally.bad_perturbations << "/"
      << tally.perturbations << " perturbed optima, worst lhs/rhs "
      << tally.worst_perturbation;
    report(9, "perturbation budget", tally.bad_perturbations == 0, d.str());
  }
  init_kappa_criterion();
  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(lines.size()) - failed,
              lines.size());
  return failed ? 1 : 0;
}
