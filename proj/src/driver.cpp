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

#include "proxlp/driver.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "proxlp/feasibility.hpp"
#include "proxlp/generators.hpp"
#include "proxlp/optimization.hpp"
#include "proxlp/verify.hpp"

namespace proxlp {
namespace {

bool recoverable(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInternalInconsistency:
    case ErrorKind::kResidualTooLarge:
    case ErrorKind::kNumericalBreakdown:
    case ErrorKind::kIterationLimit:
    case ErrorKind::kContractViolation:
    case ErrorKind::kInfeasibleBounds:
    case ErrorKind::kInconsistentProjection:
    case ErrorKind::kNotInSubspace:
    case ErrorKind::kNotInterior:
      return true;
    default:
      return false;
  }
}

Outcome attempt(Context& ctx, const SubspaceRep& w, const Instance& inst,
                bool opt, double m) {
  Outcome p = solve_feasibility(ctx, w, inst.d, m);
  if (!opt || !p.ok()) return p;
  Outcome q = solve_feasibility(ctx, w.dual(), inst.c, m);
  if (q.status == Status::kFarkasPrimal) return Outcome::farkas_dual(q.farkas);
  if (!q.ok()) return q;
  return solve_optimization(ctx, w, p.x, inst.c, m).outcome;
}

// Exact left-kernel vector u with a^t u = 0 and b^t u < 0, if b is outside
// the range of a.
std::optional<QVector> range_certificate(const Instance& inst) {
  const int m = inst.m(), n = inst.n();
  QMatrix at(n, QVector(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) at[j][i] = inst.a_q[i][j];
  for (QVector u : kernel_basis(at, m)) {
    Rational bu = 0;
    for (int i = 0; i < m; ++i) bu += inst.b_q[i] * u[i];
    if (bu == 0) continue;
    // Integral, so that the doubles in the report are exact.
    mpz_class l = 1;
    for (const auto& v : u) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                    v.get_den_mpz_t());
    for (auto& v : u) v *= (bu > 0 ? -l : l);
    return u;
  }
  return std::nullopt;
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(10) << v;
  return o.str();
}

void check(SolveReport& rep, bool ok, const std::string& line) {
  rep.checks.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  if (!ok) rep.verified = false;
}

void finish_solution(SolveReport& rep, const Instance& inst,
                     const SubspaceRep& w, double m, const Outcome& out,
                     bool opt) {
  const Tolerance& tol = w.tol();
  const double scale = std::max(1.0, norm_inf(inst.b));
  rep.x = out.x;
  const double pres = inst.m() ? (inst.a * rep.x - inst.b).norm() : 0.0;
  check(rep, pres <= tol.residual_tol * scale * (1.0 + norm1(rep.x)),
        "primal residual " + fmt(pres));
  check(rep, rep.x.minCoeff() >= 0.0, "x >= 0");
  if (!opt) {
    rep.outcome = "Feasible";
    check(rep, verify_feas_lp(w, inst.d, m, rep.x), "feasibility bounds");
    return;
  }
  rep.outcome = "Optimal";
  rep.s = out.s;
  rep.objective = inst.c.dot(rep.x);
  const double dres = w.project(rep.s - inst.c).norm();
  check(rep,
        dres <= tol.residual_tol * std::max(1.0, norm_inf(inst.c)) *
                    (1.0 + norm1(rep.s)),
        "dual residual " + fmt(dres));
  check(rep, rep.s.minCoeff() >= 0.0, "s >= 0");
  const double comp = rep.x.dot(rep.s);
  check(rep,
        comp <= tol.residual_tol * std::max(1.0, norm_inf(rep.x)) *
                    std::max(1.0, norm_inf(rep.s)),
        "complementarity " + fmt(comp));
}

void run_exact_oracle(SolveReport& rep, const Instance& inst, bool opt) {
  QVector c = inst.c_q;
  if (!opt) c.assign(inst.n(), 0);
  const SimplexResult ex = rational_simplex(inst.a_q, inst.b_q, c);
  switch (ex.status) {
    case SimplexStatus::kOptimal:
      rep.exact_status = "optimal";
      rep.exact_opt = ex.opt;
      break;
    case SimplexStatus::kInfeasible:
      rep.exact_status = "infeasible";
      break;
    case SimplexStatus::kUnbounded:
      rep.exact_status = "unbounded";
      break;
  }
  if (rep.outcome == "Optimal") {
    const bool ok = rep.exact_opt &&
                    std::abs(rep.objective - rep.exact_opt->get_d()) <=
                        1e-7 * (1.0 + std::abs(rep.exact_opt->get_d()));
    check(rep, ok, "objective matches exact optimum");
  } else if (rep.outcome == "Feasible") {
    check(rep, ex.status != SimplexStatus::kInfeasible, "exact oracle feasible");
  } else if (rep.outcome == "FarkasPrimal") {
    check(rep, ex.status == SimplexStatus::kInfeasible,
          "exact oracle infeasible");
  } else if (rep.outcome == "FarkasDual") {
    check(rep, ex.status == SimplexStatus::kUnbounded,
          "exact oracle unbounded");
  }
}

}  // namespace

SolveReport run(const Instance& inst, const RunFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool opt = flags.mode == "opt";
  SolveReport rep;
  rep.mode = flags.mode;
  Tolerance tol;
  tol.residual_tol = flags.tol;
  const SubspaceRep w = SubspaceRep::from_matrix(inst.a, tol);
  double m = std::max(2.0, flags.m0);
  rep.m_history.push_back(m);

  const double lsq = inst.m() ? (inst.a * inst.d - inst.b).norm() : 0.0;
  if (lsq > tol.residual_tol * (1.0 + inst.b.norm())) {
    if (auto u = range_certificate(inst)) {
      rep.outcome = "FarkasPrimal";
      rep.farkas_rows = to_double(*u);
      check(rep, true, "exact: a^t u = 0, b^t u < 0");
      rep.exit_code = kExitInfeasible;
      if (flags.verify) run_exact_oracle(rep, inst, opt);
      rep.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      return rep;
    }
  }

  for (int restart = 0;; ++restart) {
    Context ctx;
    Outcome out;
    bool failed = false;
    try {
      out = attempt(ctx, w, inst, opt, m);
    } catch (const Error& e) {
      if (!recoverable(e.kind())) throw;
      failed = true;
      rep.failure_messages.push_back(e.what());
    }
    rep.stats.merge(ctx.stats);

    double next = m * m;
    if (failed) {
      ++rep.internal_failures;
    } else if (out.status == Status::kLifting) {
      const CertReport cr = check_certificate(*out.cert);
      if (cr.ok) {
        rep.certificates.push_back(*out.cert);
        next = std::max(2.0 * cr.measured, m * m);
      } else {
        ++rep.discarded_certificates;
      }
    } else if (out.status == Status::kFarkasPrimal) {
      const CertReport cr = check_farkas_primal(inst.a_q, inst.b_q, out.farkas);
      if (cr.ok) {
        rep.outcome = "FarkasPrimal";
        rep.farkas = out.farkas;
        check(rep, true, "exact primal Farkas certificate");
        rep.exit_code = kExitInfeasible;
        break;
      }
      ++rep.discarded_certificates;
      rep.failure_messages.push_back("primal Farkas vector failed: " +
                                     cr.violated);
    } else if (out.status == Status::kFarkasDual) {
      const CertReport cr = check_farkas_dual(w, inst.c, out.farkas);
      if (cr.ok) {
        rep.outcome = "FarkasDual";
        rep.farkas = out.farkas;
        check(rep, true, "exact dual Farkas certificate");
        rep.exit_code = kExitInfeasible;
        break;
      }
      ++rep.discarded_certificates;
      rep.failure_messages.push_back("dual Farkas vector failed: " +
                                     cr.violated);
    } else {
      finish_solution(rep, inst, w, m, out, opt);
      rep.exit_code = kExitSolved;
      break;
    }
    if (restart >= flags.max_restarts || !std::isfinite(next)) {
      rep.outcome = "RestartLimit";
      rep.exit_code = kExitRestartLimit;
      break;
    }
    m = next;
    rep.m_history.push_back(m);
  }
  if (flags.verify && rep.outcome != "RestartLimit")
    run_exact_oracle(rep, inst, opt);
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

AnalyzeReport analyze(const Instance& inst, std::uint64_t seed) {
  AnalyzeReport r;
  r.m = inst.m();
  r.n = inst.n();
  const SubspaceRep w = SubspaceRep::from_matrix(inst.a);
  r.rank = w.codim();
  if (r.n <= kKappaGuard) {
    r.kappa = brute_kappa(inst.a_q, r.n);
    r.kappa_bases = kappa_via_bases(inst.a_q, r.n);
    r.kappa_dual = brute_kappa(orthogonal_complement(inst.a_q, r.n), r.n);
  }
  if (r.n <= kChiBarGuard) r.chibar = brute_chibar(inst.a);

  Rng rng(seed);
  std::normal_distribution<double> g;
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 200 && w.dim() > 0; ++k) {
    Vector v(r.n);
    for (int i = 0; i < r.n; ++i) v[i] = g(rng);
    const Vector z = w.project(v);
    IndexSet idx;
    for (int i = 0; i < r.n; ++i)
      if (coin(rng)) idx.push_back(i);
    if (idx.empty() || static_cast<int>(idx.size()) == r.n) continue;
    const Vector p = restrict_to(z, idx);
    if (norm1(p) < 1e-9) continue;
    const Vector l = w.lift(idx, p);
    r.probe_lower_bound = std::max(r.probe_lower_bound, norm_inf(l) / norm1(p));
    ++r.probes;
  }
  return r;
}

std::string bench_csv(const RunFlags& flags) {
  struct Job {
    int size;
    int rep;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int size : flags.sizes)
    for (int k = 0; k < flags.reps; ++k)
      jobs.push_back({size, k, flags.seed * 1000003ULL + jobs.size()});
  std::vector<std::string> rows(jobs.size());
  const bool infeasible = flags.family == "infeasible";

#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j) {
    Rng rng(jobs[j].seed);
    const Instance inst = make_family(flags.family, jobs[j].size, rng);
    RunFlags f = flags;
    f.mode = infeasible ? "feas" : "opt";
    f.verify = inst.n() <= 40;
    std::ostringstream o;
    try {
      const SolveReport r = run(inst, f);
      bool agree = false;
      if (r.outcome == "Optimal")
        agree = r.exact_opt &&
                std::abs(r.objective - r.exact_opt->get_d()) <=
                    1e-7 * (1.0 + std::abs(r.exact_opt->get_d()));
      else if (r.outcome == "FarkasPrimal")
        agree = r.exact_status == "infeasible";
      else if (r.outcome == "FarkasDual")
        agree = r.exact_status == "unbounded";
      std::ostringstream mh;
      for (size_t k = 0; k < r.m_history.size(); ++k)
        mh << (k ? ";" : "") << r.m_history[k];
      o << flags.family << "," << jobs[j].size << "," << jobs[j].seed << ","
        << inst.m() << "," << inst.n() << "," << r.outcome << ","
        << (f.verify ? (agree ? "1" : "0") : "") << "," << r.restarts() << ","
        << mh.str() << "," << r.stats.feas_oracle_calls << ","
        << r.stats.opt_oracle_calls << "," << r.stats.solver_calls << ","
        << r.stats.ipm_iterations << "," << std::fixed
        << std::setprecision(2) << r.wall_ms;
    } catch (const Error& e) {
      o << flags.family << "," << jobs[j].size << "," << jobs[j].seed << ","
        << inst.m() << "," << inst.n() << ",Error,0,,,,,,,";
    }
    rows[j] = o.str();
  }
  std::ostringstream out;
  out << "family,size,seed,m,n,outcome,agree,restarts,m_history,"
         "feas_oracle_calls,opt_oracle_calls,solver_calls,ipm_iterations,"
         "wall_ms\n";
  for (const auto& r : rows) out << r << "\n";
  return out.str();
}

nlohmann::json to_json(const SolveReport& r) {
  auto vec = [](const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  nlohmann::json j;
  j["mode"] = r.mode;
  j["outcome"] = r.outcome;
  j["exit_code"] = r.exit_code;
  if (r.x.size()) j["x"] = vec(r.x);
  if (r.s.size()) j["s"] = vec(r.s);
  if (r.outcome == "Optimal") j["objective"] = r.objective;
  if (r.farkas.size()) j["farkas"] = vec(r.farkas);
  if (r.farkas_rows.size()) j["farkas_rows"] = vec(r.farkas_rows);
  j["m_history"] = r.m_history;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates)
    certs.push_back({{"index", c.idx},
                     {"p", vec(c.p)},
                     {"ratio", c.ratio},
                     {"ratio_l2", c.ratio_l2},
                     {"issued_at", c.issued_at}});
  j["certificates"] = certs;
  j["discarded_certificates"] = r.discarded_certificates;
  j["internal_failures"] = r.internal_failures;
  j["failures"] = r.failure_messages;
  j["stats"] = {{"feas_oracle_calls", r.stats.feas_oracle_calls},
                {"opt_oracle_calls", r.stats.opt_oracle_calls},
                {"near_feasible_calls", r.stats.near_feasible_calls},
                {"near_optimal_calls", r.stats.near_optimal_calls},
                {"solver_calls", r.stats.solver_calls},
                {"ipm_iterations", r.stats.ipm_iterations},
                {"eps", r.stats.eps_requested},
                {"max_feas_depth", r.stats.max_feas_depth},
                {"max_inner_depth", r.stats.max_inner_depth},
                {"outer_iterations", r.stats.outer_iterations},
                {"retries", r.stats.retries},
                {"floor_repairs", r.stats.floor_repairs}};
  j["wall_ms"] = r.wall_ms;
  j["checks"] = r.checks;
  j["verified"] = r.verified;
  if (!r.exact_status.empty()) {
    j["exact_status"] = r.exact_status;
    if (r.exact_opt) j["exact_opt"] = r.exact_opt->get_str();
  }
  return j;
}

nlohmann::json to_json(const AnalyzeReport& r) {
  nlohmann::json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["rank"] = r.rank;
  if (r.kappa) j["kappa"] = r.kappa->get_str();
  if (r.kappa_bases) j["kappa_bases"] = r.kappa_bases->get_str();
  if (r.kappa_dual) j["kappa_dual"] = r.kappa_dual->get_str();
  if (r.chibar) j["chibar"] = *r.chibar;
  j["probe_lower_bound"] = r.probe_lower_bound;
  j["probes"] = r.probes;
  return j;
}

std::string to_text(const SolveReport& r) {
  std::ostringstream o;
  o << std::setprecision(12);
  o << "outcome: " << r.outcome << "\n";
  if (r.outcome == "Optimal") o << "objective: " << r.objective << "\n";
  auto line = [&](const char* name, const Vector& v) {
    if (!v.size()) return;
    o << name << ":";
    for (int i = 0; i < v.size(); ++i) o << " " << v[i];
    o << "\n";
  };
  line("x", r.x);
  line("s", r.s);
  line("farkas", r.farkas);
  line("farkas_rows", r.farkas_rows);
  o << "M history:";
  for (double m : r.m_history) o << " " << m;
  o << "\n";
  for (const auto& c : r.certificates)
    o << "certificate: M=" << c.issued_at << " ratio=" << c.ratio
      << " |I|=" << c.idx.size() << "\n";
  if (r.discarded_certificates)
    o << "discarded certificates: " << r.discarded_certificates << "\n";
  if (r.internal_failures)
    o << "internal failures: " << r.internal_failures << "\n";
  o << "oracle calls: feas=" << r.stats.feas_oracle_calls
    << " opt=" << r.stats.opt_oracle_calls
    << " solver=" << r.stats.solver_calls
    << " ipm_iterations=" << r.stats.ipm_iterations << "\n";
  o << "depth: feasibility=" << r.stats.max_feas_depth
    << " inner=" << r.stats.max_inner_depth
    << " outer iterations=" << r.stats.outer_iterations << "\n";
  for (const auto& c : r.checks) o << c << "\n";
  if (!r.exact_status.empty()) {
    o << "exact oracle: " << r.exact_status;
    if (r.exact_opt) o << " OPT=" << r.exact_opt->get_str();
    o << "\n";
  }
  o << std::fixed << std::setprecision(2) << "wall: " << r.wall_ms << " ms\n";
  return o.str();
}

std::string to_text(const AnalyzeReport& r) {
  std::ostringstream o;
  o << "m=" << r.m << " n=" << r.n << " rank=" << r.rank << "\n";
  if (r.kappa)
    o << "kappa: " << r.kappa->get_str() << " (" << r.kappa->get_d() << ")\n";
  if (r.kappa_bases) o << "kappa via bases: " << r.kappa_bases->get_str() << "\n";
  if (r.kappa_dual) o << "kappa of complement: " << r.kappa_dual->get_str() << "\n";
  if (r.chibar) o << "chibar: " << *r.chibar << "\n";
  o << "lift-probe lower bound: " << r.probe_lower_bound << " (" << r.probes
    << " probes)\n";
  return o.str();
}

}  // namespace proxlp
