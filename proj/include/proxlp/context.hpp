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

#ifndef PROXLP_CONTEXT_HPP_
#define PROXLP_CONTEXT_HPP_

#include <optional>
#include <vector>

#include "proxlp/approx_solver.hpp"
#include "proxlp/subspace.hpp"

namespace proxlp {

// ||d~ - d||_1 against ||x~||_inf / (4 n^2 M^2) for one accepted
// perturbed optimum.
struct PerturbationRecord {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct RunStats {
  int feas_oracle_calls = 0;
  int opt_oracle_calls = 0;
  int near_feasible_calls = 0;
  int near_optimal_calls = 0;
  int solver_calls = 0;
  long ipm_iterations = 0;
  std::vector<double> eps_requested;

  int max_feas_depth = 0;
  int max_inner_depth = 0;
  int outer_iterations = 0;
  int retries = 0;
  int floor_repairs = 0;  // case II solutions accepted below the eps floor

  std::vector<PerturbationRecord> perturbations;
  std::vector<LiftingCertificate> certificates;

  void merge(const RunStats& o);
};

// Shared state of one solve. Accuracy requests smaller than the floors
// below are clamped, since double arithmetic cannot resolve them.
struct Context {
  ApproxSolver solver;
  RunStats stats;
  double eps_floor = 1e-11;
  double delta_floor = 1e-14;

  double eps_eff(double eps) const { return std::max(eps, eps_floor); }
};

enum class Status {
  kSolution,
  kFarkasPrimal,  // y in W^perp, y >= 0, <d, y> < 0
  kFarkasDual,    // x in W, x >= 0, <c, x> < 0
  kLifting,
};

const char* status_name(Status s);

// Common result record of the oracles and algorithms. Which vectors are set
// depends on `status` and on the routine.
struct Outcome {
  Status status = Status::kSolution;
  Vector x, s;
  Vector d_tilde, c_tilde;
  Vector farkas;
  std::optional<LiftingCertificate> cert;

  bool ok() const { return status == Status::kSolution; }
  static Outcome solution(Vector x, Vector s = {}) {
    Outcome o;
    o.x = std::move(x);
    o.s = std::move(s);
    return o;
  }
  static Outcome farkas_primal(Vector y) {
    Outcome o;
    o.status = Status::kFarkasPrimal;
    o.farkas = std::move(y);
    return o;
  }
  static Outcome farkas_dual(Vector x) {
    Outcome o;
    o.status = Status::kFarkasDual;
    o.farkas = std::move(x);
    return o;
  }
  static Outcome lifting(LiftingCertificate c) {
    Outcome o;
    o.status = Status::kLifting;
    o.cert = std::move(c);
    return o;
  }
};

// Records the certificate in `ctx` and wraps it.
Outcome emit_lifting(Context& ctx, LiftingCertificate c);

}  // namespace proxlp

#endif  // PROXLP_CONTEXT_HPP_
