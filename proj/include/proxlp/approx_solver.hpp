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

#ifndef PROXLP_APPROX_SOLVER_HPP_
#define PROXLP_APPROX_SOLVER_HPP_

#include <functional>
#include <string>

#include "proxlp/numerics.hpp"

namespace proxlp {

// min <c,x> s.t. a x = b, x >= 0, with a strictly interior primal-dual
// start (x0; y0, s0) where a^t y0 + s0 = c.
struct SolverRequest {
  Matrix a;
  Vector b, c;
  Vector x0, y0, s0;
  double delta = 1e-8;
  double rp = 1.0;  // primal diameter bound
  double rd = 1.0;  // dual diameter bound
};

struct ContractMeasure {
  double gap = 0.0, gap_bound = 0.0;            // (i): <c,x> - <b,y>
  double primal_res = 0.0, primal_bound = 0.0;  // (ii)
  double dual_res = 0.0, dual_bound = 0.0;      // (iii)
  bool nonnegative = true;
  bool ok(double slack) const;
};

struct SolverResponse {
  Vector x, y, s;
  ContractMeasure measure;
  int iterations = 0;
  bool iteration_limit = false;
  bool purified = false;
};

ContractMeasure measure_contract(const SolverRequest& req, const Vector& x,
                                 const Vector& y, const Vector& s);

using SolverAdapter = std::function<SolverResponse(const SolverRequest&)>;

struct IpmOptions {
  int max_iterations = 100000;
  // Try to snap the final iterate onto its optimal partition.
  bool purify = true;
};

// Feasible-start primal-dual path following with predictor-corrector steps
// and a short-step fallback.
SolverResponse builtin_ipm(const SolverRequest& req,
                           const IpmOptions& opts = {});

class ApproxSolver {
 public:
  ApproxSolver() = default;
  explicit ApproxSolver(IpmOptions opts) : opts_(opts) {}

  // Routes later solves to `adapter`. Meant to be called once at startup.
  void register_external_solver(SolverAdapter adapter) {
    adapter_ = std::move(adapter);
  }
  bool has_adapter() const { return static_cast<bool>(adapter_); }

  // Solves and re-validates the response against the contract.
  SolverResponse solve(const SolverRequest& req) const;

 private:
  IpmOptions opts_;
  SolverAdapter adapter_;
};

// Text form used by out-of-process solvers: the instance layout with keyed
// lines `b`, `c`, `x0`, `y0`, `s0`, `delta`, `radii`.
std::string serialize_request(const SolverRequest& req);
SolverRequest parse_request(const std::string& text);
std::string serialize_response(const SolverResponse& resp);
SolverResponse parse_response(const std::string& text);

// Runs `command <request-file>`; exit status 0 means the response is on
// stdout.
SolverAdapter subprocess_adapter(const std::string& command);

}  // namespace proxlp

#endif  // PROXLP_APPROX_SOLVER_HPP_
