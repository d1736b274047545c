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

#include "proxlp/context.hpp"

namespace proxlp {

void RunStats::merge(const RunStats& o) {
  feas_oracle_calls += o.feas_oracle_calls;
  opt_oracle_calls += o.opt_oracle_calls;
  near_feasible_calls += o.near_feasible_calls;
  near_optimal_calls += o.near_optimal_calls;
  solver_calls += o.solver_calls;
  ipm_iterations += o.ipm_iterations;
  eps_requested.insert(eps_requested.end(), o.eps_requested.begin(),
                       o.eps_requested.end());
  max_feas_depth = std::max(max_feas_depth, o.max_feas_depth);
  max_inner_depth = std::max(max_inner_depth, o.max_inner_depth);
  outer_iterations = std::max(outer_iterations, o.outer_iterations);
  retries += o.retries;
  floor_repairs += o.floor_repairs;
  perturbations.insert(perturbations.end(), o.perturbations.begin(),
                       o.perturbations.end());
  certificates.insert(certificates.end(), o.certificates.begin(),
                      o.certificates.end());
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kSolution:
      return "Solution";
    case Status::kFarkasPrimal:
      return "FarkasPrimal";
    case Status::kFarkasDual:
      return "FarkasDual";
    case Status::kLifting:
      return "Lifting";
  }
  return "?";
}

Outcome emit_lifting(Context& ctx, LiftingCertificate c) {
  ctx.stats.certificates.push_back(c);
  return Outcome::lifting(std::move(c));
}

}  // namespace proxlp
