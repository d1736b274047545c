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

#ifndef PROXLP_EXTENDED_INIT_HPP_
#define PROXLP_EXTENDED_INIT_HPP_

#include "proxlp/approx_solver.hpp"
#include "proxlp/subspace.hpp"

namespace proxlp {

// Self-initializing extension of Primal-Dual(W, d, c):
//   min <c, x - xl> + M_P <1, xl>
//   x - xl in W + d,  x - xl/2 + xu = M_D,  x, xl, xu >= 0
// written in standard form over the normal-form matrix A of W with
// variables (x, xl, xu) and rows (A, -A, 0; I, -I/2, I).
struct ExtendedSystem {
  SubspaceRep w;
  Vector d, c;
  double m = 2.0;
  double m_p = 0.0, m_d = 0.0;          // M_P, M_D
  double m_p_hat = 0.0, m_d_hat = 0.0;  // shifted values used in the solve
  double eps = 0.0;                     // accuracy the shift was built for
  Matrix a_hat;
  Vector b_hat, c_hat;
  double box_primal = 0.0;  // 2 n M_D
  double box_dual = 0.0;    // 2 n M_P
};

struct PrimalTriple {
  Vector x, xl, xu;
};
struct DualQuad {
  Vector y, s, sl, su;
};

struct ApproxSolution {
  PrimalTriple primal;
  DualQuad dual;
  double gap_bound = 0.0;      // >= <c_hat, xhat> - <b_hat, y>
  double primal_residual = 0.0;  // measured before repair
  double dual_residual = 0.0;
  double primal_objective = 0.0;  // after repair, with M_P / M_D
  double dual_objective = 0.0;
  int iterations = 0;
};

constexpr double kGamma = 1.0 / 13.0;

// m_p_override / m_d_override replace 2||c||_1 M and 2||d||_1 M when >= 0.
ExtendedSystem build_extended(const SubspaceRep& w, const Vector& d,
                              const Vector& c, double m, double eps,
                              double m_p_override = -1.0,
                              double m_d_override = -1.0);

std::pair<PrimalTriple, DualQuad> initial_point(const ExtendedSystem& e);

// The solver request for `e` with target accuracy delta.
SolverRequest extended_request(const ExtendedSystem& e, double delta);

// Residual fix-up plus the uniform shift; throws kResidualTooLarge when the
// raw residuals exceed what the accuracy `e.eps` promises.
ApproxSolution repair_to_subspace(const ExtendedSystem& e,
                                  const SolverResponse& raw);

// Convenience: build request, solve, repair.
ApproxSolution solve_extended(const ExtendedSystem& e, double delta,
                              const ApproxSolver& solver);

}  // namespace proxlp

#endif  // PROXLP_EXTENDED_INIT_HPP_
