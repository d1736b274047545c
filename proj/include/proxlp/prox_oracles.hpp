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

#ifndef PROXLP_PROX_ORACLES_HPP_
#define PROXLP_PROX_ORACLES_HPP_

#include "proxlp/context.hpp"
#include "proxlp/subspace.hpp"

namespace proxlp {

// x in W+d with ||x^-||_1 <= eps ||d/W||_1 and ||x||_inf <= 2M ||d/W||_1
// (Status::kSolution, in `x`), a primal Farkas vector, or a lifting
// certificate.
Outcome near_feasible(Context& ctx, const SubspaceRep& w, const Vector& d,
                      double m, double eps);

// Near-optimal pair (x, s) for min <c,x>, x in W+d, x >= 0, or one of the
// two Farkas outcomes, or a lifting certificate. d and c are replaced by
// d/W and c/W^perp on entry.
Outcome near_optimal(Context& ctx, const SubspaceRep& w, const Vector& d,
                     const Vector& c, double m, double eps);

// x in W+d with ||x - d||_inf <= 3 M^2 n ||d^-||_1 and
// ||x^-||_inf <= eps ||d^-||_1.
Outcome prox_feas_oracle(Context& ctx, const SubspaceRep& w, const Vector& d,
                         double m, double eps);

// Requires c >= 0. On success fills x, s and c_tilde with
//   x in W+d, s in W^perp + c_tilde, s >= 0, 0 <= c - c_tilde,
//   ||c - c_tilde||_inf <= (eps/n) ||c/W^perp||_1,
//   ||x_{Lambda(x,s)}||_inf <= eps ||d_{Lambda(d,c)}||_1,
//   ||x - d||_inf <= 3 M^2 n ||d_{Lambda(d,c)}||_1.
Outcome prox_opt_oracle(Context& ctx, const SubspaceRep& w, const Vector& d,
                        const Vector& c, double m, double eps);

// Accuracy handed to the approximate solver for an oracle accuracy eps.
double solver_delta(const Context& ctx, double eps, int n, double m);

}  // namespace proxlp

#endif  // PROXLP_PROX_ORACLES_HPP_
