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

#ifndef PROXLP_OPTIMIZATION_HPP_
#define PROXLP_OPTIMIZATION_HPP_

#include <vector>

#include "proxlp/context.hpp"
#include "proxlp/subspace.hpp"

namespace proxlp {

// Exact optimum of a perturbed problem. On success x, s and d_tilde hold
//   ||d_tilde - d||_1 <= ||x||_inf / (4 n^2 M^2), x in W + d_tilde,
//   s in W^perp + c, <x, s> = 0, x, s >= 0.
// Requires d >= 0. Can also end in FarkasDual or Lifting.
Outcome inner_loop(Context& ctx, const SubspaceRep& w, const Vector& d,
                   const Vector& c, double m);

// One pass of the outer loop. Index sets are local to `w`.
struct OuterRecord {
  IndexSet live;  // coordinates of the original problem that `w` spans
  SubspaceRep w;
  Vector d, c;
  Vector x_tilde, s_tilde, d_tilde;
  Vector x_hat;  // x_tilde + d - d_tilde, an element of W + d
  IndexSet large, medium, small_closed, small_free;
  SubspaceRep w_next;  // over small_free
};

struct OptResult {
  Outcome outcome;  // x = x*, s = s* on success
  IndexSet basic, nonbasic;
  std::vector<OuterRecord> history;
};

// min <c0, x>, x in W0 + d0, x >= 0, from a feasible d0 >= 0. Both the
// primal and the dual problem are expected to be feasible.
OptResult solve_optimization(Context& ctx, const SubspaceRep& w0,
                             const Vector& d0, const Vector& c0, double m);

// Pulls a feasible point supported on the basic set back through
// `history`; some step has to produce a lifting certificate.
Outcome certificate_backtrack(Context& ctx,
                              const std::vector<OuterRecord>& history,
                              const IndexSet& nonbasic, double m);

}  // namespace proxlp

#endif  // PROXLP_OPTIMIZATION_HPP_
