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

#ifndef PROXLP_FEASIBILITY_HPP_
#define PROXLP_FEASIBILITY_HPP_

#include "proxlp/context.hpp"
#include "proxlp/subspace.hpp"

namespace proxlp {

// Exact feasibility of x in W+d, x >= 0. On success `x` satisfies
//   x in W+d, x >= 0, ||x - d||_inf <= 16 M^2 n ||d^-||_1.
// Otherwise a Farkas vector y in W^perp, y >= 0, <d,y> < 0, or a lifting
// certificate showing M < kappa_W. Loops of W are handled up front.
Outcome solve_feasibility(Context& ctx, const SubspaceRep& w, const Vector& d,
                          double m);

bool verify_feas_lp(const SubspaceRep& w, const Vector& d, double m,
                    const Vector& x);

// y in W^perp, y >= 0, <d,y> < 0, each at tolerance.
bool verify_farkas_primal(const SubspaceRep& w, const Vector& d,
                          const Vector& y);

}  // namespace proxlp

#endif  // PROXLP_FEASIBILITY_HPP_
