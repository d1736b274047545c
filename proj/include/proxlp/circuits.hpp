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

#ifndef PROXLP_CIRCUITS_HPP_
#define PROXLP_CIRCUITS_HPP_

#include <utility>
#include <variant>
#include <vector>

#include "proxlp/subspace.hpp"

namespace proxlp {

// One elementary vector g (max |g_i| = 1) taken with weight `coef`.
struct Circuit {
  IndexSet support;
  Vector g;
  double coef = 0.0;
};

struct ConicDecomposition {
  // (alpha_j, y^(j)); the alphas sum to one.
  std::vector<std::pair<double, Vector>> terms;
  Vector z;
  int iterations = 0;
};

using VectorOrCert = std::variant<Vector, LiftingCertificate>;

inline bool is_cert(const VectorOrCert& r) {
  return std::holds_alternative<LiftingCertificate>(r);
}

// Greedy conformal decomposition z = sum coef_k g^k.
std::vector<Circuit> sign_consistent_decompose(const SubspaceRep& w,
                                               const Vector& z);

// z in W sign-consistent with y, z_J = 0, and y - z a convex combination
// of minimal-support vectors agreeing with y on J.
ConicDecomposition eliminate_on(const SubspaceRep& w, const Vector& y,
                                const IndexSet& j);

VectorOrCert eliminate_with_proximity(const SubspaceRep& w, const Vector& y,
                                      const IndexSet& j, double m);

// y in W with l <= y <= u and ||y||_inf <= m ||l^+ + u^-||_1, starting from
// a feasible x. Bounds may be infinite.
VectorOrCert hoffman_point(const SubspaceRep& w, const Vector& x,
                           const Vector& l, const Vector& u, double m);

}  // namespace proxlp

#endif  // PROXLP_CIRCUITS_HPP_
