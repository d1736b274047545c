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

#ifndef PROXLP_GENERATORS_HPP_
#define PROXLP_GENERATORS_HPP_

#include <random>
#include <string>

#include "proxlp/instance.hpp"

namespace proxlp {

using Rng = std::mt19937_64;

// Integer matrix with entries uniform in [-r, r].
Matrix random_int_matrix(int m, int n, int r, Rng& rng);

// Node-arc incidence matrix of a random digraph without self loops.
Matrix digraph_incidence(int nodes, int arcs, Rng& rng);

// b = a x0 with x0 >= 0 and c = a^t y0 + s0 with s0 >= 0, all integral,
// so both the primal and the dual problem are feasible.
Instance feasible_instance(const Matrix& a, Rng& rng, std::string family);

Instance random_int_instance(int m, int n, int r, Rng& rng);
Instance tu_network_instance(int nodes, int arcs, Rng& rng);
// `blocks` copies of the row (1, k) on disjoint coordinate pairs; kappa of
// the kernel is k.
Instance high_kappa_instance(int blocks, int k, Rng& rng);
// A row with nonnegative entries and negative right-hand side, hidden by
// integer row operations.
Instance infeasible_instance(int m, int n, int r, Rng& rng);

Instance make_family(const std::string& family, int size, Rng& rng);

}  // namespace proxlp

#endif  // PROXLP_GENERATORS_HPP_
