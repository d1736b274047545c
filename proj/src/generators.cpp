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

#include "proxlp/generators.hpp"

#include <algorithm>

namespace proxlp {
namespace {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Matrix random_int_matrix(int m, int n, int r, Rng& rng) {
  Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -r, r);
  return a;
}

Matrix digraph_incidence(int nodes, int arcs, Rng& rng) {
  Matrix a = Matrix::Zero(nodes, arcs);
  for (int e = 0; e < arcs; ++e) {
    const int u = uniform(rng, 0, nodes - 1);
    int v = uniform(rng, 0, nodes - 2);
    if (v >= u) ++v;
    a(u, e) = 1.0;
    a(v, e) = -1.0;
  }
  return a;
}

Instance feasible_instance(const Matrix& a, Rng& rng, std::string family) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Vector x0(n), y0(m), s0(n);
  // Sparse x0 and s0 make degenerate optima common.
  for (int j = 0; j < n; ++j) x0[j] = uniform(rng, 0, 1) ? uniform(rng, 0, 3) : 0;
  for (int i = 0; i < m; ++i) y0[i] = uniform(rng, -2, 2);
  for (int j = 0; j < n; ++j) s0[j] = uniform(rng, 0, 1) ? uniform(rng, 0, 3) : 0;
  const Vector b = a * x0;
  const Vector c = a.transpose() * y0 + s0;
  return make_instance(a, b, &c, std::move(family));
}

Instance random_int_instance(int m, int n, int r, Rng& rng) {
  return feasible_instance(random_int_matrix(m, n, r, rng), rng, "random-int");
}

Instance tu_network_instance(int nodes, int arcs, Rng& rng) {
  return feasible_instance(digraph_incidence(nodes, arcs, rng), rng,
                           "tu-network");
}

Instance high_kappa_instance(int blocks, int k, Rng& rng) {
  Matrix a = Matrix::Zero(blocks, 2 * blocks);
  for (int i = 0; i < blocks; ++i) {
    a(i, 2 * i) = 1.0;
    a(i, 2 * i + 1) = k;
  }
  return feasible_instance(a, rng, "high-kappa");
}

Instance infeasible_instance(int m, int n, int r, Rng& rng) {
  Matrix a = random_int_matrix(m, n, r, rng);
  Vector b(m);
  for (int i = 0; i < m; ++i) b[i] = uniform(rng, -r, r);
  for (int j = 0; j < n; ++j) a(0, j) = uniform(rng, 0, r);
  a(0, uniform(rng, 0, n - 1)) = std::max(1.0, a(0, 0));
  b[0] = -uniform(rng, 1, r);
  for (int i = 1; i < m; ++i) {
    const int f = uniform(rng, -1, 1);
    a.row(i) += f * a.row(0);
    b[i] += f * b[0];
  }
  if (m > 1) {
    a.row(0) += a.row(m - 1);
    b[0] += b[m - 1];
  }
  const Vector c = Vector::Zero(n);
  return make_instance(a, b, &c, "infeasible");
}

Instance make_family(const std::string& family, int size, Rng& rng) {
  const int half = std::max(1, size / 2);
  if (family == "tu-network") return tu_network_instance(half + 1, size, rng);
  if (family == "random-int") return random_int_instance(half, size, 3, rng);
  if (family == "high-kappa") return high_kappa_instance(half, 100, rng);
  if (family == "infeasible") return infeasible_instance(half, size, 3, rng);
  throw Error(ErrorKind::kParseError, "unknown family '" + family + "'");
}

}  // namespace proxlp
