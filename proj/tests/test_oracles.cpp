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


#include "doctest.h"
#include "proxlp/generators.hpp"
#include "proxlp/prox_oracles.hpp"
#include "proxlp/verify.hpp"

using namespace proxlp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(v.size());
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

SubspaceRep ker(int r, int c, std::initializer_list<double> v) {
  Matrix a(r, c);
  auto it = v.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = *it++;
  return SubspaceRep::from_matrix(a);
}

// Exact feasibility of x in W + d, x >= 0 through the rational simplex.
bool exactly_feasible(const SubspaceRep& w, const Vector& d) {
  const QMatrix a = exact_matrix(w);
  const QVector dq = to_rational(d);
  QVector b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < dq.size(); ++j) b[i] += a[i][j] * dq[j];
  const QVector zero(dq.size());
  return rational_simplex(a, b, zero).status == SimplexStatus::kOptimal;
}

// A 4-cycle with a chord, arcs oriented at random.
SubspaceRep cycle_space() {
  Matrix a(4, 5);
  a << 1, 0, 0, -1, 1,
      -1, 1, 0, 0, 0,
      0, -1, 1, 0, -1,
      0, 0, -1, 1, 0;
  return SubspaceRep::from_matrix(a);
}

}  // namespace

TEST_CASE("near feasible short circuit") {
  Context ctx;
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const Outcome o = near_feasible(ctx, w, vec({1, 0, 2}), 2.0, 1e-4);
  REQUIRE(o.ok());
  CHECK(o.x == vec({1, 0, 2}));
  CHECK(ctx.stats.solver_calls == 0);
}

TEST_CASE("near feasible farkas") {
  Context ctx;
  const SubspaceRep w = ker(1, 2, {1, 1});
  const Vector d = vec({-1, 0});
  const Outcome o = near_feasible(ctx, w, d, 2.0, 1e-4);
  REQUIRE(o.status == Status::kFarkasPrimal);
  CHECK(check_farkas_primal(w, d, o.farkas).ok);
  CHECK(!exactly_feasible(w, d));
}

TEST_CASE("near feasible point") {
  Context ctx;
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const Vector d = vec({1, 1, -1});
  REQUIRE(exactly_feasible(w, d));
  const Outcome o = near_feasible(ctx, w, d, 2.0, 1e-4);
  REQUIRE(o.ok());
  const double dn = norm1(w.min_norm_point(d));
  CHECK(dn == doctest::Approx(1.0));
  CHECK(w.contains(o.x - d));
  CHECK(norm1(neg_part(o.x)) <= 1e-4 * dn);
  CHECK(norm_inf(o.x) <= 2 * 2.0 * dn * 1.000001);
}

TEST_CASE("near optimal on min x1") {
  Context ctx;
  const SubspaceRep w = ker(1, 2, {1, 1});
  const Vector d = vec({0.5, 0.5}), c = vec({1, 0});
  const double eps = 1e-3, m = 2.0;
  const Outcome o = near_optimal(ctx, w, d, c, m, eps);
  REQUIRE(o.ok());
  // exact optimum by the simplex oracle
  const SimplexResult ex = rational_simplex({{1, 1}}, {1}, {1, 0});
  REQUIRE(ex.status == SimplexStatus::kOptimal);
  CHECK(ex.opt == 0);
  const double bound = 5 * eps * m * norm1(w.min_norm_point(d)) *
                       norm1(w.dual().min_norm_point(c));
  CHECK(std::abs(c.dot(o.x) - ex.opt.get_d()) <= bound);
}

TEST_CASE("near optimal dual farkas") {
  Context ctx;
  const SubspaceRep w = ker(1, 2, {1, -1});
  const Vector c = vec({-1, 0});
  const Outcome o = near_optimal(ctx, w, Vector::Zero(2), c, 2.0, 1e-3);
  REQUIRE(o.status == Status::kFarkasDual);
  CHECK(check_farkas_dual(w, c, o.farkas).ok);
}

TEST_CASE("near optimal primal farkas") {
  Context ctx;
  const SubspaceRep w = ker(1, 2, {1, 1});
  const Vector d = vec({-1, 0});
  const Outcome o = near_optimal(ctx, w, d, vec({1, 0}), 2.0, 1e-3);
  REQUIRE(o.status == Status::kFarkasPrimal);
  CHECK(check_farkas_primal(w, d, o.farkas).ok);
}

TEST_CASE("feasibility oracle") {
  const double m = 2.0, eps = 1e-3;
  {
    Context ctx;
    const Outcome o =
        prox_feas_oracle(ctx, ker(1, 2, {1, 1}), vec({1, 2}), m, eps);
    REQUIRE(o.ok());
    CHECK(o.x == vec({1, 2}));
  }
  const SubspaceRep w = cycle_space();
  Rng rng(3);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    Vector d = Vector::Zero(5);
    for (int i = 0; i < 5; ++i)
      d(i) = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (!exactly_feasible(w, d)) continue;
    ++checked;
    Context ctx;
    const Outcome o = prox_feas_oracle(ctx, w, d, m, eps);
    REQUIRE(o.ok());
    const double dn = norm1(neg_part(d));
    CHECK(w.residual(o.x - d) <= 1e-9 * (1 + norm_inf(d)));
    CHECK(norm_inf(o.x - d) <= 3 * m * m * 5 * dn * (1 + 1e-9));
    CHECK(norm_inf(neg_part(o.x)) <= eps * dn * (1 + 1e-9));
  }
  CHECK(checked > 5);

  Context ctx;
  const SubspaceRep k = ker(1, 2, {1, 1});
  const Outcome o = prox_feas_oracle(ctx, k, vec({-1, 0}), m, eps);
  REQUIRE(o.status == Status::kFarkasPrimal);
  CHECK((o.farkas.array() >= 0).all());
  CHECK(k.dual().contains(o.farkas));
  CHECK(o.farkas.dot(vec({-1, 0})) < 0);
}

TEST_CASE("optimization oracle invariants") {
  const SubspaceRep w = ker(1, 2, {1, 1});
  const Vector d = vec({0.5, 0.5}), c = vec({1, 0});
  const double m = 2.0, eps = 1e-3;
  const int n = 2;
  Context ctx;
  const Outcome o = prox_opt_oracle(ctx, w, d, c, m, eps);
  REQUIRE(o.ok());
  const double tol = 1e-9;
  const IndexSet lam0 = lambda_set(d, c, 1e-12);
  const double dl = norm1(restrict_to(d, lam0));
  CHECK(w.residual(o.x - d) <= tol);
  CHECK(w.dual().residual(o.s - o.c_tilde) <= tol);
  CHECK((o.s.array() >= 0).all());
  CHECK(((c - o.c_tilde).array() >= -tol).all());
  CHECK(norm_inf(c - o.c_tilde) <=
        eps / n * norm1(w.dual().min_norm_point(c)) + tol);
  const IndexSet lam = lambda_set(o.x, o.s, 1e-12);
  CHECK(norm_inf(restrict_to(o.x, lam)) <= eps * dl + tol);
  CHECK(norm_inf(o.x - d) <= 3 * m * m * n * dl + tol);
}

TEST_CASE("optimization oracle with zero cost") {
  Context ctx;
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const Vector d = vec({1, 1, -1});
  const Outcome o = prox_opt_oracle(ctx, w, d, Vector::Zero(3), 2.0, 1e-3);
  REQUIRE(o.ok());
  CHECK(w.contains(o.x - d));
  CHECK(norm_inf(neg_part(o.x)) <= 1e-3 * 1.0 + 1e-12);
  CHECK(norm_inf(o.c_tilde) == 0.0);
}

TEST_CASE("dual truncation") {
  // c has a tiny entry next to a large one; the truncated c~ may only
  // drop mass up to (eps/n) ||c/W^perp||_1.
  Context ctx;
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const Vector d = vec({1, 1, 1}), c = vec({2, 1e-9, 0});
  const double eps = 1e-2;
  const Outcome o = prox_opt_oracle(ctx, w, d, c, 2.0, eps);
  REQUIRE(o.ok());
  CHECK(((c - o.c_tilde).array() >= -1e-12).all());
  CHECK(norm_inf(c - o.c_tilde) <=
        eps / 3 * norm1(w.dual().min_norm_point(c)) + 1e-12);
}

TEST_CASE("solver accuracy follows the oracle accuracy") {
  Context ctx;
  const double big = solver_delta(ctx, 1e-2, 4, 2.0);
  const double small = solver_delta(ctx, 1e-4, 4, 2.0);
  CHECK(small <= big);
  CHECK(small >= ctx.delta_floor);
}
