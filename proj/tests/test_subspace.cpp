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
#include "proxlp/subspace.hpp"
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

bool near(const Vector& a, const Vector& b, double tol = 1e-12) {
  return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace

TEST_CASE("lift onto the all-ones kernel") {
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  CHECK(near(w.lift({0}, vec({1})), vec({1, -0.5, -0.5})));
  const Vector g = vec({1, 2, -3});
  CHECK(near(w.lift(full_set(3), g), g));
  CHECK(near(ker(1, 2, {1, 2}).lift({1}, vec({1})), vec({-2, 1})));
}

TEST_CASE("dual lift") {
  CHECK(near(ker(1, 2, {1, 1}).lift_dual({0}, vec({1})), vec({1, 1})));
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  CHECK(near(w.lift_dual(full_set(3), vec({2, 2, 2})), vec({2, 2, 2})));
  CHECK(near(w.lift_dual({0, 1}, vec({1, 1})), vec({1, 1, 1})));
}

TEST_CASE("min norm point") {
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  CHECK(near(w.min_norm_point(vec({1, 1, -1})), Vector::Constant(3, 1.0 / 3)));
  CHECK(near(w.min_norm_point(vec({1, -1, 0})), Vector::Zero(3)));
  CHECK(near(w.min_norm_point(vec({4, 4, 4})), vec({4, 4, 4})));
}

TEST_CASE("closure") {
  const SubspaceRep w = ker(2, 3, {1, 0, 1, 0, 1, 1});
  CHECK(w.closure({0, 1}) == IndexSet{0, 1, 2});
  CHECK(w.closure({}).empty());
  CHECK(w.closure({0}) == IndexSet{0});
}

TEST_CASE("coordinate projection") {
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const SubspaceRep p = w.project_coords({0, 1});
  CHECK(p.n() == 2);
  CHECK(p.dim() == 2);
  CHECK(w.project_coords(full_set(3)).dim() == w.dim());

  // Oracle: eliminating x3 from x1 + x3 = 0, x2 + x3 = 0 by hand leaves
  // x1 = x2, so the projection is span{(1,1)}.
  const SubspaceRep q = ker(2, 3, {1, 0, 1, 0, 1, 1}).project_coords({0, 1});
  CHECK(q.dim() == 1);
  CHECK(q.contains(vec({1, 1})));
  CHECK(!q.contains(vec({1, 0})));
  // and it agrees with the exact replay
  const QMatrix e = exact_matrix(q);
  const auto kb = kernel_basis(e, 2);
  REQUIRE(kb.size() == 1);
  CHECK(kb[0][0] == kb[0][1]);
}

TEST_CASE("coordinate fixing") {
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  CHECK(w.fix_coords(full_set(3)).dim() == 2);
  const SubspaceRep f = w.fix_coords({0, 1});
  CHECK(f.dim() == 1);
  CHECK(f.contains(vec({1, -1})));
  CHECK(w.fix_coords({2}).dim() == 0);
}

TEST_CASE("lifting certificates") {
  CHECK(!check_lift_certificate(ker(1, 3, {1, 1, 1}), {0}, vec({1}), 2.0));
  CHECK(!check_lift_certificate(ker(1, 2, {1, 10}), {1}, vec({0}), 2.0));

  // Oracle: ker([1,10]) is spanned by (-10,1), so the lift of p = 1 on
  // coordinate 2 is (-10,1) and the ratio is 10.
  const SubspaceRep w = ker(1, 2, {1, 10});
  const auto kb = kernel_basis(to_rational(w.normal()), 2);
  REQUIRE(kb.size() == 1);
  const Rational hand = abs(kb[0][0] / kb[0][1]);
  CHECK(hand == 10);
  auto cert = check_lift_certificate(w, {1}, vec({1}), 2.0);
  REQUIRE(cert);
  CHECK(cert->ratio == doctest::Approx(hand.get_d()));
  CHECK(cert->suggested_m() == doctest::Approx(20.0));
  CHECK(check_certificate(*cert).ok);
}

TEST_CASE("dual of a kernel") {
  const SubspaceRep w = ker(1, 3, {1, 1, 1});
  const SubspaceRep d = w.dual();
  CHECK(d.dim() == 1);
  CHECK(d.contains(vec({1, 1, 1})));
  CHECK(w.contains(vec({1, -1, 0})));
}
