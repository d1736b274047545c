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
#include "proxlp/approx_solver.hpp"
#include "proxlp/extended_init.hpp"

using namespace proxlp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(v.size());
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

SolverRequest single_point(double delta) {
  SolverRequest req;
  req.a = Matrix::Ones(1, 1);
  req.b = vec({1});
  req.c = vec({1});
  req.x0 = vec({1});
  req.y0 = vec({0});
  req.s0 = vec({1});
  req.delta = delta;
  req.rp = req.rd = 2.0;
  return req;
}

// min x1, x1 + x2 = 1, x >= 0
SolverRequest box_lp(double delta) {
  SolverRequest req;
  req.a = Matrix::Ones(1, 2);
  req.b = vec({1});
  req.c = vec({1, 0});
  req.x0 = vec({0.5, 0.5});
  req.y0 = vec({-1});
  req.s0 = vec({2, 1});
  req.delta = delta;
  req.rp = req.rd = 4.0;
  return req;
}

}  // namespace

TEST_CASE("solver on a single feasible point") {
  const SolverResponse r = ApproxSolver().solve(single_point(1e-6));
  CHECK(r.x(0) >= 1 - 1e-3);
  CHECK(r.x(0) <= 1 + 1e-3);
  const ContractMeasure m = measure_contract(single_point(1e-6), r.x, r.y, r.s);
  CHECK(m.gap <= m.gap_bound);
}

TEST_CASE("solver on the box lp") {
  const SolverRequest req = box_lp(1e-8);
  const SolverResponse r = ApproxSolver().solve(req);
  const ContractMeasure m = measure_contract(req, r.x, r.y, r.s);
  CHECK(m.ok(1.0 + 1e-7));
  CHECK(r.x(0) <= m.gap_bound + 1e-12);
  CHECK(req.c.dot(r.x) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("vacuous accuracy accepts the start") {
  SolverRequest req = box_lp(1.0);
  ApproxSolver s;
  s.register_external_solver([](const SolverRequest& q) {
    SolverResponse r;
    r.x = q.x0;
    r.y = q.y0;
    r.s = q.s0;
    return r;
  });
  const SolverResponse r = s.solve(req);
  CHECK(r.x == req.x0);
}

TEST_CASE("external solver contract") {
  const SolverRequest req = box_lp(1e-8);
  ApproxSolver same;
  same.register_external_solver(
      [](const SolverRequest& q) { return builtin_ipm(q); });
  CHECK(same.has_adapter());
  const SolverResponse a = same.solve(req);
  const SolverResponse b = ApproxSolver().solve(req);
  CHECK((a.x - b.x).norm() == 0.0);

  ApproxSolver negative;
  negative.register_external_solver([](const SolverRequest& q) {
    SolverResponse r = builtin_ipm(q);
    r.x(0) = -1.0;
    return r;
  });
  CHECK_THROWS_AS(negative.solve(req), Error);
  try {
    negative.solve(req);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kContractViolation);
  }

  ApproxSolver inflated;
  inflated.register_external_solver([](const SolverRequest& q) {
    SolverResponse r = builtin_ipm(q);
    r.x *= 3.0;
    return r;
  });
  try {
    inflated.solve(req);
    FAIL("inflated residuals accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kContractViolation);
  }
}

TEST_CASE("request and response text round trip") {
  const SolverRequest req = box_lp(1e-9);
  const SolverRequest back = parse_request(serialize_request(req));
  CHECK(back.a == req.a);
  CHECK(back.c == req.c);
  CHECK(back.x0 == req.x0);
  CHECK(back.delta == req.delta);
  const SolverResponse r = builtin_ipm(req);
  const SolverResponse rb = parse_response(serialize_response(r));
  CHECK(rb.x == r.x);
  CHECK(rb.s == r.s);
}

TEST_CASE("subprocess adapter") {
  const SolverRequest req = box_lp(1e-8);
  ApproxSolver ext;
  ext.register_external_solver(subprocess_adapter(PROXLP_STUB_SOLVER));
  const SolverResponse r = ext.solve(req);
  CHECK(r.x(0) == doctest::Approx(0.0).epsilon(1e-6));

  ApproxSolver fails;
  fails.register_external_solver(
      subprocess_adapter(std::string(PROXLP_STUB_SOLVER) + " --fail"));
  CHECK_THROWS_AS(fails.solve(req), Error);

  ApproxSolver garbage;
  garbage.register_external_solver(
      subprocess_adapter(std::string(PROXLP_STUB_SOLVER) + " --garbage"));
  try {
    garbage.solve(req);
    FAIL("the start point passed as an 1e-8 solution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kContractViolation);
  }
}

TEST_CASE("extended system dimensions") {
  const SubspaceRep w = SubspaceRep::from_matrix(Matrix::Ones(1, 2));
  const ExtendedSystem e = build_extended(w, vec({1, 0}), vec({1, 0}), 2.0, 0.0);
  CHECK(e.m_p == 4.0);
  CHECK(e.m_d == 4.0);
  const ExtendedSystem f = build_extended(
      SubspaceRep::from_matrix(Matrix::Ones(1, 3)), Vector::Zero(3),
      Vector::Zero(3), 2.0, 0.0);
  CHECK(f.a_hat.rows() == 4);
  CHECK(f.a_hat.cols() == 9);
}

TEST_CASE("initial point") {
  // W = R, d = 1, c = 1, M = 2, so M_D = M_P = 4.
  const SubspaceRep w = SubspaceRep::from_matrix(Matrix::Zero(1, 1));
  const ExtendedSystem e = build_extended(w, vec({1}), vec({1}), 2.0, 0.0);
  auto [p, q] = initial_point(e);
  CHECK(p.x(0) == doctest::Approx(11.0 / 3));
  CHECK(p.xl(0) == doctest::Approx(8.0 / 3));
  CHECK(p.xu(0) == doctest::Approx(5.0 / 3));
  const SolverRequest req = extended_request(e, 1e-3);
  // feasible start, so the gap is <x0, s0>
  CHECK((req.a * req.x0 - req.b).norm() < 1e-12);
  CHECK((req.a.transpose() * req.y0 + req.s0 - req.c).norm() < 1e-12);
  const double gap = req.x0.dot(req.s0);
  const double expect = 4.0 / 3 * 1 * e.m_p * e.m_d;
  CHECK(gap >= expect / 2);
  CHECK(gap <= expect * 2);

  const ExtendedSystem z = build_extended(
      SubspaceRep::from_matrix(Matrix::Ones(1, 3)), Vector::Zero(3),
      Vector::Zero(3), 2.0, 0.0, 3.0, 3.0);
  auto [pz, qz] = initial_point(z);
  CHECK((pz.x - Vector::Constant(3, 2.0)).norm() < 1e-15);
  CHECK((qz.s - Vector::Constant(3, 2.0)).norm() < 1e-15);
}

TEST_CASE("repair to subspace") {
  const SubspaceRep w = SubspaceRep::from_matrix(Matrix::Ones(1, 2));
  const ExtendedSystem e = build_extended(w, Vector::Zero(2), vec({1, 0}),
                                          2.0, 0.0, 3.0, 3.0);
  const SolverRequest req = extended_request(e, 1e-3);
  SolverResponse raw;
  raw.x = req.x0;
  raw.y = req.y0;
  raw.s = req.s0;
  raw.measure = measure_contract(req, raw.x, raw.y, raw.s);

  const ApproxSolution same = repair_to_subspace(e, raw);
  CHECK((same.primal.x - raw.x.head(2)).norm() == 0.0);
  CHECK((same.primal.xl - raw.x.segment(2, 2)).norm() == 0.0);
  CHECK((same.dual.s - raw.s.head(2)).norm() == 0.0);

  // residual 0.5 on the only row, whose basis column is x1
  SolverResponse off = raw;
  off.x(0) += 0.5;
  off.measure.primal_bound = 1.0;
  const ApproxSolution fixed = repair_to_subspace(e, off);
  CHECK(fixed.primal.x(0) == doctest::Approx(raw.x(0) + 1.0));
  CHECK(fixed.primal.x(1) == doctest::Approx(raw.x(1) + 1.0));
  CHECK(w.contains(fixed.primal.x - fixed.primal.xl));

  off.measure.primal_bound = 1e-6;
  try {
    repair_to_subspace(e, off);
    FAIL("large residual accepted");
  } catch (const Error& ex) {
    CHECK(ex.kind() == ErrorKind::kResidualTooLarge);
  }
}
