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

#include "proxlp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace proxlp {
namespace {

struct ExactSpace {
  QMatrix a;
  int n = 0;
};

QMatrix select_columns(const QMatrix& a, const IndexSet& cols) {
  QMatrix out(a.size(), QVector(cols.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < cols.size(); ++k) out[i][k] = a[i][cols[k]];
  return out;
}

QVector select(const QVector& v, const IndexSet& idx) {
  QVector out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
  return out;
}

// Gauss-Jordan that pivots only on `cols`. `pivots` holds the rows that
// received a pivot, `rest` the rows that end up zero on all of `cols`.
struct Split {
  QMatrix pivots, rest;
  bool full = true;  // every column of `cols` got a pivot
};

Split gauss_on(QMatrix a, const IndexSet& cols) {
  Split out;
  size_t row = 0;
  for (int c : cols) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) {
      out.full = false;
      continue;
    }
    std::swap(a[p], a[row]);
    const Rational piv = a[row][c];
    for (auto& v : a[row]) v /= piv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (size_t k = 0; k < a[i].size(); ++k) a[i][k] -= f * a[row][k];
    }
    ++row;
  }
  out.pivots.assign(a.begin(), a.begin() + row);
  out.rest.assign(a.begin() + row, a.end());
  return out;
}

QMatrix eliminate_columns(const QMatrix& a, const IndexSet& cols) {
  return gauss_on(a, cols).rest;
}

ExactSpace replay(const std::shared_ptr<const Provenance>& p) {
  using Op = Provenance::Op;
  if (!p) throw Error(ErrorKind::kInternalInconsistency, "no provenance");
  if (p->op == Op::kRoot)
    return {to_rational(p->root), static_cast<int>(p->root.cols())};
  ExactSpace par = replay(p->parent);
  ExactSpace out;
  switch (p->op) {
    case Op::kProject: {
      const IndexSet rest = complement(p->index, par.n);
      out.a = select_columns(eliminate_columns(par.a, rest), p->index);
      out.n = static_cast<int>(p->index.size());
      break;
    }
    case Op::kFix:
      out.a = select_columns(par.a, p->index);
      out.n = static_cast<int>(p->index.size());
      break;
    case Op::kDual:
      out.a = kernel_basis(par.a, par.n);
      out.n = par.n;
      break;
    case Op::kRoot:
      break;
  }
  return out;
}

// Some solution of g u = r, or nullopt when inconsistent.
std::optional<QVector> solve_any(const QMatrix& g, const QVector& r) {
  const size_t k = g.empty() ? 0 : g[0].size();
  QMatrix aug(g.size(), QVector(k + 1));
  for (size_t i = 0; i < g.size(); ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = g[i][j];
    aug[i][k] = r[i];
  }
  std::vector<int> piv = rref(aug);
  QVector u(k, 0);
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == static_cast<int>(k)) return std::nullopt;
    u[piv[i]] = aug[i][k];
  }
  return u;
}

QMatrix gram(const QMatrix& b) {
  QMatrix g(b.size(), QVector(b.size()));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i; j < b.size(); ++j) {
      Rational s = 0;
      for (size_t k = 0; k < b[i].size(); ++k) s += b[i][k] * b[j][k];
      g[i][j] = g[j][i] = s;
    }
  return g;
}

QVector mul(const QMatrix& b, const QVector& v) {
  QVector out(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t k = 0; k < v.size(); ++k) out[i] += b[i][k] * v[k];
  return out;
}

QVector mul_t(const QMatrix& b, const QVector& u, size_t n) {
  QVector out(n, 0);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t k = 0; k < n; ++k) out[k] += b[i][k] * u[i];
  return out;
}

// Coefficients u with b^t u the projection of v onto the row space of b.
QVector row_space_coeffs(const QMatrix& b, const QVector& v) {
  if (b.empty()) return {};
  auto u = solve_any(gram(b), mul(b, v));
  if (!u)
    throw Error(ErrorKind::kInternalInconsistency, "singular Gram system");
  return *u;
}

Rational norm1(const QVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

Rational norm_inf(const QVector& v) {
  Rational s = 0;
  for (const auto& x : v) s = std::max(s, Rational(abs(x)));
  return s;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

CertReport fail(const std::string& line, double measured = 0.0) {
  CertReport r;
  r.violated = line;
  r.measured = measured;
  return r;
}

// Rows of `a` after row reduction, dependent rows dropped.
QMatrix independent_rows(QMatrix a) {
  std::vector<int> piv = rref(a);
  a.resize(piv.size());
  return a;
}

// a_B^{-1} a for a matrix a of full row rank, if the columns form a basis.
std::optional<QMatrix> basis_tableau(const QMatrix& a, const IndexSet& cols) {
  Split sp = gauss_on(a, cols);
  if (!sp.full) return std::nullopt;
  return sp.pivots;
}

template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Imbalance of the circuit on `cols`, or 0 if `cols` is not a circuit.
Rational circuit_ratio(const QMatrix& a, const IndexSet& cols) {
  const QMatrix ac = select_columns(a, cols);
  const int k = static_cast<int>(cols.size());
  std::vector<QVector> ker = kernel_basis(ac, k);
  if (ker.size() != 1) return 0;
  Rational lo = -1, hi = 0;
  for (const auto& v : ker[0]) {
    if (v == 0) return 0;
    const Rational av = abs(v);
    if (lo < 0 || av < lo) lo = av;
    hi = std::max(hi, av);
  }
  return hi / lo;
}

Rational kappa_enumerate(const QMatrix& a0, int n, bool parallel) {
  if (n > kKappaGuard)
    throw TooLarge("brute_kappa enumeration limited to n <= " +
                   std::to_string(kKappaGuard));
  const QMatrix a = independent_rows(a0);
  const int r = static_cast<int>(a.size());
  if (r == n) return 1;
  const long long total = 1LL << n;
  Rational best = 1;
#pragma omp parallel if (parallel)
  {
    Rational local = 1;
#pragma omp for schedule(dynamic, 64)
    for (long long mask = 1; mask < total; ++mask) {
      const int pc = __builtin_popcountll(static_cast<unsigned long long>(mask));
      if (pc > r + 1) continue;
      IndexSet cols;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) cols.push_back(j);
      const Rational q = circuit_ratio(a, cols);
      if (q > local) local = q;
    }
#pragma omp critical
    if (local > best) best = local;
  }
  return best;
}

}  // namespace

QVector to_rational(const Vector& v) {
  QVector out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

QMatrix to_rational(const Matrix& a) {
  QMatrix out(a.rows(), QVector(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i][j] = Rational(a(i, j));
  return out;
}

Vector to_double(const QVector& v) {
  Vector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

std::vector<int> rref(QMatrix& a) {
  std::vector<int> piv;
  if (a.empty()) return piv;
  const size_t cols = a[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational pv = a[row][c];
    for (auto& v : a[row]) v /= pv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (size_t k = c; k < cols; ++k) a[i][k] -= f * a[row][k];
    }
    piv.push_back(static_cast<int>(c));
    ++row;
  }
  return piv;
}

std::vector<QVector> kernel_basis(const QMatrix& a0, int n) {
  QMatrix a = a0;
  std::vector<int> piv = rref(a);
  std::vector<char> is_piv(n, 0);
  for (int p : piv) is_piv[p] = 1;
  std::vector<QVector> out;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    QVector h(n, 0);
    h[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) h[piv[r]] = -a[r][f];
    out.push_back(std::move(h));
  }
  return out;
}

QMatrix exact_matrix(const SubspaceRep& w) {
  return replay(w.provenance()).a;
}

QMatrix orthogonal_complement(const QMatrix& a, int n) {
  return kernel_basis(a, n);
}

SimplexResult rational_simplex(const QMatrix& a, const QVector& b,
                               const QVector& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  const int rhs = n + m;
  SimplexResult res;
  std::vector<int> sigma(m, 1);
  QMatrix t(m, QVector(n + m + 1, 0));
  std::vector<int> basis(m);
  std::vector<char> basic(n + m, 0);
  for (int i = 0; i < m; ++i) {
    sigma[i] = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t[i][j] = sigma[i] * a[i][j];
    t[i][n + i] = 1;
    t[i][rhs] = sigma[i] * b[i];
    basis[i] = n + i;
    basic[n + i] = 1;
  }
  auto pivot = [&](int r, int col) {
    const Rational pv = t[r][col];
    for (auto& v : t[r]) v /= pv;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][col] == 0) continue;
      const Rational f = t[i][col];
      for (int k = 0; k <= rhs; ++k) t[i][k] -= f * t[r][k];
    }
    basic[basis[r]] = 0;
    basis[r] = col;
    basic[col] = 1;
    ++res.pivots;
  };
  // Bland's rule over columns < n; returns the unbounded column or -1.
  auto run = [&](const QVector& cost) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n && enter < 0; ++j) {
        if (basic[j]) continue;
        Rational rc = cost[j];
        for (int i = 0; i < m; ++i) rc -= cost[basis[i]] * t[i][j];
        if (rc < 0) enter = j;
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        const Rational ratio = t[i][rhs] / t[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  };
  auto duals = [&](const QVector& cost) {
    QVector y(m, 0);
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) y[k] += cost[basis[i]] * t[i][n + k];
      y[k] *= sigma[k];
    }
    return y;
  };

  QVector cost1(n + m, 0);
  for (int i = 0; i < m; ++i) cost1[n + i] = 1;
  run(cost1);
  Rational phase1 = 0;
  for (int i = 0; i < m; ++i) phase1 += cost1[basis[i]] * t[i][rhs];
  if (phase1 > 0) {
    res.status = SimplexStatus::kInfeasible;
    res.farkas = duals(cost1);
    for (auto& v : res.farkas) v = -v;
    return res;
  }
  // Drive zero-level artificials out; rows without a pivot are redundant.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (!basic[j] && t[i][j] != 0) {
        pivot(i, j);
        break;
      }
  }
  QVector cost2(n + m, 0);
  for (int j = 0; j < n; ++j) cost2[j] = c[j];
  const int unb = run(cost2);
  if (unb >= 0) {
    res.status = SimplexStatus::kUnbounded;
    res.ray.assign(n, 0);
    res.ray[unb] = 1;
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) res.ray[basis[i]] = -t[i][unb];
    return res;
  }
  res.status = SimplexStatus::kOptimal;
  res.x.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) {
      res.x[basis[i]] = t[i][rhs];
      res.basis.push_back(basis[i]);
    }
  std::sort(res.basis.begin(), res.basis.end());
  res.opt = dot(c, res.x);
  res.y = duals(cost2);
  return res;
}

Rational brute_kappa(const QMatrix& a, int n) {
  return kappa_enumerate(a, n, true);
}

Rational brute_kappa_serial(const QMatrix& a, int n) {
  return kappa_enumerate(a, n, false);
}

Rational kappa_via_bases(const QMatrix& a0, int n) {
  if (n > kKappaGuard) throw TooLarge("kappa_via_bases: n too large");
  const QMatrix a = independent_rows(a0);
  const int r = static_cast<int>(a.size());
  Rational best = 1;
  if (r == 0 || r == n) return best;
  for_each_subset(n, r, [&](const std::vector<int>& cols) {
    auto t = basis_tableau(a, cols);
    if (!t) return;
    for (const auto& row : *t)
      for (const auto& v : row) best = std::max(best, Rational(abs(v)));
  });
  return best;
}

double brute_chibar(const Matrix& a0) {
  const int n = static_cast<int>(a0.cols());
  if (n > kChiBarGuard) throw TooLarge("brute_chibar: n too large");
  const QMatrix a = independent_rows(to_rational(a0));
  const int r = static_cast<int>(a.size());
  if (r == 0) return 1.0;
  double best = 0.0;
  for_each_subset(n, r, [&](const std::vector<int>& cols) {
    auto t = basis_tableau(a, cols);
    if (!t) return;
    Matrix td(r, n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j) td(i, j) = (*t)[i][j].get_d();
    Eigen::JacobiSVD<Matrix> svd(td);
    best = std::max(best, svd.singularValues()[0]);
  });
  return best;
}

BandReport kappa_chi_band(const QMatrix& a0, int n) {
  BandReport rep;
  rep.kappa = brute_kappa(a0, n);
  const QMatrix a = independent_rows(a0);
  const int r = static_cast<int>(a.size());
  rep.max_row_sq = 1;
  rep.max_frob_sq = 0;
  if (r > 0) {
    for_each_subset(n, r, [&](const std::vector<int>& cols) {
      auto t = basis_tableau(a, cols);
      if (!t) return;
      Rational frob = 0;
      for (const auto& row : *t) {
        Rational rs = 0;
        for (const auto& v : row) rs += v * v;
        rep.max_row_sq = std::max(rep.max_row_sq, rs);
        frob += rs;
      }
      rep.max_frob_sq = std::max(rep.max_frob_sq, frob);
    });
  }
  const Rational k2 = rep.kappa * rep.kappa;
  rep.upper_ok = rep.kappa <= 1 || rep.max_row_sq >= 1 + k2;
  rep.lower_ok = rep.max_frob_sq <= Rational(n) * n * k2;
  return rep;
}

CertReport check_certificate(const LiftingCertificate& cert) {
  const ExactSpace sp = replay(cert.space.provenance());
  const int n = sp.n;
  if (n != cert.space.n()) return fail("dimension mismatch");
  const IndexSet& idx = cert.idx;
  const IndexSet rest = complement(idx, n);
  // Exact projection of p onto pi_I(W).
  QVector p = to_rational(cert.p);
  const QMatrix bi =
      independent_rows(select_columns(eliminate_columns(sp.a, rest), idx));
  if (!bi.empty()) {
    const QVector u = row_space_coeffs(bi, p);
    const QVector corr = mul_t(bi, u, idx.size());
    for (size_t k = 0; k < p.size(); ++k) p[k] -= corr[k];
  }
  const Rational p1 = norm1(p);
  if (p1 == 0) return fail("p projects to zero");
  // Minimum-norm completion on the other coordinates.
  QVector z(n, 0);
  for (size_t k = 0; k < idx.size(); ++k) z[idx[k]] = p[k];
  const QMatrix aj = select_columns(sp.a, rest);
  const QMatrix ai = select_columns(sp.a, idx);
  if (!rest.empty() && !sp.a.empty()) {
    QVector r = mul(ai, p);
    for (auto& v : r) v = -v;
    auto u = solve_any(gram(aj), r);
    if (!u) return fail("lift inconsistent");
    const QVector zj = mul_t(aj, *u, rest.size());
    // Gram solves only certify a^t u when the system a_J z_J = r holds.
    if (mul(aj, zj) != r) return fail("lift inconsistent");
    for (size_t k = 0; k < rest.size(); ++k) z[rest[k]] = zj[k];
  }
  const Rational zi = norm_inf(z);
  const Rational bound = Rational(cert.issued_at) * p1;
  const double measured = Rational(zi / p1).get_d();
  if (zi <= bound) return fail("||L(p)||_inf <= M ||p||_1", measured);
  CertReport ok;
  ok.ok = true;
  ok.measured = measured;
  return ok;
}

CertReport check_farkas_primal(const SubspaceRep& w, const Vector& d,
                               const Vector& y) {
  if (y.size() != w.n() || d.size() != w.n()) return fail("dimension");
  const ExactSpace sp = replay(w.provenance());
  const IndexSet s = support(y, w.tol().zero_tol);
  if (s.empty()) return fail("y = 0");
  const QMatrix bs = independent_rows(
      select_columns(eliminate_columns(sp.a, complement(s, sp.n)), s));
  if (bs.empty()) return fail("no element of W^perp on supp(y)");
  const QVector ys = select(to_rational(y), s);
  const QVector yp = mul_t(bs, row_space_coeffs(bs, ys), s.size());
  for (const auto& v : yp)
    if (v < 0) return fail("y >= 0");
  if (norm_inf(yp) == 0) return fail("y = 0");
  const Rational val = dot(select(to_rational(d), s), yp);
  CertReport r;
  r.measured = Rational(val / norm_inf(yp)).get_d();
  if (val >= 0) return fail("<d,y> < 0", r.measured);
  r.ok = true;
  return r;
}

CertReport check_farkas_primal(const QMatrix& a, const QVector& b,
                               const Vector& y) {
  const int n = static_cast<int>(y.size());
  const IndexSet s = support(y, 1e-11);
  if (s.empty()) return fail("y = 0");
  QMatrix aug = a;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  // Combinations of the rows of [a | b] that vanish off supp(y), reduced
  // on their a-part so the b column follows along.
  IndexSet cols = s;
  cols.push_back(n);
  const QMatrix red =
      select_columns(eliminate_columns(aug, complement(s, n)), cols);
  const QMatrix ind =
      gauss_on(red, full_set(static_cast<int>(s.size()))).pivots;
  if (ind.empty()) return fail("no element of row space on supp(y)");
  QMatrix as(ind.size(), QVector(s.size()));
  QVector bs(ind.size());
  for (size_t i = 0; i < ind.size(); ++i) {
    for (size_t k = 0; k < s.size(); ++k) as[i][k] = ind[i][k];
    bs[i] = ind[i][s.size()];
  }
  const QVector ys = select(to_rational(y), s);
  const QVector u = row_space_coeffs(as, ys);
  const QVector yp = mul_t(as, u, s.size());
  for (const auto& v : yp)
    if (v < 0) return fail("a^t y >= 0");
  if (norm_inf(yp) == 0) return fail("y = 0");
  const Rational val = dot(bs, u);
  CertReport r;
  r.measured = Rational(val / norm_inf(yp)).get_d();
  if (val >= 0) return fail("<b,y> < 0", r.measured);
  r.ok = true;
  return r;
}

CertReport check_farkas_dual(const SubspaceRep& w, const Vector& c,
                             const Vector& x) {
  if (x.size() != w.n() || c.size() != w.n()) return fail("dimension");
  const ExactSpace sp = replay(w.provenance());
  const IndexSet s = support(x, w.tol().zero_tol);
  if (s.empty()) return fail("x = 0");
  const QMatrix as = independent_rows(select_columns(sp.a, s));
  QVector xs = select(to_rational(x), s);
  if (!as.empty()) {
    const QVector corr = mul_t(as, row_space_coeffs(as, xs), s.size());
    for (size_t k = 0; k < xs.size(); ++k) xs[k] -= corr[k];
  }
  for (const auto& v : xs)
    if (v < 0) return fail("x >= 0");
  if (norm_inf(xs) == 0) return fail("x = 0");
  const Rational val = dot(select(to_rational(c), s), xs);
  CertReport r;
  r.measured = Rational(val / norm_inf(xs)).get_d();
  if (val >= 0) return fail("<c,x> < 0", r.measured);
  r.ok = true;
  return r;
}

}  // namespace proxlp
