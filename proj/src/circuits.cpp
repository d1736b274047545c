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

#include "proxlp/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace proxlp {
namespace {

void require_member(const SubspaceRep& w, const Vector& v) {
  if (!w.contains(v))
    throw Error(ErrorKind::kNotInSubspace,
                "residual " + std::to_string(w.residual(v)));
}

// Kernel basis of a (columns in local order), one vector per free column.
std::vector<Vector> kernel_basis(const Matrix& a, double zero_tol) {
  const int n = static_cast<int>(a.cols());
  PivotResult pr = pivot_on(a, full_set(n), zero_tol);
  std::vector<char> is_pivot(n, 0);
  for (int c : pr.pivot_cols) is_pivot[c] = 1;
  std::vector<Vector> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector h = Vector::Zero(n);
    h[f] = 1.0;
    for (int r = 0; r < pr.rank; ++r) h[pr.pivot_cols[r]] = -pr.w(r, f);
    basis.push_back(h);
  }
  return basis;
}

}  // namespace

std::vector<Circuit> sign_consistent_decompose(const SubspaceRep& w,
                                               const Vector& z) {
  require_member(w, z);
  const int n = w.n();
  const double tol = w.tol().zero_tol * norm_inf(z);
  Vector rem = z;
  for (int i = 0; i < n; ++i)
    if (std::abs(rem[i]) <= tol) rem[i] = 0.0;

  std::vector<Circuit> out;
  for (int round = 0; round <= n; ++round) {
    IndexSet s;
    for (int i = 0; i < n; ++i)
      if (rem[i] != 0.0) s.push_back(i);
    if (s.empty()) break;

    // Shrink y (conformal to rem) until its support is a circuit.
    Vector y = restrict_to(rem, s);
    while (true) {
      const Matrix ns =
          w.codim() ? columns(w.normal(), s) : Matrix(0, s.size());
      std::vector<Vector> ker = kernel_basis(ns, w.tol().zero_tol);
      if (ker.size() <= 1) break;
      Vector h;
      for (const Vector& b : ker) {
        const Vector perp = b - (b.dot(y) / y.dot(y)) * y;
        if (perp.norm() > 1e-9 * b.norm()) {
          h = b;
          break;
        }
      }
      if (h.size() == 0) break;
      double t_best = kInf;
      for (int k = 0; k < h.size(); ++k) {
        if (h[k] == 0.0) continue;
        const double t = -y[k] / h[k];
        if (std::abs(t) < std::abs(t_best)) t_best = t;
      }
      y += t_best * h;
      const double ytol = w.tol().zero_tol * norm_inf(y);
      IndexSet s2;
      Vector y2(s.size());
      int cnt = 0;
      for (size_t k = 0; k < s.size(); ++k) {
        // Entries at zero or sign-flipped by round-off leave the support.
        if (std::abs(y[k]) <= ytol || y[k] * rem[s[k]] < 0) continue;
        s2.push_back(s[k]);
        y2[cnt++] = y[k];
      }
      s = s2;
      y = y2.head(cnt);
    }

    Circuit c;
    c.support = s;
    const double scale = norm_inf(y);
    c.g = scatter(n, s, y / scale);
    double lambda = kInf;
    for (int i : s) lambda = std::min(lambda, rem[i] / c.g[i]);
    c.coef = lambda;
    rem -= lambda * c.g;
    const double rtol = w.tol().zero_tol * norm_inf(z);
    for (int i = 0; i < n; ++i)
      if (std::abs(rem[i]) <= rtol || rem[i] * z[i] < 0) rem[i] = 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

ConicDecomposition eliminate_on(const SubspaceRep& w, const Vector& y,
                                const IndexSet& j) {
  require_member(w, y);
  const int n = w.n();
  ConicDecomposition out;
  const double tol = w.tol().zero_tol * std::max(norm_inf(y), 1e-300);
  std::vector<char> in_j(n, 0), in_t(n, 0);
  bool yj_zero = true;
  for (int i : j) {
    in_j[i] = 1;
    if (std::abs(y[i]) > tol) yj_zero = false;
  }
  if (yj_zero) {
    out.z = y;
    return out;
  }
  Vector yh = y;
  for (int i = 0; i < n; ++i)
    if (!in_j[i] && std::abs(yh[i]) <= tol) {
      yh[i] = 0.0;
      in_t[i] = 1;
    }
  double alpha_hat = 1.0;
  for (int iter = 0; iter <= n + 1; ++iter) {
    // What is left of alpha_hat is round-off.
    if (alpha_hat <=
        64.0 * std::numeric_limits<double>::epsilon() * (n + 1)) {
      for (int i : j) yh[i] = 0.0;
      break;
    }
    ++out.iterations;
    std::vector<int> cand;
    for (int i = 0; i < n; ++i)
      if (!in_j[i] && !in_t[i]) cand.push_back(i);
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
      return std::abs(yh[a]) > std::abs(yh[b]);
    });
    Vector yp = Vector::Zero(n);
    for (int i : j) yp[i] = y[i];
    std::vector<int> bas;
    if (w.codim() > 0) {
      PivotResult pr = pivot_on(w.normal(), cand, w.tol().zero_tol);
      bas = pr.pivot_cols;
      for (int r = 0; r < pr.rank; ++r) {
        double v = 0.0;
        for (int i : j) v -= pr.w(r, i) * y[i];
        yp[bas[r]] = v;
      }
    }
    double alpha = alpha_hat;
    bool last = true;
    for (int i : bas) {
      if (yp[i] != 0.0 && (yp[i] > 0) == (yh[i] > 0)) {
        const double a = yh[i] / yp[i];
        if (a < alpha) {
          alpha = a;
          last = false;
        }
      }
    }
    yh -= alpha * yp;
    alpha_hat -= alpha;
    out.terms.emplace_back(alpha, yp);
    if (last) {
      for (int i : j) yh[i] = 0.0;
      break;
    }
    bool grew = false;
    for (int i = 0; i < n; ++i) {
      if (in_j[i] || in_t[i]) continue;
      if (std::abs(yh[i]) <= tol || yh[i] * y[i] < 0) {
        yh[i] = 0.0;
        in_t[i] = 1;
        grew = true;
      }
    }
    if (!grew)
      throw Error(ErrorKind::kInternalInconsistency,
                  "eliminate_on: zeroed set did not grow");
  }
  for (int i = 0; i < n; ++i)
    if (yh[i] * y[i] < 0 || std::abs(yh[i]) <= tol) yh[i] = 0.0;
  out.z = yh;
  return out;
}

namespace {

std::optional<LiftingCertificate> violating_generator(
    const SubspaceRep& w, const ConicDecomposition& dec, const IndexSet& j,
    double bound, double m) {
  for (const auto& [alpha, g] : dec.terms) {
    if (alpha <= 0.0) continue;
    if (norm_inf(g) <= bound) continue;
    IndexSet idx = j;
    const double t = w.tol().zero_tol * norm_inf(g);
    for (int i = 0; i < w.n(); ++i)
      if (std::abs(g[i]) <= t) idx.push_back(i);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    auto cert = check_lift_certificate(w, idx, restrict_to(g, idx), m);
    if (cert) return cert;
  }
  return std::nullopt;
}

}  // namespace

VectorOrCert eliminate_with_proximity(const SubspaceRep& w, const Vector& y,
                                      const IndexSet& j, double m) {
  ConicDecomposition dec = eliminate_on(w, y, j);
  const double bound = m * norm1(restrict_to(y, j));
  if (auto cert = violating_generator(w, dec, j, bound, m)) return *cert;
  return dec.z;
}

VectorOrCert hoffman_point(const SubspaceRep& w, const Vector& x,
                           const Vector& l, const Vector& u, double m) {
  require_member(w, x);
  const int n = w.n();
  Vector target = Vector::Zero(n);
  std::vector<char> in_p(n, 0);
  double scale = norm_inf(x);
  for (int i = 0; i < n; ++i) {
    if (l[i] > 0) {
      target[i] = l[i];
      in_p[i] = 1;
    } else if (u[i] < 0) {
      target[i] = u[i];
      in_p[i] = 1;
    }
    scale = std::max(scale, std::abs(target[i]));
  }
  const double tol = w.tol().zero_tol * std::max(scale, 1e-300);
  for (int i = 0; i < n; ++i)
    if (x[i] < l[i] - tol || x[i] > u[i] + tol)
      throw Error(ErrorKind::kInfeasibleBounds,
                  "start point violates bound at " + std::to_string(i));
  if (target.isZero(0.0)) return Vector(Vector::Zero(n));

  Vector y = x;
  for (int iter = 0; iter <= n + 1; ++iter) {
    IndexSet j;
    std::vector<char> tight(n, 0);
    for (int i = 0; i < n; ++i) {
      if (in_p[i]) {
        if (std::abs(y[i] - target[i]) <= tol) {
          y[i] = target[i];
          tight[i] = 1;
          j.push_back(i);
        }
      } else if (std::abs(y[i]) <= tol) {
        y[i] = 0.0;
        tight[i] = 1;
        j.push_back(i);
      }
    }
    ConicDecomposition dec = eliminate_on(w, y, j);
    const Vector& z = dec.z;
    if (norm_inf(z) <= tol) {
      const double bound = m * norm1(restrict_to(y, j));
      if (auto cert = violating_generator(w, dec, j, bound, m)) return *cert;
      return Vector(y - z);
    }
    // z is conformal to y off J, so alpha = 1 stays within the bounds.
    double alpha = 1.0;
    for (int i = 0; i < n; ++i) {
      // rounding noise on J would stall the step
      if (tight[i] || std::abs(z[i]) <= tol) continue;
      double a = kInf;
      if (in_p[i]) {
        if (l[i] > 0 && z[i] > 0) a = (y[i] - l[i]) / z[i];
        if (u[i] < 0 && z[i] < 0) a = (y[i] - u[i]) / z[i];
      } else {
        a = y[i] / z[i];
      }
      alpha = std::min(alpha, std::max(a, 0.0));
    }
    y -= alpha * z;
  }
  throw Error(ErrorKind::kInternalInconsistency,
              "hoffman_point: tight set did not grow");
}

}  // namespace proxlp
