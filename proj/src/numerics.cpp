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

#include "proxlp/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace proxlp {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kInconsistentProjection: return "InconsistentProjection";
    case ErrorKind::kNotInSubspace: return "NotInSubspace";
    case ErrorKind::kInfeasibleBounds: return "InfeasibleBounds";
    case ErrorKind::kNotInterior: return "NotInterior";
    case ErrorKind::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::kIterationLimit: return "IterationLimit";
    case ErrorKind::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorKind::kContractViolation: return "ContractViolation";
    case ErrorKind::kInternalInconsistency: return "InternalInconsistency";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kRestartLimit: return "RestartLimit";
  }
  return "Unknown";
}

PivotResult pivot_on(const Matrix& a, const std::vector<int>& order,
                     double zero_tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  PivotResult out;
  out.w = a;
  Matrix& w = out.w;
  out.row_id.resize(m);
  for (int i = 0; i < m; ++i) out.row_id[i] = i;
  const double scale =
      m * n > 0 ? std::max(w.cwiseAbs().maxCoeff(), 1e-300) : 1.0;
  const double tol = zero_tol * scale;
  int r = 0;
  for (int j : order) {
    if (r == m) break;
    int piv = -1;
    double best = tol;
    for (int i = r; i < m; ++i) {
      if (std::abs(w(i, j)) > best) {
        best = std::abs(w(i, j));
        piv = i;
      }
    }
    if (piv < 0) {
      for (int i = r; i < m; ++i) w(i, j) = 0.0;
      continue;
    }
    if (piv != r) {
      w.row(piv).swap(w.row(r));
      std::swap(out.row_id[piv], out.row_id[r]);
    }
    w.row(r) /= w(r, j);
    w(r, j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r || w(i, j) == 0.0) continue;
      w.row(i) -= w(i, j) * w.row(r);
      w(i, j) = 0.0;
    }
    out.pivot_cols.push_back(j);
    ++r;
  }
  out.rank = r;
  return out;
}

NormalForm row_reduce(const Matrix& a, double zero_tol,
                      const std::vector<int>& order) {
  const int n = static_cast<int>(a.cols());
  std::vector<int> cols = order;
  if (cols.empty()) cols = full_set(n);
  PivotResult pr = pivot_on(a, cols, zero_tol);
  NormalForm out;
  out.basis = pr.pivot_cols;
  out.normal = pr.w.topRows(pr.rank);
  // Clean entries that are pure round-off.
  for (int i = 0; i < pr.rank; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(out.normal(i, j)) <= zero_tol) out.normal(i, j) = 0.0;
  out.kept_rows.assign(pr.row_id.begin(), pr.row_id.begin() + pr.rank);
  return out;
}

NormalForm gaussian_normalize(const Matrix& a, double zero_tol) {
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  std::vector<int> nonzero;
  for (int i = 0; i < a.rows(); ++i)
    if (a.row(i).cwiseAbs().maxCoeff() > zero_tol * scale) nonzero.push_back(i);
  Matrix b(nonzero.size(), a.cols());
  for (size_t k = 0; k < nonzero.size(); ++k) b.row(k) = a.row(nonzero[k]);
  NormalForm nf = row_reduce(b, zero_tol);
  if (nf.basis.size() < nonzero.size())
    throw Error(ErrorKind::kRankDeficient,
                "only " + std::to_string(nf.basis.size()) + " of " +
                    std::to_string(nonzero.size()) + " rows independent");
  for (auto& k : nf.kept_rows) k = nonzero[k];
  return nf;
}

Vector least_squares(const Matrix& a, const Vector& b) {
  if (a.cols() == 0) return Vector(0);
  if (a.rows() == 0) return Vector::Zero(a.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  return cod.solve(b);
}

Vector project_orthogonal(const Matrix& m, const Vector& v) {
  if (m.rows() == 0) return Vector::Zero(v.size());
  Matrix mt = m.transpose();
  return mt * least_squares(mt, v);
}

double norm1(const Vector& v) { return v.size() ? v.lpNorm<1>() : 0.0; }
double norm_inf(const Vector& v) {
  return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0;
}
Vector neg_part(const Vector& v) { return (-v).cwiseMax(0.0); }
Vector pos_part(const Vector& v) { return v.cwiseMax(0.0); }

Vector restrict_to(const Vector& v, const IndexSet& idx) {
  Vector out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
  return out;
}

Vector scatter(int n, const IndexSet& idx, const Vector& vals) {
  Vector out = Vector::Zero(n);
  for (size_t k = 0; k < idx.size(); ++k) out[idx[k]] = vals[k];
  return out;
}

Matrix columns(const Matrix& a, const IndexSet& idx) {
  Matrix out(a.rows(), idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out.col(k) = a.col(idx[k]);
  return out;
}

IndexSet full_set(int n) {
  IndexSet s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

IndexSet complement(const IndexSet& s, int n) {
  return set_difference(full_set(n), s);
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<int> positions_in(const IndexSet& super, const IndexSet& sub) {
  std::vector<int> pos;
  pos.reserve(sub.size());
  size_t k = 0;
  for (int v : sub) {
    while (k < super.size() && super[k] < v) ++k;
    if (k == super.size() || super[k] != v)
      throw Error(ErrorKind::kInternalInconsistency, "index not in superset");
    pos.push_back(static_cast<int>(k));
  }
  return pos;
}

IndexSet compose(const IndexSet& outer, const IndexSet& local) {
  IndexSet out;
  out.reserve(local.size());
  for (int i : local) out.push_back(outer[i]);
  return out;
}

IndexSet support(const Vector& v, double zero_tol) {
  const double t = zero_tol * norm_inf(v);
  IndexSet s;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > t) s.push_back(i);
  return s;
}

IndexSet neg_support(const Vector& v, double zero_tol) {
  const double t = zero_tol * norm_inf(v);
  IndexSet s;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] < -t) s.push_back(i);
  return s;
}

IndexSet pos_support(const Vector& v, double zero_tol) {
  const double t = zero_tol * norm_inf(v);
  IndexSet s;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] > t) s.push_back(i);
  return s;
}

IndexSet lambda_set(const Vector& a, const Vector& b, double zero_tol) {
  return set_union(neg_support(a, zero_tol), pos_support(b, zero_tol));
}

}  // namespace proxlp
