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

#include "proxlp/kernels.hpp"

#include <omp.h>

namespace proxlp::kernels {

Matrix normal_matrix_serial(const Matrix& a, const Vector& d) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) s += a(i, k) * d[k] * a(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

Matrix normal_matrix_parallel(const Matrix& a, const Vector& d) {
  const long m = a.rows(), n = a.cols();
  Matrix out = Matrix::Zero(m, m);
  // Rows of the lower triangle are independent; dynamic schedule evens out
  // the triangular work.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= i; ++j) {
      double s = 0.0;
      for (long k = 0; k < n; ++k) s += a(i, k) * d[k] * a(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

Matrix normal_matrix(const Matrix& a, const Vector& d) {
  const long work = static_cast<long>(a.rows()) * a.rows() * a.cols();
  if (work >= kParallelThreshold && omp_get_max_threads() > 1)
    return normal_matrix_parallel(a, d);
  return normal_matrix_serial(a, d);
}

}  // namespace proxlp::kernels
