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

#ifndef PROXLP_KERNELS_HPP_
#define PROXLP_KERNELS_HPP_

#include "proxlp/numerics.hpp"

namespace proxlp::kernels {

// A diag(d) A^t. The serial version is the reference.
Matrix normal_matrix_serial(const Matrix& a, const Vector& d);
Matrix normal_matrix_parallel(const Matrix& a, const Vector& d);
// Picks the parallel kernel above a size threshold.
Matrix normal_matrix(const Matrix& a, const Vector& d);

// Work size (rows * rows * cols) above which normal_matrix goes parallel.
constexpr long kParallelThreshold = 1L << 18;

}  // namespace proxlp::kernels

#endif  // PROXLP_KERNELS_HPP_
