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

#ifndef PROXLP_INSTANCE_HPP_
#define PROXLP_INSTANCE_HPP_

#include <string>

#include "proxlp/verify.hpp"

namespace proxlp {

// min <c,x>, a x = b, x >= 0. When the file gives d instead of b, b = a d.
// Exact copies keep the decimal values as written.
struct Instance {
  std::string name, family;
  Matrix a;
  Vector b, d, c;
  bool has_c = false;
  bool given_d = false;
  QMatrix a_q;
  QVector b_q, c_q;

  int m() const { return static_cast<int>(a.rows()); }
  int n() const { return static_cast<int>(a.cols()); }
};

// Format:
//   m n
//   m rows of a
//   b <m values>   or   d <n values>
//   [c <n values>]
// '#' starts a comment. Throws ParseError naming line and column.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string format_instance(const Instance& inst);

// Fills d (least squares when only b is known) and the exact copies from
// the double data.
Instance make_instance(const Matrix& a, const Vector& b, const Vector* c,
                       std::string family = {});

// Exact value of a decimal literal such as -1.25e-3.
Rational parse_decimal(const std::string& token);

}  // namespace proxlp

#endif  // PROXLP_INSTANCE_HPP_
