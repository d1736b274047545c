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

#include "proxlp/instance.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace proxlp {
namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

[[noreturn]] void parse_error(int line, int col, const std::string& msg) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line) +
                                          ", column " + std::to_string(col) +
                                          ": " + msg);
}

// Non-empty lines with comments removed, split into tokens.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::vector<Token> toks;
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      if (i >= raw.size()) break;
      const size_t start = i;
      while (i < raw.size() &&
             !std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      toks.push_back({raw.substr(start, i - start), lineno,
                      static_cast<int>(start) + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

struct Number {
  Rational q;
  double v = 0.0;
};

Number number(const Token& t) {
  Number out;
  try {
    out.q = parse_decimal(t.text);
  } catch (const Error&) {
    parse_error(t.line, t.col, "not a decimal number: '" + t.text + "'");
  }
  out.v = std::strtod(t.text.c_str(), nullptr);
  return out;
}

int count(const Token& t) {
  const Number x = number(t);
  if (x.q < 0 || x.q.get_den() != 1 || x.v > 1e6)
    parse_error(t.line, t.col, "expected a dimension, got '" + t.text + "'");
  return static_cast<int>(x.v);
}

}  // namespace

Rational parse_decimal(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --exp10;
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::kParseError, "no digits");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    std::string e;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      e += s[i++];
    if (e.empty() || e.size() > 6)
      throw Error(ErrorKind::kParseError, "bad exponent");
    exp10 += eneg ? -std::stol(e) : std::stol(e);
  }
  if (i != s.size()) throw Error(ErrorKind::kParseError, "trailing characters");
  mpz_class num(digits);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(
                                           exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

Instance parse_instance(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) parse_error(1, 1, "empty instance");
  const auto& head = lines[0];
  if (head.size() != 2)
    parse_error(head[0].line, head[0].col, "expected 'm n'");
  const int m = count(head[0]);
  const int n = count(head[1]);
  if (n == 0) parse_error(head[1].line, head[1].col, "n must be positive");
  if (static_cast<int>(lines.size()) < m + 2)
    parse_error(lines.back()[0].line, 1,
                "expected " + std::to_string(m) + " rows and a b/d line");

  Instance inst;
  inst.a.resize(m, n);
  inst.a_q.assign(m, QVector(n));
  for (int i = 0; i < m; ++i) {
    const auto& row = lines[1 + i];
    if (static_cast<int>(row.size()) != n)
      parse_error(row[0].line, row[0].col,
                  "row " + std::to_string(i + 1) + " has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(n));
    for (int j = 0; j < n; ++j) {
      const Number x = number(row[j]);
      inst.a(i, j) = x.v;
      inst.a_q[i][j] = x.q;
    }
  }

  auto keyed = [&](const std::vector<Token>& line, int len, Vector& v,
                   QVector& q) {
    if (static_cast<int>(line.size()) != len + 1)
      parse_error(line[0].line, line[0].col,
                  "'" + line[0].text + "' needs " + std::to_string(len) +
                      " values, got " + std::to_string(line.size() - 1));
    v.resize(len);
    q.assign(len, 0);
    for (int k = 0; k < len; ++k) {
      const Number x = number(line[k + 1]);
      v[k] = x.v;
      q[k] = x.q;
    }
  };

  size_t next = 1 + m;
  const auto& rhs = lines[next];
  if (rhs[0].text == "b") {
    keyed(rhs, m, inst.b, inst.b_q);
    inst.d = m ? least_squares(inst.a, inst.b) : Vector(Vector::Zero(n));
  } else if (rhs[0].text == "d") {
    QVector dq;
    keyed(rhs, n, inst.d, dq);
    inst.given_d = true;
    inst.b = inst.a * inst.d;
    inst.b_q.assign(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) inst.b_q[i] += inst.a_q[i][j] * dq[j];
  } else {
    parse_error(rhs[0].line, rhs[0].col, "expected 'b' or 'd' line");
  }
  ++next;
  if (next < lines.size()) {
    const auto& cl = lines[next];
    if (cl[0].text != "c")
      parse_error(cl[0].line, cl[0].col, "expected 'c' line");
    keyed(cl, n, inst.c, inst.c_q);
    inst.has_c = true;
    ++next;
  }
  if (next < lines.size())
    parse_error(lines[next][0].line, lines[next][0].col,
                "unexpected content after the instance");
  if (!inst.has_c) {
    inst.c = Vector::Zero(n);
    inst.c_q.assign(n, 0);
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Instance inst = parse_instance(ss.str());
  inst.name = path;
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << std::setprecision(17);
  if (!inst.family.empty()) out << "# family " << inst.family << "\n";
  out << inst.m() << " " << inst.n() << "\n";
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) out << (j ? " " : "") << inst.a(i, j);
    out << "\n";
  }
  out << "b";
  for (int i = 0; i < inst.m(); ++i) out << " " << inst.b[i];
  out << "\n";
  if (inst.has_c) {
    out << "c";
    for (int j = 0; j < inst.n(); ++j) out << " " << inst.c[j];
    out << "\n";
  }
  return out.str();
}

Instance make_instance(const Matrix& a, const Vector& b, const Vector* c,
                       std::string family) {
  Instance inst;
  inst.family = std::move(family);
  inst.a = a;
  inst.b = b;
  inst.a_q = to_rational(a);
  inst.b_q = to_rational(b);
  inst.d = a.rows() ? least_squares(a, b) : Vector(Vector::Zero(a.cols()));
  if (c) {
    inst.c = *c;
    inst.has_c = true;
  } else {
    inst.c = Vector::Zero(a.cols());
  }
  inst.c_q = to_rational(inst.c);
  return inst;
}

}  // namespace proxlp
