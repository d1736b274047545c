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

#include "proxlp/approx_solver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "proxlp/kernels.hpp"

namespace proxlp {

bool ContractMeasure::ok(double slack) const {
  return nonnegative && gap <= gap_bound * slack &&
         primal_res <= primal_bound * slack && dual_res <= dual_bound * slack;
}

ContractMeasure measure_contract(const SolverRequest& req, const Vector& x,
                                 const Vector& y, const Vector& s) {
  ContractMeasure m;
  const double af = req.a.norm();
  m.gap = req.c.dot(x) - req.b.dot(y);
  m.gap_bound = req.delta * (req.c.norm() * req.rp + req.x0.norm() * req.rd);
  m.primal_res = (req.a * x - req.b).norm();
  m.primal_bound = req.delta * (af * req.rp + req.b.norm());
  m.dual_res = (req.a.transpose() * y + s - req.c).norm();
  m.dual_bound = req.delta * (af * req.rd + req.c.norm());
  m.nonnegative = (x.array() >= 0).all() && (s.array() >= 0).all();
  return m;
}

namespace {

class NewtonSystem {
 public:
  NewtonSystem(const Matrix& a, const Vector& x, const Vector& s)
      : a_(a), x_(x), s_(s), d_(x.cwiseQuotient(s)) {
    Matrix m = kernels::normal_matrix(a, d_);
    ldlt_.compute(m);
    ok_ = ldlt_.info() == Eigen::Success && a.rows() > 0;
    if (a.rows() == 0) ok_ = true;
  }
  bool ok() const { return ok_; }

  // a dx = rp; a^t dy + ds = rd; s dx + x ds = rc.
  void solve(const Vector& rp, const Vector& rd, const Vector& rc, Vector& dx,
             Vector& dy, Vector& ds) const {
    once(rp, rd, rc, dx, dy, ds);
    for (int k = 0; k < 2; ++k) {
      const Vector e1 = rp - a_ * dx;
      const Vector e2 = rd - a_.transpose() * dy - ds;
      const Vector e3 =
          rc - s_.cwiseProduct(dx) - x_.cwiseProduct(ds);
      Vector cx, cy, cs;
      once(e1, e2, e3, cx, cy, cs);
      dx += cx;
      dy += cy;
      ds += cs;
    }
  }

 private:
  void once(const Vector& rp, const Vector& rd, const Vector& rc, Vector& dx,
            Vector& dy, Vector& ds) const {
    if (a_.rows() == 0) {
      dy = Vector(0);
      ds = rd;
    } else {
      const Vector rhs =
          rp - a_ * rc.cwiseQuotient(s_) + a_ * d_.cwiseProduct(rd);
      dy = ldlt_.solve(rhs);
      ds = rd - a_.transpose() * dy;
    }
    dx = (rc - x_.cwiseProduct(ds)).cwiseQuotient(s_);
  }

  const Matrix& a_;
  const Vector& x_;
  const Vector& s_;
  Vector d_;
  Eigen::LDLT<Matrix> ldlt_;
  bool ok_ = false;
};

double step_to_boundary(const Vector& v, const Vector& dv) {
  double a = kInf;
  for (int i = 0; i < v.size(); ++i)
    if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
  return a;
}

double centrality(const Vector& x, const Vector& s) {
  const Vector v = x.cwiseProduct(s);
  const double mu = v.mean();
  return (v / mu - Vector::Ones(v.size())).norm();
}

// Moves the iterate onto the face given by its larger side: x_j = 0 where
// s_j > x_j, s_j = 0 elsewhere, with minimum-norm corrections to the
// equality systems. Returns false when the result is not acceptable.
bool purify(const SolverRequest& req, Vector& x, Vector& y, Vector& s) {
  const int n = static_cast<int>(x.size());
  IndexSet big, small;
  for (int j = 0; j < n; ++j) (x[j] >= s[j] ? big : small).push_back(j);
  const Matrix ab = columns(req.a, big);
  Vector xb = restrict_to(x, big);
  const double xscale = std::max(norm_inf(x), 1e-300);
  const double sscale = std::max(norm_inf(s), 1e-300);
  if (req.a.rows() > 0) {
    if (big.empty()) {
      if (req.b.norm() > 1e-13 * (1.0 + req.b.norm())) return false;
    } else {
      xb -= least_squares(ab, ab * xb - req.b);
    }
  }
  for (int k = 0; k < xb.size(); ++k) {
    if (xb[k] < -1e-13 * xscale) return false;
    xb[k] = std::max(xb[k], 0.0);
  }
  Vector yn = y;
  if (req.a.rows() > 0 && !big.empty()) {
    const Matrix abt = ab.transpose();
    yn += least_squares(abt, restrict_to(req.c, big) - abt * y);
  }
  Vector sn = req.c - req.a.transpose() * yn;
  for (int j : big) sn[j] = 0.0;
  for (int j : small) {
    if (sn[j] < -1e-13 * sscale) return false;
    sn[j] = std::max(sn[j], 0.0);
  }
  const Vector xn = scatter(n, big, xb);
  const ContractMeasure before = measure_contract(req, x, y, s);
  const ContractMeasure after = measure_contract(req, xn, yn, sn);
  const double tiny = 1e-300;
  if (after.primal_res > std::max(before.primal_res, tiny) * 10 +
                             1e-13 * (req.b.norm() + 1.0))
    return false;
  if (after.dual_res > std::max(before.dual_res, tiny) * 10 +
                           1e-13 * (req.c.norm() + 1.0))
    return false;
  x = xn;
  y = yn;
  s = sn;
  return true;
}

}  // namespace

SolverResponse builtin_ipm(const SolverRequest& req, const IpmOptions& opts) {
  const int n = static_cast<int>(req.x0.size());
  SolverResponse out;
  Vector x = req.x0, y = req.y0, s = req.s0;
  if ((x.array() <= 0).any() || (s.array() <= 0).any())
    throw Error(ErrorKind::kNotInterior, "start point not strictly positive");
  if (n == 0) {
    out.x = x;
    out.y = y;
    out.s = s;
    out.measure = measure_contract(req, x, y, s);
    return out;
  }
  const double af = req.a.norm();
  const double gap_target =
      req.delta * (req.c.norm() * req.rp + req.x0.norm() * req.rd);
  const double pres_target = req.delta * (af * req.rp + req.b.norm());
  const double dres_target = req.delta * (af * req.rd + req.c.norm());
  const double short_step = 1.0 / (8.0 * std::sqrt(static_cast<double>(n)));
  double gap_prev = x.dot(s);
  int stalls = 0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const double mu = x.dot(s) / n;
    const Vector rp = req.b - req.a * x;
    const Vector rd = req.c - req.a.transpose() * y - s;
    if (x.dot(s) <= 0.5 * gap_target && rp.norm() <= 0.5 * pres_target &&
        rd.norm() <= 0.5 * dres_target)
      break;
    NewtonSystem ns(req.a, x, s);
    if (!ns.ok()) {
      if (it == 0)
        throw Error(ErrorKind::kNumericalBreakdown, "singular normal matrix");
      break;
    }
    Vector dx, dy, ds;
    double alpha;
    const double cent = centrality(x, s);
    if (cent > 0.25) {
      const Vector rc = Vector::Constant(n, mu) - x.cwiseProduct(s);
      ns.solve(rp, rd, rc, dx, dy, ds);
      alpha = std::min(1.0, 0.95 * std::min(step_to_boundary(x, dx),
                                            step_to_boundary(s, ds)));
    } else {
      const Vector rc = -x.cwiseProduct(s);
      ns.solve(rp, rd, rc, dx, dy, ds);
      alpha = std::min(1.0, 0.9999 * std::min(step_to_boundary(x, dx),
                                              step_to_boundary(s, ds)));
      while (alpha > 1e-14) {
        const Vector xt = x + alpha * dx, st = s + alpha * ds;
        if ((xt.array() > 0).all() && (st.array() > 0).all() &&
            centrality(xt, st) <= 0.5)
          break;
        alpha *= 0.8;
      }
      if (alpha < short_step) {
        const Vector rcs =
            Vector::Constant(n, (1.0 - short_step) * mu) - x.cwiseProduct(s);
        ns.solve(rp, rd, rcs, dx, dy, ds);
        alpha = std::min(1.0, 0.95 * std::min(step_to_boundary(x, dx),
                                              step_to_boundary(s, ds)));
      }
    }
    x += alpha * dx;
    y += alpha * dy;
    s += alpha * ds;
    const double gap = x.dot(s);
    if (gap > gap_prev * (1.0 + 1e-6) + 1e-300)
      throw Error(ErrorKind::kNumericalBreakdown,
                  "duality gap increased during path following");
    if (gap > gap_prev * (1.0 - 1e-3))
      ++stalls;
    else
      stalls = 0;
    gap_prev = gap;
    if (stalls >= 8) break;  // round-off floor reached
  }
  out.iterations = it;
  out.iteration_limit = it >= opts.max_iterations;
  if (opts.purify) {
    Vector px = x, py = y, ps = s;
    if (purify(req, px, py, ps)) {
      const ContractMeasure pm = measure_contract(req, px, py, ps);
      if (pm.ok(1.0) || !measure_contract(req, x, y, s).ok(1.0)) {
        x = px;
        y = py;
        s = ps;
        out.purified = true;
      }
    }
  }
  out.x = x;
  out.y = y;
  out.s = s;
  out.measure = measure_contract(req, x, y, s);
  return out;
}

SolverResponse ApproxSolver::solve(const SolverRequest& req) const {
  SolverResponse r = adapter_ ? adapter_(req) : builtin_ipm(req, opts_);
  if (r.x.size() != req.c.size() || r.s.size() != req.c.size() ||
      r.y.size() != req.b.size())
    throw Error(ErrorKind::kContractViolation, "response has wrong shape");
  r.measure = measure_contract(req, r.x, r.y, r.s);
  if (!r.measure.nonnegative)
    throw Error(ErrorKind::kContractViolation, "negative entry in x or s");
  if (!r.measure.ok(1.0 + 1e-7)) {
    if (r.iteration_limit)
      throw Error(ErrorKind::kIterationLimit, "best iterate misses contract");
    std::ostringstream os;
    os << "gap " << r.measure.gap << "/" << r.measure.gap_bound << " primal "
       << r.measure.primal_res << "/" << r.measure.primal_bound << " dual "
       << r.measure.dual_res << "/" << r.measure.dual_bound;
    throw Error(ErrorKind::kContractViolation, os.str());
  }
  return r;
}

namespace {

void put_row(std::ostream& os, const char* key, const Vector& v) {
  os << key;
  for (int i = 0; i < v.size(); ++i) os << ' ' << v[i];
  os << '\n';
}

// Splits into non-comment, non-empty lines of tokens.
std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(toks);
  }
  return lines;
}

Vector keyed(const std::vector<std::string>& toks, size_t expect) {
  if (toks.size() != expect + 1)
    throw Error(ErrorKind::kParseError,
                "line '" + toks[0] + "' expects " + std::to_string(expect) +
                    " values");
  Vector v(expect);
  for (size_t k = 0; k < expect; ++k) v[k] = std::stod(toks[k + 1]);
  return v;
}

}  // namespace

std::string serialize_request(const SolverRequest& req) {
  std::ostringstream os;
  os.precision(17);
  os << "# solver request\n" << req.a.rows() << ' ' << req.a.cols() << '\n';
  for (int i = 0; i < req.a.rows(); ++i) {
    for (int j = 0; j < req.a.cols(); ++j) os << (j ? " " : "") << req.a(i, j);
    os << '\n';
  }
  put_row(os, "b", req.b);
  put_row(os, "c", req.c);
  put_row(os, "x0", req.x0);
  put_row(os, "y0", req.y0);
  put_row(os, "s0", req.s0);
  os << "delta " << req.delta << '\n';
  os << "radii " << req.rp << ' ' << req.rd << '\n';
  return os.str();
}

SolverRequest parse_request(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].size() != 2)
    throw Error(ErrorKind::kParseError, "missing 'rows cols' header");
  const int m = std::stoi(lines[0][0]), n = std::stoi(lines[0][1]);
  SolverRequest req;
  req.a.resize(m, n);
  if (static_cast<int>(lines.size()) < m + 1)
    throw Error(ErrorKind::kParseError, "truncated matrix");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(lines[i + 1].size()) != n)
      throw Error(ErrorKind::kParseError, "bad row " + std::to_string(i));
    for (int j = 0; j < n; ++j) req.a(i, j) = std::stod(lines[i + 1][j]);
  }
  for (size_t k = m + 1; k < lines.size(); ++k) {
    const auto& t = lines[k];
    if (t[0] == "b") req.b = keyed(t, m);
    else if (t[0] == "c") req.c = keyed(t, n);
    else if (t[0] == "x0") req.x0 = keyed(t, n);
    else if (t[0] == "y0") req.y0 = keyed(t, m);
    else if (t[0] == "s0") req.s0 = keyed(t, n);
    else if (t[0] == "delta") req.delta = keyed(t, 1)[0];
    else if (t[0] == "radii") {
      Vector r = keyed(t, 2);
      req.rp = r[0];
      req.rd = r[1];
    } else {
      throw Error(ErrorKind::kParseError, "unknown key '" + t[0] + "'");
    }
  }
  return req;
}

std::string serialize_response(const SolverResponse& resp) {
  std::ostringstream os;
  os.precision(17);
  put_row(os, "x", resp.x);
  put_row(os, "y", resp.y);
  put_row(os, "s", resp.s);
  return os.str();
}

SolverResponse parse_response(const std::string& text) {
  SolverResponse r;
  for (const auto& t : tokenize(text)) {
    Vector v = keyed(t, t.size() - 1);
    if (t[0] == "x") r.x = v;
    else if (t[0] == "y") r.y = v;
    else if (t[0] == "s") r.s = v;
    else throw Error(ErrorKind::kParseError, "unknown key '" + t[0] + "'");
  }
  return r;
}

SolverAdapter subprocess_adapter(const std::string& command) {
  return [command](const SolverRequest& req) {
    char path[] = "/tmp/proxlp_req_XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) throw Error(ErrorKind::kContractViolation, "mkstemp failed");
    close(fd);
    {
      std::ofstream f(path);
      f << serialize_request(req);
    }
    const std::string cmd = command + " " + path;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      std::remove(path);
      throw Error(ErrorKind::kContractViolation, "cannot start " + command);
    }
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    std::remove(path);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
      throw Error(ErrorKind::kContractViolation,
                  "external solver failed: " + command);
    return parse_response(out);
  };
}

}  // namespace proxlp
