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

#ifndef PROXLP_DRIVER_HPP_
#define PROXLP_DRIVER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "proxlp/context.hpp"
#include "proxlp/instance.hpp"

namespace proxlp {

struct RunFlags {
  std::string mode = "feas";
  double m0 = 2.0;
  double tol = 1e-8;  // residual tolerance
  bool verify = false;
  bool json = false;
  std::uint64_t seed = 1;
  int max_restarts = 60;
  // bench only
  std::string family = "random-int";
  std::vector<int> sizes = {4, 6, 8};
  int reps = 3;
};

enum ExitCode { kExitSolved = 0, kExitInfeasible = 1, kExitRestartLimit = 2,
                kExitInputError = 3 };

struct SolveReport {
  std::string mode;
  // Optimal, Feasible, FarkasPrimal, FarkasDual, RestartLimit
  std::string outcome;
  Vector x, s;
  Vector farkas;       // n-vector: in W^perp (primal) or in W (dual)
  Vector farkas_rows;  // row multipliers when b is not in the range of a
  double objective = 0.0;
  std::vector<double> m_history;
  std::vector<LiftingCertificate> certificates;  // verified, in order
  int discarded_certificates = 0;  // failed the exact check
  int internal_failures = 0;       // runs ended by InternalInconsistency
  std::vector<std::string> failure_messages;
  RunStats stats;
  double wall_ms = 0.0;
  std::vector<std::string> checks;  // verification summary
  bool verified = true;             // every check passed
  std::optional<Rational> exact_opt;
  std::string exact_status;
  int exit_code = kExitSolved;

  int restarts() const { return static_cast<int>(m_history.size()) - 1; }
};

// Runs the M-guessing loop for `flags.mode` in {feas, opt}.
SolveReport run(const Instance& inst, const RunFlags& flags);

struct AnalyzeReport {
  int m = 0, n = 0, rank = 0;
  std::optional<Rational> kappa;
  std::optional<Rational> kappa_bases;
  std::optional<Rational> kappa_dual;
  std::optional<double> chibar;
  double probe_lower_bound = 1.0;  // from random lifts
  int probes = 0;
};
AnalyzeReport analyze(const Instance& inst, std::uint64_t seed);

// CSV with one line per generated instance.
std::string bench_csv(const RunFlags& flags);

nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const AnalyzeReport& r);
std::string to_text(const SolveReport& r);
std::string to_text(const AnalyzeReport& r);

}  // namespace proxlp

#endif  // PROXLP_DRIVER_HPP_
