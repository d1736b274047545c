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

// proxlp_cli: exact LP solving on top of an approximate interior point solver.
//
//   proxlp_cli --mode opt instance.lp
//   proxlp_cli --mode analyze instance.lp
//   proxlp_cli --mode bench --family tu-network --sizes 6,10,20

#include <iostream>

#include "CLI11.hpp"
#include "proxlp/driver.hpp"
#include "proxlp/verify.hpp"

int main(int argc, char** argv) {
  using namespace proxlp;
  CLI::App app{"Exact LP solutions and certificates from an approximate solver"};
  RunFlags flags;
  std::string path;
  app.add_option("--mode", flags.mode, "feas, opt, analyze or bench")
      ->check(CLI::IsMember({"feas", "opt", "analyze", "bench"}));
  app.add_option("--M", flags.m0, "initial guess for the circuit imbalance")
      ->check(CLI::Range(1.0, 1e300));
  app.add_option("--tol", flags.tol, "residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verify", flags.verify,
               "compare against the exact rational simplex");
  app.add_flag("--json", flags.json, "machine-readable output");
  app.add_option("--seed", flags.seed, "seed for probes and generators");
  app.add_option("--max-restarts", flags.max_restarts,
                 "cap on M restarts")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--family", flags.family, "bench instance family")
      ->check(CLI::IsMember(
          {"tu-network", "random-int", "high-kappa", "infeasible"}));
  app.add_option("--sizes", flags.sizes, "bench sizes")->delimiter(',');
  app.add_option("--reps", flags.reps, "bench instances per size")
      ->check(CLI::PositiveNumber);
  app.add_option("instance", path, "instance file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (flags.mode == "bench") {
      std::cout << bench_csv(flags);
      return kExitSolved;
    }
    if (path.empty()) {
      std::cerr << "error: an instance file is required\n";
      return kExitInputError;
    }
    const Instance inst = load_instance(path);
    if (flags.mode == "analyze") {
      const AnalyzeReport r = analyze(inst, flags.seed);
      if (flags.json)
        std::cout << to_json(r).dump(2) << "\n";
      else
        std::cout << to_text(r);
      return kExitSolved;
    }
    RunFlags f = flags;
    if (f.verify && inst.n() > kKappaGuard) {
      std::cerr << "note: --verify skipped, n exceeds " << kKappaGuard << "\n";
      f.verify = false;
    }
    const SolveReport r = run(inst, f);
    if (flags.json)
      std::cout << to_json(r).dump(2) << "\n";
    else
      std::cout << to_text(r);
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::kParseError) return kExitInputError;
    return kExitRestartLimit;
  }
}
