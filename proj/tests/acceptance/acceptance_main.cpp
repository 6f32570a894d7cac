// Copyright 2026 The vqite Authors
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

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion,
// followed by the measured values. Exit status is non-zero if any fails.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "criteria.hpp"

using namespace vqite::acceptance;

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<int> only;
  int threads = 0;
  bool quiet = false;
  app.add_option("--only", only, "Criterion ids to run (default: all)")->delimiter(',');
  app.add_option("--threads", threads, "Worker threads for ensembles (0 = hardware)");
  app.add_flag("--quiet", quiet, "Omit per-criterion details and progress");
  CLI11_PARSE(app, argc, argv);

  EnsembleCache cache(threads, !quiet);
  const std::vector<std::pair<int, std::function<CriterionResult()>>> suite = {
      {1, [] { return noiseless_regularization(); }},
      {2, [&] { return noisy_regularization_ordering(cache); }},
      {3, [&] { return allocation_advantage(cache); }},
      {4, [&] { return shot_savings(cache); }},
      {5, [&] { return cost_function_comparison(cache); }},
      {6, [&] { return eight_site_replication(cache); }},
      {7, [] { return derivative_oracles(); }},
      {8, [] { return variance_propagation(); }},
      {9, [] { return structure_verification(); }},
      {10, [] { return allocation_suite(); }},
  };
  const std::set<int> selected(only.begin(), only.end());

  std::vector<CriterionResult> results;
  for (const auto& [id, run] : suite) {
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, {std::string("exception: ") + e.what()}};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "C" << r.id << " " << r.title << " ("
              << static_cast<int>(seconds) << " s)\n";
    if (!quiet) {
      for (const auto& line : r.details) std::cout << "       " << line << '\n';
    }
    std::cout.flush();
    results.push_back(std::move(r));
  }

  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << "\n" << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
