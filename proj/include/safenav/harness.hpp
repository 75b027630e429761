// Copyright 2026 The safenav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAFENAV_HARNESS_HPP_
#define SAFENAV_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "safenav/filters.hpp"
#include "safenav/navigator.hpp"
#include "safenav/risk.hpp"
#include "safenav/scenario.hpp"

namespace safenav {

struct TrialReport {
  int trial_id = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string filter;
  std::string path;
  std::string outcome;
  bool has_metrics = false;
  TrajectoryMetrics metrics;
  int replans = 0;
  int back_steps = 0;
  int buffer_violations = 0;
  int degeneracy_events = 0;
  std::string abort_reason;
};

struct AggregateRow {
  std::string method;
  std::string filter;
  std::string path;
  double ade = 0.0;
  double fde = 0.0;
  double awrs = 0.0;
  double pct_err = 0.0;
  double step_ms = 0.0;
  int trials = 0;
  int failures = 0;
  bool unreliable = false;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct AggregateReport {
  std::vector<AggregateRow> rows;

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

// Trial k of a run uses derive_seed(master_seed, k), shared by every
// method/filter/path combination so they see common random numbers.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial_id);

// Means over reached trials; a row is unreliable when more than half fail.
AggregateRow aggregate(const std::vector<TrialReport>& trials, const std::string& method,
                       const std::string& filter, const std::string& path);

struct TrialRun {
  TrialReport report;
  NavRecord record;
};

// Starts at rest on the first vertex of the path, facing along the first edge.
TrialRun run_trial(const Scenario& scenario, NavMethod method, FilterKind filter,
                   const std::string& path, int trial_id, std::uint64_t master_seed);

struct RunRequest {
  std::vector<NavMethod> methods;
  std::vector<FilterKind> filters;
  std::vector<std::string> paths;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string trace_dir;  // per-trial step CSVs when non-empty
};

AggregateReport run_trials(const Scenario& scenario, const RunRequest& request,
                           std::vector<TrialReport>* trial_reports = nullptr);

// Filter-only tracking. The truth is a noisy rollout driven by the
// reference's speed and heading (the heading command is taken relative to
// the current estimate). `source` is "synthetic" or a path name, which is
// then followed at the navigation cruise speed. Errors are time-aligned;
// AWRS is measured against the realised truth.
struct TrackingTrace {
  std::vector<Point2> truth;
  std::vector<Point2> estimate;
  std::vector<Point2> fixes;
};

TrialReport run_tracking_trial(const Scenario& scenario, const std::string& source,
                               FilterKind filter, int trial_id, std::uint64_t master_seed,
                               TrackingTrace* trace = nullptr);

AggregateReport run_tracking(const Scenario& scenario, const std::vector<std::string>& sources,
                             const std::vector<FilterKind>& filters, int trials,
                             std::uint64_t master_seed,
                             std::vector<TrialReport>* trial_reports = nullptr);

std::string report_to_json(const AggregateReport& report);
AggregateReport report_from_json(const std::string& text);
std::string report_to_csv(const AggregateReport& report);
std::string trials_to_json(const std::vector<TrialReport>& trials);
std::string trace_to_csv(const NavRecord& record, const SafePathBuffer& buffer);

// Writes text to path; throws Error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace safenav

#endif  // SAFENAV_HARNESS_HPP_
