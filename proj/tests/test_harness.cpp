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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "safenav/error.hpp"
#include "safenav/harness.hpp"

namespace safenav {
namespace {

namespace fs = std::filesystem;

const Scenario& scenario() {
  static const Scenario s = default_scenario(42);
  return s;
}

AggregateReport strip_timing(AggregateReport r) {
  for (AggregateRow& row : r.rows) row.step_ms = 0.0;
  return r;
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

TrialReport fake_trial(const std::string& outcome, double ade) {
  TrialReport t;
  t.method = "chull";
  t.filter = "ekf";
  t.path = "P1";
  t.outcome = outcome;
  t.has_metrics = outcome == "reached";
  t.metrics.ade = ade;
  t.metrics.fde = 2 * ade;
  return t;
}

TEST(TrialSeed, DistinctAndStable) {
  EXPECT_EQ(trial_seed(1, 0), trial_seed(1, 0));
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
}

TEST(Aggregate, MeansOverReachedTrials) {
  const std::vector<TrialReport> ts{fake_trial("reached", 1.0), fake_trial("reached", 3.0),
                                    fake_trial("aborted", 100.0)};
  const AggregateRow row = aggregate(ts, "chull", "ekf", "P1");
  EXPECT_EQ(row.trials, 3);
  EXPECT_EQ(row.failures, 1);
  EXPECT_DOUBLE_EQ(row.ade, 2.0);
  EXPECT_DOUBLE_EQ(row.fde, 4.0);
  EXPECT_FALSE(row.unreliable);
}

TEST(Aggregate, MostlyFailedRowIsUnreliable) {
  const std::vector<TrialReport> ts{fake_trial("reached", 1.0), fake_trial("aborted", 0),
                                    fake_trial("step_limit", 0)};
  EXPECT_TRUE(aggregate(ts, "chull", "ekf", "P1").unreliable);
  EXPECT_EQ(aggregate(ts, "centroid", "ekf", "P1").trials, 0);
}

TEST(RunTrials, SingleTrialAggregateEqualsTrial) {
  RunRequest req;
  req.methods = {NavMethod::kCentroid};
  req.filters = {FilterKind::kEkf};
  req.paths = {"P1"};
  req.trials = 1;
  req.seed = 3;
  std::vector<TrialReport> trials;
  const AggregateReport rep = run_trials(scenario(), req, &trials);
  ASSERT_EQ(rep.rows.size(), 1u);
  ASSERT_EQ(trials.size(), 1u);
  ASSERT_EQ(trials[0].outcome, "reached") << trials[0].abort_reason;
  const AggregateRow& row = rep.rows[0];
  EXPECT_EQ(row.ade, trials[0].metrics.ade);
  EXPECT_EQ(row.fde, trials[0].metrics.fde);
  EXPECT_EQ(row.awrs, trials[0].metrics.awrs);
  EXPECT_EQ(row.pct_err, trials[0].metrics.percent_error);
  EXPECT_EQ(trials[0].seed, trial_seed(3, 0));
}

TEST(RunTrials, SameSeedSameReport) {
  RunRequest req;
  req.methods = {NavMethod::kChull, NavMethod::kCentroid};
  req.filters = {FilterKind::kEkf};
  req.paths = {"P2"};
  req.trials = 2;
  req.seed = 11;
  const AggregateReport a = run_trials(scenario(), req);
  const AggregateReport b = run_trials(scenario(), req);
  EXPECT_EQ(report_to_json(strip_timing(a)), report_to_json(strip_timing(b)));
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[0].method, "chull");
  EXPECT_EQ(a.rows[1].method, "centroid");
}

TEST(RunTrials, RejectsBadRequests) {
  RunRequest req;
  req.methods = {NavMethod::kChull};
  req.filters = {FilterKind::kEkf};
  req.paths = {"P9"};
  EXPECT_THROW(run_trials(scenario(), req), ValidationError);
  req.paths = {"P1"};
  req.trials = 0;
  EXPECT_THROW(run_trials(scenario(), req), ValidationError);
}

TEST(Report, JsonRoundTrip) {
  AggregateReport r;
  r.rows.push_back({"chull", "ekf", "P1", 1.25, 2.5, 0.125, 3.0, 0.7, 10, 1, false});
  r.rows.push_back({"centroid", "pf", "P3", 0.1, 0.2, 0.3, 0.4, 0.5, 4, 3, true});
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
  EXPECT_THROW(report_from_json("{\"rows\": [{}]}"), ValidationError);
}

TEST(Report, CsvShape) {
  AggregateReport r;
  const std::string header = "method,filter,path,ade,fde,awrs,pct_err,step_ms,trials,failures\n";
  EXPECT_EQ(report_to_csv(r), header);
  r.rows.push_back({"chull", "ekf", "P1", 1.25, 2.5, 0.125, 3.0, 0.7, 10, 1, false});
  r.rows.push_back({"centroid", "pf", "P3", 0.1, 0.2, 0.3, 0.4, 0.5, 4, 3, true});
  const std::string csv = report_to_csv(r);
  EXPECT_EQ(csv.rfind(header, 0), 0u);
  EXPECT_EQ(count_lines(csv), 3);
  EXPECT_NE(csv.find("chull,ekf,P1,1.25,2.5,0.125,3,0.7,10,1\n"), std::string::npos);
}

TEST(Trace, ColumnsAndRows) {
  const TrialRun run = run_trial(scenario(), NavMethod::kCentroid, FilterKind::kEkf, "P1", 0, 5);
  const std::string csv = trace_to_csv(run.record, scenario().safe_path("P1"));
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "step,truth_x,truth_y,measured_x,measured_y,predicted_x,predicted_y,v,theta,wrs");
  EXPECT_EQ(count_lines(csv), static_cast<int>(run.record.measured.size()) + 1);
}

TEST(Tracking, BothFiltersProduceMetrics) {
  std::vector<TrialReport> trials;
  const AggregateReport rep =
      run_tracking(scenario(), {"synthetic"}, {FilterKind::kEkf, FilterKind::kPf}, 1, 2, &trials);
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const TrialReport& t : trials) {
    EXPECT_TRUE(t.has_metrics);
    EXPECT_GT(t.metrics.ade, 0.0);
    EXPECT_LT(t.metrics.ade, 5.0);
  }
  EXPECT_THROW(run_tracking(scenario(), {"nowhere"}, {FilterKind::kEkf}, 1, 2), ValidationError);
}

TEST(WriteFile, WritesAndFails) {
  const fs::path dir = fs::temp_directory_path() / "safenav_harness_test";
  fs::create_directories(dir);
  write_file((dir / "out.txt").string(), "hello\n");
  std::ifstream in(dir / "out.txt");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "hello");
  EXPECT_THROW(write_file((dir / "out.txt" / "nested.txt").string(), "x"), Error);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace safenav
