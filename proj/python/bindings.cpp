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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "safenav/error.hpp"
#include "safenav/geometry.hpp"
#include "safenav/harness.hpp"
#include "safenav/localization.hpp"
#include "safenav/motion_model.hpp"
#include "safenav/planner.hpp"
#include "safenav/risk.hpp"
#include "safenav/scenario.hpp"

namespace py = pybind11;

namespace {

using XY = std::pair<double, double>;

std::vector<safenav::Point2> to_points(const std::vector<XY>& xy) {
  std::vector<safenav::Point2> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

std::vector<XY> to_xy(const std::vector<safenav::Point2>& pts) {
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

safenav::SafePathBuffer make_buffer(const std::vector<XY>& central, double half_width,
                                    int segments) {
  return safenav::build_safe_path(safenav::Polyline(to_points(central)), half_width, segments);
}

}  // namespace

PYBIND11_MODULE(_safenav, m) {
  m.doc() = "Risk-aware navigation simulator core";

  // Translators are tried newest first, so the subclass goes last.
  py::register_exception<safenav::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<safenav::ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("convex_hull", [](const std::vector<XY>& pts) {
    return to_xy(safenav::convex_hull(to_points(pts)).vertices());
  });
  m.def("point_in_hull", [](XY p, const std::vector<XY>& pts) {
    return safenav::point_in_polygon({p.first, p.second},
                                     safenav::convex_hull(to_points(pts)));
  });
  m.def("wrap_angle", &safenav::wrap_angle);
  m.def("trilaterate", [](const std::vector<XY>& anchors, const std::vector<double>& d) {
    const safenav::Point2 p = safenav::trilaterate(to_points(anchors), d);
    return XY{p.x, p.y};
  });

  m.def(
      "update_velocity",
      [](double v, double v_desired, double a, double d, double v_max, double dt) {
        safenav::MotionLimits lim;
        lim.a = a;
        lim.d = d;
        lim.v_max = v_max;
        lim.dt = dt;
        lim.validate();
        return safenav::update_velocity(v, {v_desired, 0.0}, lim);
      },
      py::arg("v"), py::arg("v_desired"), py::arg("a") = 4.0, py::arg("d") = 4.0,
      py::arg("v_max") = 15.0, py::arg("dt") = 0.1);
  m.def(
      "update_heading",
      [](double theta, double delta, double maneuverability, double dt) {
        safenav::MotionLimits lim;
        lim.m = maneuverability;
        lim.dt = dt;
        lim.validate();
        return safenav::update_heading(theta, {0.0, delta}, lim);
      },
      py::arg("theta"), py::arg("delta_theta"), py::arg("m") = 1.5, py::arg("dt") = 0.1);

  m.def(
      "wrs",
      [](double d, double half_width) {
        return safenav::wrs(d, safenav::RiskZoneConfig::equal_width(half_width,
                                                                    {2.0, 4.0, 6.0, 8.0},
                                                                    safenav::RiskMode::kDivide));
      },
      py::arg("d"), py::arg("half_width") = 10.0);
  m.def(
      "awrs",
      [](const std::vector<XY>& traj, const std::vector<XY>& central, double half_width,
         int segments) {
        return safenav::awrs(to_points(traj), make_buffer(central, half_width, segments));
      },
      py::arg("trajectory"), py::arg("central"), py::arg("half_width") = 10.0,
      py::arg("segments") = 10);
  m.def("ade", [](const std::vector<XY>& est, const std::vector<XY>& truth) {
    return safenav::ade(to_points(est), to_points(truth));
  });
  m.def("fde", [](const std::vector<XY>& est, const std::vector<XY>& truth) {
    return safenav::fde(to_points(est), to_points(truth));
  });

  m.def("default_scenario_json", [](std::uint64_t seed) {
    return safenav::scenario_to_json(safenav::default_scenario(seed));
  }, py::arg("seed") = 42);

  m.def(
      "plan",
      [](const std::string& scenario_json, XY start, XY goal, double beta, std::uint64_t seed) {
        const safenav::Scenario sc = safenav::scenario_from_json(scenario_json);
        safenav::PlannerConfig cfg = sc.planner;
        cfg.beta = beta;
        const safenav::Point2 s{start.first, start.second};
        const safenav::Point2 g{goal.first, goal.second};
        const auto buffer = safenav::build_safe_path(safenav::Polyline({s, g}),
                                                     sc.buffer.half_width, sc.buffer.segments);
        safenav::Rng rng(seed, safenav::Stream::kPlanner);
        const auto res = safenav::plan(s, g, sc.world.obstacle_map(), buffer, cfg, rng);
        py::dict out;
        out["path"] = to_xy(res.path);
        out["total_cost"] = res.total_cost;
        out["length_cost"] = res.length_cost;
        out["risk_cost"] = res.risk_cost;
        return out;
      },
      py::arg("scenario_json"), py::arg("start"), py::arg("goal"), py::arg("beta") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "run_trials",
      [](const std::string& scenario_json, const std::vector<std::string>& methods,
         const std::vector<std::string>& filters, const std::vector<std::string>& paths,
         int trials, std::uint64_t seed) {
        const safenav::Scenario sc = safenav::scenario_from_json(scenario_json);
        safenav::RunRequest req;
        for (const auto& s : methods) req.methods.push_back(safenav::parse_method(s));
        for (const auto& s : filters) req.filters.push_back(safenav::parse_filter(s));
        req.paths = paths;
        req.trials = trials;
        req.seed = seed;
        safenav::AggregateReport report;
        {
          py::gil_scoped_release release;
          report = safenav::run_trials(sc, req);
        }
        return safenav::report_to_json(report);
      },
      py::arg("scenario_json"), py::arg("methods"), py::arg("filters"), py::arg("paths"),
      py::arg("trials") = 1, py::arg("seed") = 0);
}
