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

#ifndef SAFENAV_ERROR_HPP_
#define SAFENAV_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace safenav {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed scenario files, violated preconditions on arguments.
// The CLI maps this family to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DegenerateHullError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// No landmark cluster with at least three members in detection range.
class LocalizationUnavailable : public Error {
 public:
  using Error::Error;
};

class SingularInnovationError : public Error {
 public:
  using Error::Error;
};

class StalledEntityError : public Error {
 public:
  using Error::Error;
};

class PlanningFailed : public Error {
 public:
  PlanningFailed(const std::string& what, double best_partial_cost,
                 double best_distance_to_goal)
      : Error(what),
        best_partial_cost_(best_partial_cost),
        best_distance_to_goal_(best_distance_to_goal) {}

  double best_partial_cost() const { return best_partial_cost_; }
  double best_distance_to_goal() const { return best_distance_to_goal_; }

 private:
  double best_partial_cost_;
  double best_distance_to_goal_;
};

class NavigationAborted : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace safenav

#endif  // SAFENAV_ERROR_HPP_
