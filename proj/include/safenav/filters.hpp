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

#ifndef SAFENAV_FILTERS_HPP_
#define SAFENAV_FILTERS_HPP_

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "safenav/localization.hpp"
#include "safenav/motion_model.hpp"
#include "safenav/random.hpp"

namespace safenav {

using StateVector = Eigen::Vector4d;      // x, y, v, theta
using StateCovariance = Eigen::Matrix4d;

enum class JacobianMode { kAnalytic, kFiniteDifference };

struct FilterState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Zero();
  int step_index = 0;
};

struct FilterConfig {
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  Eigen::Matrix2d R = Eigen::Matrix2d::Zero();
  JacobianMode jacobian_mode = JacobianMode::kAnalytic;
  int particle_count = 1000;
  double resample_threshold = 0.5;

  void validate() const;

  // Q from the process sigmas, R from the localizer's fix sigmas.
  static FilterConfig from_noise(const NoiseParams& process, const SensorNoise& sensor,
                                 double dt);
};

struct EkfUpdateTrace {
  Eigen::Vector2d residual = Eigen::Vector2d::Zero();
  Eigen::Matrix2d residual_covariance = Eigen::Matrix2d::Zero();
  Eigen::Matrix<double, 4, 2> gain = Eigen::Matrix<double, 4, 2>::Zero();
};

MotionState to_motion_state(const StateVector& x);
StateVector to_state_vector(const MotionState& s);

// Deterministic transition used by the filters: propagate() on a state whose
// speed is clamped into [0, v_max].
StateVector transition(const StateVector& x, const ControlInput& u, const MotionLimits& lim,
                       const TerrainModel& terrain);

// Jacobian of transition() at x. The analytic form follows the active
// branch of the speed/heading limits.
Eigen::Matrix4d transition_jacobian(const StateVector& x, const ControlInput& u,
                                    const MotionLimits& lim, const TerrainModel& terrain);

// Central differences with step h (angles differenced with wrapping).
Eigen::Matrix4d transition_jacobian_numeric(const StateVector& x, const ControlInput& u,
                                            const MotionLimits& lim,
                                            const TerrainModel& terrain, double h = 1e-6);

FilterState ekf_predict(const FilterState& fs, const ControlInput& u, const MotionLimits& lim,
                        const TerrainModel& terrain, const FilterConfig& cfg);

// Position-only measurement update. Throws SingularInnovationError when the
// innovation covariance cannot be inverted.
std::pair<FilterState, EkfUpdateTrace> ekf_update(const FilterState& fs,
                                                  const PositionFix& z,
                                                  const FilterConfig& cfg);

// (I - KH) P (I - KH)^T + K R K^T.
Eigen::Matrix4d joseph_covariance(const Eigen::Matrix4d& P,
                                  const Eigen::Matrix<double, 4, 2>& K,
                                  const Eigen::Matrix2d& R);

struct ParticleSet {
  std::vector<StateVector> states;
  std::vector<double> weights;
  int degeneracy_events = 0;
  int resample_count = 0;

  std::size_t size() const { return states.size(); }
  // Weighted mean; heading averaged on the circle.
  StateVector estimate() const;
};

ParticleSet pf_initialize(const StateVector& mean, const StateCovariance& covariance,
                          int count, Rng& rng);

// Bootstrap step: propagate through the noisy motion model, weight by the
// Gaussian likelihood of z under R, renormalise, systematic resampling when
// the effective sample size drops below resample_threshold * N. If every
// weight underflows the weights reset to uniform and the event is counted.
void pf_step(ParticleSet& particles, const ControlInput& u, const PositionFix& z,
             const MotionLimits& lim, const NoiseParams& noise, const TerrainModel& terrain,
             const FilterConfig& cfg, Rng& rng);

double effective_sample_size(const std::vector<double>& weights);

// Systematic resampling indices for normalised weights.
std::vector<std::size_t> systematic_resample(const std::vector<double>& weights, Rng& rng);

enum class FilterKind { kEkf, kPf };

// Common face of the two filters for the navigation loop.
class StateEstimator {
 public:
  virtual ~StateEstimator() = default;
  virtual void predict(const ControlInput& u) = 0;
  virtual void update(const PositionFix& z) = 0;
  virtual MotionState estimate() const = 0;
  virtual int degeneracy_events() const { return 0; }
};

struct EstimatorContext {
  MotionLimits limits;
  NoiseParams process_noise;
  TerrainModel terrain;
  FilterConfig config;
};

std::unique_ptr<StateEstimator> make_estimator(FilterKind kind, const FilterState& initial,
                                               const EstimatorContext& ctx, Rng rng);

}  // namespace safenav

#endif  // SAFENAV_FILTERS_HPP_
