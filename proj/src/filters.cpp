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

#include "safenav/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "safenav/error.hpp"

namespace safenav {

namespace {

using Matrix24 = Eigen::Matrix<double, 2, 4>;

Matrix24 observation_matrix() {
  Matrix24 H = Matrix24::Zero();
  H(0, 0) = 1.0;
  H(1, 1) = 1.0;
  return H;
}

bool is_psd(const Eigen::MatrixXd& m) {
  if (!m.isApprox(m.transpose(), 1e-9) && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    return false;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  return eig.eigenvalues().minCoeff() >= -1e-12;
}

template <typename M>
M symmetrize(const M& m) {
  return 0.5 * (m + m.transpose());
}

}  // namespace

void FilterConfig::validate() const {
  if (!is_psd(Q)) throw ValidationError("process covariance Q must be symmetric PSD");
  if (!is_psd(R)) throw ValidationError("measurement covariance R must be symmetric PSD");
  if (particle_count < 10) throw ValidationError("particle_count must be >= 10");
  if (!(resample_threshold >= 0.0 && resample_threshold <= 1.0)) {
    throw ValidationError("resample_threshold must lie in [0, 1]");
  }
}

FilterConfig FilterConfig::from_noise(const NoiseParams& process, const SensorNoise& sensor,
                                      double dt) {
  FilterConfig cfg;
  const double sv = process.speed_sigma(dt);
  cfg.Q.diagonal() << process.sigma_x * process.sigma_x, process.sigma_y * process.sigma_y,
      sv * sv, process.sigma_theta * process.sigma_theta;
  cfg.R.diagonal() << sensor.sigma_fix_x * sensor.sigma_fix_x,
      sensor.sigma_fix_y * sensor.sigma_fix_y;
  return cfg;
}

MotionState to_motion_state(const StateVector& x) {
  return {{x(0), x(1)}, std::max(0.0, x(2)), wrap_angle(x(3))};
}

StateVector to_state_vector(const MotionState& s) {
  return {s.position.x, s.position.y, s.v, s.theta};
}

StateVector transition(const StateVector& x, const ControlInput& u, const MotionLimits& lim,
                       const TerrainModel& terrain) {
  MotionState s = to_motion_state(x);
  s.v = std::min(s.v, lim.v_max);
  return to_state_vector(propagate(s, u, lim, terrain));
}

Eigen::Matrix4d transition_jacobian(const StateVector& x, const ControlInput& u,
                                    const MotionLimits& lim, const TerrainModel& terrain) {
  const double v_raw = x(2);
  const double v = std::clamp(v_raw, 0.0, lim.v_max);
  const double dclamp = (v_raw > 0.0 && v_raw < lim.v_max) ? 1.0 : 0.0;

  // Sub-gradient of the active branch of the limited speed update.
  double v_next = 0.0;
  double dv_next = 0.0;
  if (u.v_desired > v) {
    const double accel = v + lim.a * lim.dt;
    v_next = std::min({accel, u.v_desired, lim.v_max});
    dv_next = (accel < u.v_desired && accel < lim.v_max) ? 1.0 : 0.0;
  } else {
    const double decel = v - lim.d * lim.dt;
    v_next = std::min(std::max({decel, u.v_desired, 0.0}), lim.v_max);
    dv_next = (decel > u.v_desired && decel > 0.0 && decel < lim.v_max) ? 1.0 : 0.0;
  }
  dv_next *= dclamp;

  const double theta_next = update_heading(wrap_angle(x(3)), u, lim);
  const double c = std::cos(theta_next);
  const double s = std::sin(theta_next);

  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(2, 2) = dv_next;
  if (v_next > 0.0) {
    const double travel = v_next * lim.dt + terrain.tau({x(0), x(1)});
    F(0, 2) = lim.dt * dv_next * c;
    F(1, 2) = lim.dt * dv_next * s;
    F(0, 3) = -travel * s;
    F(1, 3) = travel * c;
  }
  return F;
}

Eigen::Matrix4d transition_jacobian_numeric(const StateVector& x, const ControlInput& u,
                                            const MotionLimits& lim,
                                            const TerrainModel& terrain, double h) {
  Eigen::Matrix4d F;
  for (int j = 0; j < 4; ++j) {
    StateVector plus = x;
    StateVector minus = x;
    plus(j) += h;
    minus(j) -= h;
    StateVector diff = transition(plus, u, lim, terrain) - transition(minus, u, lim, terrain);
    diff(3) = wrap_angle(diff(3));
    F.col(j) = diff / (2.0 * h);
  }
  return F;
}

FilterState ekf_predict(const FilterState& fs, const ControlInput& u, const MotionLimits& lim,
                        const TerrainModel& terrain, const FilterConfig& cfg) {
  const Eigen::Matrix4d F = cfg.jacobian_mode == JacobianMode::kAnalytic
                                ? transition_jacobian(fs.mean, u, lim, terrain)
                                : transition_jacobian_numeric(fs.mean, u, lim, terrain);
  FilterState next;
  next.mean = transition(fs.mean, u, lim, terrain);
  next.covariance = symmetrize(Eigen::Matrix4d(F * fs.covariance * F.transpose() + cfg.Q));
  next.step_index = fs.step_index + 1;
  return next;
}

std::pair<FilterState, EkfUpdateTrace> ekf_update(const FilterState& fs,
                                                  const PositionFix& z,
                                                  const FilterConfig& cfg) {
  const Matrix24 H = observation_matrix();
  const Eigen::Matrix4d& P = fs.covariance;

  EkfUpdateTrace trace;
  trace.residual = Eigen::Vector2d(z.position.x, z.position.y) - H * fs.mean;
  trace.residual_covariance = H * P * H.transpose() + cfg.R;

  const Eigen::Matrix2d& S = trace.residual_covariance;
  const double det = S.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-300 ||
      S.fullPivLu().rank() < 2) {
    throw SingularInnovationError("innovation covariance is singular; R must be positive definite");
  }
  trace.gain = P * H.transpose() * S.inverse();

  FilterState next;
  next.mean = fs.mean + trace.gain * trace.residual;
  next.mean(3) = wrap_angle(next.mean(3));
  next.covariance =
      symmetrize(Eigen::Matrix4d((Eigen::Matrix4d::Identity() - trace.gain * H) * P));
  next.step_index = fs.step_index;
  return {next, trace};
}

Eigen::Matrix4d joseph_covariance(const Eigen::Matrix4d& P,
                                  const Eigen::Matrix<double, 4, 2>& K,
                                  const Eigen::Matrix2d& R) {
  const Eigen::Matrix4d A = Eigen::Matrix4d::Identity() - K * observation_matrix();
  return A * P * A.transpose() + K * R * K.transpose();
}

StateVector ParticleSet::estimate() const {
  StateVector mean = StateVector::Zero();
  double sin_sum = 0.0;
  double cos_sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double w = weights[i];
    mean.head<3>() += w * states[i].head<3>();
    sin_sum += w * std::sin(states[i](3));
    cos_sum += w * std::cos(states[i](3));
  }
  mean(3) = std::atan2(sin_sum, cos_sum);
  return mean;
}

ParticleSet pf_initialize(const StateVector& mean, const StateCovariance& covariance,
                          int count, Rng& rng) {
  if (count < 1) throw ValidationError("particle count must be positive");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(symmetrize(covariance));
  const Eigen::Matrix4d root = eig.eigenvectors() *
                               eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  ParticleSet set;
  set.states.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    StateVector draw;
    for (int k = 0; k < 4; ++k) draw(k) = rng.normal();
    StateVector x = mean + root * draw;
    x(2) = std::max(0.0, x(2));
    x(3) = wrap_angle(x(3));
    set.states.push_back(x);
  }
  set.weights.assign(static_cast<std::size_t>(count), 1.0 / count);
  return set;
}

double effective_sample_size(const std::vector<double>& weights) {
  double sum_sq = 0.0;
  for (double w : weights) sum_sq += w * w;
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

std::vector<std::size_t> systematic_resample(const std::vector<double>& weights, Rng& rng) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> indices(n);
  const double step = 1.0 / static_cast<double>(n);
  double target = rng.uniform() * step;
  double cumulative = weights.front();
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (target > cumulative && j + 1 < n) cumulative += weights[++j];
    indices[i] = j;
    target += step;
  }
  return indices;
}

void pf_step(ParticleSet& particles, const ControlInput& u, const PositionFix& z,
             const MotionLimits& lim, const NoiseParams& noise, const TerrainModel& terrain,
             const FilterConfig& cfg, Rng& rng) {
  const std::size_t n = particles.size();
  const Eigen::Matrix2d r_inv = cfg.R.inverse();
  std::vector<double> log_w(n);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    MotionState s = to_motion_state(particles.states[i]);
    s.v = std::min(s.v, lim.v_max);
    particles.states[i] = to_state_vector(step(s, u, lim, noise, terrain, rng));
    const Eigen::Vector2d y(z.position.x - particles.states[i](0),
                            z.position.y - particles.states[i](1));
    log_w[i] = std::log(particles.weights[i]) - 0.5 * y.dot(r_inv * y);
    max_log = std::max(max_log, log_w[i]);
  }

  double total = 0.0;
  if (std::isfinite(max_log)) {
    for (std::size_t i = 0; i < n; ++i) {
      particles.weights[i] = std::exp(log_w[i] - max_log);
      total += particles.weights[i];
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    particles.weights.assign(n, 1.0 / static_cast<double>(n));
    ++particles.degeneracy_events;
  } else {
    for (double& w : particles.weights) w /= total;
  }

  if (effective_sample_size(particles.weights) <
      cfg.resample_threshold * static_cast<double>(n)) {
    const std::vector<std::size_t> idx = systematic_resample(particles.weights, rng);
    std::vector<StateVector> resampled(n);
    for (std::size_t i = 0; i < n; ++i) resampled[i] = particles.states[idx[i]];
    particles.states = std::move(resampled);
    particles.weights.assign(n, 1.0 / static_cast<double>(n));
    ++particles.resample_count;
  }
}

namespace {

class EkfEstimator final : public StateEstimator {
 public:
  EkfEstimator(const FilterState& initial, const EstimatorContext& ctx)
      : state_(initial), ctx_(ctx) {}

  void predict(const ControlInput& u) override {
    state_ = ekf_predict(state_, u, ctx_.limits, ctx_.terrain, ctx_.config);
  }
  void update(const PositionFix& z) override {
    state_ = ekf_update(state_, z, ctx_.config).first;
  }
  MotionState estimate() const override { return to_motion_state(state_.mean); }

 private:
  FilterState state_;
  EstimatorContext ctx_;
};

// Prediction is deferred to update() since the bootstrap step fuses both.
class PfEstimator final : public StateEstimator {
 public:
  PfEstimator(const FilterState& initial, const EstimatorContext& ctx, Rng rng)
      : ctx_(ctx), rng_(rng) {
    particles_ = pf_initialize(initial.mean, initial.covariance,
                               ctx.config.particle_count, rng_);
    estimate_ = particles_.estimate();
  }

  void predict(const ControlInput& u) override { pending_ = u; }
  void update(const PositionFix& z) override {
    pf_step(particles_, pending_, z, ctx_.limits, ctx_.process_noise, ctx_.terrain,
            ctx_.config, rng_);
    estimate_ = particles_.estimate();
  }
  MotionState estimate() const override { return to_motion_state(estimate_); }
  int degeneracy_events() const override { return particles_.degeneracy_events; }

 private:
  EstimatorContext ctx_;
  Rng rng_;
  ParticleSet particles_;
  StateVector estimate_;
  ControlInput pending_;
};

}  // namespace

std::unique_ptr<StateEstimator> make_estimator(FilterKind kind, const FilterState& initial,
                                               const EstimatorContext& ctx, Rng rng) {
  if (kind == FilterKind::kEkf) return std::make_unique<EkfEstimator>(initial, ctx);
  return std::make_unique<PfEstimator>(initial, ctx, rng);
}

}  // namespace safenav
