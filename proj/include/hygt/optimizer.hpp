/*
Copyright 2026 The hygt authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "hygt/matrix.hpp"
#include "hygt/model.hpp"
#include "hygt/rng.hpp"
#include "hygt/statistics.hpp"
#include "hygt/transform.hpp"

namespace hygt {

enum class InitMode { greedy_jacobi, random, zero };

struct OptimizerConfig {
  int restarts = 4;
  int max_sweeps = 50;
  double gain_tolerance_db = 1e-4;  // stop a restart when a sweep gains less
  std::uint64_t seed = 0;
  InitMode init_mode = InitMode::greedy_jacobi;  // restart 0; others are random
};

struct TrainingReport {
  std::vector<double> restart_gains_db;           // final gain per restart
  std::size_t best_restart = 0;                   // ties go to the lowest index
  std::vector<std::vector<double>> trajectories;  // per restart, gain after each sweep
  double klt_gain_db = 0.0;
  double gain_ratio = 0.0;  // best restart gain / KLT gain
};

namespace detail {

// A <- G A G^T for the rotation acting on rows/columns m and n.
inline void conjugate_pair(Matrix& a, std::uint32_t m, std::uint32_t n, double c, double s) {
  const std::size_t dim = a.n();
  double* row_m = a.data().data() + static_cast<std::size_t>(m) * dim;
  double* row_n = a.data().data() + static_cast<std::size_t>(n) * dim;
  for (std::size_t j = 0; j < dim; ++j) {
    const double am = row_m[j];
    const double an = row_n[j];
    row_m[j] = c * am + s * an;
    row_n[j] = c * an - s * am;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const double aim = a(i, m);
    const double ain = a(i, n);
    a(i, m) = c * aim + s * ain;
    a(i, n) = c * ain - s * aim;
  }
}

// One butterfly position in application order.
struct PairStep {
  std::uint32_t m;
  std::uint32_t n;
  std::uint32_t angle;  // index into the flat angle array
};

inline std::vector<PairStep> pair_schedule(int log2_n, int rounds) {
  const std::size_t half = std::size_t{1} << (log2_n - 1);
  std::vector<PairStep> steps;
  steps.reserve(static_cast<std::size_t>(rounds) * log2_n * half);
  std::uint32_t angle = 0;
  for (int r = 0; r < rounds; ++r) {
    for (int p = 0; p < log2_n; ++p) {
      const std::uint32_t k = 1u << p;
      for (std::uint32_t j = 0; j < half; ++j) {
        const std::uint32_t m = j + (j & (0u - k));
        steps.push_back({m, m + k, angle++});
      }
    }
  }
  return steps;
}

inline double gain_db_from_diag(const Matrix& a) {
  VarianceVector v;
  v.values.resize(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) v.values[i] = a(i, i);
  return coding_gain_db(v);
}

}  // namespace detail

/// Covariance pushed through the first `num_passes` passes of the model:
/// Phi <- G Phi G^T pair by pair, O(N^2) per pass, no dense matrix product.
inline CorrelationMatrix propagate_covariance(const HyGTModel& model, const CorrelationMatrix& phi,
                                              std::size_t num_passes) {
  if (phi.n() != model.dimension()) throw ArgumentError("propagate_covariance: dimension mismatch");
  if (num_passes > model.pass_count())
    throw ArgumentError("propagate_covariance: prefix longer than the model");
  Matrix cov = phi.values();
  const std::size_t half = model.pairs_per_pass();
  const int log2_n = model.log2_n();
  for (std::size_t step = 0; step < num_passes; ++step) {
    const int r = static_cast<int>(step) / log2_n;
    const int p = static_cast<int>(step) % log2_n;
    const std::uint32_t k = 1u << p;
    const std::size_t base = model.angle_index(r, p, 0);
    for (std::uint32_t j = 0; j < half; ++j) {
      const std::uint32_t m = j + (j & (0u - k));
      const double t = model.angles()[base + j];
      detail::conjugate_pair(cov, m, m + k, std::cos(t), std::sin(t));
    }
  }
  return CorrelationMatrix(std::move(cov), phi.sample_count());
}

/// Covariance through the whole model, including the sorting pass if present.
inline CorrelationMatrix propagate_covariance(const HyGTModel& model,
                                              const CorrelationMatrix& phi) {
  CorrelationMatrix out = propagate_covariance(model, phi, model.pass_count());
  if (!model.permutation()) return out;
  const auto& perm = *model.permutation();
  const std::size_t n = out.n();
  Matrix permuted(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) permuted(i, j) = out.values()(perm[i], perm[j]);
  return CorrelationMatrix(std::move(permuted), phi.sample_count());
}

/// Rotation angle that zeroes the cross-correlation of one coordinate pair:
/// theta = atan2(2*phi_mn, phi_mm - phi_nn) / 2. With the butterfly sign
/// convention used here, the rotated pair has zero cross-term and the larger
/// variance lands on index m.
inline double jacobi_angle(double phi_mm, double phi_nn, double phi_mn) {
  return 0.5 * std::atan2(2.0 * phi_mn, phi_mm - phi_nn);
}

/// Deterministic initialization: walk the passes in application order and set
/// each butterfly to the local diagonalizing angle of the covariance
/// propagated so far. For N = 2 this is already the exact optimum.
inline HyGTModel greedy_init(const CorrelationMatrix& phi, int log2_n, int rounds) {
  if (log2_n < 1 || log2_n > kMaxLog2N)
    throw ArgumentError("greedy_init: log2_n out of range [1, 16]");
  const std::size_t n = std::size_t{1} << log2_n;
  if (phi.n() != n) throw ArgumentError("greedy_init: dimension mismatch");
  const auto steps = detail::pair_schedule(log2_n, rounds);
  std::vector<double> angles(steps.size(), 0.0);
  Matrix cov = phi.values();
  for (const auto& s : steps) {
    const double t = jacobi_angle(cov(s.m, s.m), cov(s.n, s.n), cov(s.m, s.n));
    angles[s.angle] = t;
    detail::conjugate_pair(cov, s.m, s.n, std::cos(t), std::sin(t));
  }
  return HyGTModel(log2_n, rounds, std::move(angles));
}

namespace detail {

// Coordinate-descent engine: cyclic per-angle line search on the true coding
// gain. For the angle at position t the covariance propagated through
// positions [0, t) is maintained incrementally; a candidate angle is scored
// by conjugating a scratch copy through the remaining positions. The current
// angle always competes, so a sweep can never lower the gain.
class CoordinateDescent {
 public:
  CoordinateDescent(const CorrelationMatrix& phi, int log2_n, int rounds)
      : phi_(phi), steps_(pair_schedule(log2_n, rounds)), dim_(std::size_t{1} << log2_n),
        prefix_(dim_), work_(dim_) {}

  const std::vector<PairStep>& steps() const { return steps_; }

  double full_gain(const std::vector<double>& angles) const {
    Matrix cov = phi_.values();
    for (const auto& s : steps_)
      conjugate_pair(cov, s.m, s.n, std::cos(angles[s.angle]), std::sin(angles[s.angle]));
    return gain_db_from_diag(cov);
  }

  // One sweep in application order; returns the gain after the sweep.
  double sweep(std::vector<double>& angles) {
    refresh_caches(angles);
    prefix_ = phi_.values();
    for (std::size_t t = 0; t < steps_.size(); ++t) {
      const PairStep& s = steps_[t];
      double best_theta = angles[s.angle];
      double best_gain = candidate_gain(t, best_theta);

      // Coarse grid over [0, pi), then golden-section refinement around the
      // best grid point. The diagonalizing angle is pi-periodic; dependence
      // on later passes is what the refinement and keep-current guard cover.
      constexpr int kGridPoints = 33;
      double grid_best_theta = 0.0;
      double grid_best_gain = -1.0;
      for (int g = 0; g < kGridPoints; ++g) {
        const double theta = std::numbers::pi * static_cast<double>(g) / kGridPoints;
        const double gain = candidate_gain(t, theta);
        if (gain > grid_best_gain) {
          grid_best_gain = gain;
          grid_best_theta = theta;
        }
      }
      if (grid_best_gain > best_gain) {
        best_gain = grid_best_gain;
        best_theta = grid_best_theta;
      }
      const double delta = std::numbers::pi / kGridPoints;
      auto [ref_theta, ref_gain] =
          golden_section(t, grid_best_theta - delta, grid_best_theta + delta);
      if (ref_gain > best_gain) {
        best_gain = ref_gain;
        best_theta = ref_theta;
      }

      if (best_theta != angles[s.angle]) {
        angles[s.angle] = best_theta;
        cos_[s.angle] = std::cos(best_theta);
        sin_[s.angle] = std::sin(best_theta);
      }
      conjugate_pair(prefix_, s.m, s.n, cos_[s.angle], sin_[s.angle]);
    }
    return gain_db_from_diag(prefix_);
  }

 private:
  void refresh_caches(const std::vector<double>& angles) {
    cos_.resize(angles.size());
    sin_.resize(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      cos_[i] = std::cos(angles[i]);
      sin_[i] = std::sin(angles[i]);
    }
  }

  // Gain with the angle at position t set to theta and all others unchanged.
  double candidate_gain(std::size_t t, double theta) {
    work_.data() = prefix_.data();
    const PairStep& s = steps_[t];
    conjugate_pair(work_, s.m, s.n, std::cos(theta), std::sin(theta));
    for (std::size_t u = t + 1; u < steps_.size(); ++u) {
      const PairStep& r = steps_[u];
      conjugate_pair(work_, r.m, r.n, cos_[r.angle], sin_[r.angle]);
    }
    return gain_db_from_diag(work_);
  }

  std::pair<double, double> golden_section(std::size_t t, double lo, double hi) {
    constexpr double kRatio = 0.6180339887498949;
    constexpr int kIterations = 28;
    double a = lo, b = hi;
    double c = b - kRatio * (b - a);
    double d = a + kRatio * (b - a);
    double fc = candidate_gain(t, c);
    double fd = candidate_gain(t, d);
    for (int it = 0; it < kIterations; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kRatio * (b - a);
        fc = candidate_gain(t, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kRatio * (b - a);
        fd = candidate_gain(t, d);
      }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
  }

  const CorrelationMatrix& phi_;
  std::vector<PairStep> steps_;
  std::size_t dim_;
  Matrix prefix_;
  Matrix work_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

inline std::vector<double> random_angles(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> angles(count);
  for (double& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return angles;
}

}  // namespace detail

/// Searches for the angle set maximizing the transform coding gain of the
/// propagated covariance diagonal. Restart 0 starts from the configured
/// deterministic initialization (greedy by default); the remaining restarts
/// start from uniform random angles drawn from per-restart seeded streams.
/// Each restart runs monotone coordinate-descent sweeps until the
/// per-sweep improvement drops below gain_tolerance_db or max_sweeps is hit;
/// the best restart wins, ties resolved to the lowest index, so parallel and
/// serial execution agree. The KLT gain on the same covariance is computed
/// as the reference upper bound and never exceeded.
inline std::pair<HyGTModel, TrainingReport> optimize(const CorrelationMatrix& phi, int log2_n,
                                                     int rounds, const OptimizerConfig& config) {
  if (log2_n < 1 || log2_n > kMaxLog2N)
    throw ArgumentError("optimize: log2_n out of range [1, 16]");
  const std::size_t n = std::size_t{1} << log2_n;
  if (phi.n() != n) throw ArgumentError("optimize: dimension mismatch");
  if (config.restarts < 1) throw ArgumentError("optimize: restarts must be >= 1");
  if (config.max_sweeps < 1) throw ArgumentError("optimize: max_sweeps must be >= 1");
  if (!(config.gain_tolerance_db > 0.0))
    throw ArgumentError("optimize: gain_tolerance_db must be positive");

  const KLTResult klt = jacobi_eigen(phi);
  const double eigen_floor = -1e-10 * std::abs(phi.trace());
  for (const double ev : klt.eigenvalues)
    if (ev < eigen_floor) throw ArgumentError("optimize: covariance is not positive semi-definite");
  const double klt_gain = coding_gain_db(VarianceVector{klt.eigenvalues});

  const std::size_t param_count = num_parameters(log2_n, rounds);
  detail::CoordinateDescent engine(phi, log2_n, rounds);

  TrainingReport report;
  report.klt_gain_db = klt_gain;
  std::vector<double> best_angles;
  double best_gain = 0.0;

  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<double> angles;
    if (restart == 0) {
      switch (config.init_mode) {
        case InitMode::greedy_jacobi:
          angles = greedy_init(phi, log2_n, rounds).angles();
          break;
        case InitMode::zero:
          angles.assign(param_count, 0.0);
          break;
        case InitMode::random:
          angles = detail::random_angles(param_count, derive_seed(config.seed, 0));
          break;
      }
    } else {
      angles = detail::random_angles(param_count, derive_seed(config.seed, restart));
    }

    std::vector<double> trajectory;
    trajectory.push_back(engine.full_gain(angles));
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      const double gained = engine.sweep(angles);
      const double improvement = gained - trajectory.back();
      trajectory.push_back(std::max(gained, trajectory.back()));
      if (improvement < config.gain_tolerance_db) break;
    }

    const double final_gain = trajectory.back();
    report.restart_gains_db.push_back(final_gain);
    report.trajectories.push_back(std::move(trajectory));
    if (best_angles.empty() || final_gain > best_gain) {
      best_gain = final_gain;
      best_angles = angles;
      report.best_restart = static_cast<std::size_t>(restart);
    }
  }

  report.gain_ratio = klt_gain > 1e-15 ? best_gain / klt_gain : 1.0;
  return {HyGTModel(log2_n, rounds, std::move(best_angles)), std::move(report)};
}

/// Attaches the sorting pass: a permutation ordering transformed variances in
/// non-increasing order, ties broken by ascending original index.
inline HyGTModel variance_permutation(const HyGTModel& model, const CorrelationMatrix& phi) {
  if (model.permutation()) throw ArgumentError("variance_permutation: model already has one");
  const CorrelationMatrix propagated = propagate_covariance(model, phi);
  const std::size_t n = propagated.n();
  std::vector<std::uint16_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint16_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint16_t a, std::uint16_t b) {
    return propagated.values()(a, a) > propagated.values()(b, b);
  });
  return model.with_permutation(std::move(perm));
}

}  // namespace hygt
