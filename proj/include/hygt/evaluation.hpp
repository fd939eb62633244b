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

#include <cmath>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "hygt/bundle.hpp"
#include "hygt/dataset.hpp"
#include "hygt/fixedpoint.hpp"
#include "hygt/optimizer.hpp"
#include "hygt/statistics.hpp"

namespace hygt {

/// One per-block-size entry of a coding scheme: either the KLT or a HyGT
/// with the given number of rounds, replicated num_transforms times (one per
/// class and candidate).
struct TransformChoice {
  int log2_n = 4;
  int rounds = 1;      // ignored when use_klt
  bool use_klt = false;
  int num_transforms = 1;
};

/// memory used by equivalent KLTs / memory used by the chosen transforms,
/// in storage units of one scalar each, summed over all entries.
inline double memory_usage_ratio(std::span<const TransformChoice> choices) {
  if (choices.empty()) throw ArgumentError("memory_usage_ratio: no entries");
  std::size_t klt_units = 0;
  std::size_t used_units = 0;
  for (const auto& ch : choices) {
    klt_units += memory_footprint(TransformKind::klt, ch.log2_n, 1, ch.num_transforms);
    used_units += ch.use_klt
                      ? memory_footprint(TransformKind::klt, ch.log2_n, 1, ch.num_transforms)
                      : memory_footprint(TransformKind::hygt, ch.log2_n, ch.rounds,
                                         ch.num_transforms);
  }
  return static_cast<double>(klt_units) / static_cast<double>(used_units);
}

struct ClassEvaluation {
  std::size_t class_id = 0;
  std::size_t sample_count = 0;
  double hygt_gain_db = 0.0;
  double klt_gain_db = 0.0;
  double gain_ratio = 0.0;
  std::size_t hygt_parameters = 0;
  std::size_t klt_parameters = 0;
  bool degenerate = false;  // hit the variance floor (rank-deficient source)
};

struct BundleEvaluation {
  int log2_n = 0;
  int angle_bits = 0;
  std::vector<ClassEvaluation> classes;
  std::size_t hygt_memory_units = 0;
  std::size_t klt_memory_units = 0;
  double memory_ratio = 0.0;
  double mean_hygt_gain_db = 0.0;
  double mean_klt_gain_db = 0.0;
  double mean_gain_ratio = 0.0;
};

struct EvalReport {
  std::vector<BundleEvaluation> bundles;
  std::size_t hygt_memory_units = 0;
  std::size_t klt_memory_units = 0;
  double memory_ratio = 0.0;   // combined over all bundles
  double mean_gain_ratio = 0.0;  // over all classes of all bundles
};

/// Per-class coding gains of a bundle against the KLT trained on the same
/// data, plus the storage accounting. Quantized bundles are scored on their
/// dequantized angles.
inline BundleEvaluation evaluate_bundle(const ModelBundle& bundle, const ResidualDataset& data) {
  if (data.log2_n() != bundle.log2_n())
    throw ArgumentError("evaluate_bundle: model/data dimension mismatch");
  if (data.class_count() != bundle.class_count())
    throw ArgumentError("evaluate_bundle: model/data class count mismatch");

  BundleEvaluation out;
  out.log2_n = bundle.log2_n();
  out.angle_bits = bundle.angle_bits();
  const std::size_t n = bundle.dimension();

  for (std::size_t c = 0; c < bundle.class_count(); ++c) {
    ClassEvaluation ce;
    ce.class_id = c;
    ce.hygt_parameters = num_parameters(bundle.log2_n(), bundle.rounds(c));
    ce.klt_parameters = n * n;
    out.hygt_memory_units += ce.hygt_parameters;
    out.klt_memory_units += ce.klt_parameters;

    CorrelationAccumulator acc(n);
    for (const auto& block : data.blocks())
      if (block.class_id == c) acc.add(block.values);
    ce.sample_count = acc.count();
    if (ce.sample_count > 0) {
      const CorrelationMatrix phi = acc.finalize();
      const HyGTModel model = bundle.dequantized(c);
      const CorrelationMatrix propagated = propagate_covariance(model, phi);
      VarianceVector v;
      v.values.resize(n);
      for (std::size_t i = 0; i < n; ++i) v.values[i] = propagated.values()(i, i);
      const CodingGain hg = coding_gain(v);
      const KLTResult klt = jacobi_eigen(phi);
      const CodingGain kg = coding_gain(VarianceVector{klt.eigenvalues});
      ce.hygt_gain_db = hg.gain_db;
      ce.klt_gain_db = kg.gain_db;
      ce.degenerate = hg.clamped > 0 || kg.clamped > 0;
      ce.gain_ratio = kg.gain_db > 1e-15 ? hg.gain_db / kg.gain_db : 1.0;
    } else {
      ce.degenerate = true;
      ce.gain_ratio = 1.0;
    }
    out.classes.push_back(ce);
  }

  out.memory_ratio =
      static_cast<double>(out.klt_memory_units) / static_cast<double>(out.hygt_memory_units);
  for (const auto& ce : out.classes) {
    out.mean_hygt_gain_db += ce.hygt_gain_db;
    out.mean_klt_gain_db += ce.klt_gain_db;
    out.mean_gain_ratio += ce.gain_ratio;
  }
  const double inv = 1.0 / static_cast<double>(out.classes.size());
  out.mean_hygt_gain_db *= inv;
  out.mean_klt_gain_db *= inv;
  out.mean_gain_ratio *= inv;
  return out;
}

/// Evaluates each (bundle, dataset) pair and aggregates the memory ratio over
/// all of them, so mixed block sizes combine the way a deployment storing
/// every set side by side would.
inline EvalReport evaluate(std::span<const std::pair<ModelBundle, ResidualDataset>> pairs) {
  if (pairs.empty()) throw ArgumentError("evaluate: no bundles");
  EvalReport report;
  std::size_t classes = 0;
  for (const auto& [bundle, data] : pairs) {
    BundleEvaluation be = evaluate_bundle(bundle, data);
    report.hygt_memory_units += be.hygt_memory_units;
    report.klt_memory_units += be.klt_memory_units;
    for (const auto& ce : be.classes) {
      report.mean_gain_ratio += ce.gain_ratio;
      ++classes;
    }
    report.bundles.push_back(std::move(be));
  }
  report.memory_ratio =
      static_cast<double>(report.klt_memory_units) / static_cast<double>(report.hygt_memory_units);
  report.mean_gain_ratio /= static_cast<double>(classes);
  return report;
}

namespace detail {

inline double round4(double v) { return std::round(v * 1e4) / 1e4; }

}  // namespace detail

/// Stable-key-order JSON rendering; gains and ratios rounded to 4 decimals so
/// reports diff cleanly.
inline nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["bundles"] = nlohmann::ordered_json::array();
  for (const auto& be : report.bundles) {
    nlohmann::ordered_json jb;
    jb["log2_n"] = be.log2_n;
    jb["dimension"] = 1 << be.log2_n;
    jb["angle_bits"] = be.angle_bits;
    jb["classes"] = nlohmann::ordered_json::array();
    for (const auto& ce : be.classes) {
      nlohmann::ordered_json jc;
      jc["class_id"] = ce.class_id;
      jc["sample_count"] = ce.sample_count;
      jc["hygt_gain_db"] = detail::round4(ce.hygt_gain_db);
      jc["klt_gain_db"] = detail::round4(ce.klt_gain_db);
      jc["gain_ratio"] = detail::round4(ce.gain_ratio);
      jc["hygt_parameters"] = ce.hygt_parameters;
      jc["klt_parameters"] = ce.klt_parameters;
      jc["degenerate"] = ce.degenerate;
      jb["classes"].push_back(std::move(jc));
    }
    jb["hygt_memory_units"] = be.hygt_memory_units;
    jb["klt_memory_units"] = be.klt_memory_units;
    jb["memory_ratio"] = detail::round4(be.memory_ratio);
    jb["mean_hygt_gain_db"] = detail::round4(be.mean_hygt_gain_db);
    jb["mean_klt_gain_db"] = detail::round4(be.mean_klt_gain_db);
    jb["mean_gain_ratio"] = detail::round4(be.mean_gain_ratio);
    j["bundles"].push_back(std::move(jb));
  }
  nlohmann::ordered_json jt;
  jt["hygt_memory_units"] = report.hygt_memory_units;
  jt["klt_memory_units"] = report.klt_memory_units;
  jt["memory_ratio"] = detail::round4(report.memory_ratio);
  jt["mean_gain_ratio"] = detail::round4(report.mean_gain_ratio);
  j["total"] = std::move(jt);
  return j;
}

}  // namespace hygt
