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

// Command-line front end: synthesize residual datasets, train per-class
// transforms, apply them in float or integer arithmetic, and report coding
// gain and memory figures against the KLT.

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hygt/hygt.hpp"

namespace {

struct GenDataArgs {
  int block_size = 4;
  double rho = 0.95;
  std::size_t count = 10000;
  int classes = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_data(const GenDataArgs& args) {
  if (args.block_size < 2) throw hygt::ArgumentError("gen-data: block size must be >= 2");
  if (args.classes < 1 || args.classes > 0xFFFF)
    throw hygt::ArgumentError("gen-data: classes out of range");

  std::vector<hygt::ResidualBlock> blocks;
  int log2_n = 0;
  for (int c = 0; c < args.classes; ++c) {
    // Distinct per-class statistics: class k decays slightly faster.
    const double rho_c = std::pow(args.rho, 1.0 + static_cast<double>(c) / 10.0);
    const hygt::CorrelationMatrix cov = hygt::ar1_covariance_2d(args.block_size, rho_c);
    hygt::ResidualDataset part =
        hygt::sample_residuals(cov, args.count, hygt::derive_seed(args.seed, c));
    log2_n = part.log2_n();
    for (const auto& b : part.blocks())
      blocks.push_back({static_cast<std::uint16_t>(c), b.values});
  }
  hygt::ResidualDataset ds(log2_n, static_cast<std::uint16_t>(args.classes), std::move(blocks));
  hygt::write_rblk(args.out, ds);
  std::printf("wrote %zu blocks of dimension %zu (%d classes) to %s\n", ds.blocks().size(),
              ds.dimension(), args.classes, args.out.c_str());
  return 0;
}

struct TrainArgs {
  std::string data;
  int rounds = 2;
  int restarts = 4;
  std::uint64_t seed = 0;
  int angle_bits = 0;
  std::string out;
};

int run_train(const TrainArgs& args) {
  if (args.rounds < 1 || args.rounds > 255)
    throw hygt::ArgumentError("train: rounds out of range [1, 255]");
  if (args.angle_bits != 0 && (args.angle_bits < 1 || args.angle_bits > 8))
    throw hygt::ArgumentError("train: angle-bits must be 0 (float) or in [1, 8]");

  const hygt::ResidualDataset ds = hygt::read_rblk(args.data);
  const std::size_t n = ds.dimension();
  std::vector<hygt::HyGTModel> models;

  for (std::uint16_t c = 0; c < ds.class_count(); ++c) {
    hygt::CorrelationAccumulator acc(n);
    for (const auto& b : ds.blocks())
      if (b.class_id == c) acc.add(b.values);

    if (acc.count() < n) {
      std::fprintf(stderr,
                   "warning: class %u has %zu samples (< %zu), keeping identity transform\n", c,
                   acc.count(), n);
      models.push_back(hygt::HyGTModel::zeros(ds.log2_n(), args.rounds));
      std::printf("class %u: hygt 0.0000 dB  klt 0.0000 dB  ratio 1.0000  (identity)\n", c);
      continue;
    }

    const hygt::CorrelationMatrix phi = acc.finalize();
    hygt::OptimizerConfig config;
    config.restarts = args.restarts;
    config.seed = hygt::derive_seed(args.seed, c);
    auto [model, report] = hygt::optimize(phi, ds.log2_n(), args.rounds, config);
    model = hygt::variance_permutation(model, phi);
    std::printf("class %u: hygt %.4f dB  klt %.4f dB  ratio %.4f\n", c,
                report.restart_gains_db[report.best_restart], report.klt_gain_db,
                report.gain_ratio);
    models.push_back(std::move(model));
  }

  if (args.angle_bits > 0) {
    std::vector<hygt::QuantizedHyGTModel> quantized;
    quantized.reserve(models.size());
    for (const auto& m : models) quantized.push_back(hygt::quantize_model(m, args.angle_bits));
    hygt::write_bundle(args.out, hygt::ModelBundle(std::move(quantized)));
  } else {
    hygt::write_bundle(args.out, hygt::ModelBundle(std::move(models)));
  }
  std::printf("wrote model bundle to %s\n", args.out.c_str());
  return 0;
}

struct ApplyArgs {
  std::string model;
  std::string data;
  std::string direction = "forward";
  std::string arithmetic = "float";
  std::string out;
};

int run_apply(const ApplyArgs& args) {
  const hygt::ModelBundle bundle = hygt::read_bundle(args.model);
  const hygt::ResidualDataset ds = hygt::read_rblk(args.data);
  if (ds.log2_n() != bundle.log2_n())
    throw hygt::ArgumentError("apply: model/data dimension mismatch");
  if (ds.class_count() != bundle.class_count())
    throw hygt::ArgumentError("apply: model/data class count mismatch");
  const bool fwd = args.direction == "forward";

  std::vector<hygt::ResidualBlock> out_blocks;
  out_blocks.reserve(ds.blocks().size());

  if (args.arithmetic == "float") {
    std::vector<hygt::HyGTModel> cache;
    for (std::size_t c = 0; c < bundle.class_count(); ++c) cache.push_back(bundle.dequantized(c));
    for (const auto& b : ds.blocks()) {
      const auto& model = cache[b.class_id];
      out_blocks.push_back(
          {b.class_id, fwd ? hygt::forward(model, b.values) : hygt::inverse(model, b.values)});
    }
  } else {
    if (!bundle.quantized())
      throw hygt::ArgumentError(
          "apply: fixed arithmetic needs a quantized bundle (train with --angle-bits 8)");
    const hygt::TrigTable table(bundle.angle_bits(), bundle.precision_bits());
    for (const auto& b : ds.blocks()) {
      std::vector<std::int64_t> x(b.values.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::llround(b.values[i]);
      const auto& model = bundle.quantized_model(b.class_id);
      const std::vector<std::int64_t> y = fwd ? hygt::forward_fixed(model, table, std::move(x))
                                              : hygt::inverse_fixed(model, table, std::move(x));
      hygt::ResidualBlock ob;
      ob.class_id = b.class_id;
      ob.values.assign(y.begin(), y.end());
      out_blocks.push_back(std::move(ob));
    }
  }

  hygt::write_rblk(args.out,
                   hygt::ResidualDataset(ds.log2_n(), ds.class_count(), std::move(out_blocks)));
  std::printf("wrote %zu transformed blocks to %s\n", ds.blocks().size(), args.out.c_str());
  return 0;
}

struct EvalArgs {
  std::vector<std::string> models;
  std::vector<std::string> datasets;
  std::string report;
};

int run_eval(const EvalArgs& args) {
  if (args.models.size() != args.datasets.size())
    throw hygt::ArgumentError("eval: need one --data per --model");
  std::vector<std::pair<hygt::ModelBundle, hygt::ResidualDataset>> pairs;
  for (std::size_t i = 0; i < args.models.size(); ++i)
    pairs.emplace_back(hygt::read_bundle(args.models[i]), hygt::read_rblk(args.datasets[i]));
  const hygt::EvalReport report = hygt::evaluate(pairs);
  auto os = hygt::open_output(args.report);
  os << hygt::to_json(report).dump(2) << '\n';
  if (!os) throw hygt::IoError("eval: cannot write report");
  std::printf("memory ratio %.4f, mean gain ratio %.4f, report in %s\n", report.memory_ratio,
              report.mean_gain_ratio, args.report.c_str());
  return 0;
}

struct ExportArgs {
  std::string model;
  int class_id = 0;
  std::string out;
};

int run_export_matrix(const ExportArgs& args) {
  const hygt::ModelBundle bundle = hygt::read_bundle(args.model);
  if (args.class_id < 0 || static_cast<std::size_t>(args.class_id) >= bundle.class_count())
    throw hygt::ArgumentError("export-matrix: class out of range");
  const hygt::Matrix t = hygt::to_matrix(bundle.dequantized(args.class_id));
  auto os = hygt::open_output(args.out);
  hygt::write_matrix_text(os, t);
  if (!os) throw hygt::IoError("export-matrix: cannot write matrix");
  std::printf("wrote %zux%zu matrix to %s\n", t.n(), t.n(), args.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercube-Givens transform toolkit"};
  app.require_subcommand(1);

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "synthesize a class-labeled residual dataset");
  gen_cmd->add_option("--block-size", gen.block_size, "square block side (power of two)");
  gen_cmd->add_option("--rho", gen.rho, "AR(1) correlation coefficient in [0, 1)");
  gen_cmd->add_option("--count", gen.count, "blocks per class");
  gen_cmd->add_option("--classes", gen.classes, "number of classes");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output dataset path")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train one transform per class");
  train_cmd->add_option("--data", train.data, "input dataset path")->required();
  train_cmd->add_option("--rounds", train.rounds, "rounds per transform");
  train_cmd->add_option("--restarts", train.restarts, "optimizer restarts");
  train_cmd->add_option("--seed", train.seed, "random seed");
  train_cmd->add_option("--angle-bits", train.angle_bits,
                        "quantize angles to this many bits (0 keeps float64)");
  train_cmd->add_option("--out", train.out, "output model bundle path")->required();

  ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "transform every block of a dataset");
  apply_cmd->add_option("--model", apply.model, "model bundle path")->required();
  apply_cmd->add_option("--data", apply.data, "input dataset path")->required();
  apply_cmd->add_option("--direction", apply.direction, "forward or inverse")
      ->check(CLI::IsMember({"forward", "inverse"}));
  apply_cmd->add_option("--arithmetic", apply.arithmetic, "float or fixed")
      ->check(CLI::IsMember({"float", "fixed"}));
  apply_cmd->add_option("--out", apply.out, "output dataset path")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "coding gain and memory report vs the KLT");
  eval_cmd->add_option("--model", eval.models, "model bundle path (repeatable)")->required();
  eval_cmd->add_option("--data", eval.datasets, "dataset path (one per model)")->required();
  eval_cmd->add_option("--report", eval.report, "output JSON report path")->required();

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-matrix", "write one class's dense matrix as text");
  export_cmd->add_option("--model", exp.model, "model bundle path")->required();
  export_cmd->add_option("--class", exp.class_id, "class index");
  export_cmd->add_option("--out", exp.out, "output text path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen_data(gen);
    if (train_cmd->parsed()) return run_train(train);
    if (apply_cmd->parsed()) return run_apply(apply);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (export_cmd->parsed()) return run_export_matrix(exp);
  } catch (const hygt::ArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const hygt::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hygt::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
