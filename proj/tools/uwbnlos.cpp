/*
 * Copyright 2026 The uwbnlos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: train, evaluate, predict, synth, reconstruct.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "uwbnlos/dataset.hpp"
#include "uwbnlos/error.hpp"
#include "uwbnlos/metrics.hpp"
#include "uwbnlos/model_io.hpp"
#include "uwbnlos/pipeline.hpp"
#include "uwbnlos/report.hpp"
#include "uwbnlos/synth.hpp"

namespace {

using namespace uwbnlos;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  invalid arguments or configuration\n"
    "  3  input data problem (unreadable, empty, single class, inconsistent width)\n"
    "  4  dimension mismatch between model and data\n"
    "  5  numerical precondition failed (rank, whitening, conditioning, no signal)\n"
    "  6  model file problem (schema mismatch, corrupt)\n"
    "  7  output exists (use --force)\n";

struct LayoutFlags {
  std::string label_col = "first";
  std::string label_enc = "01";
  bool header = false;

  void attach(CLI::App* app) {
    app->add_option("--label-col", label_col, "Label column position")
        ->check(CLI::IsMember({"first", "last"}))
        ->capture_default_str();
    app->add_option("--label-enc", label_enc, "Label spelling: 01, yesno or pm1")
        ->check(CLI::IsMember({"01", "yesno", "pm1"}))
        ->capture_default_str();
    app->add_flag("--header", header, "First non-comment line is a header");
  }

  CsvLayout layout() const {
    CsvLayout l;
    l.label_column = label_col == "last" ? LabelColumn::last : LabelColumn::first;
    l.label_encoding = label_enc == "yesno" ? LabelEncoding::yes_no
                       : label_enc == "pm1" ? LabelEncoding::plus_minus_one
                                            : LabelEncoding::zero_one;
    l.has_header = header;
    return l;
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::file_unreadable, "cannot write " + path);
  out << text;
}

void ensure_writable(const std::string& path, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw Error(ErrorCode::output_exists, path + " exists; pass --force to overwrite");
  }
}

std::array<double, kMetricCount> parse_targets(const std::string& text) {
  std::array<double, kMetricCount> out{};
  std::stringstream ss(text);
  std::string cell;
  std::size_t k = 0;
  while (std::getline(ss, cell, ',')) {
    if (k == kMetricCount) {
      k = kMetricCount + 1;
      break;
    }
    try {
      out[k++] = std::stod(cell);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "--targets: cannot parse '" + cell + "'");
    }
  }
  if (k != kMetricCount) {
    throw Error(ErrorCode::invalid_argument, "--targets needs exactly 7 comma-separated percentages");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UWB NLOS human detection: statistical features, z-scoring, FastICA and AdaBoost"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  // train
  RunConfig cfg;
  LayoutFlags train_layout;
  std::string mode = "stats";
  std::string ica = "on";
  std::string contrast = "logcosh";
  std::size_t components = 0;
  bool unstratified = false;
  auto* train = app.add_subcommand("train", "Fit the pipeline on a 70/30 (configurable) split and report test metrics");
  train->add_option("--data", cfg.data, "Labeled CSV of windows")->required();
  train_layout.attach(train);
  train->add_option("--scenario", cfg.scenario_tag, "Free-text scenario tag recorded in the model");
  train->add_option("--mode", mode, "Features: 11 window statistics or the raw samples")
      ->check(CLI::IsMember({"stats", "raw"}))
      ->capture_default_str();
  train->add_option("--ica", ica, "Enable FastICA")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  auto* components_opt =
      train->add_option("--components", components,
                        "Retained ICA components (default min(16, rank of the scaled training features))");
  train->add_option("--contrast", contrast, "FastICA contrast")
      ->check(CLI::IsMember({"logcosh", "cube"}))
      ->capture_default_str();
  train->add_option("--tol", cfg.tol, "FastICA convergence tolerance")->capture_default_str();
  train->add_option("--max-iter", cfg.max_iter, "FastICA iteration cap")->capture_default_str();
  train->add_option("--rounds", cfg.rounds, "Boosting rounds T")->capture_default_str();
  train->add_option("--eps-floor", cfg.eps_floor, "Clamp for the weighted error in alpha")->capture_default_str();
  train->add_option("--train-frac", cfg.train_fraction, "Training fraction")->capture_default_str();
  train->add_option("--seed", cfg.seed, "Seed for the split and the ICA start")->capture_default_str();
  train->add_flag("--unstratified", unstratified, "Plain random split instead of per-class");
  train->add_option("--out-model", cfg.out_model, "Write the fitted model (JSON)");
  train->add_option("--out-report", cfg.out_report, "Write the report");
  train->add_option("--timestamp", cfg.timestamp, "Free-text timestamp stored in the model");
  train->add_flag("--force", cfg.force, "Overwrite existing outputs");

  // evaluate
  std::string eval_model;
  std::string eval_data;
  std::string eval_report;
  bool eval_force = false;
  LayoutFlags eval_layout;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Apply a saved model to labeled data");
  evaluate_cmd->add_option("--model", eval_model, "Model JSON")->required();
  evaluate_cmd->add_option("--data", eval_data, "Labeled CSV")->required();
  eval_layout.attach(evaluate_cmd);
  evaluate_cmd->add_option("--out-report", eval_report, "Write the report");
  evaluate_cmd->add_flag("--force", eval_force, "Overwrite existing outputs");

  // predict
  std::string pred_model;
  std::string pred_data;
  std::string pred_out;
  bool pred_header = false;
  bool pred_force = false;
  auto* predict_cmd = app.add_subcommand("predict", "Label unlabeled windows (one window per row)");
  predict_cmd->add_option("--model", pred_model, "Model JSON")->required();
  predict_cmd->add_option("--data", pred_data, "CSV of windows without a label column")->required();
  predict_cmd->add_flag("--header", pred_header, "First non-comment line is a header");
  predict_cmd->add_option("--out", pred_out, "Write predictions here instead of stdout");
  predict_cmd->add_flag("--force", pred_force, "Overwrite existing outputs");

  // synth
  std::string kind = "nlos_like";
  std::size_t synth_n = 2000;
  std::size_t synth_dim = 0;
  std::uint64_t synth_seed = 0;
  double separation = 4.0;
  NlosLikeSpec nlos;
  std::string synth_out;
  bool synth_force = false;
  LayoutFlags synth_layout;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic dataset");
  synth_cmd->add_option("--kind", kind, "two_class, mixed_sources or nlos_like")
      ->check(CLI::IsMember({"two_class", "mixed_sources", "nlos_like"}))
      ->capture_default_str();
  synth_cmd->add_option("--n", synth_n, "Rows")->capture_default_str();
  synth_cmd->add_option("--dim", synth_dim, "Columns (default 2, 2, 256 by kind)");
  synth_cmd->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--separation", separation, "two_class mean separation")->capture_default_str();
  synth_cmd->add_option("--amplitude-min", nlos.amplitude_min, "nlos_like pulse amplitude lower bound")
      ->capture_default_str();
  synth_cmd->add_option("--amplitude-max", nlos.amplitude_max, "nlos_like pulse amplitude upper bound")
      ->capture_default_str();
  synth_cmd->add_option("--noise-std", nlos.noise_std, "nlos_like clutter standard deviation")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output CSV")->required();
  synth_layout.attach(synth_cmd);
  synth_cmd->add_flag("--force", synth_force, "Overwrite existing outputs");

  // reconstruct
  std::string table;
  std::string targets_text;
  std::uint64_t n_min = 1000;
  std::uint64_t n_max = 10000;
  double rtol = 0.005;
  int decimals = 2;
  bool no_rounding = false;
  auto* reconstruct_cmd = app.add_subcommand(
      "reconstruct", "Find integer confusion matrices consistent with seven reported percentages");
  reconstruct_cmd->add_option("--reference", table, "Use the published static or dynamic results")
      ->check(CLI::IsMember({"static", "dynamic"}));
  reconstruct_cmd->add_option(
      "--targets", targets_text,
      "Seven percentages: sensitivity,specificity,precision,npv,accuracy,f1,mcc");
  reconstruct_cmd->add_option("--n-min", n_min, "Smallest total count")->capture_default_str();
  reconstruct_cmd->add_option("--n-max", n_max, "Largest total count")->capture_default_str();
  reconstruct_cmd->add_option("--tol", rtol, "Tolerance in percentage points")->capture_default_str();
  reconstruct_cmd->add_option("--decimals", decimals, "Round computed percentages to this many decimals")
      ->capture_default_str();
  reconstruct_cmd->add_flag("--no-rounding", no_rounding, "Compare unrounded percentages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*train) {
      cfg.layout = train_layout.layout();
      cfg.mode = feature_mode_from_string(mode);
      cfg.ica_enabled = ica == "on";
      cfg.contrast = contrast_from_string(contrast);
      if (*components_opt) cfg.components = components;
      cfg.stratified = !unstratified;
      if (!cfg.out_report.empty()) ensure_writable(cfg.out_report.string(), cfg.force);
      const auto outcome = run_train(cfg);
      std::cout << outcome.report;
    } else if (*evaluate_cmd) {
      if (!eval_report.empty()) ensure_writable(eval_report, eval_force);
      const auto outcome = run_evaluate(eval_model, eval_data, eval_layout.layout());
      std::cout << outcome.report;
      if (!eval_report.empty()) write_file(eval_report, outcome.report);
    } else if (*predict_cmd) {
      if (!pred_out.empty()) ensure_writable(pred_out, pred_force);
      const auto outcome = run_predict(pred_model, pred_data, pred_header);
      std::ostringstream out;
      out << "row,label,margin\n";
      for (std::size_t i = 0; i < outcome.predictions.size(); ++i) {
        char margin[32];
        std::snprintf(margin, sizeof margin, "%.17g", outcome.predictions[i].margin);
        out << outcome.source_rows[i] << ',' << outcome.predictions[i].label << ',' << margin << '\n';
      }
      if (pred_out.empty()) {
        std::cout << out.str();
      } else {
        write_file(pred_out, out.str());
      }
      if (outcome.dropped_row_count > 0) std::cerr << "dropped rows: " << outcome.dropped_row_count << '\n';
    } else if (*synth_cmd) {
      ensure_writable(synth_out, synth_force);
      const auto layout = synth_layout.layout();
      if (kind == "two_class") {
        const auto ds = gen_two_class({synth_n, synth_dim ? synth_dim : 2, separation, synth_seed});
        write_csv(synth_out, ds, layout);
      } else if (kind == "mixed_sources") {
        MixedSourcesSpec spec;
        spec.n = synth_n;
        spec.dim = synth_dim ? synth_dim : 2;
        spec.seed = synth_seed;
        const auto mixed = gen_mixed_sources(spec);
        auto write_matrix = [&](const std::string& path, const Matrix& m) {
          ensure_writable(path, synth_force);
          std::ofstream out(path);
          if (!out) throw Error(ErrorCode::file_unreadable, "cannot write " + path);
          write_matrix_csv(out, m);
        };
        write_matrix(synth_out, mixed.mixed);
        write_matrix(synth_out + ".sources.csv", mixed.sources);
        write_matrix(synth_out + ".mixing.csv", mixed.mixing);
      } else {
        nlos.n = synth_n;
        nlos.dim = synth_dim ? synth_dim : 256;
        nlos.seed = synth_seed;
        const auto data = gen_nlos_like(nlos);
        write_csv(synth_out, data.data, layout);
        std::printf("matched-filter reference accuracy: %.4f\n", data.reference_accuracy);
      }
    } else if (*reconstruct_cmd) {
      ReconstructQuery q;
      if (!table.empty()) {
        q.targets = table == "static" ? kReferenceStatic : kReferenceDynamic;
      } else if (!targets_text.empty()) {
        q.targets = parse_targets(targets_text);
      } else {
        throw Error(ErrorCode::invalid_argument, "pass --reference or --targets");
      }
      q.n_min = n_min;
      q.n_max = n_max;
      q.tol = rtol;
      if (!no_rounding) q.decimals = decimals;
      const auto found = reconstruct_cm(q);
      std::cout << "matches: " << found.size() << "\nN,tp,fp,tn,fn\n";
      for (const auto& cm : found) {
        std::cout << cm.total() << ',' << cm.tp << ',' << cm.fp << ',' << cm.tn << ',' << cm.fn << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
