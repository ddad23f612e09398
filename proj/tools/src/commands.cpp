// Copyright 2026 The dpdbscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpdbscan/cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "CLI11.hpp"
#include "dpdbscan/errors.hpp"
#include "dpdbscan/eval.hpp"

namespace dpdbscan::cli {
namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string sweep_path(const std::string& out, double min_pts) {
  const std::filesystem::path p(out);
  std::string name = p.stem().string() + "_minpts" + short_number(min_pts) +
                     p.extension().string();
  return (p.parent_path() / name).string();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::vector<RunOutput> cmd_run(const RunConfig& config, std::ostream& log) {
  std::vector<double> thresholds = config.min_pts_sweep;
  if (thresholds.empty()) {
    if (!config.min_pts) throw ParameterError("--minpts or --minpts-sweep is required");
    thresholds.push_back(*config.min_pts);
  } else if (config.min_pts) {
    throw ParameterError("--minpts and --minpts-sweep are mutually exclusive");
  }
  if (config.out.empty()) throw ParameterError("--out is required");
  if (!(config.alpha > 0.0)) throw ParameterError("--alpha must be > 0");
  for (const double m : thresholds) {
    if (!(m >= 1.0)) throw ParameterError("MinPts values must be >= 1");
  }

  PrivacyParams privacy;
  privacy.epsilon = config.epsilon;
  privacy.beta = config.beta;
  privacy.validate();

  const Dataset data = ingest(config.input, config.csv);
  const double alpha = data.transform.normalize_length(config.alpha);
  if (!(alpha < 1.0)) {
    throw ParameterError("--alpha " + short_number(config.alpha) +
                         " is not smaller than the data extent " +
                         short_number(data.transform.scale[0]));
  }
  const GridSpec grid(data.points.dim(), alpha, config.eta_prime);

  PipelineOptions options;
  options.histogram = config.histogram;
  options.theta = config.theta;
  options.one_sided_shift = config.one_sided_shift;
  options.seed = config.seed;
  Rng rng(config.seed ? *config.seed : std::random_device{}());

  const ReleasedHistogram released = release_histogram(data.points, grid, privacy, rng, options);
  if (!config.histogram_dump.empty()) {
    std::ofstream dump = open_output(config.histogram_dump);
    write_histogram_dump(dump, released.histogram);
  }
  log << "released " << to_string(released.histogram.mode()) << " histogram: "
      << released.histogram.size() << " entries, epsilon " << short_number(privacy.epsilon)
      << ", Gamma " << short_number(released.bounds.big_gamma) << ", tau "
      << short_number(released.bounds.tau) << "\n";

  std::vector<RunOutput> outputs;
  for (const double m : thresholds) {
    SpanSet spans = extract_spans(released, m, options.limits);
    const std::string path = config.min_pts_sweep.empty() ? config.out : sweep_path(config.out, m);
    RunOutput output{path, {std::move(spans), data.transform, {privacy.epsilon, thresholds}}};
    write_spans(path, output.file);
    log << path << ": " << output.file.spans.size() << " spans at MinPts "
        << short_number(m) << " (effective " << short_number(output.file.spans.provenance().min_pts_effective)
        << ")\n";
    outputs.push_back(std::move(output));
  }
  return outputs;
}

EvaluateReport cmd_evaluate(const EvaluateConfig& config, std::ostream& out) {
  const SpansFile file = read_spans(config.spans);
  const Table table = read_table(config.input, config.csv);
  const int d = file.spans.grid().dim();
  if (!table.rows.empty() && table.rows.front().size() != static_cast<std::size_t>(d)) {
    throw ParameterError("input has " + std::to_string(table.rows.front().size()) +
                         " columns but the spans are " + std::to_string(d) + "-dimensional");
  }

  EvaluateReport report;
  report.spans = file.spans.size();
  report.points = table.rows.size();
  std::vector<int> labels(table.rows.size(), 0);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::vector<double> unit = file.transform.to_unit(table.rows[i]);
    bool inside = true;
    for (const double c : unit) inside = inside && c >= 0.0 && c <= 1.0;
    if (!inside) {
      ++report.out_of_domain;
      continue;
    }
    labels[i] = classify(file.spans, unit);
    report.covered += labels[i] != 0;
  }

  const double n = static_cast<double>(std::max<std::size_t>(report.points, 1));
  out << "spans: " << report.spans << "\n";
  out << "points: " << report.points << "\n";
  out << "covered_fraction: " << short_number(static_cast<double>(report.covered) / n) << "\n";
  out << "noise_fraction: "
      << short_number(static_cast<double>(report.points - report.covered) / n) << "\n";
  if (report.out_of_domain > 0) out << "out_of_domain: " << report.out_of_domain << "\n";

  if (!config.labels.empty()) {
    const std::vector<int> truth =
        read_labels(config.labels, config.label_column, config.csv.has_header);
    report.ari = ari(labels, truth);
    report.ami = ami(labels, truth);
    out << "ari: " << short_number(*report.ari) << "\n";
    out << "ami: " << short_number(*report.ami) << "\n";
  }
  if (!config.labels_out.empty()) {
    std::ofstream lo = open_output(config.labels_out);
    for (const int l : labels) lo << l << "\n";
  }
  return report;
}

void cmd_generate(const GenerateConfig& config, std::ostream& out) {
  const SynthData data = generate(config.spec);
  const int d = config.spec.d;
  for (int k = 0; k < d; ++k) out << "x" << k << ",";
  out << "label\n";
  for (std::size_t i = 0; i < data.raw.size(); ++i) {
    const auto p = data.raw[i];
    for (int k = 0; k < d; ++k) out << format_number(p[static_cast<std::size_t>(k)]) << ",";
    out << data.labels.labels[i] << "\n";
  }
}

void cmd_plot(const PlotConfig& config, std::ostream& out) {
  const SpansFile file = read_spans(config.spans);
  const GridSpec& grid = file.spans.grid();
  const auto d = static_cast<std::size_t>(grid.dim());
  out << "id";
  for (std::size_t k = 0; k < d; ++k) out << ",min_x" << k;
  for (std::size_t k = 0; k < d; ++k) out << ",max_x" << k;
  out << "\n";
  std::vector<double> lo(d);
  std::vector<double> hi(d);
  for (const Span& span : file.spans.spans()) {
    for (const CellId id : span.cells) {
      grid.cell_box(grid.from_id(id), lo, hi);
      out << span.id;
      for (const double v : file.transform.to_raw(lo)) out << "," << format_number(v);
      for (const double v : file.transform.to_raw(hi)) out << "," << format_number(v);
      out << "\n";
    }
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private DBSCAN over a spatial grid"};
  app.require_subcommand(1);

  RunConfig run;
  std::string cols;
  std::string hist = "auto";
  std::uint64_t seed = 0;
  CLI::App* run_cmd = app.add_subcommand("run", "Release a DP histogram and extract cluster spans");
  run_cmd->add_option("--input", run.input, "CSV file, one point per row")->required();
  run_cmd->add_option("--cols", cols, "Comma-separated column indices or header names");
  run_cmd->add_flag("--header", run.csv.has_header, "First row is a header");
  run_cmd->add_option("--alpha", run.alpha, "Neighborhood radius in raw data units")->required();
  auto* minpts_opt = run_cmd->add_option("--minpts", run.min_pts, "MinPts threshold");
  run_cmd->add_option("--minpts-sweep", run.min_pts_sweep,
                      "Several MinPts values cut from one histogram")
      ->delimiter(',')
      ->excludes(minpts_opt);
  run_cmd->add_option("--epsilon", run.epsilon, "Privacy budget")->capture_default_str();
  run_cmd->add_option("--beta", run.beta, "Failure probability")->capture_default_str();
  run_cmd->add_option("--eta-prime", run.eta_prime, "Cell size factor in (0, 1]")
      ->capture_default_str();
  run_cmd->add_option("--theta", run.theta, "Threshold for the linear-time histogram");
  run_cmd->add_option("--hist", hist, "Histogram: auto, naive or linear")->capture_default_str();
  run_cmd->add_flag("--one-sided", run.one_sided_shift,
                    "Shift MinPts by Gamma instead of 2 Gamma");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "RNG seed");
  run_cmd->add_option("--out", run.out, "Spans JSON path")->required();
  run_cmd->add_option("--dump-histogram", run.histogram_dump, "Write the noisy histogram as CSV");

  EvaluateConfig eval;
  std::string eval_cols;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Label points by span and score them");
  eval_cmd->add_option("--spans", eval.spans, "Spans JSON from run")->required();
  eval_cmd->add_option("--input", eval.input, "CSV file with the points")->required();
  eval_cmd->add_option("--cols", eval_cols, "Columns holding the coordinates");
  eval_cmd->add_flag("--header", eval.csv.has_header, "CSV files have a header row");
  eval_cmd->add_option("--labels", eval.labels, "CSV with ground-truth labels");
  eval_cmd->add_option("--label-col", eval.label_column, "Label column index or name")
      ->capture_default_str();
  eval_cmd->add_option("--labels-out", eval.labels_out, "Write per-point span ids");

  GenerateConfig gen;
  std::string kind = "moons";
  double noise_sd = -1.0;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  gen_cmd->add_option("--kind", kind, "circles, moons, blobs, coincident or uniform")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.spec.n, "Number of points")->required();
  gen_cmd->add_option("--noise-sd", noise_sd, "Jitter standard deviation");
  gen_cmd->add_option("--seed", gen.spec.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--d", gen.spec.d, "Dimension")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV (default stdout)");

  PlotConfig plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Emit span cell rectangles as CSV");
  plot_cmd->add_option("--spans", plot.spans, "Spans JSON from run")->required();
  plot_cmd->add_option("--out", plot.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto split_cols = [](const std::string& s) {
    std::vector<std::string> result;
    std::size_t start = 0;
    while (!s.empty()) {
      const auto comma = s.find(',', start);
      result.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return result;
  };

  try {
    if (*run_cmd) {
      run.csv.columns = split_cols(cols);
      run.histogram = parse_histogram_choice(hist);
      if (*seed_opt) run.seed = seed;
      cmd_run(run, out);
    } else if (*eval_cmd) {
      eval.csv.columns = split_cols(eval_cols);
      cmd_evaluate(eval, out);
    } else if (*gen_cmd) {
      gen.spec.kind = parse_synth_kind(kind);
      if (noise_sd >= 0.0) gen.spec.noise_sd = noise_sd;
      if (gen.out.empty()) {
        cmd_generate(gen, out);
      } else {
        std::ofstream f = open_output(gen.out);
        cmd_generate(gen, f);
      }
    } else if (*plot_cmd) {
      if (plot.out.empty()) {
        cmd_plot(plot, out);
      } else {
        std::ofstream f = open_output(plot.out);
        cmd_plot(plot, f);
      }
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dpdbscan::cli
