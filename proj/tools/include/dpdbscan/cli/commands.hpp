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

#ifndef DPDBSCAN_CLI_COMMANDS_HPP_
#define DPDBSCAN_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpdbscan/cli/csv.hpp"
#include "dpdbscan/cli/spans_io.hpp"
#include "dpdbscan/datagen.hpp"
#include "dpdbscan/dp_dbscan.hpp"

namespace dpdbscan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitData = 3,
  kExitCapacity = 4,
};

struct RunConfig {
  std::string input;
  CsvOptions csv;
  double alpha = 0.0;  // raw data units
  std::optional<double> min_pts;
  std::vector<double> min_pts_sweep;
  double epsilon = 1.0;
  double beta = 1.0 / 3.0;
  double eta_prime = 1.0;
  std::optional<double> theta;
  HistogramChoice histogram = HistogramChoice::kAuto;
  bool one_sided_shift = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string histogram_dump;
};

struct RunOutput {
  std::string path;
  SpansFile file;
};

// One histogram release, then one spans file per MinPts value. A single
// value writes to config.out; a sweep writes <stem>_minpts<k><ext>.
std::vector<RunOutput> cmd_run(const RunConfig& config, std::ostream& log);

struct EvaluateConfig {
  std::string spans;
  std::string input;
  CsvOptions csv;
  std::string labels;
  std::string label_column = "0";
  std::string labels_out;
};

struct EvaluateReport {
  std::size_t spans = 0;
  std::size_t points = 0;
  std::size_t covered = 0;
  std::size_t out_of_domain = 0;
  std::optional<double> ari;
  std::optional<double> ami;
};

EvaluateReport cmd_evaluate(const EvaluateConfig& config, std::ostream& out);

struct GenerateConfig {
  SynthSpec spec;
  std::string out;
};

// Writes the dataset in generator units with a header and a label column.
void cmd_generate(const GenerateConfig& config, std::ostream& out);

struct PlotConfig {
  std::string spans;
  std::string out;
};

// One CSV row per span cell: id, lower corner, upper corner, in raw units.
void cmd_plot(const PlotConfig& config, std::ostream& out);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpdbscan::cli

#endif  // DPDBSCAN_CLI_COMMANDS_HPP_
