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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpdbscan/errors.hpp"

namespace dpdbscan::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(DPDBSCAN_TEST_TMPDIR) / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string moons_csv(std::uint64_t seed = 1, std::size_t n = 2000) const {
    GenerateConfig gen;
    gen.spec.kind = SynthKind::kMoons;
    gen.spec.n = n;
    gen.spec.seed = seed;
    std::ofstream out(path("moons.csv"), std::ios::binary);
    cmd_generate(gen, out);
    return path("moons.csv");
  }

  RunConfig moons_run(const std::string& csv) const {
    RunConfig config;
    config.input = csv;
    config.csv.has_header = true;
    config.csv.columns = {"x0", "x1"};
    config.alpha = 0.2;
    config.min_pts = 7;
    config.seed = 42;
    config.out = path("spans.json");
    return config;
  }

  int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "dpdbscan");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return code;
  }

  fs::path dir_;
};

TEST_F(CliTest, IngestRescalesIsotropically) {
  const std::string csv = write("two.csv", "0,0\n10,10\n");
  const Dataset d = ingest(csv, {});
  ASSERT_EQ(d.points.size(), 2u);
  EXPECT_EQ(d.points[1][0], 1.0);
  EXPECT_EQ(d.points[1][1], 1.0);
  EXPECT_EQ(d.transform.scale[0], 10.0);
  EXPECT_DOUBLE_EQ(d.transform.normalize_length(2.0), 0.2);
  EXPECT_EQ(d.transform.to_raw({0.5, 0.5}), (std::vector<double>{5.0, 5.0}));
}

TEST_F(CliTest, IngestUsesLargestExtentOnEveryAxis) {
  const Dataset d = ingest(write("wide.csv", "0,0\n4,1\n"), {});
  EXPECT_EQ(d.points[1][0], 1.0);
  EXPECT_EQ(d.points[1][1], 0.25);
}

TEST_F(CliTest, NonNumericFieldReportsLine) {
  const std::string csv = write("bad.csv", "1,2\n3,4\n5,abc\n");
  try {
    ingest(csv, {});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
}

TEST_F(CliTest, DegenerateInputs) {
  EXPECT_THROW(ingest(write("const.csv", "1,2\n1,3\n"), {}), DataError);
  EXPECT_THROW(ingest(write("empty.csv", ""), {}), DataError);
  EXPECT_THROW(ingest(path("missing.csv"), {}), DataError);
}

TEST_F(CliTest, ColumnSelection) {
  const std::string csv = write("named.csv", "label,x,y\n1,0,5\n2,2,9\n");
  CsvOptions by_name{{"y", "x"}, true};
  const Table t = read_table(csv, by_name);
  EXPECT_EQ(t.rows, (std::vector<std::vector<double>>{{5, 0}, {9, 2}}));
  CsvOptions by_index{{"1"}, true};
  EXPECT_EQ(read_table(csv, by_index).rows, (std::vector<std::vector<double>>{{0}, {2}}));
  CsvOptions unknown{{"z"}, true};
  EXPECT_THROW(read_table(csv, unknown), ParameterError);
  EXPECT_EQ(read_labels(csv, "label", true), (std::vector<int>{1, 2}));
}

TEST_F(CliTest, SpansFileRoundTrips) {
  const auto outputs = [&] {
    std::ostringstream log;
    return cmd_run(moons_run(moons_csv()), log);
  }();
  ASSERT_EQ(outputs.size(), 1u);
  const SpansFile back = read_spans(outputs[0].path);
  EXPECT_TRUE(back.spans == outputs[0].file.spans);
  EXPECT_EQ(back.transform.offset, outputs[0].file.transform.offset);
  EXPECT_EQ(back.transform.scale, outputs[0].file.transform.scale);
  EXPECT_EQ(back.release, outputs[0].file.release);
  EXPECT_EQ(to_json(back), slurp(outputs[0].path));
  EXPECT_EQ(back.spans.check_invariants(), "");
}

TEST_F(CliTest, MalformedSpansFileIsRejected) {
  EXPECT_THROW(read_spans(write("bad.json", "{\"grid\": 3}")), DataError);
  EXPECT_THROW(read_spans(write("trunc.json", "{")), DataError);
}

TEST_F(CliTest, SameSeedSameBytes) {
  const std::string csv = moons_csv();
  RunConfig a = moons_run(csv);
  RunConfig b = moons_run(csv);
  b.out = path("spans_b.json");
  std::ostringstream log;
  cmd_run(a, log);
  cmd_run(b, log);
  EXPECT_EQ(slurp(a.out), slurp(b.out));
}

TEST_F(CliTest, SweepSharesOneRelease) {
  RunConfig config = moons_run(moons_csv());
  config.min_pts.reset();
  config.min_pts_sweep = {5, 20};
  std::ostringstream log;
  const auto outputs = cmd_run(config, log);
  ASSERT_EQ(outputs.size(), 2u);
  EXPECT_EQ(outputs[0].path, path("spans_minpts5.json"));
  EXPECT_EQ(outputs[1].path, path("spans_minpts20.json"));
  const SpansFile a = read_spans(outputs[0].path);
  const SpansFile b = read_spans(outputs[1].path);
  EXPECT_EQ(a.spans.provenance().histogram_fingerprint, b.spans.provenance().histogram_fingerprint);
  EXPECT_EQ(a.release, b.release);
  EXPECT_EQ(a.release.epsilon, 1.0);
  EXPECT_EQ(a.release.min_pts_values, (std::vector<double>{5, 20}));
}

TEST_F(CliTest, LargeEpsilonSpanCountMatchesExactClusters) {
  RunConfig config = moons_run(moons_csv());
  config.epsilon = 1e9;
  std::ostringstream log;
  EXPECT_EQ(cmd_run(config, log).at(0).file.spans.size(), 2u);
}

TEST_F(CliTest, EvaluateReportsScores) {
  const std::string csv = moons_csv();
  RunConfig run = moons_run(csv);
  std::ostringstream log;
  cmd_run(run, log);

  EvaluateConfig eval;
  eval.spans = run.out;
  eval.input = csv;
  eval.csv = run.csv;
  std::ostringstream plain;
  const EvaluateReport no_truth = cmd_evaluate(eval, plain);
  EXPECT_FALSE(no_truth.ari.has_value());
  EXPECT_EQ(plain.str().find("ari:"), std::string::npos);
  EXPECT_NE(plain.str().find("covered_fraction:"), std::string::npos);
  EXPECT_EQ(no_truth.points, 2000u);

  eval.labels = csv;
  eval.label_column = "label";
  eval.labels_out = path("labels.txt");
  std::ostringstream scored;
  const EvaluateReport report = cmd_evaluate(eval, scored);
  ASSERT_TRUE(report.ari.has_value());
  EXPECT_GE(*report.ari, 0.89);
  EXPECT_NE(scored.str().find("ami: "), std::string::npos);
  std::ifstream labels(eval.labels_out);
  int lines = 0;
  for (std::string line; std::getline(labels, line);) ++lines;
  EXPECT_EQ(lines, 2000);

  eval.csv.columns = {"x0"};
  EXPECT_THROW(cmd_evaluate(eval, scored), ParameterError);
}

TEST_F(CliTest, PlotWritesOneRowPerCell) {
  RunConfig run = moons_run(moons_csv());
  std::ostringstream log;
  const auto outputs = cmd_run(run, log);
  std::size_t cells = 0;
  for (const Span& s : outputs[0].file.spans.spans()) cells += s.cells.size();
  std::ostringstream out;
  cmd_plot({run.out, ""}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "id,min_x0,min_x1,max_x0,max_x1");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, cells);
}

TEST_F(CliTest, ExitCodes) {
  const std::string csv = moons_csv(1, 300);
  EXPECT_EQ(cli({"run", "--input", csv, "--header", "--cols", "x0,x1", "--alpha", "0.2",
                 "--minpts", "7", "--seed", "1", "--out", path("a.json")}),
            kExitOk);
  EXPECT_EQ(cli({"run", "--input", csv, "--header", "--cols", "x0,x1", "--alpha", "0.2",
                 "--minpts", "0", "--out", path("a.json")}),
            kExitConfig);
  EXPECT_EQ(cli({"run", "--input", csv, "--alpha", "0.2", "--minpts", "7", "--minpts-sweep",
                 "5,6", "--out", path("a.json")}),
            kExitConfig);
  EXPECT_EQ(cli({"run", "--input", path("missing.csv"), "--alpha", "0.2", "--minpts", "7",
                 "--out", path("a.json")}),
            kExitData);
  const std::string two = write("two.csv", "0,0\n1,1\n");
  EXPECT_EQ(cli({"run", "--input", two, "--alpha", "1e-4", "--minpts", "2", "--hist", "naive",
                 "--out", path("b.json")}),
            kExitCapacity);
  EXPECT_EQ(cli({"frobnicate"}), kExitConfig);
  std::string text;
  EXPECT_EQ(cli({"generate", "--kind", "blobs", "--n", "5", "--d", "3"}, &text), kExitOk);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x0,x1,x2,label");
  EXPECT_EQ(cli({"generate", "--kind", "moons", "--n", "5", "--d", "3"}), kExitConfig);
}

}  // namespace
}  // namespace dpdbscan::cli
