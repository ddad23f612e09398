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

#include "dpdbscan/cli/spans_io.hpp"

#include <fstream>

#include "dpdbscan/errors.hpp"
#include "json.hpp"

namespace dpdbscan::cli {
namespace {

using nlohmann::json;

json provenance_json(const Provenance& p) {
  json j;
  j["alpha"] = p.alpha;
  j["min_pts"] = p.min_pts;
  j["min_pts_effective"] = p.min_pts_effective;
  j["epsilon"] = p.epsilon;
  j["beta"] = p.beta;
  j["theta"] = p.theta;
  j["eta_prime"] = p.eta_prime;
  j["width"] = p.width;
  j["kappa"] = p.kappa;
  j["gamma"] = p.gamma;
  j["big_gamma"] = p.big_gamma;
  j["tau"] = p.tau;
  j["rho"] = p.rho;
  j["gamma_kind"] = p.gamma_kind;
  j["histogram_mode"] = p.histogram_mode;
  j["histogram_fingerprint"] = p.histogram_fingerprint;
  j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return j;
}

Provenance provenance_from(const json& j) {
  Provenance p;
  p.alpha = j.at("alpha").get<double>();
  p.min_pts = j.at("min_pts").get<double>();
  p.min_pts_effective = j.at("min_pts_effective").get<double>();
  p.epsilon = j.at("epsilon").get<double>();
  p.beta = j.at("beta").get<double>();
  p.theta = j.at("theta").get<double>();
  p.eta_prime = j.at("eta_prime").get<double>();
  p.width = j.at("width").get<double>();
  p.kappa = j.at("kappa").get<std::size_t>();
  p.gamma = j.at("gamma").get<double>();
  p.big_gamma = j.at("big_gamma").get<double>();
  p.tau = j.at("tau").get<double>();
  p.rho = j.at("rho").get<double>();
  p.gamma_kind = j.at("gamma_kind").get<std::string>();
  p.histogram_mode = j.at("histogram_mode").get<std::string>();
  p.histogram_fingerprint = j.at("histogram_fingerprint").get<std::string>();
  if (!j.at("seed").is_null()) p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

}  // namespace

std::string to_json(const SpansFile& file) {
  const SpanSet& s = file.spans;
  const GridSpec& g = s.grid();
  json j;
  j["grid"] = {{"d", g.dim()},
               {"w", g.width()},
               {"alpha_normalized", g.alpha()},
               {"cells_per_axis", g.cells_per_axis()},
               {"eta_prime", g.eta_prime()}};
  j["transform"] = {{"offset", file.transform.offset}, {"scale", file.transform.scale}};
  j["release"] = {{"epsilon", file.release.epsilon},
                  {"min_pts_values", file.release.min_pts_values}};
  json spans = json::array();
  std::vector<std::int64_t> coords(static_cast<std::size_t>(g.dim()));
  for (const Span& span : s.spans()) {
    json cells = json::array();
    for (const CellId id : span.cells) {
      g.decode(id, coords);
      cells.push_back(coords);
    }
    spans.push_back({{"id", span.id}, {"cells", std::move(cells)}});
  }
  j["spans"] = std::move(spans);
  j["provenance"] = provenance_json(s.provenance());
  return j.dump(2) + "\n";
}

void write_spans(std::ostream& out, const SpansFile& file) { out << to_json(file); }

void write_spans(const std::string& path, const SpansFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_spans(out, file);
  if (!out) throw DataError("failed writing '" + path + "'");
}

SpansFile read_spans(std::istream& in) {
  try {
    const json j = json::parse(in);
    const json& jg = j.at("grid");
    const GridSpec grid(jg.at("d").get<int>(), jg.at("alpha_normalized").get<double>(),
                        jg.at("eta_prime").get<double>());
    if (grid.cells_per_axis() != jg.at("cells_per_axis").get<std::int64_t>() ||
        grid.width() != jg.at("w").get<double>()) {
      throw DataError("spans file: grid description is inconsistent");
    }
    Transform transform{j.at("transform").at("offset").get<std::vector<double>>(),
                        j.at("transform").at("scale").get<std::vector<double>>()};
    if (transform.offset.size() != static_cast<std::size_t>(grid.dim()) ||
        transform.scale.size() != transform.offset.size()) {
      throw DataError("spans file: transform dimension does not match the grid");
    }
    ReleaseInfo release{j.at("release").at("epsilon").get<double>(),
                        j.at("release").at("min_pts_values").get<std::vector<double>>()};
    std::vector<Span> spans;
    for (const json& js : j.at("spans")) {
      Span span{js.at("id").get<int>(), {}};
      for (const json& jc : js.at("cells")) {
        const CellIndex cell{jc.get<std::vector<std::int64_t>>()};
        if (!grid.contains(cell)) throw DataError("spans file: cell outside the grid");
        span.cells.push_back(grid.to_id(cell));
      }
      spans.push_back(std::move(span));
    }
    return {SpanSet(grid, std::move(spans), provenance_from(j.at("provenance"))),
            std::move(transform), std::move(release)};
  } catch (const json::exception& e) {
    throw DataError(std::string("spans file: ") + e.what());
  } catch (const ParameterError& e) {
    throw DataError(std::string("spans file: ") + e.what());
  }
}

SpansFile read_spans(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_spans(in);
}

}  // namespace dpdbscan::cli
