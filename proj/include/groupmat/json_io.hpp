#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "groupmat/chain.hpp"
#include "groupmat/degroot.hpp"
#include "groupmat/distributed.hpp"

namespace groupmat {

using Json = nlohmann::ordered_json;

enum class RatStyle { Exact, Decimal };

inline Json rational_to_json(const Rational& q, RatStyle style = RatStyle::Exact) {
  if (style == RatStyle::Decimal) return Json(q.decimal());
  if (q.fits_int64()) return Json(q.to_int64());
  return Json(q.str());
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rational::parse(j.dump());
  // Floats round-trip through their shortest text form, so "0.2" stays 1/5.
  if (j.is_number_float()) return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected a rational, got: " + j.dump());
}

inline Json vector_to_json(const Matrix& row, RatStyle style = RatStyle::Exact) {
  Json out = Json::array();
  for (int j = 0; j < row.cols(); ++j) out.push_back(rational_to_json(row(0, j), style));
  return out;
}

inline Matrix row_vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty array of rationals");
  Matrix out(1, static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) out.at(0, static_cast<int>(i)) = rational_from_json(j[i]);
  return out;
}

inline Json partition_to_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& block : p.blocks()) out.push_back(block);
  return out;
}

/// A partition is an array of arrays of 1-based indices; the ground size is
/// the largest index and coverage is validated.
inline Partition partition_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a partition (array of index arrays)");
  std::vector<std::vector<int>> blocks;
  int maxi = 0;
  for (const auto& jb : j) {
    if (!jb.is_array() || jb.empty()) throw ParseError("partition block must be a nonempty array");
    std::vector<int> block;
    for (const auto& ji : jb) {
      if (!ji.is_number_integer()) throw ParseError("partition index must be an integer");
      int v = ji.get<int>();
      if (v < 1) throw ParseError("partition indices are 1-based");
      maxi = std::max(maxi, v);
      block.push_back(v);
    }
    blocks.push_back(std::move(block));
  }
  return Partition(maxi, std::move(blocks));
}

inline std::vector<Partition> partition_list_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected an array of partitions");
  std::vector<Partition> out;
  out.reserve(j.size());
  for (const auto& jp : j) out.push_back(partition_from_json(jp));
  return out;
}

inline Json matrix_to_json(const Matrix& m, RatStyle style = RatStyle::Exact) {
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j), style));
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a matrix object");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix object needs rows, cols, entries");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("matrix rows/cols must be integers");
  int rows = j["rows"].get<int>();
  int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1) throw ParseError("matrix must be at least 1x1");
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw ParseError("matrix entries must hold exactly " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("matrix row " + std::to_string(i + 1) + " must hold exactly " +
                       std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m.at(i, c) = rational_from_json(row[c]);
  }
  return m;
}

inline Json grouped_to_json(const GroupedMatrix& g, RatStyle style = RatStyle::Exact) {
  Json out;
  out["row_labels"] = partition_to_json(g.row_labels());
  out["col_labels"] = partition_to_json(g.col_labels());
  Json rows = Json::array();
  for (int i = 0; i < g.entries().rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.entries().cols(); ++j)
      row.push_back(rational_to_json(g.entries()(i, j), style));
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

inline Json graph_to_json(const Graph& g) {
  Json out;
  out["n"] = g.size();
  Json edges = Json::array();
  for (auto [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
  out["edges"] = std::move(edges);
  return out;
}

inline Graph graph_from_json(const Json& j, bool require_connected = true) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw ParseError("graph object needs n and edges");
  if (!j["n"].is_number_integer()) throw ParseError("graph n must be an integer");
  int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& je : j["edges"]) {
    if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() || !je[1].is_number_integer())
      throw ParseError("graph edge must be a pair of integers");
    edges.emplace_back(je[0].get<int>(), je[1].get<int>());
  }
  Graph g(n, edges);
  if (require_connected && !g.connected()) throw InvalidInput("graph is not connected");
  return g;
}

inline VertexLabeling labeling_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("bits"))
    throw ParseError("labeling object needs m and bits");
  if (!j["m"].is_number_integer()) throw ParseError("labeling m must be an integer");
  std::vector<std::string> bits;
  for (const auto& jb : j["bits"]) {
    if (!jb.is_string()) throw ParseError("labeling bits must be strings");
    bits.push_back(jb.get<std::string>());
  }
  return VertexLabeling(j["m"].get<int>(), std::move(bits));
}

inline Json labeling_to_json(const VertexLabeling& lab) {
  Json out;
  out["m"] = lab.m;
  out["bits"] = lab.bits;
  return out;
}

inline DeGrootModel model_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("p0") || !j.contains("weights"))
    throw ParseError("model object needs r, p0, weights");
  if (!j["r"].is_number_integer()) throw ParseError("model r must be an integer");
  int r = j["r"].get<int>();
  Matrix p0 = row_vector_from_json(j["p0"]);
  if (p0.cols() != r) throw ParseError("p0 length does not match r");
  std::vector<Matrix> weights;
  if (!j["weights"].is_array() || j["weights"].empty())
    throw ParseError("model weights must be a nonempty array of matrices");
  for (const auto& jm : j["weights"]) weights.push_back(matrix_from_json(jm));
  DeGrootModel model{std::move(p0), std::move(weights),
                     j.value("homogeneous", false)};
  validate_model(model);
  return model;
}

inline Json model_to_json(const DeGrootModel& model, RatStyle style = RatStyle::Exact) {
  Json out;
  out["r"] = model.individuals();
  out["p0"] = vector_to_json(model.p0, style);
  Json ws = Json::array();
  for (const auto& w : model.weights) ws.push_back(matrix_to_json(w, style));
  out["weights"] = std::move(ws);
  out["homogeneous"] = model.homogeneous;
  return out;
}

/// Chain file: matrices either inline or as file references, one partition
/// array per boundary, and the kept index set.
struct ChainSpec {
  std::vector<Matrix> matrices;
  std::vector<Partition> partitions;
  std::vector<int> kept;
};

inline Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  Json j;
  in >> j;
  return j;
}

inline ChainSpec chain_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("matrices") || !j.contains("partitions"))
    throw ParseError("chain object needs matrices and partitions");
  ChainSpec spec;
  for (const auto& jm : j["matrices"]) {
    if (jm.is_string()) {
      std::filesystem::path ref(jm.get<std::string>());
      if (ref.is_relative()) ref = base_dir / ref;
      spec.matrices.push_back(matrix_from_json(load_json_file(ref)));
    } else {
      spec.matrices.push_back(matrix_from_json(jm));
    }
  }
  spec.partitions = partition_list_from_json(j["partitions"]);
  if (j.contains("kept")) {
    for (const auto& ji : j["kept"]) {
      if (!ji.is_number_integer()) throw ParseError("kept indices must be integers");
      spec.kept.push_back(ji.get<int>());
    }
  }
  return spec;
}

inline std::vector<Matrix> schedule_steps_from_json(const Json& j) {
  const Json* steps = nullptr;
  if (j.is_array())
    steps = &j;
  else if (j.is_object() && j.contains("steps"))
    steps = &j["steps"];
  else
    throw ParseError("schedule must be an array of matrices or an object with steps");
  if (!steps->is_array() || steps->empty()) throw ParseError("schedule has no steps");
  std::vector<Matrix> out;
  for (const auto& jm : *steps) out.push_back(matrix_from_json(jm));
  return out;
}

inline Json schedule_to_json(const WeightSchedule& s, RatStyle style = RatStyle::Exact) {
  Json out;
  out["graph"] = graph_to_json(s.graph);
  Json steps = Json::array();
  for (const auto& w : s.steps) steps.push_back(matrix_to_json(w, style));
  out["steps"] = std::move(steps);
  return out;
}

inline Json witness_to_json(const StabilityWitness& w, RatStyle style = RatStyle::Exact) {
  Json out;
  out["rows"] = Json::array({w.row_a, w.row_b});
  out["col_block"] = w.col_block;
  out["sums"] = Json::array({rational_to_json(w.sum_a, style), rational_to_json(w.sum_b, style)});
  return out;
}

inline Json chain_certificate_to_json(const ChainCertificate& c, RatStyle style = RatStyle::Exact) {
  Json out;
  out["kept"] = c.kept;
  out["stable_row"] = vector_to_json(c.stable_row, style);
  Json factors = Json::array();
  for (const auto& g : c.factors) factors.push_back(grouped_to_json(g, style));
  out["grouped_factors"] = std::move(factors);
  out["direct_checked"] = c.direct_checked;
  return out;
}

inline Json consensus_certificate_to_json(const ConsensusCertificate& c,
                                          RatStyle style = RatStyle::Exact) {
  Json out;
  out["time"] = c.time;
  out["kept"] = c.kept;
  out["pi"] = vector_to_json(c.pi_kept, style);
  if (c.pi_full) out["pi_full"] = vector_to_json(*c.pi_full, style);
  out["value"] = rational_to_json(c.value, style);
  out["total"] = c.total;
  out["route"] = c.from_chain ? "chain" : "trajectory";
  if (!c.chain_partitions.empty()) {
    Json parts = Json::array();
    for (const auto& p : c.chain_partitions) parts.push_back(partition_to_json(p));
    out["chain"] = std::move(parts);
  }
  return out;
}

inline Json averaging_run_to_json(const AveragingRun& run, RatStyle style = RatStyle::Exact) {
  Json out;
  out["achieved_averaging"] = run.achieved_averaging;
  out["steps_used"] = run.steps_used;
  Json traj = Json::array();
  for (const auto& q : run.trajectory) traj.push_back(vector_to_json(q, style));
  out["trajectory"] = std::move(traj);
  return out;
}

inline Json trajectory_to_json(const Trajectory& t, RatStyle style = RatStyle::Exact) {
  Json out;
  Json states = Json::array();
  for (const auto& p : t.states) states.push_back(vector_to_json(p, style));
  out["trajectory"] = std::move(states);
  return out;
}

}  // namespace groupmat
