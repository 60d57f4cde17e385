// Batch front end over JSON files. Exit codes: 0 success or affirmative
// result, 1 well-formed negative result, 2 malformed or inconsistent input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupmat/groupmat.hpp"

namespace fs = std::filesystem;
using groupmat::Json;
using groupmat::Matrix;
using groupmat::Partition;
using groupmat::Rational;
using groupmat::RatStyle;

namespace {

struct OutputOptions {
  std::string output_path;
  std::string format = "json";
  bool decimal = false;

  RatStyle style() const { return decimal ? RatStyle::Decimal : RatStyle::Exact; }
};

void emit(const OutputOptions& opts, const Json& payload, const std::string& plain) {
  std::string text = opts.format == "plain" ? plain : payload.dump(2) + "\n";
  if (opts.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.output_path);
    if (!out) throw groupmat::InvalidInput("cannot write " + opts.output_path);
    out << text;
  }
}

// Option values are inline JSON when they start with '[' or '{', otherwise
// paths to JSON files.
Json load_spec(const std::string& value) {
  size_t first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '[' || value[first] == '{'))
    return Json::parse(value);
  return groupmat::load_json_file(value);
}

fs::path spec_base_dir(const std::string& value) {
  size_t first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '[' || value[first] == '{'))
    return fs::current_path();
  return fs::path(value).parent_path();
}

std::vector<int> index_set_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw groupmat::ParseError("expected a nonempty index array");
  std::vector<int> out;
  for (const auto& ji : j) {
    if (!ji.is_number_integer()) throw groupmat::ParseError("index sets hold integers");
    out.push_back(ji.get<int>());
  }
  return out;
}

std::string fmt(const Rational& q, const OutputOptions& opts) {
  return opts.decimal ? q.decimal() : q.str();
}

std::string plain_row(const Matrix& row, const OutputOptions& opts) {
  std::string out;
  for (int j = 0; j < row.cols(); ++j) {
    if (j) out += ' ';
    out += fmt(row(0, j), opts);
  }
  return out;
}

std::string plain_matrix(const Matrix& m, const OutputOptions& opts) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += fmt(m(i, j), opts);
    }
    out += '\n';
  }
  return out;
}

int run_stable_check(const OutputOptions& opts, const std::string& matrix_spec,
                     const std::string& rows_spec, const std::string& cols_spec) {
  Matrix p = groupmat::matrix_from_json(load_spec(matrix_spec));
  Partition delta = groupmat::partition_from_json(load_spec(rows_spec));
  Partition sigma = groupmat::partition_from_json(load_spec(cols_spec));
  auto report = groupmat::is_block_stable(p, delta, sigma);
  Json payload;
  payload["stable"] = report.holds;
  std::string plain = report.holds ? "stable\n" : "not stable";
  if (!report.holds) {
    payload["witness"] = groupmat::witness_to_json(*report.witness, opts.style());
    const auto& w = *report.witness;
    plain += ": rows " + std::to_string(w.row_a) + "," + std::to_string(w.row_b) + " sum " +
             fmt(w.sum_a, opts) + " vs " + fmt(w.sum_b, opts) + " over columns {";
    for (size_t i = 0; i < w.col_block.size(); ++i)
      plain += (i ? "," : "") + std::to_string(w.col_block[i]);
    plain += "}\n";
  }
  emit(opts, payload, plain);
  return report.holds ? 0 : 1;
}

int run_stable_coarsest(const OutputOptions& opts, const std::string& matrix_spec,
                        const std::string& cols_spec) {
  Matrix p = groupmat::matrix_from_json(load_spec(matrix_spec));
  Partition sigma = groupmat::partition_from_json(load_spec(cols_spec));
  Partition delta = groupmat::coarsest_stable_partition(p, sigma);
  Json payload;
  payload["partition"] = groupmat::partition_to_json(delta);
  emit(opts, payload, delta.str() + "\n");
  return 0;
}

int run_grouped(const OutputOptions& opts, const std::string& matrix_spec,
                const std::string& rows_spec, const std::string& cols_spec) {
  Matrix p = groupmat::matrix_from_json(load_spec(matrix_spec));
  Partition delta = groupmat::partition_from_json(load_spec(rows_spec));
  Partition sigma = groupmat::partition_from_json(load_spec(cols_spec));
  try {
    groupmat::GroupedMatrix g = groupmat::grouped(p, delta, sigma);
    emit(opts, groupmat::grouped_to_json(g, opts.style()),
         delta.str() + " x " + sigma.str() + "\n" + plain_matrix(g.entries(), opts));
    return 0;
  } catch (const groupmat::NotBlockStable& e) {
    Json payload;
    payload["error"] = "not block stable";
    payload["witness"] = groupmat::witness_to_json(e.witness, opts.style());
    emit(opts, payload, std::string("not block stable\n"));
    return 1;
  }
}

int run_chain_certify(const OutputOptions& opts, const std::string& chain_spec,
                      const std::string& kept_spec) {
  Json j = load_spec(chain_spec);
  groupmat::ChainSpec spec = groupmat::chain_from_json(j, spec_base_dir(chain_spec));
  std::vector<int> kept = spec.kept;
  if (!kept_spec.empty()) kept = index_set_from_json(load_spec(kept_spec));
  if (kept.empty()) throw groupmat::InvalidInput("no kept set given (file key or --kept)");
  try {
    auto chain = groupmat::validate_chain(spec.matrices, spec.partitions);
    auto cert = groupmat::stable_rows(std::move(chain), kept);
    emit(opts, groupmat::chain_certificate_to_json(cert, opts.style()),
         "stable_row: " + plain_row(cert.stable_row, opts) + "\n");
    return 0;
  } catch (const groupmat::NotBlockStable& e) {
    Json payload;
    payload["error"] = "not block stable";
    payload["factor"] = e.factor;
    payload["witness"] = groupmat::witness_to_json(e.witness, opts.style());
    emit(opts, payload, "not block stable at factor " + std::to_string(e.factor) + "\n");
    return 1;
  }
}

int run_chain_structural(const OutputOptions& opts, const std::string& chain_spec) {
  Json j = load_spec(chain_spec);
  groupmat::ChainSpec spec = groupmat::chain_from_json(j, spec_base_dir(chain_spec));
  auto chain = groupmat::validate_chain(spec.matrices, spec.partitions);
  auto report = groupmat::structural_preconditions(chain);
  Json payload;
  payload["break_applicable"] = report.break_applicable;
  payload["identical_applicable"] = report.identical_applicable;
  payload["breakable_factor"] =
      report.breakable_factor ? Json(*report.breakable_factor) : Json(nullptr);
  payload["identical_rows_factor"] =
      report.identical_rows_factor ? Json(*report.identical_rows_factor) : Json(nullptr);
  std::string plain;
  plain += "breakable_factor: " +
           (report.breakable_factor ? std::to_string(*report.breakable_factor) : "none") + "\n";
  plain += "identical_rows_factor: " +
           (report.identical_rows_factor ? std::to_string(*report.identical_rows_factor) : "none") +
           "\n";
  emit(opts, payload, plain);
  return 0;
}

int run_similar(const OutputOptions& opts, const std::string& first_spec,
                const std::string& second_spec, const std::string& rows_spec,
                const std::string& cols_spec) {
  Matrix p = groupmat::matrix_from_json(load_spec(first_spec));
  Matrix q = groupmat::matrix_from_json(load_spec(second_spec));
  Partition delta = groupmat::partition_from_json(load_spec(rows_spec));
  Partition sigma = groupmat::partition_from_json(load_spec(cols_spec));
  try {
    bool same = groupmat::similar(p, q, delta, sigma);
    Json payload;
    payload["similar"] = same;
    if (same)
      payload["key"] = groupmat::grouped_to_json(groupmat::similarity_key(p, delta, sigma),
                                                 opts.style());
    emit(opts, payload, same ? "similar\n" : "not similar\n");
    return same ? 0 : 1;
  } catch (const groupmat::NotBlockStable& e) {
    Json payload;
    payload["similar"] = false;
    payload["error"] = "not block stable";
    payload["witness"] = groupmat::witness_to_json(e.witness, opts.style());
    emit(opts, payload, std::string("not block stable\n"));
    return 1;
  }
}

int run_degroot_run(const OutputOptions& opts, const std::string& model_spec, int steps) {
  groupmat::DeGrootModel model = groupmat::model_from_json(load_spec(model_spec));
  groupmat::Trajectory t = groupmat::simulate(model, steps);
  std::string plain;
  for (const auto& state : t.states) plain += plain_row(state, opts) + "\n";
  emit(opts, groupmat::trajectory_to_json(t, opts.style()), plain);
  return 0;
}

int run_degroot_certify(const OutputOptions& opts, const std::string& model_spec,
                        const std::string& kept_spec) {
  groupmat::DeGrootModel model = groupmat::model_from_json(load_spec(model_spec));
  std::vector<int> kept;
  if (kept_spec.empty()) {
    for (int i = 1; i <= model.individuals(); ++i) kept.push_back(i);
  } else {
    kept = index_set_from_json(load_spec(kept_spec));
  }
  try {
    auto cert = groupmat::certify(model, kept);
    std::string plain;
    plain += "time: " + std::to_string(cert.time) + "\n";
    plain += "value: " + fmt(cert.value, opts) + "\n";
    plain += "pi: " + plain_row(cert.pi_kept, opts) + "\n";
    plain += std::string("total: ") + (cert.total ? "true" : "false") + "\n";
    emit(opts, groupmat::consensus_certificate_to_json(cert, opts.style()), plain);
    return 0;
  } catch (const groupmat::NotCertified& e) {
    Json payload;
    payload["certified"] = false;
    payload["reason"] = e.what();
    emit(opts, payload, std::string("not certified\n"));
    return 1;
  }
}

int run_degroot_submodel(const OutputOptions& opts, const std::string& model_spec,
                         const std::string& partitions_spec) {
  groupmat::DeGrootModel model = groupmat::model_from_json(load_spec(model_spec));
  auto partitions = groupmat::partition_list_from_json(load_spec(partitions_spec));
  bool ok = groupmat::check_submodel(model, partitions);
  Json payload;
  payload["submodel"] = ok;
  emit(opts, payload, std::string(ok ? "submodel: true\n" : "submodel: false\n"));
  return ok ? 0 : 1;
}

int run_avg_hypercube(const OutputOptions& opts, int m) {
  groupmat::WeightSchedule s = groupmat::hypercube_schedule(m);
  Json payload = groupmat::schedule_to_json(s, opts.style());
  payload["m"] = m;
  std::string plain;
  for (const auto& w : s.steps) plain += plain_matrix(w, opts) + "\n";
  emit(opts, payload, plain);
  return 0;
}

int run_avg_run(const OutputOptions& opts, const std::string& schedule_spec,
                const std::string& graph_spec, const std::string& q0_spec) {
  Json sj = load_spec(schedule_spec);
  std::vector<Matrix> steps = groupmat::schedule_steps_from_json(sj);
  std::optional<groupmat::Graph> graph;
  if (!graph_spec.empty())
    graph = groupmat::graph_from_json(load_spec(graph_spec));
  else if (sj.is_object() && sj.contains("graph"))
    graph = groupmat::graph_from_json(sj["graph"]);
  else
    throw groupmat::InvalidInput("no graph given (schedule key or --graph)");
  Matrix q0 = groupmat::row_vector_from_json(load_spec(q0_spec));
  groupmat::WeightSchedule schedule{*graph, std::move(steps)};
  groupmat::AveragingRun run = groupmat::run_schedule(schedule, q0);
  std::string plain;
  plain += std::string("achieved_averaging: ") + (run.achieved_averaging ? "true" : "false") + "\n";
  plain += "final: " + plain_row(run.trajectory.back(), opts) + "\n";
  emit(opts, groupmat::averaging_run_to_json(run, opts.style()), plain);
  return 0;
}

int run_avg_verify_embedding(const OutputOptions& opts, const std::string& graph_spec,
                             const std::string& labeling_spec) {
  groupmat::Graph g = groupmat::graph_from_json(load_spec(graph_spec));
  groupmat::VertexLabeling lab = groupmat::labeling_from_json(load_spec(labeling_spec));
  bool ok = groupmat::verify_embedding(g, lab);
  Json payload;
  payload["embedding"] = ok;
  emit(opts, payload, std::string(ok ? "embedding: true\n" : "embedding: false\n"));
  return ok ? 0 : 1;
}

int run_avg_s3(const OutputOptions& opts) {
  groupmat::WeightSchedule s = groupmat::s3_swapping_schedule();
  Json payload = groupmat::schedule_to_json(s, opts.style());
  payload["vertex_order"] = groupmat::s3_vertex_order();
  std::string plain;
  for (const auto& w : s.steps) plain += plain_matrix(w, opts) + "\n";
  emit(opts, payload, plain);
  return 0;
}

int run_avg_hybrid(const OutputOptions& opts, const std::string& q0_spec) {
  Matrix q0 = groupmat::row_vector_from_json(load_spec(q0_spec));
  groupmat::AveragingRun run = groupmat::hybrid_leader_scenario(q0);
  std::string plain;
  plain += std::string("achieved_averaging: ") + (run.achieved_averaging ? "true" : "false") + "\n";
  plain += "final: " + plain_row(run.trajectory.back(), opts) + "\n";
  emit(opts, groupmat::averaging_run_to_json(run, opts.style()), plain);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact grouped-matrix toolkit for finite-time consensus"};
  app.require_subcommand(1);

  OutputOptions opts;
  app.add_option("--output", opts.output_path, "write the result to a file instead of stdout");
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "plain"}));
  app.add_flag("--decimal", opts.decimal, "render rationals as 12-digit decimals");

  int exit_code = 0;
  std::string matrix_spec, second_spec, rows_spec, cols_spec, chain_spec, kept_spec;
  std::string model_spec, partitions_spec, schedule_spec, graph_spec, labeling_spec, q0_spec;
  int steps = 0, cube_m = 0;

  auto* stable = app.add_subcommand("stable", "block-stability checks");
  stable->require_subcommand(1);
  auto* stable_check = stable->add_subcommand("check", "is the matrix block stable?");
  stable_check->add_option("--matrix", matrix_spec)->required();
  stable_check->add_option("--rows", rows_spec)->required();
  stable_check->add_option("--cols", cols_spec)->required();
  stable_check->callback([&] { exit_code = run_stable_check(opts, matrix_spec, rows_spec, cols_spec); });

  auto* stable_coarsest = stable->add_subcommand("coarsest", "coarsest stable row partition");
  stable_coarsest->add_option("--matrix", matrix_spec)->required();
  stable_coarsest->add_option("--cols", cols_spec)->required();
  stable_coarsest->callback([&] { exit_code = run_stable_coarsest(opts, matrix_spec, cols_spec); });

  auto* grouped_cmd = app.add_subcommand("grouped", "grouped matrix of block row sums");
  grouped_cmd->add_option("--matrix", matrix_spec)->required();
  grouped_cmd->add_option("--rows", rows_spec)->required();
  grouped_cmd->add_option("--cols", cols_spec)->required();
  grouped_cmd->callback([&] { exit_code = run_grouped(opts, matrix_spec, rows_spec, cols_spec); });

  auto* chain = app.add_subcommand("chain", "partition chains over matrix lists");
  chain->require_subcommand(1);
  auto* chain_certify = chain->add_subcommand("certify", "stable rows of a chain product");
  chain_certify->add_option("--chain", chain_spec)->required();
  chain_certify->add_option("--kept", kept_spec);
  chain_certify->callback([&] { exit_code = run_chain_certify(opts, chain_spec, kept_spec); });

  auto* chain_structural = chain->add_subcommand("structural", "necessary-condition report");
  chain_structural->add_option("--chain", chain_spec)->required();
  chain_structural->callback([&] { exit_code = run_chain_structural(opts, chain_spec); });

  auto* similar_cmd = app.add_subcommand("similar", "equality of grouped matrices");
  similar_cmd->add_option("--first", matrix_spec)->required();
  similar_cmd->add_option("--second", second_spec)->required();
  similar_cmd->add_option("--rows", rows_spec)->required();
  similar_cmd->add_option("--cols", cols_spec)->required();
  similar_cmd->callback(
      [&] { exit_code = run_similar(opts, matrix_spec, second_spec, rows_spec, cols_spec); });

  auto* degroot = app.add_subcommand("degroot", "opinion dynamics");
  degroot->require_subcommand(1);
  auto* degroot_run = degroot->add_subcommand("run", "simulate the model");
  degroot_run->add_option("--model", model_spec)->required();
  degroot_run->add_option("--steps", steps)->required()->check(CLI::NonNegativeNumber);
  degroot_run->callback([&] { exit_code = run_degroot_run(opts, model_spec, steps); });

  auto* degroot_certify = degroot->add_subcommand("certify", "finite-time consensus certificate");
  degroot_certify->add_option("--model", model_spec)->required();
  degroot_certify->add_option("--kept", kept_spec);
  degroot_certify->callback([&] { exit_code = run_degroot_certify(opts, model_spec, kept_spec); });

  auto* degroot_submodel = degroot->add_subcommand("submodel", "block-diagonal chain condition");
  degroot_submodel->add_option("--model", model_spec)->required();
  degroot_submodel->add_option("--partitions", partitions_spec)->required();
  degroot_submodel->callback(
      [&] { exit_code = run_degroot_submodel(opts, model_spec, partitions_spec); });

  auto* avg = app.add_subcommand("avg", "distributed averaging on graphs");
  avg->require_subcommand(1);
  auto* avg_hypercube = avg->add_subcommand("hypercube", "cube averaging schedule");
  avg_hypercube->add_option("--m", cube_m)->required()->check(CLI::PositiveNumber);
  avg_hypercube->callback([&] { exit_code = run_avg_hypercube(opts, cube_m); });

  auto* avg_run = avg->add_subcommand("run", "run a schedule on a graph");
  avg_run->add_option("--schedule", schedule_spec)->required();
  avg_run->add_option("--graph", graph_spec);
  avg_run->add_option("--q0", q0_spec)->required();
  avg_run->callback([&] { exit_code = run_avg_run(opts, schedule_spec, graph_spec, q0_spec); });

  auto* avg_verify = avg->add_subcommand("verify-embedding", "is the labeled cube a spanning subgraph?");
  avg_verify->add_option("--graph", graph_spec)->required();
  avg_verify->add_option("--labeling", labeling_spec)->required();
  avg_verify->callback([&] { exit_code = run_avg_verify_embedding(opts, graph_spec, labeling_spec); });

  auto* avg_s3 = avg->add_subcommand("s3", "two-step schedule on the permutation graph");
  avg_s3->callback([&] { exit_code = run_avg_s3(opts); });

  auto* avg_hybrid = avg->add_subcommand("hybrid", "wheel + complete-graph leader scenario");
  avg_hybrid->add_option("--q0", q0_spec)->required();
  avg_hybrid->callback([&] { exit_code = run_avg_hybrid(opts, q0_spec); });

  // Let --output/--format/--decimal appear after the subcommand too.
  auto enable_fallthrough = [](auto&& self, CLI::App* cmd) -> void {
    for (CLI::App* sub : cmd->get_subcommands(nullptr)) {
      sub->fallthrough();
      self(self, sub);
    }
  };
  enable_fallthrough(enable_fallthrough, &app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const groupmat::InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
