#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "groupmat/groupmat.hpp"

using namespace groupmat;

namespace {

const std::string kCli = GROUPMAT_CLI_BIN;
const std::string kData = GROUPMAT_TESTDATA;

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string q(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("json round-trips") {
  gen::Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    Matrix m = gen::random_matrix(rng, rng.uniform(1, 6), rng.uniform(1, 6), 30);
    CHECK(matrix_from_json(matrix_to_json(m)) == m);
    Partition p = gen::random_partition(rng, rng.uniform(1, 9));
    CHECK(partition_from_json(partition_to_json(p)) == p);
  }
  DeGrootModel model = fx::ex27_model();
  DeGrootModel back = model_from_json(model_to_json(model));
  CHECK(back.p0 == model.p0);
  CHECK(back.weights.size() == model.weights.size());
  for (size_t i = 0; i < back.weights.size(); ++i) CHECK(back.weights[i] == model.weights[i]);
}

TEST_CASE("json rational forms") {
  CHECK(rational_from_json(Json::parse("\"2/4\"")) == Rational(1, 2));
  CHECK(rational_from_json(Json::parse("3")) == Rational(3));
  CHECK(rational_from_json(Json::parse("\"0.2\"")) == Rational(1, 5));
  CHECK(rational_from_json(Json::parse("0.2")) == Rational(1, 5));  // float text form
  CHECK(rational_from_json(Json::parse("-7")) == Rational(-7));
  CHECK_THROWS_AS(rational_from_json(Json::parse("null")), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json::parse("\"1/0\"")), ParseError);
  // big integers render as strings and come back exact
  Rational big = Rational::parse("123456789012345678901234567890");
  CHECK(rational_from_json(rational_to_json(big)) == big);
}

TEST_CASE("json shape errors") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse("{\"rows\":2,\"cols\":2,\"entries\":[[1,2]]}")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("{\"rows\":1,\"cols\":2,\"entries\":[[1]]}")),
                  ParseError);
  CHECK_THROWS_AS(partition_from_json(Json::parse("[[1,2],[4]]")), InvalidInput);
  CHECK_THROWS_AS(partition_from_json(Json::parse("[]")), ParseError);
  CHECK_THROWS_AS(graph_from_json(Json::parse("{\"n\":2,\"edges\":[[1,1]]}")), InvalidInput);
  CHECK_THROWS_AS(graph_from_json(Json::parse("{\"n\":4,\"edges\":[[1,2],[3,4]]}")),
                  InvalidInput);  // disconnected
}

TEST_CASE("cli grouped matches the worked grouped matrices") {
  auto r = run_cli("grouped --matrix " + kData + "/example_1_6_P.json --rows " +
                   q("[[1,2],[3,4]]") + " --cols " + q("[[1,2],[3,4,5]]"));
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["entries"] == Json::parse("[[5,1],[10,7]]"));

  auto t = run_cli("grouped --matrix " + kData + "/example_1_6_T.json --rows " +
                   q("[[1,2]]") + " --cols " + q("[[1],[2],[3,4]]"));
  CHECK(t.exit_code == 0);
  CHECK(Json::parse(t.out)["entries"] == Json::parse("[[3,\"-1/4\",\"3/4\"]]"));

  auto one = run_cli("grouped --matrix " +
                     q("{\"rows\":1,\"cols\":1,\"entries\":[[7]]}") + " --rows " + q("[[1]]") +
                     " --cols " + q("[[1]]"));
  CHECK(one.exit_code == 0);
  CHECK(Json::parse(one.out)["entries"] == Json::parse("[[7]]"));
}

TEST_CASE("cli stable check exit codes") {
  auto ok = run_cli("stable check --matrix " + kData + "/example_1_6_P.json --rows " +
                    q("[[1,2],[3,4]]") + " --cols " + q("[[1,2],[3,4,5]]"));
  CHECK(ok.exit_code == 0);
  CHECK(Json::parse(ok.out)["stable"] == Json(true));

  auto no = run_cli("stable check --matrix " + kData + "/example_1_6_P.json --rows " +
                    q("[[1,2],[3,4]]") + " --cols " + q("[[1],[2],[3],[4],[5]]"));
  CHECK(no.exit_code == 1);
  Json jw = Json::parse(no.out);
  CHECK(jw["stable"] == Json(false));
  CHECK(jw["witness"]["rows"].size() == 2);

  auto bad = run_cli("stable check --matrix " + kData + "/malformed/truncated.json --rows " +
                     q("[[1]]") + " --cols " + q("[[1]]"));
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli certify goldens") {
  auto r = run_cli("degroot certify --model " + kData + "/example_2_7_model.json --kept " +
                   q("[1,2,3,4]"));
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["time"] == Json(3));
  CHECK(j["value"] == Json("169/128"));

  auto partial = run_cli("degroot certify --model " + kData +
                         "/example_2_8_model.json --kept " + q("[1,2]"));
  CHECK(partial.exit_code == 0);
  Json jp = Json::parse(partial.out);
  CHECK(jp["time"] == Json(2));
  CHECK(jp["value"] == Json("26/5"));
  CHECK(jp["total"] == Json(false));

  auto nope = run_cli("degroot certify --model " + kData + "/identity_model.json");
  CHECK(nope.exit_code == 1);

  auto frozen = run_cli("degroot certify --model " + kData + "/remark_2_3_model.json");
  CHECK(frozen.exit_code == 0);
  Json jf = Json::parse(frozen.out);
  CHECK(jf["time"] == Json(1));
  CHECK(jf["value"] == Json(3));
}

TEST_CASE("cli submodel and chain commands") {
  CHECK(run_cli("degroot submodel --model " + kData + "/example_2_10_model.json --partitions " +
                kData + "/example_2_10_partitions.json")
            .exit_code == 0);
  CHECK(run_cli("degroot submodel --model " + kData + "/example_2_11_model.json --partitions " +
                kData + "/example_2_11_partitions.json")
            .exit_code == 0);

  auto cert = run_cli("chain certify --chain " + kData + "/example_1_12_chain.json");
  CHECK(cert.exit_code == 0);
  Json jc = Json::parse(cert.out);
  CHECK(jc["stable_row"] == Json::parse("[\"1/8\",\"1/8\",\"5/8\",\"1/8\"]"));

  auto variant = run_cli("chain certify --chain " + kData + "/example_1_12_chain_variant.json");
  CHECK(variant.exit_code == 0);
  CHECK(Json::parse(variant.out)["stable_row"] == Json::parse("[\"1/8\",\"1/8\"]"));

  auto structural = run_cli("chain structural --chain " + kData + "/example_1_12_chain.json");
  CHECK(structural.exit_code == 0);
  Json js = Json::parse(structural.out);
  CHECK(js["breakable_factor"] == Json(2));
  CHECK(js["identical_rows_factor"] == Json(3));

  auto sim = run_cli("similar --first " + kData + "/example_1_15_P.json --second " + kData +
                     "/example_1_15_Q.json --rows " + q("[[1,2],[3,4]]") + " --cols " +
                     q("[[1,2],[3,4]]"));
  CHECK(sim.exit_code == 0);
  CHECK(Json::parse(sim.out)["similar"] == Json(true));
}

TEST_CASE("cli avg commands") {
  auto emb = run_cli("avg verify-embedding --graph " + kData + "/k8_graph.json --labeling " +
                     kData + "/q3_labeling.json");
  CHECK(emb.exit_code == 0);
  auto no = run_cli("avg verify-embedding --graph " + kData + "/c8_graph.json --labeling " +
                    kData + "/q3_labeling.json");
  CHECK(no.exit_code == 1);

  auto s3 = run_cli("avg s3");
  CHECK(s3.exit_code == 0);
  Json js3 = Json::parse(s3.out);
  CHECK(js3["steps"].size() == 2);

  auto hyb = run_cli("avg hybrid --q0 " + q("[8,0,0,0,0,0,0,0]"));
  CHECK(hyb.exit_code == 0);
  Json jh = Json::parse(hyb.out);
  CHECK(jh["achieved_averaging"] == Json(true));
  CHECK(jh["trajectory"].back() == Json::parse("[1,1,1,1,1,1,1,1]"));

  auto dec = run_cli("degroot certify --model " + kData +
                     "/example_2_7_model.json --decimal");
  CHECK(dec.exit_code == 0);
  CHECK(Json::parse(dec.out)["value"] == Json("1.3203125"));
}

TEST_CASE("cli emitted json re-parses to equal values") {
  auto r = run_cli("grouped --matrix " + kData + "/example_1_6_Q.json --rows " +
                   q("[[1,2],[3,4]]") + " --cols " + q("[[1],[2],[3]]"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  Matrix entries(static_cast<int>(j["entries"].size()),
                 static_cast<int>(j["entries"][0].size()));
  for (int i = 0; i < entries.rows(); ++i)
    for (int c = 0; c < entries.cols(); ++c)
      entries.at(i, c) = rational_from_json(j["entries"][i][c]);
  GroupedMatrix direct =
      grouped(fx::ex16_Q(), Partition(4, {{1, 2}, {3, 4}}), Partition::singletons(3));
  CHECK(entries == direct.entries());
  CHECK(partition_from_json(j["row_labels"]) == direct.row_labels());
  CHECK(partition_from_json(j["col_labels"]) == direct.col_labels());
}

TEST_CASE("chain files may reference matrix files") {
  // a one-factor chain whose matrix lives in a separate file next to it
  std::string dir = "/tmp/groupmat_chaindir";
  std::filesystem::create_directories(dir);
  {
    std::ofstream mf(dir + "/factor.json");
    mf << matrix_to_json(fx::ex16_Z()).dump();
  }
  {
    std::ofstream cf(dir + "/chain.json");
    cf << R"({"matrices": ["factor.json"],
              "partitions": [[[1,2]], [[1],[2]]],
              "kept": [1, 2]})";
  }
  auto r = run_cli("chain certify --chain " + dir + "/chain.json");
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.out)["stable_row"] == Json::parse("[\"1/4\",\"-3/4\"]"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli schedules pipe into avg run") {
  std::string schedule_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                              "/groupmat_cube_schedule.json";
  auto emitted = run_cli("avg hypercube --m 3 --output " + schedule_path);
  REQUIRE(emitted.exit_code == 0);

  auto run = run_cli("avg run --schedule " + schedule_path + " --q0 " +
                     q("[0,8,0,0,0,0,0,0]"));
  CHECK(run.exit_code == 0);
  Json jr = Json::parse(run.out);
  CHECK(jr["achieved_averaging"] == Json(true));
  CHECK(jr["trajectory"].back() == Json::parse("[1,1,1,1,1,1,1,1]"));
  std::remove(schedule_path.c_str());

  std::string s3_path = std::string("/tmp/groupmat_s3_schedule.json");
  REQUIRE(run_cli("avg s3 --output " + s3_path).exit_code == 0);
  auto s3run = run_cli("avg run --schedule " + s3_path + " --q0 " + q("[1,2,3,4,5,6]"));
  CHECK(s3run.exit_code == 0);
  Json js = Json::parse(s3run.out);
  CHECK(js["trajectory"].back() ==
        Json::parse("[\"7/2\",\"7/2\",\"7/2\",\"7/2\",\"7/2\",\"7/2\"]"));
  std::remove(s3_path.c_str());
}

TEST_CASE("cli output is byte stable") {
  std::vector<std::string> commands{
      "grouped --matrix " + kData + "/example_1_6_P.json --rows " + q("[[1,2],[3,4]]") +
          " --cols " + q("[[1,2],[3,4,5]]"),
      "degroot certify --model " + kData + "/example_2_7_model.json --kept " + q("[1,2,3,4]"),
      "chain certify --chain " + kData + "/example_1_12_chain.json",
      "avg s3",
      "avg hypercube --m 3",
      "stable coarsest --matrix " + kData + "/example_1_6_Q.json --cols " + q("[[1],[2],[3]]"),
  };
  for (const auto& cmd : commands) {
    auto first = run_cli(cmd);
    auto second = run_cli(cmd);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}

TEST_CASE("malformed inputs always exit 2") {
  std::vector<std::string> commands{
      "grouped --matrix " + kData + "/malformed/truncated.json --rows " + q("[[1]]") +
          " --cols " + q("[[1]]"),
      "grouped --matrix " + kData + "/malformed/zero_denominator.json --rows " + q("[[1]]") +
          " --cols " + q("[[1,2]]"),
      "grouped --matrix " + kData + "/malformed/bad_fraction.json --rows " + q("[[1]]") +
          " --cols " + q("[[1,2]]"),
      "stable check --matrix " + kData + "/example_1_6_P.json --rows " + kData +
          "/malformed/partition_gap.json --cols " + q("[[1,2,3,4,5]]"),
      "stable check --matrix " + kData + "/example_1_6_P.json --rows " + kData +
          "/malformed/partition_dup.json --cols " + q("[[1,2,3,4,5]]"),
      "grouped --matrix " + kData + "/malformed/matrix_row_count.json --rows " + q("[[1,2]]") +
          " --cols " + q("[[1,2]]"),
      "grouped --matrix " + kData + "/malformed/ragged_row.json --rows " + q("[[1,2]]") +
          " --cols " + q("[[1,2]]"),
      "avg run --graph " + kData + "/malformed/graph_loop.json --schedule " + q("[]") +
          " --q0 " + q("[1,2,3]"),
      "avg run --graph " + kData + "/malformed/graph_range.json --schedule " + q("[]") +
          " --q0 " + q("[1,2,3]"),
      "avg verify-embedding --graph " + kData +
          "/malformed/graph_disconnected.json --labeling " + kData + "/q3_labeling.json",
      "avg verify-embedding --graph " + kData + "/k8_graph.json --labeling " + kData +
          "/malformed/labeling_short.json",
      "degroot run --model " + kData + "/malformed/model_nonstochastic.json --steps 1",
      "degroot run --model " + kData + "/malformed/model_p0_length.json --steps 1",
      "chain certify --chain " + kData + "/malformed/chain_partition_count.json",
  };
  for (const auto& cmd : commands) {
    auto r = run_cli(cmd);
    INFO(cmd);
    CHECK(r.exit_code == 2);
  }
}
