#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupmat/degroot.hpp"
#include "groupmat/graph.hpp"

namespace groupmat {

/// Bijection between vertices 1..2^m and the m-bit strings. bits[v-1] labels
/// vertex v; x_1 is the leftmost character.
struct VertexLabeling {
  int m;
  std::vector<std::string> bits;

  VertexLabeling(int m_, std::vector<std::string> bits_) : m(m_), bits(std::move(bits_)) {
    if (m < 1) throw InvalidInput("labeling needs m >= 1");
    size_t expect = size_t{1} << m;
    if (bits.size() != expect)
      throw InvalidInput("labeling needs exactly " + std::to_string(expect) + " bit strings");
    std::set<std::string> seen;
    for (const auto& s : bits) {
      if (static_cast<int>(s.size()) != m) throw InvalidInput("label '" + s + "' is not " + std::to_string(m) + " bits");
      for (char c : s)
        if (c != '0' && c != '1') throw InvalidInput("label '" + s + "' has a non-bit character");
      if (!seen.insert(s).second) throw InvalidInput("label '" + s + "' repeats");
    }
  }

  /// Position of a label in lexicographic order, as a 1-based vertex of the
  /// canonical cube.
  static int lex_index(const std::string& label) {
    int v = 0;
    for (char c : label) v = v * 2 + (c - '0');
    return v + 1;
  }
};

inline VertexLabeling canonical_labeling(int m) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  int n = 1 << m;
  std::vector<std::string> bits(n);
  for (int v = 0; v < n; ++v) {
    std::string s(m, '0');
    for (int b = 0; b < m; ++b)
      if (v & (1 << (m - 1 - b))) s[b] = '1';
    bits[v] = s;
  }
  return VertexLabeling(m, std::move(bits));
}

/// Cube graph on 2^m vertices in lexicographic bit-string order.
inline Graph hypercube_graph(int m) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  int n = 1 << m;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < m; ++b) {
      int w = v ^ (1 << b);
      if (w > v) edges.emplace_back(v + 1, w + 1);
    }
  return Graph(n, edges);
}

/// Step l of the cube averaging scheme: each vertex pairs with its neighbor
/// across bit m-l+1 and both take the midpoint (weights 1/2 and 1/2). l = 1
/// pairs across the last bit.
inline Matrix hypercube_step_matrix(int m, int l) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  if (l < 1 || l > m) throw InvalidInput("step index outside 1..m");
  int n = 1 << m;
  Matrix w(n, n);
  Rational half(1, 2);
  for (int v = 0; v < n; ++v) {
    int partner = v ^ (1 << (l - 1));
    w.at(v, v) = half;
    w.at(v, partner) = half;
  }
  return w;
}

/// A per-step weight matrix list tied to the graph it must respect.
struct WeightSchedule {
  Graph graph;
  std::vector<Matrix> steps;
};

/// Neighbor constraint: off-diagonal weight only across an edge. Throws with
/// the offending entry.
inline void validate_schedule(const WeightSchedule& schedule) {
  int n = schedule.graph.size();
  for (size_t s = 0; s < schedule.steps.size(); ++s) {
    const Matrix& w = schedule.steps[s];
    if (w.rows() != n || w.cols() != n)
      throw InvalidInput("schedule step " + std::to_string(s + 1) + " is not " +
                         std::to_string(n) + "x" + std::to_string(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !w(i, j).is_zero() && !schedule.graph.has_edge(i + 1, j + 1))
          throw InvalidInput("schedule step " + std::to_string(s + 1) + " weights (" +
                             std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") across a non-edge");
  }
}

/// The m matrices W_1..W_m on the canonical cube. Their product in either
/// order is the uniform matrix with entries 1/2^m.
inline WeightSchedule hypercube_schedule(int m) {
  WeightSchedule s{hypercube_graph(m), {}};
  s.steps.reserve(m);
  for (int l = 1; l <= m; ++l) s.steps.push_back(hypercube_step_matrix(m, l));
  return s;
}

/// True when every pair of vertices whose labels differ in one bit is an edge
/// of g, i.e. the labeled cube is a spanning subgraph of g.
inline bool verify_embedding(const Graph& g, const VertexLabeling& lab) {
  int n = 1 << lab.m;
  if (g.size() != n) throw InvalidInput("graph has " + std::to_string(g.size()) +
                                        " vertices but the labeling covers " + std::to_string(n));
  std::map<std::string, int> vertex_of;
  for (int v = 1; v <= n; ++v) vertex_of[lab.bits[v - 1]] = v;
  for (int v = 1; v <= n; ++v) {
    std::string label = lab.bits[v - 1];
    for (int b = 0; b < lab.m; ++b) {
      std::string other = label;
      other[b] = other[b] == '0' ? '1' : '0';
      int w = vertex_of.at(other);
      if (w > v && !g.has_edge(v, w)) return false;
    }
  }
  return true;
}

/// The cube schedule re-indexed through a verified labeling, so that it runs
/// on g directly.
inline WeightSchedule transported_hypercube_schedule(const Graph& g, const VertexLabeling& lab) {
  if (!verify_embedding(g, lab))
    throw InvalidInput("labeling does not embed the cube into the graph");
  int n = g.size();
  std::vector<int> canon(n + 1);
  for (int v = 1; v <= n; ++v) canon[v] = VertexLabeling::lex_index(lab.bits[v - 1]);
  WeightSchedule out{g, {}};
  for (int l = 1; l <= lab.m; ++l) {
    Matrix w = hypercube_step_matrix(lab.m, l);
    Matrix t(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) t.at(i - 1, j - 1) = w(canon[i] - 1, canon[j] - 1);
    out.steps.push_back(std::move(t));
  }
  validate_schedule(out);
  return out;
}

struct AveragingRun {
  std::vector<Matrix> trajectory;  // q_0 .. q_t
  bool achieved_averaging = false;
  int steps_used = 0;
};

inline Matrix mean_vector(const Matrix& q0) {
  Rational sum;
  for (int j = 0; j < q0.cols(); ++j) sum += q0(0, j);
  Rational mean = sum / Rational(q0.cols());
  return Matrix::constant(1, q0.cols(), mean);
}

/// Runs every step of the schedule; averaging is achieved when the final
/// vector equals the exact mean vector of q0.
inline AveragingRun run_schedule(const WeightSchedule& schedule, const Matrix& q0) {
  validate_schedule(schedule);
  if (q0.rows() != 1 || q0.cols() != schedule.graph.size())
    throw InvalidInput("initial values must be one row over the graph's vertices");
  AveragingRun run;
  run.trajectory.push_back(q0);
  for (const Matrix& w : schedule.steps)
    run.trajectory.push_back(transpose(multiply(w, transpose(run.trajectory.back()))));
  run.steps_used = static_cast<int>(schedule.steps.size());
  run.achieved_averaging = run.trajectory.back() == mean_vector(q0);
  return run;
}

namespace detail {
inline Matrix from_fractions(const std::vector<std::vector<std::pair<long, long>>>& rows) {
  std::vector<std::vector<Rational>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> row;
    row.reserve(r.size());
    for (auto [num, den] : r) row.emplace_back(num, den);
    out.push_back(std::move(row));
  }
  return Matrix::from_rows(out);
}
}  // namespace detail

/// Two-step schedule on the 3-regular graph over the six permutations of
/// order three, listed as (123),(132),(213),(231),(321),(312): first pair
/// averaging across a last-two-position swap, then mixing in thirds. The
/// product is the uniform 1/6 matrix.
inline WeightSchedule s3_swapping_schedule() {
  Matrix w1 = detail::from_fractions({
      {{1, 2}, {1, 2}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
      {{1, 2}, {1, 2}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
      {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 1}, {0, 1}},
      {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 1}, {0, 1}},
      {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 2}, {1, 2}},
      {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 2}, {1, 2}},
  });
  Matrix w2 = detail::from_fractions({
      {{1, 3}, {0, 1}, {1, 3}, {0, 1}, {1, 3}, {0, 1}},
      {{0, 1}, {1, 3}, {0, 1}, {1, 3}, {0, 1}, {1, 3}},
      {{1, 3}, {0, 1}, {1, 3}, {0, 1}, {0, 1}, {1, 3}},
      {{0, 1}, {1, 3}, {0, 1}, {1, 3}, {1, 3}, {0, 1}},
      {{1, 3}, {0, 1}, {0, 1}, {1, 3}, {1, 3}, {0, 1}},
      {{0, 1}, {1, 3}, {1, 3}, {0, 1}, {0, 1}, {1, 3}},
  });
  // Support union of both steps.
  std::vector<std::pair<int, int>> edges;
  for (const Matrix* w : {&w1, &w2})
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (!(*w)(i, j).is_zero()) edges.emplace_back(i + 1, j + 1);
  WeightSchedule s{Graph(6, edges), {w1, w2}};
  validate_schedule(s);
  return s;
}

inline std::vector<std::string> s3_vertex_order() {
  return {"(123)", "(132)", "(213)", "(231)", "(321)", "(312)"};
}

/// The eight-vertex graph obtained by merging a five-vertex wheel (rim
/// 1-2-7-6, hub 8) with a complete graph on {1,2,3,4,5} along the edge {1,2}.
inline Graph hybrid_leader_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i : {1, 2, 3, 4, 5})
    for (int j : {1, 2, 3, 4, 5})
      if (i < j) edges.emplace_back(i, j);
  edges.emplace_back(1, 6);
  edges.emplace_back(2, 7);
  edges.emplace_back(6, 7);
  for (int v : {1, 2, 6, 7}) edges.emplace_back(v, 8);
  return Graph(8, edges);
}

/// Four-phase averaging on the hybrid graph: uniform averaging over
/// {1,2,6,7,8}, a weighted round over {1,3,4,5} that lands the global mean on
/// all four, then leader writes spread it everywhere (1 to 2, 6 and 8, then 2
/// to 7 once 2 holds the mean). The wheel phase pairs vertices two hops
/// apart, which is what makes this a hybrid scheme rather than a plain
/// per-edge schedule; run it through hybrid_leader_scenario, not run_schedule.
inline std::vector<Matrix> hybrid_leader_steps() {
  int n = 8;
  Rational fifth(1, 5);
  Matrix phase1 = Matrix::identity(n);
  std::vector<int> wheel{1, 2, 6, 7, 8};
  for (int i : wheel) {
    for (int j = 1; j <= n; ++j) phase1.at(i - 1, j - 1) = Rational(0);
    for (int j : wheel) phase1.at(i - 1, j - 1) = fifth;
  }
  Matrix phase2 = Matrix::identity(n);
  std::vector<int> core{1, 3, 4, 5};
  for (int i : core) {
    for (int j = 1; j <= n; ++j) phase2.at(i - 1, j - 1) = Rational(0);
    phase2.at(i - 1, 0) = Rational(5, 8);
    for (int j : {3, 4, 5}) phase2.at(i - 1, j - 1) = Rational(1, 8);
  }
  Matrix phase3 = Matrix::identity(n);
  for (int v : {2, 6, 8}) {
    phase3.at(v - 1, v - 1) = Rational(0);
    phase3.at(v - 1, 0) = Rational(1);
  }
  Matrix phase4 = Matrix::identity(n);
  phase4.at(7 - 1, 7 - 1) = Rational(0);
  phase4.at(7 - 1, 2 - 1) = Rational(1);
  return {phase1, phase2, phase3, phase4};
}

/// Runs the hybrid scenario; the final vector is constant at the mean of the
/// eight initial values.
inline AveragingRun hybrid_leader_scenario(const Matrix& q0) {
  if (q0.rows() != 1 || q0.cols() != 8)
    throw InvalidInput("the hybrid scenario runs on exactly eight vertices");
  AveragingRun run;
  run.trajectory.push_back(q0);
  for (const Matrix& w : hybrid_leader_steps())
    run.trajectory.push_back(transpose(multiply(w, transpose(run.trajectory.back()))));
  run.steps_used = 4;
  run.achieved_averaging = run.trajectory.back() == mean_vector(q0);
  return run;
}

/// A model re-expressed on a graph: the support graph of its weights when
/// that is connected, otherwise the complete graph.
struct GraphModel {
  Graph graph;
  WeightSchedule schedule;
  bool support_connected;
};

inline GraphModel degroot_on_complete_graph(const DeGrootModel& model) {
  validate_model(model);
  int r = model.individuals();
  std::vector<std::pair<int, int>> support;
  for (const Matrix& p : model.weights)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j && !p(i, j).is_zero()) support.emplace_back(i + 1, j + 1);
  Graph support_graph(r, support);
  bool ok = !support_graph.edges().empty() && support_graph.connected();
  Graph graph = ok ? support_graph : Graph::complete(r);
  WeightSchedule schedule{graph, model.weights};
  validate_schedule(schedule);
  return GraphModel{std::move(graph), std::move(schedule), ok};
}

}  // namespace groupmat
