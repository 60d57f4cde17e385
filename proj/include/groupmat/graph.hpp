#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupmat/errors.hpp"

namespace groupmat {

/// Simple undirected graph on vertices 1..n. Loops and duplicate edges are
/// rejected; connectivity is a query so that support graphs extracted from
/// models can be inspected before deciding what to do with them.
class Graph {
 public:
  Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n + 1) {
    if (n < 1) throw InvalidInput("graph needs at least one vertex");
    std::set<std::pair<int, int>> normalized;
    for (auto [i, j] : edges) {
      if (i == j) throw InvalidInput("graph has a loop at " + std::to_string(i));
      if (i < 1 || j < 1 || i > n || j > n)
        throw InvalidInput("edge {" + std::to_string(i) + "," + std::to_string(j) +
                           "} outside 1.." + std::to_string(n));
      normalized.emplace(std::min(i, j), std::max(i, j));
    }
    edges_.assign(normalized.begin(), normalized.end());
    for (auto [i, j] : edges_) {
      adj_[i].push_back(j);
      adj_[j].push_back(i);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  static Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
    return Graph(n, edges);
  }

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const {
    if (i < 1 || i > n_) throw InvalidInput("vertex outside the graph");
    return adj_[i];
  }

  bool has_edge(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) return false;
    const auto& a = adj_[i];
    return std::binary_search(a.begin(), a.end(), j);
  }

  bool connected() const {
    std::vector<char> seen(n_ + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace groupmat
