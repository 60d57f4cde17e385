#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "groupmat/errors.hpp"

namespace groupmat {

/// An ordered partition of the 1-based index set {1..n}.
///
/// Blocks are kept in canonical form: indices sorted ascending inside each
/// block, blocks sorted by their minimum element. No block is empty and the
/// blocks cover {1..n} exactly. Immutable value type.
class Partition {
 public:
  Partition(int ground_size, std::vector<std::vector<int>> blocks)
      : n_(ground_size), blocks_(std::move(blocks)) {
    if (n_ < 1) throw InvalidInput("partition ground size must be >= 1");
    for (const auto& b : blocks_)
      if (b.empty()) throw InvalidInput("partition block is empty");
    canonicalize();
    validate();
    index_blocks();
  }

  /// The finest partition ({1},{2},...,{n}).
  static Partition singletons(int n) {
    require_positive(n);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(n);
    for (int i = 1; i <= n; ++i) blocks.push_back({i});
    return Partition(n, std::move(blocks));
  }

  /// The coarsest partition ({1..n}).
  static Partition trivial(int n) {
    require_positive(n);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    return Partition(n, {std::move(all)});
  }

  /// Singleton blocks {j} for every j in `kept`, plus the complement as one
  /// block when it is nonempty. Equals singletons(n) when the complement has
  /// at most one element.
  static Partition split_around(int n, const std::vector<int>& kept) {
    require_positive(n);
    std::set<int> k(kept.begin(), kept.end());
    if (k.empty()) throw InvalidInput("split_around: kept set is empty");
    for (int j : k)
      if (j < 1 || j > n) throw InvalidInput("split_around: index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    std::vector<std::vector<int>> blocks;
    for (int j : k) blocks.push_back({j});
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
      if (!k.count(i)) rest.push_back(i);
    if (!rest.empty()) blocks.push_back(std::move(rest));
    return Partition(n, std::move(blocks));
  }

  int ground_size() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }

  /// 0-based block position holding 1-based index i.
  int block_index_of(int i) const {
    if (i < 1 || i > n_) throw InvalidInput("index outside the ground set");
    return block_of_[i];
  }

  bool is_trivial() const { return blocks_.size() == 1; }
  bool is_singletons() const { return static_cast<int>(blocks_.size()) == n_; }

  /// True when at most one block has more than one element, i.e. the
  /// partition has the split_around(n, K) shape for some K.
  bool is_split_form() const {
    int big = 0;
    for (const auto& b : blocks_)
      if (b.size() > 1) ++big;
    return big <= 1;
  }

  /// The union of the singleton blocks; for a split-form partition this is
  /// the largest K with *this == split_around(n, K).
  std::vector<int> singleton_members() const {
    std::vector<int> k;
    for (const auto& b : blocks_)
      if (b.size() == 1) k.push_back(b[0]);
    std::sort(k.begin(), k.end());
    return k;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

  std::string str() const {
    std::string out;
    for (const auto& b : blocks_) {
      out += '{';
      for (size_t i = 0; i < b.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(b[i]);
      }
      out += '}';
      out += ' ';
    }
    if (!out.empty()) out.pop_back();
    return out;
  }

 private:
  static void require_positive(int n) {
    if (n < 1) throw InvalidInput("ground size must be >= 1");
  }

  void canonicalize() {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  void validate() const {
    std::vector<char> seen(n_ + 1, 0);
    int covered = 0;
    for (const auto& b : blocks_) {
      if (b.empty()) throw InvalidInput("partition block is empty");
      for (int i : b) {
        if (i < 1 || i > n_)
          throw InvalidInput("partition index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
        if (seen[i]) throw InvalidInput("partition blocks overlap at " + std::to_string(i));
        seen[i] = 1;
        ++covered;
      }
    }
    if (covered != n_) throw InvalidInput("partition does not cover the ground set");
  }

  void index_blocks() {
    block_of_.assign(n_ + 1, -1);
    for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
      for (int i : blocks_[b]) block_of_[i] = b;
  }

  int n_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

/// The refinement order: a is finer than b when every block of a lies inside
/// some block of b. Reflexive.
inline bool is_finer(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size())
    throw InvalidInput("is_finer: partitions of different ground sets");
  for (const auto& block : a.blocks()) {
    int target = b.block_index_of(block.front());
    for (int i : block)
      if (b.block_index_of(i) != target) return false;
  }
  return true;
}

/// True when consecutive members satisfy is_finer. Empty and single-element
/// lists are chains.
inline bool is_refining_chain(std::span<const Partition> parts) {
  for (size_t i = 0; i + 1 < parts.size(); ++i)
    if (!is_finer(parts[i], parts[i + 1])) return false;
  return true;
}

}  // namespace groupmat
