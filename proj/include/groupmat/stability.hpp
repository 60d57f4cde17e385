#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupmat/matrix.hpp"
#include "groupmat/partition.hpp"

namespace groupmat {

/// One concrete violation: two rows in the same row block whose sums over a
/// column block differ.
struct StabilityWitness {
  int row_a = 0;  // 1-based
  int row_b = 0;  // 1-based
  std::vector<int> col_block;
  Rational sum_a;
  Rational sum_b;
};

struct StabilityReport {
  bool holds = false;
  std::optional<StabilityWitness> witness;  // present iff !holds
};

struct NotBlockStable : std::runtime_error {
  NotBlockStable(StabilityWitness w, int factor_index = 0)
      : std::runtime_error("block stability violated: rows " + std::to_string(w.row_a) +
                           "," + std::to_string(w.row_b) + " differ (" + w.sum_a.str() +
                           " vs " + w.sum_b.str() + ")" +
                           (factor_index ? " in factor " + std::to_string(factor_index) : "")),
        witness(std::move(w)),
        factor(factor_index) {}
  StabilityWitness witness;
  int factor;  // 1-based position in a chain, 0 for standalone checks
};

namespace detail {
inline Rational block_row_sum(const Matrix& p, int row1, const std::vector<int>& cols1) {
  Rational sum;
  for (int j : cols1) sum += p(row1 - 1, j - 1);
  return sum;
}
}  // namespace detail

/// Checks that every block P_K^L (rows from a block of `delta`, columns from a
/// block of `sigma`) has equal row sums. On failure the witness pins the first
/// violation in canonical block order.
inline StabilityReport is_block_stable(const Matrix& p, const Partition& delta,
                                       const Partition& sigma) {
  if (delta.ground_size() != p.rows())
    throw InvalidInput("row partition size " + std::to_string(delta.ground_size()) +
                       " does not match matrix rows " + std::to_string(p.rows()));
  if (sigma.ground_size() != p.cols())
    throw InvalidInput("column partition size " + std::to_string(sigma.ground_size()) +
                       " does not match matrix columns " + std::to_string(p.cols()));
  for (const auto& k : delta.blocks()) {
    for (const auto& l : sigma.blocks()) {
      Rational first = detail::block_row_sum(p, k[0], l);
      for (size_t i = 1; i < k.size(); ++i) {
        Rational sum = detail::block_row_sum(p, k[i], l);
        if (sum != first)
          return {false, StabilityWitness{k[0], k[i], l, first, sum}};
      }
    }
  }
  return {true, std::nullopt};
}

/// The coarsest row partition for which the matrix is block stable on `sigma`:
/// rows are grouped by their tuple of block sums.
inline Partition coarsest_stable_partition(const Matrix& p, const Partition& sigma) {
  if (sigma.ground_size() != p.cols())
    throw InvalidInput("column partition size does not match matrix columns");
  std::map<std::vector<Rational>, std::vector<int>> classes;
  for (int i = 1; i <= p.rows(); ++i) {
    std::vector<Rational> signature;
    signature.reserve(sigma.block_count());
    for (const auto& l : sigma.blocks()) signature.push_back(detail::block_row_sum(p, i, l));
    classes[signature].push_back(i);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(classes.size());
  for (auto& [sig, rows] : classes) blocks.push_back(std::move(rows));
  return Partition(p.rows(), std::move(blocks));
}

/// The matrix of block row-sum constants, labeled by its row and column
/// partitions. Entry (K, L) is the shared row sum of P_K^L.
class GroupedMatrix {
 public:
  GroupedMatrix(Partition row_labels, Partition col_labels, Matrix entries)
      : rows_(std::move(row_labels)), cols_(std::move(col_labels)), entries_(std::move(entries)) {
    if (entries_.rows() != rows_.block_count() || entries_.cols() != cols_.block_count())
      throw InvalidInput("grouped matrix entries do not match label block counts");
  }

  const Partition& row_labels() const { return rows_; }
  const Partition& col_labels() const { return cols_; }
  const Matrix& entries() const { return entries_; }

  friend bool operator==(const GroupedMatrix& a, const GroupedMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const GroupedMatrix& a, const GroupedMatrix& b) { return !(a == b); }

 private:
  Partition rows_, cols_;
  Matrix entries_;
};

/// Builds the grouped matrix of P for (delta, sigma). Throws NotBlockStable
/// with a witness when the stability precondition fails.
inline GroupedMatrix grouped(const Matrix& p, const Partition& delta, const Partition& sigma) {
  auto report = is_block_stable(p, delta, sigma);
  if (!report.holds) throw NotBlockStable(*report.witness);
  Matrix entries(delta.block_count(), sigma.block_count());
  for (int bi = 0; bi < delta.block_count(); ++bi)
    for (int bj = 0; bj < sigma.block_count(); ++bj)
      entries.at(bi, bj) = detail::block_row_sum(p, delta.block(bi)[0], sigma.block(bj));
  return GroupedMatrix(delta, sigma, entries);
}

/// Columns of a grouped matrix whose labels are the singleton blocks {j},
/// j in `kept`, in ascending j order.
inline Matrix singleton_label_columns(const GroupedMatrix& g, const std::vector<int>& kept) {
  auto k = detail::checked_index_set(kept, g.col_labels().ground_size(), "singleton_label_columns");
  Matrix out(g.entries().rows(), static_cast<int>(k.size()));
  for (size_t pos = 0; pos < k.size(); ++pos) {
    int b = g.col_labels().block_index_of(k[pos]);
    if (g.col_labels().block(b).size() != 1)
      throw InvalidInput("column label for " + std::to_string(k[pos]) + " is not a singleton");
    for (int i = 0; i < out.rows(); ++i) out.at(i, static_cast<int>(pos)) = g.entries()(i, b);
  }
  return out;
}

}  // namespace groupmat
