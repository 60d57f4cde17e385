#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupmat/stability.hpp"

namespace groupmat {

/// A sequence of factors P_1..P_t with boundary partitions D_1..D_{t+1},
/// oriented so that factor b is block stable for rows D_b, columns D_{b+1}.
/// Build through validate_chain, which checks every invariant.
struct PartitionChain {
  std::vector<Matrix> matrices;
  std::vector<Partition> partitions;

  int length() const { return static_cast<int>(matrices.size()); }
};

inline PartitionChain validate_chain(std::vector<Matrix> matrices,
                                     std::vector<Partition> partitions) {
  if (matrices.empty()) throw InvalidInput("chain needs at least one factor");
  if (partitions.size() != matrices.size() + 1)
    throw InvalidInput("chain needs one more partition than factors");
  for (size_t b = 0; b < matrices.size(); ++b) {
    const Matrix& p = matrices[b];
    if (p.rows() != partitions[b].ground_size() || p.cols() != partitions[b + 1].ground_size())
      throw InvalidInput("factor " + std::to_string(b + 1) + " is " + std::to_string(p.rows()) +
                         "x" + std::to_string(p.cols()) + " but its partitions cover " +
                         std::to_string(partitions[b].ground_size()) + " and " +
                         std::to_string(partitions[b + 1].ground_size()));
    auto report = is_block_stable(p, partitions[b], partitions[b + 1]);
    if (!report.holds) throw NotBlockStable(*report.witness, static_cast<int>(b + 1));
  }
  return PartitionChain{std::move(matrices), std::move(partitions)};
}

inline std::vector<GroupedMatrix> grouped_factors(const PartitionChain& chain) {
  std::vector<GroupedMatrix> gs;
  gs.reserve(chain.matrices.size());
  for (size_t b = 0; b < chain.matrices.size(); ++b)
    gs.push_back(grouped(chain.matrices[b], chain.partitions[b], chain.partitions[b + 1]));
  return gs;
}

/// Product of the per-factor grouped matrices. Equals the grouped matrix of
/// the full product P_1..P_t for (D_1, D_{t+1}).
inline GroupedMatrix grouped_product(const PartitionChain& chain) {
  auto gs = grouped_factors(chain);
  Matrix acc = gs[0].entries();
  for (size_t b = 1; b < gs.size(); ++b) {
    if (gs[b].row_labels() != gs[b - 1].col_labels())
      throw InternalInconsistency("grouped factor labels do not connect");
    acc = multiply(acc, gs[b].entries());
  }
  return GroupedMatrix(chain.partitions.front(), chain.partitions.back(), acc);
}

/// Certifies that the K-columns of P_1..P_t form a matrix with identical
/// rows, carrying the grouped factors and that shared row.
struct ChainCertificate {
  PartitionChain chain;
  std::vector<int> kept;
  std::vector<GroupedMatrix> factors;
  Matrix stable_row;          // 1 x |K|
  Matrix full_product_block;  // n_1 x |K|, every row equals stable_row
  bool direct_checked;        // full product recomputed and compared
};

namespace detail {
inline unsigned long long chain_multiply_work(const PartitionChain& chain) {
  unsigned long long work = 0;
  unsigned long long n1 = chain.partitions.front().ground_size();
  for (size_t b = 1; b < chain.matrices.size(); ++b)
    work += n1 * static_cast<unsigned long long>(chain.matrices[b].rows()) *
            static_cast<unsigned long long>(chain.matrices[b].cols());
  return work;
}
}  // namespace detail

/// Requires D_1 = ({1..n_1}) and D_{t+1} = split_around(n_{t+1}, K). The
/// stable row is read off the grouped product; when the brute-force product
/// costs at most `work_bound` scalar multiplies it is recomputed directly and
/// compared entrywise as an internal oracle.
inline ChainCertificate stable_rows(PartitionChain chain, const std::vector<int>& kept,
                                    unsigned long long work_bound = 1'000'000) {
  const Partition& first = chain.partitions.front();
  const Partition& last = chain.partitions.back();
  if (!first.is_trivial())
    throw InvalidInput("stable_rows: the leading partition must be the one-block partition");
  Partition expected = Partition::split_around(last.ground_size(), kept);
  if (last != expected)
    throw InvalidInput("stable_rows: the trailing partition must split around the kept set");

  auto factors = grouped_factors(chain);
  GroupedMatrix product = grouped_product(chain);
  Matrix stable_row = singleton_label_columns(product, kept);

  bool direct = detail::chain_multiply_work(chain) <= work_bound;
  Matrix block(1, 1);
  if (direct) {
    Matrix full = chain.matrices[0];
    for (size_t b = 1; b < chain.matrices.size(); ++b) full = multiply(full, chain.matrices[b]);
    block = submatrix_cols(full, kept);
    for (int i = 0; i < block.rows(); ++i)
      for (int j = 0; j < block.cols(); ++j)
        if (block(i, j) != stable_row(0, j))
          throw InternalInconsistency("grouped route disagrees with the direct product at row " +
                                      std::to_string(i + 1));
  } else {
    block = Matrix(first.ground_size(), stable_row.cols());
    for (int i = 0; i < block.rows(); ++i)
      for (int j = 0; j < block.cols(); ++j) block.at(i, j) = stable_row(0, j);
  }
  return ChainCertificate{std::move(chain), detail::checked_index_set(kept, last.ground_size(), "stable_rows"),
                          std::move(factors), std::move(stable_row), std::move(block), direct};
}

/// Structural facts behind a certificate-shaped chain: a factor that can be
/// broken into generalized stochastic column blocks, and a factor with
/// identical rows inside some row block.
struct StructuralReport {
  bool break_applicable = false;      // all of n_2..n_{t+1} >= 2
  bool identical_applicable = false;  // all of n_1..n_t >= 2
  std::optional<int> breakable_factor;       // 1-based u
  std::optional<int> identical_rows_factor;  // 1-based w
};

inline StructuralReport structural_preconditions(const PartitionChain& chain) {
  const int t = chain.length();
  if (!chain.partitions.front().is_trivial() || !chain.partitions.back().is_split_form())
    throw InvalidInput("structural_preconditions: chain does not have certificate boundaries");

  StructuralReport report;
  report.break_applicable = true;
  for (int b = 1; b <= t; ++b)
    if (chain.partitions[b].ground_size() < 2) report.break_applicable = false;
  report.identical_applicable = true;
  for (int b = 0; b < t; ++b)
    if (chain.partitions[b].ground_size() < 2) report.identical_applicable = false;

  if (report.break_applicable) {
    int u = 0;
    for (; u < t; ++u)
      if (chain.partitions[u].is_trivial() && !chain.partitions[u + 1].is_trivial()) break;
    if (u < t) {
      // Membership makes P_{u+1} stable on D_{u+2}; verify directly anyway.
      auto check = is_block_stable(chain.matrices[u], Partition::trivial(chain.matrices[u].rows()),
                                   chain.partitions[u + 1]);
      if (!check.holds)
        throw InternalInconsistency("breakable factor candidate fails its stability check");
      report.breakable_factor = u + 1;
    }
  }

  if (report.identical_applicable) {
    auto blocks_have_identical_rows = [](const Matrix& m, const Partition& delta,
                                         const std::vector<int>* cols) {
      for (const auto& u : delta.blocks()) {
        if (u.size() < 2) continue;
        Matrix rows = submatrix_rows(m, u);
        if (cols) rows = submatrix_cols(rows, *cols);
        if (!is_stable(rows)) return false;
      }
      return true;
    };
    const Partition& dt = chain.partitions[t - 1];
    if (!dt.is_singletons()) {
      auto kept = chain.partitions[t].singleton_members();
      if (!blocks_have_identical_rows(chain.matrices[t - 1], dt, &kept))
        throw InternalInconsistency("trailing factor misses the identical-rows property");
      report.identical_rows_factor = t;
    } else {
      for (int w = t - 1; w >= 1; --w) {
        if (chain.partitions[w - 1].is_singletons()) continue;
        if (!blocks_have_identical_rows(chain.matrices[w - 1], chain.partitions[w - 1], nullptr))
          throw InternalInconsistency("factor " + std::to_string(w) +
                                      " misses the identical-rows property");
        report.identical_rows_factor = w;
        break;
      }
    }
  }
  return report;
}

/// Two matrices are similar for (delta, sigma) exactly when their grouped
/// matrices are equal; the grouped matrix is the equivalence key.
inline GroupedMatrix similarity_key(const Matrix& p, const Partition& delta,
                                    const Partition& sigma) {
  return grouped(p, delta, sigma);
}

inline bool similar(const Matrix& p, const Matrix& q, const Partition& delta,
                    const Partition& sigma) {
  return similarity_key(p, delta, sigma) == similarity_key(q, delta, sigma);
}

/// Replaces factor `position` (1-based) by a similar matrix. The swap leaves
/// every grouped product, and hence every stable row, exactly unchanged.
inline PartitionChain swap_similar(const PartitionChain& chain, int position,
                                   const Matrix& replacement) {
  if (position < 1 || position > chain.length())
    throw InvalidInput("swap_similar: no factor " + std::to_string(position));
  const Partition& delta = chain.partitions[position - 1];
  const Partition& sigma = chain.partitions[position];
  GroupedMatrix original = grouped(chain.matrices[position - 1], delta, sigma);
  GroupedMatrix candidate = grouped(replacement, delta, sigma);  // throws NotBlockStable
  if (original != candidate)
    throw SimilarityViolation("replacement factor is not similar to the original at position " +
                              std::to_string(position));
  std::vector<Matrix> mats = chain.matrices;
  mats[position - 1] = replacement;
  return validate_chain(std::move(mats), chain.partitions);
}

}  // namespace groupmat
