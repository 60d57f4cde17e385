#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupmat/chain.hpp"

namespace groupmat {

/// Opinion dynamics over a finite list of stochastic weight matrices applied
/// in order: p_n' = P_n p_{n-1}'. A homogeneous model repeats its last matrix
/// beyond the provided horizon.
struct DeGrootModel {
  Matrix p0;                    // 1 x r
  std::vector<Matrix> weights;  // each r x r, stochastic
  bool homogeneous = false;

  int individuals() const { return p0.cols(); }
  int horizon() const { return static_cast<int>(weights.size()); }
};

inline void validate_model(const DeGrootModel& model) {
  int r = model.individuals();
  if (r < 2) throw InvalidInput("a model needs at least two individuals");
  if (model.p0.rows() != 1) throw InvalidInput("p0 must be a single row");
  if (model.weights.empty()) throw InvalidInput("a model needs at least one weight matrix");
  for (size_t n = 0; n < model.weights.size(); ++n) {
    const Matrix& p = model.weights[n];
    if (p.rows() != r || p.cols() != r)
      throw InvalidInput("weight matrix " + std::to_string(n + 1) + " is not " +
                         std::to_string(r) + "x" + std::to_string(r));
    if (!is_stochastic(p))
      throw InvalidInput("weight matrix " + std::to_string(n + 1) + " is not stochastic");
  }
}

/// Weight matrix applied at time n (1-based).
inline const Matrix& weight_at(const DeGrootModel& model, int n) {
  if (n < 1) throw InvalidInput("time must be >= 1");
  if (n <= model.horizon()) return model.weights[n - 1];
  if (model.homogeneous) return model.weights.back();
  throw InvalidInput("time " + std::to_string(n) + " is past the provided weight list");
}

/// One update: returns (P p')' exactly.
inline Matrix step(const Matrix& p, const Matrix& weight) {
  if (p.rows() != 1) throw InvalidInput("step: opinions must be a single row");
  if (weight.rows() != weight.cols() || weight.cols() != p.cols())
    throw InvalidInput("step: weight matrix shape does not match the opinion vector");
  if (!is_stochastic(weight)) throw InvalidInput("step: weight matrix is not stochastic");
  return transpose(multiply(weight, transpose(p)));
}

struct Trajectory {
  std::vector<Matrix> states;  // p_0 .. p_N, each 1 x r
};

inline Trajectory simulate(const DeGrootModel& model, int steps) {
  validate_model(model);
  if (steps < 0) throw InvalidInput("negative horizon");
  Trajectory t;
  t.states.push_back(model.p0);
  for (int n = 1; n <= steps; ++n) t.states.push_back(step(t.states.back(), weight_at(model, n)));
  return t;
}

inline bool all_components_equal(const Matrix& row) {
  for (int j = 1; j < row.cols(); ++j)
    if (row(0, j) != row(0, 0)) return false;
  return true;
}

/// Greedy chain search in application order: D_{b+1} is the coarsest row
/// partition for which P_b is block stable on columns D_b. Succeeds at the
/// first b whose partition is the one-block partition; by monotonicity the
/// greedy partitions dominate every valid chain, so failure over the whole
/// list proves no chain exists for it.
inline std::optional<std::vector<Partition>> find_chain(const std::vector<Matrix>& matrices,
                                                        const Partition& delta1) {
  std::vector<Partition> parts{delta1};
  for (const Matrix& p : matrices) {
    if (p.rows() != p.cols() || p.cols() != parts.back().ground_size())
      throw InvalidInput("find_chain: matrices must be square over the same ground set");
    parts.push_back(coarsest_stable_partition(p, parts.back()));
    if (parts.back().is_trivial()) return parts;
  }
  return std::nullopt;
}

/// A finite-time consensus certificate. `pi_kept` is the consensus weight row
/// restricted to the kept set; for a total consensus `pi_full` holds all r
/// weights and the value sums over everyone.
struct ConsensusCertificate {
  int time = 0;
  std::vector<int> kept;
  Matrix pi_kept{1, 1};
  std::optional<Matrix> pi_full;
  Rational value;
  bool total = false;
  bool from_chain = true;                  // false: p_t itself froze (p0-dependent)
  std::vector<Partition> chain_partitions; // application order, chain route only
};

namespace detail {

// Chain route: smallest t whose greedy chain closes, plus the partitions.
inline std::optional<std::pair<int, std::vector<Partition>>> chain_route(
    const DeGrootModel& model, const Partition& delta1) {
  std::vector<Partition> parts{delta1};
  std::set<std::vector<std::vector<int>>> seen_tail;
  int n = 0;
  while (true) {
    ++n;
    if (n > model.horizon()) {
      if (!model.homogeneous) return std::nullopt;
      if (!seen_tail.insert(parts.back().blocks()).second) return std::nullopt;  // stalled
    }
    parts.push_back(coarsest_stable_partition(weight_at(model, n), parts.back()));
    if (parts.back().is_trivial()) return std::make_pair(n, parts);
  }
}

// Trajectory route: smallest provided t with p_t a constant vector. Once all
// components agree they stay equal under every further stochastic matrix.
inline std::optional<std::pair<int, Matrix>> trajectory_route(const DeGrootModel& model) {
  Matrix p = model.p0;
  for (int n = 1; n <= model.horizon(); ++n) {
    p = step(p, weight_at(model, n));
    if (all_components_equal(p)) return std::make_pair(n, p);
  }
  return std::nullopt;
}

inline Matrix forward_product(const DeGrootModel& model, int t) {
  Matrix acc = weight_at(model, 1);
  for (int n = 2; n <= t; ++n) acc = multiply(weight_at(model, n), acc);
  return acc;  // P_t ... P_1
}

}  // namespace detail

/// Certifies a partial or total consensus for the kept set K at the smallest
/// achievable time. The structural route builds the greedy partition chain and
/// reads the consensus weights off the grouped product; the p0-dependent route
/// (total consensus only) detects the opinion vector itself freezing.
inline ConsensusCertificate certify(const DeGrootModel& model, const std::vector<int>& kept) {
  validate_model(model);
  int r = model.individuals();
  auto k = detail::checked_index_set(kept, r, "certify");
  Partition delta1 = Partition::split_around(r, k);
  bool total_request = delta1.is_singletons();  // |K^c| <= 1

  auto chain_hit = detail::chain_route(model, delta1);
  std::optional<std::pair<int, Matrix>> traj_hit;
  if (total_request) traj_hit = detail::trajectory_route(model);

  bool use_chain;
  if (chain_hit && traj_hit)
    use_chain = chain_hit->first <= traj_hit->first;
  else if (chain_hit || traj_hit)
    use_chain = chain_hit.has_value();
  else
    throw NotCertified("no prefix of the weight list certifies the kept set");

  ConsensusCertificate cert;
  cert.kept = k;
  cert.total = total_request;

  if (use_chain) {
    int t = chain_hit->first;
    const std::vector<Partition>& parts = chain_hit->second;  // D_1 .. D_{t+1}
    cert.time = t;
    cert.from_chain = true;
    cert.chain_partitions = parts;

    // Reverse into the forward product orientation of certificate chains:
    // factors P_t,..,P_1 with boundaries D_{t+1},..,D_1.
    std::vector<Matrix> mats;
    std::vector<Partition> bounds;
    for (int b = t; b >= 1; --b) mats.push_back(weight_at(model, b));
    for (int b = t + 1; b >= 1; --b) bounds.push_back(parts[b - 1]);
    PartitionChain chain = validate_chain(std::move(mats), std::move(bounds));

    if (total_request) {
      std::vector<int> everyone(r);
      for (int i = 0; i < r; ++i) everyone[i] = i + 1;
      ChainCertificate cc = stable_rows(std::move(chain), everyone);
      Matrix pi = cc.stable_row;  // 1 x r
      cert.pi_full = pi;
      cert.pi_kept = submatrix_cols(pi, k);
      Rational value;
      for (int j = 0; j < r; ++j) value += pi(0, j) * model.p0(0, j);
      cert.value = value;
    } else {
      ChainCertificate cc = stable_rows(std::move(chain), k);
      cert.pi_kept = cc.stable_row;  // 1 x |K|
      Rational value;
      for (size_t j = 0; j < k.size(); ++j) value += cert.pi_kept(0, static_cast<int>(j)) * model.p0(0, k[j] - 1);
      cert.value = value;
    }
  } else {
    int t = traj_hit->first;
    cert.time = t;
    cert.from_chain = false;
    cert.value = traj_hit->second(0, 0);
    Matrix product = detail::forward_product(model, t);
    Matrix pi(1, r);
    for (int j = 0; j < r; ++j) pi.at(0, j) = product(0, j);  // first row realizes the value
    cert.pi_full = pi;
    cert.pi_kept = submatrix_cols(pi, k);
  }
  return cert;
}

/// Block-diagonal condition over a refining chain: for every l in 1..t-1 and
/// distinct blocks K, L of D_{l+1}, the block (P_l)_K^L is identically zero.
inline bool check_submodel(const DeGrootModel& model, const std::vector<Partition>& partitions) {
  validate_model(model);
  int r = model.individuals();
  if (partitions.size() < 2) throw InvalidInput("submodel check needs at least two partitions");
  int t = static_cast<int>(partitions.size()) - 1;
  for (const auto& p : partitions)
    if (p.ground_size() != r) throw InvalidInput("submodel partitions must cover all individuals");
  if (!partitions.front().is_singletons())
    throw InvalidInput("submodel chain must start at the singleton partition");
  if (!partitions.back().is_trivial())
    throw InvalidInput("submodel chain must end at the one-block partition");
  if (!is_refining_chain(partitions))
    throw InvalidInput("submodel partitions must refine left to right");
  if (model.horizon() < t - 1)
    throw InvalidInput("submodel check needs the first " + std::to_string(t - 1) + " weights");

  for (int l = 1; l <= t - 1; ++l) {
    const Matrix& p = model.weights[l - 1];
    const Partition& next = partitions[l];
    for (int a = 0; a < next.block_count(); ++a)
      for (int b = 0; b < next.block_count(); ++b) {
        if (a == b) continue;
        for (int i : next.block(a))
          for (int j : next.block(b))
            if (!p(i - 1, j - 1).is_zero()) return false;
      }
  }
  return true;
}

/// True when the K-columns of the running product are frozen from time t on
/// across everything provided: later products leave them unchanged, and they
/// are either a stable block or (for a total check) the opinions themselves
/// have already collapsed to one value.
inline bool freeze_check(const DeGrootModel& model, int t, const std::vector<int>& kept) {
  validate_model(model);
  int r = model.individuals();
  auto k = detail::checked_index_set(kept, r, "freeze_check");
  if (t < 0 || t > model.horizon()) throw InvalidInput("freeze time outside the provided horizon");

  Matrix product = Matrix::identity(r);
  for (int n = 1; n <= t; ++n) product = multiply(model.weights[n - 1], product);
  Matrix frozen = submatrix_cols(product, k);

  Matrix running = product;
  for (int n = t + 1; n <= model.horizon(); ++n) {
    running = multiply(model.weights[n - 1], running);
    if (submatrix_cols(running, k) != frozen) return false;
  }
  if (is_stable(frozen)) return true;
  bool total = Partition::split_around(r, k).is_singletons();
  if (!total) return false;
  Matrix pt = transpose(multiply(product, transpose(model.p0)));
  return all_components_equal(pt);
}

/// The unfrozen remainder at time n: for each individual l, the contribution
/// sum_{u outside K} (P_n..P_1)_{lu} p0_u. Reported as-is; it may or may not
/// depend on n and l.
inline Matrix partial_residuals(const DeGrootModel& model, const std::vector<int>& kept, int n) {
  validate_model(model);
  if (n < 1) throw InvalidInput("partial_residuals: time must be >= 1");
  int r = model.individuals();
  auto k = detail::checked_index_set(kept, r, "partial_residuals");
  std::set<int> kset(k.begin(), k.end());
  Matrix product = detail::forward_product(model, n);
  Matrix out(1, r);
  for (int l = 0; l < r; ++l) {
    Rational sum;
    for (int u = 1; u <= r; ++u)
      if (!kset.count(u)) sum += product(l, u - 1) * model.p0(0, u - 1);
    out.at(0, l) = sum;
  }
  return out;
}

}  // namespace groupmat
