#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace ncagm {

/// A set partition of {1..d} held in restricted-growth form: rgs[0] = 0 and
/// rgs[k] <= 1 + max(rgs[0..k-1]). Blocks are labelled by first appearance,
/// so equal partitions compare equal element-wise and enumeration order is
/// well defined. Immutable after construction.
class SetPartition {
 public:
  /// Hard cap on the ground-set size; Bell(12) = 4,213,597 partitions.
  static constexpr int kMaxGroundSize = 12;

  explicit SetPartition(std::vector<std::uint8_t> rgs);

  /// The all-singletons partition (finest element).
  static SetPartition singletons(int d);
  /// The one-block partition (coarsest element).
  static SetPartition one_block(int d);
  /// Build from explicit blocks of 1-indexed elements; blocks must cover
  /// {1..d} exactly once.
  static SetPartition from_blocks(int d, const std::vector<std::vector<int>>& blocks);
  /// Parse the compact text form "1,2|3" (blocks separated by '|', elements
  /// by ',', 1-indexed). The ground size is the total element count.
  static SetPartition parse(const std::string& text);

  int ground_size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return num_blocks_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  /// 0-based block label of 0-based position.
  int block_of(int pos) const { return rgs_[static_cast<std::size_t>(pos)]; }
  /// Blocks as sorted lists of 1-indexed elements, ordered by minimum element.
  std::vector<std::vector<int>> blocks() const;
  std::vector<int> block_sizes() const;
  /// r[i] = number of blocks with exactly i elements, for i in 0..d (r[0] unused).
  std::vector<int> size_multiplicities() const;
  int singleton_count() const;
  std::string to_text() const;

  bool is_singletons() const { return num_blocks_ == ground_size(); }
  bool is_one_block() const { return num_blocks_ == 1; }

  /// Packed rgs, 4 bits per element (d <= 12 fits into 48 bits). Unique per
  /// partition of a fixed ground size.
  std::uint64_t key() const;

  bool operator==(const SetPartition& other) const { return rgs_ == other.rgs_; }
  bool operator!=(const SetPartition& other) const { return !(*this == other); }

 private:
  std::vector<std::uint8_t> rgs_;
  int num_blocks_ = 0;
};

/// All partitions of {1..d} in lexicographic rgs order (one_block first,
/// singletons last). Throws invalid_argument for d < 1 or d > max_d.
std::vector<SetPartition> enumerate_partitions(int d, int max_d = SetPartition::kMaxGroundSize);

/// sigma <= pi: every block of sigma is contained in some block of pi
/// (sigma is finer). Reflexive. Throws on mismatched ground size.
bool refines_leq(const SetPartition& sigma, const SetPartition& pi);

/// All tau with pi <= tau, realised by partitioning the blocks of pi.
/// Contains pi itself and one_block.
std::vector<SetPartition> coarsenings_of(const SetPartition& pi);

/// Closed product formula for mu(singletons, pi):
///   prod_i [(-1)^(i-1) (i-1)!]^(r_i(pi)).
/// Exact in 64-bit within the d <= 12 cap: |values| <= 11!.
std::int64_t mobius_zero_to(const SetPartition& pi);

/// Memoized Moebius values on a fixed lattice, computed by the defining
/// recursion mu(pi,pi) = 1, mu(pi,sigma) = -sum_{pi <= tau < sigma} mu(pi,tau).
/// Thread-safe; values are exact.
class MobiusCache {
 public:
  explicit MobiusCache(int d);
  int ground_size() const { return d_; }
  /// Requires pi <= sigma; throws order_violation otherwise.
  std::int64_t value(const SetPartition& pi, const SetPartition& sigma);

 private:
  std::int64_t value_locked(const SetPartition& pi, const SetPartition& sigma);

  int d_;
  std::mutex mu_;
  std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, std::int64_t>> table_;
  std::unordered_map<std::uint64_t, std::vector<SetPartition>> coarsenings_;
};

/// mu(pi, sigma) via the recursion, requiring pi <= sigma.
std::int64_t mobius(const SetPartition& pi, const SetPartition& sigma, MobiusCache& cache);

/// Round-trips a vector-valued function through both summation directions:
///   psi(s) = sum_{p <= s} phi(p)   recovered by  phi(s) = sum_{p <= s} mu(p,s) psi(p)
///   psi(s) = sum_{p >= s} phi(p)   recovered by  phi(s) = sum_{p >= s} mu(s,p) psi(p)
/// Returns true iff the recovered values match within tol (tol = 0 for exact
/// integer-valued phi).
bool mobius_inversion_roundtrip(int d,
                                const std::function<std::vector<double>(const SetPartition&)>& phi,
                                double tol);

}  // namespace ncagm
