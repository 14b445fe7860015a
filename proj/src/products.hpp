#pragma once

#include "family.hpp"
#include "partition.hpp"

namespace ncagm {

/// Resource guards for the product evaluators. max_terms caps enumeration
/// counts (injective tuples, block assignments, scan states); max_embed_dim
/// caps the dimension n^b * m of the matrix-unit embedding space.
struct ProductLimits {
  long long max_terms = 10'000'000;
  long long max_embed_dim = 4096;
};

/// P_d: the average of x_{j_1} ... x_{j_d} over all injective index tuples,
/// i.e. ((n-d)!/n!) <singletons>. Enumerates tuples directly (lexicographic,
/// shared prefixes). The raw sum is Hermitian up to rounding; it is checked
/// (anti-Hermitian drift <= 1e-10 relative) and hermitized.
HermitianMatrix p_d_bruteforce(const OperatorFamily& fam, int d, const ProductLimits& limits = {});

/// <sigma>: sum of ordered products over index tuples whose equality pattern
/// is exactly sigma (distinct indices across blocks). Returns the zero matrix
/// when sigma has more blocks than the family has members.
Matrix restricted_sum(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits = {});

/// [sigma]: sum over all index tuples constant on sigma's blocks, enumerated
/// as functions blocks -> {1..n} (n^blocks terms) rather than via
/// sum_{pi >= sigma} <pi>, so it can serve as an independent oracle for
/// restricted_sum.
Matrix full_sum_direct(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits = {});

/// [sigma] via the matrix-unit tensor embedding: each non-singleton block
/// gets an n-dimensional slot; position k contributes the factor
/// sum_j t(j) (x) x_j with t(j) = e_{1j} at the block minimum, e_{jj} at
/// interior positions, e_{j1} at the block maximum, and identity slot
/// coordinates for singletons. The d factors are built densely and multiplied
/// in order; the result lives entirely in the (1,..,1) matrix-unit corner,
/// whose m x m block is returned.
Matrix full_sum_embedded(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits = {});

/// [sigma] by scanning positions left to right and keeping one partial
/// product per assignment of indices to the currently open blocks. Same
/// value as the other two routes at cost ~ n^w m^3 per position, w the number
/// of blocks spanning the position, so it stays usable at family sizes where
/// the term-enumeration routes hit their caps.
Matrix full_sum_scan(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits = {});

/// P_d by Moebius decomposition over the partition lattice:
/// ((n-d)!/n!) sum_nu mu(singletons, nu) [nu], with [nu] evaluated by
/// full_sum_direct.
HermitianMatrix p_d_via_mobius(const OperatorFamily& fam, int d, MobiusCache& cache,
                               const ProductLimits& limits = {});

/// Same Moebius decomposition with [nu] evaluated by full_sum_scan; the
/// route for family sizes beyond the enumeration caps.
HermitianMatrix p_d_scan(const OperatorFamily& fam, int d, MobiusCache& cache,
                         const ProductLimits& limits = {});

/// Brute force when the tuple count fits the cap, otherwise the scan route.
HermitianMatrix p_d_auto(const OperatorFamily& fam, int d, MobiusCache& cache,
                         const ProductLimits& limits = {});

namespace detail {

/// Position-dependent cores: position k draws x^k_j from families[k]. All
/// families must share n and m. The public single-family operations pass the
/// same family at every position.
Matrix restricted_sum_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                            const ProductLimits& limits);
Matrix full_sum_direct_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                             const ProductLimits& limits);
Matrix full_sum_embedded_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                               const ProductLimits& limits);
Matrix full_sum_scan_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                           const ProductLimits& limits);

/// n (n-1) ... (n-d+1), or -1 if it exceeds cap.
long long falling_factorial_capped(int n, int d, long long cap);

}  // namespace detail

}  // namespace ncagm
