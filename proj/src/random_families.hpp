#pragma once

#include "family.hpp"
#include "partition.hpp"
#include "rng.hpp"

namespace ncagm {

/// Generators for the randomized suites. Everything is driven by an explicit
/// CounterRng so identical seeds reproduce identical inputs.

Matrix random_complex_matrix(int m, CounterRng& rng, double scale = 1.0);
HermitianMatrix random_hermitian(int m, CounterRng& rng, double scale = 1.0);
/// b* b for a random complex b; positive semidefinite by construction.
HermitianMatrix random_psd(int m, CounterRng& rng, double scale = 1.0);

OperatorFamily random_hermitian_family(int n, int m, CounterRng& rng, double scale = 1.0);
OperatorFamily random_psd_family(int n, int m, CounterRng& rng, double scale = 1.0);

/// Hermitian a_1..a_n with sum a_i = 0 exactly (up to rounding).
OperatorFamily random_centered_family(int n, int m, CounterRng& rng, double scale = 1.0);
/// x_i = 1 + a_i with centered a_i, so sum x_i = n.
OperatorFamily random_sum_constrained_family(int n, int m, CounterRng& rng, double scale = 0.25);
/// Entrywise-positive diagonal family with every diagonal coordinate summing
/// to n across the family.
OperatorFamily random_positive_diagonal_normalized(int n, int m, CounterRng& rng);
/// x_i = 1 + a_i built to satisfy both order-AGM hypotheses:
/// sum x_i = n and ||(sum x_i^2)^{1/2}|| <= n / (3 d). Falls back to the
/// identity family when n <= 9 d^2 leaves no room for a perturbation.
OperatorFamily random_order_agm_family(int n, int d, int m, CounterRng& rng);

SetPartition random_partition(int d, CounterRng& rng);

}  // namespace ncagm
