#include "random_families.hpp"

#include <cmath>

namespace ncagm {

Matrix random_complex_matrix(int m, CounterRng& rng, double scale) {
  Matrix a(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) a(r, c) = scale * cplx(rng.gaussian(), rng.gaussian());
  return a;
}

HermitianMatrix random_hermitian(int m, CounterRng& rng, double scale) {
  return HermitianMatrix(random_complex_matrix(m, rng, scale));
}

HermitianMatrix random_psd(int m, CounterRng& rng, double scale) {
  const Matrix b = random_complex_matrix(m, rng, scale);
  return HermitianMatrix(b.adjoint() * b);
}

OperatorFamily random_hermitian_family(int n, int m, CounterRng& rng, double scale) {
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(random_hermitian(m, rng, scale));
  return OperatorFamily(std::move(xs));
}

OperatorFamily random_psd_family(int n, int m, CounterRng& rng, double scale) {
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(random_psd(m, rng, scale));
  return OperatorFamily(std::move(xs));
}

OperatorFamily random_centered_family(int n, int m, CounterRng& rng, double scale) {
  std::vector<Matrix> raw;
  raw.reserve(static_cast<std::size_t>(n));
  Matrix mean(m);
  for (int i = 0; i < n; ++i) {
    raw.push_back(random_hermitian(m, rng, scale).mat());
    mean += raw.back();
  }
  mean *= 1.0 / n;
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (auto& a : raw) {
    a -= mean;
    xs.emplace_back(a);
  }
  return OperatorFamily(std::move(xs));
}

OperatorFamily random_sum_constrained_family(int n, int m, CounterRng& rng, double scale) {
  const OperatorFamily a = random_centered_family(n, m, rng, scale);
  const Matrix eye = Matrix::identity(m);
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.emplace_back(a.member(i).mat() + eye);
  return OperatorFamily(std::move(xs));
}

OperatorFamily random_positive_diagonal_normalized(int n, int m, CounterRng& rng) {
  // Per diagonal coordinate: n positive weights rescaled to sum to n.
  std::vector<std::vector<double>> diag(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
  for (int c = 0; c < m; ++c) {
    double total = 0;
    for (int i = 0; i < n; ++i) {
      const double w = 0.05 + rng.uniform();
      diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = w;
      total += w;
    }
    for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *= n / total;
  }
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(HermitianMatrix::diagonal(diag[static_cast<std::size_t>(i)]));
  return OperatorFamily(std::move(xs));
}

OperatorFamily random_order_agm_family(int n, int d, int m, CounterRng& rng) {
  const double budget = std::pow(static_cast<double>(n) / (3.0 * d), 2.0) - n;
  if (budget <= 0) {
    std::vector<HermitianMatrix> xs(static_cast<std::size_t>(n), HermitianMatrix::identity(m));
    return OperatorFamily(std::move(xs));
  }
  const OperatorFamily a = random_centered_family(n, m, rng, 1.0);
  // sum x^2 = n + sum a^2 once the a_i are centered, so scaling the a_i by s
  // puts ||sum x^2|| at n + s^2 ||sum a^2||; aim for 90% of the allowance.
  const double raw = op_norm(a.sum_of_squares());
  const double s = raw > 0 ? std::sqrt(0.9 * budget / raw) : 0.0;
  const Matrix eye = Matrix::identity(m);
  std::vector<HermitianMatrix> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix v = a.member(i).mat();
    v *= s;
    xs.emplace_back(v + eye);
  }
  return OperatorFamily(std::move(xs));
}

SetPartition random_partition(int d, CounterRng& rng) {
  std::vector<std::uint8_t> rgs(static_cast<std::size_t>(d), 0);
  int maxseen = 0;
  for (int k = 1; k < d; ++k) {
    const int label = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxseen) + 2));
    rgs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(label);
    if (label > maxseen) maxseen = label;
  }
  return SetPartition(std::move(rgs));
}

}  // namespace ncagm
