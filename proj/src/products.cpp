#include "products.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ncagm {

namespace detail {

long long falling_factorial_capped(int n, int d, long long cap) {
  long long acc = 1;
  for (int k = 0; k < d; ++k) {
    acc *= (n - k);
    if (acc > cap || acc <= 0) return -1;
  }
  return acc;
}

namespace {

long long power_capped(int n, int e, long long cap) {
  long long acc = 1;
  for (int k = 0; k < e; ++k) {
    acc *= n;
    if (acc > cap || acc <= 0) return -1;
  }
  return acc;
}

void validate_positions(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma) {
  if (families.size() != static_cast<std::size_t>(sigma.ground_size()))
    throw_invalid("products: need one family per tuple position");
  const int n = families[0]->size();
  const int m = families[0]->dim();
  for (const auto* f : families)
    if (f->size() != n || f->dim() != m) throw_invalid("products: per-position families must share n and m");
}

/// Ordered product x^{0}_{assign[block(0)]} ... x^{d-1}_{assign[block(d-1)]}
/// accumulated into acc.
void add_tuple_product(Matrix& acc, Matrix& scratch_a, Matrix& scratch_b,
                       const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                       const std::vector<int>& assign) {
  const int d = sigma.ground_size();
  const Matrix* cur = &families[0]->member(assign[static_cast<std::size_t>(sigma.block_of(0))]).mat();
  Matrix* bufs[2] = {&scratch_a, &scratch_b};
  int flip = 0;
  for (int k = 1; k < d; ++k) {
    const Matrix& next = families[static_cast<std::size_t>(k)]
                             ->member(assign[static_cast<std::size_t>(sigma.block_of(k))])
                             .mat();
    multiply_into(*bufs[flip], *cur, next);
    cur = bufs[flip];
    flip ^= 1;
  }
  acc += *cur;
}

}  // namespace

Matrix restricted_sum_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                            const ProductLimits& limits) {
  validate_positions(families, sigma);
  const int n = families[0]->size();
  const int m = families[0]->dim();
  const int nu = sigma.block_count();
  Matrix acc(m);
  if (nu > n) return acc;  // no injective assignment exists: empty sum
  const long long terms = falling_factorial_capped(n, nu, limits.max_terms);
  if (terms < 0)
    throw_resource("restricted_sum: " + std::to_string(n) + " P " + std::to_string(nu) +
                   " assignments exceed the term cap");
  std::vector<int> assign(static_cast<std::size_t>(nu), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Matrix sa(m), sb(m);
  // Injective block assignments in lexicographic order.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int b = static_cast<int>(stack.size()) - 1;
    int& j = stack.back();
    if (assign[static_cast<std::size_t>(b)] >= 0) {
      used[static_cast<std::size_t>(assign[static_cast<std::size_t>(b)])] = false;
      assign[static_cast<std::size_t>(b)] = -1;
    }
    while (j < n && used[static_cast<std::size_t>(j)]) ++j;
    if (j >= n) {
      stack.pop_back();
      if (!stack.empty()) ++stack.back();
      continue;
    }
    assign[static_cast<std::size_t>(b)] = j;
    used[static_cast<std::size_t>(j)] = true;
    if (b + 1 == nu) {
      add_tuple_product(acc, sa, sb, families, sigma, assign);
      used[static_cast<std::size_t>(j)] = false;
      assign[static_cast<std::size_t>(b)] = -1;
      ++j;
    } else {
      stack.push_back(0);
    }
  }
  return acc;
}

Matrix full_sum_direct_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                             const ProductLimits& limits) {
  validate_positions(families, sigma);
  const int n = families[0]->size();
  const int m = families[0]->dim();
  const int nu = sigma.block_count();
  const long long terms = power_capped(n, nu, limits.max_terms);
  if (terms < 0)
    throw_resource("full_sum_direct: " + std::to_string(n) + "^" + std::to_string(nu) +
                   " assignments exceed the term cap");
  Matrix acc(m);
  std::vector<int> assign(static_cast<std::size_t>(nu), 0);
  Matrix sa(m), sb(m);
  for (long long t = 0; t < terms; ++t) {
    long long rest = t;
    for (int b = nu - 1; b >= 0; --b) {
      assign[static_cast<std::size_t>(b)] = static_cast<int>(rest % n);
      rest /= n;
    }
    add_tuple_product(acc, sa, sb, families, sigma, assign);
  }
  return acc;
}

Matrix full_sum_embedded_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                               const ProductLimits& limits) {
  validate_positions(families, sigma);
  const int n = families[0]->size();
  const int m = families[0]->dim();
  const int d = sigma.ground_size();
  const auto sizes = sigma.block_sizes();

  // Non-singleton blocks get matrix-unit slots, in block-label order.
  std::vector<int> slot_of_block(sizes.size(), -1);
  int b_slots = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    if (sizes[b] > 1) slot_of_block[b] = b_slots++;

  long long slot_count = 1;
  for (int s = 0; s < b_slots; ++s) {
    slot_count *= n;
    if (slot_count * m > limits.max_embed_dim)
      throw_resource("full_sum_embedded: embedding dimension n^" + std::to_string(b_slots) + " * m exceeds cap " +
                     std::to_string(limits.max_embed_dim));
  }
  const long long D = slot_count * m;

  // First/last position of each block, to pick the matrix-unit role.
  std::vector<int> first(sizes.size(), -1), last(sizes.size(), -1);
  for (int k = 0; k < d; ++k) {
    const int b = sigma.block_of(k);
    if (first[static_cast<std::size_t>(b)] < 0) first[static_cast<std::size_t>(b)] = k;
    last[static_cast<std::size_t>(b)] = k;
  }

  // stride of slot t in the slot index (slot 0 most significant).
  std::vector<long long> stride(static_cast<std::size_t>(b_slots), 1);
  for (int t = b_slots - 2; t >= 0; --t)
    stride[static_cast<std::size_t>(t)] = stride[static_cast<std::size_t>(t) + 1] * n;

  // Corner rows (slot multi-index 0 on the left), folded through the factors.
  std::vector<cplx> rows(static_cast<std::size_t>(m) * static_cast<std::size_t>(D), cplx{});
  for (int r = 0; r < m; ++r) rows[static_cast<std::size_t>(r) * D + r] = 1.0;
  std::vector<cplx> factor(static_cast<std::size_t>(D) * static_cast<std::size_t>(D));
  std::vector<cplx> next_rows(static_cast<std::size_t>(m) * static_cast<std::size_t>(D));

  auto add_block_at = [&](long long slot_row, long long slot_col, const Matrix& x) {
    for (int r = 0; r < m; ++r) {
      cplx* dst = factor.data() + (slot_row * m + r) * D + slot_col * m;
      const cplx* src = x.data() + static_cast<std::size_t>(r) * m;
      for (int c = 0; c < m; ++c) dst[c] += src[c];
    }
  };

  for (int k = 0; k < d; ++k) {
    std::fill(factor.begin(), factor.end(), cplx{});
    const int b = sigma.block_of(k);
    const OperatorFamily& fam = *families[static_cast<std::size_t>(k)];
    if (sizes[static_cast<std::size_t>(b)] == 1) {
      // Identity in every slot coordinate: I_{n^b} (x) sum_j x_j.
      const Matrix sumx = fam.sum().mat();
      for (long long s = 0; s < slot_count; ++s) add_block_at(s, s, sumx);
    } else {
      const int t = slot_of_block[static_cast<std::size_t>(b)];
      const long long st = stride[static_cast<std::size_t>(t)];
      for (int j = 0; j < n; ++j) {
        // e_{1j} at the block minimum, e_{jj} inside, e_{j1} at the maximum;
        // coordinate "1" is index 0.
        long long ur, uc;
        if (k == first[static_cast<std::size_t>(b)]) {
          ur = 0;
          uc = j;
        } else if (k == last[static_cast<std::size_t>(b)]) {
          ur = j;
          uc = 0;
        } else {
          ur = j;
          uc = j;
        }
        const Matrix& x = fam.member(j).mat();
        for (long long s = 0; s < slot_count; ++s) {
          if ((s / st) % n != 0) continue;  // digit at slot t must be free
          add_block_at(s + ur * st, s + uc * st, x);
        }
      }
    }
    // rows <- rows * factor
    std::fill(next_rows.begin(), next_rows.end(), cplx{});
    for (int r = 0; r < m; ++r) {
      const cplx* rr = rows.data() + static_cast<std::size_t>(r) * D;
      cplx* orow = next_rows.data() + static_cast<std::size_t>(r) * D;
      for (long long kk = 0; kk < D; ++kk) {
        const cplx v = rr[kk];
        if (v == cplx{}) continue;
        const cplx* frow = factor.data() + static_cast<std::size_t>(kk) * D;
        for (long long c = 0; c < D; ++c) orow[c] += v * frow[c];
      }
    }
    rows.swap(next_rows);
  }

  Matrix corner(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) corner(r, c) = rows[static_cast<std::size_t>(r) * D + c];
  return corner;
}

Matrix full_sum_scan_multi(const std::vector<const OperatorFamily*>& families, const SetPartition& sigma,
                           const ProductLimits& limits) {
  validate_positions(families, sigma);
  const int n = families[0]->size();
  const int m = families[0]->dim();
  const int d = sigma.ground_size();
  const auto sizes = sigma.block_sizes();

  std::vector<int> first(sizes.size(), -1), last(sizes.size(), -1);
  for (int k = 0; k < d; ++k) {
    const int b = sigma.block_of(k);
    if (first[static_cast<std::size_t>(b)] < 0) first[static_cast<std::size_t>(b)] = k;
    last[static_cast<std::size_t>(b)] = k;
  }

  // One partial product per assignment of indices to open blocks; digit t of
  // a state index (base n, little-endian over open_blocks) is the index of
  // open_blocks[t].
  std::vector<int> open_blocks;
  std::vector<Matrix> states{Matrix::identity(m)};
  Matrix scratch(m);

  auto pow_ll = [&](int e) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) acc *= n;
    return acc;
  };

  for (int k = 0; k < d; ++k) {
    const int b = sigma.block_of(k);
    const OperatorFamily& fam = *families[static_cast<std::size_t>(k)];
    if (sizes[static_cast<std::size_t>(b)] == 1) {
      const Matrix sumx = fam.sum().mat();
      for (auto& s : states) {
        multiply_into(scratch, s, sumx);
        std::swap(s, scratch);
      }
      continue;
    }
    if (k == first[static_cast<std::size_t>(b)]) {
      const long long cur = static_cast<long long>(states.size());
      if (cur * n > limits.max_terms)
        throw_resource("full_sum_scan: state count exceeds the term cap");
      std::vector<Matrix> grown(static_cast<std::size_t>(cur) * n);
      for (int j = 0; j < n; ++j) {
        const Matrix& x = fam.member(j).mat();
        for (long long s = 0; s < cur; ++s)
          multiply_into(grown[static_cast<std::size_t>(j * cur + s)], states[static_cast<std::size_t>(s)], x);
      }
      states.swap(grown);
      open_blocks.push_back(b);
      continue;
    }
    // Interior or closing position of an open block: multiply by the member
    // the state's digit selects.
    const int t = static_cast<int>(std::find(open_blocks.begin(), open_blocks.end(), b) - open_blocks.begin());
    const long long st = pow_ll(t);
    for (std::size_t s = 0; s < states.size(); ++s) {
      const int j = static_cast<int>((static_cast<long long>(s) / st) % n);
      multiply_into(scratch, states[s], fam.member(j).mat());
      std::swap(states[s], scratch);
    }
    if (k == last[static_cast<std::size_t>(b)]) {
      // Sum the digit out.
      const long long total = static_cast<long long>(states.size());
      const long long reduced = total / n;
      std::vector<Matrix> shrunk(static_cast<std::size_t>(reduced), Matrix(m));
      for (long long s = 0; s < total; ++s) {
        const long long lo = s % st;
        const long long hi = s / (st * n);
        shrunk[static_cast<std::size_t>(hi * st + lo)] += states[static_cast<std::size_t>(s)];
      }
      states.swap(shrunk);
      open_blocks.erase(open_blocks.begin() + t);
    }
  }
  return states[0];
}

}  // namespace detail

namespace {

std::vector<const OperatorFamily*> replicate_family(const OperatorFamily& fam, int d) {
  return std::vector<const OperatorFamily*>(static_cast<std::size_t>(d), &fam);
}

HermitianMatrix hermitize_checked(Matrix raw, const char* op) {
  const double drift = raw.anti_hermitian_drift();
  const double scale = raw.frobenius_norm();
  if (drift > 1e-10 * std::max(1.0, scale))
    throw_numeric(std::string(op) + ": anti-Hermitian drift " + std::to_string(drift) +
                  " exceeds 1e-10 of scale");
  return HermitianMatrix(raw);
}

}  // namespace

HermitianMatrix p_d_bruteforce(const OperatorFamily& fam, int d, const ProductLimits& limits) {
  const int n = fam.size();
  const int m = fam.dim();
  if (d < 1 || d > n) throw_invalid("p_d: need 1 <= d <= n");
  const long long tuples = detail::falling_factorial_capped(n, d, limits.max_terms);
  if (tuples < 0)
    throw_resource("p_d_bruteforce: injective tuple count exceeds the term cap");

  Matrix acc(m);
  std::vector<Matrix> prefix(static_cast<std::size_t>(d) + 1, Matrix(m));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  // Depth-first over injective tuples in lexicographic order; prefix[k] holds
  // the product of the first k chosen members.
  std::function<void(int)> rec = [&](int k) {
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (k == 0) {
        prefix[1] = fam.member(j).mat();
      } else {
        multiply_into(prefix[static_cast<std::size_t>(k) + 1], prefix[static_cast<std::size_t>(k)],
                      fam.member(j).mat());
      }
      if (k + 1 == d) {
        acc += prefix[static_cast<std::size_t>(d)];
      } else {
        used[static_cast<std::size_t>(j)] = true;
        rec(k + 1);
        used[static_cast<std::size_t>(j)] = false;
      }
    }
  };
  rec(0);
  acc *= 1.0 / static_cast<double>(tuples);
  return hermitize_checked(std::move(acc), "p_d_bruteforce");
}

Matrix restricted_sum(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits) {
  return detail::restricted_sum_multi(replicate_family(fam, sigma.ground_size()), sigma, limits);
}

Matrix full_sum_direct(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits) {
  return detail::full_sum_direct_multi(replicate_family(fam, sigma.ground_size()), sigma, limits);
}

Matrix full_sum_embedded(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits) {
  return detail::full_sum_embedded_multi(replicate_family(fam, sigma.ground_size()), sigma, limits);
}

Matrix full_sum_scan(const OperatorFamily& fam, const SetPartition& sigma, const ProductLimits& limits) {
  return detail::full_sum_scan_multi(replicate_family(fam, sigma.ground_size()), sigma, limits);
}

namespace {

HermitianMatrix p_d_from_full_sums(const OperatorFamily& fam, int d, MobiusCache& cache,
                                   const ProductLimits& limits, bool scan, const char* op) {
  const int n = fam.size();
  if (d < 1 || d > n) throw_invalid("p_d: need 1 <= d <= n");
  if (cache.ground_size() != d) throw_invalid("p_d: Moebius cache built for a different d");
  const long long tuples = detail::falling_factorial_capped(n, d, (1LL << 62));
  if (tuples < 0) throw_resource("p_d: injective tuple count overflows");
  const SetPartition finest = SetPartition::singletons(d);
  Matrix acc(fam.dim());
  for (const SetPartition& nu : enumerate_partitions(d)) {
    const std::int64_t mu = cache.value(finest, nu);
    Matrix term = scan ? full_sum_scan(fam, nu, limits) : full_sum_direct(fam, nu, limits);
    term *= static_cast<double>(mu);
    acc += term;
  }
  acc *= 1.0 / static_cast<double>(tuples);
  return hermitize_checked(std::move(acc), op);
}

}  // namespace

HermitianMatrix p_d_via_mobius(const OperatorFamily& fam, int d, MobiusCache& cache, const ProductLimits& limits) {
  return p_d_from_full_sums(fam, d, cache, limits, /*scan=*/false, "p_d_via_mobius");
}

HermitianMatrix p_d_scan(const OperatorFamily& fam, int d, MobiusCache& cache, const ProductLimits& limits) {
  return p_d_from_full_sums(fam, d, cache, limits, /*scan=*/true, "p_d_scan");
}

HermitianMatrix p_d_auto(const OperatorFamily& fam, int d, MobiusCache& cache, const ProductLimits& limits) {
  const long long tuples = detail::falling_factorial_capped(fam.size(), d, limits.max_terms);
  if (tuples > 0) return p_d_bruteforce(fam, d, limits);
  return p_d_scan(fam, d, cache, limits);
}

}  // namespace ncagm
