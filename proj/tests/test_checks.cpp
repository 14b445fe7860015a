#include <doctest.h>

#include <cmath>

#include "checks.hpp"
#include "random_families.hpp"
#include "rng.hpp"

using namespace ncagm;

namespace {

OperatorFamily identity_family(int n, int m) {
  return OperatorFamily(std::vector<HermitianMatrix>(static_cast<std::size_t>(n), HermitianMatrix::identity(m)));
}

// Exact monotonicity oracle: C(n,d) >= C(n+1,d) iff
// n^d * (n+1)...(n+2-d) >= (n+1)^d * n...(n-d+1), compared in 128-bit.
bool c_nonincreasing_exact(int n, int d) {
  using u128 = unsigned __int128;
  u128 lhs = 1, rhs = 1;
  for (int i = 0; i < d; ++i) {
    lhs *= static_cast<unsigned>(n);
    rhs *= static_cast<unsigned>(n + 1);
  }
  for (int i = 0; i < d; ++i) {
    lhs *= static_cast<unsigned>(n + 1 - i);
    rhs *= static_cast<unsigned>(n - i);
  }
  return lhs >= rhs;
}

}  // namespace

TEST_CASE("constant C(n,d)") {
  CHECK(constant_C(3, 3) == doctest::Approx(27.0));
  CHECK(constant_C(6, 6) == doctest::Approx(46656.0));
  for (int n = 1; n <= 10; ++n) CHECK(constant_C(n, 1) == doctest::Approx(1.0));
  CHECK(constant_C(5, 3) == doctest::Approx(12.5));
  CHECK_THROWS_AS(constant_C(2, 3), Error);
  CHECK_THROWS_AS(constant_C(3, 0), Error);

  for (int d = 1; d <= 6; ++d)
    for (int n = d; n < 30; ++n) {
      CHECK(c_nonincreasing_exact(n, d));
      CHECK(constant_C(n, d) >= constant_C(n + 1, d) * (1 - 1e-14));
    }
}

TEST_CASE("norm AGM checker") {
  const auto v = check_norm_agm(identity_family(4, 3), 2);
  CHECK(v.passed());
  CHECK(v.lhs == doctest::Approx(1.0));
  CHECK(v.rhs == doctest::Approx(2.0));

  CounterRng rng(101);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int m = 1 + static_cast<int>(rng.below(5));
    const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, 4))));
    const auto verdict = check_norm_agm(random_psd_family(n, m, rng), d);
    if (!verdict.passed()) ++failures;
    CHECK(verdict.passed() == (verdict.margin >= -verdict.tol * verdict.scale));
  }
  CHECK(failures == 0);

  // A family with a genuinely negative member is rejected up front.
  std::vector<HermitianMatrix> bad{HermitianMatrix::identity(2), HermitianMatrix::diagonal({1.0, -0.5})};
  try {
    check_norm_agm(OperatorFamily(bad), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
    CHECK(std::string(e.what()).find("member 1") != std::string::npos);
  }
}

TEST_CASE("binomial identity checker") {
  const auto v = check_binomial_identity(identity_family(5, 3), 3);
  CHECK(v.passed());
  CHECK(v.lhs <= 1e-12);

  CounterRng rng(103);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(4));
    const int m = 1 + static_cast<int>(rng.below(4));
    const int d = 2 + static_cast<int>(rng.below(3));
    const auto verdict = check_binomial_identity(random_sum_constrained_family(n, m, rng), d);
    CHECK(verdict.passed());
    CHECK(verdict.lhs <= 1e-10 * verdict.scale);
  }

  // Forcing tol = 0 demonstrates the fail path and the margin convention.
  const auto strict = check_binomial_identity(random_sum_constrained_family(5, 3, rng), 3, 0.0);
  if (strict.lhs > 0) {
    CHECK(strict.state == VerdictState::fail);
    CHECK(strict.passed() == (strict.margin >= -strict.tol * strict.scale));
  }

  CHECK_THROWS_AS(check_binomial_identity(random_psd_family(4, 2, rng), 2), Error);
}

TEST_CASE("binomial decomposition is algebraically unconditional") {
  // The residual stays at rounding level whether or not sum x_i = n holds;
  // the sum constraint is enforced as a precondition gate, not by the
  // identity itself.
  CounterRng rng(211);
  const int n = 5, m = 3, d = 3;
  for (double eps : {0.0, 1e-11, 1e-3}) {
    const OperatorFamily a = random_centered_family(n, m, rng, 0.3);
    Matrix shift = Matrix::identity(m);
    shift *= 1.0 + eps;
    std::vector<HermitianMatrix> xs, as;
    for (int i = 0; i < n; ++i) {
      xs.emplace_back(a.member(i).mat() + shift);
      Matrix centered = a.member(i).mat() + shift;
      centered -= Matrix::identity(m);
      as.emplace_back(centered);
    }
    const OperatorFamily x(xs), ash(as);
    Matrix rhs = Matrix::identity(m);
    double binom = 1;
    for (int k = 1; k <= d; ++k) {
      binom = binom * (d - k + 1) / k;
      Matrix term = p_d_bruteforce(ash, k).mat();
      term *= binom;
      rhs += term;
    }
    CHECK((p_d_bruteforce(x, d).mat() - rhs).frobenius_norm() <= 1e-13);
  }
}

TEST_CASE("binomial coefficients come out of the scalar collapse") {
  // On a constant family x_i = t the identity reduces to the binomial
  // theorem: P_d(x) = t^d and P_k(x - 1) = (t-1)^k.
  const double t = 1.37;
  std::vector<HermitianMatrix> xs(6, HermitianMatrix::diagonal({t}));
  const OperatorFamily fam{xs};
  std::vector<HermitianMatrix> as(6, HermitianMatrix::diagonal({t - 1.0}));
  const OperatorFamily afam{as};
  for (int d = 1; d <= 4; ++d) {
    double rhs = 1.0, binom = 1.0;
    for (int k = 1; k <= d; ++k) {
      binom = binom * (d - k + 1) / k;
      rhs += binom * p_d_bruteforce(afam, k).entry(0, 0).real();
    }
    CHECK(p_d_bruteforce(fam, d).entry(0, 0).real() == doctest::Approx(std::pow(t, d)).epsilon(1e-13));
    CHECK(std::pow(t, d) == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("order AGM checker: gate and pass") {
  // n = 9 d^2 exactly: only the identity family satisfies hypothesis ii.
  ProductLimits scan_only;
  scan_only.max_terms = 1000;
  const auto boundary = check_order_agm(identity_family(81, 2), 3, kDefaultCheckTol, scan_only);
  CHECK(boundary.passed());
  CHECK(boundary.lhs == doctest::Approx(1.0).epsilon(1e-12));

  // Below 9 d^2 hypothesis ii cannot hold, whatever the family.
  const auto gated = check_order_agm(identity_family(12, 2), 3);
  CHECK(gated.state == VerdictState::hypotheses_unmet);

  CounterRng rng(107);
  for (int trial = 0; trial < 5; ++trial) {
    const auto fam = random_order_agm_family(96, 3, 3, rng);
    const auto v = check_order_agm(fam, 3, kDefaultCheckTol, scan_only);
    CHECK(v.state == VerdictState::pass);
    CHECK(v.extras.at("sq_sum_norm") <= v.extras.at("sq_sum_limit"));
  }

  // An unconstrained family reports hypotheses-unmet rather than pass/fail.
  const auto loose = check_order_agm(random_psd_family(12, 2, rng), 3);
  CHECK(loose.state == VerdictState::hypotheses_unmet);
}

TEST_CASE("order AGM d=3 variant") {
  CounterRng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(6));
    const int m = 1 + static_cast<int>(rng.below(5));
    const auto v = check_order_agm_d3(random_positive_diagonal_normalized(n, m, rng), 1e-9);
    CHECK(v.state == VerdictState::pass);
    CHECK(v.lhs <= 1.0 + 1e-9);
  }
  CHECK(check_order_agm_d3(identity_family(5, 2)).state == VerdictState::hypotheses_unmet);
  CHECK(check_order_agm_d3(random_psd_family(8, 2, rng)).state == VerdictState::hypotheses_unmet);
}

TEST_CASE("d=3 closed form checker") {
  CounterRng rng(113);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const int m = 1 + static_cast<int>(rng.below(4));
    const auto v = check_d3_closed_form(random_sum_constrained_family(n, m, rng, 0.6));
    CHECK(v.passed());
    CHECK(v.lhs <= 1e-10 * v.scale);
  }
  CHECK_THROWS_AS(check_d3_closed_form(random_psd_family(5, 2, rng)), Error);
}

TEST_CASE("cross-term bounds") {
  CounterRng rng(127);
  const Matrix a = random_complex_matrix(3, rng);
  const auto same = check_cross_term(a, a, 1.0);
  CHECK(same.passed());

  Matrix nega = a;
  nega *= -1.0;
  CHECK(check_cross_term(a, nega, 1.0).passed());

  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(4));
    const Matrix x = random_complex_matrix(m, rng);
    const Matrix y = random_complex_matrix(m, rng);
    const auto v = check_cross_term(x, y, rng.uniform_in(0.1, 10.0));
    if (!v.passed()) ++failures;
  }
  CHECK(failures == 0);

  CHECK_THROWS_AS(check_cross_term(a, random_complex_matrix(2, rng), 1.0), Error);
  CHECK_THROWS_AS(check_cross_term(a, a, 0.0), Error);
}

TEST_CASE("norm chain checker") {
  const auto v = check_norm_chain(identity_family(5, 3));
  CHECK(v.passed());
  CHECK(v.lhs == doctest::Approx(0.0));
  CHECK(v.rhs == doctest::Approx(std::sqrt(5.0)));

  // One-hot perturbation: strict middle inequality.
  std::vector<HermitianMatrix> xs(4, HermitianMatrix::identity(2));
  xs[0] = HermitianMatrix::diagonal({1.3, 1.0});
  xs[1] = HermitianMatrix::diagonal({0.7, 1.0});
  const auto hot = check_norm_chain(OperatorFamily(xs));
  CHECK(hot.passed());
  CHECK(hot.extras.at("centered_sq_norm") > hot.lhs);

  CounterRng rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const int m = 1 + static_cast<int>(rng.below(4));
    CHECK(check_norm_chain(random_sum_constrained_family(n, m, rng)).passed());
  }
}

TEST_CASE("partition norm bound") {
  CounterRng rng(137);
  const OperatorFamily fam = random_hermitian_family(4, 3, rng);
  CHECK(check_partition_norm(fam, SetPartition::singletons(3)).passed());

  // one-block scalar case, even power: sum x^4 <= (sum x^2)^2.
  std::vector<HermitianMatrix> sc;
  for (double v : {0.3, -1.2, 0.9}) sc.push_back(HermitianMatrix::diagonal({v}));
  CHECK(check_partition_norm(OperatorFamily(sc), SetPartition::one_block(4)).passed());

  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int m = 1 + static_cast<int>(rng.below(4));
    const int d = 1 + static_cast<int>(rng.below(5));
    const OperatorFamily f = random_hermitian_family(n, m, rng);
    if (!check_partition_norm(f, random_partition(d, rng)).passed()) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("two-sided P_d envelope") {
  const int n = 6, m = 3;
  std::vector<HermitianMatrix> zeros(n, HermitianMatrix::zero(m));
  const auto trivial = check_pd_two_sided(OperatorFamily(zeros), 3);
  CHECK(trivial.passed());

  CounterRng rng(139);
  // d = 2: P_2(a) = -(1/(n(n-1))) sum a^2 sits inside the band.
  const OperatorFamily a = random_centered_family(n, m, rng, 0.5);
  const auto v2 = check_pd_two_sided(a, 2);
  CHECK(v2.passed());

  int failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int nn = 4 + static_cast<int>(rng.below(4));
    const int mm = 1 + static_cast<int>(rng.below(3));
    const int d = 3 + static_cast<int>(rng.below(2));
    if (d > nn) continue;
    if (!check_pd_two_sided(random_centered_family(nn, mm, rng, 0.5), d).passed()) ++failures;
  }
  CHECK(failures == 0);

  CHECK_THROWS_AS(check_pd_two_sided(random_psd_family(5, 2, rng), 3), Error);
}

TEST_CASE("verdict JSON carries the full record") {
  const auto v = check_norm_agm(identity_family(3, 2), 2);
  const auto j = v.to_json();
  for (const char* key : {"name", "state", "lhs", "rhs", "margin", "tol", "scale", "digest"})
    CHECK(j.contains(key));
  CHECK(j.at("state").get<std::string>() == "pass");
  CHECK(j.at("digest").get<std::string>().size() == 16);
}
