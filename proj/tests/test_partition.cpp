#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "partition.hpp"
#include "rng.hpp"

using namespace ncagm;

namespace {

// Independent oracle: Bell numbers from the Bell triangle, no partitions.
std::vector<std::uint64_t> bell_numbers(int dmax) {
  std::vector<std::uint64_t> bell{1};  // Bell(0)
  std::vector<std::uint64_t> row{1};
  for (int d = 1; d <= dmax; ++d) {
    std::vector<std::uint64_t> next(row.size() + 1);
    next[0] = row.back();
    for (std::size_t k = 0; k < row.size(); ++k) next[k + 1] = next[k] + row[k];
    bell.push_back(next[0]);
    row = std::move(next);
  }
  return bell;
}

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("enumeration matches the Bell numbers") {
  const auto bell = bell_numbers(8);
  for (int d = 1; d <= 8; ++d) CHECK(enumerate_partitions(d).size() == bell[static_cast<std::size_t>(d)]);
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(3).size() == 5);
  CHECK(enumerate_partitions(8).size() == 4140);
}

TEST_CASE("enumeration is lexicographic and bracketed by the trivial partitions") {
  for (int d : {2, 4, 5}) {
    const auto lattice = enumerate_partitions(d);
    CHECK(lattice.front() == SetPartition::one_block(d));
    CHECK(lattice.back() == SetPartition::singletons(d));
    for (std::size_t i = 1; i < lattice.size(); ++i)
      CHECK(std::lexicographical_compare(lattice[i - 1].rgs().begin(), lattice[i - 1].rgs().end(),
                                         lattice[i].rgs().begin(), lattice[i].rgs().end()));
  }
}

TEST_CASE("block statistics satisfy the counting identities") {
  for (const auto& pi : enumerate_partitions(6)) {
    const auto r = pi.size_multiplicities();
    int total = 0, blocks = 0;
    for (int i = 1; i <= 6; ++i) {
      total += i * r[static_cast<std::size_t>(i)];
      blocks += r[static_cast<std::size_t>(i)];
    }
    CHECK(total == 6);
    CHECK(blocks == pi.block_count());
  }
}

TEST_CASE("enumeration rejects out-of-range d") {
  CHECK_THROWS_AS(enumerate_partitions(0), Error);
  CHECK_THROWS_AS(enumerate_partitions(13), Error);
  CHECK_THROWS_AS(enumerate_partitions(5, 4), Error);
}

TEST_CASE("refinement order basics") {
  const auto p123 = SetPartition::parse("1,2,3");
  const auto p12_3 = SetPartition::parse("1,2|3");
  const auto p13_2 = SetPartition::parse("1,3|2");
  const auto fine = SetPartition::singletons(3);
  CHECK(refines_leq(fine, p12_3));
  CHECK(!refines_leq(p12_3, fine));
  CHECK(!refines_leq(p12_3, p13_2));
  CHECK(!refines_leq(p13_2, p12_3));
  CHECK(refines_leq(SetPartition::parse("1,2|3,4"), SetPartition::parse("1,2,3,4")));
  for (const auto& pi : enumerate_partitions(5)) {
    CHECK(refines_leq(pi, pi));
    CHECK(refines_leq(SetPartition::singletons(5), pi));
    CHECK(refines_leq(pi, SetPartition::one_block(5)));
  }
  CHECK_THROWS_AS(refines_leq(p123, SetPartition::singletons(4)), Error);
}

TEST_CASE("refinement is a partial order") {
  const auto lattice = enumerate_partitions(4);
  for (const auto& a : lattice)
    for (const auto& b : lattice) {
      if (refines_leq(a, b) && refines_leq(b, a)) CHECK(a == b);
      for (const auto& c : lattice)
        if (refines_leq(a, b) && refines_leq(b, c)) CHECK(refines_leq(a, c));
    }
}

TEST_CASE("coarsenings enumerate the up-set") {
  const auto pi = SetPartition::parse("1,2|3|4");
  const auto ups = coarsenings_of(pi);
  CHECK(ups.size() == 5);  // partitions of 3 blocks
  for (const auto& tau : ups) CHECK(refines_leq(pi, tau));
  const auto lattice = enumerate_partitions(4);
  std::size_t expect = 0;
  for (const auto& tau : lattice)
    if (refines_leq(pi, tau)) ++expect;
  CHECK(ups.size() == expect);
}

TEST_CASE("product formula for the bottom Moebius values") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(mobius_zero_to(SetPartition::singletons(d)) == 1);
    const std::int64_t sign = (d % 2 == 1) ? 1 : -1;
    CHECK(mobius_zero_to(SetPartition::one_block(d)) == sign * factorial(d - 1));
  }
  CHECK(mobius_zero_to(SetPartition::one_block(3)) == 2);
  CHECK(mobius_zero_to(SetPartition::parse("1,2,3|4")) == 2);
  CHECK(mobius_zero_to(SetPartition::parse("1,2|3")) == -1);
}

TEST_CASE("sum of |mu| from the bottom is d!") {
  for (int d = 1; d <= 8; ++d) {
    std::int64_t acc = 0;
    for (const auto& pi : enumerate_partitions(d)) acc += std::abs(mobius_zero_to(pi));
    CHECK(acc == factorial(d));
  }
}

TEST_CASE("recursion agrees with the product formula") {
  for (int d = 1; d <= 5; ++d) {
    MobiusCache cache(d);
    const auto fine = SetPartition::singletons(d);
    for (const auto& pi : enumerate_partitions(d)) CHECK(cache.value(fine, pi) == mobius_zero_to(pi));
  }
}

TEST_CASE("interval sums vanish above the bottom") {
  for (int d = 2; d <= 7; ++d) {
    MobiusCache cache(d);
    const auto lattice = enumerate_partitions(d);
    for (const auto& sigma : lattice) {
      if (sigma == SetPartition::singletons(d)) continue;
      std::int64_t acc = 0;
      for (const auto& pi : lattice)
        if (refines_leq(pi, sigma)) acc += cache.value(pi, sigma);
      CHECK(acc == 0);
    }
  }
}

TEST_CASE("mobius rejects incomparable pairs") {
  MobiusCache cache(3);
  const auto a = SetPartition::parse("1,2|3");
  const auto b = SetPartition::parse("1,3|2");
  CHECK_THROWS_AS(cache.value(a, b), Error);
  try {
    cache.value(a, b);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::order_violation);
  }
}

TEST_CASE("inversion round trip") {
  auto zero = [](const SetPartition&) { return std::vector<double>{0.0, 0.0}; };
  CHECK(mobius_inversion_roundtrip(3, zero, 0.0));

  CounterRng rng(2024);
  auto random_ints = [&rng](const SetPartition& p) {
    CounterRng local(0xfeed, p.key());
    (void)rng;
    std::vector<double> v(3);
    for (auto& x : v) x = static_cast<double>(static_cast<int>(local.below(21)) - 10);
    return v;
  };
  CHECK(mobius_inversion_roundtrip(4, random_ints, 0.0));
  CHECK(mobius_inversion_roundtrip(5, random_ints, 0.0));

  auto random_reals = [](const SetPartition& p) {
    CounterRng local(0xbeef, p.key());
    std::vector<double> v(4);
    for (auto& x : v) x = local.gaussian();
    return v;
  };
  CHECK(mobius_inversion_roundtrip(5, random_reals, 1e-12));
}

TEST_CASE("text form round trip and canonicalization") {
  const auto p = SetPartition::parse("1,2|3");
  CHECK(p.to_text() == "1,2|3");
  CHECK(SetPartition::parse("3|2,1").to_text() == "1,2|3");
  CHECK(SetPartition::from_blocks(3, {{3}, {1, 2}}).to_text() == "1,2|3");
  CHECK(SetPartition::parse(p.to_text()) == p);
  CHECK(p.block_count() == 2);
  CHECK(p.singleton_count() == 1);

  CHECK_THROWS_AS(SetPartition::parse(""), Error);
  CHECK_THROWS_AS(SetPartition::parse("1,2|2"), Error);
  CHECK_THROWS_AS(SetPartition::parse("1,3"), Error);
  CHECK_THROWS_AS(SetPartition::parse("1,x|2"), Error);
}

TEST_CASE("restricted-growth validation") {
  CHECK_THROWS_AS(SetPartition(std::vector<std::uint8_t>{1}), Error);
  CHECK_THROWS_AS(SetPartition(std::vector<std::uint8_t>{0, 2}), Error);
  CHECK_THROWS_AS(SetPartition(std::vector<std::uint8_t>{}), Error);
  CHECK(SetPartition(std::vector<std::uint8_t>{0, 1, 0, 2}).block_count() == 3);
}
