#include "partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace ncagm {

namespace {

void validate_rgs(const std::vector<std::uint8_t>& rgs) {
  if (rgs.empty()) throw_invalid("partition: empty ground set");
  if (rgs.size() > static_cast<std::size_t>(SetPartition::kMaxGroundSize))
    throw_invalid("partition: ground size " + std::to_string(rgs.size()) + " exceeds cap " +
                  std::to_string(SetPartition::kMaxGroundSize));
  if (rgs[0] != 0) throw_invalid("partition: rgs[0] must be 0");
  int maxseen = 0;
  for (std::size_t k = 1; k < rgs.size(); ++k) {
    if (rgs[k] > maxseen + 1)
      throw_invalid("partition: rgs not in restricted-growth form at position " + std::to_string(k));
    maxseen = std::max(maxseen, static_cast<int>(rgs[k]));
  }
}

}  // namespace

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
  validate_rgs(rgs_);
  num_blocks_ = 1 + *std::max_element(rgs_.begin(), rgs_.end());
}

SetPartition SetPartition::singletons(int d) {
  if (d < 1 || d > kMaxGroundSize) throw_invalid("partition: d out of range");
  std::vector<std::uint8_t> rgs(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) rgs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k);
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::one_block(int d) {
  if (d < 1 || d > kMaxGroundSize) throw_invalid("partition: d out of range");
  return SetPartition(std::vector<std::uint8_t>(static_cast<std::size_t>(d), 0));
}

SetPartition SetPartition::from_blocks(int d, const std::vector<std::vector<int>>& blocks) {
  if (d < 1 || d > kMaxGroundSize) throw_invalid("partition: d out of range");
  std::vector<int> label(static_cast<std::size_t>(d), -1);
  // Order blocks by their minimum element so labels come out in
  // restricted-growth form regardless of the caller's block order.
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw_invalid("partition: empty block");
    order.emplace_back(*std::min_element(blocks[b].begin(), blocks[b].end()), b);
  }
  std::sort(order.begin(), order.end());
  int next = 0;
  for (const auto& [mn, b] : order) {
    (void)mn;
    for (int e : blocks[b]) {
      if (e < 1 || e > d) throw_invalid("partition: element " + std::to_string(e) + " outside 1.." + std::to_string(d));
      if (label[static_cast<std::size_t>(e - 1)] != -1)
        throw_invalid("partition: element " + std::to_string(e) + " appears twice");
      label[static_cast<std::size_t>(e - 1)] = next;
    }
    ++next;
  }
  std::vector<std::uint8_t> rgs(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    if (label[static_cast<std::size_t>(k)] == -1)
      throw_invalid("partition: element " + std::to_string(k + 1) + " not covered");
    rgs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(label[static_cast<std::size_t>(k)]);
  }
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::parse(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string blk;
  int count = 0;
  while (std::getline(ss, blk, '|')) {
    std::vector<int> elems;
    std::stringstream bs(blk);
    std::string tok;
    while (std::getline(bs, tok, ',')) {
      const char* begin = tok.c_str();
      char* end = nullptr;
      long v = std::strtol(begin, &end, 10);
      while (end && *end == ' ') ++end;
      if (end == begin || (end && *end != '\0'))
        throw_parse("partition: bad element '" + tok + "' in '" + text + "'");
      elems.push_back(static_cast<int>(v));
      ++count;
    }
    if (elems.empty()) throw_parse("partition: empty block in '" + text + "'");
    blocks.push_back(std::move(elems));
  }
  if (count == 0) throw_parse("partition: empty text");
  try {
    return from_blocks(count, blocks);
  } catch (const Error& e) {
    throw_parse(std::string("partition: '") + text + "': " + e.what());
  }
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_blocks_));
  for (int k = 0; k < ground_size(); ++k) out[rgs_[static_cast<std::size_t>(k)]].push_back(k + 1);
  return out;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sz(static_cast<std::size_t>(num_blocks_), 0);
  for (std::uint8_t b : rgs_) ++sz[b];
  return sz;
}

std::vector<int> SetPartition::size_multiplicities() const {
  std::vector<int> r(static_cast<std::size_t>(ground_size()) + 1, 0);
  for (int s : block_sizes()) ++r[static_cast<std::size_t>(s)];
  return r;
}

int SetPartition::singleton_count() const {
  int c = 0;
  for (int s : block_sizes())
    if (s == 1) ++c;
  return c;
}

std::string SetPartition::to_text() const {
  std::string out;
  const auto bl = blocks();
  for (std::size_t b = 0; b < bl.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < bl[b].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(bl[b][i]);
    }
  }
  return out;
}

std::uint64_t SetPartition::key() const {
  std::uint64_t k = 0;
  for (std::uint8_t v : rgs_) k = (k << 4) | v;
  // Distinguish ground sizes that share the same packed labels.
  return (k << 4) | static_cast<std::uint64_t>(rgs_.size());
}

std::vector<SetPartition> enumerate_partitions(int d, int max_d) {
  if (max_d > SetPartition::kMaxGroundSize) max_d = SetPartition::kMaxGroundSize;
  if (d < 1 || d > max_d)
    throw_invalid("enumerate_partitions: d = " + std::to_string(d) + " outside 1.." + std::to_string(max_d));
  std::vector<SetPartition> out;
  std::vector<std::uint8_t> rgs(static_cast<std::size_t>(d), 0);
  // Depth-first over restricted-growth strings; labels tried in increasing
  // order, which yields lexicographic output.
  std::function<void(int, int)> rec = [&](int pos, int maxseen) {
    if (pos == d) {
      out.emplace_back(rgs);
      return;
    }
    for (int label = 0; label <= maxseen + 1; ++label) {
      rgs[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(label);
      rec(pos + 1, std::max(maxseen, label));
    }
  };
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

bool refines_leq(const SetPartition& sigma, const SetPartition& pi) {
  if (sigma.ground_size() != pi.ground_size())
    throw_invalid("refines_leq: ground sizes differ (" + std::to_string(sigma.ground_size()) + " vs " +
                  std::to_string(pi.ground_size()) + ")");
  // sigma <= pi iff the map (sigma block -> pi block) is well defined.
  std::vector<int> image(static_cast<std::size_t>(sigma.block_count()), -1);
  for (int k = 0; k < sigma.ground_size(); ++k) {
    int sb = sigma.block_of(k);
    int pb = pi.block_of(k);
    if (image[static_cast<std::size_t>(sb)] == -1) {
      image[static_cast<std::size_t>(sb)] = pb;
    } else if (image[static_cast<std::size_t>(sb)] != pb) {
      return false;
    }
  }
  return true;
}

std::vector<SetPartition> coarsenings_of(const SetPartition& pi) {
  const int b = pi.block_count();
  const int d = pi.ground_size();
  std::vector<SetPartition> out;
  for (const SetPartition& grouping : enumerate_partitions(b)) {
    std::vector<std::uint8_t> rgs(static_cast<std::size_t>(d));
    // Merge the blocks of pi according to `grouping`; pi's labels are ordered
    // by first appearance, so composing labels stays in restricted-growth form.
    for (int k = 0; k < d; ++k)
      rgs[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(grouping.block_of(pi.block_of(k)));
    out.emplace_back(std::move(rgs));
  }
  return out;
}

std::int64_t mobius_zero_to(const SetPartition& pi) {
  // factorial[i] = i!, enough for block sizes up to the d <= 12 cap.
  static constexpr std::int64_t factorial[13] = {1,      1,       2,        6,        24,       120,     720,
                                                 5040,   40320,   362880,   3628800,  39916800, 479001600};
  std::int64_t v = 1;
  for (int sz : pi.block_sizes()) {
    const std::int64_t f = factorial[sz - 1];
    v *= (sz % 2 == 0) ? -f : f;
  }
  return v;
}

MobiusCache::MobiusCache(int d) : d_(d) {
  if (d < 1 || d > SetPartition::kMaxGroundSize) throw_invalid("MobiusCache: d out of range");
}

std::int64_t MobiusCache::value(const SetPartition& pi, const SetPartition& sigma) {
  if (pi.ground_size() != d_ || sigma.ground_size() != d_)
    throw_invalid("MobiusCache: partition ground size does not match cache");
  if (!refines_leq(pi, sigma))
    throw_order("mobius: " + pi.to_text() + " does not refine " + sigma.to_text());
  std::lock_guard<std::mutex> lock(mu_);
  return value_locked(pi, sigma);
}

std::int64_t MobiusCache::value_locked(const SetPartition& pi, const SetPartition& sigma) {
  if (pi == sigma) return 1;
  auto& row = table_[pi.key()];
  if (auto it = row.find(sigma.key()); it != row.end()) return it->second;
  auto cit = coarsenings_.find(pi.key());
  if (cit == coarsenings_.end()) cit = coarsenings_.emplace(pi.key(), coarsenings_of(pi)).first;
  std::int64_t acc = 0;
  for (const SetPartition& tau : cit->second) {
    if (tau == sigma || !refines_leq(tau, sigma)) continue;
    acc += value_locked(pi, tau);
  }
  const std::int64_t v = -acc;
  table_[pi.key()].emplace(sigma.key(), v);
  return v;
}

std::int64_t mobius(const SetPartition& pi, const SetPartition& sigma, MobiusCache& cache) {
  return cache.value(pi, sigma);
}

bool mobius_inversion_roundtrip(int d,
                                const std::function<std::vector<double>(const SetPartition&)>& phi,
                                double tol) {
  const auto lattice = enumerate_partitions(d);
  const std::size_t count = lattice.size();
  MobiusCache cache(d);

  std::vector<std::vector<double>> phiv(count);
  for (std::size_t i = 0; i < count; ++i) phiv[i] = phi(lattice[i]);
  const std::size_t len = phiv.empty() ? 0 : phiv[0].size();
  for (const auto& v : phiv)
    if (v.size() != len) throw_invalid("mobius_inversion_roundtrip: phi values have mixed lengths");

  // leq[i][j] = (lattice[i] <= lattice[j])
  std::vector<std::vector<bool>> leq(count, std::vector<bool>(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) leq[i][j] = refines_leq(lattice[i], lattice[j]);

  auto close = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t t = 0; t < len; ++t) {
      if (tol <= 0) {
        if (a[t] != b[t]) return false;
      } else if (std::abs(a[t] - b[t]) > tol * std::max(1.0, std::abs(b[t]))) {
        return false;
      }
    }
    return true;
  };

  // Direction i: psi(s) = sum over finer, recover with mu(p, s).
  // Direction ii: psi(s) = sum over coarser, recover with mu(s, p).
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::vector<double>> psi(count, std::vector<double>(len, 0.0));
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t p = 0; p < count; ++p) {
        const bool in_sum = dir == 0 ? leq[p][s] : leq[s][p];
        if (!in_sum) continue;
        for (std::size_t t = 0; t < len; ++t) psi[s][t] += phiv[p][t];
      }
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<double> rec(len, 0.0);
      for (std::size_t p = 0; p < count; ++p) {
        const bool in_sum = dir == 0 ? leq[p][s] : leq[s][p];
        if (!in_sum) continue;
        const std::int64_t mu = dir == 0 ? cache.value(lattice[p], lattice[s]) : cache.value(lattice[s], lattice[p]);
        for (std::size_t t = 0; t < len; ++t) rec[t] += static_cast<double>(mu) * psi[p][t];
      }
      if (!close(rec, phiv[s])) return false;
    }
  }
  return true;
}

}  // namespace ncagm
