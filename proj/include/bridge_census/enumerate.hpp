#pragma once

// Brute-force generation of E(c), E(c,b), E_p(c), E_p(c,b) and of one
// representative per knot class.  This is the oracle the closed forms are
// checked against, so it only uses the defining predicate
// 2*sum|a_i| - l = c and never any counting formula.

#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bridge_census/bignum.hpp"
#include "bridge_census/cf.hpp"
#include "bridge_census/errors.hpp"

namespace bridge_census {

inline constexpr std::int64_t kDefaultEnumCap = 24;

// Largest crossing number census() accepts. BRIDGE_CENSUS_ENUM_CAP overrides.
inline std::int64_t enum_crossing_cap() {
  if (const char* env = std::getenv("BRIDGE_CENSUS_ENUM_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v >= 3) return v;
  }
  return kDefaultEnumCap;
}

struct EnumFilter {
  std::int64_t crossing = 3;
  std::optional<std::int64_t> braid;
  bool palindromic_only = false;
  bool dedupe = false;
  // Restrict to one tuple length; used to split a census into disjoint streams.
  std::optional<std::int64_t> length;
  // Tuple-count safety cap; LimitExceeded when more would be produced.
  std::optional<std::uint64_t> max_tuples;

  void validate() const {
    if (crossing < 3) throw DomainError("crossing number must be >= 3, got " + std::to_string(crossing));
    if (braid && *braid < 2) throw DomainError("braid index must be >= 2, got " + std::to_string(*braid));
    if (length && (*length < 2 || *length % 2 != 0)) throw DomainError("length must be even and >= 2");
  }
};

// Streams every tuple matching the filter, ordered by length and then
// lexicographically by entries.  Memory is O(tuple length).
class TupleStream {
 public:
  explicit TupleStream(EnumFilter filter) : filter_(std::move(filter)) {
    filter_.validate();
    length_ = filter_.length ? *filter_.length : 2;
    max_length_ = filter_.length ? *filter_.length : filter_.crossing - 1;
  }

  std::optional<EvenCF> next() {
    while (advance()) {
      if (!accept()) continue;
      if (filter_.max_tuples && produced_ >= *filter_.max_tuples)
        throw LimitExceeded("tuple cap of " + std::to_string(*filter_.max_tuples) + " reached");
      ++produced_;
      return EvenCF(cur_);
    }
    return std::nullopt;
  }

  std::uint64_t produced() const { return produced_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = EvenCF;
    using difference_type = std::ptrdiff_t;
    using pointer = const EvenCF*;
    using reference = const EvenCF&;

    iterator() = default;
    explicit iterator(TupleStream* s) : stream_(s), current_(s->next()) {}

    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = stream_->next();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return !it.current_; }

   private:
    TupleStream* stream_ = nullptr;
    std::optional<EvenCF> current_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  // Contribution of entry x at `level` to 2*sum|a_i| - l.
  std::int64_t contribution(std::size_t level, std::int64_t x) const {
    const std::int64_t mag = x < 0 ? -x : x;
    if (level == 0) return mag;
    return mag - (((x < 0) != (cur_[level - 1] < 0)) ? 1 : 0);
  }

  // Largest admissible |x| of the given sign at `level`, or 0 if none.
  // Every later position contributes at least 1, the last must land exactly.
  std::int64_t max_magnitude(std::size_t level, bool negative) const {
    const std::int64_t budget = budget_[level];
    const std::int64_t later = length_ - static_cast<std::int64_t>(level) - 1;
    const std::int64_t change = (level > 0 && (negative != (cur_[level - 1] < 0))) ? 1 : 0;
    std::int64_t mag = budget - later + change;
    if (later == 0) return (mag >= 2 && mag % 2 == 0) ? mag : 0;
    mag -= mag % 2;
    return mag >= 2 ? mag : 0;
  }

  std::int64_t min_magnitude(std::size_t level, bool negative) const {
    const std::int64_t later = length_ - static_cast<std::int64_t>(level) - 1;
    return later == 0 ? max_magnitude(level, negative) : 2;
  }

  // Smallest admissible entry at `level` strictly greater than `after`.
  std::optional<std::int64_t> next_candidate(std::size_t level, std::optional<std::int64_t> after) const {
    const std::int64_t neg_max = max_magnitude(level, true);
    if (neg_max > 0) {
      const std::int64_t lo = -neg_max;
      const std::int64_t hi = -min_magnitude(level, true);
      if (!after || *after < lo) return lo;
      if (*after + 2 <= hi) return *after + 2;
    }
    const std::int64_t pos_max = max_magnitude(level, false);
    if (pos_max > 0) {
      const std::int64_t lo = min_magnitude(level, false);
      if (!after || *after < lo) return lo;
      if (*after + 2 <= pos_max) return *after + 2;
    }
    return std::nullopt;
  }

  void push(std::int64_t x) {
    const std::size_t level = cur_.size();
    cur_.push_back(x);
    budget_[level + 1] = budget_[level] - contribution(level, x);
  }

  // Moves to the next complete tuple of the current (or a later) length.
  bool advance() {
    while (length_ <= max_length_) {
      bool found = false;
      if (!started_) {
        started_ = true;
        cur_.clear();
        budget_.assign(static_cast<std::size_t>(length_) + 1, 0);
        budget_[0] = filter_.crossing;
        found = fill() || backtrack();
      } else {
        found = backtrack();
      }
      if (found) return true;
      length_ += 2;
      started_ = false;
    }
    return false;
  }

  // Extends the prefix with smallest candidates; false on a dead end.
  bool fill() {
    while (cur_.size() < static_cast<std::size_t>(length_)) {
      auto cand = next_candidate(cur_.size(), std::nullopt);
      if (!cand) return false;
      push(*cand);
    }
    return true;
  }

  // Replaces the deepest entry that has a larger candidate.
  bool backtrack() {
    while (!cur_.empty()) {
      const std::size_t level = cur_.size() - 1;
      const std::int64_t last = cur_.back();
      cur_.pop_back();
      if (auto cand = next_candidate(level, last)) {
        push(*cand);
        if (fill()) return true;
      }
    }
    return false;
  }

  bool accept() const {
    if (filter_.braid || filter_.palindromic_only || filter_.dedupe) {
      const EvenCF cf(cur_);
      if (filter_.braid && invariants(cf).braid_index != *filter_.braid) return false;
      if (filter_.palindromic_only && !cf.is_palindrome() && !cf.is_anti_palindrome()) return false;
      if (filter_.dedupe && !is_canonical(cf)) return false;
    }
    return true;
  }

  EnumFilter filter_;
  std::int64_t length_ = 2;
  std::int64_t max_length_ = 2;
  bool started_ = false;
  std::vector<std::int64_t> cur_;
  std::vector<std::int64_t> budget_;
  std::uint64_t produced_ = 0;
};

inline TupleStream enumerate_tuples(EnumFilter filter) { return TupleStream(std::move(filter)); }

struct BraidCounts {
  BigCount e_cb = 0;
  BigCount ep_cb = 0;
  BigCount k_cb = 0;
  friend bool operator==(const BraidCounts&, const BraidCounts&) = default;
};

// Exhaustive counts at one crossing number.  Mergeable with +=.
struct CensusCounts {
  std::int64_t c = 0;
  BigCount e = 0;
  BigCount e_p = 0;
  BigCount k = 0;
  std::map<std::int64_t, BraidCounts> per_braid;
  // sum of b and b^2 over E(c) and E_p(c)
  BigCount tbi = 0;
  BigCount tbi_p = 0;
  BigCount tbi2 = 0;
  BigCount tbi_p2 = 0;

  CensusCounts& operator+=(const CensusCounts& o) {
    e += o.e;
    e_p += o.e_p;
    k += o.k;
    tbi += o.tbi;
    tbi_p += o.tbi_p;
    tbi2 += o.tbi2;
    tbi_p2 += o.tbi_p2;
    for (const auto& [b, v] : o.per_braid) {
      auto& mine = per_braid[b];
      mine.e_cb += v.e_cb;
      mine.ep_cb += v.ep_cb;
      mine.k_cb += v.k_cb;
    }
    return *this;
  }

  // 4 k_{c,b} = e(c,b) + e_p(c,b), and the totals are the row sums.
  bool consistent() const {
    BigCount se = 0, sp = 0, sk = 0;
    for (const auto& [b, v] : per_braid) {
      if (v.e_cb + v.ep_cb != 4 * v.k_cb) return false;
      se += v.e_cb;
      sp += v.ep_cb;
      sk += v.k_cb;
    }
    return se == e && sp == e_p && sk == k && e + e_p == 4 * k;
  }
};

namespace detail {

inline CensusCounts census_stream(EnumFilter filter) {
  struct Row {
    std::uint64_t e = 0, ep = 0, k = 0;
  };
  std::map<std::int64_t, Row> rows;
  for (const EvenCF& cf : enumerate_tuples(filter)) {
    const auto b = invariants(cf).braid_index;
    Row& row = rows[b];
    ++row.e;
    if (cf.is_palindrome() || cf.is_anti_palindrome()) ++row.ep;
    if (is_canonical(cf)) ++row.k;
  }
  CensusCounts out;
  out.c = filter.crossing;
  for (const auto& [b, row] : rows) {
    BraidCounts bc{BigCount(static_cast<unsigned long>(row.e)), BigCount(static_cast<unsigned long>(row.ep)),
                   BigCount(static_cast<unsigned long>(row.k))};
    const BigCount bb = BigCount(static_cast<long>(b));
    out.e += bc.e_cb;
    out.e_p += bc.ep_cb;
    out.k += bc.k_cb;
    out.tbi += bb * bc.e_cb;
    out.tbi_p += bb * bc.ep_cb;
    out.tbi2 += bb * bb * bc.e_cb;
    out.tbi_p2 += bb * bb * bc.ep_cb;
    out.per_braid.emplace(b, std::move(bc));
  }
  return out;
}

}  // namespace detail

// Counts E(c), E_p(c) and the knot classes per braid index by exhaustive
// enumeration.  Work is split by tuple length over `threads` workers.
inline CensusCounts census(std::int64_t c, unsigned threads = 1) {
  if (c < 3) throw DomainError("crossing number must be >= 3, got " + std::to_string(c));
  const std::int64_t cap = enum_crossing_cap();
  if (c > cap)
    throw LimitExceeded("census at c=" + std::to_string(c) + " exceeds the enumeration cap " + std::to_string(cap));

  std::vector<std::int64_t> lengths;
  for (std::int64_t len = 2; len <= c - 1; len += 2) lengths.push_back(len);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(lengths.size())));

  std::vector<CensusCounts> partial(threads);
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < lengths.size(); i += threads) {
      EnumFilter f;
      f.crossing = c;
      f.length = lengths[i];
      partial[worker] += detail::census_stream(f);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  CensusCounts total;
  total.c = c;
  for (const auto& p : partial) total += p;
  if (!total.consistent()) throw InternalError("census at c=" + std::to_string(c) + " violates 4k = e + e_p");
  return total;
}

}  // namespace bridge_census
