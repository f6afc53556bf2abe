#pragma once

// Even continued fractions (2a_1, ..., 2a_{2m}) of 2-bridge knots: parsing,
// crossing number and braid index, the mirror/reversal orbit, and the
// Schubert fraction p/q.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bridge_census/bignum.hpp"
#include "bridge_census/errors.hpp"

namespace bridge_census {

// Entries are stored as the full even values 2a_i, exactly as written.
class EvenCF {
 public:
  using value_type = std::int64_t;

  explicit EvenCF(std::vector<value_type> entries) : entries_(std::move(entries)) { validate(entries_); }
  EvenCF(std::initializer_list<value_type> entries) : EvenCF(std::vector<value_type>(entries)) {}

  std::span<const value_type> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  value_type operator[](std::size_t i) const { return entries_[i]; }

  EvenCF reversed() const {
    std::vector<value_type> r(entries_.rbegin(), entries_.rend());
    return EvenCF(std::move(r), Unchecked{});
  }

  EvenCF negated() const {
    std::vector<value_type> r(entries_);
    for (auto& x : r) x = -x;
    return EvenCF(std::move(r), Unchecked{});
  }

  bool is_palindrome() const { return std::equal(entries_.begin(), entries_.end(), entries_.rbegin()); }

  bool is_anti_palindrome() const {
    const std::size_t n = entries_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (entries_[i] != -entries_[n - 1 - i]) return false;
    return true;
  }

  friend auto operator<=>(const EvenCF&, const EvenCF&) = default;
  friend bool operator==(const EvenCF&, const EvenCF&) = default;

  // Throws ValidationError unless `entries` is a nonempty even-length run of
  // nonzero even integers with |x| <= INT64_MAX.
  static void validate(std::span<const value_type> entries) {
    if (entries.empty()) throw ValidationError("tuple must not be empty");
    for (auto x : entries) {
      if (x == 0 || (x & 1) != 0) throw ValidationError("entry must be nonzero even, got " + std::to_string(x));
      if (x == std::numeric_limits<value_type>::min()) throw ValidationError("entry magnitude exceeds 64 bits");
    }
    if (entries.size() % 2 != 0) throw ValidationError("tuple length must be even, got " + std::to_string(entries.size()));
  }

 private:
  struct Unchecked {};
  EvenCF(std::vector<value_type> entries, Unchecked) : entries_(std::move(entries)) {}

  std::vector<value_type> entries_;
};

// Comma-separated, no brackets, no spaces: "2,-4,2,2".
inline std::string render(const EvenCF& cf) {
  std::string out;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cf[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const EvenCF& cf) { return os << '(' << render(cf) << ')'; }

// Accepts "2,-4,2,2", "[2, -4, 2, 2]", " 2 ,-2 ".
inline EvenCF parse_cf(std::string_view text) {
  auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
  auto trim = [&](std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  };

  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("unbalanced bracket in tuple '" + std::string(text) + "'");
    body = trim(body.substr(1, body.size() - 2));
  } else if (!body.empty() && body.back() == ']') {
    throw ParseError("unbalanced bracket in tuple '" + std::string(text) + "'");
  }
  if (body.empty()) throw ValidationError("tuple must not be empty");

  std::vector<EvenCF::value_type> entries;
  while (true) {
    const auto comma = body.find(',');
    std::string_view token = trim(body.substr(0, comma));
    if (token.empty()) throw ParseError("empty token in tuple '" + std::string(text) + "'");
    // from_chars rejects a leading '+', which we allow.
    std::string_view digits = token.front() == '+' ? token.substr(1) : token;
    EvenCF::value_type value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range) throw ParseError("entry '" + std::string(token) + "' exceeds 64 bits");
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw ParseError("malformed integer '" + std::string(token) + "'");
    entries.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return EvenCF(std::move(entries));
}

// Number of adjacent pairs with opposite signs.
inline std::int64_t sign_changes(const EvenCF& cf) {
  std::int64_t changes = 0;
  for (std::size_t i = 0; i + 1 < cf.size(); ++i)
    if ((cf[i] < 0) != (cf[i + 1] < 0)) ++changes;
  return changes;
}

struct KnotInvariants {
  std::int64_t sign_changes = 0;    // l
  std::int64_t half_sum = 0;        // S = sum |a_i|
  std::int64_t crossing_number = 0; // c = 2S - l
  std::int64_t braid_index = 0;     // b = S - l + 1

  friend bool operator==(const KnotInvariants&, const KnotInvariants&) = default;
};

inline KnotInvariants invariants(const EvenCF& cf) {
  KnotInvariants inv;
  inv.sign_changes = sign_changes(cf);
  std::int64_t s = 0;
  for (auto x : cf.entries()) {
    const std::int64_t half = (x < 0 ? -x : x) / 2;
    if (__builtin_add_overflow(s, half, &s)) throw std::overflow_error("half-sum overflows 64 bits");
  }
  inv.half_sum = s;
  std::int64_t twice = 0;
  if (__builtin_mul_overflow(s, std::int64_t{2}, &twice)) throw std::overflow_error("crossing number overflows 64 bits");
  inv.crossing_number = twice - inv.sign_changes;
  inv.braid_index = s - inv.sign_changes + 1;
  return inv;
}

enum class SymmetryKind { Palindrome, AntiPalindrome, Generic };

inline std::string_view to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Palindrome: return "Palindrome";
    case SymmetryKind::AntiPalindrome: return "AntiPalindrome";
    case SymmetryKind::Generic: return "Generic";
  }
  return "?";
}

// The representations of a knot and its mirror: {a, -rev(a), -a, rev(a)}.
struct OrbitClass {
  std::vector<EvenCF> members;  // sorted ascending, deduplicated
  EvenCF canonical;             // members.front()
  SymmetryKind symmetry_kind;
};

inline OrbitClass orbit(const EvenCF& cf) {
  const EvenCF rev = cf.reversed();
  std::vector<EvenCF> members{cf, rev.negated(), cf.negated(), rev};
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  SymmetryKind kind = SymmetryKind::Generic;
  if (cf.is_palindrome())
    kind = SymmetryKind::Palindrome;
  else if (cf.is_anti_palindrome())
    kind = SymmetryKind::AntiPalindrome;

  EvenCF canonical = members.front();
  return OrbitClass{std::move(members), std::move(canonical), kind};
}

inline EvenCF canonical_form(const EvenCF& cf) {
  const EvenCF rev = cf.reversed();
  return std::min({cf, rev.negated(), cf.negated(), rev});
}

// canonical_form(cf) == cf, without building the other orbit members.
inline bool is_canonical(const EvenCF& cf) {
  const std::size_t n = cf.size();
  auto not_above = [&](auto transform) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = transform(i);
      if (cf[i] != t) return cf[i] < t;
    }
    return true;
  };
  return not_above([&](std::size_t i) { return -cf[n - 1 - i]; }) && not_above([&](std::size_t i) { return -cf[i]; }) &&
         not_above([&](std::size_t i) { return cf[n - 1 - i]; });
}

// Reduced p/q with q > 0.
struct SchubertFraction {
  BigCount p;
  BigCount q;

  ExactRatio value() const { return make_ratio(p, q); }
  friend bool operator==(const SchubertFraction&, const SchubertFraction&) = default;
};

// Evaluates x_1 + 1/(x_2 + 1/(... + 1/x_n)) bottom-up.
inline SchubertFraction cf_to_fraction(const EvenCF& cf) {
  BigCount num = cf[cf.size() - 1];
  BigCount den = 1;
  for (std::size_t i = cf.size() - 1; i-- > 0;) {
    if (num == 0) throw DegenerateFraction("zero denominator while evaluating " + render(cf));
    BigCount next = BigCount(cf[i]) * num + den;
    den = num;
    num = std::move(next);
  }
  if (den == 0) throw DegenerateFraction("zero denominator while evaluating " + render(cf));
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigCount g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return SchubertFraction{std::move(num), std::move(den)};
}

}  // namespace bridge_census
