#pragma once

// Counting and moment formulas for 2-bridge knots by crossing number c and
// braid index b, each in closed form and (where one exists) as a memoized
// recursion seeded only from the small hand-listed sets at c <= 6.
//
//   e(c,b)   even continued fractions with crossing number c, braid index b
//   e_p(c,b) the palindromic / anti-palindromic ones among them
//   k(c,b)   knots up to mirror image, (e + e_p) / 4
//   tbi, tbi_p, tbi2, tbi_p2   sums of b and b^2 over E(c) and E_p(c)
//
// Everything is exact; no floating point is used to compute any value.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bridge_census/bignum.hpp"
#include "bridge_census/errors.hpp"
#include "bridge_census/memo.hpp"

namespace bridge_census {

namespace detail {

inline void require_crossing(std::int64_t c, const char* what) {
  if (c < 3) throw DomainError(std::string(what) + " needs c >= 3, got c=" + std::to_string(c));
}

// Exact division by a small constant; a remainder means a formula is wrong.
inline BigCount divide_exact(const BigCount& num, long den, const char* what) {
  BigCount q, r;
  mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(den));
  if (r != 0) throw InternalError(std::string(what) + ": numerator not divisible by " + std::to_string(den));
  return q;
}

inline BigCount big(std::int64_t v) { return BigCount(static_cast<long>(v)); }

}  // namespace detail

// n = ceil((c+1)/2), the largest braid index at crossing number c.
inline std::int64_t max_braid(std::int64_t c) { return ceil_div(c + 1, 2); }

// ceil(c/3) + 1
inline std::int64_t conjectured_mode(std::int64_t c) { return ceil_div(c, 3) + 1; }

// ---------------------------------------------------------------- e(c,b)

inline BigCount e_closed(std::int64_t c, std::int64_t b) {
  if (c >= 3 && !is_even(c) && b == 2) return 2;
  if (c >= 3 && b >= 3 && b <= max_braid(c)) return pow2(b - 2) * binomial(c - b, b - 2);
  return 0;
}

inline BigCount e_recursive(std::int64_t c, std::int64_t b) {
  // b = 1 is the unknot only; braid index never exceeds c.
  if (c < 3 || b <= 1 || b > c) return 0;
  if (c <= 5) {
    static const std::map<std::pair<std::int64_t, std::int64_t>, long> seed{
        {{3, 2}, 2}, {{4, 3}, 2}, {{5, 2}, 2}, {{5, 3}, 4}};
    auto it = seed.find({c, b});
    return it == seed.end() ? BigCount(0) : BigCount(it->second);
  }
  static MemoTable<std::pair<std::int64_t, std::int64_t>, BigCount> memo;
  return memo.get_or_compute({c, b}, [&]() -> BigCount {
    return e_recursive(c - 2, b) + 2 * e_recursive(c - 2, b - 1) + 2 * e_recursive(c - 3, b - 1);
  });
}

inline BigCount e_total(std::int64_t c) {
  detail::require_crossing(c, "e_total");
  return detail::divide_exact(2 * (pow2(c - 2) - neg_one_pow(c - 2)), 3, "e_total");
}

// --------------------------------------------------------------- e_p(c,b)

inline BigCount ep_closed(std::int64_t c, std::int64_t b) {
  if (b < 2 || b > max_braid(c) || c < 3) return 0;
  if (is_even(c) && !is_even(b)) return pow2((b - 1) / 2) * binomial((c - b - 1) / 2, (b - 3) / 2);
  if (!is_even(c) && is_even(b)) return pow2(b / 2) * binomial((c - b - 1) / 2, (b - 2) / 2);
  return 0;
}

inline BigCount ep_recursive(std::int64_t c, std::int64_t b) {
  if (c < 3 || b <= 1 || b > c) return 0;
  if (c <= 6) {
    static const std::map<std::pair<std::int64_t, std::int64_t>, long> seed{
        {{3, 2}, 2}, {{4, 3}, 2}, {{5, 2}, 2}, {{6, 3}, 2}};
    auto it = seed.find({c, b});
    return it == seed.end() ? BigCount(0) : BigCount(it->second);
  }
  static MemoTable<std::pair<std::int64_t, std::int64_t>, BigCount> memo;
  return memo.get_or_compute({c, b}, [&]() -> BigCount { return ep_recursive(c - 2, b) + 2 * ep_recursive(c - 4, b - 2); });
}

inline BigCount ep_total(std::int64_t c) {
  detail::require_crossing(c, "ep_total");
  const std::int64_t half = floor_div(c - 1, 2);
  return detail::divide_exact(2 * (pow2(half) - neg_one_pow(half)), 3, "ep_total");
}

// Row sums of the recursions, used to feed the moment recursions.
inline BigCount e_total_recursive(std::int64_t c) {
  BigCount s = 0;
  for (std::int64_t b = 2; b <= c; ++b) s += e_recursive(c, b);
  return s;
}

inline BigCount ep_total_recursive(std::int64_t c) {
  BigCount s = 0;
  for (std::int64_t b = 2; b <= c; ++b) s += ep_recursive(c, b);
  return s;
}

// ----------------------------------------------------------------- k(c,b)

// The four-case formula read top to bottom; the first matching guard wins.
inline BigCount k_closed(std::int64_t c, std::int64_t b) {
  ExactRatio k = 0;
  const bool in_range = c >= 3 && b >= 3 && b <= max_braid(c);
  if (c >= 3 && !is_even(c) && b == 2) {
    k = 1;
  } else if (in_range && is_even(c + b)) {
    k = pow2_ratio(b - 4) * ExactRatio(binomial(c - b, b - 2));
  } else if (in_range && is_even(c) && !is_even(b)) {
    k = pow2_ratio(b - 4) * ExactRatio(binomial(c - b, b - 2)) +
        pow2_ratio(floor_div(b - 5, 2)) * ExactRatio(binomial((c - b - 1) / 2, (b - 3) / 2));
  } else if (in_range && !is_even(c) && is_even(b)) {
    k = pow2_ratio(b - 4) * ExactRatio(binomial(c - b, b - 2)) +
        pow2_ratio((b - 4) / 2) * ExactRatio(binomial((c - b - 1) / 2, (b - 2) / 2));
  }
  const std::string where = "k(" + std::to_string(c) + "," + std::to_string(b) + ")";
  if (!is_integer(k)) throw InternalError(where + " is not an integer");
  const BigCount quarter_sum = e_closed(c, b) + ep_closed(c, b);
  if (4 * k.get_num() != quarter_sum) throw InternalError(where + " disagrees with (e + e_p)/4");
  return k.get_num();
}

// -------------------------------------------------------- rows in b

// e(c,b) for b = 2..max_braid(c), built with ratio steps instead of one
// binomial per entry.
inline std::vector<BigCount> e_row(std::int64_t c) {
  detail::require_crossing(c, "e_row");
  const std::int64_t n = max_braid(c);
  std::vector<BigCount> row(static_cast<std::size_t>(n - 1), BigCount(0));
  if (!is_even(c)) row[0] = 2;
  if (n < 3) return row;
  BigCount cur = detail::big(2 * (c - 3));
  row[1] = cur;
  for (std::int64_t b = 3; b < n; ++b) {
    // e(c,b+1)/e(c,b) = 2 (c-2b+2)(c-2b+1) / ((c-b)(b-1))
    cur *= detail::big(2 * (c - 2 * b + 2));
    cur *= detail::big(c - 2 * b + 1);
    const BigCount den = detail::big(c - b) * detail::big(b - 1);
    mpz_divexact(cur.get_mpz_t(), cur.get_mpz_t(), den.get_mpz_t());
    row[static_cast<std::size_t>(b - 1)] = cur;
  }
  return row;
}

inline std::vector<BigCount> ep_row(std::int64_t c) {
  detail::require_crossing(c, "ep_row");
  const std::int64_t n = max_braid(c);
  std::vector<BigCount> row(static_cast<std::size_t>(n - 1), BigCount(0));
  // Support is b odd for even c (from 3) and b even for odd c (from 2);
  // both start at 2 and step by 2 with the same ratio in (N, K).
  std::int64_t b = is_even(c) ? 3 : 2;
  if (b > n) return row;
  BigCount cur = 2;
  row[static_cast<std::size_t>(b - 2)] = cur;
  for (; b + 2 <= n; b += 2) {
    const std::int64_t big_n = (c - b - 1) / 2;
    const std::int64_t k = is_even(c) ? (b - 3) / 2 : (b - 2) / 2;
    cur *= detail::big(2 * (big_n - k));
    cur *= detail::big(big_n - k - 1);
    const BigCount den = detail::big(big_n) * detail::big(k + 1);
    mpz_divexact(cur.get_mpz_t(), cur.get_mpz_t(), den.get_mpz_t());
    row[static_cast<std::size_t>(b)] = cur;
  }
  return row;
}

// k(c,b) for b = 2..max_braid(c).
inline std::vector<BigCount> k_row(std::int64_t c) {
  std::vector<BigCount> row = e_row(c);
  const std::vector<BigCount> pal = ep_row(c);
  for (std::size_t i = 0; i < row.size(); ++i) {
    row[i] += pal[i];
    if (mpz_divisible_2exp_p(row[i].get_mpz_t(), 2) == 0)
      throw InternalError("e + e_p not divisible by 4 at c=" + std::to_string(c) + ", b=" + std::to_string(i + 2));
    mpz_fdiv_q_2exp(row[i].get_mpz_t(), row[i].get_mpz_t(), 2);
  }
  return row;
}

// ------------------------------------------------------ braid-index moments

inline BigCount tbi_closed(std::int64_t c) {
  detail::require_crossing(c, "tbi");
  const BigCount num = detail::big(6 * c + 22) * pow2(c - 2) + detail::big((6 * c - 46) * neg_one_pow(c));
  return detail::divide_exact(num, 27, "tbi");
}

inline BigCount tbi_p_closed(std::int64_t c) {
  detail::require_crossing(c, "tbi_p");
  BigCount num;
  if (is_even(c))
    num = detail::big(3 * c + 13) * pow2(c / 2) + detail::big((12 * c + 14) * neg_one_pow(c / 2));
  else
    num = detail::big(6 * c + 14) * pow2((c - 1) / 2) - detail::big((12 * c + 8) * neg_one_pow((c - 1) / 2));
  return detail::divide_exact(num, 27, "tbi_p");
}

inline BigCount tbi2_closed(std::int64_t c) {
  detail::require_crossing(c, "tbi2");
  const BigCount num = detail::big(3 * c * c + 24 * c + 37) * pow2(c - 1) +
                       detail::big((12 * c * c + 30 * c - 302) * neg_one_pow(c));
  return detail::divide_exact(num, 81, "tbi2");
}

inline BigCount tbi_p2_closed(std::int64_t c) {
  detail::require_crossing(c, "tbi_p2");
  BigCount num;
  if (!is_even(c))
    num = detail::big(6 * c * c + 36 * c + 14) * pow2((c - 1) / 2) -
          detail::big((24 * c * c + 24 * c + 8) * neg_one_pow((c - 1) / 2));
  else
    num = detail::big(3 * c * c + 30 * c + 43) * pow2(c / 2) +
          detail::big((24 * c * c + 48 * c + 38) * neg_one_pow(c / 2));
  return detail::divide_exact(num, 81, "tbi_p2");
}

inline BigCount tbi_recursive(std::int64_t c) {
  detail::require_crossing(c, "tbi");
  switch (c) {
    case 3: return 4;   // E(3,2): 2 tuples
    case 4: return 6;   // E(4,3): 2 tuples
    case 5: return 16;  // 2*2 + 3*4
    default: break;
  }
  static MemoTable<std::int64_t, BigCount> memo;
  return memo.get_or_compute(c, [&]() -> BigCount { return 3 * tbi_recursive(c - 2) + 2 * tbi_recursive(c - 3) + pow2(c - 3); });
}

inline BigCount tbi_p_recursive(std::int64_t c) {
  detail::require_crossing(c, "tbi_p");
  switch (c) {
    case 3: return 4;
    case 4: return 6;
    case 5: return 4;
    case 6: return 6;
    default: break;
  }
  static MemoTable<std::int64_t, BigCount> memo;
  return memo.get_or_compute(c, [&]() -> BigCount {
    return tbi_p_recursive(c - 2) + 2 * tbi_p_recursive(c - 4) + 4 * ep_total_recursive(c - 4);
  });
}

// The long form: 3 tbi2(c-2) + 2 tbi2(c-3) + 4 tbi(c-2) + 4 tbi(c-3) + 2 e(c-2) + 2 e(c-3).
inline BigCount tbi2_recursive(std::int64_t c) {
  detail::require_crossing(c, "tbi2");
  switch (c) {
    case 3: return 8;
    case 4: return 18;
    case 5: return 44;
    default: break;
  }
  static MemoTable<std::int64_t, BigCount> memo;
  return memo.get_or_compute(c, [&]() -> BigCount {
    return 3 * tbi2_recursive(c - 2) + 2 * tbi2_recursive(c - 3) + 4 * tbi_recursive(c - 2) +
           4 * tbi_recursive(c - 3) + 2 * e_total_recursive(c - 2) + 2 * e_total_recursive(c - 3);
  });
}

// The inhomogeneous term of the short form, ((6c+17) 2^{c-3} + 8(-1)^c) / 9.
inline BigCount tbi2_forcing_term(std::int64_t c) {
  const BigCount num = detail::big(6 * c + 17) * pow2(c - 3) + detail::big(8 * neg_one_pow(c));
  return detail::divide_exact(num, 9, "tbi2 forcing term");
}

inline BigCount tbi_p2_recursive(std::int64_t c) {
  detail::require_crossing(c, "tbi_p2");
  switch (c) {
    case 3: return 8;
    case 4: return 18;
    case 5: return 8;
    case 6: return 18;
    default: break;
  }
  static MemoTable<std::int64_t, BigCount> memo;
  return memo.get_or_compute(c, [&]() -> BigCount {
    return tbi_p2_recursive(c - 2) + 2 * tbi_p2_recursive(c - 4) + 8 * tbi_p_recursive(c - 4) +
           8 * ep_total_recursive(c - 4);
  });
}

// ------------------------------------------------------------- mean

// c/3 + 11/9 plus the four-case correction, as an exact rational.
inline ExactRatio mean_braid_closed_form(std::int64_t c) {
  detail::require_crossing(c, "mean_braid");
  using detail::big;
  BigCount num, den;
  switch (c % 4) {
    case 0:
      num = pow2(c / 2) + big(9 * c - 16);
      den = 9 * (pow2(c - 2) + pow2((c - 2) / 2));
      break;
    case 1:
      num = big(19 - 9 * c) - pow2((c + 3) / 2);
      den = 9 * (pow2(c - 2) + pow2((c - 1) / 2));
      break;
    case 2:
      num = pow2(c / 2) + big(3 * c - 8);
      den = 9 * (pow2(c - 2) + pow2((c - 2) / 2) - 2);
      break;
    default:
      num = big(5 - 3 * c) - pow2((c + 3) / 2);
      den = 9 * (pow2(c - 2) + pow2((c - 1) / 2) + 2);
      break;
  }
  return make_ratio(big(c), 3) + ExactRatio(11, 9) + make_ratio(num, den);
}

// (tbi + tbi_p) / (e + e_p), checked against the closed form.
inline ExactRatio mean_braid(std::int64_t c) {
  detail::require_crossing(c, "mean_braid");
  const ExactRatio moment = make_ratio(tbi_closed(c) + tbi_p_closed(c), e_total(c) + ep_total(c));
  if (moment != mean_braid_closed_form(c))
    throw InternalError("mean braid index at c=" + std::to_string(c) + ": moment quotient != closed form");
  return moment;
}

// ---------------------------------------------------------- variance

// The correction term of the variance beyond 2c/27 - 10/81.
inline ExactRatio variance_correction(std::int64_t c) {
  detail::require_crossing(c, "variance_correction");
  using detail::big;
  const BigCount cc = big(c);
  const BigCount c2 = cc * cc;
  BigCount num, den;
  switch (c % 4) {
    case 0:
      num = big(3 * c - 13) * pow2(3 * c / 2) + big(21 * c - 74) * pow2(c) - big(42 * c - 40) * pow2(c / 2) -
            (324 * c2 - 1152 * cc + 1024);
      den = pow2(2 * c - 2) + pow2(3 * c / 2) + pow2(c);
      break;
    case 1:
      num = big(3 * c - 1) * pow2((3 * c + 1) / 2) + big(15 * c - 13) * pow2(c) -
            big(69 * c - 175) * pow2((c + 3) / 2) - (324 * c2 - 1368 * cc + 1444);
      den = pow2(2 * c - 2) + pow2((3 * c + 1) / 2) + pow2(c + 1);
      break;
    case 2:
      num = big(3 * c - 13) * pow2(3 * c / 2) - (18 * c2 - 105 * cc + 142) * pow2(c) -
            (18 * c2 - 75 * cc + 28) * pow2((c + 2) / 2) + (108 * c2 - 600 * cc + 640);
      den = pow2(2 * c - 2) + pow2(3 * c / 2) - 3 * pow2(c) - pow2((c + 6) / 2) + 16;
      break;
    default:
      num = big(3 * c - 1) * pow2((3 * c + 1) / 2) + (18 * c2 - 105 * cc + 97) * pow2(c) +
            (18 * c2 - 129 * cc + 169) * pow2((c + 3) / 2) + (108 * c2 - 816 * cc + 964);
      den = pow2(2 * c - 2) + pow2((3 * c + 1) / 2) + 6 * pow2(c) + 4 * pow2((c + 3) / 2) + 16;
      break;
  }
  return make_ratio(num, 81 * den);
}

inline ExactRatio variance_braid_closed_form(std::int64_t c) {
  return make_ratio(detail::big(2 * c), 27) - ExactRatio(10, 81) + variance_correction(c);
}

// Second moment minus squared mean, checked against the closed form.
inline ExactRatio variance_braid(std::int64_t c) {
  detail::require_crossing(c, "variance_braid");
  const BigCount total = e_total(c) + ep_total(c);
  const ExactRatio second = make_ratio(tbi2_closed(c) + tbi_p2_closed(c), total);
  const ExactRatio mean = mean_braid(c);
  const ExactRatio var = second - mean * mean;
  if (var != variance_braid_closed_form(c))
    throw InternalError("braid index variance at c=" + std::to_string(c) + ": moments != closed form");
  return var;
}

// -------------------------------------------------------- mode, median

// Every b in 2..n where k(c,b) attains its maximum.
inline std::vector<std::int64_t> argmax_braid(std::int64_t c) {
  detail::require_crossing(c, "argmax_braid");
  std::vector<std::int64_t> best;
  BigCount top = -1;
  for (std::int64_t b = 2; b <= max_braid(c); ++b) {
    BigCount k = k_closed(c, b);
    if (k > top) {
      top = std::move(k);
      best.assign(1, b);
    } else if (k == top) {
      best.push_back(b);
    }
  }
  return best;
}

// The only crossing number whose k-row has two maximizers: k(5,2) = k(5,3) = 1.
inline constexpr std::int64_t kBimodalCrossing = 5;

// True when `best` (from argmax_braid) contains ceil(c/3) + 1 and, except at
// kBimodalCrossing, nothing else.
inline bool mode_holds(std::int64_t c, const std::vector<std::int64_t>& best) {
  const bool attained = std::find(best.begin(), best.end(), conjectured_mode(c)) != best.end();
  return attained && (best.size() == 1 || c == kBimodalCrossing);
}

// ceil(c/3) + 1.  With `verify`, also scans the k-row and throws
// InternalError unless that index is the maximum (unique except at c = 5).
inline std::int64_t mode_braid(std::int64_t c, bool verify = false) {
  detail::require_crossing(c, "mode_braid");
  const std::int64_t mode = conjectured_mode(c);
  if (verify) {
    const auto best = argmax_braid(c);
    if (!mode_holds(c, best)) {
      std::string found;
      for (auto b : best) found += (found.empty() ? "" : ",") + std::to_string(b);
      throw InternalError("mode at c=" + std::to_string(c) + ": expected " + std::to_string(mode) + ", argmax {" +
                          found + "}");
    }
  }
  return mode;
}

struct MedianResult {
  ExactRatio median;
  // Indices m with  sum_{i<=m} >= T/2  and  sum_{i>=m} >= T/2.
  std::vector<std::int64_t> qualifying;
};

// Median of a nonnegative sequence whose first element has index
// `first_index`.  An index m qualifies when both the prefix through m and the
// suffix from m hold at least half the total.  One qualifier is the median;
// when a prefix splits the total exactly, two adjacent indices qualify and
// the upper one is taken.  With no qualifier the median is m' + 1/2 where the
// prefix through m' is exactly half.
inline MedianResult median_of(std::span<const BigCount> seq, std::int64_t first_index) {
  MedianResult out;
  BigCount total = 0;
  for (const auto& v : seq) total += v;

  BigCount prefix = 0;
  std::int64_t half_split = -1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const BigCount before = prefix;
    prefix += seq[i];
    const BigCount suffix = total - before;
    if (2 * prefix >= total && 2 * suffix >= total) out.qualifying.push_back(first_index + static_cast<std::int64_t>(i));
    if (half_split < 0 && 2 * prefix == total) half_split = first_index + static_cast<std::int64_t>(i);
  }
  if (!out.qualifying.empty()) {
    out.median = ExactRatio(detail::big(out.qualifying.back()));
  } else if (half_split >= 0) {
    out.median = ExactRatio(detail::big(2 * half_split + 1), 2);
  } else {
    throw InternalError("median undefined for sequence");
  }
  return out;
}

inline MedianResult median_detail(std::int64_t c) {
  detail::require_crossing(c, "median_braid");
  const auto row = k_row(c);
  return median_of(row, 2);
}

inline ExactRatio median_braid(std::int64_t c) { return median_detail(c).median; }

// ------------------------------------------- differences around the mode

// e(c, ceil(c/3)+1) - e(c, ceil(c/3)) in closed form, c >= 8.
inline ExactRatio mode_rise_closed(std::int64_t c) {
  if (c < 8) throw DomainError("mode_rise_closed needs c >= 8");
  const std::int64_t r = c / 3;
  using detail::big;
  switch (c % 3) {
    case 0: return make_ratio(pow2(r - 1), big(r)) * ExactRatio(binomial(2 * r + 1, r - 1));
    case 1: return make_ratio(pow2(r - 1), big(r)) * ExactRatio(binomial(2 * r, r - 1));
    default:
      return make_ratio(pow2(r - 1) * big(5 * r + 4), big((r + 1) * (r + 2))) * ExactRatio(binomial(2 * r, r));
  }
}

// e(c, ceil(c/3)+1) - e(c, ceil(c/3)+2) in closed form, c >= 8.
inline ExactRatio mode_fall_closed(std::int64_t c) {
  if (c < 8) throw DomainError("mode_fall_closed needs c >= 8");
  const std::int64_t r = c / 3;
  using detail::big;
  switch (c % 3) {
    case 0: return make_ratio(pow2(r - 1), big(r)) * ExactRatio(binomial(2 * r - 2, r - 1));
    case 1:
      return make_ratio(pow2(r) * big(7 * r - 5), big(r * (r + 1))) * ExactRatio(binomial(2 * r - 2, r - 1));
    default: return make_ratio(pow2(r + 2), big(r + 1)) * ExactRatio(binomial(2 * r - 1, r - 1));
  }
}

// ------------------------------------------------------------ summary

struct DistributionSummary {
  std::int64_t c = 0;
  std::int64_t n = 0;
  std::map<std::int64_t, BigCount> counts;  // nonzero k(c,b) only
  BigCount total = 0;
  ExactRatio mean;
  ExactRatio variance;
  std::int64_t mode = 0;
  ExactRatio median;
};

inline DistributionSummary summary(std::int64_t c) {
  detail::require_crossing(c, "summary");
  DistributionSummary s;
  s.c = c;
  s.n = max_braid(c);
  const auto row = k_row(c);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0) s.counts.emplace(static_cast<std::int64_t>(i) + 2, row[i]);
    s.total += row[i];
  }
  s.mean = mean_braid(c);
  s.variance = variance_braid(c);
  s.mode = mode_braid(c);
  s.median = median_of(row, 2).median;
  return s;
}

}  // namespace bridge_census
