#pragma once

// Exact integer helpers shared by the counting formulas.  Nothing here
// touches floating point except to_decimal(), which is display-only.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace bridge_census {

using BigCount = mpz_class;
using ExactRatio = mpq_class;

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline bool is_even(std::int64_t x) { return (x & 1) == 0; }

// (-1)^x by parity.
inline int neg_one_pow(std::int64_t x) { return is_even(x) ? 1 : -1; }

inline BigCount pow2(std::int64_t e) {
  BigCount r = 1;
  if (e > 0) mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return e < 0 ? BigCount(0) : r;
}

// 2^e for any integer e, negative exponents included.
inline ExactRatio pow2_ratio(std::int64_t e) {
  if (e >= 0) return ExactRatio(pow2(e));
  ExactRatio r(BigCount(1), pow2(-e));
  r.canonicalize();
  return r;
}

// C(n, k), zero whenever k < 0, k > n or n < 0.
inline BigCount binomial(std::int64_t n, std::int64_t k) {
  BigCount r = 0;
  if (n < 0 || k < 0 || k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline ExactRatio make_ratio(const BigCount& num, const BigCount& den) {
  ExactRatio r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const ExactRatio& r) { return r.get_den() == 1; }

// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const ExactRatio& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const BigCount& v) { return v.get_str(); }

// Decimal rendering with `digits` significant digits.
inline std::string to_decimal(const ExactRatio& r, int digits = 12) {
  if (r == 0) return "0";
  mpf_class f(0, 512);
  f = r;
  char* raw = nullptr;
  gmp_asprintf(&raw, "%.*Fg", digits, f.get_mpf_t());
  std::string out(raw);
  void (*free_fn)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(raw, out.size() + 1);
  return out;
}

inline double to_double(const ExactRatio& r) { return r.get_d(); }

inline bool fits_u64(const BigCount& v) {
  return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigCount& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

}  // namespace bridge_census
