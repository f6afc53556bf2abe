#pragma once

// Verification suites.  The oracle suite compares brute-force enumeration
// with the closed forms; the theorem suite checks the structural claims
// (mode, log-concavity, differences around the mode, divisibility, row and
// moment sums, asymptotics) using closed forms only; the conjecture scanner
// compares the median of each k-row with ceil(c/3) + 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "bridge_census/bignum.hpp"
#include "bridge_census/enumerate.hpp"
#include "bridge_census/formulas.hpp"

namespace bridge_census {

struct Failure {
  std::string what;
  std::string expected;
  std::string actual;
  friend bool operator==(const Failure&, const Failure&) = default;
};

struct VerificationReport {
  std::string suite_name;
  std::int64_t checks_run = 0;
  std::vector<Failure> failures;
  std::int64_t elapsed_ms = 0;
  // Informational lines for the text summary (e.g. "22 tuples at c=7, ...").
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }

  template <typename A, typename B>
  void expect_eq(const std::string& what, const A& expected, const B& actual) {
    ++checks_run;
    if (!(expected == actual)) failures.push_back({what, show(expected), show(actual)});
  }

  void expect(const std::string& what, bool ok, const std::string& expected = "true",
              const std::string& actual = "false") {
    ++checks_run;
    if (!ok) failures.push_back({what, expected, actual});
  }

  // Folds another worker's results in.  Order of failures follows merge order.
  VerificationReport& operator+=(const VerificationReport& o) {
    checks_run += o.checks_run;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    return *this;
  }

 private:
  template <typename T>
  static std::string show(const T& v) {
    if constexpr (std::is_same_v<T, BigCount> || std::is_same_v<T, ExactRatio>) {
      return to_string(v);
    } else if constexpr (std::is_arithmetic_v<T>) {
      return std::to_string(v);
    } else {
      std::ostringstream os;
      os << v;
      return os.str();
    }
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"what", f.what}, {"expected", f.expected}, {"actual", f.actual}});
  return {{"suite", r.suite_name}, {"checks", r.checks_run}, {"failures", failures}, {"elapsed_ms", r.elapsed_ms}};
}

inline std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite_name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks_run << " checks, "
     << r.failures.size() << " failures, " << r.elapsed_ms << " ms)\n";
  for (const auto& n : r.notes) os << "  " << n << '\n';
  for (const auto& f : r.failures)
    os << "  FAILED " << f.what << ": expected " << f.expected << ", got " << f.actual << '\n';
  return os.str();
}

namespace detail {

// Runs work(c, report) for every c in [lo, hi] on `threads` workers, each
// owning a strided subset, and merges the reports in ascending c order.
inline VerificationReport run_partitioned(std::int64_t lo, std::int64_t hi, unsigned threads,
                                          const std::function<void(std::int64_t, VerificationReport&)>& work) {
  const std::size_t count = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
  std::vector<VerificationReport> per_c(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += threads) work(lo + static_cast<std::int64_t>(i), per_c[i]);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  VerificationReport merged;
  for (const auto& r : per_c) merged += r;
  return merged;
}

inline std::string at(const char* what, std::int64_t c) { return std::string(what) + " at c=" + std::to_string(c); }

inline std::string at(const char* what, std::int64_t c, std::int64_t b) {
  return std::string(what) + "(" + std::to_string(c) + "," + std::to_string(b) + ")";
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace detail

// Enumeration against the counting formulas for every 3 <= c <= max_enum_c.
inline VerificationReport run_oracle_suite(std::int64_t max_enum_c, unsigned threads = detail::default_threads()) {
  if (max_enum_c < 3 || max_enum_c > enum_crossing_cap())
    throw DomainError("oracle suite range must be 3.." + std::to_string(enum_crossing_cap()));
  const auto start = std::chrono::steady_clock::now();

  auto report = detail::run_partitioned(3, max_enum_c, threads, [](std::int64_t c, VerificationReport& r) {
    const CensusCounts counts = census(c);
    r.notes.push_back(counts.e.get_str() + " tuples at c=" + std::to_string(c) + ", " + counts.e_p.get_str() +
                      " palindromic, " + counts.k.get_str() + " knots");
    r.expect_eq(detail::at("e", c), e_total(c), counts.e);
    r.expect_eq(detail::at("e_p", c), ep_total(c), counts.e_p);
    r.expect_eq(detail::at("knot count", c), (e_total(c) + ep_total(c)) / 4, counts.k);
    r.expect_eq(detail::at("tbi", c), tbi_closed(c), counts.tbi);
    r.expect_eq(detail::at("tbi_p", c), tbi_p_closed(c), counts.tbi_p);
    r.expect_eq(detail::at("tbi2", c), tbi2_closed(c), counts.tbi2);
    r.expect_eq(detail::at("tbi_p2", c), tbi_p2_closed(c), counts.tbi_p2);
    for (std::int64_t b = 0; b <= c + 1; ++b) {
      const auto it = counts.per_braid.find(b);
      const BraidCounts seen = it == counts.per_braid.end() ? BraidCounts{} : it->second;
      r.expect_eq(detail::at("e", c, b), e_closed(c, b), seen.e_cb);
      r.expect_eq(detail::at("e_p", c, b), ep_closed(c, b), seen.ep_cb);
      r.expect_eq(detail::at("k", c, b), k_closed(c, b), seen.k_cb);
    }
  });
  report.suite_name = "oracle";
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Structural checks over 3 <= c <= max_c using closed forms.
inline VerificationReport run_theorem_suite(std::int64_t max_c, unsigned threads = detail::default_threads()) {
  if (max_c < 8) throw DomainError("theorem suite needs max_c >= 8, got " + std::to_string(max_c));
  const auto start = std::chrono::steady_clock::now();

  auto report = detail::run_partitioned(3, max_c, threads, [max_c](std::int64_t c, VerificationReport& r) {
    const std::int64_t n = max_braid(c);
    std::vector<BigCount> e(static_cast<std::size_t>(n + 2), BigCount(0));
    BigCount row_e = 0, row_ep = 0, moment1 = 0, moment2 = 0;
    for (std::int64_t b = 2; b <= n; ++b) {
      e[static_cast<std::size_t>(b)] = e_closed(c, b);
      const BigCount ep = ep_closed(c, b);
      const BigCount both = e[static_cast<std::size_t>(b)] + ep;
      r.expect(detail::at("4 | e+e_p", c, b), mpz_divisible_ui_p(both.get_mpz_t(), 4) != 0, "0 mod 4",
               BigCount(both % 4).get_str() + " mod 4");
      row_e += e[static_cast<std::size_t>(b)];
      row_ep += ep;
      moment1 += detail::big(b) * both;
      moment2 += detail::big(b * b) * both;
    }
    r.expect_eq(detail::at("row sum e", c), e_total(c), row_e);
    r.expect_eq(detail::at("row sum e_p", c), ep_total(c), row_ep);
    r.expect_eq(detail::at("first moment", c), tbi_closed(c) + tbi_p_closed(c), moment1);
    r.expect_eq(detail::at("second moment", c), tbi2_closed(c) + tbi_p2_closed(c), moment2);

    const auto best = argmax_braid(c);
    r.expect(detail::at("mode", c), mode_holds(c, best), "argmax {" + std::to_string(conjectured_mode(c)) + "}",
             std::to_string(best.size()) + " maximizers from " + std::to_string(best.front()));

    if (c >= 7) {
      for (std::int64_t b = 3; b < n; ++b) {
        const auto& mid = e[static_cast<std::size_t>(b)];
        const BigCount lhs = mid * mid;
        const BigCount rhs = e[static_cast<std::size_t>(b - 1)] * e[static_cast<std::size_t>(b + 1)];
        r.expect(detail::at("log-concavity", c, b), lhs >= rhs, ">= " + rhs.get_str(), lhs.get_str());
      }
    }
    if (c >= 8) {
      const std::int64_t q = ceil_div(c, 3);
      r.expect_eq(detail::at("rise at mode", c), mode_rise_closed(c), ExactRatio(e_closed(c, q + 1) - e_closed(c, q)));
      r.expect_eq(detail::at("fall after mode", c), mode_fall_closed(c),
                  ExactRatio(e_closed(c, q + 1) - e_closed(c, q + 2)));
    }

    r.expect_eq(detail::at("mean closed form", c), mean_braid_closed_form(c),
                make_ratio(tbi_closed(c) + tbi_p_closed(c), e_total(c) + ep_total(c)));
    const ExactRatio mean = mean_braid_closed_form(c);
    const ExactRatio second = make_ratio(tbi2_closed(c) + tbi_p2_closed(c), e_total(c) + ep_total(c));
    r.expect_eq(detail::at("variance closed form", c), variance_braid_closed_form(c), second - mean * mean);

    // The mean gap shrinks along each parity class.
    if (c >= 32 && c + 2 <= max_c) {
      const ExactRatio line = make_ratio(detail::big(c), 3) + ExactRatio(11, 9);
      const ExactRatio line2 = make_ratio(detail::big(c + 2), 3) + ExactRatio(11, 9);
      const ExactRatio gap = abs(mean_braid_closed_form(c) - line);
      const ExactRatio gap2 = abs(mean_braid_closed_form(c + 2) - line2);
      r.expect(detail::at("mean gap shrinking", c), gap2 < gap, "< " + to_decimal(gap), to_decimal(gap2));
    }
    if (c == 200) {
      const double mean_gap =
          std::abs(to_double(mean_braid_closed_form(c) - make_ratio(detail::big(c), 3) - ExactRatio(11, 9)));
      const double var_gap =
          std::abs(to_double(variance_braid_closed_form(c) - make_ratio(detail::big(2 * c), 27) + ExactRatio(10, 81)));
      r.expect("mean gap at c=200", mean_gap < 1e-6, "< 1e-6", std::to_string(mean_gap));
      r.expect("variance gap at c=200", var_gap < 1e-4, "< 1e-4", std::to_string(var_gap));
    }
  });
  report.suite_name = "theorems";
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct ConjectureViolation {
  std::int64_t c = 0;
  ExactRatio computed_median;
  std::int64_t conjectured_median = 0;
};

struct ConjectureScanResult {
  std::int64_t max_c_checked = 0;
  std::vector<ConjectureViolation> violations;
  // Crossing numbers where more than one index meets the median condition.
  std::vector<std::int64_t> ties;
  std::int64_t elapsed_ms = 0;

  bool held() const { return violations.empty(); }
};

inline nlohmann::json to_json(const ConjectureScanResult& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"c", v.c}, {"median", to_string(v.computed_median)}, {"conjectured", v.conjectured_median}});
  return {{"max_c", r.max_c_checked},
          {"violations", violations},
          {"ties", r.ties},
          {"held", r.held()},
          {"elapsed_ms", r.elapsed_ms}};
}

inline std::string to_text(const ConjectureScanResult& r) {
  std::ostringstream os;
  os << "median conjecture for 3 <= c <= " << r.max_c_checked << ": " << (r.held() ? "held" : "VIOLATED") << " ("
     << r.violations.size() << " violations, " << r.elapsed_ms << " ms)\n";
  if (!r.ties.empty()) {
    os << "  two qualifying indices at c =";
    for (auto c : r.ties) os << ' ' << c;
    os << '\n';
  }
  for (const auto& v : r.violations)
    os << "  c=" << v.c << ": median " << to_string(v.computed_median) << ", conjectured " << v.conjectured_median
       << '\n';
  return os.str();
}

// Scans 3 <= c <= max_c.  `progress(c)` is called after every 100th c
// (from the worker that computed it) and at the end.
inline ConjectureScanResult scan_median_conjecture(std::int64_t max_c,
                                                   const std::function<void(std::int64_t)>& progress = {},
                                                   unsigned threads = detail::default_threads()) {
  if (max_c < 3) throw DomainError("conjecture scan needs max_c >= 3");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t count = static_cast<std::size_t>(max_c - 2);
  std::vector<MedianResult> results(count);
  std::mutex progress_mutex;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));

  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += threads) {
      const std::int64_t c = 3 + static_cast<std::int64_t>(i);
      results[i] = median_detail(c);
      if (progress && c % 100 == 0) {
        std::lock_guard lock(progress_mutex);
        progress(c);
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  ConjectureScanResult out;
  out.max_c_checked = max_c;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t c = 3 + static_cast<std::int64_t>(i);
    const std::int64_t expected = conjectured_mode(c);
    if (results[i].qualifying.size() > 1) out.ties.push_back(c);
    if (results[i].median != ExactRatio(detail::big(expected))) out.violations.push_back({c, results[i].median, expected});
  }
  out.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (progress && max_c % 100 != 0) progress(max_c);
  return out;
}

}  // namespace bridge_census
