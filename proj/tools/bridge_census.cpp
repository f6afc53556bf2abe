// bridge_census: enumerate 2-bridge knots by even continued fraction and
// tabulate braid-index statistics at fixed crossing number.
//
// Exit codes: 0 success, 1 verification or conjecture failure, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bridge_census/bridge_census.hpp"

namespace bc = bridge_census;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitUsage;
}

int cmd_invariants(const std::string& text, bc::OutputFormat format) {
  const bc::EvenCF cf = bc::parse_cf(text);
  const auto inv = bc::invariants(cf);
  const auto orb = bc::orbit(cf);
  const auto frac = bc::cf_to_fraction(cf);
  const bc::BigCount abs_p = abs(frac.p);

  if (format == bc::OutputFormat::json) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : orb.members) members.push_back(bc::render(m));
    nlohmann::json doc = {{"entries", bc::render(cf)},
                          {"sign_changes", inv.sign_changes},
                          {"half_sum", inv.half_sum},
                          {"crossing_number", inv.crossing_number},
                          {"braid_index", inv.braid_index},
                          {"symmetry", std::string(bc::to_string(orb.symmetry_kind))},
                          {"orbit", members},
                          {"canonical", bc::render(orb.canonical)},
                          {"fraction", bc::to_string(frac.value())},
                          {"abs_p", abs_p.get_str()}};
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  const char* sep = format == bc::OutputFormat::csv ? "," : ": ";
  std::cout << "entries" << sep << bc::render(cf) << '\n'
            << "sign_changes" << sep << inv.sign_changes << '\n'
            << "half_sum" << sep << inv.half_sum << '\n'
            << "crossing_number" << sep << inv.crossing_number << '\n'
            << "braid_index" << sep << inv.braid_index << '\n'
            << "symmetry" << sep << bc::to_string(orb.symmetry_kind) << '\n'
            << "orbit_size" << sep << orb.members.size() << '\n';
  for (const auto& m : orb.members) std::cout << "orbit_member" << sep << "(" << bc::render(m) << ")\n";
  std::cout << "canonical" << sep << "(" << bc::render(orb.canonical) << ")\n"
            << "fraction" << sep << bc::to_string(frac.value()) << '\n'
            << "abs_p" << sep << abs_p << '\n';
  return 0;
}

int cmd_enumerate(std::int64_t c, std::optional<std::int64_t> b, bool palindromic, bool dedupe,
                  std::optional<std::uint64_t> cap) {
  const std::int64_t crossing_cap = bc::enum_crossing_cap();
  if (c > crossing_cap)
    return usage_error("c=" + std::to_string(c) + " exceeds the enumeration cap " + std::to_string(crossing_cap) +
                       " (set BRIDGE_CENSUS_ENUM_CAP to raise it)");
  bc::EnumFilter f;
  f.crossing = c;
  f.braid = b;
  f.palindromic_only = palindromic;
  f.dedupe = dedupe;
  f.max_tuples = cap;
  std::string out;
  for (const auto& cf : bc::enumerate_tuples(f)) {
    out += bc::render(cf);
    out += '\n';
    if (out.size() > (1u << 16)) {
      std::cout << out;
      out.clear();
    }
  }
  std::cout << out;
  return 0;
}

int cmd_verify(std::int64_t enum_max, std::int64_t theorem_max, bc::OutputFormat format) {
  if (theorem_max < 8) return usage_error("--theorem-max must be >= 8");
  if (enum_max < 3 || enum_max > bc::enum_crossing_cap())
    return usage_error("--enum-max must be in 3.." + std::to_string(bc::enum_crossing_cap()));
  const auto oracle = bc::run_oracle_suite(enum_max);
  const auto theorems = bc::run_theorem_suite(theorem_max);
  if (format == bc::OutputFormat::json) {
    std::cout << nlohmann::json::array({bc::to_json(oracle), bc::to_json(theorems)}).dump(2) << '\n';
  } else {
    std::cout << bc::to_text(oracle) << bc::to_text(theorems);
  }
  return oracle.passed() && theorems.passed() ? 0 : kExitFailure;
}

int cmd_conjecture(std::int64_t max_c, bc::OutputFormat format) {
  const auto result = bc::scan_median_conjecture(
      max_c, [](std::int64_t c) { std::cerr << "checked through c=" << c << '\n'; });
  if (format == bc::OutputFormat::json)
    std::cout << bc::to_json(result).dump(2) << '\n';
  else
    std::cout << bc::to_text(result);
  return result.held() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-bridge knot census: crossing number, braid index and their distribution"};
  app.require_subcommand(1);

  std::string format_text = "table";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  };

  std::string tuple_text;
  auto* invariants = app.add_subcommand("invariants", "Invariants, orbit and fraction of one tuple");
  invariants->add_option("tuple", tuple_text, "Comma-separated even entries, e.g. 2,-4,2,2")->required();
  add_format(invariants);

  std::string quantity = "k";
  std::int64_t c_min = 3, c_max = 20;
  auto* table = app.add_subcommand("table", "Counts by crossing number and braid index");
  table->add_option("--quantity", quantity, "k, e or ep")->check(CLI::IsMember({"k", "e", "ep"}));
  table->add_option("--min", c_min, "Smallest crossing number");
  table->add_option("--max", c_max, "Largest crossing number");
  add_format(table);

  auto* stats = app.add_subcommand("stats", "Mean, variance, mode and median of the braid index");
  stats->add_option("--min", c_min, "Smallest crossing number");
  stats->add_option("--max", c_max, "Largest crossing number");
  add_format(stats);

  std::int64_t enum_c = 3;
  std::optional<std::int64_t> enum_b;
  std::optional<std::uint64_t> enum_cap;
  bool palindromic = false, dedupe = false;
  auto* enumerate = app.add_subcommand("enumerate", "List even continued fractions, one per line");
  enumerate->add_option("--c", enum_c, "Crossing number")->required();
  enumerate->add_option("--b", enum_b, "Braid index");
  enumerate->add_flag("--palindromic", palindromic, "Palindromes and anti-palindromes only");
  enumerate->add_flag("--dedupe", dedupe, "One canonical tuple per knot");
  enumerate->add_option("--cap", enum_cap, "Fail if more than N tuples would be listed");

  auto* census = app.add_subcommand("census", "Exhaustive counts at one crossing number as JSON");
  census->add_option("--c", enum_c, "Crossing number")->required();

  std::int64_t enum_max = 18, theorem_max = 500;
  auto* verify = app.add_subcommand("verify", "Run the oracle and theorem suites");
  verify->add_option("--enum-max", enum_max, "Largest c checked by enumeration");
  verify->add_option("--theorem-max", theorem_max, "Largest c checked by the theorem suite (>= 8)");
  add_format(verify);

  std::int64_t conj_max = 1000;
  auto* conjecture = app.add_subcommand("conjecture", "Check median = ceil(c/3)+1 up to --max");
  conjecture->add_option("--max", conj_max, "Largest crossing number")->required();
  add_format(conjecture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const bc::OutputFormat format = bc::parse_format(format_text);
    if (*invariants) return cmd_invariants(tuple_text, format);
    if (*table) {
      if (c_min < 3 || c_max < c_min) return usage_error("range must satisfy 3 <= --min <= --max");
      std::cout << bc::render(bc::build_table(bc::parse_quantity(quantity), c_min, c_max), format);
      return 0;
    }
    if (*stats) {
      if (c_min < 3 || c_max < c_min) return usage_error("range must satisfy 3 <= --min <= --max");
      std::cout << bc::render_stats(bc::build_stats(c_min, c_max), format);
      return 0;
    }
    if (*enumerate) {
      if (enum_c < 3) return usage_error("--c must be >= 3");
      if (enum_b && *enum_b < 2) return usage_error("--b must be >= 2");
      return cmd_enumerate(enum_c, enum_b, palindromic, dedupe, enum_cap);
    }
    if (*census) {
      if (enum_c < 3) return usage_error("--c must be >= 3");
      if (enum_c > bc::enum_crossing_cap())
        return usage_error("c=" + std::to_string(enum_c) + " exceeds the enumeration cap " +
                           std::to_string(bc::enum_crossing_cap()));
      std::cout << bc::to_json(bc::census(enum_c)).dump(2) << '\n';
      return 0;
    }
    if (*verify) return cmd_verify(enum_max, theorem_max, format);
    if (*conjecture) {
      if (conj_max < 3) return usage_error("--max must be >= 3");
      return cmd_conjecture(conj_max, format);
    }
  } catch (const bc::ParseError& e) {
    return usage_error(e.what());
  } catch (const bc::ValidationError& e) {
    return usage_error(e.what());
  } catch (const bc::DomainError& e) {
    return usage_error(e.what());
  } catch (const bc::LimitExceeded& e) {
    return usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
