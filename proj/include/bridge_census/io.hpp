#pragma once

// Triangular count tables (rows c, columns b) and per-c statistics rows,
// rendered as CSV, JSON or aligned text.  CSV and JSON tables parse back
// into the same structure so that re-emitting them is byte-identical.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bridge_census/bignum.hpp"
#include "bridge_census/enumerate.hpp"
#include "bridge_census/formulas.hpp"

namespace bridge_census {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected table, csv or json)");
}

enum class Quantity { k, e, ep };

inline Quantity parse_quantity(std::string_view s) {
  if (s == "k") return Quantity::k;
  if (s == "e") return Quantity::e;
  if (s == "ep") return Quantity::ep;
  throw std::invalid_argument("unknown quantity '" + std::string(s) + "' (expected k, e or ep)");
}

inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::k: return "k";
    case Quantity::e: return "e";
    case Quantity::ep: return "ep";
  }
  return "?";
}

// Counts that fit in 64 bits become JSON numbers, larger ones strings.
inline nlohmann::json big_to_json(const BigCount& v) {
  if (fits_u64(v)) return to_u64(v);
  return v.get_str();
}

inline BigCount big_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigCount(j.get<std::string>());
  if (j.is_number_unsigned()) return BigCount(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return BigCount(std::to_string(j.get<std::int64_t>()));
  throw std::invalid_argument("expected an integer or integer string in JSON");
}

struct TableRow {
  std::int64_t c = 0;
  std::vector<BigCount> values;  // b = b_min .. b_max
  std::optional<BigCount> total;
  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct CountTable {
  std::string quantity;  // "k", "e", "ep"; empty when read back from CSV
  bool has_total = false;
  std::int64_t b_min = 2;
  std::int64_t b_max = 2;
  std::vector<TableRow> rows;
};

inline CountTable build_table(Quantity q, std::int64_t c_min, std::int64_t c_max) {
  if (c_min < 3 || c_max < c_min)
    throw DomainError("table range must satisfy 3 <= min <= max, got " + std::to_string(c_min) + ".." +
                      std::to_string(c_max));
  CountTable t;
  t.quantity = std::string(to_string(q));
  t.has_total = q != Quantity::k;
  t.b_max = max_braid(c_max);
  for (std::int64_t c = c_min; c <= c_max; ++c) {
    TableRow row;
    row.c = c;
    std::vector<BigCount> src = q == Quantity::k ? k_row(c) : q == Quantity::e ? e_row(c) : ep_row(c);
    src.resize(static_cast<std::size_t>(t.b_max - t.b_min + 1), BigCount(0));
    row.values = std::move(src);
    if (q == Quantity::e) row.total = e_total(c);
    if (q == Quantity::ep) row.total = ep_total(c);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string render_csv(const CountTable& t) {
  std::string out = "c";
  for (std::int64_t b = t.b_min; b <= t.b_max; ++b) out += "," + std::to_string(b);
  if (t.has_total) out += ",total";
  out += '\n';
  for (const auto& row : t.rows) {
    out += std::to_string(row.c);
    for (const auto& v : row.values) out += "," + v.get_str();
    if (t.has_total) out += "," + (row.total ? row.total->get_str() : std::string("0"));
    out += '\n';
  }
  return out;
}

inline std::string render_json(const CountTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : row.values) values.push_back(big_to_json(v));
    nlohmann::json r = {{"c", row.c}, {"values", values}};
    if (t.has_total) r["total"] = big_to_json(row.total.value_or(BigCount(0)));
    rows.push_back(std::move(r));
  }
  nlohmann::json doc = {{"quantity", t.quantity}, {"b_min", t.b_min}, {"b_max", t.b_max}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

// Right-aligned columns, zero entries left blank, trailing spaces trimmed.
inline std::string render_text(const CountTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"c\\b"};
  for (std::int64_t b = t.b_min; b <= t.b_max; ++b) header.push_back(std::to_string(b));
  if (t.has_total) header.push_back(t.quantity == "ep" ? "e_p(c)" : t.quantity + "(c)");
  cells.push_back(header);
  for (const auto& row : t.rows) {
    std::vector<std::string> line{std::to_string(row.c)};
    for (const auto& v : row.values) line.push_back(v == 0 ? "" : v.get_str());
    if (t.has_total) line.push_back(row.total ? row.total->get_str() : "");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string text;
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      if (i == 1 || (t.has_total && i + 1 == cells[r].size())) text += " |";
      text += ' ';
      text += std::string(width[i] - cells[r][i].size(), ' ') + cells[r][i];
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text.substr(1) + '\n';
    if (r == 0) out += std::string(text.size() - 1, '-') + '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

inline BigCount parse_big(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad count '" + s + "'");
  return BigCount(s);
}

}  // namespace detail

inline CountTable parse_csv_table(std::string_view text) {
  std::vector<std::string> lines;
  for (auto& l : detail::split(text, '\n'))
    if (!l.empty()) lines.push_back(l);
  if (lines.empty()) throw std::invalid_argument("empty CSV table");

  CountTable t;
  auto header = detail::split(lines[0], ',');
  if (header.size() < 2 || header[0] != "c") throw std::invalid_argument("CSV header must start with 'c'");
  if (header.back() == "total") {
    t.has_total = true;
    header.pop_back();
  }
  t.b_min = detail::parse_int(header[1]);
  t.b_max = detail::parse_int(header.back());
  const std::size_t width = static_cast<std::size_t>(t.b_max - t.b_min + 1);
  if (header.size() - 1 != width) throw std::invalid_argument("CSV header columns are not consecutive");

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = detail::split(lines[i], ',');
    if (cells.size() != width + 1 + (t.has_total ? 1 : 0))
      throw std::invalid_argument("CSV row " + std::to_string(i) + " has " + std::to_string(cells.size()) + " cells");
    TableRow row;
    row.c = detail::parse_int(cells[0]);
    for (std::size_t j = 1; j <= width; ++j) row.values.push_back(detail::parse_big(cells[j]));
    if (t.has_total) row.total = detail::parse_big(cells.back());
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CountTable parse_json_table(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  CountTable t;
  t.quantity = doc.at("quantity").get<std::string>();
  t.b_min = doc.at("b_min").get<std::int64_t>();
  t.b_max = doc.at("b_max").get<std::int64_t>();
  for (const auto& r : doc.at("rows")) {
    TableRow row;
    row.c = r.at("c").get<std::int64_t>();
    for (const auto& v : r.at("values")) row.values.push_back(big_from_json(v));
    if (r.contains("total")) {
      t.has_total = true;
      row.total = big_from_json(r.at("total"));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string render(const CountTable& t, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return render_csv(t);
    case OutputFormat::json: return render_json(t);
    case OutputFormat::table: return render_text(t);
  }
  return {};
}

// ------------------------------------------------------------------ stats

inline std::vector<DistributionSummary> build_stats(std::int64_t c_min, std::int64_t c_max) {
  if (c_min < 3 || c_max < c_min)
    throw DomainError("stats range must satisfy 3 <= min <= max, got " + std::to_string(c_min) + ".." +
                      std::to_string(c_max));
  std::vector<DistributionSummary> out;
  for (std::int64_t c = c_min; c <= c_max; ++c) out.push_back(summary(c));
  return out;
}

inline std::string render_stats(const std::vector<DistributionSummary>& rows, OutputFormat f) {
  static const std::vector<std::string> columns{"c",        "knots",    "mean",   "mean_decimal", "variance",
                                                "variance_decimal", "mode", "median"};
  auto cells_of = [](const DistributionSummary& s) {
    return std::vector<std::string>{std::to_string(s.c),     s.total.get_str(),           to_string(s.mean),
                                    to_decimal(s.mean),      to_string(s.variance),       to_decimal(s.variance),
                                    std::to_string(s.mode),  to_string(s.median)};
  };

  if (f == OutputFormat::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : rows) {
      nlohmann::json counts = nlohmann::json::object();
      for (const auto& [b, k] : s.counts) counts[std::to_string(b)] = big_to_json(k);
      arr.push_back({{"c", s.c},
                     {"n", s.n},
                     {"knots", big_to_json(s.total)},
                     {"counts", counts},
                     {"mean", to_string(s.mean)},
                     {"mean_decimal", to_decimal(s.mean)},
                     {"variance", to_string(s.variance)},
                     {"variance_decimal", to_decimal(s.variance)},
                     {"mode", s.mode},
                     {"median", to_string(s.median)}});
    }
    return arr.dump(2) + "\n";
  }

  std::vector<std::vector<std::string>> cells{columns};
  for (const auto& s : rows) cells.push_back(cells_of(s));
  std::string out;
  if (f == OutputFormat::csv) {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) out += (i ? "," : "") + line[i];
      out += '\n';
    }
    return out;
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text += "  ";
      text += std::string(width[i] - line[i].size(), ' ') + line[i];
    }
    out += text + '\n';
  }
  return out;
}

// ----------------------------------------------------------------- census

inline nlohmann::json to_json(const CensusCounts& counts) {
  nlohmann::json per_braid = nlohmann::json::array();
  for (const auto& [b, v] : counts.per_braid)
    per_braid.push_back(
        {{"b", b}, {"e_cb", big_to_json(v.e_cb)}, {"ep_cb", big_to_json(v.ep_cb)}, {"k_cb", big_to_json(v.k_cb)}});
  return {{"c", counts.c},
          {"e", big_to_json(counts.e)},
          {"e_p", big_to_json(counts.e_p)},
          {"k_total", big_to_json(counts.k)},
          {"per_braid", per_braid}};
}

}  // namespace bridge_census
