#pragma once

// FeatureRecord: one row of registry-aligned values, plus JSONL and CSV
// writers/readers.
//
// JSONL: one object per line, keys in registry order, absent values as null,
// lists as arrays. CSV: header row of column ids; absent values are empty
// fields, booleans are true/false, lists are '|'-joined. Reals use the
// shortest round-trip decimal form, so output is byte-stable.
//
// Both formats start with one metadata line that readers skip:
//   JSONL  {"__meta__":{"config_digest":"<hex>","columns":<n>}}
//   CSV    # config_digest=<hex> columns=<n>

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/registry.hpp"
#include "abcde/text.hpp"
#include "json.hpp"

namespace abcde {

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string, std::vector<std::string>>;

struct FeatureRecord {
  std::vector<Value> values;  // aligned with FeatureRegistry::columns()

  friend bool operator==(const FeatureRecord&, const FeatureRecord&) = default;
};

enum class OutputFormat { jsonl, csv };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "jsonl") return OutputFormat::jsonl;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

namespace detail {

inline void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

inline void append_csv_field(std::string& out, std::string_view s) {
  const bool quote = s.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!quote) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace detail

inline std::string to_jsonl(const FeatureRegistry& columns, const FeatureRecord& rec) {
  std::string out = "{";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back(',');
    detail::append_json_string(out, columns[i].id);
    out.push_back(':');
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            out += "null";
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            out += std::to_string(v);
          } else if constexpr (std::is_same_v<T, double>) {
            out += text::format_double(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            detail::append_json_string(out, v);
          } else {
            out.push_back('[');
            for (std::size_t k = 0; k < v.size(); ++k) {
              if (k) out.push_back(',');
              detail::append_json_string(out, v[k]);
            }
            out.push_back(']');
          }
        },
        rec.values[i]);
  }
  out.push_back('}');
  return out;
}

inline std::string csv_header(const FeatureRegistry& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back(',');
    detail::append_csv_field(out, columns[i].id);
  }
  return out;
}

inline std::string to_csv(const FeatureRegistry& columns, const FeatureRecord& rec) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back(',');
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            out += std::to_string(v);
          } else if constexpr (std::is_same_v<T, double>) {
            out += text::format_double(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            detail::append_csv_field(out, v);
          } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            std::string joined;
            for (std::size_t k = 0; k < v.size(); ++k) {
              if (k) joined.push_back('|');
              joined += v[k];
            }
            detail::append_csv_field(out, joined);
          }
        },
        rec.values[i]);
  }
  return out;
}

inline std::string meta_line(OutputFormat format, const std::string& digest, std::size_t columns) {
  if (format == OutputFormat::csv) return "# config_digest=" + digest + " columns=" + std::to_string(columns);
  return R"({"__meta__":{"config_digest":")" + digest + R"(","columns":)" + std::to_string(columns) + "}}";
}

// ---------------------------------------------------------------------------
// Reading records back (for reports). Values are typed by the column naming
// convention: *_flag boolean, *_count / word_count / year / timestamp / demo_age
// integer, *_avg real, bpm_<pronoun> list, anything else string.

inline ColumnKind kind_from_name(std::string_view id) {
  const auto ends = [&](std::string_view suffix) {
    return id.size() >= suffix.size() && id.substr(id.size() - suffix.size()) == suffix;
  };
  if (ends("_flag")) return ColumnKind::boolean;
  if (ends("_avg")) return ColumnKind::real;
  if (ends("_count") || id == "year" || id == "timestamp" || id == "demo_age") return ColumnKind::integer;
  for (auto p : kPossessives) {
    if (id == "bpm_" + std::string(p)) return ColumnKind::list;
  }
  return ColumnKind::string;
}

// Splits one CSV line (RFC 4180 quoting; no embedded newlines).
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back().push_back(c);
    }
  }
  return out;
}

inline Value value_from_csv(ColumnKind kind, const std::string& field) {
  if (field.empty()) return kind == ColumnKind::list ? Value(std::vector<std::string>{}) : Value{};
  switch (kind) {
    case ColumnKind::boolean:
      if (field == "true") return true;
      if (field == "false") return false;
      throw ParseError("'" + field + "' is not a boolean");
    case ColumnKind::integer:
      if (auto v = text::parse_number<std::int64_t>(field)) return *v;
      throw ParseError("'" + field + "' is not an integer");
    case ColumnKind::real:
      if (auto v = text::parse_number<double>(field)) return *v;
      throw ParseError("'" + field + "' is not a number");
    case ColumnKind::list: {
      std::vector<std::string> items;
      for (auto s : text::split(field, '|')) items.emplace_back(s);
      return items;
    }
    case ColumnKind::string:
      return field;
  }
  return field;
}

inline Value value_from_json(const nlohmann::json& v) {
  if (v.is_null()) return {};
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::vector<std::string> items;
    for (const auto& e : v) items.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    return items;
  }
  return v.dump();
}

// Streaming reader over a JSONL or CSV record file (format sniffed from the
// first non-meta line).
class RecordReader {
 public:
  explicit RecordReader(std::istream& in) : in_(in) {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#' || line.rfind("{\"__meta__\"", 0) == 0) continue;
      if (line.front() == '{') {
        json_ = true;
        pending_ = line;
        const auto obj = nlohmann::ordered_json::parse(line);
        for (const auto& item : obj.items()) columns_.push_back(item.key());
      } else {
        for (auto& c : split_csv(line)) columns_.push_back(std::move(c));
      }
      break;
    }
    for (const auto& c : columns_) kinds_.push_back(kind_from_name(c));
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }

  bool next(std::vector<Value>& row) {
    std::string line;
    if (pending_) {
      line = std::move(*pending_);
      pending_.reset();
    } else {
      do {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
      } while (line.empty());
    }
    ++line_no_;
    row.assign(columns_.size(), Value{});
    if (json_) {
      const auto obj = nlohmann::json::parse(line);
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        const auto it = obj.find(columns_[i]);
        if (it != obj.end()) row[i] = value_from_json(*it);
      }
    } else {
      const auto fields = split_csv(line);
      if (fields.size() != columns_.size()) {
        throw ParseError("record has " + std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(columns_.size()),
                         line_no_ + 1);
      }
      for (std::size_t i = 0; i < fields.size(); ++i) row[i] = value_from_csv(kinds_[i], fields[i]);
    }
    return true;
  }

 private:
  std::istream& in_;
  bool json_ = false;
  std::optional<std::string> pending_;
  std::vector<std::string> columns_;
  std::vector<ColumnKind> kinds_;
  std::size_t line_no_ = 0;
};

}  // namespace abcde
