#pragma once

// Grouped summary statistics over feature records, emitted as tidy CSV
// (group_by, group, feature, statistic, value).
//
// Statistics by column type:
//   *_flag      n, percent_flag
//   *_count     n, mean_count, mean_density   (density = count / word_count)
//   *_avg       n, mean_avg, n_present, n_absent, bin_0.00 ... bin_0.95
//   lists and   n, percent_nonempty, item:<value> (instances containing it)
//   strings
//
// Histogram bins are [k/20, (k+1)/20), the last one closed at 1. Bin counts
// are instance counts even in weighted mode; every other statistic uses the
// weight (match_count, default 1) when weighting is on. All tallies are
// integers or plain sums, so merging partial aggregators is exact for counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/record.hpp"
#include "abcde/text.hpp"

namespace abcde {

inline constexpr std::size_t kHistogramBins = 20;

inline std::size_t histogram_bin(double avg) {
  const auto b = static_cast<long long>(std::floor(avg * kHistogramBins + 1e-9));
  return static_cast<std::size_t>(std::clamp<long long>(b, 0, kHistogramBins - 1));
}

inline std::string bin_label(std::size_t b) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "bin_%.2f", static_cast<double>(b) / kHistogramBins);
  return buf;
}

struct GroupBy {
  enum Kind { source, year, decade, demo } kind = source;
  std::string attribute;  // demo only

  static GroupBy parse(std::string_view spec) {
    if (spec == "source") return {source, {}};
    if (spec == "year") return {year, {}};
    if (spec == "decade") return {decade, {}};
    if (spec.rfind("demo:", 0) == 0 && spec.size() > 5) return {demo, std::string(spec.substr(5))};
    throw ValidationError("unknown group-by '" + std::string(spec) + "' (source|year|decade|demo:<attr>)");
  }

  std::string name() const {
    switch (kind) {
      case source: return "source";
      case year: return "year";
      case decade: return "decade";
      case demo: return "demo:" + attribute;
    }
    return {};
  }

  std::string column() const {
    switch (kind) {
      case source: return "source";
      case year:
      case decade: return "year";
      case demo: return "demo_" + attribute;
    }
    return {};
  }
};

// Orders numeric group keys numerically, everything else lexically.
struct GroupKeyLess {
  bool operator()(const std::string& a, const std::string& b) const {
    const auto x = text::parse_number<long long>(a), y = text::parse_number<long long>(b);
    if (x && y) return *x < *y;
    if (x != y) return x.has_value();  // numbers first
    return a < b;
  }
};

enum class StatKind { flag, count, avg, categorical };

inline StatKind stat_kind(std::string_view column) {
  const auto ends = [&](std::string_view s) {
    return column.size() >= s.size() && column.substr(column.size() - s.size()) == s;
  };
  if (ends("_flag")) return StatKind::flag;
  if (ends("_count")) return StatKind::count;
  if (ends("_avg")) return StatKind::avg;
  return StatKind::categorical;
}

struct FeatureStats {
  std::int64_t weight = 0;        // sum of weights of records seen
  std::int64_t flag_true = 0;     // flag: weighted trues
  double count_sum = 0.0;         // count: weighted counts
  double density_sum = 0.0;       // count: weighted densities
  double avg_sum = 0.0;           // avg: weighted avgs
  std::int64_t present = 0;       // avg: weighted presents; categorical: weighted non-empty
  std::int64_t absent = 0;        // avg: weighted absents
  std::array<std::uint64_t, kHistogramBins> bins{};
  std::map<std::string, std::int64_t> items;

  void merge(const FeatureStats& o) {
    weight += o.weight;
    flag_true += o.flag_true;
    count_sum += o.count_sum;
    density_sum += o.density_sum;
    avg_sum += o.avg_sum;
    present += o.present;
    absent += o.absent;
    for (std::size_t b = 0; b < kHistogramBins; ++b) bins[b] += o.bins[b];
    for (const auto& [k, v] : o.items) items[k] += v;
  }

  double percent_flag() const { return weight ? 100.0 * static_cast<double>(flag_true) / static_cast<double>(weight) : 0.0; }
  double mean_count() const { return weight ? count_sum / static_cast<double>(weight) : 0.0; }
  double mean_density() const { return weight ? density_sum / static_cast<double>(weight) : 0.0; }
  std::optional<double> mean_avg() const {
    if (!present) return std::nullopt;
    return avg_sum / static_cast<double>(present);
  }
  double percent_nonempty() const {
    return weight ? 100.0 * static_cast<double>(present) / static_cast<double>(weight) : 0.0;
  }
};

struct GroupStats {
  std::uint64_t records = 0;
  std::vector<FeatureStats> features;

  void merge(const GroupStats& o) {
    records += o.records;
    if (features.size() < o.features.size()) features.resize(o.features.size());
    for (std::size_t i = 0; i < o.features.size(); ++i) features[i].merge(o.features[i]);
  }
};

struct ReportRow {
  std::string group_by, group, feature, statistic;
  double value = 0.0;
};

class Aggregator {
 public:
  // `columns` is the record layout; `features` the columns to summarize.
  Aggregator(std::vector<std::string> columns, GroupBy group_by, std::vector<std::string> features,
             bool weighted = false)
      : columns_(std::move(columns)), group_by_(std::move(group_by)), features_(std::move(features)),
        weighted_(weighted) {
    const auto index = [&](const std::string& id) -> std::size_t {
      const auto it = std::find(columns_.begin(), columns_.end(), id);
      if (it == columns_.end()) throw ValidationError("unknown feature column '" + id + "'");
      return static_cast<std::size_t>(it - columns_.begin());
    };
    group_col_ = index(group_by_.column());
    for (const auto& f : features_) {
      feature_cols_.push_back(index(f));
      kinds_.push_back(stat_kind(f));
      if (kinds_.back() == StatKind::count && !word_col_) word_col_ = index("word_count");
    }
    if (weighted_) weight_col_ = index("match_count");
  }

  const std::vector<std::string>& features() const noexcept { return features_; }
  const GroupBy& group_by() const noexcept { return group_by_; }
  const std::map<std::string, GroupStats, GroupKeyLess>& groups() const noexcept { return groups_; }
  std::uint64_t skipped() const noexcept { return skipped_; }

  std::optional<std::string> group_key(const std::vector<Value>& row) const {
    const Value& g = row[group_col_];
    if (const auto* s = std::get_if<std::string>(&g)) {
      if (s->empty()) return std::nullopt;
      return *s;
    }
    if (const auto* n = std::get_if<std::int64_t>(&g)) {
      std::int64_t v = *n;
      if (group_by_.kind == GroupBy::decade) v = v >= 0 ? v / 10 * 10 : -((-v + 9) / 10 * 10);
      return std::to_string(v);
    }
    if (const auto* d = std::get_if<double>(&g)) return text::format_double(*d);
    if (const auto* b = std::get_if<bool>(&g)) return std::string(*b ? "true" : "false");
    return std::nullopt;
  }

  // Records with no value for the grouping key are skipped and counted.
  void add(const std::vector<Value>& row) {
    const auto key = group_key(row);
    if (!key) {
      ++skipped_;
      return;
    }
    std::int64_t w = 1;
    if (weight_col_) {
      const auto* n = std::get_if<std::int64_t>(&row[*weight_col_]);
      w = n ? *n : 1;
    }
    auto& g = groups_[*key];
    g.features.resize(features_.size());
    ++g.records;
    for (std::size_t i = 0; i < features_.size(); ++i) add_feature(g.features[i], kinds_[i], row, feature_cols_[i], w);
  }

  // Combines a partial aggregate over a disjoint part of the same stream.
  void merge(const Aggregator& other) {
    if (other.features_ != features_ || other.group_by_.name() != group_by_.name()) {
      throw ValidationError("cannot merge aggregates with different layouts");
    }
    for (const auto& [k, g] : other.groups_) groups_[k].merge(g);
    skipped_ += other.skipped_;
  }

  const FeatureStats& stats(const std::string& group, const std::string& feature) const {
    const auto g = groups_.find(group);
    if (g == groups_.end()) throw ValidationError("no group '" + group + "'");
    return g->second.features[feature_index(feature)];
  }

  std::size_t feature_index(const std::string& feature) const {
    const auto it = std::find(features_.begin(), features_.end(), feature);
    if (it == features_.end()) throw ValidationError("feature '" + feature + "' is not aggregated");
    return static_cast<std::size_t>(it - features_.begin());
  }

  StatKind kind(const std::string& feature) const { return kinds_[feature_index(feature)]; }

  std::vector<ReportRow> rows() const {
    std::vector<ReportRow> out;
    const std::string gb = group_by_.name();
    for (const auto& [key, g] : groups_) {
      for (std::size_t i = 0; i < features_.size(); ++i) {
        const auto& s = g.features[i];
        const auto emit = [&](std::string stat, double value) { out.push_back({gb, key, features_[i], std::move(stat), value}); };
        emit("n", static_cast<double>(s.weight));
        switch (kinds_[i]) {
          case StatKind::flag:
            emit("percent_flag", s.percent_flag());
            break;
          case StatKind::count:
            emit("mean_count", s.mean_count());
            emit("mean_density", s.mean_density());
            break;
          case StatKind::avg:
            if (auto m = s.mean_avg()) emit("mean_avg", *m);
            emit("n_present", static_cast<double>(s.present));
            emit("n_absent", static_cast<double>(s.absent));
            for (std::size_t b = 0; b < kHistogramBins; ++b) emit(bin_label(b), static_cast<double>(s.bins[b]));
            break;
          case StatKind::categorical:
            emit("percent_nonempty", s.percent_nonempty());
            for (const auto& [item, n] : s.items) emit("item:" + item, static_cast<double>(n));
            break;
        }
      }
    }
    return out;
  }

 private:
  void add_feature(FeatureStats& s, StatKind kind, const std::vector<Value>& row, std::size_t col,
                   std::int64_t w) const {
    s.weight += w;
    const Value& v = row[col];
    switch (kind) {
      case StatKind::flag:
        if (const auto* b = std::get_if<bool>(&v); b && *b) s.flag_true += w;
        break;
      case StatKind::count: {
        const auto* n = std::get_if<std::int64_t>(&v);
        const double count = n ? static_cast<double>(*n) : 0.0;
        const auto* words = std::get_if<std::int64_t>(&row[*word_col_]);
        s.count_sum += count * static_cast<double>(w);
        if (words && *words > 0) s.density_sum += count / static_cast<double>(*words) * static_cast<double>(w);
        break;
      }
      case StatKind::avg:
        if (const auto* d = std::get_if<double>(&v)) {
          s.avg_sum += *d * static_cast<double>(w);
          s.present += w;
          ++s.bins[histogram_bin(*d)];
        } else if (const auto* i = std::get_if<std::int64_t>(&v)) {  // JSON writes 1.0 as 1
          s.avg_sum += static_cast<double>(*i) * static_cast<double>(w);
          s.present += w;
          ++s.bins[histogram_bin(static_cast<double>(*i))];
        } else {
          s.absent += w;
        }
        break;
      case StatKind::categorical:
        if (const auto* list = std::get_if<std::vector<std::string>>(&v)) {
          if (!list->empty()) s.present += w;
          std::vector<std::string> distinct = *list;
          std::sort(distinct.begin(), distinct.end());
          distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
          for (const auto& item : distinct) s.items[item] += w;
        } else if (const auto* str = std::get_if<std::string>(&v); str && !str->empty()) {
          s.present += w;
          s.items[*str] += w;
        }
        break;
    }
  }

  std::vector<std::string> columns_;
  GroupBy group_by_;
  std::vector<std::string> features_;
  bool weighted_;
  std::size_t group_col_ = 0;
  std::vector<std::size_t> feature_cols_;
  std::vector<StatKind> kinds_;
  std::optional<std::size_t> word_col_;
  std::optional<std::size_t> weight_col_;
  std::map<std::string, GroupStats, GroupKeyLess> groups_;
  std::uint64_t skipped_ = 0;
};

// Per group: percent_flag(numerator) / percent_flag(denominator); absent when
// the denominator is zero.
inline std::map<std::string, std::optional<double>, GroupKeyLess> ratio_series(const Aggregator& agg,
                                                                               const std::string& numerator,
                                                                               const std::string& denominator) {
  for (const auto& c : {numerator, denominator}) {
    if (agg.kind(c) != StatKind::flag) throw ValidationError("ratio needs flag columns, got '" + c + "'");
  }
  std::map<std::string, std::optional<double>, GroupKeyLess> out;
  for (const auto& [key, g] : agg.groups()) {
    const double num = agg.stats(key, numerator).percent_flag();
    const double den = agg.stats(key, denominator).percent_flag();
    out[key] = den == 0.0 ? std::nullopt : std::optional<double>(num / den);
  }
  return out;
}

struct Histogram {
  std::array<std::uint64_t, kHistogramBins> bins{};
  std::uint64_t absent = 0;
};

// Score histogram of one avg column per group.
template <typename RowSource>
std::map<std::string, Histogram, GroupKeyLess> distribution_table(const std::vector<std::string>& columns,
                                                                  RowSource&& next_row, const std::string& column,
                                                                  const GroupBy& group_by) {
  if (stat_kind(column) != StatKind::avg) throw ValidationError("'" + column + "' is not an avg column");
  Aggregator agg(columns, group_by, {column});
  std::vector<Value> row;
  while (next_row(row)) agg.add(row);
  std::map<std::string, Histogram, GroupKeyLess> out;
  for (const auto& [key, g] : agg.groups()) {
    out[key].bins = g.features[0].bins;
    out[key].absent = static_cast<std::uint64_t>(g.features[0].absent);
  }
  return out;
}

inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "group_by,group,feature,statistic,value\n";
  std::string line;
  for (const auto& r : rows) {
    line.clear();
    detail::append_csv_field(line, r.group_by);
    line.push_back(',');
    detail::append_csv_field(line, r.group);
    line.push_back(',');
    detail::append_csv_field(line, r.feature);
    line.push_back(',');
    detail::append_csv_field(line, r.statistic);
    line.push_back(',');
    line += text::format_double(r.value);
    out << line << '\n';
  }
}

}  // namespace abcde
