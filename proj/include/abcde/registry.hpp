#pragma once

// Feature-column registry. The column list is a pure function of the loaded
// lexicons and the enabled feature families, so two runs with the same inputs
// produce byte-identical manifests.
//
// Column order:
//   structural   instance_id source timestamp year user_id word_count match_count error
//   affect       <lexicon>_avg <lexicon>_count <lexicon>_flag   (per score lexicon)
//   body         bpm_flag bpm_my ... bpm_their [bpm_any_count]
//   cognition    cog_<category>_flag ... cog_any_flag
//   pronouns     pron_<first|second|third>_<poss|nonposs>_flag
//   tense        tense_<past|present|future>_flag
//   demographics demo_age demo_gender demo_occupation demo_occupation_soc
//                demo_country demo_city demo_religion demo_<attr>_provenance

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/lexicon.hpp"
#include "json.hpp"

namespace abcde {

enum class ColumnKind { string, integer, real, boolean, list };

inline std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::string: return "string";
    case ColumnKind::integer: return "integer";
    case ColumnKind::real: return "real";
    case ColumnKind::boolean: return "boolean";
    case ColumnKind::list: return "list";
  }
  return "string";
}

struct Column {
  std::string id;
  ColumnKind kind;
  std::string group;
};

inline constexpr std::array<std::string_view, 7> kPossessives = {"my", "your", "his", "her", "its", "our", "their"};
inline constexpr std::array<std::string_view, 3> kPersons = {"first", "second", "third"};
inline constexpr std::array<std::string_view, 3> kTenses = {"past", "present", "future"};
inline constexpr std::array<std::string_view, 6> kDemographicAttributes = {"age",     "gender", "occupation",
                                                                         "country", "city",   "religion"};

// Lowercase identifier with runs of other characters collapsed to '_'.
inline std::string snake_case(std::string_view label) {
  std::string out;
  bool sep = false;
  for (char c : label) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    const bool upper = c >= 'A' && c <= 'Z';
    if (alnum || upper) {
      if (sep && !out.empty()) out.push_back('_');
      out.push_back(upper ? static_cast<char>(c + 32) : c);
      sep = false;
    } else {
      sep = true;
    }
  }
  return out;
}

inline bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

class FeatureRegistry {
 public:
  void add(std::string id, ColumnKind kind, std::string group) {
    if (!index_.emplace(id, columns_.size()).second) {
      throw ValidationError("feature column '" + id + "' is defined twice");
    }
    columns_.push_back({std::move(id), kind, std::move(group)});
  }

  std::size_t size() const noexcept { return columns_.size(); }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& operator[](std::size_t i) const { return columns_[i]; }

  std::optional<std::size_t> index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw ValidationError("unknown feature column '" + std::string(id) + "'");
  }

  nlohmann::ordered_json manifest() const {
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& c : columns_) {
      cols.push_back({{"id", c.id}, {"kind", to_string(c.kind)}, {"group", c.group}});
    }
    nlohmann::ordered_json out;
    out["column_count"] = columns_.size();
    out["feature_count"] = columns_.size() - structural_count();
    out["columns"] = std::move(cols);
    return out;
  }

  std::size_t structural_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.group == "structural";
    return n;
  }

 private:
  std::vector<Column> columns_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct RegistryOptions {
  bool pronouns = false;
  bool tense = false;
  bool demographics = false;
  bool bpm_any_count = false;
};

// Immutable after construction; shared read-only by all workers.
class LexiconRegistry {
 public:
  LexiconRegistry(std::vector<ScoreLexicon> score, std::optional<CategoryLexicon> cognition,
                  std::optional<PhraseLexicon> bpm, RegistryOptions options)
      : score_(std::move(score)), cognition_(std::move(cognition)), bpm_(std::move(bpm)), options_(options) {
    check_names();
    enumerate();
  }

  const std::vector<ScoreLexicon>& score_lexicons() const noexcept { return score_; }
  const std::optional<CategoryLexicon>& cognition() const noexcept { return cognition_; }
  const std::optional<PhraseLexicon>& bpm() const noexcept { return bpm_; }
  const RegistryOptions& options() const noexcept { return options_; }
  const FeatureRegistry& features() const noexcept { return features_; }

  // Column ids of the cognition flags, in category order.
  std::vector<std::string> cognition_columns() const {
    std::vector<std::string> out;
    if (cognition_) {
      for (const auto& cat : cognition_->categories()) out.push_back("cog_" + snake_case(cat) + "_flag");
    }
    return out;
  }

 private:
  void check_names() const {
    std::vector<std::string> seen;
    const auto claim = [&](const std::string& name) {
      if (!valid_identifier(name)) throw ValidationError("lexicon name '" + name + "' is not a [a-z0-9_] identifier");
      for (const auto& s : seen) {
        if (s == name) throw ValidationError("lexicon name '" + name + "' is used twice");
      }
      seen.push_back(name);
    };
    for (const auto& lex : score_) claim(lex.name());
    if (cognition_) claim(cognition_->name());
    if (bpm_) claim(bpm_->name());
  }

  void enumerate() {
    auto& f = features_;
    f.add("instance_id", ColumnKind::string, "structural");
    f.add("source", ColumnKind::string, "structural");
    f.add("timestamp", ColumnKind::integer, "structural");
    f.add("year", ColumnKind::integer, "structural");
    f.add("user_id", ColumnKind::string, "structural");
    f.add("word_count", ColumnKind::integer, "structural");
    f.add("match_count", ColumnKind::integer, "structural");
    f.add("error", ColumnKind::string, "structural");

    for (const auto& lex : score_) {
      f.add(lex.name() + "_avg", ColumnKind::real, "affect");
      f.add(lex.name() + "_count", ColumnKind::integer, "affect");
      f.add(lex.name() + "_flag", ColumnKind::boolean, "affect");
    }
    if (bpm_) {
      f.add("bpm_flag", ColumnKind::boolean, "body");
      for (auto p : kPossessives) f.add("bpm_" + std::string(p), ColumnKind::list, "body");
      if (options_.bpm_any_count) f.add("bpm_any_count", ColumnKind::integer, "body");
    }
    if (cognition_) {
      for (auto& id : cognition_columns()) f.add(std::move(id), ColumnKind::boolean, "cognition");
      f.add("cog_any_flag", ColumnKind::boolean, "cognition");
    }
    if (options_.pronouns) {
      for (auto person : kPersons) {
        f.add("pron_" + std::string(person) + "_poss_flag", ColumnKind::boolean, "focus");
        f.add("pron_" + std::string(person) + "_nonposs_flag", ColumnKind::boolean, "focus");
      }
    }
    if (options_.tense) {
      for (auto tense : kTenses) f.add("tense_" + std::string(tense) + "_flag", ColumnKind::boolean, "focus");
    }
    if (options_.demographics) {
      f.add("demo_age", ColumnKind::integer, "demographics");
      f.add("demo_gender", ColumnKind::string, "demographics");
      f.add("demo_occupation", ColumnKind::string, "demographics");
      f.add("demo_occupation_soc", ColumnKind::string, "demographics");
      f.add("demo_country", ColumnKind::string, "demographics");
      f.add("demo_city", ColumnKind::string, "demographics");
      f.add("demo_religion", ColumnKind::string, "demographics");
      for (auto attr : kDemographicAttributes) {
        f.add("demo_" + std::string(attr) + "_provenance", ColumnKind::string, "demographics");
      }
    }
  }

  std::vector<ScoreLexicon> score_;
  std::optional<CategoryLexicon> cognition_;
  std::optional<PhraseLexicon> bpm_;
  RegistryOptions options_;
  FeatureRegistry features_;
};

// Appends high_/low_ sub-lexicons for every lexicon named in `thresholded`,
// each directly after its parent.
inline std::vector<ScoreLexicon> expand_thresholds(std::vector<ScoreLexicon> lexicons,
                                                   const std::vector<std::string>& thresholded,
                                                   const ThresholdConfig& cfg) {
  std::vector<ScoreLexicon> out;
  for (auto& lex : lexicons) {
    const bool derive = std::find(thresholded.begin(), thresholded.end(), lex.name()) != thresholded.end();
    std::optional<ScoreLexicon> high, low;
    if (derive) {
      high = derive_threshold_sublexicon(lex, ThresholdMode::high, cfg);
      low = derive_threshold_sublexicon(lex, ThresholdMode::low, cfg);
    }
    out.push_back(std::move(lex));
    if (high) out.push_back(std::move(*high));
    if (low) out.push_back(std::move(*low));
  }
  return out;
}

inline LexiconRegistry build_registry(std::vector<ScoreLexicon> score, std::optional<CategoryLexicon> cognition,
                                      std::optional<PhraseLexicon> bpm, RegistryOptions options = {}) {
  return LexiconRegistry(std::move(score), std::move(cognition), std::move(bpm), options);
}

}  // namespace abcde
