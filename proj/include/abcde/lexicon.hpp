#pragma once

// Lexicon types and their TSV loaders.
//
// File format: UTF-8, one entry per line, `term<TAB>value`. Blank lines and
// lines starting with '#' are ignored. Terms are normalized through the shared
// tokenizer (lowercase, apostrophes folded, punctuation dropped) and stored as
// 1-3 space-joined tokens.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/text.hpp"
#include "abcde/tokenizer.hpp"

namespace abcde {

inline constexpr std::size_t kMaxPhraseTokens = 3;

// Canonical key form for a lexicon term. Throws ValidationError if the term
// has no word tokens, contains reserved tokens or is longer than 3 tokens.
inline std::string normalize_term(std::string_view raw) {
  TokenSequence seq;
  try {
    seq = tokenize(raw);
  } catch (const Utf8Error& e) {
    throw ValidationError("term is not valid UTF-8: " + std::string(e.what()));
  }
  if (seq.empty()) throw ValidationError("term '" + std::string(raw) + "' has no word tokens");
  if (seq.size() > kMaxPhraseTokens) {
    throw ValidationError("term '" + std::string(raw) + "' has more than 3 tokens");
  }
  std::string out;
  for (const auto& tok : seq) {
    if (!tok.matchable()) throw ValidationError("term '" + std::string(raw) + "' contains a reserved token");
    if (!out.empty()) out.push_back(' ');
    out += tok.text;
  }
  return out;
}

struct ThresholdConfig {
  double high_min = 0.66;
  double low_max = 0.33;

  void validate() const {
    if (!(0.0 <= low_max && low_max < high_min && high_min <= 1.0)) {
      throw ValidationError("threshold config requires 0 <= low_max < high_min <= 1");
    }
  }
};

enum class ThresholdMode { high, low };

// Set on High/Low sub-lexicons: which parent they slice and at what bound.
struct Derivation {
  std::string parent;
  ThresholdMode mode = ThresholdMode::high;
  double bound = 0.0;

  bool keeps(double score) const { return mode == ThresholdMode::high ? score >= bound : score <= bound; }
};

// Real-valued lexicon with scores in [0,1].
class ScoreLexicon {
 public:
  using Entries = std::map<std::string, double, std::less<>>;

  explicit ScoreLexicon(std::string name) : name_(std::move(name)) {}

  // Normalizes `term` and validates the score.
  void insert(std::string_view term, double score) { insert_normalized(normalize_term(term), score); }

  void insert_normalized(std::string key, double score) {
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ValidationError("lexicon '" + name_ + "': score " + text::format_double(score) + " for '" +
                            key + "' is outside [0,1]");
    }
    auto [it, inserted] = entries_.emplace(std::move(key), score);
    if (!inserted) throw ValidationError("lexicon '" + name_ + "': duplicate term '" + it->first + "'");
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entries& entries() const noexcept { return entries_; }

  std::optional<double> score(std::string_view normalized) const {
    const auto it = entries_.find(normalized);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const std::optional<Derivation>& derivation() const noexcept { return derivation_; }
  void set_derivation(Derivation d) { derivation_ = std::move(d); }

 private:
  std::string name_;
  Entries entries_;
  std::optional<Derivation> derivation_;
};

// Term -> category label lexicon; categories keep first-seen file order.
class CategoryLexicon {
 public:
  using Entries = std::map<std::string, std::size_t, std::less<>>;

  explicit CategoryLexicon(std::string name) : name_(std::move(name)) {}

  void insert(std::string_view term, std::string_view category) {
    const std::string label(text::trim(category));
    if (label.empty()) throw ValidationError("lexicon '" + name_ + "': empty category label");
    const std::string key = normalize_term(term);
    auto cat = std::find(categories_.begin(), categories_.end(), label);
    const std::size_t index = static_cast<std::size_t>(cat - categories_.begin());
    if (cat == categories_.end()) categories_.push_back(label);
    auto [it, inserted] = entries_.emplace(key, index);
    if (!inserted && it->second != index) {
      throw ValidationError("lexicon '" + name_ + "': term '" + key + "' has conflicting categories '" +
                            categories_[it->second] + "' and '" + label + "'");
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Entries& entries() const noexcept { return entries_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }

  std::optional<std::size_t> category(std::string_view normalized) const {
    const auto it = entries_.find(normalized);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::string name_;
  Entries entries_;
  std::vector<std::string> categories_;
};

// Plain phrase list (1-3 tokens per phrase).
class PhraseLexicon {
 public:
  using Entries = std::set<std::string, std::less<>>;

  explicit PhraseLexicon(std::string name) : name_(std::move(name)) {}

  // Returns false when the phrase was already present after normalization.
  bool insert(std::string_view phrase) { return entries_.insert(normalize_term(phrase)).second; }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Entries& entries() const noexcept { return entries_; }
  bool contains(std::string_view normalized) const { return entries_.count(normalized) > 0; }

 private:
  std::string name_;
  Entries entries_;
};

struct ScoreLoadOptions {
  // Min-max rescale the file's scores into [0,1] before validation.
  bool rescale = false;
};

namespace detail {

// Calls fn(line_number, fields) for every content line.
template <typename Fn>
void for_each_tsv_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    fn(line_no, text::split(line, '\t'));
  }
}

inline std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

template <typename Fn>
auto with_line(std::size_t line_no, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
  }
}

}  // namespace detail

inline ScoreLexicon read_score_lexicon(std::istream& in, std::string name, ScoreLoadOptions opts = {}) {
  std::vector<std::tuple<std::size_t, std::string, double>> rows;
  detail::for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw ParseError("expected term<TAB>score", line_no);
    const auto score = text::parse_number<double>(f[1]);
    if (!score) throw ParseError("score '" + std::string(f[1]) + "' is not a number", line_no);
    std::string key = detail::with_line(line_no, [&] { return normalize_term(f[0]); });
    rows.emplace_back(line_no, std::move(key), *score);
  });
  if (opts.rescale && !rows.empty()) {
    const auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return std::get<2>(a) < std::get<2>(b);
    });
    const double min = std::get<2>(*lo);
    const double span = std::get<2>(*hi) - min;
    for (auto& row : rows) std::get<2>(row) = span > 0 ? (std::get<2>(row) - min) / span : 0.0;
  }
  ScoreLexicon lex(std::move(name));
  for (auto& [line_no, key, score] : rows) {
    detail::with_line(line_no, [&] { lex.insert_normalized(std::move(key), score); });
  }
  return lex;
}

inline ScoreLexicon load_score_lexicon(const std::string& path, std::string name, ScoreLoadOptions opts = {}) {
  auto in = detail::open_or_throw(path);
  return read_score_lexicon(in, std::move(name), opts);
}

inline CategoryLexicon read_category_lexicon(std::istream& in, std::string name) {
  CategoryLexicon lex(std::move(name));
  detail::for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw ParseError("expected term<TAB>category", line_no);
    detail::with_line(line_no, [&] { lex.insert(f[0], f[1]); });
  });
  return lex;
}

inline CategoryLexicon load_category_lexicon(const std::string& path, std::string name) {
  auto in = detail::open_or_throw(path);
  return read_category_lexicon(in, std::move(name));
}

// One phrase per line; anything after a TAB is ignored.
inline PhraseLexicon read_phrase_lexicon(std::istream& in, std::string name) {
  PhraseLexicon lex(std::move(name));
  detail::for_each_tsv_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (!detail::with_line(line_no, [&] { return lex.insert(f[0]); })) {
      throw ValidationError("lexicon '" + lex.name() + "': duplicate phrase '" + std::string(f[0]) +
                            "' (line " + std::to_string(line_no) + ")");
    }
  });
  return lex;
}

inline PhraseLexicon load_phrase_lexicon(const std::string& path, std::string name) {
  auto in = detail::open_or_throw(path);
  return read_phrase_lexicon(in, std::move(name));
}

// Entries whose score is >= high_min (high) or <= low_max (low); both bounds
// inclusive. The result is named "high_<name>" / "low_<name>".
inline ScoreLexicon derive_threshold_sublexicon(const ScoreLexicon& lex, ThresholdMode mode,
                                                const ThresholdConfig& cfg = {}) {
  cfg.validate();
  ScoreLexicon out((mode == ThresholdMode::high ? "high_" : "low_") + lex.name());
  const Derivation d{lex.name(), mode, mode == ThresholdMode::high ? cfg.high_min : cfg.low_max};
  for (const auto& [term, score] : lex.entries()) {
    if (d.keeps(score)) out.insert_normalized(term, score);
  }
  out.set_derivation(d);
  return out;
}

inline void write_tsv(std::ostream& out, const ScoreLexicon& lex) {
  for (const auto& [term, score] : lex.entries()) out << term << '\t' << text::format_double(score) << '\n';
}

inline void write_tsv(std::ostream& out, const CategoryLexicon& lex) {
  for (const auto& [term, cat] : lex.entries()) out << term << '\t' << lex.categories()[cat] << '\n';
}

inline void write_tsv(std::ostream& out, const PhraseLexicon& lex) {
  for (const auto& phrase : lex.entries()) out << phrase << '\n';
}

}  // namespace abcde
