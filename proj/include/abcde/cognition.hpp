#pragma once

// Cognition-category flags and the focus features (pronoun person and
// possessiveness, verb tense).
//
// Pronoun lists are closed-class:
//   first   I me my mine we us our ours
//   second  you your yours
//   third   he him his she her hers they them their theirs it its
// Possessive forms are my mine our ours your yours his hers their theirs its.
// Contractions count through their pronoun part (i'm, you're, it's, they've).
//
// "her" is ambiguous. It is read as a possessive determiner when the next
// token is a word that is neither a verb form in the morphology table nor a
// closed-class function word; otherwise it is the object pronoun:
//
//   "her book"           -> possessive
//   "i saw her"          -> non-possessive (no next token)
//   "i saw her run"      -> non-possessive (next token is a verb form)
//   "i gave her the pen" -> non-possessive (next token is a function word)
//
// Tense: a token sets past/present when the morphology table tags it so.
// Future has no inflection in English; it is set by will / shall / won't /
// shan't / any "'ll" contraction followed within three tokens by a base-form
// verb, or by "going to" immediately followed by a base-form verb.

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/matcher.hpp"
#include "abcde/text.hpp"
#include "abcde/tokenizer.hpp"

namespace abcde {

struct CognitionFeatures {
  std::vector<std::uint32_t> counts;  // per category, auxiliary
  std::vector<bool> flags;            // per category
  bool any = false;
};

inline CognitionFeatures detect_cognition(const MatchSet& matches, std::uint32_t cognition_lexicon,
                                          std::size_t category_count) {
  CognitionFeatures out;
  out.counts.assign(category_count, 0);
  out.flags.assign(category_count, false);
  for (const auto& hit : matches) {
    if (hit.lexicon != cognition_lexicon || hit.category >= category_count) continue;
    ++out.counts[hit.category];
    out.flags[hit.category] = true;
    out.any = true;
  }
  return out;
}

// Surface form -> tense tags. TSV rows `form<TAB>tags` with tags a
// ';'-separated subset of {past, present, base}.
class MorphTable {
 public:
  enum Tag : std::uint8_t { kPast = 1, kPresent = 2, kBase = 4 };

  void add(std::string_view form, std::uint8_t tags) { tags_[std::string(form)] |= tags; }

  std::uint8_t tags(std::string_view form) const {
    const auto it = tags_.find(std::string(form));
    return it == tags_.end() ? 0 : it->second;
  }
  bool is_verb(std::string_view form) const { return tags(form) != 0; }
  std::size_t size() const noexcept { return tags_.size(); }

  static MorphTable read(std::istream& in) {
    MorphTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || line.front() == '#') continue;
      const auto fields = text::split(line, '\t');
      if (fields.size() != 2) throw ParseError("expected form<TAB>tags", line_no);
      std::uint8_t mask = 0;
      for (auto tag : text::split(fields[1], ';')) {
        tag = text::trim(tag);
        if (tag == "past") mask |= kPast;
        else if (tag == "present") mask |= kPresent;
        else if (tag == "base") mask |= kBase;
        else throw ParseError("unknown tense tag '" + std::string(tag) + "'", line_no);
      }
      table.add(text::fold(text::trim(fields[0])), mask);
    }
    return table;
  }

  static MorphTable load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open morphology table '" + path + "'");
    return read(in);
  }

 private:
  std::unordered_map<std::string, std::uint8_t> tags_;
};

enum class Person : std::uint8_t { first, second, third };

struct PronounFlags {
  // [person][possessive]
  std::array<std::array<bool, 2>, 3> flags{};

  bool get(Person p, bool possessive) const { return flags[static_cast<std::size_t>(p)][possessive]; }
  void set(Person p, bool possessive) { flags[static_cast<std::size_t>(p)][possessive] = true; }
  friend bool operator==(const PronounFlags&, const PronounFlags&) = default;
};

struct TenseFlags {
  bool past = false;
  bool present = false;
  bool future = false;
  friend bool operator==(const TenseFlags&, const TenseFlags&) = default;
};

namespace detail {

struct PronounInfo {
  Person person;
  bool possessive;
  bool ambiguous_her = false;
};

inline const std::unordered_map<std::string_view, PronounInfo>& pronoun_table() {
  static const std::unordered_map<std::string_view, PronounInfo> table = {
      {"i", {Person::first, false}},      {"me", {Person::first, false}},    {"we", {Person::first, false}},
      {"us", {Person::first, false}},     {"my", {Person::first, true}},     {"mine", {Person::first, true}},
      {"our", {Person::first, true}},     {"ours", {Person::first, true}},   {"you", {Person::second, false}},
      {"your", {Person::second, true}},   {"yours", {Person::second, true}}, {"he", {Person::third, false}},
      {"him", {Person::third, false}},    {"she", {Person::third, false}},   {"they", {Person::third, false}},
      {"them", {Person::third, false}},   {"it", {Person::third, false}},    {"his", {Person::third, true}},
      {"hers", {Person::third, true}},    {"their", {Person::third, true}},  {"theirs", {Person::third, true}},
      {"its", {Person::third, true}},     {"her", {Person::third, true, true}},
  };
  return table;
}

inline bool function_word(std::string_view w) {
  static const std::unordered_set<std::string_view> words = {
      "the", "a", "an", "this", "that", "these", "those", "my", "your", "his", "her", "its", "our", "their",
      "me", "him", "us", "them", "you", "i", "he", "she", "it", "we", "they", "to", "and", "or", "but", "so",
      "for", "with", "in", "on", "at", "by", "from", "of", "up", "down", "out", "off", "over", "into", "onto",
      "about", "as", "than", "because", "if", "when", "while", "not", "too", "again", "now", "then", "there",
      "here", "back", "away", "yesterday", "today", "tomorrow", "tonight", "all", "some", "any", "very",
      "really", "just", "also", "once", "anymore", "either", "neither", "enough", "alone", "well", "much",
      "more", "less", "everything", "something", "anything", "nothing", "what", "how", "why", "where", "who",
      "which", "no", "yes", "before", "after", "since", "until", "around", "through", "across", "behind",
      "without", "against", "between", "near", "like", "either", "both", "each", "every", "twice", "soon",
      "later", "already", "still", "even", "ever", "never", "always", "often", "sometimes", "though"};
  return words.count(w) > 0;
}

// Pronoun part of a contraction ("i'm" -> "i"); the token itself otherwise.
inline std::string_view pronoun_part(std::string_view tok) {
  const auto apos = tok.find('\'');
  if (apos == std::string_view::npos) return tok;
  const auto suffix = tok.substr(apos + 1);
  if (suffix == "m" || suffix == "s" || suffix == "re" || suffix == "ve" || suffix == "ll" || suffix == "d") {
    return tok.substr(0, apos);
  }
  return tok;
}

inline bool future_trigger(std::string_view tok) {
  if (tok == "will" || tok == "shall" || tok == "won't" || tok == "shan't") return true;
  return tok.size() > 3 && tok.substr(tok.size() - 3) == "'ll";
}

}  // namespace detail

// `morph` may be null, in which case "her" reads as possessive before any
// non-function word.
inline PronounFlags detect_pronouns(const TokenSequence& seq, const MorphTable* morph = nullptr) {
  PronounFlags out;
  const auto& table = detail::pronoun_table();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq[i].matchable()) continue;
    const std::string& tok = seq.text(i);
    const std::string_view word = tok == "her" ? std::string_view(tok) : detail::pronoun_part(tok);
    const auto it = table.find(word);
    if (it == table.end()) continue;
    const auto& info = it->second;
    bool possessive = info.possessive;
    if (info.ambiguous_her) {
      possessive = false;
      if (i + 1 < seq.size() && seq[i + 1].matchable()) {
        const std::string& next = seq.text(i + 1);
        possessive = !detail::function_word(next) && !(morph && morph->is_verb(next));
      }
    }
    out.set(info.person, possessive);
  }
  return out;
}

inline TenseFlags detect_tense(const TokenSequence& seq, const MorphTable& morph) {
  TenseFlags out;
  const std::size_t n = seq.size();
  const auto base_at = [&](std::size_t j) {
    return j < n && seq[j].matchable() && (morph.tags(seq.text(j)) & MorphTable::kBase);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!seq[i].matchable()) continue;
    const std::string& tok = seq.text(i);
    const auto tags = morph.tags(tok);
    out.past = out.past || (tags & MorphTable::kPast);
    out.present = out.present || (tags & MorphTable::kPresent);
    if (out.future) continue;
    if (detail::future_trigger(tok)) {
      out.future = base_at(i + 1) || base_at(i + 2) || base_at(i + 3);
    } else if (tok == "going" && i + 1 < n && seq.text(i + 1) == "to") {
      out.future = base_at(i + 2);
    }
  }
  return out;
}

}  // namespace abcde
