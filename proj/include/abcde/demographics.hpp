#pragma once

// Self-disclosed demographics: regex rules over first-person frames, capture
// normalization against controlled vocabularies, age arithmetic, and per-user
// profiles that are propagated to every instance of that user.
//
// Rules file (TSV, '#' comments):
//   id <TAB> attribute <TAB> normalizer <TAB> triggers <TAB> pattern
// attribute is one of age, birth_year, gender, occupation, country, city,
// religion. normalizer is `age`, `birth_year` or `vocab:<name>`. triggers is a
// '|'-separated list of literals, one of which must occur in the folded text
// before the pattern is tried ('*' always tries). pattern is an ECMAScript
// regex applied to the folded text (lowercase, straight apostrophes, single
// spaces); capture group 1 is the raw value. Spans are byte offsets into the
// folded text.
//
// Vocabulary files (TSV): `surface <TAB> label [<TAB> note]`. A label of '-'
// marks the surface as a skippable modifier ("senior", "devout") that may
// precede the real term. Lookup takes the longest surface (up to the longest
// entry's word count) at the start of the capture, after skipping modifiers.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/text.hpp"

namespace abcde {

inline constexpr int kMinPlausibleAge = 13;
inline constexpr int kMaxPlausibleAge = 100;

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Disclosure {
  std::string attribute;   // age, birth_year, gender, occupation, country, city, religion
  std::string rule_id;
  std::string raw;         // matched surface
  std::string normalized;  // vocabulary label, SOC code, or the integer
  Span span;               // whole rule match in the folded text
};

class Vocabulary {
 public:
  struct Entry {
    std::string label;
    std::string note;
  };
  struct Match {
    std::string surface;
    const Entry* entry;
  };

  void add(std::string_view surface, std::string label, std::string note = {}) {
    const std::string key = text::fold(text::trim(surface));
    if (key.empty()) throw ValidationError("empty vocabulary surface");
    max_words_ = std::max(max_words_, text::split(key, ' ').size());
    if (label == "-") {
      modifiers_.insert(key);
      return;
    }
    entries_.insert_or_assign(key, Entry{std::move(label), std::move(note)});
  }

  std::optional<Match> lookup(std::string_view capture) const {
    std::vector<std::string_view> words;
    for (auto w : text::split(capture, ' ')) {
      if (!w.empty()) words.push_back(w);
    }
    std::size_t i = 0;
    while (i < words.size()) {
      for (std::size_t len = std::min(max_words_, words.size() - i); len > 0; --len) {
        std::string key(words[i]);
        for (std::size_t k = 1; k < len; ++k) {
          key.push_back(' ');
          key.append(words[i + k]);
        }
        const auto it = entries_.find(key);
        if (it != entries_.end()) return Match{it->first, &it->second};
      }
      if (!modifiers_.count(std::string(words[i]))) return std::nullopt;
      ++i;
    }
    return std::nullopt;
  }

  std::size_t size() const noexcept { return entries_.size(); }

  // Distinct labels; the controlled vocabulary proper.
  std::set<std::string> labels() const {
    std::set<std::string> out;
    for (const auto& [k, e] : entries_) out.insert(e.label);
    return out;
  }

  static Vocabulary read(std::istream& in) {
    Vocabulary v;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || line.front() == '#') continue;
      const auto f = text::split(line, '\t');
      if (f.size() < 2 || f.size() > 3) throw ParseError("expected surface<TAB>label[<TAB>note]", line_no);
      v.add(f[0], std::string(text::trim(f[1])), f.size() == 3 ? std::string(text::trim(f[2])) : std::string());
    }
    return v;
  }

  static Vocabulary load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open vocabulary '" + path + "'");
    return read(in);
  }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  std::unordered_set<std::string> modifiers_;
  std::size_t max_words_ = 1;
};

struct DisclosureRule {
  std::string id;
  std::string attribute;
  std::string normalizer;
  std::vector<std::string> triggers;  // empty: always try
  std::string pattern;
  std::regex regex;
};

inline bool known_attribute(std::string_view a) {
  return a == "age" || a == "birth_year" || a == "gender" || a == "occupation" || a == "country" || a == "city" ||
         a == "religion";
}

class RuleSet {
 public:
  RuleSet() = default;

  void add_vocabulary(std::string name, Vocabulary vocab) { vocabularies_.insert_or_assign(std::move(name), std::move(vocab)); }

  const Vocabulary* vocabulary(std::string_view name) const {
    const auto it = vocabularies_.find(std::string(name));
    return it == vocabularies_.end() ? nullptr : &it->second;
  }

  void add_rule(std::string id, std::string attribute, std::string normalizer, std::string_view triggers,
                std::string pattern) {
    if (!known_attribute(attribute)) throw ConfigError("rule '" + id + "': unknown attribute '" + attribute + "'");
    if (normalizer != "age" && normalizer != "birth_year" && normalizer.rfind("vocab:", 0) != 0) {
      throw ConfigError("rule '" + id + "': unknown normalizer '" + normalizer + "'");
    }
    if (normalizer.rfind("vocab:", 0) == 0 && !vocabulary(normalizer.substr(6))) {
      throw ConfigError("rule '" + id + "': vocabulary '" + normalizer.substr(6) + "' is not loaded");
    }
    for (const auto& r : rules_) {
      if (r.id == id) throw ConfigError("rule id '" + id + "' is used twice");
    }
    DisclosureRule rule{std::move(id), std::move(attribute), std::move(normalizer), {}, std::move(pattern), {}};
    if (triggers != "*") {
      for (auto t : text::split(triggers, '|')) {
        if (!t.empty()) rule.triggers.emplace_back(t);
      }
    }
    try {
      rule.regex = std::regex(rule.pattern, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("rule '" + rule.id + "': bad pattern: " + e.what());
    }
    if (rule.regex.mark_count() < 1) throw ConfigError("rule '" + rule.id + "': pattern needs a capture group");
    rules_.push_back(std::move(rule));
  }

  // Vocabularies must be added before the rules that reference them.
  void read_rules(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || line.front() == '#') continue;
      const auto f = text::split(line, '\t');
      if (f.size() != 5) throw ParseError("expected id<TAB>attribute<TAB>normalizer<TAB>triggers<TAB>pattern", line_no);
      add_rule(std::string(f[0]), std::string(f[1]), std::string(f[2]), f[3], std::string(f[4]));
    }
  }

  void load_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open rules file '" + path + "'");
    read_rules(in);
  }

  const std::vector<DisclosureRule>& rules() const noexcept { return rules_; }

  // All non-overlapping disclosures, grouped by attribute in rule-file order
  // and by position within an attribute. Throws Utf8Error on malformed text.
  std::vector<Disclosure> extract(std::string_view raw_text) const {
    const std::string folded = text::fold(raw_text);
    std::vector<std::pair<std::size_t, Disclosure>> found;  // (rule index, disclosure)
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = rules_[r];
      if (!rule.triggers.empty() &&
          std::none_of(rule.triggers.begin(), rule.triggers.end(),
                       [&](const std::string& t) { return folded.find(t) != std::string::npos; })) {
        continue;
      }
      for (auto it = std::sregex_iterator(folded.begin(), folded.end(), rule.regex); it != std::sregex_iterator();
           ++it) {
        const auto& m = *it;
        if (!m[1].matched) continue;
        auto d = normalize(rule, m[1].str());
        if (!d) continue;
        d->span = {static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.position(0) + m.length(0))};
        found.emplace_back(r, std::move(*d));
      }
    }

    std::vector<std::string> order;
    for (const auto& rule : rules_) {
      if (std::find(order.begin(), order.end(), rule.attribute) == order.end()) order.push_back(rule.attribute);
    }
    std::vector<Disclosure> out;
    for (const auto& attr : order) {
      std::vector<std::pair<std::size_t, Disclosure>*> mine;
      for (auto& f : found) {
        if (f.second.attribute == attr) mine.push_back(&f);
      }
      std::sort(mine.begin(), mine.end(), [](const auto* a, const auto* b) {
        return std::tie(a->second.span.begin, a->first) < std::tie(b->second.span.begin, b->first);
      });
      std::size_t free_from = 0;
      for (auto* f : mine) {
        if (f->second.span.begin < free_from) continue;
        free_from = f->second.span.end;
        out.push_back(std::move(f->second));
      }
    }
    return out;
  }

 private:
  std::optional<Disclosure> normalize(const DisclosureRule& rule, std::string capture) const {
    while (!capture.empty() && capture.back() == ' ') capture.pop_back();
    Disclosure d;
    d.attribute = rule.attribute;
    d.rule_id = rule.id;
    if (rule.normalizer == "age") {
      const auto age = text::parse_number<int>(capture);
      if (!age || *age < kMinPlausibleAge || *age > kMaxPlausibleAge) return std::nullopt;
      d.raw = capture;
      d.normalized = std::to_string(*age);
      return d;
    }
    if (rule.normalizer == "birth_year") {
      const auto year = text::parse_number<int>(capture);
      if (!year || *year < 1900 || *year > 2100) return std::nullopt;
      d.raw = capture;
      d.normalized = std::to_string(*year);
      return d;
    }
    const Vocabulary* vocab = vocabulary(std::string_view(rule.normalizer).substr(6));
    const auto match = vocab->lookup(capture);
    if (!match) return std::nullopt;
    d.raw = match->surface;
    d.normalized = match->entry->label;
    return d;
  }

  std::vector<DisclosureRule> rules_;
  std::unordered_map<std::string, Vocabulary> vocabularies_;
};

// ---------------------------------------------------------------------------
// Age arithmetic

enum class AgeKind { direct, birth_year };

struct AgeClaim {
  AgeKind kind = AgeKind::direct;
  int value = 0;                  // disclosed age or birth year
  std::int64_t disclosed_at = 0;  // epoch seconds of the disclosing post
};

struct AgeResult {
  std::optional<int> age;
  std::string note;  // set when the result was rejected
};

inline std::int64_t year_start(int year) {
  using namespace std::chrono;
  return duration_cast<seconds>(sys_days{std::chrono::year{year} / January / 1}.time_since_epoch()).count();
}

inline std::chrono::year_month_day civil_date(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  return year_month_day{floor<days>(sys_seconds{seconds{epoch_seconds}})};
}

// floor() of the calendar years elapsed from `from` to `to` (anniversary based).
inline int whole_years_between(std::int64_t from, std::int64_t to) {
  const auto a = civil_date(from);
  const auto b = civil_date(to);
  int years = static_cast<int>(b.year()) - static_cast<int>(a.year());
  const auto md = [](const std::chrono::year_month_day& d) {
    return std::pair(static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  };
  if (md(b) < md(a)) --years;
  return years;
}

// Direct statements hold for posts less than a year before or after the
// disclosure (elapsed in [-1, 1) years); further away the age is extrapolated as
// disclosed + floor(elapsed years). Birth years give post_year - birth_year.
// Results outside [13, 100] are rejected with a note.
inline AgeResult compute_age(const AgeClaim& claim, std::int64_t post_timestamp) {
  int age;
  if (claim.kind == AgeKind::birth_year) {
    age = static_cast<int>(civil_date(post_timestamp).year()) - claim.value;
  } else {
    const int elapsed = whole_years_between(claim.disclosed_at, post_timestamp);
    age = (elapsed == 0 || elapsed == -1) ? claim.value : claim.value + elapsed;
  }
  if (age < kMinPlausibleAge || age > kMaxPlausibleAge) return {std::nullopt, "implausible=" + std::to_string(age)};
  return {age, {}};
}

// ---------------------------------------------------------------------------
// Profiles

struct Claim {
  std::string value;   // normalized
  std::string raw;
  std::string rule_id;
  std::int64_t timestamp = std::numeric_limits<std::int64_t>::max();
  std::string instance_id;
  Span span;

  auto order_key() const { return std::tie(timestamp, instance_id, span.begin, rule_id); }
};

struct DemographicProfile {
  std::string user_id;
  std::map<std::string, Claim> claims;                    // earliest per attribute
  std::map<std::string, std::set<std::string>> observed;  // every distinct value per attribute

  bool empty() const noexcept { return claims.empty(); }

  void add(const std::string& attribute, Claim claim) {
    observed[attribute].insert(claim.value);
    auto it = claims.find(attribute);
    if (it == claims.end()) {
      claims.emplace(attribute, std::move(claim));
    } else if (claim.order_key() < it->second.order_key()) {
      it->second = std::move(claim);
    }
  }

  // Associative and commutative: earliest claim wins, observed sets union.
  void merge(const DemographicProfile& other) {
    for (const auto& [attr, claim] : other.claims) add(attr, claim);
    for (const auto& [attr, values] : other.observed) observed[attr].insert(values.begin(), values.end());
  }

  std::vector<std::string> conflicts(const std::string& attribute) const {
    std::vector<std::string> out;
    const auto c = claims.find(attribute);
    const auto o = observed.find(attribute);
    if (c == claims.end() || o == observed.end()) return out;
    for (const auto& v : o->second) {
      if (v != c->second.value) out.push_back(v);
    }
    return out;
  }
};

inline void add_disclosures(DemographicProfile& profile, const std::vector<Disclosure>& disclosures,
                            const std::string& instance_id, std::int64_t timestamp) {
  for (const auto& d : disclosures) {
    profile.add(d.attribute, Claim{d.normalized, d.raw, d.rule_id, timestamp, instance_id, d.span});
  }
}

struct UserDisclosures {
  std::string user_id;
  std::string instance_id;
  std::int64_t timestamp;
  std::vector<Disclosure> disclosures;
};

inline std::map<std::string, DemographicProfile> build_profiles(const std::vector<UserDisclosures>& batch) {
  std::map<std::string, DemographicProfile> out;
  for (const auto& u : batch) {
    auto& p = out[u.user_id];
    p.user_id = u.user_id;
    add_disclosures(p, u.disclosures, u.instance_id, u.timestamp);
  }
  return out;
}

// Per-instance demographic columns derived from a profile.
struct DemographicFields {
  std::optional<int> age;
  std::optional<std::string> gender, occupation, occupation_soc, country, city, religion;
  std::map<std::string, std::string> provenance;  // attribute -> note
};

inline std::string provenance_of(const Claim& c) {
  return c.rule_id + "@" + c.instance_id + ":" + std::to_string(c.span.begin) + "-" + std::to_string(c.span.end);
}

// Claims and posts without a timestamp use the disclosed age as-is; a birth
// year needs the post date.
inline DemographicFields resolve_fields(const DemographicProfile& profile, std::optional<std::int64_t> post_timestamp) {
  DemographicFields out;
  const auto note = [&](const std::string& attr, const Claim& c) {
    std::string p = provenance_of(c);
    const auto others = profile.conflicts(attr);
    if (!others.empty()) {
      p += ";conflicts=";
      for (std::size_t i = 0; i < others.size(); ++i) p += (i ? "," : "") + others[i];
    }
    return p;
  };
  const auto take = [&](const std::string& attr, std::optional<std::string>& field) {
    const auto it = profile.claims.find(attr);
    if (it == profile.claims.end()) return;
    field = it->second.value;
    out.provenance[attr] = note(attr, it->second);
  };
  take("gender", out.gender);
  take("country", out.country);
  take("city", out.city);
  take("religion", out.religion);
  if (const auto it = profile.claims.find("occupation"); it != profile.claims.end()) {
    out.occupation = it->second.raw;
    out.occupation_soc = it->second.value;
    out.provenance["occupation"] = note("occupation", it->second);
  }

  // Age: the earlier of a direct statement and a birth-year statement.
  const Claim* age_claim = nullptr;
  AgeKind kind = AgeKind::direct;
  for (const auto& [attr, k] : {std::pair{"age", AgeKind::direct}, std::pair{"birth_year", AgeKind::birth_year}}) {
    const auto it = profile.claims.find(attr);
    if (it == profile.claims.end()) continue;
    if (!age_claim || it->second.order_key() < age_claim->order_key()) {
      age_claim = &it->second;
      kind = k;
    }
  }
  if (age_claim) {
    const auto value = text::parse_number<int>(age_claim->value);
    if (value) {
      const bool dated = post_timestamp && age_claim->timestamp != std::numeric_limits<std::int64_t>::max();
      AgeResult result;
      if (kind == AgeKind::birth_year && !post_timestamp) {
        result.note = "undated";
      } else if (kind == AgeKind::direct && !dated) {
        result.age = *value;
      } else {
        result = compute_age({kind, *value, age_claim->timestamp}, *post_timestamp);
      }
      out.age = result.age;
      std::string p = provenance_of(*age_claim);
      if (!result.note.empty()) p += ";" + result.note;
      out.provenance["age"] = p;
    }
  }
  return out;
}

}  // namespace abcde
