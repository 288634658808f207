#pragma once

// Shared test helpers: fixture paths, scratch directories, the independent
// oracles the suites compare against, and the golden-corpus checker used by
// both the unit tests and the acceptance runner.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "abcde/abcde.hpp"
#include "json.hpp"

namespace abcde::testing {

namespace fs = std::filesystem;

inline fs::path source_path(const std::string& rel) { return fs::path(ABCDE_SOURCE_DIR) / rel; }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("abcde-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline RunConfig golden_config() { return RunConfig::load(source_path("config/golden.json")); }

// ---------------------------------------------------------------------------
// Matcher oracle: per lexicon, scan left to right; at each position take the
// longest phrase (3, 2, then 1 tokens) present in that lexicon and jump past
// it, otherwise advance one token.

struct NaiveHit {
  std::uint32_t lexicon;
  std::uint32_t start;
  std::uint32_t length;
  std::string phrase;
  double score;

  friend bool operator==(const NaiveHit&, const NaiveHit&) = default;
  friend bool operator<(const NaiveHit& a, const NaiveHit& b) {
    return std::tie(a.start, a.lexicon) < std::tie(b.start, b.lexicon);
  }
};

using PhraseScores = std::map<std::string, double>;

inline std::vector<NaiveHit> naive_matches(const std::vector<PhraseScores>& lexicons,
                                           const std::vector<std::string>& words) {
  std::vector<NaiveHit> out;
  for (std::uint32_t l = 0; l < lexicons.size(); ++l) {
    std::size_t i = 0;
    while (i < words.size()) {
      bool hit = false;
      for (std::size_t len = std::min<std::size_t>(3, words.size() - i); len >= 1; --len) {
        std::string phrase = words[i];
        for (std::size_t k = 1; k < len; ++k) phrase += " " + words[i + k];
        const auto it = lexicons[l].find(phrase);
        if (it != lexicons[l].end()) {
          out.push_back({l, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(len), phrase, it->second});
          i += len;
          hit = true;
          break;
        }
      }
      if (!hit) ++i;
    }
  }
  std::stable_sort(out.begin(), out.end());
  return out;
}

inline std::vector<NaiveHit> as_naive(const CompiledMatcher& m, const MatchSet& ms) {
  std::vector<NaiveHit> out;
  for (const auto& h : ms) out.push_back({h.lexicon, h.start, h.length, m.phrase(h.phrase), h.score});
  return out;
}

// Random lexicons over a small vocabulary so phrases collide and overlap often.
struct RandomCorpus {
  std::mt19937_64 rng;
  std::vector<std::string> vocab;

  explicit RandomCorpus(std::uint64_t seed, std::size_t vocab_size = 40) : rng(seed) {
    for (std::size_t i = 0; i < vocab_size; ++i) vocab.push_back("w" + std::to_string(i));
  }

  std::string word() { return vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)]; }

  std::string phrase(std::size_t len) {
    std::string p = word();
    for (std::size_t k = 1; k < len; ++k) p += " " + word();
    return p;
  }

  double score() {
    // Mix of exact threshold values and uniform draws.
    static constexpr double special[] = {0.0, 0.33, 0.66, 1.0, 0.3300000001, 0.6599999999};
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
      return special[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
    }
    return std::round(std::uniform_real_distribution<double>(0.0, 1.0)(rng) * 1000.0) / 1000.0;
  }

  PhraseScores lexicon(std::size_t max_phrases) {
    PhraseScores lex;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_phrases)(rng);
    std::discrete_distribution<std::size_t> length({5, 3, 2});
    while (lex.size() < n) lex.emplace(phrase(length(rng) + 1), score());
    return lex;
  }

  std::vector<std::string> words(std::size_t max_len) {
    std::vector<std::string> w(std::uniform_int_distribution<std::size_t>(0, max_len)(rng));
    for (auto& x : w) x = word();
    return w;
  }
};

inline ScoreLexicon to_score_lexicon(const std::string& name, const PhraseScores& p) {
  ScoreLexicon lex(name);
  for (const auto& [k, v] : p) lex.insert_normalized(k, v);
  return lex;
}

// ---------------------------------------------------------------------------
// Feature oracles over plain word vectors.

// Mean and count of one lexicon's occurrences, from the naive scan.
struct BruteAffect {
  std::size_t count = 0;
  std::optional<double> avg;
};

inline BruteAffect brute_affect(const PhraseScores& lex, const std::vector<std::string>& words) {
  BruteAffect out;
  double sum = 0;
  for (const auto& h : naive_matches({lex}, words)) {
    ++out.count;
    sum += h.score;
  }
  if (out.count) out.avg = sum / static_cast<double>(out.count);
  return out;
}

// BPM lists: a naive body-part hit at i counts for pronoun words[i-1].
inline std::map<std::string, std::vector<std::string>> brute_bpm(const std::set<std::string>& body,
                                                                 const std::vector<std::string>& words) {
  PhraseScores lex;
  for (const auto& b : body) lex.emplace(b, 0.0);
  std::map<std::string, std::vector<std::string>> out;
  static const std::set<std::string> poss = {"my", "your", "his", "her", "its", "our", "their"};
  for (const auto& h : naive_matches({lex}, words)) {
    if (h.start > 0 && poss.count(words[h.start - 1])) out[words[h.start - 1]].push_back(h.phrase);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic Reddit corpus: sentences built from shipped lexicon terms, body
// parts after possessives, and disclosure frames, with a share of records
// every filter should drop.

inline void write_synthetic_reddit(const fs::path& path, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto pick = [&](const std::vector<std::string>& v) -> const std::string& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  std::vector<std::string> terms;
  for (const char* f : {"valence", "arousal", "anger", "joy", "fear", "warmth", "anxiety"}) {
    std::istringstream in(slurp(source_path(std::string("data/lexicons/") + f + ".tsv")));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line[0] != '#') terms.push_back(line.substr(0, line.find('\t')));
    }
  }
  std::vector<std::string> body;
  {
    std::istringstream in(slurp(source_path("data/body_parts.txt")));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line[0] != '#') body.push_back(line.substr(0, line.find('\t')));
    }
  }
  const std::vector<std::string> filler = {"the", "a", "and", "it", "was", "then", "we", "you", "she", "will",
                                           "go", "walked", "remember", "think", "her", "book", "today", "so"};
  const std::vector<std::string> poss = {"my", "your", "his", "her", "its", "our", "their"};
  const std::vector<std::string> frames = {"I am 24 years old.", "I was born in 1990.", "I'm a nurse.",
                                           "I live in Toronto.", "I'm from Canada.", "I am a woman.",
                                           "I'm a devout Catholic.", "I work as a teacher.", "I am 31"};
  std::ofstream out(path, std::ios::binary);
  for (std::size_t i = 0; i < n; ++i) {
    const int kind = std::uniform_int_distribution<int>(0, 99)(rng);
    std::string text;
    const std::size_t len = std::uniform_int_distribution<std::size_t>(5, 40)(rng);
    for (std::size_t w = 0; w < len; ++w) {
      const int r = std::uniform_int_distribution<int>(0, 9)(rng);
      if (!text.empty()) text += ' ';
      if (r < 3) text += pick(terms);
      else if (r < 4) text += pick(poss) + " " + pick(body);
      else text += pick(filler);
    }
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) text = pick(frames) + " " + text;
    nlohmann::json j;
    j["id"] = "s" + std::to_string(i);
    j["author"] = "u" + std::to_string(std::uniform_int_distribution<std::size_t>(0, n / 8 + 1)(rng));
    j["created_utc"] = 1200000000 + static_cast<std::int64_t>(rng() % 500000000);
    j["subreddit"] = "synthetic";
    if (kind < 3) j["body"] = "too short";
    else if (kind < 5) j["over_18"] = true;
    if (!j.contains("body")) j["body"] = text;
    if (kind == 5) {
      out << "{not json\n";
      continue;
    }
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Aggregation oracle: random record rows plus a direct recount of one group.

inline const std::vector<std::string> kAggColumns = {"source",  "year",  "word_count",  "match_count", "x_flag",
                                                    "x_count", "x_avg", "demo_gender", "bpm_my"};
inline const std::vector<std::string> kAggFeatures = {"x_flag", "x_count", "x_avg", "demo_gender", "bpm_my"};

inline std::vector<Value> random_agg_row(std::mt19937_64& rng) {
  const auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<Value> row(kAggColumns.size());
  static const std::vector<std::string> sources = {"reddit", "books", "ai:x"};
  row[0] = sources[static_cast<std::size_t>(u(0, 2))];
  if (u(0, 9)) row[1] = std::int64_t{1995 + u(0, 30)};
  const auto words = std::int64_t{u(0, 50)};
  row[2] = words;
  row[3] = std::int64_t{u(0, 5)};
  row[4] = u(0, 1) == 1;
  row[5] = std::int64_t{u(0, 6)};
  if (u(0, 3)) row[6] = u(0, 20) / 20.0;  // exact bin edges included
  if (u(0, 2) == 0) row[7] = std::string(u(0, 1) ? "female" : "male");
  std::vector<std::string> bpm;
  for (int k = u(0, 3); k > 0; --k) bpm.push_back(u(0, 1) ? "hand" : "heart");
  row[8] = bpm;
  return row;
}

// Independent recount of one group's statistics straight from the rows.
struct Recount {
  double n = 0, flag = 0, count = 0, density = 0, avg = 0, present = 0, absent = 0, nonempty = 0;
  std::array<double, kHistogramBins> bins{};
  std::map<std::string, double> items;
};

inline Recount recount(const std::vector<std::vector<Value>>& rows, const std::string& source, bool weighted) {
  Recount r;
  for (const auto& row : rows) {
    if (std::get<std::string>(row[0]) != source) continue;
    const double w = weighted ? static_cast<double>(std::get<std::int64_t>(row[3])) : 1.0;
    r.n += w;
    if (std::get<bool>(row[4])) r.flag += w;
    const double c = static_cast<double>(std::get<std::int64_t>(row[5]));
    r.count += c * w;
    const auto words = std::get<std::int64_t>(row[2]);
    if (words > 0) r.density += c / static_cast<double>(words) * w;
    if (const auto* a = std::get_if<double>(&row[6])) {
      r.avg += *a * w;
      r.present += w;
      // Reference binning: the largest k with k/20 <= a, capped at 19.
      std::size_t k = 0;
      while (k + 1 < kHistogramBins && static_cast<double>(k + 1) / 20.0 <= *a + 1e-12) ++k;
      r.bins[k] += 1;
    } else {
      r.absent += w;
    }
    const auto& list = std::get<std::vector<std::string>>(row[8]);
    std::set<std::string> distinct(list.begin(), list.end());
    if (!list.empty()) r.nonempty += w;
    for (const auto& i : distinct) r.items[i] += w;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Golden corpus

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline std::string describe(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "null";
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return text::format_double(x);
        else if constexpr (std::is_same_v<T, std::string>) return "\"" + x + "\"";
        else {
          std::string s = "[";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i];
          return s + "]";
        }
      },
      v);
}

struct GoldenResult {
  std::size_t instances = 0;
  std::size_t columns_checked = 0;
  std::vector<std::string> mismatches;
};

// Runs the full pipeline over the golden input and compares every column of
// every record with the hand-computed expectations.
inline GoldenResult check_golden(const fs::path& scratch) {
  using nlohmann::json;
  GoldenResult res;
  const auto fail = [&](std::string msg) { res.mismatches.push_back(std::move(msg)); };

  const json expected = json::parse(slurp(source_path("tests/fixtures/golden/expected.json")));
  auto cfg = golden_config();
  cfg.workers = 2;
  const auto annotator = build_annotator(cfg);
  const auto out = scratch / "golden.jsonl";
  const auto report = run(annotator, cfg, {source_path("tests/fixtures/golden/input.jsonl"), out, scratch / "golden.report.json"});

  if (report.ingest.records_read != expected["records_read"].get<std::uint64_t>()) fail("records_read");
  if (report.ingest.records_used != expected["records_used"].get<std::uint64_t>()) fail("records_used");
  std::map<std::string, std::uint64_t> reasons = expected["skip_reasons"];
  if (report.ingest.skip_reasons != reasons) fail("skip_reasons");

  std::ifstream in(out, std::ios::binary);
  RecordReader reader(in);
  const auto& cols = reader.columns();
  std::vector<std::vector<Value>> rows;
  for (std::vector<Value> row; reader.next(row);) rows.push_back(row);
  const auto& inst = expected["instances"];
  if (rows.size() != inst.size()) {
    fail("record count " + std::to_string(rows.size()) + " != " + std::to_string(inst.size()));
    return res;
  }

  const auto list_of = [](const json& j, const char* key) {
    std::set<std::string> s;
    if (j.contains(key)) {
      for (const auto& x : j[key]) s.insert(x.get<std::string>());
    }
    return s;
  };

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& e = inst[r];
    const std::string native = e["id"];
    const std::string iid = make_instance_id("reddit", native);
    const json hits = e.value("hits", json::object());
    const json bpm = e.value("bpm", json::object());
    const json demo = e.value("demo", json::object());
    const json prov = e.value("prov", json::object());
    const auto cog = list_of(e, "cog");
    const auto pron = list_of(e, "pron");
    const auto tense = list_of(e, "tense");
    const std::int64_t t = e["t"];
    std::set<std::string> used_hits;

    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string& col = cols[c];
      const Value& got = rows[r][c];
      const auto expect = [&](const Value& want) {
        if (got != want) fail(native + "." + col + ": got " + describe(got) + ", want " + describe(want));
      };
      const auto ends = [&](std::string_view s) { return col.size() > s.size() && col.ends_with(s); };
      ++res.columns_checked;

      if (col == "instance_id") expect(iid);
      else if (col == "source") expect(std::string("reddit"));
      else if (col == "timestamp") expect(t);
      else if (col == "year") expect(static_cast<std::int64_t>(static_cast<int>(civil_date(t).year())));
      else if (col == "user_id") expect(e["user"].is_null() ? Value{} : Value{e["user"].get<std::string>()});
      else if (col == "word_count") expect(e["words"].get<std::int64_t>());
      else if (col == "match_count" || col == "error") expect(Value{});
      else if (ends("_avg") || ends("_count") || ends("_flag")) {
        const bool cog_col = col.starts_with("cog_");
        const bool pron_col = col.starts_with("pron_");
        const bool tense_col = col.starts_with("tense_");
        if (col == "bpm_flag") {
          expect(!bpm.empty());
        } else if (col == "cog_any_flag") {
          expect(!cog.empty());
        } else if (cog_col) {
          expect(cog.count(col.substr(4, col.size() - 9)) > 0);
        } else if (pron_col) {
          expect(pron.count(col.substr(5, col.size() - 10)) > 0);
        } else if (tense_col) {
          expect(tense.count(col.substr(6, col.size() - 11)) > 0);
        } else {
          const auto us = col.rfind('_');
          const std::string lex = col.substr(0, us);
          const std::string mode = col.substr(us + 1);
          const json scores = hits.value(lex, json::array());
          if (!scores.empty()) used_hits.insert(lex);
          double sum = 0;
          for (const auto& s : scores) sum += s.get<double>();
          if (mode == "count") expect(static_cast<std::int64_t>(scores.size()));
          else if (mode == "flag") expect(!scores.empty());
          else if (scores.empty()) expect(Value{});
          else {
            const double want = sum / static_cast<double>(scores.size());
            const double* d = std::get_if<double>(&got);
            const std::int64_t* n = std::get_if<std::int64_t>(&got);
            const std::optional<double> g = d ? std::optional(*d) : n ? std::optional(static_cast<double>(*n)) : std::nullopt;
            if (!g || !close(*g, want, 1e-12)) {
              fail(native + "." + col + ": got " + describe(got) + ", want " + text::format_double(want));
            }
          }
        }
      } else if (col.starts_with("bpm_")) {
        const std::string p = col.substr(4);
        std::vector<std::string> want;
        if (bpm.contains(p)) want = bpm[p].get<std::vector<std::string>>();
        expect(want);
      } else if (col == "demo_age") {
        expect(demo.contains("age") ? Value{demo["age"].get<std::int64_t>()} : Value{});
      } else if (col.starts_with("demo_") && ends("_provenance")) {
        const std::string attr = col.substr(5, col.size() - 16);
        if (!prov.contains(attr)) {
          expect(Value{});
        } else {
          std::string want = prov[attr];
          const auto at = want.find('@');
          const auto colon = want.find(':', at);
          want.replace(at + 1, colon - at - 1, make_instance_id("reddit", want.substr(at + 1, colon - at - 1)));
          expect(want);
        }
      } else if (col.starts_with("demo_")) {
        const std::string attr = col.substr(5);
        expect(demo.contains(attr) ? Value{demo[attr].get<std::string>()} : Value{});
      } else {
        fail("unhandled column " + col);
      }
    }
    for (const auto& [lex, v] : hits.items()) {
      if (!used_hits.count(lex)) fail(native + ": expectation names unknown lexicon '" + lex + "'");
    }
    ++res.instances;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Demographic fixtures: attribute <TAB> expected value or '-' <TAB> text

struct DemoFixture {
  std::size_t line;
  std::string attribute;
  std::optional<std::string> expected;
  std::string text;
};

inline std::vector<DemoFixture> load_demo_fixtures() {
  std::vector<DemoFixture> out;
  std::ifstream in(source_path("tests/fixtures/demographics.tsv"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 3) throw std::runtime_error("bad fixture line " + std::to_string(n));
    DemoFixture d{n, std::string(f[0]), std::nullopt, std::string(f[2])};
    if (f[1] != "-") d.expected = std::string(f[1]);
    out.push_back(std::move(d));
  }
  return out;
}

inline RuleSet golden_rules() {
  const auto cfg = golden_config();
  RuleSet rules;
  for (const auto& [name, path] : cfg.vocabularies) rules.add_vocabulary(name, Vocabulary::load(path.string()));
  rules.load_rules(cfg.rules->string());
  return rules;
}

// The value a fixture's attribute resolves to for a single dated post.
// occupation fixtures compare "surface|soc".
inline std::optional<std::string> resolve_fixture(const RuleSet& rules, const DemoFixture& f, std::int64_t ts) {
  DemographicProfile profile;
  add_disclosures(profile, rules.extract(f.text), "fixture", ts);
  const auto fields = resolve_fields(profile, ts);
  if (f.attribute == "age") return fields.age ? std::optional(std::to_string(*fields.age)) : std::nullopt;
  if (f.attribute == "gender") return fields.gender;
  if (f.attribute == "country") return fields.country;
  if (f.attribute == "city") return fields.city;
  if (f.attribute == "religion") return fields.religion;
  if (f.attribute == "occupation") {
    if (!fields.occupation) return std::nullopt;
    return *fields.occupation + "|" + *fields.occupation_soc;
  }
  throw std::runtime_error("unknown fixture attribute " + f.attribute);
}

}  // namespace abcde::testing
