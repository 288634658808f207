#pragma once

// Annotation context, run configuration, and the two-pass run.
//
// Pass 1 (only when demographic columns are enabled) extracts disclosures from
// every instance and merges them into per-user profiles. Pass 2 re-reads the
// input, annotates batches in parallel, joins each instance with its user's
// profile, and writes records in input order. Instances without a user id use
// their own disclosures.
//
// Config file (JSON; relative paths resolve against the config's directory):
//
//   {
//     "lexicons": {
//       "score": [{"name": "valence", "path": "vad/valence.tsv", "thresholds": true, "rescale": false}],
//       "cognition": "cognition.tsv",            // or {"name": ..., "path": ...}
//       "bpm": "body_parts.txt"
//     },
//     "thresholds": {"high_min": 0.66, "low_max": 0.33},
//     "features": {"pronouns": true, "tense": true, "demographics": true, "bpm_any_count": false},
//     "morph": "morph.tsv",
//     "demographics": {"rules": "rules.tsv", "vocabularies": {"gender": "gender.tsv"}},
//     "adapter": "reddit", "field_map": {}, "dataset": "", "source": "",
//     "format": "jsonl", "workers": 4, "batch_size": 4096
//   }
//
// The config digest covers everything that can change output bytes (lexicon
// and rule file contents, thresholds, feature switches, adapter settings,
// format) and nothing that cannot (paths, workers, batch size).

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "abcde/affect.hpp"
#include "abcde/body.hpp"
#include "abcde/cognition.hpp"
#include "abcde/demographics.hpp"
#include "abcde/error.hpp"
#include "abcde/ingestion.hpp"
#include "abcde/lexicon.hpp"
#include "abcde/matcher.hpp"
#include "abcde/record.hpp"
#include "abcde/registry.hpp"
#include "abcde/tokenizer.hpp"
#include "json.hpp"

namespace abcde {

// ---------------------------------------------------------------------------
// Annotator

class Annotator {
 public:
  Annotator(LexiconRegistry registry, std::optional<MorphTable> morph, std::optional<RuleSet> rules)
      : registry_(std::move(registry)), morph_(std::move(morph)), rules_(std::move(rules)) {
    const auto& opt = registry_.options();
    if (opt.tense && !morph_) throw ConfigError("tense features need a morphology table");
    if (opt.demographics && !rules_) throw ConfigError("demographic features need a rules file");

    std::vector<LexiconRef> refs;
    for (const auto& lex : registry_.score_lexicons()) refs.emplace_back(std::cref(lex));
    if (registry_.cognition()) refs.emplace_back(std::cref(*registry_.cognition()));
    if (registry_.bpm()) refs.emplace_back(std::cref(*registry_.bpm()));
    matcher_ = CompiledMatcher(refs);
    score_n_ = static_cast<std::uint32_t>(registry_.score_lexicons().size());
    cognition_lex_ = score_n_;
    bpm_lex_ = score_n_ + (registry_.cognition() ? 1 : 0);

    const auto& f = registry_.features();
    col_.instance_id = f.at("instance_id");
    if (!registry_.score_lexicons().empty()) col_.affect = f.at(registry_.score_lexicons().front().name() + "_avg");
    if (registry_.bpm()) col_.bpm = f.at("bpm_flag");
    if (registry_.cognition()) col_.cognition = f.at(registry_.cognition_columns().front());
    if (opt.pronouns) col_.pronouns = f.at("pron_first_poss_flag");
    if (opt.tense) col_.tense = f.at("tense_past_flag");
    if (opt.demographics) col_.demographics = f.at("demo_age");
  }

  const LexiconRegistry& registry() const noexcept { return registry_; }
  const FeatureRegistry& columns() const noexcept { return registry_.features(); }
  const CompiledMatcher& matcher() const noexcept { return matcher_; }
  const MorphTable* morph() const noexcept { return morph_ ? &*morph_ : nullptr; }
  const RuleSet* rules() const noexcept { return rules_ ? &*rules_ : nullptr; }

  // Disclosures in the instance text; empty when demographics are off or the
  // text is not valid UTF-8.
  std::vector<Disclosure> disclosures(const TextInstance& inst) const {
    if (!registry_.options().demographics || !text::valid_utf8(inst.text)) return {};
    return rules_->extract(inst.text);
  }

  // `profile` is the instance's user profile, or null when the user disclosed
  // nothing. Instances without a user id fall back to their own disclosures.
  FeatureRecord annotate(const TextInstance& inst, const DemographicProfile* profile = nullptr) const {
    FeatureRecord rec;
    auto& v = rec.values;
    v.assign(columns().size(), Value{});
    std::size_t c = col_.instance_id;
    v[c++] = inst.instance_id;
    v[c++] = inst.source;
    if (inst.timestamp) v[c] = *inst.timestamp;
    ++c;
    if (auto y = inst.effective_year()) v[c] = static_cast<std::int64_t>(*y);
    ++c;
    if (inst.user_id) v[c] = *inst.user_id;
    ++c;
    const std::size_t word_col = c++;
    const std::size_t match_col = c++;
    const std::size_t error_col = c++;
    if (const auto it = inst.extra.find("match_count"); it != inst.extra.end()) {
      if (auto n = text::parse_number<std::int64_t>(it->second)) v[match_col] = *n;
    }

    TokenSequence seq;
    if (text::trim(inst.text).empty()) {
      v[error_col] = std::string("empty_text");
    } else {
      try {
        seq = tokenize(inst.text);
      } catch (const Utf8Error&) {
        v[error_col] = std::string("invalid_utf8");
      }
    }
    v[word_col] = static_cast<std::int64_t>(seq.word_count());
    const MatchSet matches = matcher_.find_matches(seq);

    if (col_.affect) {
      std::size_t k = *col_.affect;
      for (const auto& s : score_all(seq, matches, 0, score_n_)) {
        if (s.avg) v[k] = *s.avg;
        v[k + 1] = static_cast<std::int64_t>(s.count);
        v[k + 2] = s.flag;
        k += 3;
      }
    }
    if (col_.bpm) {
      const auto bpm = detect_bpm(seq, matches, matcher_, bpm_lex_);
      std::size_t k = *col_.bpm;
      v[k++] = bpm.flag;
      for (const auto& list : bpm.by_pronoun) v[k++] = list;
      if (registry_.options().bpm_any_count) v[k] = static_cast<std::int64_t>(bpm.any_count);
    }
    if (col_.cognition) {
      const auto cog = detect_cognition(matches, cognition_lex_, registry_.cognition()->categories().size());
      std::size_t k = *col_.cognition;
      for (bool f : cog.flags) v[k++] = f;
      v[k] = cog.any;
    }
    if (col_.pronouns) {
      const auto p = detect_pronouns(seq, morph());
      std::size_t k = *col_.pronouns;
      for (std::size_t person = 0; person < 3; ++person) {
        v[k++] = p.flags[person][1];
        v[k++] = p.flags[person][0];
      }
    }
    if (col_.tense) {
      const auto t = detect_tense(seq, *morph_);
      std::size_t k = *col_.tense;
      v[k++] = t.past;
      v[k++] = t.present;
      v[k] = t.future;
    }
    if (col_.demographics) {
      std::optional<DemographicProfile> local;
      if (!inst.user_id) {
        local.emplace();
        add_disclosures(*local, disclosures(inst), inst.instance_id,
                        inst.effective_timestamp().value_or(std::numeric_limits<std::int64_t>::max()));
        profile = &*local;
      }
      if (profile) write_demographics(v, resolve_fields(*profile, inst.effective_timestamp()));
    }
    return rec;
  }

 private:
  void write_demographics(std::vector<Value>& v, const DemographicFields& d) const {
    std::size_t k = *col_.demographics;
    const auto put = [&](const std::optional<std::string>& s) {
      if (s) v[k] = *s;
      ++k;
    };
    if (d.age) v[k] = static_cast<std::int64_t>(*d.age);
    ++k;
    put(d.gender);
    put(d.occupation);
    put(d.occupation_soc);
    put(d.country);
    put(d.city);
    put(d.religion);
    for (auto attr : kDemographicAttributes) {
      if (const auto it = d.provenance.find(std::string(attr)); it != d.provenance.end()) v[k] = it->second;
      ++k;
    }
  }

  struct Columns {
    std::size_t instance_id = 0;
    std::optional<std::size_t> affect, bpm, cognition, pronouns, tense, demographics;
  };

  LexiconRegistry registry_;
  std::optional<MorphTable> morph_;
  std::optional<RuleSet> rules_;
  CompiledMatcher matcher_;
  std::uint32_t score_n_ = 0, cognition_lex_ = 0, bpm_lex_ = 0;
  Columns col_;
};

// ---------------------------------------------------------------------------
// Run configuration

struct ScoreSource {
  std::string name;
  std::filesystem::path path;
  bool thresholds = false;
  bool rescale = false;
};

struct NamedPath {
  std::string name;
  std::filesystem::path path;
};

struct RunConfig {
  std::vector<ScoreSource> score;
  std::optional<NamedPath> cognition;
  std::optional<NamedPath> bpm;
  std::optional<std::filesystem::path> morph;
  std::optional<std::filesystem::path> rules;
  std::map<std::string, std::filesystem::path> vocabularies;
  ThresholdConfig thresholds;
  RegistryOptions features{true, true, true, false};
  std::string adapter;
  AdapterOptions adapter_options;
  OutputFormat format = OutputFormat::jsonl;
  unsigned workers = 1;
  std::size_t batch_size = 4096;

  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    const auto resolve = [&](const nlohmann::json& p, const std::string& what) {
      if (!p.is_string() || p.get<std::string>().empty()) throw ConfigError(what + " must be a path string");
      std::filesystem::path path = p.get<std::string>();
      return path.is_absolute() ? path : base_dir / path;
    };
    const auto named = [&](const nlohmann::json& e, const std::string& fallback, const std::string& what) {
      if (e.is_string()) return NamedPath{fallback, resolve(e, what)};
      if (!e.is_object() || !e.contains("path")) throw ConfigError(what + " needs a path");
      return NamedPath{e.value("name", fallback), resolve(e["path"], what)};
    };
    try {
      if (j.contains("lexicons")) {
        const auto& lx = j["lexicons"];
        const auto score = lx.value("score", nlohmann::json::array());
        for (const auto& e : score) {
          if (!e.is_object() || !e.contains("name") || !e.contains("path")) {
            throw ConfigError("each score lexicon needs a name and a path");
          }
          cfg.score.push_back({e["name"].get<std::string>(), resolve(e["path"], "score lexicon path"),
                               e.value("thresholds", false), e.value("rescale", false)});
        }
        if (lx.contains("cognition")) cfg.cognition = named(lx["cognition"], "cognition", "cognition lexicon");
        if (lx.contains("bpm")) cfg.bpm = named(lx["bpm"], "bpm", "body-part lexicon");
      }
      if (j.contains("thresholds")) {
        cfg.thresholds.high_min = j["thresholds"].value("high_min", cfg.thresholds.high_min);
        cfg.thresholds.low_max = j["thresholds"].value("low_max", cfg.thresholds.low_max);
      }
      if (j.contains("features")) {
        const auto& f = j["features"];
        cfg.features.pronouns = f.value("pronouns", cfg.features.pronouns);
        cfg.features.tense = f.value("tense", cfg.features.tense);
        cfg.features.demographics = f.value("demographics", cfg.features.demographics);
        cfg.features.bpm_any_count = f.value("bpm_any_count", cfg.features.bpm_any_count);
      }
      if (j.contains("morph")) cfg.morph = resolve(j["morph"], "morph");
      if (j.contains("demographics")) {
        const auto& d = j["demographics"];
        if (d.contains("rules")) cfg.rules = resolve(d["rules"], "demographics.rules");
        const auto vocabularies = d.value("vocabularies", nlohmann::json::object());
        for (const auto& [name, p] : vocabularies.items()) {
          cfg.vocabularies[name] = resolve(p, "vocabulary '" + name + "'");
        }
      }
      cfg.adapter = j.value("adapter", std::string());
      const auto field_map = j.value("field_map", nlohmann::json::object());
      for (const auto& [k, val] : field_map.items()) {
        cfg.adapter_options.field_map[k] = val.get<std::string>();
      }
      cfg.adapter_options.dataset = j.value("dataset", std::string());
      cfg.adapter_options.source = j.value("source", std::string());
      const auto fmt = j.value("format", std::string("jsonl"));
      const auto parsed = parse_format(fmt);
      if (!parsed) throw ConfigError("unknown output format '" + fmt + "'");
      cfg.format = *parsed;
      const auto workers = j.value("workers", 1);
      if (workers < 1) throw ConfigError("workers must be at least 1");
      cfg.workers = static_cast<unsigned>(workers);
      const auto batch = j.value("batch_size", 4096);
      if (batch < 1) throw ConfigError("batch_size must be at least 1");
      cfg.batch_size = static_cast<std::size_t>(batch);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad config: ") + e.what());
    }
    return cfg;
  }

  static RunConfig load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return from_json(j, path.parent_path());
  }

  // Every referenced file exists and the settings are coherent. Runs before
  // any data is read.
  void validate() const {
    try {
      thresholds.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
    const auto need = [](const std::filesystem::path& p, const std::string& what) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(p, ec)) throw ConfigError(what + " '" + p.string() + "' does not exist");
    };
    for (const auto& s : score) need(s.path, "score lexicon");
    if (cognition) need(cognition->path, "cognition lexicon");
    if (bpm) need(bpm->path, "body-part lexicon");
    if (morph) need(*morph, "morphology table");
    if (rules) need(*rules, "demographic rules");
    for (const auto& [name, p] : vocabularies) need(p, "vocabulary");
    if (features.tense && !morph) throw ConfigError("tense features are on but no morph table is configured");
    if (features.demographics && !rules) throw ConfigError("demographic features are on but no rules are configured");
  }

  std::string digest() const {
    const auto file_hash = [](const std::filesystem::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      return text::Fnv1a().update(ss.str()).hex();
    };
    nlohmann::ordered_json j;
    for (const auto& s : score) {
      j["score"].push_back({{"name", s.name}, {"file", file_hash(s.path)}, {"thresholds", s.thresholds},
                            {"rescale", s.rescale}});
    }
    if (cognition) j["cognition"] = {{"name", cognition->name}, {"file", file_hash(cognition->path)}};
    if (bpm) j["bpm"] = {{"name", bpm->name}, {"file", file_hash(bpm->path)}};
    if (morph) j["morph"] = file_hash(*morph);
    if (rules) j["rules"] = file_hash(*rules);
    for (const auto& [name, p] : vocabularies) j["vocabularies"][name] = file_hash(p);
    j["thresholds"] = {text::format_double(thresholds.high_min), text::format_double(thresholds.low_max)};
    j["features"] = {features.pronouns, features.tense, features.demographics, features.bpm_any_count};
    j["adapter"] = adapter;
    j["field_map"] = adapter_options.field_map;
    j["dataset"] = adapter_options.dataset;
    j["source"] = adapter_options.source;
    j["format"] = format == OutputFormat::csv ? "csv" : "jsonl";
    return text::Fnv1a().update(j.dump()).hex();
  }
};

inline Annotator build_annotator(const RunConfig& cfg) {
  cfg.validate();
  try {
    std::vector<ScoreLexicon> lexicons;
    std::vector<std::string> thresholded;
    for (const auto& s : cfg.score) {
      lexicons.push_back(load_score_lexicon(s.path.string(), s.name, ScoreLoadOptions{s.rescale}));
      if (s.thresholds) thresholded.push_back(s.name);
    }
    std::optional<CategoryLexicon> cognition;
    if (cfg.cognition) cognition = load_category_lexicon(cfg.cognition->path.string(), cfg.cognition->name);
    std::optional<PhraseLexicon> bpm;
    if (cfg.bpm) bpm = load_phrase_lexicon(cfg.bpm->path.string(), cfg.bpm->name);
    std::optional<MorphTable> morph;
    if (cfg.morph) morph = MorphTable::load(cfg.morph->string());
    std::optional<RuleSet> rules;
    if (cfg.features.demographics && cfg.rules) {
      rules.emplace();
      for (const auto& [name, p] : cfg.vocabularies) rules->add_vocabulary(name, Vocabulary::load(p.string()));
      rules->load_rules(cfg.rules->string());
    }
    auto registry = build_registry(expand_thresholds(std::move(lexicons), thresholded, cfg.thresholds),
                                   std::move(cognition), std::move(bpm), cfg.features);
    return Annotator(std::move(registry), std::move(morph), std::move(rules));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // Lexicon parse and validation failures are configuration problems.
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Parallel helpers

// Calls fn(i) for i in [0, n) on up to `workers` threads. Rethrows the first
// exception after all threads finish.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Run

struct RunReport {
  IngestStats ingest;
  std::uint64_t annotated = 0;
  std::uint64_t errors = 0;
  std::map<std::string, std::uint64_t> error_reasons;
  std::map<std::string, std::uint64_t> demographic_hits;  // per rule id
  std::uint64_t profiles = 0;
  std::string config_digest;
  std::size_t columns = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["config_digest"] = config_digest;
    j["columns"] = columns;
    j["ingested"] = ingest.records_read;
    j["used"] = ingest.records_used;
    j["skipped"] = ingest.records_skipped;
    j["skip_reasons"] = ingest.skip_reasons;
    j["emitted"] = ingest.instances_emitted;
    j["annotated"] = annotated;
    j["errors"] = errors;
    j["error_reasons"] = error_reasons;
    j["profiles"] = profiles;
    j["demographic_hits"] = demographic_hits;
    return j;
  }
};

struct RunPaths {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path report;  // defaults to <output>.report.json
};

// Pass 1: per-user profiles plus per-rule hit counts over all instances.
inline std::map<std::string, DemographicProfile> collect_profiles(const Annotator& annotator, const RunConfig& cfg,
                                                                  const std::filesystem::path& input,
                                                                  std::map<std::string, std::uint64_t>& hits) {
  std::map<std::string, DemographicProfile> profiles;
  auto adapter = make_adapter(cfg.adapter, cfg.adapter_options);
  std::vector<std::vector<Disclosure>> found;
  ingest_batches(input.string(), *adapter, cfg.batch_size, [&](const std::vector<TextInstance>& batch) {
    found.assign(batch.size(), {});
    parallel_for(batch.size(), cfg.workers, [&](std::size_t i) { found[i] = annotator.disclosures(batch[i]); });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      for (const auto& d : found[i]) ++hits[d.rule_id];
      if (!batch[i].user_id || found[i].empty()) continue;
      auto& p = profiles[*batch[i].user_id];
      p.user_id = *batch[i].user_id;
      add_disclosures(p, found[i], batch[i].instance_id,
                      batch[i].effective_timestamp().value_or(std::numeric_limits<std::int64_t>::max()));
    }
  });
  return profiles;
}

// Annotates `paths.input` into `paths.output`. Output goes to a .partial file
// that is renamed on success and removed on failure.
inline RunReport run(const Annotator& annotator, const RunConfig& cfg, const RunPaths& paths) {
  RunReport report;
  report.config_digest = cfg.digest();
  report.columns = annotator.columns().size();
  if (cfg.adapter.empty()) throw ConfigError("no adapter configured");
  make_adapter(cfg.adapter, cfg.adapter_options);  // fail fast on adapter settings

  const auto partial = std::filesystem::path(paths.output.string() + ".partial");
  try {
    std::map<std::string, DemographicProfile> profiles;
    if (annotator.registry().options().demographics) {
      profiles = collect_profiles(annotator, cfg, paths.input, report.demographic_hits);
    }
    report.profiles = profiles.size();

    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + partial.string() + "'");
    const auto& cols = annotator.columns();
    out << meta_line(cfg.format, report.config_digest, cols.size()) << '\n';
    if (cfg.format == OutputFormat::csv) out << csv_header(cols) << '\n';

    auto adapter = make_adapter(cfg.adapter, cfg.adapter_options);
    std::vector<std::string> lines;
    std::vector<std::string> errors;
    ingest_batches(paths.input.string(), *adapter, cfg.batch_size, [&](const std::vector<TextInstance>& batch) {
      lines.assign(batch.size(), {});
      errors.assign(batch.size(), {});
      parallel_for(batch.size(), cfg.workers, [&](std::size_t i) {
        const auto& inst = batch[i];
        const DemographicProfile* profile = nullptr;
        if (inst.user_id) {
          if (const auto it = profiles.find(*inst.user_id); it != profiles.end()) profile = &it->second;
        }
        const auto rec = annotator.annotate(inst, profile);
        if (const auto* err = std::get_if<std::string>(&rec.values[cols.at("error")])) errors[i] = *err;
        lines[i] = cfg.format == OutputFormat::csv ? to_csv(cols, rec) : to_jsonl(cols, rec);
      });
      for (std::size_t i = 0; i < batch.size(); ++i) {
        out << lines[i] << '\n';
        ++report.annotated;
        if (!errors[i].empty()) {
          ++report.errors;
          ++report.error_reasons[errors[i]];
        }
      }
      if (!out) throw Error("write to '" + partial.string() + "' failed");
    });
    report.ingest = adapter->stats();
    out.close();
    if (!out) throw Error("write to '" + partial.string() + "' failed");
    std::filesystem::rename(partial, paths.output);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(partial, ec);
    throw;
  }

  const auto report_path = paths.report.empty() ? std::filesystem::path(paths.output.string() + ".report.json")
                                                 : paths.report;
  std::ofstream rj(report_path, std::ios::binary | std::ios::trunc);
  rj << report.to_json().dump(2) << '\n';
  return report;
}

}  // namespace abcde
