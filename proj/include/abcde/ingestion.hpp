#pragma once

// Source adapters: raw corpus records -> TextInstance stream.
//
// Every adapter reads one record per line (JSONL, or TSV for book n-grams),
// never aborts on a bad record, and keeps counters such that
//   records_read == records_used + records_skipped.
// Input files may be gzip-compressed; plain files pass through unchanged.
//
// Adapters and their default schemas:
//
//   reddit      {"id","text"|"body"|"title"+"selftext","author","created_utc",
//                "over_18","promoted","media","is_video","post_hint","subreddit"}
//               dropped: over_18, promoted, media/video/image, < 5 or > 1000 words
//   books       ngram<TAB>year<TAB>match_count<TAB>volume_count, POS suffixes stripped
//   twitter     generic, text "text|full_text", time "created_at" (ISO or Twitter format)
//   blogs       generic, text "text|content|body"
//   jsonl       generic with a caller-provided field map and source label
//   chat        one instance per assistant turn of "conversation|messages"
//   preference  two instances: "chosen" and "rejected"
//   detection   one instance per generation ("text|generation|output")
//   reasoning   chain-of-thought only ("cot|reasoning|thinking|reasoning_content",
//               or the <think> block of "response|output"); the answer is dropped
//   narrative   one instance per story ("story|text")
//
// Field-map values list candidate JSON keys separated by '|'; dotted keys
// descend into objects ("user.id_str").

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "abcde/error.hpp"
#include "abcde/text.hpp"
#include "abcde/tokenizer.hpp"
#include "json.hpp"

namespace abcde {

struct TextInstance {
  std::string instance_id;
  std::string source;
  std::string text;
  std::optional<std::int64_t> timestamp;  // epoch seconds
  std::optional<int> year;
  std::optional<std::string> user_id;
  std::map<std::string, std::string> extra;

  std::optional<int> effective_year() const;
  std::optional<std::int64_t> effective_timestamp() const;
};

inline bool valid_source(std::string_view s) {
  if (s == "twitter" || s == "reddit" || s == "books" || s == "blogs") return true;
  return s.size() > 3 && s.substr(0, 3) == "ai:";
}

inline std::string make_instance_id(std::string_view source, std::string_view native) {
  return text::Fnv1a().field(source).field(native).hex();
}

// ---------------------------------------------------------------------------
// Timestamps

inline std::int64_t epoch_from_civil(int y, unsigned mo, unsigned d, int h = 0, int mi = 0, int s = 0) {
  using namespace std::chrono;
  const sys_days dd{year{y} / month{mo} / std::chrono::day{d}};
  return duration_cast<seconds>(dd.time_since_epoch()).count() + h * 3600 + mi * 60 + s;
}

// YYYY-MM-DD[(T| )HH:MM[:SS[.frac]]][Z|(+|-)HH[:]MM]
inline std::optional<std::int64_t> parse_iso8601(std::string_view s) {
  s = text::trim(s);
  const auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    if (pos + len > s.size()) return std::nullopt;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
    }
    return text::parse_number<int>(s.substr(pos, len));
  };
  const auto y = num(0, 4), mo = num(5, 2), d = num(8, 2);
  if (!y || !mo || !d || s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (*mo < 1 || *mo > 12 || *d < 1 || *d > 31) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y} / *mo / *d};
  if (!ymd.ok()) return std::nullopt;
  int h = 0, mi = 0, sec = 0;
  std::size_t pos = 10;
  if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
    const auto hh = num(pos + 1, 2), mm = num(pos + 4, 2);
    if (!hh || !mm || s[pos + 3] != ':' || *hh > 23 || *mm > 59) return std::nullopt;
    h = *hh, mi = *mm;
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      const auto ss = num(pos + 1, 2);
      if (!ss || *ss > 60) return std::nullopt;
      sec = *ss;
      pos += 3;
      if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      }
    }
  }
  std::int64_t offset = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' || s[pos] == 'z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '-' ? -1 : 1;
      const auto oh = num(pos + 1, 2);
      if (!oh) return std::nullopt;
      std::size_t mpos = pos + 3;
      if (mpos < s.size() && s[mpos] == ':') ++mpos;
      const auto om = mpos < s.size() ? num(mpos, 2) : std::optional<int>(0);
      if (!om) return std::nullopt;
      offset = sign * (*oh * 3600 + *om * 60);
      pos = mpos + (mpos < s.size() ? 2 : 0);
    }
  }
  if (pos != s.size()) return std::nullopt;
  return epoch_from_civil(*y, static_cast<unsigned>(*mo), static_cast<unsigned>(*d), h, mi, sec) - offset;
}

// "Wed Oct 10 20:19:24 +0000 2018"
inline std::optional<std::int64_t> parse_twitter_time(std::string_view s) {
  static constexpr std::array<std::string_view, 12> months = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                             "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  const auto f = text::split(text::trim(s), ' ');
  if (f.size() != 6) return std::nullopt;
  unsigned mo = 0;
  for (std::size_t i = 0; i < months.size(); ++i) {
    if (months[i] == f[1]) mo = static_cast<unsigned>(i + 1);
  }
  const auto d = text::parse_number<int>(f[2]);
  const auto y = text::parse_number<int>(f[5]);
  const auto clock = text::split(f[3], ':');
  if (!mo || !d || !y || clock.size() != 3 || f[4].size() != 5) return std::nullopt;
  const auto h = text::parse_number<int>(clock[0]), mi = text::parse_number<int>(clock[1]),
             sec = text::parse_number<int>(clock[2]);
  const auto off = text::parse_number<int>(f[4].substr(1));
  if (!h || !mi || !sec || !off) return std::nullopt;
  const std::int64_t offset = (f[4][0] == '-' ? -1 : 1) * ((*off / 100) * 3600 + (*off % 100) * 60);
  return epoch_from_civil(*y, mo, static_cast<unsigned>(*d), *h, *mi, *sec) - offset;
}

inline std::optional<int> TextInstance::effective_year() const {
  if (year) return year;
  if (timestamp) {
    using namespace std::chrono;
    return static_cast<int>(year_month_day{floor<days>(sys_seconds{seconds{*timestamp}})}.year());
  }
  return std::nullopt;
}

inline std::optional<std::int64_t> TextInstance::effective_timestamp() const {
  if (timestamp) return timestamp;
  if (year) return epoch_from_civil(*year, 1, 1);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Line reader

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path) {
    {
      std::ifstream probe(path, std::ios::binary);
      if (!probe) throw Error("cannot open input '" + path + "'");
      unsigned char magic[4] = {};
      probe.read(reinterpret_cast<char*>(magic), 4);
      if (probe.gcount() == 4 && magic[0] == 0x28 && magic[1] == 0xB5 && magic[2] == 0x2F && magic[3] == 0xFD) {
        throw Error("'" + path + "' is zstd-compressed; decompress it first (this build reads plain and gzip input)");
      }
    }
    file_ = gzopen(path.c_str(), "rb");
    if (!file_) throw Error("cannot open input '" + path + "'");
    gzbuffer(file_, 1 << 17);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;
  ~LineReader() {
    if (file_) gzclose(file_);
  }

  // Reads the next line without its terminator. Returns false at end of input.
  bool next(std::string& line) {
    line.clear();
    char buf[8192];
    while (gzgets(file_, buf, sizeof buf)) {
      line.append(buf);
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
    }
    int err = 0;
    const char* msg = gzerror(file_, &err);
    if (err != Z_OK && err != Z_STREAM_END) throw Error("read error in '" + path_ + "': " + msg);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return !line.empty();
  }

 private:
  std::string path_;
  gzFile file_ = nullptr;
};

// ---------------------------------------------------------------------------
// Adapters

struct IngestStats {
  std::uint64_t records_read = 0;
  std::uint64_t records_used = 0;
  std::uint64_t records_skipped = 0;
  std::uint64_t instances_emitted = 0;
  std::map<std::string, std::uint64_t> skip_reasons;

  bool conserved() const noexcept { return records_read == records_used + records_skipped; }
};

using FieldMap = std::map<std::string, std::string>;

namespace detail {

using json = nlohmann::json;

inline const json* find_path(const json& obj, std::string_view dotted) {
  const json* cur = &obj;
  for (auto part : text::split(dotted, '.')) {
    if (!cur->is_object()) return nullptr;
    const auto it = cur->find(std::string(part));
    if (it == cur->end()) return nullptr;
    cur = &*it;
  }
  return cur;
}

// First candidate key present and non-null.
inline const json* find_field(const json& obj, std::string_view candidates) {
  for (auto key : text::split(candidates, '|')) {
    if (const json* v = find_path(obj, key); v && !v->is_null()) return v;
  }
  return nullptr;
}

inline std::optional<std::string> as_text(const json* v) {
  if (!v) return std::nullopt;
  if (v->is_string()) return v->get<std::string>();
  if (v->is_number_integer()) return std::to_string(v->get<std::int64_t>());
  if (v->is_number_unsigned()) return std::to_string(v->get<std::uint64_t>());
  if (v->is_number_float()) return text::format_double(v->get<double>());
  if (v->is_boolean()) return v->get<bool>() ? "true" : "false";
  return std::nullopt;
}

inline bool truthy(const json* v) {
  if (!v || v->is_null()) return false;
  if (v->is_boolean()) return v->get<bool>();
  if (v->is_number()) return v->get<double>() != 0;
  if (v->is_string()) {
    const auto s = v->get<std::string>();
    return !s.empty() && s != "false" && s != "0";
  }
  return !v->empty();
}

inline std::optional<std::int64_t> as_timestamp(const json* v) {
  if (!v) return std::nullopt;
  if (v->is_number_integer() || v->is_number_unsigned()) return v->get<std::int64_t>();
  if (v->is_number_float()) return static_cast<std::int64_t>(v->get<double>());
  if (v->is_string()) {
    const auto s = v->get<std::string>();
    if (auto n = text::parse_number<std::int64_t>(s)) return n;
    if (auto d = text::parse_number<double>(s)) return static_cast<std::int64_t>(*d);
    if (auto iso = parse_iso8601(s)) return iso;
    return parse_twitter_time(s);
  }
  return std::nullopt;
}

inline std::string field(const FieldMap& map, const std::string& key, std::string_view fallback) {
  const auto it = map.find(key);
  return it == map.end() ? std::string(fallback) : it->second;
}

}  // namespace detail

class Adapter {
 public:
  explicit Adapter(std::string source) : source_(std::move(source)) {
    if (!valid_source(source_)) throw ConfigError("unknown source label '" + source_ + "'");
  }
  virtual ~Adapter() = default;

  // Consumes one record (blank lines are not records) and appends its instances.
  void feed(std::string_view record, std::vector<TextInstance>& out) {
    if (text::trim(record).empty()) return;
    const std::uint64_t ordinal = stats_.records_read++;
    const std::size_t before = out.size();
    std::string reason;
    try {
      reason = parse(record, ordinal, out);
    } catch (const std::exception&) {
      reason = "malformed";
    }
    if (reason.empty() && out.size() == before) reason = "empty";
    if (!reason.empty()) {
      out.resize(before);
      ++stats_.records_skipped;
      ++stats_.skip_reasons[reason];
      return;
    }
    ++stats_.records_used;
    stats_.instances_emitted += out.size() - before;
  }

  const IngestStats& stats() const noexcept { return stats_; }
  const std::string& source() const noexcept { return source_; }

 protected:
  // Returns an empty string on success, otherwise the skip reason.
  virtual std::string parse(std::string_view record, std::uint64_t ordinal, std::vector<TextInstance>& out) = 0;

  TextInstance make(std::string_view native_id, std::string text) const {
    TextInstance inst;
    inst.instance_id = make_instance_id(source_, native_id);
    inst.source = source_;
    inst.text = std::move(text);
    return inst;
  }

  std::string source_;
  IngestStats stats_;
};

class RedditAdapter : public Adapter {
 public:
  static constexpr std::size_t kMinWords = 5;
  static constexpr std::size_t kMaxWords = 1000;

  RedditAdapter() : Adapter("reddit") {}

 protected:
  std::string parse(std::string_view record, std::uint64_t ordinal, std::vector<TextInstance>& out) override {
    using detail::find_field;
    const auto j = nlohmann::json::parse(record);
    if (!j.is_object()) return "malformed";

    std::optional<std::string> body = detail::as_text(find_field(j, "text|body"));
    if (!body) {
      const auto title = detail::as_text(find_field(j, "title"));
      const auto self = detail::as_text(find_field(j, "selftext"));
      if (title || self) body = title.value_or("") + (title && self ? "\n" : "") + self.value_or("");
    }
    if (!body || text::trim(*body).empty()) return "missing_text";

    if (detail::truthy(find_field(j, "over_18"))) return "over_18";
    if (detail::truthy(find_field(j, "promoted"))) return "promoted";
    if (detail::truthy(find_field(j, "media")) || detail::truthy(find_field(j, "secure_media")) ||
        detail::truthy(find_field(j, "is_video"))) {
      return "media";
    }
    if (const auto hint = detail::as_text(find_field(j, "post_hint"))) {
      if (*hint == "image" || hint->find("video") != std::string::npos) return "media";
    }

    const std::size_t words = word_count(*body);  // throws on bad UTF-8 -> malformed
    if (words < kMinWords) return "too_short";
    if (words > kMaxWords) return "too_long";

    const auto native = detail::as_text(find_field(j, "id"));
    auto inst = make(native ? *native : "#" + std::to_string(ordinal), std::move(*body));
    inst.timestamp = detail::as_timestamp(find_field(j, "created_utc"));
    if (const auto author = detail::as_text(find_field(j, "author"));
        author && !author->empty() && *author != "[deleted]") {
      inst.user_id = *author;
    }
    if (const auto sub = detail::as_text(find_field(j, "subreddit"))) inst.extra["subreddit"] = *sub;
    out.push_back(std::move(inst));
    return {};
  }
};

class BooksAdapter : public Adapter {
 public:
  BooksAdapter() : Adapter("books") {}

  // "heart_NOUN beat_VERB" -> "heart beat"; bare tags ("_NOUN_") are dropped.
  static std::string strip_pos_tags(std::string_view ngram) {
    std::string out;
    for (auto tok : text::split(ngram, ' ')) {
      if (tok.empty()) continue;
      if (tok.size() > 2 && tok.front() == '_' && tok.back() == '_') continue;
      const auto us = tok.rfind('_');
      if (us != std::string_view::npos && us > 0 && us + 1 < tok.size()) {
        const auto tag = tok.substr(us + 1);
        const bool upper = std::all_of(tag.begin(), tag.end(), [](char c) { return (c >= 'A' && c <= 'Z') || c == '.'; });
        if (upper) tok = tok.substr(0, us);
      }
      if (!out.empty()) out.push_back(' ');
      out.append(tok);
    }
    return out;
  }

 protected:
  std::string parse(std::string_view record, std::uint64_t ordinal, std::vector<TextInstance>& out) override {
    const auto f = text::split(record, '\t');
    if (f.size() != 4) return "malformed";
    const auto year = text::parse_number<int>(f[1]);
    if (!year) return "bad_year";
    const auto matches = text::parse_number<std::int64_t>(f[2]);
    const auto volumes = text::parse_number<std::int64_t>(f[3]);
    if (!matches || !volumes || *matches < 0 || *volumes < 0) return "bad_count";
    std::string ngram = strip_pos_tags(f[0]);
    if (!text::valid_utf8(ngram)) return "malformed";
    if (text::trim(ngram).empty()) return "missing_text";
    auto inst = make("#" + std::to_string(ordinal), std::move(ngram));
    inst.year = *year;
    inst.extra["match_count"] = std::to_string(*matches);
    inst.extra["volume_count"] = std::to_string(*volumes);
    out.push_back(std::move(inst));
    return {};
  }
};

// Field-mapped JSONL: text (required), id, user, timestamp, year, plus any
// keys listed in "extra" (comma-separated) copied verbatim.
class GenericJsonlAdapter : public Adapter {
 public:
  GenericJsonlAdapter(std::string source, FieldMap map) : Adapter(std::move(source)), map_(std::move(map)) {}

 protected:
  std::string parse(std::string_view record, std::uint64_t ordinal, std::vector<TextInstance>& out) override {
    const auto j = nlohmann::json::parse(record);
    if (!j.is_object()) return "malformed";
    const auto body = detail::as_text(detail::find_field(j, detail::field(map_, "text", "text")));
    if (!body || text::trim(*body).empty()) return "missing_text";
    if (!text::valid_utf8(*body)) return "malformed";
    const auto native = detail::as_text(detail::find_field(j, detail::field(map_, "id", "id")));
    auto inst = make(native ? *native : "#" + std::to_string(ordinal), *body);
    inst.timestamp = detail::as_timestamp(detail::find_field(j, detail::field(map_, "timestamp", "timestamp")));
    if (const auto y = detail::as_text(detail::find_field(j, detail::field(map_, "year", "year")))) {
      inst.year = text::parse_number<int>(*y);
    }
    if (const auto u = detail::as_text(detail::find_field(j, detail::field(map_, "user", "user_id|author")))) {
      if (!u->empty()) inst.user_id = *u;
    }
    if (const auto it = map_.find("extra"); it != map_.end()) {
      for (auto key : text::split(it->second, ',')) {
        key = text::trim(key);
        if (const auto v = detail::as_text(detail::find_path(j, key))) inst.extra[std::string(key)] = *v;
      }
    }
    out.push_back(std::move(inst));
    return {};
  }

  FieldMap map_;
};

enum class ConversationKind { chat, preference, detection, reasoning, narrative };

inline std::optional<ConversationKind> conversation_kind(std::string_view name) {
  if (name == "chat") return ConversationKind::chat;
  if (name == "preference") return ConversationKind::preference;
  if (name == "detection") return ConversationKind::detection;
  if (name == "reasoning") return ConversationKind::reasoning;
  if (name == "narrative") return ConversationKind::narrative;
  return std::nullopt;
}

class ConversationAdapter : public Adapter {
 public:
  ConversationAdapter(ConversationKind kind, const std::string& dataset, FieldMap map)
      : Adapter("ai:" + dataset), kind_(kind), map_(std::move(map)) {}

  // Text after the last "Assistant:" marker of a flattened transcript.
  static std::string last_assistant_segment(const std::string& transcript) {
    const auto pos = transcript.rfind("Assistant:");
    if (pos == std::string::npos) return transcript;
    return std::string(text::trim(std::string_view(transcript).substr(pos + 10)));
  }

  // The <think>...</think> block of a response, if any.
  static std::optional<std::string> think_block(const std::string& response) {
    const auto open = response.find("<think>");
    if (open == std::string::npos) return std::nullopt;
    const auto close = response.find("</think>", open);
    const auto begin = open + 7;
    return std::string(text::trim(std::string_view(response).substr(begin, close == std::string::npos ? std::string::npos : close - begin)));
  }

 protected:
  std::string parse(std::string_view record, std::uint64_t ordinal, std::vector<TextInstance>& out) override {
    using detail::field;
    using detail::find_field;
    const auto j = nlohmann::json::parse(record);
    if (!j.is_object()) return "malformed";
    const auto native_id = detail::as_text(find_field(j, field(map_, "id", "id|conversation_id")));
    const std::string native = native_id ? *native_id : "#" + std::to_string(ordinal);
    const auto model = detail::as_text(find_field(j, field(map_, "model", "model")));
    const auto ts = detail::as_timestamp(find_field(j, field(map_, "timestamp", "timestamp")));

    const auto emit = [&](std::string body, std::string_view suffix) {
      auto inst = make(suffix.empty() ? native : native + "/" + std::string(suffix), std::move(body));
      inst.timestamp = ts;
      inst.extra["kind"] = kind_name();
      if (model) inst.extra["model"] = *model;
      out.push_back(std::move(inst));
      return &out.back();
    };
    const auto usable = [](const std::optional<std::string>& s) {
      return s && !text::trim(*s).empty() && text::valid_utf8(*s);
    };

    switch (kind_) {
      case ConversationKind::chat: {
        const auto* turns = find_field(j, field(map_, "messages", "conversation|messages"));
        if (!turns || !turns->is_array()) return "missing_text";
        const std::string role_key = field(map_, "role", "role|from");
        const std::string content_key = field(map_, "content", "content|value|text");
        const std::string roles = field(map_, "assistant", "assistant|gpt|bot|model");
        const auto assistant_roles = text::split(roles, '|');
        std::size_t turn = 0;
        for (const auto& msg : *turns) {
          if (!msg.is_object()) continue;
          const auto role = detail::as_text(find_field(msg, role_key));
          if (!role || std::find(assistant_roles.begin(), assistant_roles.end(), *role) == assistant_roles.end()) continue;
          const auto content = detail::as_text(find_field(msg, content_key));
          if (!usable(content)) continue;
          emit(*content, "t" + std::to_string(turn))->extra["turn"] = std::to_string(turn);
          ++turn;
        }
        return turn == 0 ? "no_assistant_turn" : "";
      }
      case ConversationKind::preference: {
        const auto side = [&](const char* key, const char* fallback) -> std::optional<std::string> {
          const auto* v = find_field(j, field(map_, key, fallback));
          if (!v) return std::nullopt;
          if (v->is_string()) return last_assistant_segment(v->get<std::string>());
          if (v->is_array()) {
            for (auto it = v->rbegin(); it != v->rend(); ++it) {
              const auto role = detail::as_text(find_field(*it, "role|from"));
              if (role && (*role == "assistant" || *role == "gpt")) return detail::as_text(find_field(*it, "content|value|text"));
            }
          }
          return std::nullopt;
        };
        const auto chosen = side("chosen", "chosen");
        const auto rejected = side("rejected", "rejected");
        if (!usable(chosen) || !usable(rejected)) return "missing_text";
        emit(*chosen, "chosen")->extra["preference"] = "chosen";
        emit(*rejected, "rejected")->extra["preference"] = "rejected";
        return {};
      }
      case ConversationKind::detection: {
        const auto body = detail::as_text(find_field(j, field(map_, "text", "text|generation|output")));
        if (!usable(body)) return "missing_text";
        emit(*body, "");
        return {};
      }
      case ConversationKind::reasoning: {
        auto cot = detail::as_text(find_field(j, field(map_, "cot", "cot|reasoning|thinking|reasoning_content")));
        if (!usable(cot)) {
          if (const auto resp = detail::as_text(find_field(j, field(map_, "response", "response|output")))) {
            cot = think_block(*resp);
          }
        }
        if (!usable(cot)) return "missing_cot";
        emit(*cot, "");
        return {};
      }
      case ConversationKind::narrative: {
        const auto body = detail::as_text(find_field(j, field(map_, "text", "story|text")));
        if (!usable(body)) return "missing_text";
        emit(*body, "");
        return {};
      }
    }
    return "malformed";
  }

 private:
  std::string kind_name() const {
    switch (kind_) {
      case ConversationKind::chat: return "chat";
      case ConversationKind::preference: return "preference";
      case ConversationKind::detection: return "detection";
      case ConversationKind::reasoning: return "reasoning";
      case ConversationKind::narrative: return "narrative";
    }
    return "";
  }

  ConversationKind kind_;
  FieldMap map_;
};

struct AdapterOptions {
  FieldMap field_map;
  std::string dataset;  // conversation adapters
  std::string source;   // jsonl adapter
};

inline const std::vector<std::string>& adapter_names() {
  static const std::vector<std::string> names = {"reddit",     "books",     "twitter",   "blogs",    "jsonl",
                                                 "chat",       "preference", "detection", "reasoning", "narrative"};
  return names;
}

inline std::unique_ptr<Adapter> make_adapter(const std::string& name, const AdapterOptions& opts = {}) {
  if (name == "reddit") return std::make_unique<RedditAdapter>();
  if (name == "books") return std::make_unique<BooksAdapter>();
  if (name == "twitter" || name == "blogs") {
    FieldMap map = name == "twitter"
                       ? FieldMap{{"text", "text|full_text"}, {"id", "id_str|id"}, {"user", "user_id|user.id_str|author_id"},
                                  {"timestamp", "created_at|timestamp"}}
                       : FieldMap{{"text", "text|content|body"}, {"id", "id|url|permalink"}, {"user", "author|user|user_id"},
                                  {"timestamp", "published|date|timestamp"}};
    for (const auto& [k, v] : opts.field_map) map[k] = v;
    return std::make_unique<GenericJsonlAdapter>(name, std::move(map));
  }
  if (name == "jsonl") {
    if (opts.source.empty()) throw ConfigError("adapter 'jsonl' needs a source label");
    return std::make_unique<GenericJsonlAdapter>(opts.source, opts.field_map);
  }
  if (const auto kind = conversation_kind(name)) {
    if (opts.dataset.empty() || !valid_source("ai:" + opts.dataset)) {
      throw ConfigError("adapter '" + name + "' needs a dataset name");
    }
    return std::make_unique<ConversationAdapter>(*kind, opts.dataset, opts.field_map);
  }
  throw ConfigError("unknown adapter '" + name + "'");
}

// Streams every instance of `path` through `fn`, in input order, in batches of
// at most `batch_size` records.
template <typename Fn>
void ingest_batches(const std::string& path, Adapter& adapter, std::size_t batch_size, Fn&& fn) {
  LineReader reader(path);
  std::string line;
  std::vector<TextInstance> batch;
  std::size_t records = 0;
  while (reader.next(line)) {
    adapter.feed(line, batch);
    if (++records >= batch_size) {
      if (!batch.empty()) fn(batch);
      batch.clear();
      records = 0;
    }
  }
  if (!batch.empty()) fn(batch);
}

}  // namespace abcde
