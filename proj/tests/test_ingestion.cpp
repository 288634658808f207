#include <gtest/gtest.h>

#include <zlib.h>

#include "support.hpp"

using namespace abcde;
using namespace abcde::testing;

namespace {

struct Fed {
  std::vector<TextInstance> out;
  IngestStats stats;
};

Fed feed(const std::string& adapter, const std::vector<std::string>& lines, AdapterOptions opts = {}) {
  auto a = make_adapter(adapter, opts);
  Fed f;
  for (const auto& l : lines) a->feed(l, f.out);
  f.stats = a->stats();
  return f;
}

AdapterOptions dataset(std::string name) {
  AdapterOptions o;
  o.dataset = std::move(name);
  return o;
}

const std::string kFiveWords = "one two three four five";

}  // namespace

TEST(Timestamps, Iso8601) {
  EXPECT_EQ(parse_iso8601("2018-10-10T20:19:24Z"), 1539202764);
  EXPECT_EQ(parse_iso8601("2018-10-10 20:19:24.123"), 1539202764);
  EXPECT_EQ(parse_iso8601("2020-02-29T12:00:00+05:30"), 1582957800);
  EXPECT_EQ(parse_iso8601("2020-02-29T12:00+0530"), 1582957800);
  EXPECT_EQ(parse_iso8601("1970-01-01"), 0);
  EXPECT_FALSE(parse_iso8601("2019-02-29"));
  EXPECT_FALSE(parse_iso8601("2019-13-01"));
  EXPECT_FALSE(parse_iso8601("yesterday"));
  EXPECT_FALSE(parse_iso8601("2019-01-01T25:00"));
}

TEST(Timestamps, TwitterFormat) {
  EXPECT_EQ(parse_twitter_time("Wed Oct 10 20:19:24 +0000 2018"), 1539202764);
  EXPECT_EQ(parse_twitter_time("Wed Oct 10 21:19:24 +0100 2018"), 1539202764);
  EXPECT_FALSE(parse_twitter_time("Wed Foo 10 20:19:24 +0000 2018"));
}

TEST(InstanceId, StableFnvOfSourceAndNativeId) {
  EXPECT_EQ(text::Fnv1a().hex(), "cbf29ce484222325");
  EXPECT_EQ(text::Fnv1a().update("a").hex(), "af63dc4c8601ec8c");
  EXPECT_EQ(make_instance_id("reddit", "abc"), text::Fnv1a().update("reddit\x1f" "abc\x1f").hex());
  EXPECT_NE(make_instance_id("reddit", "abc"), make_instance_id("blogs", "abc"));
  const auto a = feed("reddit", {R"({"id":"x1","body":")" + kFiveWords + R"("})"});
  const auto b = feed("reddit", {R"({"id":"x1","body":"something else entirely, five words"})"});
  EXPECT_EQ(a.out.at(0).instance_id, b.out.at(0).instance_id);
}

TEST(Reddit, FieldsAndFilters) {
  const auto f = feed("reddit", {
      R"({"id":"a","body":")" + kFiveWords + R"(","author":"u1","created_utc":1458000000,"subreddit":"pics"})",
      R"({"id":"b","title":"a title here","selftext":"and the body","author":"[deleted]","created_utc":"1458000000"})",
      R"({"id":"c","body":")" + kFiveWords + R"(","over_18":true})",
      R"({"id":"d","body":")" + kFiveWords + R"(","promoted":true})",
      R"({"id":"e","body":")" + kFiveWords + R"(","post_hint":"image"})",
      R"({"id":"f","body":")" + kFiveWords + R"(","is_video":true})",
      R"({"id":"g","body":"too short here"})",
      R"({"id":"h","body":"   "})",
      R"(not json)",
      "",
      R"({"id":"i","body":"one two three four https://x.co @a #b"})",
  });
  EXPECT_EQ(f.stats.records_read, 10u);
  EXPECT_EQ(f.stats.records_used, 2u);
  EXPECT_TRUE(f.stats.conserved());
  EXPECT_EQ(f.stats.skip_reasons, (std::map<std::string, std::uint64_t>{{"over_18", 1},
                                                                        {"promoted", 1},
                                                                        {"media", 2},
                                                                        {"too_short", 2},
                                                                        {"missing_text", 1},
                                                                        {"malformed", 1}}));
  ASSERT_EQ(f.out.size(), 2u);
  EXPECT_EQ(f.out[0].source, "reddit");
  EXPECT_EQ(f.out[0].user_id, "u1");
  EXPECT_EQ(f.out[0].timestamp, 1458000000);
  EXPECT_EQ(f.out[0].effective_year(), 2016);
  EXPECT_EQ(f.out[0].extra.at("subreddit"), "pics");
  EXPECT_EQ(f.out[1].text, "a title here\nand the body");
  EXPECT_FALSE(f.out[1].user_id);
  EXPECT_EQ(f.out[1].timestamp, 1458000000);
}

TEST(Reddit, TooLong) {
  std::string body;
  for (int i = 0; i < 1001; ++i) body += "w ";
  const auto f = feed("reddit", {R"({"id":"a","body":")" + body + R"("})"});
  EXPECT_EQ(f.stats.skip_reasons.at("too_long"), 1u);
}

TEST(Books, NgramRows) {
  const auto f = feed("books", {"heart_NOUN beat_VERB\t1905\t12\t3", "_START_ broken heart\t2001\t4\t2",
                                "x\tyear\t1\t1", "x\t1900\t-1\t1", "too\tfew", "\xff\t1900\t1\t1"});
  EXPECT_TRUE(f.stats.conserved());
  EXPECT_EQ(f.stats.skip_reasons, (std::map<std::string, std::uint64_t>{
                                      {"bad_year", 1}, {"bad_count", 1}, {"malformed", 2}}));
  ASSERT_EQ(f.out.size(), 2u);
  EXPECT_EQ(f.out[0].text, "heart beat");
  EXPECT_EQ(f.out[0].year, 1905);
  EXPECT_EQ(f.out[0].effective_timestamp(), epoch_from_civil(1905, 1, 1));
  EXPECT_EQ(f.out[0].extra.at("match_count"), "12");
  EXPECT_EQ(f.out[1].text, "broken heart");
  EXPECT_NE(f.out[0].instance_id, f.out[1].instance_id);
}

TEST(Twitter, DefaultSchema) {
  const auto f = feed("twitter", {
      R"({"id_str":"99","full_text":"hi there","user":{"id_str":"u9"},"created_at":"Wed Oct 10 20:19:24 +0000 2018"})",
      R"({"id":5,"text":"x","created_at":"2018-10-10T20:19:24Z"})",
      R"({"id":6})",
  });
  EXPECT_TRUE(f.stats.conserved());
  ASSERT_EQ(f.out.size(), 2u);
  EXPECT_EQ(f.out[0].user_id, "u9");
  EXPECT_EQ(f.out[0].timestamp, 1539202764);
  EXPECT_EQ(f.out[1].timestamp, 1539202764);
  EXPECT_EQ(f.out[1].instance_id, make_instance_id("twitter", "5"));
  EXPECT_EQ(f.stats.skip_reasons.at("missing_text"), 1u);
}

TEST(Blogs, DefaultSchema) {
  const auto f = feed("blogs", {R"({"url":"http://b/1","content":"post","author":"ann","date":"2004-05-14"})"});
  ASSERT_EQ(f.out.size(), 1u);
  EXPECT_EQ(f.out[0].source, "blogs");
  EXPECT_EQ(f.out[0].effective_year(), 2004);
}

TEST(GenericJsonl, FieldMapAndExtras) {
  AdapterOptions o;
  o.source = "ai:mydata";
  o.field_map = {{"text", "payload.body"}, {"id", "key"}, {"year", "yr"}, {"extra", "meta.lang, missing"}};
  const auto f = feed("jsonl", {R"({"key":"k","payload":{"body":"hello"},"yr":1999,"meta":{"lang":"en"}})"}, o);
  ASSERT_EQ(f.out.size(), 1u);
  EXPECT_EQ(f.out[0].source, "ai:mydata");
  EXPECT_EQ(f.out[0].year, 1999);
  EXPECT_EQ(f.out[0].extra, (std::map<std::string, std::string>{{"meta.lang", "en"}}));
  EXPECT_THROW(make_adapter("jsonl"), ConfigError);
  o.source = "news";
  EXPECT_THROW(make_adapter("jsonl", o), ConfigError);
}

TEST(Conversation, Chat) {
  const auto f = feed("chat", {
      R"({"id":"c1","model":"m","messages":[{"role":"user","content":"q"},{"role":"assistant","content":"a1"},{"role":"user","content":"q2"},{"role":"assistant","content":"a2"}]})",
      R"({"id":"c2","conversation":[{"from":"human","value":"q"},{"from":"gpt","value":"ans"}]})",
      R"({"id":"c3","messages":[{"role":"user","content":"q"}]})",
  }, dataset("chatset"));
  EXPECT_TRUE(f.stats.conserved());
  EXPECT_EQ(f.stats.instances_emitted, 3u);
  ASSERT_EQ(f.out.size(), 3u);
  EXPECT_EQ(f.out[0].source, "ai:chatset");
  EXPECT_EQ(f.out[1].text, "a2");
  EXPECT_EQ(f.out[1].extra.at("turn"), "1");
  EXPECT_EQ(f.out[0].extra.at("model"), "m");
  EXPECT_EQ(f.out[2].text, "ans");
  EXPECT_EQ(f.stats.skip_reasons.at("no_assistant_turn"), 1u);
  EXPECT_THROW(make_adapter("chat"), ConfigError);
}

TEST(Conversation, Preference) {
  const auto f = feed("preference", {
      R"({"id":"p","chosen":"Human: hi Assistant: good answer","rejected":"Human: hi Assistant: bad answer"})",
      R"({"id":"q","chosen":"only one side"})",
  }, dataset("hh"));
  ASSERT_EQ(f.out.size(), 2u);
  EXPECT_EQ(f.out[0].text, "good answer");
  EXPECT_EQ(f.out[1].extra.at("preference"), "rejected");
  EXPECT_NE(f.out[0].instance_id, f.out[1].instance_id);
  EXPECT_EQ(f.stats.skip_reasons.at("missing_text"), 1u);
}

TEST(Conversation, ReasoningKeepsOnlyTheChain) {
  const auto f = feed("reasoning", {
      R"({"id":"r1","cot":"first I think"})",
      R"({"id":"r2","response":"<think>step by step</think> The answer is 4."})",
      R"({"id":"r3","response":"The answer is 4."})",
  }, dataset("r"));
  ASSERT_EQ(f.out.size(), 2u);
  EXPECT_EQ(f.out[1].text, "step by step");
  EXPECT_EQ(f.stats.skip_reasons.at("missing_cot"), 1u);
}

TEST(Conversation, DetectionAndNarrative) {
  auto f = feed("detection", {R"({"id":"1","generation":"text"})", R"({"id":"2"})"}, dataset("det"));
  EXPECT_EQ(f.out.size(), 1u);
  EXPECT_TRUE(f.stats.conserved());
  f = feed("narrative", {R"({"id":"1","story":"once upon"})", R"([1,2])"}, dataset("ws"));
  EXPECT_EQ(f.out.size(), 1u);
  EXPECT_EQ(f.stats.skip_reasons.at("malformed"), 1u);
}

TEST(Ingest, GzipAndPlainReadTheSame) {
  TempDir dir;
  const std::string content = "{\"id\":\"a\",\"body\":\"" + kFiveWords + "\"}\r\n{\"id\":\"b\",\"body\":\"" +
                              kFiveWords + " six\"}";  // CRLF and no trailing newline
  write_file(dir / "in.jsonl", content);
  gzFile gz = gzopen((dir / "in.jsonl.gz").c_str(), "wb");
  gzwrite(gz, content.data(), static_cast<unsigned>(content.size()));
  gzclose(gz);

  std::vector<std::vector<std::string>> texts;
  for (const char* name : {"in.jsonl", "in.jsonl.gz"}) {
    auto a = make_adapter("reddit");
    std::vector<std::string> t;
    std::size_t batches = 0;
    ingest_batches((dir / name).string(), *a, 1, [&](const std::vector<TextInstance>& b) {
      ++batches;
      for (const auto& i : b) t.push_back(i.text);
    });
    EXPECT_EQ(batches, 2u);
    texts.push_back(t);
  }
  EXPECT_EQ(texts[0], texts[1]);
  EXPECT_EQ(texts[0].size(), 2u);
}

TEST(Ingest, ZstdIsRejectedWithAClearError) {
  TempDir dir;
  write_file(dir / "in.zst", std::string("\x28\xB5\x2F\xFD rest", 9));
  try {
    LineReader r((dir / "in.zst").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zstd"), std::string::npos);
  }
  EXPECT_THROW(LineReader((dir / "missing").string()), Error);
}

TEST(IngestProperty, ConservationUnderGarbage) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> pieces = {R"({"id":"x","body":")" + kFiveWords + R"("})",
                                           R"({"text":"a b","messages":[],"chosen":"x"})",
                                           "garbage", "{\"over_18\":1,\"body\":\"" + kFiveWords + "\"}",
                                           "w\t1999\t1\t1", "x\t\t\t", "[]", "{}", "null", "\"str\""};
  for (const auto& name : adapter_names()) {
    AdapterOptions o;
    o.dataset = "d";
    o.source = "ai:d";
    auto a = make_adapter(name, o);
    std::vector<TextInstance> out;
    for (int i = 0; i < 500; ++i) a->feed(pieces[rng() % pieces.size()], out);
    EXPECT_TRUE(a->stats().conserved()) << name;
    EXPECT_EQ(a->stats().records_read, 500u) << name;
    EXPECT_EQ(a->stats().instances_emitted, out.size()) << name;
  }
}
