#include <gtest/gtest.h>

#include <sstream>

#include "abcde/registry.hpp"
#include "support.hpp"

using namespace abcde;
using abcde::testing::source_path;

namespace {

ScoreLexicon score_from(const std::string& tsv, ScoreLoadOptions opts = {}) {
  std::istringstream in(tsv);
  return read_score_lexicon(in, "lex", opts);
}

std::vector<std::string> column_ids(const FeatureRegistry& f) {
  std::vector<std::string> out;
  for (const auto& c : f.columns()) out.push_back(c.id);
  return out;
}

}  // namespace

TEST(ScoreLexicon, LoadsRows) {
  const auto lex = score_from("# comment\nhappy\t0.9\nsad\t0.1\n\n");
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.score("happy"), 0.9);
  EXPECT_EQ(lex.score("sad"), 0.1);
  EXPECT_FALSE(lex.score("joy"));
}

TEST(ScoreLexicon, NormalizesMultiwordTerms) {
  const auto lex = score_from("Broken  Heart\t0.04\nout-of-control\t0.1\n");
  EXPECT_TRUE(lex.score("broken heart"));
  EXPECT_TRUE(lex.score("out of control"));
}

TEST(ScoreLexicon, RejectsOutOfRangeScore) {
  EXPECT_THROW(score_from("joy\t1.5\n"), ValidationError);
  EXPECT_THROW(score_from("joy\t-0.1\n"), ValidationError);
  EXPECT_THROW(score_from("joy\tnan\n"), Error);
}

TEST(ScoreLexicon, RejectsDuplicatesAfterNormalization) {
  try {
    score_from("Happy\t0.9\nhappy\t0.8\n");
    FAIL() << "expected a duplicate-term error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'happy'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ScoreLexicon, MalformedRowReportsLine) {
  try {
    score_from("ok\t0.5\nbroken row\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(score_from("x\tabc\n"), ParseError);
}

TEST(ScoreLexicon, RejectsBadTerms) {
  EXPECT_THROW(score_from("a b c d\t0.5\n"), ValidationError);      // four tokens
  EXPECT_THROW(score_from("@user\t0.5\n"), ValidationError);        // reserved token
  EXPECT_THROW(score_from("...\t0.5\n"), ValidationError);          // no tokens
}

TEST(ScoreLexicon, RescaleIsOptIn) {
  EXPECT_THROW(score_from("a\t-3\nb\t1\nc\t5\n"), ValidationError);
  const auto lex = score_from("a\t-3\nb\t1\nc\t5\n", {.rescale = true});
  EXPECT_DOUBLE_EQ(*lex.score("a"), 0.0);
  EXPECT_DOUBLE_EQ(*lex.score("b"), 0.5);
  EXPECT_DOUBLE_EQ(*lex.score("c"), 1.0);
}

TEST(ScoreLexicon, SerializeRoundTrip) {
  const auto lex = score_from("happy\t0.9\nbroken heart\t0.04\nsad\t0.1\n");
  std::ostringstream out;
  write_tsv(out, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(read_score_lexicon(in, "lex").entries(), lex.entries());
}

TEST(ThresholdSublexicon, BoundsAreInclusive) {
  const auto hi = derive_threshold_sublexicon(score_from("a\t0.66\nb\t0.65\n"), ThresholdMode::high);
  EXPECT_EQ(hi.entries(), (ScoreLexicon::Entries{{"a", 0.66}}));
  EXPECT_EQ(hi.name(), "high_lex");
  const auto lo = derive_threshold_sublexicon(score_from("a\t0.33\nb\t0.34\n"), ThresholdMode::low);
  EXPECT_EQ(lo.entries(), (ScoreLexicon::Entries{{"a", 0.33}}));
  EXPECT_EQ(lo.name(), "low_lex");
  EXPECT_TRUE(derive_threshold_sublexicon(ScoreLexicon("e"), ThresholdMode::high).empty());
}

TEST(ThresholdSublexicon, SubsetProperty) {
  abcde::testing::RandomCorpus rc(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lex = abcde::testing::to_score_lexicon("v", rc.lexicon(150));
    const auto hi = derive_threshold_sublexicon(lex, ThresholdMode::high);
    const auto lo = derive_threshold_sublexicon(lex, ThresholdMode::low);
    for (const auto& [t, s] : hi.entries()) {
      EXPECT_EQ(lex.score(t), s);
      EXPECT_GE(s, 0.66);
    }
    for (const auto& [t, s] : lo.entries()) {
      EXPECT_EQ(lex.score(t), s);
      EXPECT_LE(s, 0.33);
    }
    EXPECT_LE(hi.size() + lo.size(), lex.size());
    ASSERT_TRUE(hi.derivation());
    EXPECT_EQ(hi.derivation()->parent, "v");
  }
}

TEST(ThresholdSublexicon, ValidatesConfig) {
  EXPECT_THROW(derive_threshold_sublexicon(ScoreLexicon("x"), ThresholdMode::high, {0.3, 0.5}), ValidationError);
  EXPECT_THROW(derive_threshold_sublexicon(ScoreLexicon("x"), ThresholdMode::high, {1.2, 0.3}), ValidationError);
  EXPECT_NO_THROW(derive_threshold_sublexicon(ScoreLexicon("x"), ThresholdMode::high, {0.8, 0.2}));
}

TEST(CategoryLexicon, LoadsRowsAndCategories) {
  std::istringstream in("analyze\tanalyzing\nrecall\tmemory_recall\n");
  const auto lex = read_category_lexicon(in, "cog");
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.categories(), (std::vector<std::string>{"analyzing", "memory_recall"}));
  EXPECT_EQ(lex.category("recall"), 1u);
}

TEST(CategoryLexicon, Errors) {
  std::istringstream conflict("decide\ta\ndecide\tb\n");
  EXPECT_THROW(read_category_lexicon(conflict, "cog"), ValidationError);
  std::istringstream same("decide\ta\ndecide\ta\n");
  EXPECT_EQ(read_category_lexicon(same, "cog").size(), 1u);
  std::istringstream empty("decide\t \n");
  EXPECT_THROW(read_category_lexicon(empty, "cog"), ValidationError);
}

TEST(ShippedData, CognitionListHas98WordsIn11Categories) {
  const auto lex = load_category_lexicon(source_path("data/cognition.tsv").string(), "cognition");
  EXPECT_EQ(lex.size(), 98u);
  EXPECT_EQ(lex.categories().size(), 11u);
  EXPECT_EQ(lex.categories()[0], "analyzing");
}

TEST(ShippedData, BodyListHas292Phrases) {
  const auto lex = load_phrase_lexicon(source_path("data/body_parts.txt").string(), "bpm");
  EXPECT_EQ(lex.size(), 292u);
  std::size_t bi = 0, tri = 0;
  for (const auto& p : lex.entries()) {
    const auto n = std::count(p.begin(), p.end(), ' ');
    bi += n == 1;
    tri += n == 2;
  }
  EXPECT_GT(bi, 0u);
  EXPECT_GT(tri, 0u);
}

TEST(PhraseLexicon, DuplicateRejected) {
  std::istringstream in("heart\nHeart\n");
  EXPECT_THROW(read_phrase_lexicon(in, "bpm"), ValidationError);
}

TEST(Registry, ModeExpansion) {
  std::vector<ScoreLexicon> lex;
  lex.emplace_back("valence");
  const auto reg = build_registry(std::move(lex), std::nullopt, std::nullopt);
  const auto ids = column_ids(reg.features());
  EXPECT_EQ(std::vector<std::string>(ids.end() - 3, ids.end()),
            (std::vector<std::string>{"valence_avg", "valence_count", "valence_flag"}));
}

TEST(Registry, VadWithSlicesGives27AffectColumns) {
  std::vector<ScoreLexicon> lex;
  for (const char* n : {"valence", "arousal", "dominance"}) lex.emplace_back(n);
  lex = expand_thresholds(std::move(lex), {"valence", "arousal", "dominance"}, {});
  const auto reg = build_registry(std::move(lex), std::nullopt, std::nullopt);
  std::size_t affect = 0;
  for (const auto& c : reg.features().columns()) affect += c.group == "affect";
  EXPECT_EQ(affect, 27u);
  EXPECT_EQ(reg.features()[reg.features().structural_count()].id, "valence_avg");
  EXPECT_TRUE(reg.features().index_of("high_valence_flag"));
  EXPECT_TRUE(reg.features().index_of("low_dominance_avg"));
}

TEST(Registry, EmptyHasStructuralColumnsOnly) {
  const auto reg = build_registry({}, std::nullopt, std::nullopt);
  EXPECT_EQ(column_ids(reg.features()), (std::vector<std::string>{"instance_id", "source", "timestamp", "year",
                                                                  "user_id", "word_count", "match_count", "error"}));
}

TEST(Registry, NameCollisionsRejected) {
  std::vector<ScoreLexicon> lex;
  lex.emplace_back("trust");
  EXPECT_THROW(build_registry(std::move(lex), CategoryLexicon("trust"), std::nullopt), ValidationError);
  std::vector<ScoreLexicon> bad;
  bad.emplace_back("Bad Name");
  EXPECT_THROW(build_registry(std::move(bad), std::nullopt, std::nullopt), ValidationError);
}

TEST(Registry, GoldenEnumerationIsStable) {
  const auto a = build_annotator(abcde::testing::golden_config());
  const auto b = build_annotator(abcde::testing::golden_config());
  EXPECT_EQ(a.columns().manifest().dump(), b.columns().manifest().dump());
  const auto ids = column_ids(a.columns());
  for (const char* id : {"bpm_flag", "bpm_my", "bpm_their", "cog_memory_recall_flag", "cog_any_flag",
                         "pron_third_poss_flag", "tense_future_flag", "demo_occupation_soc", "nrc_trust_avg",
                         "wcst_trust_avg", "anxiety_flag", "calmness_count"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  }
  EXPECT_EQ(a.registry().cognition_columns().size(), 11u);
}

TEST(Registry, ManifestDescribesEveryColumn) {
  const auto a = build_annotator(abcde::testing::golden_config());
  const auto m = a.columns().manifest();
  ASSERT_EQ(m["columns"].size(), a.columns().size());
  EXPECT_EQ(m["columns"][0]["id"], "instance_id");
  for (const auto& c : m["columns"]) {
    EXPECT_TRUE(c.contains("kind"));
    EXPECT_TRUE(c.contains("group"));
  }
}
