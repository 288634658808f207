#pragma once

// Average / count / flag aggregates for score lexicons (VAD and its High/Low
// sub-lexicons, emotion intensities, WCST, WorryWords).
//
// count counts hit occurrences (a repeated term counts each time), avg is the
// mean score over those occurrences and is absent when there are none, and
// density is count divided by the instance's non-reserved token count.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "abcde/matcher.hpp"
#include "abcde/tokenizer.hpp"

namespace abcde {

struct AffectSlice {
  std::uint32_t count = 0;
  std::optional<double> avg;
  bool flag = false;
  double density = 0.0;
};

namespace detail {

struct ScoreAccumulator {
  std::uint32_t count = 0;
  double sum = 0.0;
  double min = 1.0;
  double max = 0.0;

  void add(double score) {
    ++count;
    sum += score;
    min = std::min(min, score);
    max = std::max(max, score);
  }

  AffectSlice finish(std::size_t words) const {
    AffectSlice s;
    s.count = count;
    s.flag = count > 0;
    if (count > 0) s.avg = std::clamp(sum / count, min, max);  // keeps min <= avg <= max under rounding
    s.density = words > 0 ? static_cast<double>(count) / static_cast<double>(words) : 0.0;
    return s;
  }
};

}  // namespace detail

// Slice for the compiled lexicon at `lexicon`.
inline AffectSlice score_instance(const TokenSequence& seq, const MatchSet& matches, std::uint32_t lexicon) {
  detail::ScoreAccumulator acc;
  for (const auto& hit : matches) {
    if (hit.lexicon == lexicon) acc.add(hit.score);
  }
  return acc.finish(seq.word_count());
}

// Slices for compiled lexicons [first, first + n), in order.
inline std::vector<AffectSlice> score_all(const TokenSequence& seq, const MatchSet& matches, std::uint32_t first,
                                          std::uint32_t n) {
  std::vector<detail::ScoreAccumulator> acc(n);
  for (const auto& hit : matches) {
    if (hit.lexicon >= first && hit.lexicon < first + n) acc[hit.lexicon - first].add(hit.score);
  }
  const std::size_t words = seq.word_count();
  std::vector<AffectSlice> out;
  out.reserve(n);
  for (const auto& a : acc) out.push_back(a.finish(words));
  return out;
}

}  // namespace abcde
