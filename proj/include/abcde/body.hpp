#pragma once

// Possessive body-part mentions (BPMs).
//
// A BPM hit starting at token i counts for pronoun p when token i-1 is exactly
// p, with p one of my/your/his/her/its/our/their. Multi-token BPMs anchor on
// their first token. Hits without an adjacent possessive are ignored except by
// the optional any-count.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "abcde/matcher.hpp"
#include "abcde/registry.hpp"
#include "abcde/tokenizer.hpp"

namespace abcde {

struct BPMFeatures {
  std::array<std::vector<std::string>, kPossessives.size()> by_pronoun;  // indexed like kPossessives
  bool flag = false;
  std::uint32_t any_count = 0;  // all BPM hits, possessive or not

  const std::vector<std::string>& list(std::string_view pronoun) const {
    for (std::size_t i = 0; i < kPossessives.size(); ++i) {
      if (kPossessives[i] == pronoun) return by_pronoun[i];
    }
    static const std::vector<std::string> none;
    return none;
  }
};

inline int possessive_index(std::string_view word) {
  for (std::size_t i = 0; i < kPossessives.size(); ++i) {
    if (kPossessives[i] == word) return static_cast<int>(i);
  }
  return -1;
}

inline BPMFeatures detect_bpm(const TokenSequence& seq, const MatchSet& matches, const CompiledMatcher& matcher,
                              std::uint32_t bpm_lexicon) {
  BPMFeatures out;
  for (const auto& hit : matches) {
    if (hit.lexicon != bpm_lexicon) continue;
    ++out.any_count;
    if (hit.start == 0 || !seq[hit.start - 1].matchable()) continue;
    const int p = possessive_index(seq.text(hit.start - 1));
    if (p < 0) continue;
    out.by_pronoun[static_cast<std::size_t>(p)].push_back(matcher.phrase(hit.phrase));
    out.flag = true;
  }
  return out;
}

}  // namespace abcde
