#pragma once

// Token-level multi-pattern matcher over the union of all lexicons.
//
// Phrases are at most three tokens, so the automaton is a depth-3 trie over
// interned token ids; a scan visits each start position once and walks at most
// three edges, with no failure links needed. Every trie node that ends a phrase
// carries the (lexicon, payload) pairs of all lexicons containing that phrase.
//
// Overlap rule: within one lexicon, hits are leftmost-longest and
// non-overlapping ("heart rate" suppresses "heart" and "rate" from the same
// lexicon). Hits from different lexicons never interact, with one exception:
// a High/Low sub-lexicon is not matched on its own but filters its parent's
// hits by score. Matching it independently would let "heart" (high valence)
// fire inside a low-valence "broken heart".

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "abcde/lexicon.hpp"
#include "abcde/tokenizer.hpp"

namespace abcde {

enum class LexiconKind : std::uint8_t { score, category, phrase };

using LexiconRef = std::variant<std::reference_wrapper<const ScoreLexicon>,
                                std::reference_wrapper<const CategoryLexicon>,
                                std::reference_wrapper<const PhraseLexicon>>;

struct Hit {
  std::uint32_t lexicon = 0;  // index into the compiled lexicon list
  std::uint32_t phrase = 0;   // id into CompiledMatcher::phrase()
  std::uint32_t start = 0;    // token index
  std::uint8_t length = 0;    // tokens covered, 1..3
  double score = 0.0;         // score lexicons only
  std::uint32_t category = 0; // category lexicons only

  friend bool operator==(const Hit&, const Hit&) = default;
};

struct MatchSet {
  std::vector<Hit> hits;  // sorted by (start, lexicon)

  std::size_t size() const noexcept { return hits.size(); }
  bool empty() const noexcept { return hits.empty(); }
  auto begin() const noexcept { return hits.begin(); }
  auto end() const noexcept { return hits.end(); }
};

class CompiledMatcher {
 public:
  CompiledMatcher() : nodes_(1) {}

  explicit CompiledMatcher(const std::vector<LexiconRef>& lexicons) : nodes_(1) {
    for (const auto& ref : lexicons) {
      std::visit([&](const auto& lex) { add(lex.get()); }, ref);
    }
  }

  std::size_t lexicon_count() const noexcept { return names_.size(); }
  const std::string& lexicon_name(std::size_t i) const { return names_[i]; }
  LexiconKind lexicon_kind(std::size_t i) const { return kinds_[i]; }
  std::optional<std::uint32_t> lexicon_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<std::uint32_t>(i);
    }
    return std::nullopt;
  }
  const std::string& phrase(std::uint32_t id) const { return phrases_[id]; }
  std::size_t phrase_count() const noexcept { return phrases_.size(); }

  // Every payload stored for a normalized phrase (empty when not indexed).
  std::vector<Hit> lookup(std::string_view normalized) const {
    std::uint32_t node = 0;
    std::size_t depth = 0;
    for (auto word : text::split(normalized, ' ')) {
      const auto tok = vocab_.find(std::string(word));
      if (tok == vocab_.end() || ++depth > kMaxPhraseTokens) return {};
      const auto edge = edges_.find(edge_key(node, tok->second));
      if (edge == edges_.end()) return {};
      node = edge->second;
    }
    std::vector<Hit> out;
    for (const auto& p : nodes_[node].payloads) {
      out.push_back({p.lexicon, nodes_[node].phrase, 0, static_cast<std::uint8_t>(depth), p.score, p.category});
    }
    return out;
  }

  MatchSet find_matches(const TokenSequence& seq) const {
    MatchSet result;
    const std::size_t n = seq.size();
    if (n == 0 || names_.empty()) return result;

    std::vector<std::uint32_t> ids(n, kNoToken);
    for (std::size_t i = 0; i < n; ++i) {
      if (!seq[i].matchable()) continue;
      const auto it = vocab_.find(seq.text(i));
      if (it != vocab_.end()) ids[i] = it->second;
    }

    std::vector<std::size_t> next_free(names_.size(), 0);
    std::uint32_t path[kMaxPhraseTokens];
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t depth = 0;
      std::uint32_t node = 0;
      while (depth < kMaxPhraseTokens && i + depth < n && ids[i + depth] != kNoToken) {
        const auto edge = edges_.find(edge_key(node, ids[i + depth]));
        if (edge == edges_.end()) break;
        node = edge->second;
        path[depth++] = node;
      }
      const std::size_t first = result.hits.size();
      for (std::size_t d = depth; d-- > 0;) {
        const Node& nd = nodes_[path[d]];
        for (const auto& p : nd.payloads) {
          if (next_free[p.lexicon] > i) continue;
          next_free[p.lexicon] = i + d + 1;
          result.hits.push_back({p.lexicon, nd.phrase, static_cast<std::uint32_t>(i),
                                 static_cast<std::uint8_t>(d + 1), p.score, p.category});
        }
      }
      if (!slices_.empty()) {
        for (std::size_t h = first, end = result.hits.size(); h < end; ++h) {
          for (const auto& s : slices_) {
            const Hit hit = result.hits[h];
            if (hit.lexicon == s.parent && s.derivation.keeps(hit.score)) {
              result.hits.push_back(hit);
              result.hits.back().lexicon = s.lexicon;
            }
          }
        }
      }
      std::sort(result.hits.begin() + static_cast<std::ptrdiff_t>(first), result.hits.end(),
                [](const Hit& a, const Hit& b) { return a.lexicon < b.lexicon; });
    }
    return result;
  }

 private:
  static constexpr std::uint32_t kNoToken = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kNoPhrase = std::numeric_limits<std::uint32_t>::max();

  struct Payload {
    std::uint32_t lexicon;
    double score;
    std::uint32_t category;
  };

  struct Node {
    std::uint32_t phrase = kNoPhrase;
    std::vector<Payload> payloads;
  };

  // A derived sub-lexicon takes the parent's matched occurrences that pass its
  // bound, so its hits are always a subset of the parent's.
  struct Slice {
    std::uint32_t lexicon;
    std::uint32_t parent;
    Derivation derivation;
  };

  static std::uint64_t edge_key(std::uint32_t node, std::uint32_t token) {
    return (static_cast<std::uint64_t>(node) << 32) | token;
  }

  std::uint32_t intern(std::string_view word) {
    const auto [it, inserted] = vocab_.emplace(std::string(word), static_cast<std::uint32_t>(vocab_.size()));
    return it->second;
  }

  Node& insert_phrase(const std::string& phrase) {
    std::uint32_t node = 0;
    for (auto word : text::split(phrase, ' ')) {
      const std::uint64_t key = edge_key(node, intern(word));
      auto it = edges_.find(key);
      if (it == edges_.end()) {
        it = edges_.emplace(key, static_cast<std::uint32_t>(nodes_.size())).first;
        nodes_.emplace_back();
      }
      node = it->second;
    }
    Node& nd = nodes_[node];
    if (nd.phrase == kNoPhrase) {
      nd.phrase = static_cast<std::uint32_t>(phrases_.size());
      phrases_.push_back(phrase);
    }
    return nd;
  }

  std::uint32_t register_lexicon(const std::string& name, LexiconKind kind) {
    names_.push_back(name);
    kinds_.push_back(kind);
    return static_cast<std::uint32_t>(names_.size() - 1);
  }

  void add(const ScoreLexicon& lex) {
    if (const auto& d = lex.derivation()) {
      const auto parent = lexicon_index(d->parent);
      if (!parent || kinds_[*parent] != LexiconKind::score) {
        throw ValidationError("sub-lexicon '" + lex.name() + "' must follow its parent '" + d->parent + "'");
      }
      slices_.push_back({register_lexicon(lex.name(), LexiconKind::score), *parent, *d});
      return;
    }
    const auto id = register_lexicon(lex.name(), LexiconKind::score);
    for (const auto& [term, score] : lex.entries()) insert_phrase(term).payloads.push_back({id, score, 0});
  }

  void add(const CategoryLexicon& lex) {
    const auto id = register_lexicon(lex.name(), LexiconKind::category);
    for (const auto& [term, cat] : lex.entries()) {
      insert_phrase(term).payloads.push_back({id, 0.0, static_cast<std::uint32_t>(cat)});
    }
  }

  void add(const PhraseLexicon& lex) {
    const auto id = register_lexicon(lex.name(), LexiconKind::phrase);
    for (const auto& term : lex.entries()) insert_phrase(term).payloads.push_back({id, 0.0, 0});
  }

  std::vector<std::string> names_;
  std::vector<LexiconKind> kinds_;
  std::unordered_map<std::string, std::uint32_t> vocab_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<Node> nodes_;
  std::vector<std::string> phrases_;
  std::vector<Slice> slices_;
};

inline CompiledMatcher compile(const std::vector<LexiconRef>& lexicons) { return CompiledMatcher(lexicons); }

inline MatchSet find_matches(const CompiledMatcher& m, const TokenSequence& seq) { return m.find_matches(seq); }

}  // namespace abcde
