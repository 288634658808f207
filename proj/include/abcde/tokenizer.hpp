#pragma once

// Shared tokenizer for every corpus.
//
// Token classes:
//
//   class     | example input        | token text  | matchable | in word_count
//   ----------+----------------------+-------------+-----------+--------------
//   word      | "Heart", "I'm", "24" | "heart" ... | yes       | yes
//   url       | "https://x.co/a"     | "<url>"     | no        | no
//   mention   | "@user_1"            | "<mention>" | no        | no
//   hashtag   | "#blessed"           | "<hashtag>" | no        | no
//
// Words are maximal runs of word characters (letters, digits, non-ASCII
// letters) joined by internal apostrophes; "don't" and "I’m" stay whole and the
// apostrophe is normalized to '\''. Everything else (punctuation, symbols,
// emoji, hyphens) separates tokens and is dropped. URLs start with http://,
// https:// or www. at a token boundary and run to the next whitespace, minus
// trailing punctuation. Mentions are '@' + [A-Za-z0-9_]+ and hashtags '#' + a
// word, both at a token boundary. Spans are byte offsets into the input.
//
// No stemming or lemmatization happens here.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abcde/error.hpp"
#include "abcde/text.hpp"

namespace abcde {

enum class TokenClass : std::uint8_t { word, url, mention, hashtag };

struct Token {
  std::string text;
  TokenClass cls = TokenClass::word;
  std::size_t begin = 0;  // byte offset of first byte
  std::size_t end = 0;    // one past the last byte

  bool matchable() const noexcept { return cls == TokenClass::word; }
};

class TokenSequence {
 public:
  TokenSequence() = default;
  explicit TokenSequence(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  // Builds a sequence of plain word tokens; spans are synthetic.
  static TokenSequence from_words(const std::vector<std::string>& words) {
    std::vector<Token> tokens;
    std::size_t offset = 0;
    for (const auto& w : words) {
      Token t{w, TokenClass::word, offset, offset + w.size()};
      if (w == "<url>") t.cls = TokenClass::url;
      if (w == "<mention>") t.cls = TokenClass::mention;
      if (w == "<hashtag>") t.cls = TokenClass::hashtag;
      offset = t.end + 1;
      tokens.push_back(std::move(t));
    }
    return TokenSequence(std::move(tokens));
  }

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  const std::string& text(std::size_t i) const { return tokens_[i].text; }
  auto begin() const noexcept { return tokens_.begin(); }
  auto end() const noexcept { return tokens_.end(); }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    out.reserve(tokens_.size());
    for (const auto& t : tokens_) out.push_back(t.text);
    return out;
  }

  // Non-reserved token count; the density denominator.
  std::size_t word_count() const noexcept {
    std::size_t n = 0;
    for (const auto& t : tokens_) n += t.matchable();
    return n;
  }

 private:
  std::vector<Token> tokens_;
};

namespace detail {

inline bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[i]) return false;
  }
  return true;
}

inline bool ascii_ident(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

inline bool trailing_url_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' || c == ')' ||
         c == ']' || c == '}' || c == '"' || c == '\'';
}

}  // namespace detail

// Throws Utf8Error on malformed input.
inline TokenSequence tokenize(std::string_view input) {
  using text::decode_utf8;
  std::vector<Token> tokens;
  const std::size_t n = input.size();
  std::size_t pos = 0;
  bool prev_word = false;  // previous code point was a word character

  const auto next_cp = [&](std::size_t at) -> text::Decoded {
    return at < n ? decode_utf8(input, at) : text::Decoded{0, 0};
  };

  while (pos < n) {
    const auto [cp, len] = decode_utf8(input, pos);

    if (!prev_word) {
      if (detail::starts_with_ci(input, pos, "http://") ||
          detail::starts_with_ci(input, pos, "https://") ||
          detail::starts_with_ci(input, pos, "www.")) {
        std::size_t end = pos;
        while (end < n) {
          const auto d = decode_utf8(input, end);
          if (text::is_space(d.cp)) break;
          end += d.length;
        }
        std::size_t trimmed = end;
        while (trimmed > pos + 4 && detail::trailing_url_punct(input[trimmed - 1])) --trimmed;
        tokens.push_back({"<url>", TokenClass::url, pos, trimmed});
        pos = end;
        continue;
      }
      if (cp == U'@' && pos + 1 < n && detail::ascii_ident(input[pos + 1])) {
        std::size_t end = pos + 1;
        while (end < n && detail::ascii_ident(input[end])) ++end;
        tokens.push_back({"<mention>", TokenClass::mention, pos, end});
        pos = end;
        prev_word = true;
        continue;
      }
      if (cp == U'#' && pos + 1 < n && text::is_word_char(next_cp(pos + 1).cp)) {
        std::size_t end = pos + 1;
        while (end < n) {
          const auto d = decode_utf8(input, end);
          if (!text::is_word_char(d.cp)) break;
          end += d.length;
        }
        tokens.push_back({"<hashtag>", TokenClass::hashtag, pos, end});
        pos = end;
        prev_word = true;
        continue;
      }
    }

    if (!text::is_word_char(cp)) {
      prev_word = false;
      pos += len;
      continue;
    }

    Token tok;
    tok.begin = pos;
    std::size_t at = pos;
    while (at < n) {
      const auto d = decode_utf8(input, at);
      if (text::is_word_char(d.cp)) {
        text::append_utf8(tok.text, text::to_lower(d.cp));
        at += d.length;
        continue;
      }
      if (text::is_apostrophe(d.cp) && at + d.length < n &&
          text::is_word_char(decode_utf8(input, at + d.length).cp)) {
        tok.text.push_back('\'');
        at += d.length;
        continue;
      }
      break;
    }
    tok.end = at;
    tokens.push_back(std::move(tok));
    pos = at;
    prev_word = true;
  }
  return TokenSequence(std::move(tokens));
}

// All contiguous n-token windows, space-joined, with their start index.
inline std::vector<std::pair<std::string, std::size_t>> ngrams(const TokenSequence& seq, std::size_t n) {
  std::vector<std::pair<std::string, std::size_t>> out;
  if (n == 0 || seq.size() < n) return out;
  out.reserve(seq.size() - n + 1);
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::string phrase = seq.text(i);
    for (std::size_t k = 1; k < n; ++k) {
      phrase.push_back(' ');
      phrase += seq.text(i + k);
    }
    out.emplace_back(std::move(phrase), i);
  }
  return out;
}

inline std::size_t word_count(std::string_view input) { return tokenize(input).word_count(); }

}  // namespace abcde
