#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsd {

enum class Pos : char { noun = 'n', verb = 'v', adjective = 'a', adverb = 'r', other = 'x' };

Pos pos_from_letter(std::string_view text);
char pos_letter(Pos pos);

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::other;
  std::optional<std::string> instance_id;  // present iff this token is a disambiguation target

  bool is_content() const { return pos != Pos::other; }
  std::string headword() const { return lemma + '#' + pos_letter(pos); }
  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  bool operator==(const Document&) const = default;
};

/// Content tokens of a contiguous sentence interval around a target sentence.
struct ContextWindow {
  struct Ref {
    std::size_t sentence;
    std::size_t token;
  };

  const Document* document = nullptr;
  std::size_t target_sentence = 0;
  std::size_t span_first = 0;
  std::size_t span_last = 0;
  std::vector<Ref> content;  // content tokens of the span, document order

  const Token& token(std::size_t i) const { return document->sentences[content[i].sentence].tokens[content[i].token]; }
  bool in_target_sentence(std::size_t i) const { return content[i].sentence == target_sentence; }
  std::size_t size() const { return content.size(); }
};

struct WindowOptions {
  int min_words = 20;             // 0 = the target sentence alone
  bool count_all_tokens = false;  // count every token toward min_words instead of content tokens only
  bool previous_first = false;    // grow toward earlier sentences before later ones
};

/// Grows the window from the target sentence until the word count reaches
/// min_words or the document is exhausted, adding the next following
/// sentence first and the next previous sentence second on each round.
ContextWindow extend_window(const Document& doc, std::size_t target_sentence, const WindowOptions& options = {});

/// Parses the line-oriented corpus format: `<doc id=...>` and `<sent id=...>`
/// directives followed by token lines of 5 tab-separated fields
/// `surface TAB lemma TAB pos TAB instance_id_or_- TAB target_flag`. Blank
/// lines are ignored. Throws std::runtime_error with a line number on
/// unknown directives, field-count mismatches, or invariant violations.
std::vector<Document> parse_corpus(std::istream& is);

/// Canonical serialization of parse_corpus output; parse(write(docs)) == docs.
void write_corpus(const std::vector<Document>& docs, std::ostream& os);

}  // namespace wsd
