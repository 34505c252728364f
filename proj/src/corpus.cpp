#include "wsd/corpus.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace wsd {

namespace {

std::string line_error(std::size_t line_no, const std::string& msg) {
  return "corpus line " + std::to_string(line_no) + ": " + msg;
}

// Parses `<name id=value>` where value may be quoted.
std::optional<std::string> parse_directive(std::string_view line, std::string_view name) {
  std::string prefix = "<" + std::string(name) + " id=";
  if (!line.starts_with(prefix)) return std::nullopt;
  if (line.back() != '>') return std::nullopt;
  std::string_view value = line.substr(prefix.size(), line.size() - prefix.size() - 1);
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
    value = value.substr(1, value.size() - 2);
  if (value.empty()) return std::nullopt;
  return std::string(value);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

}  // namespace

Pos pos_from_letter(std::string_view text) {
  if (text.size() == 1) {
    switch (text[0]) {
      case 'n': return Pos::noun;
      case 'v': return Pos::verb;
      case 'a': return Pos::adjective;
      case 'r': return Pos::adverb;
      default: break;
    }
  }
  return Pos::other;
}

char pos_letter(Pos pos) { return static_cast<char>(pos); }

std::vector<Document> parse_corpus(std::istream& is) {
  std::vector<Document> docs;
  std::unordered_set<std::string> sentence_ids;  // per document
  std::unordered_set<std::string> instance_ids;  // per corpus
  std::string line;
  std::size_t line_no = 0;

  auto close_sentence = [&](std::size_t at_line) {
    if (docs.empty() || docs.back().sentences.empty()) return;
    if (docs.back().sentences.back().tokens.empty())
      throw std::runtime_error(line_error(at_line, "empty sentence '" + docs.back().sentences.back().id + "'"));
  };
  auto close_document = [&](std::size_t at_line) {
    if (docs.empty()) return;
    close_sentence(at_line);
    if (docs.back().sentences.empty())
      throw std::runtime_error(line_error(at_line, "document '" + docs.back().id + "' has no sentences"));
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    if (line.front() == '<') {
      if (auto doc_id = parse_directive(line, "doc")) {
        close_document(line_no);
        docs.push_back(Document{*doc_id, {}});
        sentence_ids.clear();
        continue;
      }
      if (auto sent_id = parse_directive(line, "sent")) {
        if (docs.empty()) throw std::runtime_error(line_error(line_no, "sentence outside a document"));
        close_sentence(line_no);
        if (!sentence_ids.insert(*sent_id).second)
          throw std::runtime_error(line_error(line_no, "duplicate sentence id '" + *sent_id + "'"));
        docs.back().sentences.push_back(Sentence{*sent_id, {}});
        continue;
      }
      throw std::runtime_error(line_error(line_no, "unknown directive: " + line));
    }

    if (docs.empty() || docs.back().sentences.empty())
      throw std::runtime_error(line_error(line_no, "token outside a sentence"));

    auto fields = split_tabs(line);
    if (fields.size() != 5)
      throw std::runtime_error(line_error(line_no, "expected 5 tab-separated fields, got " + std::to_string(fields.size())));

    Token tok;
    tok.surface = std::string(fields[0]);
    tok.lemma = std::string(fields[1]);
    tok.pos = pos_from_letter(fields[2]);
    if (tok.surface.empty()) throw std::runtime_error(line_error(line_no, "empty surface field"));
    if (tok.lemma.empty()) throw std::runtime_error(line_error(line_no, "empty lemma field"));

    std::string_view instance = fields[3];
    std::string_view flag = fields[4];
    if (flag != "0" && flag != "1") throw std::runtime_error(line_error(line_no, "target flag must be 0 or 1"));
    if (flag == "1") {
      if (instance == "-") throw std::runtime_error(line_error(line_no, "target token without instance id"));
      if (!tok.is_content()) throw std::runtime_error(line_error(line_no, "target token must be a content word"));
      if (!instance_ids.insert(std::string(instance)).second)
        throw std::runtime_error(line_error(line_no, "duplicate instance id '" + std::string(instance) + "'"));
      tok.instance_id = std::string(instance);
    } else if (instance != "-") {
      throw std::runtime_error(line_error(line_no, "instance id on a non-target token"));
    }

    docs.back().sentences.back().tokens.push_back(std::move(tok));
  }
  close_document(line_no);
  return docs;
}

void write_corpus(const std::vector<Document>& docs, std::ostream& os) {
  for (const Document& doc : docs) {
    os << "<doc id=" << doc.id << ">\n";
    for (const Sentence& sent : doc.sentences) {
      os << "<sent id=" << sent.id << ">\n";
      for (const Token& tok : sent.tokens) {
        os << tok.surface << '\t' << tok.lemma << '\t' << pos_letter(tok.pos) << '\t'
           << (tok.instance_id ? *tok.instance_id : "-") << '\t' << (tok.instance_id ? '1' : '0') << '\n';
      }
    }
  }
}

ContextWindow extend_window(const Document& doc, std::size_t target_sentence, const WindowOptions& options) {
  if (target_sentence >= doc.sentences.size()) throw std::out_of_range("target sentence index out of range");

  auto sentence_count = [&](std::size_t s) {
    if (options.count_all_tokens) return static_cast<long long>(doc.sentences[s].tokens.size());
    long long c = 0;
    for (const Token& t : doc.sentences[s].tokens)
      if (t.is_content()) ++c;
    return c;
  };

  std::size_t first = target_sentence;
  std::size_t last = target_sentence;
  long long count = sentence_count(target_sentence);
  const long long wanted = options.min_words;

  auto grow_forward = [&]() {
    if (last + 1 >= doc.sentences.size()) return false;
    ++last;
    count += sentence_count(last);
    return true;
  };
  auto grow_backward = [&]() {
    if (first == 0) return false;
    --first;
    count += sentence_count(first);
    return true;
  };

  while (count < wanted) {
    bool grew = options.previous_first ? grow_backward() : grow_forward();
    if (count >= wanted) break;
    grew = (options.previous_first ? grow_forward() : grow_backward()) || grew;
    if (!grew) break;
  }

  ContextWindow w;
  w.document = &doc;
  w.target_sentence = target_sentence;
  w.span_first = first;
  w.span_last = last;
  for (std::size_t s = first; s <= last; ++s)
    for (std::size_t t = 0; t < doc.sentences[s].tokens.size(); ++t)
      if (doc.sentences[s].tokens[t].is_content()) w.content.push_back(ContextWindow::Ref{s, t});
  return w;
}

}  // namespace wsd
