#include "wsd/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace wsd {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Pos pos_from_coarse_tag(std::string_view tag) {
  if (tag == "NOUN") return Pos::noun;
  if (tag == "VERB") return Pos::verb;
  if (tag == "ADJ") return Pos::adjective;
  if (tag == "ADV") return Pos::adverb;
  return Pos::other;
}

std::optional<char> pos_letter_from_synset_type(char type) {
  switch (type) {
    case '1': return 'n';
    case '2': return 'v';
    case '3': return 'a';
    case '4': return 'r';
    case '5': return 'a';  // satellite adjectives live in the adjective space
    default: return std::nullopt;
  }
}

const std::string& require_attr(const boost::property_tree::ptree& node, const std::string& name,
                                const std::string& element) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (attrs) {
    auto value = attrs->get_child_optional(name);
    if (value) return value->data();
  }
  throw std::runtime_error("unified xml: <" + element + "> element missing '" + name + "' attribute");
}

}  // namespace

std::vector<Document> parse_unified_xml(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(is, tree, pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw std::runtime_error("unified xml: parse error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  auto corpus = tree.get_child_optional("corpus");
  if (!corpus) throw std::runtime_error("unified xml: missing <corpus> root element");

  std::vector<Document> docs;
  for (const auto& [text_name, text_node] : *corpus) {
    if (text_name != "text") continue;
    Document doc;
    doc.id = require_attr(text_node, "id", "text");
    for (const auto& [sent_name, sent_node] : text_node) {
      if (sent_name != "sentence") continue;
      Sentence sent;
      sent.id = require_attr(sent_node, "id", "sentence");
      for (const auto& [tok_name, tok_node] : sent_node) {
        if (tok_name == "wf") {
          Token tok;
          tok.surface = tok_node.data();
          tok.lemma = lowercase(require_attr(tok_node, "lemma", "wf"));
          tok.pos = pos_from_coarse_tag(require_attr(tok_node, "pos", "wf"));
          sent.tokens.push_back(std::move(tok));
        } else if (tok_name == "instance") {
          Token tok;
          tok.surface = tok_node.data();
          tok.lemma = lowercase(require_attr(tok_node, "lemma", "instance"));
          tok.pos = pos_from_coarse_tag(require_attr(tok_node, "pos", "instance"));
          tok.instance_id = require_attr(tok_node, "id", "instance");
          if (!tok.is_content())
            throw std::runtime_error("unified xml: instance '" + *tok.instance_id + "' has non-content pos");
          sent.tokens.push_back(std::move(tok));
        }
      }
      if (sent.tokens.empty()) throw std::runtime_error("unified xml: empty sentence '" + sent.id + "'");
      doc.sentences.push_back(std::move(sent));
    }
    if (doc.sentences.empty()) throw std::runtime_error("unified xml: text '" + doc.id + "' has no sentences");
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw std::runtime_error("unified xml: no <text> elements");
  return docs;
}

std::size_t count_instances(std::span<const Document> docs) {
  std::size_t n = 0;
  for (const Document& doc : docs)
    for (const Sentence& sent : doc.sentences)
      for (const Token& tok : sent.tokens)
        if (tok.instance_id) ++n;
  return n;
}

SenseIndex SenseIndex::load(std::istream& is) {
  SenseIndex idx;
  std::string line;
  std::size_t line_no = 0;
  auto bad = [&line_no](const std::string& msg) {
    return std::runtime_error("index.sense line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::istringstream fields(line);
    Entry e;
    std::string offset, sense_number, tag_count;
    if (!(fields >> e.sense_key >> offset >> sense_number >> tag_count)) throw bad("expected 4 fields");

    std::size_t percent = e.sense_key.find('%');
    if (percent == std::string::npos || percent == 0 || percent + 1 >= e.sense_key.size())
      throw bad("sense key '" + e.sense_key + "' has no %-separator");
    e.lemma = e.sense_key.substr(0, percent);
    auto pos = pos_letter_from_synset_type(e.sense_key[percent + 1]);
    if (!pos) throw bad("sense key '" + e.sense_key + "' has unknown synset type");

    if (offset.size() != 8 || !std::all_of(offset.begin(), offset.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw bad("bad synset offset '" + offset + "'");
    e.concept = offset + '-' + *pos;

    auto parse_uint = [&bad](const std::string& text, const char* what) {
      std::uint64_t value = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || p != text.data() + text.size()) throw bad(std::string("bad ") + what + " '" + text + "'");
      return value;
    };
    e.sense_number = static_cast<int>(parse_uint(sense_number, "sense number"));
    e.tag_count = parse_uint(tag_count, "tag count");

    if (!idx.by_key_.emplace(e.sense_key, idx.entries_.size()).second)
      throw bad("duplicate sense key '" + e.sense_key + "'");
    idx.by_concept_[e.concept].push_back(idx.entries_.size());
    idx.entries_.push_back(std::move(e));
  }
  if (idx.entries_.empty()) throw std::runtime_error("index.sense: empty input");
  return idx;
}

const SenseIndex::Entry* SenseIndex::find_key(std::string_view sense_key) const {
  auto it = by_key_.find(std::string(sense_key));
  return it == by_key_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> SenseIndex::keys_for(std::string_view concept, std::string_view lemma) const {
  auto it = by_concept_.find(std::string(concept));
  if (it == by_concept_.end()) return {};
  std::vector<const Entry*> owned;
  for (std::size_t i : it->second)
    if (entries_[i].lemma == lemma) owned.push_back(&entries_[i]);
  std::sort(owned.begin(), owned.end(), [](const Entry* a, const Entry* b) { return a->sense_number < b->sense_number; });
  std::vector<std::string> keys;
  keys.reserve(owned.size());
  for (const Entry* e : owned) keys.push_back(e->sense_key);
  return keys;
}

void SenseIndex::write_dictionary(std::ostream& os) const {
  struct Sense {
    std::string concept;
    std::uint64_t count;
    int first_sense_number;
  };
  std::map<std::string, std::vector<Sense>> headwords;
  for (const Entry& e : entries_) {
    std::string headword = e.lemma + '#' + e.concept.back();
    auto& senses = headwords[headword];
    auto it = std::find_if(senses.begin(), senses.end(), [&](const Sense& s) { return s.concept == e.concept; });
    if (it == senses.end())
      senses.push_back(Sense{e.concept, e.tag_count, e.sense_number});
    else {
      // Same concept reachable through several keys of one lemma (case
      // variants collapse when lowercasing): merge the counts.
      it->count += e.tag_count;
      it->first_sense_number = std::min(it->first_sense_number, e.sense_number);
    }
  }
  for (auto& [headword, senses] : headwords) {
    std::stable_sort(senses.begin(), senses.end(),
                     [](const Sense& a, const Sense& b) { return a.first_sense_number < b.first_sense_number; });
    os << headword;
    for (const Sense& s : senses) os << ' ' << s.concept << ':' << s.count;
    os << '\n';
  }
}

std::vector<KeyLine> predictions_to_sense_keys(std::span<const Prediction> predictions, const SenseIndex& idx,
                                               std::size_t* dropped) {
  std::vector<KeyLine> out;
  std::size_t drop_count = 0;
  for (const Prediction& pred : predictions) {
    std::size_t hash = pred.headword.rfind('#');
    std::string lemma = hash == std::string::npos ? pred.headword : pred.headword.substr(0, hash);
    KeyLine kl;
    kl.instance_id = pred.instance_id;
    for (const ScoredSense& sense : pred.ranked)
      for (std::string& key : idx.keys_for(sense.concept, lemma)) kl.keys.push_back(std::move(key));
    if (kl.keys.empty()) {
      ++drop_count;
      continue;
    }
    out.push_back(std::move(kl));
  }
  if (dropped) *dropped = drop_count;
  return out;
}

std::vector<KeyLine> keys_to_concepts(std::span<const KeyLine> lines, const SenseIndex& idx, std::size_t* dropped) {
  std::vector<KeyLine> out;
  std::size_t drop_count = 0;
  for (const KeyLine& line : lines) {
    KeyLine kl;
    kl.instance_id = line.instance_id;
    for (const std::string& key : line.keys) {
      const auto* entry = idx.find_key(key);
      if (!entry) {
        ++drop_count;
        continue;
      }
      if (std::find(kl.keys.begin(), kl.keys.end(), entry->concept) == kl.keys.end()) kl.keys.push_back(entry->concept);
    }
    if (kl.keys.empty()) {
      ++drop_count;
      continue;
    }
    out.push_back(std::move(kl));
  }
  if (dropped) *dropped = drop_count;
  return out;
}

}  // namespace wsd
