#pragma once

// Shallow English analysis for questions: tokenization, rule-based
// lemmatization, lexicon-driven POS tagging, JJ* NN+ chunking, and extraction
// of the candidate phrases handed to the semantic mapper.

#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlq/error.hpp"
#include "nlq/strings.hpp"

namespace nlq {

inline constexpr std::size_t kMaxQuestionLength = 1024;

/// Half-open byte range into the source question.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string surface;
  std::string norm;
  Span span;
};

enum class PosTag { NN, NNS, JJ, VB, VBD, VBG, VBN, VBZ, DT, IN, WP, WRB, CC, CD, OTHER };

inline constexpr std::array<std::pair<PosTag, std::string_view>, 15> kPosTagNames{{
    {PosTag::NN, "NN"},   {PosTag::NNS, "NNS"}, {PosTag::JJ, "JJ"},       {PosTag::VB, "VB"},
    {PosTag::VBD, "VBD"}, {PosTag::VBG, "VBG"}, {PosTag::VBN, "VBN"},     {PosTag::VBZ, "VBZ"},
    {PosTag::DT, "DT"},   {PosTag::IN, "IN"},   {PosTag::WP, "WP"},       {PosTag::WRB, "WRB"},
    {PosTag::CC, "CC"},   {PosTag::CD, "CD"},   {PosTag::OTHER, "OTHER"},
}};

inline std::string_view to_string(PosTag tag) {
  for (const auto& [t, name] : kPosTagNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

inline std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto& [t, n] : kPosTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

inline bool is_noun(PosTag tag) { return tag == PosTag::NN || tag == PosTag::NNS; }

/// A lemma with its tag. `norm` and `span` tie it back to the source token;
/// they are empty when tagging bare lemmas.
struct TaggedToken {
  std::string lemma;
  PosTag tag = PosTag::OTHER;
  std::string norm;
  Span span;
};

enum class PhraseKind { kNoun, kAdjective, kNounPhrase };

inline std::string_view to_string(PhraseKind kind) {
  switch (kind) {
    case PhraseKind::kNoun: return "noun";
    case PhraseKind::kAdjective: return "adjective";
    case PhraseKind::kNounPhrase: return "noun_phrase";
  }
  return "noun";
}

struct CandidatePhrase {
  std::vector<std::string> lemmas;
  std::vector<std::string> words;  // normalized surface forms, parallel to lemmas
  PhraseKind kind = PhraseKind::kNoun;
  Span span;

  std::string lemma_text() const { return join(lemmas, " "); }
  std::string word_text() const { return join(words, " "); }
  friend bool operator==(const CandidatePhrase&, const CandidatePhrase&) = default;
};

// ---------------------------------------------------------------------------
// Tokenization

namespace detail {

inline bool is_edge_punct(char c) {
  return c == '?' || c == '.' || c == '!' || c == ',' || c == '\'' || c == '"';
}

}  // namespace detail

/// Splits on ASCII whitespace. Surfaces are the raw pieces; norms are
/// lowercased with ? . ! , ' " stripped from both edges. A piece made only of
/// such punctuation yields no token.
inline std::vector<Token> tokenize(std::string_view question) {
  if (normalize_phrase(question).empty()) {
    throw Error(ErrorCode::kEmptyQuestion, "question is empty");
  }
  if (utf8_length(question) > kMaxQuestionLength) {
    throw Error(ErrorCode::kQuestionTooLong,
                "question exceeds " + std::to_string(kMaxQuestionLength) + " characters");
  }

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < question.size()) {
    while (i < question.size() && is_ascii_space(question[i])) ++i;
    if (i == question.size()) break;
    std::size_t start = i;
    while (i < question.size() && !is_ascii_space(question[i])) ++i;
    std::string_view piece = question.substr(start, i - start);

    std::size_t lo = 0, hi = piece.size();
    while (lo < hi && detail::is_edge_punct(piece[lo])) ++lo;
    while (hi > lo && detail::is_edge_punct(piece[hi - 1])) --hi;
    if (lo == hi) continue;

    tokens.push_back(Token{std::string(piece), to_lower_ascii(piece.substr(lo, hi - lo)),
                           Span{start, i}});
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Lemmatization

namespace detail {

inline const std::unordered_map<std::string_view, std::string_view>& lemma_exceptions() {
  static const std::unordered_map<std::string_view, std::string_view> table{
      {"is", "be"},        {"are", "be"},         {"am", "be"},         {"was", "be"},
      {"were", "be"},      {"been", "be"},        {"being", "be"},      {"has", "have"},
      {"had", "have"},     {"having", "have"},    {"does", "do"},       {"did", "do"},
      {"done", "do"},      {"goes", "go"},        {"went", "go"},       {"gone", "go"},
      {"men", "man"},      {"women", "woman"},    {"children", "child"}, {"people", "person"},
      {"feet", "foot"},    {"teeth", "tooth"},    {"mice", "mouse"},    {"geese", "goose"},
      {"knives", "knife"}, {"wives", "wife"},     {"lives", "life"},    {"olives", "olive"},
      {"caves", "cave"},   {"drives", "drive"},   {"gloves", "glove"},  {"moves", "move"},
      {"natives", "native"}, {"relatives", "relative"}, {"archives", "archive"},
      {"curves", "curve"}, {"valves", "valve"},   {"waves", "wave"},    {"stoves", "stove"},
      {"serves", "serve"}, {"reserves", "reserve"}, {"menus", "menu"},  {"gurus", "guru"},
      {"buses", "bus"},    {"potatoes", "potato"}, {"tomatoes", "tomato"}, {"heroes", "hero"},
  };
  return table;
}

}  // namespace detail

namespace detail {

inline std::string apply_suffix_rules(const std::string& w) {
  const std::size_t n = w.size();
  if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
  if (n > 4 && ends_with(w, "ves")) return w.substr(0, n - 3) + "f";
  if (n > 3 && ends_with(w, "es")) {
    std::string_view stem(w.data(), n - 2);
    if (ends_with(stem, "x") || ends_with(stem, "z") || ends_with(stem, "ch") ||
        ends_with(stem, "sh") || ends_with(stem, "ss")) {
      return std::string(stem);
    }
  }
  if (n > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, n - 1);
  }
  return w;
}

}  // namespace detail

/// Exception table first, then the first matching suffix rule:
///   -ies -> -y, -ves -> -f, -es -> "" after x/z/ch/sh/ss, -s -> "" (length > 3).
/// The -s rule leaves words ending in ss/us/is alone, so no rule output ends
/// in "s"; a rule output that is itself an exception key ("mens" -> "men") is
/// mapped once more. Together these make the function idempotent.
inline std::string lemmatize(std::string_view norm) {
  const auto& exceptions = detail::lemma_exceptions();
  if (auto it = exceptions.find(norm); it != exceptions.end()) return std::string(it->second);
  std::string base = detail::apply_suffix_rules(std::string(norm));
  if (auto it = exceptions.find(base); it != exceptions.end()) return std::string(it->second);
  return base;
}

// ---------------------------------------------------------------------------
// POS tagging

/// Word -> tag table loaded from `word<TAB>TAG` lines. Blank lines and lines
/// starting with '#' are ignored.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon parse(std::istream& in, const std::string& origin = "<lexicon>") {
    Lexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw Error(ErrorCode::kConfigError,
                    origin + ":" + std::to_string(line_no) + ": expected word<TAB>TAG");
      }
      auto tag = parse_pos_tag(line.substr(tab + 1));
      if (!tag) {
        throw Error(ErrorCode::kConfigError, origin + ":" + std::to_string(line_no) +
                                                 ": unknown tag '" + line.substr(tab + 1) + "'");
      }
      lex.add(line.substr(0, tab), *tag);
    }
    return lex;
  }

  static Lexicon load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfigError, "cannot open lexicon " + path);
    return parse(in, path);
  }

  void add(std::string_view word, PosTag tag) { entries_[to_lower_ascii(word)] = tag; }

  std::optional<PosTag> find(std::string_view word) const {
    if (auto it = entries_.find(std::string(word)); it != entries_.end()) return it->second;
    return std::nullopt;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

namespace detail {

inline std::optional<PosTag> closed_class_tag(std::string_view w) {
  static const std::unordered_map<std::string_view, PosTag> words{
      {"the", PosTag::DT},     {"a", PosTag::DT},       {"an", PosTag::DT},
      {"this", PosTag::DT},    {"that", PosTag::DT},    {"these", PosTag::DT},
      {"those", PosTag::DT},   {"every", PosTag::DT},   {"each", PosTag::DT},
      {"all", PosTag::DT},     {"some", PosTag::DT},    {"any", PosTag::DT},
      {"no", PosTag::DT},      {"another", PosTag::DT}, {"both", PosTag::DT},
      {"in", PosTag::IN},      {"of", PosTag::IN},      {"on", PosTag::IN},
      {"at", PosTag::IN},      {"from", PosTag::IN},    {"with", PosTag::IN},
      {"by", PosTag::IN},      {"for", PosTag::IN},     {"to", PosTag::IN},
      {"into", PosTag::IN},    {"near", PosTag::IN},    {"about", PosTag::IN},
      {"under", PosTag::IN},   {"over", PosTag::IN},    {"between", PosTag::IN},
      {"without", PosTag::IN}, {"within", PosTag::IN},  {"around", PosTag::IN},
      {"than", PosTag::IN},    {"as", PosTag::IN},      {"like", PosTag::IN},
      {"across", PosTag::IN},  {"inside", PosTag::IN},  {"outside", PosTag::IN},
      {"what", PosTag::WP},    {"which", PosTag::WP},   {"who", PosTag::WP},
      {"whom", PosTag::WP},    {"whose", PosTag::WP},   {"where", PosTag::WRB},
      {"when", PosTag::WRB},   {"how", PosTag::WRB},    {"why", PosTag::WRB},
      {"and", PosTag::CC},     {"or", PosTag::CC},      {"but", PosTag::CC},
      {"nor", PosTag::CC},     {"i", PosTag::OTHER},    {"me", PosTag::OTHER},
      {"you", PosTag::OTHER},  {"he", PosTag::OTHER},   {"she", PosTag::OTHER},
      {"it", PosTag::OTHER},   {"we", PosTag::OTHER},   {"they", PosTag::OTHER},
      {"us", PosTag::OTHER},   {"them", PosTag::OTHER}, {"my", PosTag::OTHER},
      {"your", PosTag::OTHER}, {"its", PosTag::OTHER},  {"our", PosTag::OTHER},
      {"their", PosTag::OTHER}, {"not", PosTag::OTHER}, {"there", PosTag::OTHER},
  };
  if (auto it = words.find(w); it != words.end()) return it->second;

  bool numeric = !w.empty();
  for (char c : w) {
    if (!(c >= '0' && c <= '9') && c != '.') numeric = false;
  }
  if (numeric) return PosTag::CD;
  return std::nullopt;
}

inline PosTag suffix_tag(std::string_view w) {
  if (ends_with(w, "ian") || ends_with(w, "ese") || ends_with(w, "ish")) return PosTag::JJ;
  if (w.size() > 4 && ends_with(w, "ing")) return PosTag::VBG;
  if (w.size() > 3 && ends_with(w, "ed")) return PosTag::VBD;
  return PosTag::NN;
}

}  // namespace detail

/// Priority: closed-class list, then the lexicon, then suffix heuristics,
/// then NN.
inline PosTag tag_word(std::string_view lemma, const Lexicon& lexicon) {
  if (auto t = detail::closed_class_tag(lemma)) return *t;
  if (auto t = lexicon.find(lemma)) return *t;
  return detail::suffix_tag(lemma);
}

inline std::vector<TaggedToken> pos_tag(const std::vector<std::string>& lemmas,
                                        const Lexicon& lexicon) {
  std::vector<TaggedToken> out;
  out.reserve(lemmas.size());
  for (const auto& l : lemmas) out.push_back(TaggedToken{l, tag_word(l, lexicon), l, {}});
  return out;
}

/// Lemmatize-then-tag over real tokens, keeping the source spans.
inline std::vector<TaggedToken> analyze_tokens(const std::vector<Token>& tokens,
                                               const Lexicon& lexicon) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    std::string lemma = lemmatize(tok.norm);
    PosTag tag = tag_word(lemma, lexicon);
    out.push_back(TaggedToken{std::move(lemma), tag, tok.norm, tok.span});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chunking and candidate extraction

/// Maximal runs matching JJ* NN+ with at least two tokens.
inline std::vector<CandidatePhrase> chunk_noun_phrases(const std::vector<TaggedToken>& tagged) {
  std::vector<CandidatePhrase> phrases;
  std::size_t i = 0;
  while (i < tagged.size()) {
    std::size_t start = i;
    while (i < tagged.size() && tagged[i].tag == PosTag::JJ) ++i;
    std::size_t nouns_begin = i;
    while (i < tagged.size() && is_noun(tagged[i].tag)) ++i;
    if (i == nouns_begin) {
      // No noun closes the run; resume after the adjectives (or skip one token).
      if (i == start) ++i;
      continue;
    }
    if (i - start < 2) continue;

    CandidatePhrase np;
    np.kind = PhraseKind::kNounPhrase;
    for (std::size_t k = start; k < i; ++k) {
      np.lemmas.push_back(tagged[k].lemma);
      np.words.push_back(tagged[k].norm.empty() ? tagged[k].lemma : tagged[k].norm);
    }
    np.span = Span{tagged[start].span.begin, tagged[i - 1].span.end};
    phrases.push_back(std::move(np));
  }
  return phrases;
}

/// Noun phrases first (source order), then every single NN/NNS/JJ token in
/// source order, including those already covered by a noun phrase.
inline std::vector<CandidatePhrase> extract_candidates(const std::vector<TaggedToken>& tagged) {
  std::vector<CandidatePhrase> out = chunk_noun_phrases(tagged);
  for (const auto& t : tagged) {
    if (!is_noun(t.tag) && t.tag != PosTag::JJ) continue;
    CandidatePhrase c;
    c.kind = t.tag == PosTag::JJ ? PhraseKind::kAdjective : PhraseKind::kNoun;
    c.lemmas = {t.lemma};
    c.words = {t.norm.empty() ? t.lemma : t.norm};
    c.span = t.span;
    out.push_back(std::move(c));
  }
  return out;
}

/// tokenize -> lemmatize -> tag -> extract, the whole front half of the
/// question pipeline.
inline std::vector<CandidatePhrase> question_candidates(std::string_view question,
                                                        const Lexicon& lexicon) {
  return extract_candidates(analyze_tokens(tokenize(question), lexicon));
}

}  // namespace nlq
