#include "optwb/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace optwb {

std::string Term::str() const {
  return is_var() ? var().str() : iri().name();
}

BasicPattern::BasicPattern(std::initializer_list<TriplePattern> triples)
    : BasicPattern(std::vector<TriplePattern>(triples)) {}

BasicPattern::BasicPattern(std::vector<TriplePattern> triples)
    : triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()),
                 triples_.end());
}

void BasicPattern::insert(TriplePattern t) {
  auto it = std::lower_bound(triples_.begin(), triples_.end(), t);
  if (it != triples_.end() && *it == t) return;
  triples_.insert(it, std::move(t));
}

Occurrence Occurrence::child(Side s) const {
  auto path = path_;
  path.push_back(s);
  return Occurrence(std::move(path));
}

std::string Occurrence::str() const {
  if (path_.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i != 0) out += '.';
    out += path_[i] == Side::Left ? 'L' : 'R';
  }
  return out;
}

struct Pattern::Node {
  std::variant<BasicPattern, std::pair<Pattern, Pattern>> content;
};

Pattern::Pattern() : node_(std::make_shared<const Node>(Node{BasicPattern{}})) {}

Pattern::Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Pattern Pattern::leaf(BasicPattern basic) {
  return Pattern(std::make_shared<const Node>(Node{std::move(basic)}));
}

Pattern Pattern::opt(Pattern left, Pattern right) {
  return Pattern(std::make_shared<const Node>(
      Node{std::make_pair(std::move(left), std::move(right))}));
}

bool Pattern::is_leaf() const {
  return std::holds_alternative<BasicPattern>(node_->content);
}

const BasicPattern& Pattern::basic() const {
  return std::get<BasicPattern>(node_->content);
}

const Pattern& Pattern::left() const {
  return std::get<std::pair<Pattern, Pattern>>(node_->content).first;
}

const Pattern& Pattern::right() const {
  return std::get<std::pair<Pattern, Pattern>>(node_->content).second;
}

const Pattern& Pattern::child(Side s) const {
  return s == Side::Left ? left() : right();
}

bool Pattern::addresses(const Occurrence& o) const {
  const Pattern* cur = this;
  for (Side s : o.path()) {
    if (cur->is_leaf()) return false;
    cur = &cur->child(s);
  }
  return true;
}

const Pattern& Pattern::at(const Occurrence& o) const {
  const Pattern* cur = this;
  for (Side s : o.path()) {
    if (cur->is_leaf()) {
      throw std::out_of_range("occurrence " + o.str() +
                              " does not address a node");
    }
    cur = &cur->child(s);
  }
  return *cur;
}

std::size_t Pattern::node_count() const {
  if (is_leaf()) return 1;
  return 1 + left().node_count() + right().node_count();
}

std::size_t Pattern::opt_count() const {
  if (is_leaf()) return 0;
  return 1 + left().opt_count() + right().opt_count();
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.basic() == b.basic();
  return a.left() == b.left() && a.right() == b.right();
}

std::set<Var> vars(const BasicPattern& b) {
  std::set<Var> out;
  for (const auto& t : b) {
    for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
      if (term->is_var()) out.insert(term->var());
    }
  }
  return out;
}

std::set<Var> vars(const Pattern& p) {
  if (p.is_leaf()) return vars(p.basic());
  auto out = vars(p.left());
  out.merge(vars(p.right()));
  return out;
}

std::set<Iri> constants(const BasicPattern& b) {
  std::set<Iri> out;
  for (const auto& t : b) {
    for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
      if (!term->is_var()) out.insert(term->iri());
    }
  }
  return out;
}

std::set<Iri> constants(const Pattern& p) {
  if (p.is_leaf()) return constants(p.basic());
  auto out = constants(p.left());
  out.merge(constants(p.right()));
  return out;
}

namespace {

void collect_occurrences(const Pattern& p, const Occurrence& here,
                         std::vector<Occurrence>& out) {
  out.push_back(here);
  if (p.is_leaf()) return;
  collect_occurrences(p.left(), here.child(Side::Left), out);
  collect_occurrences(p.right(), here.child(Side::Right), out);
}

void collect_leaves(const Pattern& p, const Occurrence& here,
                    std::vector<LeafOccurrence>& out) {
  if (p.is_leaf()) {
    out.push_back({here, &p.basic()});
    return;
  }
  collect_leaves(p.left(), here.child(Side::Left), out);
  collect_leaves(p.right(), here.child(Side::Right), out);
}

bool intersects(const std::set<Var>& a, const std::set<Var>& b) {
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      return true;
    }
  }
  return false;
}

// Checks one fragment condition over every OPT occurrence. `allowed`
// decides whether a leaf outside the OPT occurrence may mention one of the
// variables the right argument introduces.
template <typename Allowed>
bool check_opt_occurrences(const Pattern& p, Allowed allowed) {
  const auto all_leaves = leaves(p);
  std::vector<std::set<Var>> leaf_vars;
  leaf_vars.reserve(all_leaves.size());
  for (const auto& l : all_leaves) leaf_vars.push_back(vars(*l.basic));

  for (const auto& i : occurrences(p)) {
    const Pattern& node = p.at(i);
    if (node.is_leaf()) continue;
    std::set<Var> introduced;
    std::set<Var> left_vars = vars(node.left());
    for (const auto& v : vars(node.right())) {
      if (!left_vars.count(v)) introduced.insert(v);
    }
    if (introduced.empty()) continue;
    for (std::size_t k = 0; k < all_leaves.size(); ++k) {
      const Occurrence& leaf = all_leaves[k].occurrence;
      if (inside(leaf, i)) continue;
      if (!intersects(leaf_vars[k], introduced)) continue;
      if (!allowed(i, leaf)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Occurrence> occurrences(const Pattern& p) {
  std::vector<Occurrence> out;
  collect_occurrences(p, Occurrence{}, out);
  return out;
}

std::vector<LeafOccurrence> leaves(const Pattern& p) {
  std::vector<LeafOccurrence> out;
  collect_leaves(p, Occurrence{}, out);
  return out;
}

bool inside(const Occurrence& o1, const Occurrence& o2) {
  const auto& a = o1.path();
  const auto& b = o2.path();
  return b.size() <= a.size() && std::equal(b.begin(), b.end(), a.begin());
}

bool dominates(const Pattern& p, const Occurrence& o1, const Occurrence& o2) {
  if (!p.addresses(o1) || !p.addresses(o2)) return false;
  // The only OPT node that can witness dominance is the lowest common
  // ancestor: o1 must continue left of it and o2 right of it.
  const auto& a = o1.path();
  const auto& b = o2.path();
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  if (ia == a.end() || ib == b.end()) return false;
  return *ia == Side::Left && *ib == Side::Right;
}

bool is_well_designed(const Pattern& p) {
  return check_opt_occurrences(
      p, [](const Occurrence&, const Occurrence&) { return false; });
}

bool is_weakly_well_designed(const Pattern& p) {
  return check_opt_occurrences(
      p, [&p](const Occurrence& i, const Occurrence& leaf) {
        return dominates(p, i, leaf);
      });
}

// ---------------------------------------------------------------------------
// Concrete syntax

namespace {

enum class Tok { LBrace, RBrace, LParen, RParen, Dot, Word, VarWord, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    if (pos_ >= text_.size()) return {Tok::End, {}, line_, column()};
    const std::size_t col = column();
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      Token t{kind, text_.substr(pos_, 1), line_, col};
      ++pos_;
      return t;
    };
    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '.': return single(Tok::Dot);
      default: break;
    }
    const std::size_t start = pos_;
    if (c == '?') ++pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' ||
          d == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start || (c == '?' && pos_ == start + 1)) {
      throw ParseError(std::string("unexpected character '") + c + "'",
                       line_, col);
    }
    std::string_view word = text_.substr(start, pos_ - start);
    if (c == '?') {
      if (!is_variable_name(word.substr(1))) {
        throw ParseError("malformed variable '" + std::string(word) + "'",
                         line_, col);
      }
      return {Tok::VarWord, word, line_, col};
    }
    if (!is_identifier(word)) {
      throw ParseError("malformed IRI '" + std::string(word) + "'", line_,
                       col);
    }
    return {Tok::Word, word, line_, col};
  }

 private:
  std::size_t column() const { return pos_ - line_start_ + 1; }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : lexer_(text) { advance(); }

  Pattern parse() {
    if (current_.kind == Tok::End) {
      throw ParseError("empty pattern", current_.line, current_.column);
    }
    Pattern p = pattern();
    if (current_.kind != Tok::End) fail("trailing input after pattern");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::string found = current_.kind == Tok::End
                            ? std::string("end of input")
                            : "'" + std::string(current_.text) + "'";
    throw ParseError(message + " (found " + found + ")", current_.line,
                     current_.column);
  }

  void advance() { current_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (current_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  Pattern pattern() {
    if (current_.kind == Tok::LBrace) return Pattern::leaf(basic());
    if (current_.kind != Tok::LParen) fail("expected '{' or '('");
    advance();
    Pattern left = pattern();
    if (current_.kind != Tok::Word || current_.text != "OPT") {
      fail("expected OPT");
    }
    advance();
    Pattern right = pattern();
    if (current_.kind != Tok::RParen) fail("expected ')' closing OPT");
    advance();
    return Pattern::opt(std::move(left), std::move(right));
  }

  BasicPattern basic() {
    expect(Tok::LBrace, "'{'");
    BasicPattern out;
    while (current_.kind != Tok::RBrace) {
      Term s = term();
      Term p = term();
      Term o = term();
      out.insert(TriplePattern{std::move(s), std::move(p), std::move(o)});
      if (current_.kind == Tok::Dot) {
        advance();
      } else if (current_.kind != Tok::RBrace) {
        fail("expected '.' or '}'");
      }
    }
    advance();
    return out;
  }

  Term term() {
    if (current_.kind == Tok::Word) {
      Term t{Iri(std::string(current_.text))};
      advance();
      return t;
    }
    if (current_.kind == Tok::VarWord) {
      Term t{Var(std::string(current_.text.substr(1)))};
      advance();
      return t;
    }
    fail("expected an IRI or variable");
  }

  Lexer lexer_;
  Token current_{Tok::End, {}, 1, 1};
};

}  // namespace

Pattern parse_pattern(std::string_view text) {
  return PatternParser(text).parse();
}

std::string to_string(const TriplePattern& t) {
  return t.subject.str() + " " + t.predicate.str() + " " + t.object.str();
}

std::string to_string(const BasicPattern& b) {
  if (b.empty()) return "{ }";
  std::string out = "{ ";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != 0) out += " . ";
    out += to_string(b.triples()[i]);
  }
  out += " }";
  return out;
}

std::string to_string(const Pattern& p) {
  if (p.is_leaf()) return to_string(p.basic());
  return "(" + to_string(p.left()) + "\n OPT " + to_string(p.right()) + ")";
}

}  // namespace optwb
