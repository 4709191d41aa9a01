#include "aspnk/parse.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "aspnk/errors.hpp"

namespace aspnk {

const char* format_name(Format f) {
  return f == Format::kSmodels ? "smodels" : "dsl";
}

namespace {

// ---------------------------------------------------------------------------
// smodels numeric format
// ---------------------------------------------------------------------------

struct RawRule {
  int type = 0;
  int line = 0;
  std::vector<int> heads;   // file ids
  std::vector<int> negs;    // file ids
  std::vector<int> poss;    // file ids
  int bound = 0;
};

class IntLine {
 public:
  IntLine(std::string_view text, int line) : in_(std::string(text)), line_(line) {}
  bool next(long& out) {
    if (in_ >> out) return true;
    return false;
  }
  long require(const char* what) {
    long v;
    if (!next(v)) throw ParseError(line_, std::string("expected ") + what);
    return v;
  }
  bool exhausted() {
    long v;
    return !next(v);
  }

 private:
  std::istringstream in_;
  int line_;
};

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Program parse_smodels(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  std::size_t i = 0;
  auto next_line = [&]() -> std::pair<const std::string*, int> {
    while (i < lines.size() && blank(lines[i])) ++i;
    if (i >= lines.size()) return {nullptr, static_cast<int>(lines.size())};
    const std::string* l = &lines[i];
    ++i;
    return {l, static_cast<int>(i)};
  };

  std::vector<RawRule> raw;
  std::set<int> file_ids;           // every id seen anywhere
  std::set<int> body_ids;           // ids occurring in some body
  std::map<int, std::string> symbols;
  std::vector<int> bplus, bminus;

  // Rule section.
  for (;;) {
    auto [l, ln] = next_line();
    if (!l) throw ParseError(ln, "unexpected end of input in rule section");
    IntLine s(*l, ln);
    long type = s.require("rule type");
    if (type == 0) break;
    RawRule r;
    r.type = static_cast<int>(type);
    r.line = ln;
    auto read_body = [&](bool with_bound) {
      long nb = s.require("body size");
      long nn = s.require("negative count");
      if (nn < 0 || nb < nn) throw ParseError(ln, "invalid body literal counts");
      if (with_bound) r.bound = static_cast<int>(s.require("bound"));
      for (long k = 0; k < nn; ++k) {
        int a = static_cast<int>(s.require("negative body atom"));
        r.negs.push_back(a);
        file_ids.insert(a);
        body_ids.insert(a);
      }
      for (long k = 0; k < nb - nn; ++k) {
        int a = static_cast<int>(s.require("positive body atom"));
        r.poss.push_back(a);
        file_ids.insert(a);
        body_ids.insert(a);
      }
    };
    switch (type) {
      case 1: {
        int h = static_cast<int>(s.require("head"));
        r.heads.push_back(h);
        file_ids.insert(h);
        read_body(false);
        break;
      }
      case 2: {
        int h = static_cast<int>(s.require("head"));
        r.heads.push_back(h);
        file_ids.insert(h);
        read_body(true);
        break;
      }
      case 3: {
        long nh = s.require("head count");
        if (nh <= 0) throw ParseError(ln, "choice rule needs at least one head");
        for (long k = 0; k < nh; ++k) {
          int h = static_cast<int>(s.require("head"));
          r.heads.push_back(h);
          file_ids.insert(h);
        }
        read_body(false);
        break;
      }
      case 5:
      case 6:
      case 8:
        throw UnsupportedRuleError(
            ln, "unsupported smodels rule type " + std::to_string(type) +
                    " (weight/minimize/disjunctive rules are out of scope)");
      default:
        throw ParseError(ln, "unknown smodels rule type " + std::to_string(type));
    }
    if (!s.exhausted()) throw ParseError(ln, "trailing tokens on rule line");
    raw.push_back(std::move(r));
  }

  // Symbol table.
  for (;;) {
    auto [l, ln] = next_line();
    if (!l) throw ParseError(ln, "unexpected end of input in symbol table");
    std::istringstream s(*l);
    long id;
    if (!(s >> id)) throw ParseError(ln, "expected atom id in symbol table");
    if (id == 0) break;
    std::string name;
    if (!(s >> name)) throw ParseError(ln, "expected atom name in symbol table");
    if (symbols.contains(static_cast<int>(id))) {
      throw ParseError(ln, "duplicate symbol for atom " + std::to_string(id));
    }
    symbols[static_cast<int>(id)] = name;
    file_ids.insert(static_cast<int>(id));
  }

  auto read_compute = [&](const char* tag, std::vector<int>& out) {
    auto [l, ln] = next_line();
    if (!l) throw ParseError(ln, std::string("expected ") + tag + " section");
    std::string header = *l;
    // trim
    while (!header.empty() && std::isspace(static_cast<unsigned char>(header.back()))) header.pop_back();
    std::size_t start = 0;
    while (start < header.size() && std::isspace(static_cast<unsigned char>(header[start]))) ++start;
    if (header.substr(start) != tag) throw ParseError(ln, std::string("expected ") + tag + " section header");
    for (;;) {
      auto [cl, cln] = next_line();
      if (!cl) throw ParseError(cln, std::string("unexpected end of input in ") + tag + " section");
      IntLine s(*cl, cln);
      long id = s.require("atom id");
      if (id == 0) break;
      out.push_back(static_cast<int>(id));
      file_ids.insert(static_cast<int>(id));
    }
  };
  read_compute("B+", bplus);
  read_compute("B-", bminus);

  {
    auto [l, ln] = next_line();
    if (!l) throw ParseError(ln, "expected model count");
    IntLine s(*l, ln);
    s.require("model count");
  }

  // Falsity markers: unnamed B- atoms never used in a body.
  std::unordered_set<int> false_markers;
  for (int id : bminus) {
    if (!symbols.contains(id) && !body_ids.contains(id)) false_markers.insert(id);
  }

  Program p;
  std::map<int, AtomId> to_internal;
  for (int id : file_ids) {
    if (false_markers.contains(id)) continue;
    auto it = symbols.find(id);
    to_internal[id] = it != symbols.end() ? p.add_atom(it->second) : p.add_atom();
  }
  auto head_of = [&](int id) -> AtomId {
    return false_markers.contains(id) ? kFalseAtom : to_internal.at(id);
  };

  for (const RawRule& r : raw) {
    std::vector<Literal> body;
    for (int a : r.negs) body.push_back(neg(to_internal.at(a)));
    for (int a : r.poss) body.push_back(pos(to_internal.at(a)));
    switch (r.type) {
      case 1: {
        AtomId h = head_of(r.heads[0]);
        if (h == kFalseAtom) {
          p.add_rule(constraint(std::move(body)));
        } else {
          p.add_rule(basic_rule(h, std::move(body)));
        }
        break;
      }
      case 2:
        p.add_rule(cardinality_rule(head_of(r.heads[0]), r.bound, std::move(body)));
        break;
      case 3: {
        std::vector<AtomId> heads;
        for (int h : r.heads) heads.push_back(to_internal.at(h));
        p.add_rule(choice_rule(std::move(heads), std::move(body)));
        break;
      }
    }
  }
  for (int id : bplus) p.add_rule(constraint({neg(to_internal.at(id))}));
  for (int id : bminus) {
    if (!false_markers.contains(id)) p.add_rule(constraint({pos(to_internal.at(id))}));
  }
  return p;
}

std::string serialize_smodels(const Program& input) {
  const Program program = input.lower_choice_bounds();
  std::ostringstream out;
  const int kFalseFile = 1;
  auto fid = [](AtomId a) { return a + 1; };
  int next_aux = program.atom_count() + 2;
  // not not a is not expressible in the numeric format; {h} <- B, not not h
  // round-trips as a choice rule, other double negations via an aux atom
  // na <- not a.
  std::unordered_map<AtomId, int> dneg_aux;
  std::ostringstream aux_rules;
  auto aux_for = [&](AtomId a) {
    auto it = dneg_aux.find(a);
    if (it != dneg_aux.end()) return it->second;
    int id = next_aux++;
    dneg_aux.emplace(a, id);
    aux_rules << "1 " << id << " 1 1 " << fid(a) << "\n";
    return id;
  };

  auto emit_body = [&](std::ostringstream& line, const std::vector<Literal>& body) {
    std::vector<int> negs, poss;
    for (const Literal& l : body) {
      switch (l.polarity) {
        case Polarity::kPositive: poss.push_back(fid(l.atom)); break;
        case Polarity::kNegative: negs.push_back(fid(l.atom)); break;
        case Polarity::kDoubleNegative: negs.push_back(aux_for(l.atom)); break;
      }
    }
    line << ' ' << negs.size() + poss.size() << ' ' << negs.size();
    return std::pair(std::move(negs), std::move(poss));
  };
  auto emit_ids = [&](std::ostringstream& line, const std::vector<int>& negs,
                      const std::vector<int>& poss) {
    for (int a : negs) line << ' ' << a;
    for (int a : poss) line << ' ' << a;
  };

  for (const Rule& r : program.rules()) {
    std::ostringstream line;
    switch (r.kind) {
      case RuleKind::kBasic:
      case RuleKind::kConstraint: {
        std::vector<Literal> body = r.body;
        AtomId head = r.kind == RuleKind::kBasic ? r.heads[0] : kFalseAtom;
        // h <- B, not not h is the expansion of a singleton choice.
        if (head != kFalseAtom) {
          auto self = std::find(body.begin(), body.end(), dneg(head));
          if (self != body.end()) {
            body.erase(self);
            line << "3 1 " << fid(head);
            auto [negs, poss] = emit_body(line, body);
            emit_ids(line, negs, poss);
            break;
          }
        }
        line << "1 " << (head == kFalseAtom ? kFalseFile : fid(head));
        auto [negs, poss] = emit_body(line, body);
        emit_ids(line, negs, poss);
        break;
      }
      case RuleKind::kChoice: {
        line << "3 " << r.heads.size();
        for (AtomId h : r.heads) line << ' ' << fid(h);
        auto [negs, poss] = emit_body(line, r.body);
        emit_ids(line, negs, poss);
        break;
      }
      case RuleKind::kCardinality: {
        AtomId head = r.heads[0];
        line << "2 " << (head == kFalseAtom ? kFalseFile : fid(head));
        std::vector<int> negs, poss;
        for (const Literal& l : r.card_literals) {
          switch (l.polarity) {
            case Polarity::kPositive: poss.push_back(fid(l.atom)); break;
            case Polarity::kNegative: negs.push_back(fid(l.atom)); break;
            case Polarity::kDoubleNegative: negs.push_back(aux_for(l.atom)); break;
          }
        }
        line << ' ' << negs.size() + poss.size() << ' ' << negs.size() << ' ' << r.card_lower;
        emit_ids(line, negs, poss);
        break;
      }
    }
    out << line.str() << "\n";
  }
  out << aux_rules.str();
  out << "0\n";
  for (AtomId a = 1; a <= program.atom_count(); ++a) {
    if (program.atom_name(a)) out << fid(a) << ' ' << *program.atom_name(a) << "\n";
  }
  out << "0\nB+\n0\nB-\n" << kFalseFile << "\n0\n1\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// dsl format
// ---------------------------------------------------------------------------

struct Token {
  enum Kind { kAtom, kInt, kIf, kDot, kComma, kSemi, kLBrace, kRBrace, kNot, kEnd } kind;
  std::string text;
  long value = 0;
  int line = 1;
};

class DslLexer {
 public:
  explicit DslLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) {
      t.kind = Token::kEnd;
      return t;
    }
    char c = text_[pos_];
    if (c == '.') { ++pos_; t.kind = Token::kDot; return t; }
    if (c == ',') { ++pos_; t.kind = Token::kComma; return t; }
    if (c == ';') { ++pos_; t.kind = Token::kSemi; return t; }
    if (c == '{') { ++pos_; t.kind = Token::kLBrace; return t; }
    if (c == '}') { ++pos_; t.kind = Token::kRBrace; return t; }
    if (c == ':') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        pos_ += 2;
        t.kind = Token::kIf;
        return t;
      }
      throw ParseError(line_, "stray ':'");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      t.kind = Token::kInt;
      t.text = std::string(text_.substr(start, pos_ - start));
      t.value = std::stol(t.text);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "not") {
        t.kind = Token::kNot;
        return t;
      }
      // Optional parenthesized ground arguments become part of the name.
      if (pos_ < text_.size() && text_[pos_] == '(') {
        int depth = 0;
        std::size_t arg_start = pos_;
        do {
          if (pos_ >= text_.size()) throw ParseError(line_, "unbalanced '(' in atom");
          char a = text_[pos_];
          if (a == '(') ++depth;
          if (a == ')') --depth;
          if (a == '\n') ++line_;
          ++pos_;
        } while (depth > 0);
        word += std::string(text_.substr(arg_start, pos_ - arg_start));
      }
      t.kind = Token::kAtom;
      t.text = std::move(word);
      return t;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ < text_.size() && text_[pos_] == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class DslParser {
 public:
  explicit DslParser(std::string_view text) : lex_(text) { advance(); }

  Program parse() {
    while (cur_.kind != Token::kEnd) statement();
    return std::move(program_);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) throw ParseError(cur_.line, std::string("expected ") + what);
    advance();
  }

  AtomId atom() {
    if (cur_.kind != Token::kAtom) throw ParseError(cur_.line, "expected atom");
    AtomId id = program_.intern(cur_.text);
    advance();
    return id;
  }

  Literal literal() {
    int nots = 0;
    while (cur_.kind == Token::kNot) {
      ++nots;
      advance();
    }
    if (nots > 2) throw ParseError(cur_.line, "at most 'not not' is supported");
    AtomId a = atom();
    if (nots == 0) return pos(a);
    if (nots == 1) return neg(a);
    return dneg(a);
  }

  std::vector<Literal> body_literals() {
    std::vector<Literal> body;
    body.push_back(literal());
    while (cur_.kind == Token::kComma) {
      advance();
      body.push_back(literal());
    }
    return body;
  }

  // "l { lit; ...; lit }" with the leading bound already consumed.
  std::vector<Literal> braced_literals() {
    expect(Token::kLBrace, "'{'");
    std::vector<Literal> lits;
    if (cur_.kind != Token::kRBrace) {
      lits.push_back(literal());
      while (cur_.kind == Token::kSemi) {
        advance();
        lits.push_back(literal());
      }
    }
    expect(Token::kRBrace, "'}'");
    return lits;
  }

  void statement() {
    if (cur_.kind == Token::kIf) {
      // Constraint or cardinality constraint.
      advance();
      if (cur_.kind == Token::kInt) {
        long lower = cur_.value;
        advance();
        std::vector<Literal> lits = braced_literals();
        program_.add_rule(cardinality_rule(kFalseAtom, static_cast<int>(lower), std::move(lits)));
      } else {
        program_.add_rule(constraint(body_literals()));
      }
      expect(Token::kDot, "'.'");
      return;
    }
    if (cur_.kind == Token::kLBrace || cur_.kind == Token::kInt) {
      // Choice rule, possibly bounded, possibly with a body.
      std::optional<long> lower;
      if (cur_.kind == Token::kInt) {
        lower = cur_.value;
        advance();
        if (cur_.kind != Token::kLBrace) throw ParseError(cur_.line, "expected '{' after bound");
      }
      expect(Token::kLBrace, "'{'");
      std::vector<AtomId> heads;
      heads.push_back(atom());
      while (cur_.kind == Token::kSemi) {
        advance();
        heads.push_back(atom());
      }
      expect(Token::kRBrace, "'}'");
      std::optional<long> upper;
      if (cur_.kind == Token::kInt) {
        upper = cur_.value;
        advance();
      }
      std::vector<Literal> body;
      if (cur_.kind == Token::kIf) {
        advance();
        body = body_literals();
      }
      expect(Token::kDot, "'.'");
      std::optional<ChoiceBounds> bounds;
      if (lower || upper) {
        bounds = ChoiceBounds{static_cast<int>(lower.value_or(0)),
                              static_cast<int>(upper.value_or(static_cast<long>(heads.size())))};
      }
      program_.add_rule(choice_rule(std::move(heads), std::move(body), bounds));
      return;
    }
    // Basic rule or fact; "h :- l { ... }." is a cardinality rule.
    AtomId head = atom();
    if (cur_.kind == Token::kDot) {
      advance();
      program_.add_rule(basic_rule(head));
      return;
    }
    expect(Token::kIf, "':-' or '.'");
    if (cur_.kind == Token::kInt) {
      long lower = cur_.value;
      advance();
      std::vector<Literal> lits = braced_literals();
      program_.add_rule(cardinality_rule(head, static_cast<int>(lower), std::move(lits)));
    } else {
      program_.add_rule(basic_rule(head, body_literals()));
    }
    expect(Token::kDot, "'.'");
  }

  DslLexer lex_;
  Token cur_;
  Program program_;
};

std::string literal_text(const Program& p, const Literal& l) {
  switch (l.polarity) {
    case Polarity::kPositive: return p.atom_display(l.atom);
    case Polarity::kNegative: return "not " + p.atom_display(l.atom);
    case Polarity::kDoubleNegative: return "not not " + p.atom_display(l.atom);
  }
  return {};
}

std::string serialize_dsl(const Program& p) {
  std::ostringstream out;
  auto body_text = [&](const std::vector<Literal>& body, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) s += sep;
      s += literal_text(p, body[i]);
    }
    return s;
  };
  for (const Rule& r : p.rules()) {
    switch (r.kind) {
      case RuleKind::kBasic:
        out << p.atom_display(r.heads[0]);
        if (!r.body.empty()) out << " :- " << body_text(r.body, ", ");
        out << ".\n";
        break;
      case RuleKind::kConstraint:
        out << ":- " << body_text(r.body, ", ") << ".\n";
        break;
      case RuleKind::kChoice: {
        if (r.bounds) out << r.bounds->lower << ' ';
        out << '{';
        for (std::size_t i = 0; i < r.heads.size(); ++i) {
          if (i) out << "; ";
          out << p.atom_display(r.heads[i]);
        }
        out << '}';
        if (r.bounds) out << ' ' << r.bounds->upper;
        if (!r.body.empty()) out << " :- " << body_text(r.body, ", ");
        out << ".\n";
        break;
      }
      case RuleKind::kCardinality:
        if (r.heads[0] == kFalseAtom) {
          out << ":- ";
        } else {
          out << p.atom_display(r.heads[0]) << " :- ";
        }
        out << r.card_lower << " {" << body_text(r.card_literals, "; ") << "}.\n";
        break;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// structural equality
// ---------------------------------------------------------------------------

struct CanonRule {
  int kind;
  std::vector<std::string> heads;
  std::vector<std::pair<int, std::string>> body;
  int lower = -1, upper = -1;
  int card_lower = -1;
  std::vector<std::pair<int, std::string>> card;

  auto key() const { return std::tie(kind, heads, body, lower, upper, card_lower, card); }
  bool operator<(const CanonRule& o) const { return key() < o.key(); }
  bool operator==(const CanonRule& o) const { return key() == o.key(); }
};

std::vector<CanonRule> canon_rules(const Program& p) {
  std::vector<CanonRule> out;
  for (const Rule& r : p.rules()) {
    CanonRule c;
    c.kind = static_cast<int>(r.kind);
    for (AtomId h : r.heads) c.heads.push_back(p.atom_display(h));
    std::sort(c.heads.begin(), c.heads.end());
    for (const Literal& l : r.body) {
      c.body.emplace_back(static_cast<int>(l.polarity), p.atom_display(l.atom));
    }
    std::sort(c.body.begin(), c.body.end());
    if (r.bounds) {
      c.lower = r.bounds->lower;
      c.upper = r.bounds->upper;
    }
    if (r.kind == RuleKind::kCardinality) {
      c.card_lower = r.card_lower;
      for (const Literal& l : r.card_literals) {
        c.card.emplace_back(static_cast<int>(l.polarity), p.atom_display(l.atom));
      }
      std::sort(c.card.begin(), c.card.end());
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Program parse(std::string_view text, Format format) {
  if (format == Format::kSmodels) return parse_smodels(text);
  return DslParser(text).parse();
}

std::string serialize(const Program& program, Format format) {
  if (format == Format::kSmodels) return serialize_smodels(program);
  return serialize_dsl(program);
}

bool structurally_equal(const Program& a, const Program& b) {
  return canon_rules(a) == canon_rules(b);
}

}  // namespace aspnk
