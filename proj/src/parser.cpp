#include "mlss/parser.hpp"

#include <cctype>
#include <vector>

namespace mlss {

namespace {

enum class Tok {
  Ident,
  Number,
  LBrace,
  RBrace,
  At,
  Comma,
  Caret,
  Backslash,
  Plus,
  LParen,
  RParen,
  Eq,
  Neq,
  In,
  NotIn,
  Subset,
  Tilde,
  Amp,
  Pipe,
  End
};

struct Token {
  Tok kind;
  std::string text;
  unsigned number = 0;
  std::size_t line, column;
};

const char *tok_name(Tok t) {
  switch (t) {
  case Tok::Ident: return "identifier";
  case Tok::Number: return "number";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::At: return "'@'";
  case Tok::Comma: return "','";
  case Tok::Caret: return "'^'";
  case Tok::Backslash: return "'\\'";
  case Tok::Plus: return "'+'";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::Eq: return "'='";
  case Tok::Neq: return "'!='";
  case Tok::In: return "'in'";
  case Tok::NotIn: return "'notin'";
  case Tok::Subset: return "'<='";
  case Tok::Tilde: return "'~'";
  case Tok::Amp: return "'&'";
  case Tok::Pipe: return "'|'";
  case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string &text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token t{Tok::End, "", 0, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      t.text = text.substr(i, j - i);
      if (t.text == "in")
        t.kind = Tok::In;
      else if (t.text == "notin")
        t.kind = Tok::NotIn;
      else
        t.kind = Tok::Ident;
      bump(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      unsigned n = 0;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j]))) {
        n = n * 10 + static_cast<unsigned>(text[j] - '0');
        ++j;
      }
      t.kind = Tok::Number;
      t.number = n;
      bump(j - i);
      out.push_back(t);
      continue;
    }
    switch (c) {
    case '{': t.kind = Tok::LBrace; break;
    case '}': t.kind = Tok::RBrace; break;
    case '@': t.kind = Tok::At; break;
    case ',': t.kind = Tok::Comma; break;
    case '^': t.kind = Tok::Caret; break;
    case '\\': t.kind = Tok::Backslash; break;
    case '+': t.kind = Tok::Plus; break;
    case '(': t.kind = Tok::LParen; break;
    case ')': t.kind = Tok::RParen; break;
    case '=': t.kind = Tok::Eq; break;
    case '~': t.kind = Tok::Tilde; break;
    case '&': t.kind = Tok::Amp; break;
    case '|': t.kind = Tok::Pipe; break;
    case '!':
      if (i + 1 < text.size() && text[i + 1] == '=') {
        t.kind = Tok::Neq;
        bump(2);
        out.push_back(t);
        continue;
      }
      throw ParseError("unexpected character '!'", line, col);
    case '<':
      if (i + 1 < text.size() && text[i + 1] == '=') {
        t.kind = Tok::Subset;
        bump(2);
        out.push_back(t);
        continue;
      }
      throw ParseError("unexpected character '<'", line, col);
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    }
    bump(1);
    out.push_back(t);
  }
  out.push_back(Token{Tok::End, "", 0, line, col});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> toks, const ParseOptions &opts)
      : toks_(std::move(toks)), opts_(opts) {
    // Pinned tags are collected up front so fresh tags never collide.
    for (std::size_t k = 0; k + 3 < toks_.size(); ++k)
      if (toks_[k].kind == Tok::LBrace && toks_[k + 1].kind == Tok::RBrace &&
          toks_[k + 2].kind == Tok::At && toks_[k + 3].kind == Tok::Number)
        pinned_.insert(toks_[k + 3].number);
  }

  ParseResult run() {
    Formula f = formula();
    expect(Tok::End);
    return ParseResult{std::move(f), flexible_};
  }

private:
  std::vector<Token> toks_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  std::set<unsigned> pinned_;
  std::set<unsigned> flexible_;
  unsigned next_fresh_ = 0;

  const Token &peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string &expected) {
    const Token &t = peek();
    throw ParseError("expected " + expected + ", found " +
                         (t.kind == Tok::Ident ? "'" + t.text + "'"
                                               : tok_name(t.kind)),
                     t.line, t.column);
  }

  Token expect(Tok k) {
    if (!at(k))
      fail(tok_name(k));
    return take();
  }

  unsigned fresh_tag() {
    while (pinned_.count(next_fresh_))
      ++next_fresh_;
    flexible_.insert(next_fresh_);
    return next_fresh_++;
  }

  Formula formula() {
    Formula f = and_fm();
    while (at(Tok::Pipe)) {
      take();
      f = Formula::disj(std::move(f), and_fm());
    }
    return f;
  }

  Formula and_fm() {
    Formula f = unary_fm();
    while (at(Tok::Amp)) {
      take();
      f = Formula::conj(std::move(f), unary_fm());
    }
    return f;
  }

  Formula unary_fm() {
    if (at(Tok::Tilde)) {
      take();
      return Formula::neg(unary_fm());
    }
    if (at(Tok::LParen)) {
      // Could open a parenthesised formula or a parenthesised term of an
      // atom, e.g. `(x + y) = z`. Try the atom reading first.
      std::size_t save = pos_;
      std::set<unsigned> save_flex = flexible_;
      unsigned save_fresh = next_fresh_;
      try {
        return atom_fm();
      } catch (const ParseError &) {
        pos_ = save;
        flexible_ = std::move(save_flex);
        next_fresh_ = save_fresh;
      }
      take();
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    return atom_fm();
  }

  Formula atom_fm() {
    Term l = term();
    if (at(Tok::Eq)) {
      take();
      return Formula::atom(eq(std::move(l), term()));
    }
    if (at(Tok::Neq)) {
      take();
      return Formula::neg(Formula::atom(eq(std::move(l), term())));
    }
    if (at(Tok::In)) {
      take();
      return Formula::atom(mem(std::move(l), term()));
    }
    if (at(Tok::NotIn)) {
      take();
      return Formula::neg(Formula::atom(mem(std::move(l), term())));
    }
    if (at(Tok::Subset)) {
      // s <= t desugars to s + t = t
      take();
      Term r = term();
      return Formula::atom(eq(Term::union_of(std::move(l), r), r));
    }
    fail("'=', '!=', 'in', 'notin' or '<='");
  }

  Term term() {
    Term t = diff_term();
    while (at(Tok::Plus)) {
      take();
      t = Term::union_of(std::move(t), diff_term());
    }
    return t;
  }

  Term diff_term() {
    Term t = inter_term();
    while (at(Tok::Backslash)) {
      take();
      t = Term::diff(std::move(t), inter_term());
    }
    return t;
  }

  Term inter_term() {
    Term t = primary_term();
    while (at(Tok::Caret)) {
      take();
      t = Term::inter(std::move(t), primary_term());
    }
    return t;
  }

  Term primary_term() {
    if (at(Tok::Ident)) {
      Token t = take();
      if (t.text[0] == '_' && !opts_.allow_internal_names)
        throw ParseError("identifier '" + t.text +
                             "' is reserved (leading '_')",
                         t.line, t.column);
      return Term::var(t.text);
    }
    if (at(Tok::LBrace)) {
      take();
      if (at(Tok::RBrace)) {
        take();
        if (at(Tok::At)) {
          take();
          Token n = expect(Tok::Number);
          return Term::empty(n.number);
        }
        return Term::empty(fresh_tag());
      }
      // {t1, ..., tk} => Single t1 + ... + Single tk, right nested
      std::vector<Term> elems;
      elems.push_back(term());
      while (at(Tok::Comma)) {
        take();
        elems.push_back(term());
      }
      expect(Tok::RBrace);
      Term acc = Term::single(elems.back());
      for (std::size_t i = elems.size() - 1; i-- > 0;)
        acc = Term::union_of(Term::single(elems[i]), std::move(acc));
      return acc;
    }
    if (at(Tok::LParen)) {
      take();
      Term t = term();
      expect(Tok::RParen);
      return t;
    }
    fail("a set term");
  }
};

} // namespace

ParseResult parse(const std::string &text, const ParseOptions &opts) {
  return Parser(lex(text), opts).run();
}

namespace {

// Term precedence: 0 union, 1 diff, 2 inter, 3 primary.
void print_term(const Term &t, int min_level, std::string &out) {
  switch (t.kind()) {
  case TermKind::Empty:
    out += "{}@" + std::to_string(t.level_tag());
    return;
  case TermKind::Var:
    out += t.name();
    return;
  case TermKind::Single:
    out += "{";
    print_term(t.left(), 0, out);
    out += "}";
    return;
  case TermKind::Union: {
    bool paren = min_level > 0;
    if (paren)
      out += "(";
    print_term(t.left(), 0, out);
    out += " + ";
    print_term(t.right(), 1, out);
    if (paren)
      out += ")";
    return;
  }
  case TermKind::Diff: {
    bool paren = min_level > 1;
    if (paren)
      out += "(";
    print_term(t.left(), 1, out);
    out += " \\ ";
    print_term(t.right(), 2, out);
    if (paren)
      out += ")";
    return;
  }
  case TermKind::Inter: {
    bool paren = min_level > 2;
    if (paren)
      out += "(";
    print_term(t.left(), 2, out);
    out += " ^ ";
    print_term(t.right(), 3, out);
    if (paren)
      out += ")";
    return;
  }
  }
}

void print_atom(const Atom &a, bool negated, std::string &out) {
  print_term(a.lhs, 0, out);
  if (a.kind == AtomKind::Mem)
    out += negated ? " notin " : " in ";
  else
    out += negated ? " != " : " = ";
  print_term(a.rhs, 0, out);
}

// Formula precedence: 0 or, 1 and, 2 unary.
void print_fm(const Formula &f, int min_level, std::string &out) {
  switch (f.kind()) {
  case FormulaKind::Atom:
    print_atom(f.as_atom(), false, out);
    return;
  case FormulaKind::Neg:
    if (f.left().kind() == FormulaKind::Atom) {
      print_atom(f.left().as_atom(), true, out);
      return;
    }
    out += "~";
    print_fm(f.left(), 2, out);
    return;
  case FormulaKind::And: {
    bool paren = min_level > 1;
    if (paren)
      out += "(";
    print_fm(f.left(), 1, out);
    out += " & ";
    print_fm(f.right(), 2, out);
    if (paren)
      out += ")";
    return;
  }
  case FormulaKind::Or: {
    bool paren = min_level > 0;
    if (paren)
      out += "(";
    print_fm(f.left(), 0, out);
    out += " | ";
    print_fm(f.right(), 1, out);
    if (paren)
      out += ")";
    return;
  }
  }
}

} // namespace

std::string pretty(const Term &t) {
  std::string out;
  print_term(t, 0, out);
  return out;
}

std::string pretty(const Atom &a) {
  std::string out;
  print_atom(a, false, out);
  return out;
}

std::string pretty(const Formula &f) {
  std::string out;
  print_fm(f, 0, out);
  return out;
}

} // namespace mlss
