#pragma once

// Lexer and recursive-descent parsers for the surface grammar:
//
//   formula   := impl ; impl := disj ("->" impl)? ; disj := conj ("|" conj)* ;
//   conj      := unit ("&" unit)* ;
//   unit      := atom | "~" atom | "Id" "(" sort "," ind "," ind ")"
//              | ("forall"|"exists") var ":" sort "." formula | "(" formula ")" ;
//   atom      := predname ("(" ind ("," ind)* ")")? ;
//
//   proofterm := var | pair(p,p) | fst(p) | snd(p) | inl(p) | inr(p)
//              | case(p, x => p, y => p) | lam(x. p) | app(p,p)
//              | Lam(x:sort. p) | extr(p, ind) | eps(ind, p)
//              | inst(p, t g => p) | path(pathexpr, ind, ind) | rewr(p, t => p)
//
//   pathexpr  := "rho" | steplabel("@"position)? | "sym(" pathexpr ")"
//              | "tr(" pathexpr "," pathexpr ")" | var
//
// Operator precedence: ~ > & > | > ->, with -> right-associative and
// quantifiers extending maximally to the right.
//
// Signature files hold one declaration per line: `sort D`,
// `pred E/2 : D D`, `const a : D`. Judgement files hold context lines
// `x : A` (A a sort or a formula) and a final `|- term : formula` line.

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ndgames/syntax.hpp"

namespace ndgames {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Token {
  enum class Kind {
    Ident,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Arrow,      // ->
    FatArrow,   // =>
    Turnstile,  // |-
    Amp,
    Pipe,
    Tilde,
    At,
    Dash,
    Slash,
    Equals,
    Bang,
    Question,
    End,
  };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src, int first_line = 1) : src_(src) {
    int line = first_line, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string text, int l, int c) {
      toks_.push_back({k, std::move(text), l, c});
    };
    while (i < src_.size()) {
      char c = src_[i];
      int tl = line, tc = col;
      auto adv = [&](size_t n = 1) {
        for (size_t j = 0; j < n; ++j) {
          if (src_[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
          ++i;
        }
      };
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        adv();
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < src_.size() && src_[i] != '\n') adv();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = i;
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) ||
                                   src_[i] == '_' || src_[i] == '\''))
          adv();
        push(Token::Kind::Ident, src_.substr(start, i - start), tl, tc);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = i;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) adv();
        push(Token::Kind::Number, src_.substr(start, i - start), tl, tc);
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && i + 1 < src_.size() && src_[i + 1] == b;
      };
      if (two('-', '>')) {
        adv(2);
        push(Token::Kind::Arrow, "->", tl, tc);
        continue;
      }
      if (two('=', '>')) {
        adv(2);
        push(Token::Kind::FatArrow, "=>", tl, tc);
        continue;
      }
      if (two('|', '-')) {
        adv(2);
        push(Token::Kind::Turnstile, "|-", tl, tc);
        continue;
      }
      Token::Kind k;
      switch (c) {
        case '(': k = Token::Kind::LParen; break;
        case ')': k = Token::Kind::RParen; break;
        case '{': k = Token::Kind::LBrace; break;
        case '}': k = Token::Kind::RBrace; break;
        case ',': k = Token::Kind::Comma; break;
        case '.': k = Token::Kind::Dot; break;
        case ':': k = Token::Kind::Colon; break;
        case '&': k = Token::Kind::Amp; break;
        case '|': k = Token::Kind::Pipe; break;
        case '~': k = Token::Kind::Tilde; break;
        case '@': k = Token::Kind::At; break;
        case '-': k = Token::Kind::Dash; break;
        case '/': k = Token::Kind::Slash; break;
        case '=': k = Token::Kind::Equals; break;
        case '!': k = Token::Kind::Bang; break;
        case '?': k = Token::Kind::Question; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
      }
      adv();
      push(k, std::string(1, c), tl, tc);
    }
    toks_.push_back({Token::Kind::End, "", line, col});
  }

  const Token& peek(size_t ahead = 0) const {
    size_t j = pos_ + ahead;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(Token::Kind k) const { return peek().kind == k; }
  bool accept(Token::Kind k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (!at(k)) {
      const Token& t = peek();
      throw ParseError("expected " + what + ", found '" + (t.text.empty() ? "<end>" : t.text) + "'",
                       t.line, t.col);
    }
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col);
  }

 private:
  std::string src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

inline bool is_reserved(const std::string& s) {
  static const std::set<std::string> kw = {
      "forall", "exists", "Id",   "pair", "fst",  "snd", "inl",
      "inr",    "case",   "lam",  "app",  "Lam",  "extr", "eps",
      "inst",   "path",   "rewr", "rho",  "sym",  "tr",  "root"};
  return kw.count(s) > 0;
}

}  // namespace detail

// Free-name resolution scope: maps a free individual name to its sort.
// Parsers add inferred entries so repeated uses stay consistent.
using Scope = std::map<std::string, SortName>;

namespace detail {

class Parser {
 public:
  Parser(Lexer& lx, const Signature* sig, Scope* scope)
      : lx_(lx), sig_(sig), scope_(scope) {}

  // ---- individuals ----

  // `expected_sort` may be empty when the slot does not constrain it.
  Individual parse_individual(const SortName& expected_sort) {
    Token t = lx_.expect(Token::Kind::Ident, "an individual");
    // bound?
    for (size_t i = binders_.size(); i-- > 0;) {
      const auto& b = binders_[i];
      if (b.name == t.text) {
        int index = static_cast<int>(binders_.size() - 1 - i);
        if (b.kind != BinderKind::Individual)
          throw ParseError("'" + t.text + "' is not an individual variable here", t.line, t.col);
        return Individual::bound(index, t.text);
      }
    }
    if (sig_) {
      if (const ConstDecl* c = sig_->find_const(t.text)) {
        if (!expected_sort.empty() && c->sort != expected_sort)
          throw ParseError("constant '" + t.text + "' has sort " + c->sort + ", expected " +
                               expected_sort,
                           t.line, t.col);
        return Individual::constant(c->name, c->sort);
      }
    }
    if (scope_) {
      auto it = scope_->find(t.text);
      if (it != scope_->end()) {
        if (!expected_sort.empty() && it->second != expected_sort)
          throw ParseError("variable '" + t.text + "' has sort " + it->second + ", expected " +
                               expected_sort,
                           t.line, t.col);
        return Individual::var(t.text, it->second);
      }
      if (!expected_sort.empty()) {
        (*scope_)[t.text] = expected_sort;
        return Individual::var(t.text, expected_sort);
      }
    }
    throw ParseError("unknown individual '" + t.text + "'", t.line, t.col);
  }

  // ---- formulas ----

  Formula parse_formula() {
    Formula l = parse_disj();
    if (lx_.accept(Token::Kind::Arrow)) {
      Formula r = parse_formula();  // right-associative
      return Formula::impl(std::move(l), std::move(r));
    }
    return l;
  }

  // ---- proof terms ----

  ProofTerm parse_term() {
    Token t = lx_.expect(Token::Kind::Ident, "a proof term");
    const std::string& h = t.text;
    auto args_open = [&] { lx_.expect(Token::Kind::LParen, "'('"); };
    auto comma = [&] { lx_.expect(Token::Kind::Comma, "','"); };
    auto close = [&] { lx_.expect(Token::Kind::RParen, "')'"); };

    if (h == "pair") {
      args_open();
      ProofTerm a = parse_term();
      comma();
      ProofTerm b = parse_term();
      close();
      return ProofTerm::pair(std::move(a), std::move(b));
    }
    if (h == "fst" || h == "snd" || h == "inl" || h == "inr") {
      args_open();
      ProofTerm a = parse_term();
      close();
      if (h == "fst") return ProofTerm::fst(std::move(a));
      if (h == "snd") return ProofTerm::snd(std::move(a));
      if (h == "inl") return ProofTerm::inl(std::move(a));
      return ProofTerm::inr(std::move(a));
    }
    if (h == "case") {
      args_open();
      ProofTerm s = parse_term();
      comma();
      std::string x = binder_name();
      lx_.expect(Token::Kind::FatArrow, "'=>'");
      push_binder(BinderKind::Proof, x);
      ProofTerm lb = parse_term();
      pop_binder();
      comma();
      std::string y = binder_name();
      lx_.expect(Token::Kind::FatArrow, "'=>'");
      push_binder(BinderKind::Proof, y);
      ProofTerm rb = parse_term();
      pop_binder();
      close();
      return ProofTerm::case_of(std::move(s), std::move(lb), std::move(rb), x, y);
    }
    if (h == "lam") {
      args_open();
      std::string x = binder_name();
      lx_.expect(Token::Kind::Dot, "'.'");
      push_binder(BinderKind::Proof, x);
      ProofTerm b = parse_term();
      pop_binder();
      close();
      return ProofTerm::lam(std::move(b), x);
    }
    if (h == "app") {
      args_open();
      ProofTerm f = parse_term();
      comma();
      ProofTerm a = parse_term();
      close();
      return ProofTerm::app(std::move(f), std::move(a));
    }
    if (h == "Lam") {
      args_open();
      std::string x = binder_name();
      lx_.expect(Token::Kind::Colon, "':'");
      SortName s = sort_name();
      lx_.expect(Token::Kind::Dot, "'.'");
      push_binder(BinderKind::Individual, x, s);
      ProofTerm b = parse_term();
      pop_binder();
      close();
      return ProofTerm::biglam(s, std::move(b), x);
    }
    if (h == "extr") {
      args_open();
      ProofTerm f = parse_term();
      comma();
      Individual a = parse_individual("");
      close();
      return ProofTerm::extr(std::move(f), std::move(a));
    }
    if (h == "eps") {
      args_open();
      Individual w = parse_individual("");
      comma();
      ProofTerm p = parse_term();
      close();
      return ProofTerm::eps(std::move(w), std::move(p));
    }
    if (h == "inst") {
      args_open();
      ProofTerm s = parse_term();
      comma();
      std::string tv = binder_name();
      std::string gv = binder_name();
      lx_.expect(Token::Kind::FatArrow, "'=>'");
      push_binder(BinderKind::Individual, tv);
      push_binder(BinderKind::Proof, gv);
      ProofTerm d = parse_term();
      pop_binder();
      pop_binder();
      close();
      return ProofTerm::inst(std::move(s), std::move(d), tv, gv);
    }
    if (h == "path") {
      args_open();
      Path p = parse_path();
      comma();
      Individual l = parse_individual("");
      comma();
      Individual r = parse_individual("");
      close();
      return ProofTerm::path_intro(std::move(p), std::move(l), std::move(r));
    }
    if (h == "rewr") {
      args_open();
      ProofTerm s = parse_term();
      comma();
      std::string tv = binder_name();
      lx_.expect(Token::Kind::FatArrow, "'=>'");
      push_binder(BinderKind::PathVar, tv);
      ProofTerm d = parse_term();
      pop_binder();
      close();
      return ProofTerm::rewr(std::move(s), std::move(d), tv);
    }
    if (detail::is_reserved(h))
      throw ParseError("'" + h + "' cannot be used as a variable", t.line, t.col);
    // plain variable: bound or free
    for (size_t i = binders_.size(); i-- > 0;) {
      if (binders_[i].name == h) {
        int index = static_cast<int>(binders_.size() - 1 - i);
        if (binders_[i].kind != BinderKind::Proof)
          throw ParseError("'" + h + "' is not a proof variable here", t.line, t.col);
        return ProofTerm::bound(index, h);
      }
    }
    return ProofTerm::var(h);
  }

  // ---- paths ----

  Path parse_path() {
    if (lx_.at(Token::Kind::Ident)) {
      Token t = lx_.peek();
      if (t.text == "rho") {
        lx_.next();
        return Path::refl();
      }
      if (t.text == "sym") {
        lx_.next();
        lx_.expect(Token::Kind::LParen, "'('");
        Path p = parse_path();
        lx_.expect(Token::Kind::RParen, "')'");
        return Path::sym(std::move(p));
      }
      if (t.text == "tr") {
        lx_.next();
        lx_.expect(Token::Kind::LParen, "'('");
        Path a = parse_path();
        lx_.expect(Token::Kind::Comma, "','");
        Path b = parse_path();
        lx_.expect(Token::Kind::RParen, "')'");
        return Path::trans(std::move(a), std::move(b));
      }
      // dashed identifier: a step label
      std::string name = lx_.next().text;
      while (lx_.at(Token::Kind::Dash)) {
        lx_.next();
        name += "-" + lx_.expect(Token::Kind::Ident, "rest of a rule label").text;
      }
      if (auto lbl = rule_label_from_name(name)) {
        Position pos;
        if (lx_.accept(Token::Kind::At)) pos = parse_position();
        return Path::step(*lbl, std::move(pos));
      }
      // path variable bound by an enclosing rewr
      for (size_t i = binders_.size(); i-- > 0;) {
        if (binders_[i].name == name) {
          int index = static_cast<int>(binders_.size() - 1 - i);
          if (binders_[i].kind != BinderKind::PathVar)
            throw ParseError("'" + name + "' is not a path variable here", t.line, t.col);
          return Path::pvar(index, name);
        }
      }
      throw ParseError("unknown path expression '" + name + "'", t.line, t.col);
    }
    lx_.fail("expected a path expression");
  }

  Position parse_position() {
    if (lx_.at(Token::Kind::Ident) && lx_.peek().text == "root") {
      lx_.next();
      return {};
    }
    Position pos;
    pos.push_back(std::stoi(lx_.expect(Token::Kind::Number, "a position").text));
    while (lx_.accept(Token::Kind::Dot))
      pos.push_back(std::stoi(lx_.expect(Token::Kind::Number, "a position index").text));
    return pos;
  }

  void expect_end() {
    if (!lx_.at(Token::Kind::End)) lx_.fail("trailing input");
  }

  Lexer& lexer() { return lx_; }

 private:
  enum class BinderKind { Individual, Proof, PathVar };
  struct Binder {
    BinderKind kind;
    std::string name;
    SortName sort;
  };

  std::string binder_name() {
    Token t = lx_.expect(Token::Kind::Ident, "a binder name");
    if (detail::is_reserved(t.text))
      throw ParseError("'" + t.text + "' cannot be used as a binder", t.line, t.col);
    return t.text;
  }
  SortName sort_name() {
    Token t = lx_.expect(Token::Kind::Ident, "a sort name");
    if (sig_ && !sig_->has_sort(t.text))
      throw ParseError("unknown sort '" + t.text + "'", t.line, t.col);
    return t.text;
  }
  void push_binder(BinderKind k, const std::string& n, SortName s = {}) {
    binders_.push_back({k, n, std::move(s)});
  }
  void pop_binder() { binders_.pop_back(); }

  Formula parse_disj() {
    Formula l = parse_conj();
    while (lx_.accept(Token::Kind::Pipe)) l = Formula::disj(std::move(l), parse_conj());
    return l;
  }
  Formula parse_conj() {
    Formula l = parse_unit();
    while (lx_.accept(Token::Kind::Amp)) l = Formula::conj(std::move(l), parse_unit());
    return l;
  }
  Formula parse_unit() {
    if (lx_.accept(Token::Kind::LParen)) {
      Formula f = parse_formula();
      lx_.expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (lx_.accept(Token::Kind::Tilde)) return parse_atom(true);
    Token t = lx_.peek();
    if (t.kind != Token::Kind::Ident) lx_.fail("expected a formula");
    if (t.text == "forall" || t.text == "exists") {
      bool uni = t.text == "forall";
      lx_.next();
      std::string x = binder_name();
      lx_.expect(Token::Kind::Colon, "':'");
      SortName s = sort_name();
      lx_.expect(Token::Kind::Dot, "'.'");
      push_binder(BinderKind::Individual, x, s);
      Formula body = parse_formula();  // maximal extent to the right
      pop_binder();
      return uni ? Formula::forall(s, std::move(body), x)
                 : Formula::exists(s, std::move(body), x);
    }
    if (t.text == "Id") {
      lx_.next();
      lx_.expect(Token::Kind::LParen, "'('");
      SortName s = sort_name();
      lx_.expect(Token::Kind::Comma, "','");
      Individual l = parse_individual(s);
      lx_.expect(Token::Kind::Comma, "','");
      Individual r = parse_individual(s);
      lx_.expect(Token::Kind::RParen, "')'");
      return Formula::id(s, std::move(l), std::move(r));
    }
    return parse_atom(false);
  }
  Formula parse_atom(bool negated) {
    Token t = lx_.expect(Token::Kind::Ident, "a predicate name");
    if (detail::is_reserved(t.text))
      throw ParseError("'" + t.text + "' cannot be used as a predicate", t.line, t.col);
    const PredDecl* decl = sig_ ? sig_->find_pred(t.text) : nullptr;
    if (sig_ && !decl)
      throw ParseError("unknown predicate '" + t.text + "'", t.line, t.col);
    std::vector<Individual> args;
    if (lx_.accept(Token::Kind::LParen)) {
      do {
        SortName expect_sort;
        if (decl && args.size() < decl->arg_sorts.size())
          expect_sort = decl->arg_sorts[args.size()];
        args.push_back(parse_individual(expect_sort));
      } while (lx_.accept(Token::Kind::Comma));
      lx_.expect(Token::Kind::RParen, "')'");
    }
    if (decl && args.size() != decl->arg_sorts.size())
      throw ParseError("predicate '" + t.text + "' expects " +
                           std::to_string(decl->arg_sorts.size()) + " argument(s), got " +
                           std::to_string(args.size()),
                       t.line, t.col);
    return negated ? Formula::natom(t.text, std::move(args))
                   : Formula::atom(t.text, std::move(args));
  }

  Lexer& lx_;
  const Signature* sig_;
  Scope* scope_;
  std::vector<Binder> binders_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

inline Formula parse_formula(const std::string& text, const Signature* sig = nullptr,
                             Scope* scope = nullptr) {
  detail::Lexer lx(text);
  Scope local;
  detail::Parser p(lx, sig, scope ? scope : &local);
  Formula f = p.parse_formula();
  p.expect_end();
  return f;
}

inline ProofTerm parse_proofterm(const std::string& text, const Signature* sig = nullptr,
                                 Scope* scope = nullptr) {
  detail::Lexer lx(text);
  Scope local;
  detail::Parser p(lx, sig, scope ? scope : &local);
  ProofTerm t = p.parse_term();
  p.expect_end();
  return t;
}

inline Path parse_path(const std::string& text) {
  detail::Lexer lx(text);
  detail::Parser p(lx, nullptr, nullptr);
  Path pa = p.parse_path();
  p.expect_end();
  return pa;
}

// Signature file: `sort D` / `pred E/2 : D D` / `const a : D`, one per line.
inline Signature parse_signature(const std::string& text) {
  Signature sig;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    detail::Lexer lx(line, lineno);
    auto kw = lx.expect(detail::Token::Kind::Ident, "a declaration keyword");
    if (kw.text == "sort") {
      auto n = lx.expect(detail::Token::Kind::Ident, "a sort name");
      if (sig.has_sort(n.text)) throw ParseError("duplicate sort '" + n.text + "'", lineno, n.col);
      sig.add_sort(n.text);
    } else if (kw.text == "pred") {
      auto n = lx.expect(detail::Token::Kind::Ident, "a predicate name");
      lx.expect(detail::Token::Kind::Slash, "'/'");
      int arity = std::stoi(lx.expect(detail::Token::Kind::Number, "an arity").text);
      std::vector<SortName> argsorts;
      if (arity > 0) {
        lx.expect(detail::Token::Kind::Colon, "':'");
        for (int i = 0; i < arity; ++i) {
          auto s = lx.expect(detail::Token::Kind::Ident, "an argument sort");
          if (!sig.has_sort(s.text))
            throw ParseError("unknown sort '" + s.text + "'", lineno, s.col);
          argsorts.push_back(s.text);
        }
      }
      if (sig.find_pred(n.text))
        throw ParseError("duplicate predicate '" + n.text + "'", lineno, n.col);
      sig.add_pred(n.text, std::move(argsorts));
    } else if (kw.text == "const") {
      auto n = lx.expect(detail::Token::Kind::Ident, "a constant name");
      lx.expect(detail::Token::Kind::Colon, "':'");
      auto s = lx.expect(detail::Token::Kind::Ident, "a sort name");
      if (!sig.has_sort(s.text)) throw ParseError("unknown sort '" + s.text + "'", lineno, s.col);
      if (sig.find_const(n.text))
        throw ParseError("duplicate constant '" + n.text + "'", lineno, n.col);
      sig.add_const(n.text, s.text);
    } else {
      throw ParseError("expected sort/pred/const declaration", lineno, kw.col);
    }
    if (!lx.at(detail::Token::Kind::End)) lx.fail("trailing input after declaration");
  }
  return sig;
}

}  // namespace ndgames
