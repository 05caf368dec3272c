#pragma once

// Two-player evaluation game over a finite model, on NNF formulas:
// Abelard moves at conjunctions and universals, Eloise at disjunctions
// and existentials, literals end the game. The winner is computed by
// backward induction on the (finite) game tree; tarski_eval is the
// independent satisfaction recursion the game is checked against.
//
// Quantifier moves substitute the chosen element for the bound variable,
// so every position is a closed formula; this is the assignment update
// s(a/x) in substituted form. Assignments for free variables of the
// initial formula are applied up front the same way.

#include "ndgames/parse.hpp"
#include "ndgames/print.hpp"

namespace ndgames {

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Models and assignments.
// ---------------------------------------------------------------------------

struct Model {
  struct Domain {
    SortName sort;
    std::vector<std::string> elements;  // declaration order = canonical order
  };
  struct PredInterp {
    std::string name;
    std::vector<SortName> arg_sorts;
    std::set<std::vector<std::string>> tuples;
  };
  std::vector<Domain> domains;
  std::vector<PredInterp> preds;

  const Domain* find_domain(const SortName& s) const {
    for (const auto& d : domains)
      if (d.sort == s) return &d;
    return nullptr;
  }
  const PredInterp* find_pred(const std::string& n) const {
    for (const auto& p : preds)
      if (p.name == n) return &p;
    return nullptr;
  }
  const Domain* domain_of_element(const std::string& e) const {
    for (const auto& d : domains)
      for (const auto& x : d.elements)
        if (x == e) return &d;
    return nullptr;
  }

  // View of the model as a signature: elements become constants.
  Signature signature() const {
    Signature sig;
    for (const auto& d : domains) {
      sig.add_sort(d.sort);
      for (const auto& e : d.elements) sig.add_const(e, d.sort);
    }
    for (const auto& p : preds) sig.add_pred(p.name, p.arg_sorts);
    return sig;
  }
};

struct Assignment {
  std::map<std::string, std::string> bindings;  // variable name -> element

  // s(a/x): every other binding is untouched.
  Assignment with(const std::string& var, const std::string& element) const {
    Assignment s = *this;
    s.bindings[var] = element;
    return s;
  }
  const std::string* lookup(const std::string& var) const {
    auto it = bindings.find(var);
    return it == bindings.end() ? nullptr : &it->second;
  }
};

// Model files: `sort D = {a,b}`, `pred E/2 : D D = {(a,b),(b,a)}`. The
// sort profile may be omitted when exactly one sort is declared; duplicate
// tuples collapse (set semantics); empty domains are rejected.
inline Model parse_model(const std::string& text) {
  Model m;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    detail::Lexer lx(line, lineno);
    auto kw = lx.expect(detail::Token::Kind::Ident, "'sort' or 'pred'");
    if (kw.text == "sort") {
      auto n = lx.expect(detail::Token::Kind::Ident, "a sort name");
      if (m.find_domain(n.text)) throw ParseError("duplicate sort '" + n.text + "'", lineno, n.col);
      lx.expect(detail::Token::Kind::Equals, "'='");
      lx.expect(detail::Token::Kind::LBrace, "'{'");
      Model::Domain dom{n.text, {}};
      if (!lx.at(detail::Token::Kind::RBrace)) {
        do {
          auto e = lx.expect(detail::Token::Kind::Ident, "an element");
          if (m.domain_of_element(e.text) ||
              std::find(dom.elements.begin(), dom.elements.end(), e.text) != dom.elements.end())
            throw ParseError("duplicate element '" + e.text + "'", lineno, e.col);
          dom.elements.push_back(e.text);
        } while (lx.accept(detail::Token::Kind::Comma));
      }
      lx.expect(detail::Token::Kind::RBrace, "'}'");
      if (dom.elements.empty())
        throw ParseError("empty domain for sort '" + n.text + "': the game rules need an element to choose",
                         lineno, n.col);
      m.domains.push_back(std::move(dom));
    } else if (kw.text == "pred") {
      auto n = lx.expect(detail::Token::Kind::Ident, "a predicate name");
      if (m.find_pred(n.text))
        throw ParseError("duplicate predicate '" + n.text + "'", lineno, n.col);
      lx.expect(detail::Token::Kind::Slash, "'/'");
      int arity = std::stoi(lx.expect(detail::Token::Kind::Number, "an arity").text);
      Model::PredInterp p;
      p.name = n.text;
      if (lx.accept(detail::Token::Kind::Colon)) {
        for (int i = 0; i < arity; ++i) {
          auto s = lx.expect(detail::Token::Kind::Ident, "an argument sort");
          if (!m.find_domain(s.text))
            throw ParseError("unknown sort '" + s.text + "'", lineno, s.col);
          p.arg_sorts.push_back(s.text);
        }
      } else if (arity > 0) {
        if (m.domains.size() != 1)
          throw ParseError("predicate '" + n.text +
                               "' needs a sort profile when several sorts are declared",
                           lineno, n.col);
        p.arg_sorts.assign(static_cast<size_t>(arity), m.domains[0].sort);
      }
      lx.expect(detail::Token::Kind::Equals, "'='");
      lx.expect(detail::Token::Kind::LBrace, "'}'... '{'");
      if (!lx.at(detail::Token::Kind::RBrace)) {
        do {
          std::vector<std::string> tuple;
          if (arity == 1 && !lx.at(detail::Token::Kind::LParen)) {
            auto e = lx.expect(detail::Token::Kind::Ident, "an element");
            tuple.push_back(e.text);
          } else {
            lx.expect(detail::Token::Kind::LParen, "'('");
            if (!lx.at(detail::Token::Kind::RParen)) {
              do {
                auto e = lx.expect(detail::Token::Kind::Ident, "an element");
                tuple.push_back(e.text);
              } while (lx.accept(detail::Token::Kind::Comma));
            }
            lx.expect(detail::Token::Kind::RParen, "')'");
          }
          if (static_cast<int>(tuple.size()) != arity)
            throw ParseError("tuple arity mismatch for '" + n.text + "'", lineno, n.col);
          for (size_t i = 0; i < tuple.size(); ++i) {
            const Model::Domain* d = m.domain_of_element(tuple[i]);
            if (!d) throw ParseError("unknown element '" + tuple[i] + "'", lineno, n.col);
            if (!p.arg_sorts.empty() && d->sort != p.arg_sorts[i])
              throw ParseError("element '" + tuple[i] + "' has sort " + d->sort +
                                   ", expected " + p.arg_sorts[i],
                               lineno, n.col);
          }
          p.tuples.insert(std::move(tuple));  // duplicates collapse
        } while (lx.accept(detail::Token::Kind::Comma));
      }
      lx.expect(detail::Token::Kind::RBrace, "'}'");
      m.preds.push_back(std::move(p));
    } else {
      throw ParseError("expected a sort or pred declaration", lineno, kw.col);
    }
    if (!lx.at(detail::Token::Kind::End)) lx.fail("trailing input after declaration");
  }
  if (m.domains.empty()) throw ParseError("model declares no sort", lineno, 1);
  return m;
}

// ---------------------------------------------------------------------------
// Positions and moves.
// ---------------------------------------------------------------------------

enum class Player { Eloise, Abelard };
inline const char* player_name(Player p) { return p == Player::Eloise ? "Eloise" : "Abelard"; }
inline Player opponent(Player p) {
  return p == Player::Eloise ? Player::Abelard : Player::Eloise;
}

enum class Mover { Eloise, Abelard, Terminal };

// Positions are closed NNF formulas: quantifier moves substitute the
// chosen element, which is the game's s(a/x).
struct GamePosition {
  Formula formula;
};

inline Mover mover_of(const Formula& f) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::Atom:
    case FK::NegAtom: return Mover::Terminal;
    case FK::Conj:
    case FK::Forall: return Mover::Abelard;
    case FK::Disj:
    case FK::Exists: return Mover::Eloise;
    default:
      throw GameError("not an NNF game formula: " + print(f));
  }
}

// NNF restriction: implication and identity have no game rule here.
inline void validate_game_formula(const Formula& f, const Model& m) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::Atom:
    case FK::NegAtom: {
      const Model::PredInterp* p = m.find_pred(f.pred());
      if (!p) throw GameError("model does not interpret predicate '" + f.pred() + "'");
      if (p->arg_sorts.size() != f.args().size())
        throw GameError("predicate '" + f.pred() + "' arity mismatch");
      return;
    }
    case FK::Conj:
    case FK::Disj:
      validate_game_formula(f.left(), m);
      validate_game_formula(f.right(), m);
      return;
    case FK::Forall:
    case FK::Exists:
      if (!m.find_domain(f.qsort()))
        throw GameError("model has no domain for sort '" + f.qsort() + "'");
      validate_game_formula(f.body(), m);
      return;
    default:
      throw GameError("not an NNF game formula (implication or identity present): " +
                      print(f));
  }
}

namespace detail {
// Resolve a literal argument to an element name.
inline std::string resolve_element(const Individual& i, const Model& m) {
  switch (i.kind()) {
    case Individual::Kind::Bound:
      throw GameError("unsubstituted bound variable in a game position");
    case Individual::Kind::Var:
      throw GameError("free variable '" + i.name() + "' not covered by the assignment");
    case Individual::Kind::Const: {
      const Model::Domain* d = m.domain_of_element(i.name());
      if (!d) throw GameError("'" + i.name() + "' is not an element of the model");
      return i.name();
    }
  }
  throw GameError("bad individual");
}
}  // namespace detail

// Apply an assignment to the free variables of a formula, turning them
// into element constants.
inline Formula apply_assignment(const Formula& f, const Model& m, const Assignment& s) {
  if (s.bindings.empty()) return f;
  std::set<std::string> free;
  collect_free_names(f, free);
  Formula out = f;
  for (const auto& n : free) {
    if (m.domain_of_element(n)) continue;  // already an element constant
    const std::string* e = s.lookup(n);
    if (!e) continue;  // caught later as an uncovered free variable
    const Model::Domain* d = m.domain_of_element(*e);
    if (!d) throw GameError("assignment maps '" + n + "' to unknown element '" + *e + "'");
    out = subst_free(out, n, SubstValue::individual(Individual::constant(*e, d->sort)));
  }
  return out;
}

struct GameMove {
  std::string label;  // "L" / "R" for binary connectives, element name for quantifiers
  GamePosition next;
};

inline std::vector<GameMove> legal_moves(const GamePosition& pos, const Model& m) {
  using FK = Formula::Kind;
  const Formula& f = pos.formula;
  switch (f.kind()) {
    case FK::Atom:
    case FK::NegAtom:
      return {};  // rule (1): the game ends
    case FK::Conj:
    case FK::Disj:
      return {{"L", {f.left()}}, {"R", {f.right()}}};
    case FK::Forall:
    case FK::Exists: {
      const Model::Domain* d = m.find_domain(f.qsort());
      if (!d) throw GameError("no domain for sort '" + f.qsort() + "'");
      std::vector<GameMove> out;
      out.reserve(d->elements.size());
      for (const auto& e : d->elements) {
        Formula next =
            instantiate(f.body(), SubstValue::individual(Individual::constant(e, d->sort)));
        out.push_back({e, {std::move(next)}});
      }
      return out;
    }
    default:
      throw GameError("not an NNF game formula: " + print(f));
  }
}

// Rule (1): Eloise wins a terminal position iff the literal holds.
inline Player winner_at_terminal(const GamePosition& pos, const Model& m) {
  const Formula& f = pos.formula;
  if (!f.is_literal()) throw GameError("position is not terminal");
  const Model::PredInterp* p = m.find_pred(f.pred());
  if (!p) throw GameError("model does not interpret predicate '" + f.pred() + "'");
  std::vector<std::string> tuple;
  tuple.reserve(f.args().size());
  for (const auto& a : f.args()) tuple.push_back(detail::resolve_element(a, m));
  bool holds = p->tuples.count(tuple) > 0;
  if (f.kind() == Formula::Kind::NegAtom) holds = !holds;
  return holds ? Player::Eloise : Player::Abelard;
}

// ---------------------------------------------------------------------------
// Backward induction.
// ---------------------------------------------------------------------------

namespace detail {
inline Player solve_position(const GamePosition& pos, const Model& m) {
  Mover mv = mover_of(pos.formula);
  if (mv == Mover::Terminal) return winner_at_terminal(pos, m);
  Player mover = mv == Mover::Eloise ? Player::Eloise : Player::Abelard;
  for (const auto& move : legal_moves(pos, m)) {
    if (solve_position(move.next, m) == mover) return mover;
  }
  return opponent(mover);
}

// Allocation-free walk for large sweeps: bound variables resolve through
// an element environment instead of substitution.
struct EnvWalker {
  const Model& m;
  std::vector<const std::string*> env;  // innermost binder last

  bool literal_holds(const Formula& f) {
    const Model::PredInterp* p = m.find_pred(f.pred());
    if (!p) throw GameError("model does not interpret predicate '" + f.pred() + "'");
    std::vector<std::string> tuple;
    tuple.reserve(f.args().size());
    for (const auto& a : f.args()) {
      switch (a.kind()) {
        case Individual::Kind::Bound: {
          int i = a.index();
          if (i < 0 || i >= static_cast<int>(env.size()))
            throw GameError("unsubstituted bound variable in a game position");
          tuple.push_back(*env[env.size() - 1 - static_cast<size_t>(i)]);
          break;
        }
        case Individual::Kind::Var:
          throw GameError("free variable '" + a.name() + "' not covered by the assignment");
        case Individual::Kind::Const:
          if (!m.domain_of_element(a.name()))
            throw GameError("'" + a.name() + "' is not an element of the model");
          tuple.push_back(a.name());
          break;
      }
    }
    bool holds = p->tuples.count(tuple) > 0;
    return f.kind() == Formula::Kind::Atom ? holds : !holds;
  }

  Player solve(const Formula& f) {
    using FK = Formula::Kind;
    switch (f.kind()) {
      case FK::Atom:
      case FK::NegAtom:
        return literal_holds(f) ? Player::Eloise : Player::Abelard;
      case FK::Conj:
        if (solve(f.left()) == Player::Abelard) return Player::Abelard;
        return solve(f.right());
      case FK::Disj:
        if (solve(f.left()) == Player::Eloise) return Player::Eloise;
        return solve(f.right());
      case FK::Forall:
      case FK::Exists: {
        const Model::Domain* d = m.find_domain(f.qsort());
        if (!d) throw GameError("no domain for sort '" + f.qsort() + "'");
        Player mover = f.kind() == FK::Forall ? Player::Abelard : Player::Eloise;
        for (const auto& e : d->elements) {
          env.push_back(&e);
          Player w = solve(f.body());
          env.pop_back();
          if (w == mover) return mover;
        }
        return opponent(mover);
      }
      default:
        throw GameError("not an NNF game formula: " + print(f));
    }
  }

  bool truth(const Formula& f) {
    using FK = Formula::Kind;
    switch (f.kind()) {
      case FK::Atom:
      case FK::NegAtom:
        return literal_holds(f);
      case FK::Conj:
        return truth(f.left()) && truth(f.right());
      case FK::Disj:
        return truth(f.left()) || truth(f.right());
      case FK::Forall:
      case FK::Exists: {
        const Model::Domain* d = m.find_domain(f.qsort());
        if (!d) throw GameError("no domain for sort '" + f.qsort() + "'");
        bool all = f.kind() == FK::Forall;
        for (const auto& e : d->elements) {
          env.push_back(&e);
          bool b = truth(f.body());
          env.pop_back();
          if (b != all) return !all;
        }
        return all;
      }
      default:
        throw GameError("not an NNF game formula: " + print(f));
    }
  }
};
}  // namespace detail

// The player holding a winning strategy; the game is finite, zero-sum and
// perfect-information, so exactly one does.
inline Player game_winner(const Formula& f, const Model& m, const Assignment& s = {}) {
  validate_game_formula(f, m);
  Formula closed = apply_assignment(f, m, s);
  detail::EnvWalker w{m, {}};
  return w.solve(closed);
}

inline std::string position_key(const GamePosition& pos) { return print(pos.formula); }

struct StrategyResult {
  Player winner;
  // position -> chosen move label, for every position where the winner is
  // to move that is reachable while the winner follows this map
  std::map<std::string, std::string> strategy;
};

inline StrategyResult winning_strategy(const Formula& f, const Model& m,
                                       const Assignment& s = {}) {
  validate_game_formula(f, m);
  Formula closed = apply_assignment(f, m, s);
  StrategyResult res;
  res.winner = detail::solve_position({closed}, m);

  // collect the winner's choices over all positions reachable under them
  std::vector<GamePosition> queue{{closed}};
  while (!queue.empty()) {
    GamePosition pos = queue.back();
    queue.pop_back();
    Mover mv = mover_of(pos.formula);
    if (mv == Mover::Terminal) continue;
    Player mover = mv == Mover::Eloise ? Player::Eloise : Player::Abelard;
    auto moves = legal_moves(pos, m);
    if (mover == res.winner) {
      // first winning move in canonical order
      for (const auto& mo : moves) {
        if (detail::solve_position(mo.next, m) == res.winner) {
          auto key = position_key(pos);
          if (!res.strategy.count(key)) {
            res.strategy[key] = mo.label;
            queue.push_back(mo.next);
          }
          break;
        }
      }
    } else {
      for (const auto& mo : moves) queue.push_back(mo.next);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Tarski satisfaction: the independent oracle.
// ---------------------------------------------------------------------------

inline bool tarski_eval(const Formula& f, const Model& m, const Assignment& s = {}) {
  validate_game_formula(f, m);
  detail::EnvWalker w{m, {}};
  return w.truth(apply_assignment(f, m, s));
}

// ---------------------------------------------------------------------------
// Played games.
// ---------------------------------------------------------------------------

struct Controller {
  bool interactive = false;
  // interactive: returns the index of the chosen move; out-of-range is a
  // GameError (interfaces that can re-prompt do so before calling)
  std::function<int(const GamePosition&, const std::vector<GameMove>&)> choose;
};

struct PlayStep {
  GamePosition position;
  Mover mover;
  std::string move;  // empty at the terminal position
};

struct PlayResult {
  Player winner;
  std::vector<PlayStep> steps;
};

// Auto players follow a winning strategy when they have one and otherwise
// take the first move in canonical order.
inline PlayResult play_game(const Formula& f, const Model& m, const Assignment& s,
                            const Controller& eloise, const Controller& abelard) {
  validate_game_formula(f, m);
  GamePosition pos{apply_assignment(f, m, s)};
  PlayResult res{Player::Eloise, {}};
  for (;;) {
    Mover mv = mover_of(pos.formula);
    if (mv == Mover::Terminal) {
      res.steps.push_back({pos, mv, ""});
      res.winner = winner_at_terminal(pos, m);
      return res;
    }
    Player mover = mv == Mover::Eloise ? Player::Eloise : Player::Abelard;
    const Controller& ctl = mover == Player::Eloise ? eloise : abelard;
    auto moves = legal_moves(pos, m);
    size_t chosen = 0;
    if (ctl.interactive) {
      int k = ctl.choose(pos, moves);
      if (k < 0 || static_cast<size_t>(k) >= moves.size())
        throw GameError("move index out of range");
      chosen = static_cast<size_t>(k);
    } else {
      for (size_t i = 0; i < moves.size(); ++i) {
        if (detail::solve_position(moves[i].next, m) == mover) {
          chosen = i;
          break;
        }
      }
    }
    res.steps.push_back({pos, mv, moves[chosen].label});
    pos = moves[chosen].next;
  }
}

inline std::string play_transcript(const PlayResult& res) {
  std::string out;
  for (const auto& st : res.steps) {
    out += "POSITION " + print(st.position.formula) + "\n";
    if (st.mover == Mover::Terminal) break;
    out += "MOVER ";
    out += (st.mover == Mover::Eloise ? "Eloise" : "Abelard");
    out += "\nMOVE " + st.move + "\n";
  }
  out += "WINNER ";
  out += player_name(res.winner);
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Bounded enumeration, for adequacy sweeps: every NNF sentence over one
// sort and the given predicates with at most `max_nodes` AST nodes and
// quantifier depth at most `max_qdepth`; and every model of the named
// shape up to `max_size` elements.
// ---------------------------------------------------------------------------

inline std::vector<Formula> enumerate_nnf_sentences(const SortName& sort,
                                                    const std::vector<PredDecl>& preds,
                                                    int max_nodes, int max_qdepth) {
  // memo[(nodes, qdepth, vars)] -> all formulas with exactly `nodes` nodes
  std::map<std::tuple<int, int, int>, std::vector<Formula>> memo;
  std::function<const std::vector<Formula>&(int, int, int)> gen =
      [&](int nodes, int qdepth, int vars) -> const std::vector<Formula>& {
    auto key = std::make_tuple(nodes, qdepth, vars);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Formula> out;
    if (nodes == 1) {
      // literals over the bound variables
      std::vector<std::vector<Individual>> tuples{{}};
      for (const auto& p : preds) {
        tuples = {{}};
        for (size_t i = 0; i < p.arg_sorts.size(); ++i) {
          std::vector<std::vector<Individual>> next;
          for (const auto& t : tuples)
            for (int v = 0; v < vars; ++v) {
              auto t2 = t;
              t2.push_back(Individual::bound(v));
              next.push_back(std::move(t2));
            }
          tuples = std::move(next);
        }
        for (const auto& t : tuples) {
          out.push_back(Formula::atom(p.name, t));
          out.push_back(Formula::natom(p.name, t));
        }
      }
    } else {
      if (qdepth > 0) {
        for (const auto& body : gen(nodes - 1, qdepth - 1, vars + 1)) {
          out.push_back(Formula::forall(sort, body));
          out.push_back(Formula::exists(sort, body));
        }
      }
      for (int a = 1; a <= nodes - 2; ++a) {
        const auto& ls = gen(a, qdepth, vars);
        const auto& rs = gen(nodes - 1 - a, qdepth, vars);
        for (const auto& l : ls)
          for (const auto& r : rs) {
            out.push_back(Formula::conj(l, r));
            out.push_back(Formula::disj(l, r));
          }
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::vector<Formula> all;
  for (int n = 1; n <= max_nodes; ++n) {
    const auto& v = gen(n, max_qdepth, 0);
    all.insert(all.end(), v.begin(), v.end());
  }
  return all;
}

// All models with one sort of 1..max_size elements and one binary
// predicate interpreted by every possible tuple set.
inline std::vector<Model> enumerate_models(const SortName& sort, const std::string& pred,
                                           int max_size) {
  std::vector<Model> out;
  const char* names[] = {"a", "b", "c", "d", "e"};
  for (int n = 1; n <= max_size; ++n) {
    Model base;
    Model::Domain dom{sort, {}};
    for (int i = 0; i < n; ++i) dom.elements.push_back(names[i]);
    base.domains.push_back(dom);
    std::vector<std::vector<std::string>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pairs.push_back({dom.elements[static_cast<size_t>(i)],
                         dom.elements[static_cast<size_t>(j)]});
    size_t count = size_t{1} << pairs.size();
    for (size_t mask = 0; mask < count; ++mask) {
      Model m = base;
      Model::PredInterp p{pred, {sort, sort}, {}};
      for (size_t k = 0; k < pairs.size(); ++k)
        if (mask & (size_t{1} << k)) p.tuples.insert(pairs[k]);
      m.preds.push_back(std::move(p));
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace ndgames
