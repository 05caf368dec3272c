#pragma once

// Attack/Defense dialogue engine over particle rules. Assertions are
// canonical terms, attacks pick the destructor for the head connective,
// and every defense is literally the beta-reduct of that destructor
// applied to the weak-head-normalised assertion:
//
//   conjunction   L? / R?        -> the fst / snd reduct
//   disjunction   ?              -> whichever disjunct the constructor chose
//   implication   payload a:A, ? -> b(a/x) : B
//   universal     payload a:D    -> f(a/x) : P(a)
//   existential   ?              -> the witness a:D and its proof of P(a)
//   identity      ?              -> the equality judgement, path disclosed
//
// Only particle rules: one attack per assertion, immediate defense, no
// repetition ranks. Disjunctive and existential defenses are chosen by
// the asserter's constructor, never by the attacker.

#include "ndgames/reduce.hpp"

namespace ndgames {

struct DialogueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AttackLabel { Left, Right, Question, ImplPayload, ForallPayload };

struct AttackShape {
  AttackLabel label;
  Formula payload_formula;  // ImplPayload: the antecedent to be granted
  SortName payload_sort;    // ForallPayload: the domain to pick from

  std::string display() const {
    switch (label) {
      case AttackLabel::Left: return "L?";
      case AttackLabel::Right: return "R?";
      case AttackLabel::Question: return "?";
      case AttackLabel::ImplPayload: return "! <proof of " + print(payload_formula) + ">";
      case AttackLabel::ForallPayload: return "@ <individual of sort " + payload_sort + ">";
    }
    return "?";
  }
};

struct Attack {
  AttackLabel label;
  std::optional<ProofTerm> proof;   // ImplPayload
  std::optional<Individual> ind;    // ForallPayload

  static Attack left() { return {AttackLabel::Left, {}, {}}; }
  static Attack right() { return {AttackLabel::Right, {}, {}}; }
  static Attack question() { return {AttackLabel::Question, {}, {}}; }
  static Attack with_proof(ProofTerm p) { return {AttackLabel::ImplPayload, std::move(p), {}}; }
  static Attack with_individual(Individual i) {
    return {AttackLabel::ForallPayload, {}, std::move(i)};
  }

  std::string display() const {
    switch (label) {
      case AttackLabel::Left: return "L?";
      case AttackLabel::Right: return "R?";
      case AttackLabel::Question: return "?";
      case AttackLabel::ImplPayload: return "! " + print(*proof);
      case AttackLabel::ForallPayload: return "@ " + print(*ind);
    }
    return "?";
  }
};

// The attack table for the head connective; literals admit none.
inline std::vector<AttackShape> attacks_of(const Formula& f) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::Atom:
    case FK::NegAtom:
      throw DialogueError("atomic: no attacks on literal " + print(f));
    case FK::Conj:
      return {{AttackLabel::Left, {}, {}}, {AttackLabel::Right, {}, {}}};
    case FK::Disj:
      return {{AttackLabel::Question, {}, {}}};
    case FK::Impl:
      return {{AttackLabel::ImplPayload, f.left(), {}}};
    case FK::Forall:
      return {{AttackLabel::ForallPayload, {}, f.qsort()}};
    case FK::Exists:
      return {{AttackLabel::Question, {}, {}}};
    case FK::Id:
      return {{AttackLabel::Question, {}, {}}};
    case FK::Meta:
      break;
  }
  throw DialogueError("no attack table for this formula");
}

enum class DialogueStatus { Open, AtomicClosed, Failed };

struct DialogueMove {
  ProofTerm assertion_term;
  Formula assertion_formula;
  Attack attack;
  ProofTerm defense_term;
  Formula defense_formula;
  std::optional<Individual> witness;  // existential defenses disclose it
  std::optional<Path> disclosed;      // identity defenses disclose the path
};

struct DialogueState {
  const Signature* sig = nullptr;
  Context ctx;
  ProofTerm term;
  Formula formula;
  std::vector<DialogueMove> transcript;
  DialogueStatus status = DialogueStatus::Open;
  std::string note;  // failure detail
};

inline DialogueState start_dialogue(const Signature& sig, const Context& ctx,
                                    const ProofTerm& term, const Formula& formula) {
  check_or_throw(sig, ctx, term, formula);
  DialogueState st;
  st.sig = &sig;
  st.ctx = ctx;
  st.term = term;
  st.formula = formula;
  if (formula.is_literal()) st.status = DialogueStatus::AtomicClosed;
  return st;
}

// The destructor an attack selects, over an assertion term already in
// weak-head-normal form.
inline ProofTerm destructor_of(const Attack& atk, const ProofTerm& whnf_term,
                               const Formula& formula) {
  switch (atk.label) {
    case AttackLabel::Left: return ProofTerm::fst(whnf_term);
    case AttackLabel::Right: return ProofTerm::snd(whnf_term);
    case AttackLabel::ImplPayload: return ProofTerm::app(whnf_term, *atk.proof);
    case AttackLabel::ForallPayload: return ProofTerm::extr(whnf_term, *atk.ind);
    case AttackLabel::Question:
      switch (formula.kind()) {
        case Formula::Kind::Disj:
          return ProofTerm::case_of(whnf_term, ProofTerm::bound(0, "x"),
                                    ProofTerm::bound(0, "y"));
        case Formula::Kind::Exists:
          return ProofTerm::inst(whnf_term, ProofTerm::bound(0, "g"));
        case Formula::Kind::Id:
          return ProofTerm::rewr(whnf_term,
                                 ProofTerm::path_intro(Path::pvar(0, "t"),
                                                       shift(formula.id_lhs(), 1, 0),
                                                       shift(formula.id_rhs(), 1, 0)));
        default:
          break;
      }
      break;
  }
  throw DialogueError("attack " + atk.display() + " is not legal against " + print(formula));
}

inline DialogueState defend(const DialogueState& state, const Attack& atk) {
  using FK = Formula::Kind;
  if (state.status != DialogueStatus::Open)
    throw DialogueError("dialogue is not open");
  const Formula& f = state.formula;
  if (f.is_literal()) throw DialogueError("literal assertions admit no attack");

  auto w = whnf(state.term);
  if (!w || !is_canonical(*w))
    throw DialogueError("assertion term does not weak-head normalize to a canonical form");

  DialogueState next = state;
  DialogueMove mv;
  mv.assertion_term = state.term;
  mv.assertion_formula = f;
  mv.attack = atk;

  auto illegal = [&]() -> DialogueError {
    return DialogueError("attack " + atk.display() + " is not legal against " + print(f));
  };

  switch (f.kind()) {
    case FK::Conj: {
      if (atk.label != AttackLabel::Left && atk.label != AttackLabel::Right) throw illegal();
      bool left = atk.label == AttackLabel::Left;
      mv.defense_term = beta_step(destructor_of(atk, *w, f), {{}, left ? RuleLabel::BetaFst
                                                                       : RuleLabel::BetaSnd});
      mv.defense_formula = left ? f.left() : f.right();
      break;
    }
    case FK::Disj: {
      if (atk.label != AttackLabel::Question) throw illegal();
      bool isl = w->kind() == ProofTerm::Kind::Inl;
      mv.defense_term = beta_step(destructor_of(atk, *w, f),
                                  {{}, isl ? RuleLabel::BetaCaseL : RuleLabel::BetaCaseR});
      mv.defense_formula = isl ? f.left() : f.right();
      break;
    }
    case FK::Impl: {
      if (atk.label != AttackLabel::ImplPayload || !atk.proof) throw illegal();
      CheckResult cr = check(*state.sig, state.ctx, *atk.proof, f.left());
      if (!cr.ok)
        throw DialogueError("payload " + print(*atk.proof) + " does not prove " +
                            print(f.left()) + ": " + cr.error);
      mv.defense_term = beta_step(destructor_of(atk, *w, f), {{}, RuleLabel::BetaApp});
      mv.defense_formula = f.right();
      break;
    }
    case FK::Forall: {
      if (atk.label != AttackLabel::ForallPayload || !atk.ind) throw illegal();
      detail::Checker chk(*state.sig, state.ctx);
      SortName s = chk.sort_of(*atk.ind);
      if (s != f.qsort())
        throw DialogueError("payload " + print(*atk.ind) + " has sort " + s +
                            ", universal ranges over " + f.qsort());
      mv.defense_term = beta_step(destructor_of(atk, *w, f), {{}, RuleLabel::BetaExtr});
      mv.defense_formula = instantiate(f.body(), SubstValue::individual(*atk.ind));
      break;
    }
    case FK::Exists: {
      if (atk.label != AttackLabel::Question) throw illegal();
      mv.defense_term = beta_step(destructor_of(atk, *w, f), {{}, RuleLabel::BetaInst});
      mv.defense_formula = instantiate(f.body(), SubstValue::individual(w->ind()));
      mv.witness = w->ind();
      break;
    }
    case FK::Id: {
      if (atk.label != AttackLabel::Question) throw illegal();
      mv.defense_term = beta_step(destructor_of(atk, *w, f), {{}, RuleLabel::BetaRewr});
      mv.defense_formula = f;
      mv.disclosed = w->path();
      break;
    }
    default:
      throw illegal();
  }

  next.term = mv.defense_term;
  next.formula = mv.defense_formula;
  // an identity defense ends the exchange: the path has been disclosed
  if (f.kind() == FK::Id || next.formula.is_literal())
    next.status = DialogueStatus::AtomicClosed;
  next.transcript.push_back(std::move(mv));
  return next;
}

// ---------------------------------------------------------------------------
// Attacker strategies.
// ---------------------------------------------------------------------------

struct ChallengePool {
  std::vector<ProofTerm> proofs;
  std::vector<Individual> individuals;
};

// Scripted: play the given attacks until the script or the dialogue ends.
inline DialogueState run_scripted(DialogueState state, const std::vector<Attack>& script) {
  for (const auto& atk : script) {
    if (state.status != DialogueStatus::Open) break;
    state = defend(state, atk);
  }
  return state;
}

// Every attack branch, payloads drawn from the pool; returns the terminal
// state of each maximal play, in deterministic order.
inline void run_exhaustive_into(const DialogueState& state, const ChallengePool& pool,
                                std::vector<DialogueState>& out) {
  if (state.status != DialogueStatus::Open) {
    out.push_back(state);
    return;
  }
  std::vector<Attack> options;
  for (const auto& shape : attacks_of(state.formula)) {
    switch (shape.label) {
      case AttackLabel::Left: options.push_back(Attack::left()); break;
      case AttackLabel::Right: options.push_back(Attack::right()); break;
      case AttackLabel::Question: options.push_back(Attack::question()); break;
      case AttackLabel::ImplPayload:
        for (const auto& p : pool.proofs)
          if (check(*state.sig, state.ctx, p, shape.payload_formula).ok)
            options.push_back(Attack::with_proof(p));
        break;
      case AttackLabel::ForallPayload:
        for (const auto& i : pool.individuals)
          if (i.sort() == shape.payload_sort) options.push_back(Attack::with_individual(i));
        break;
    }
  }
  if (options.empty()) {
    out.push_back(state);  // no playable attack (e.g. empty pool): stuck open
    return;
  }
  for (const auto& atk : options) {
    try {
      run_exhaustive_into(defend(state, atk), pool, out);
    } catch (const DialogueError& e) {
      DialogueState failed = state;
      failed.status = DialogueStatus::Failed;
      failed.note = e.what();
      out.push_back(std::move(failed));
    }
  }
}

inline std::vector<DialogueState> run_exhaustive(const DialogueState& state,
                                                 const ChallengePool& pool) {
  std::vector<DialogueState> out;
  run_exhaustive_into(state, pool, out);
  return out;
}

// Interactive: the callback picks each attack; nullopt abandons the play.
using AttackerCallback =
    std::function<std::optional<Attack>(const DialogueState&, const std::vector<AttackShape>&)>;

inline DialogueState run_interactive(DialogueState state, const AttackerCallback& ask) {
  while (state.status == DialogueStatus::Open) {
    auto shapes = attacks_of(state.formula);
    auto atk = ask(state, shapes);
    if (!atk) break;
    state = defend(state, *atk);
  }
  return state;
}

// One attacker, three guises.
struct Attacker {
  enum class Kind { Scripted, Exhaustive, Interactive };
  Kind kind = Kind::Exhaustive;
  std::vector<Attack> script;
  ChallengePool pool;
  AttackerCallback callback;

  static Attacker scripted(std::vector<Attack> moves) {
    Attacker a;
    a.kind = Kind::Scripted;
    a.script = std::move(moves);
    return a;
  }
  static Attacker exhaustive(ChallengePool p) {
    Attacker a;
    a.pool = std::move(p);
    return a;
  }
  static Attacker interactive(AttackerCallback cb) {
    Attacker a;
    a.kind = Kind::Interactive;
    a.callback = std::move(cb);
    return a;
  }
};

// Plays attacks until a literal is reached or the attacker runs out of
// moves. Scripted and interactive attackers yield a single terminal
// state; the exhaustive attacker reports one per maximal play.
inline std::vector<DialogueState> run_dialogue(const Signature& sig, const Judgement& j,
                                               const Attacker& attacker) {
  DialogueState st = start_dialogue(sig, j.ctx, j.term, j.formula);
  switch (attacker.kind) {
    case Attacker::Kind::Scripted:
      return {run_scripted(std::move(st), attacker.script)};
    case Attacker::Kind::Exhaustive:
      return run_exhaustive(st, attacker.pool);
    case Attacker::Kind::Interactive:
      return {run_interactive(std::move(st), attacker.callback)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Correspondence checker: for every legal attack on a canonical term, the
// defense must be alpha-equal to the beta-reduct of the matching
// destructor. Payload attacks are exercised with a fresh hypothesis / a
// fresh individual so the check is total without a pool.
// ---------------------------------------------------------------------------

struct CorrespondenceEntry {
  std::string attack;
  ProofTerm defense;
  ProofTerm reduct;
  bool match;
};

struct CorrespondenceReport {
  std::vector<CorrespondenceEntry> entries;
  bool all_match = true;
};

inline CorrespondenceReport check_correspondence(const Signature& sig, const Context& ctx,
                                                 const ProofTerm& term,
                                                 const Formula& formula) {
  if (!is_canonical(term))
    throw DialogueError("correspondence check expects a canonical term");
  check_or_throw(sig, ctx, term, formula);
  CorrespondenceReport rep;
  if (formula.is_literal()) return rep;

  auto fresh_name = [&](const char* base) {
    std::string n = base;
    int k = 0;
    while (ctx.find(n + std::to_string(k))) ++k;
    return n + std::to_string(k);
  };

  for (const auto& shape : attacks_of(formula)) {
    Context ctx2 = ctx;
    Attack atk = Attack::question();
    switch (shape.label) {
      case AttackLabel::Left: atk = Attack::left(); break;
      case AttackLabel::Right: atk = Attack::right(); break;
      case AttackLabel::Question: break;
      case AttackLabel::ImplPayload: {
        std::string n = fresh_name("k");
        ctx2.declare_hyp(n, shape.payload_formula);
        atk = Attack::with_proof(ProofTerm::var(n));
        break;
      }
      case AttackLabel::ForallPayload: {
        std::string n = fresh_name("k");
        ctx2.declare_ind(n, shape.payload_sort);
        atk = Attack::with_individual(Individual::var(n, shape.payload_sort));
        break;
      }
    }
    DialogueState st = start_dialogue(sig, ctx2, term, formula);
    DialogueState after = defend(st, atk);
    ProofTerm w = *whnf(term);
    ProofTerm destr = destructor_of(atk, w, formula);
    Redex r{{}, *head_redex(destr)};
    ProofTerm reduct = beta_step(destr, r);
    bool match = alpha_eq(after.transcript.back().defense_term, reduct);
    rep.entries.push_back({atk.display(), after.transcript.back().defense_term, reduct, match});
    rep.all_match = rep.all_match && match;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Script / pool files and transcripts.
// ---------------------------------------------------------------------------

// One move per line: `L?`, `R?`, `?`, `! <proofterm>`, `@ <constant>`.
inline std::vector<Attack> parse_script(const std::string& text, const Signature& sig,
                                        Scope* scope = nullptr) {
  std::vector<Attack> out;
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
    if (lx.at(detail::Token::Kind::Ident) &&
        (lx.peek().text == "L" || lx.peek().text == "R")) {
      std::string side = lx.next().text;
      lx.expect(detail::Token::Kind::Question, "'?'");
      out.push_back(side == "L" ? Attack::left() : Attack::right());
    } else if (lx.accept(detail::Token::Kind::Question)) {
      out.push_back(Attack::question());
    } else if (lx.accept(detail::Token::Kind::Bang)) {
      detail::Parser p(lx, &sig, scope);
      out.push_back(Attack::with_proof(p.parse_term()));
    } else if (lx.accept(detail::Token::Kind::At)) {
      detail::Parser p(lx, &sig, scope);
      out.push_back(Attack::with_individual(p.parse_individual("")));
    } else {
      lx.fail("expected a move: L?, R?, ?, ! <proofterm>, @ <constant>");
    }
    if (!lx.at(detail::Token::Kind::End)) lx.fail("trailing input after move");
  }
  return out;
}

// Pool files use the same payload syntax, `!` and `@` lines only.
inline ChallengePool parse_pool(const std::string& text, const Signature& sig,
                                Scope* scope = nullptr) {
  ChallengePool pool;
  for (const auto& atk : parse_script(text, sig, scope)) {
    if (atk.label == AttackLabel::ImplPayload)
      pool.proofs.push_back(*atk.proof);
    else if (atk.label == AttackLabel::ForallPayload)
      pool.individuals.push_back(*atk.ind);
    else
      throw DialogueError("challenge pools may contain only '!' and '@' entries");
  }
  return pool;
}

inline std::string transcript_lines(const DialogueState& st) {
  std::string out;
  const ProofTerm* t0 = &st.term;
  const Formula* f0 = &st.formula;
  if (!st.transcript.empty()) {
    t0 = &st.transcript.front().assertion_term;
    f0 = &st.transcript.front().assertion_formula;
  }
  out += "ASSERT " + print(*t0) + " : " + print(*f0) + "\n";
  for (const auto& mv : st.transcript) {
    out += "ATTACK " + mv.attack.display() + "\n";
    if (mv.witness) out += "DEFEND " + print(*mv.witness) + " : " + mv.witness->sort() + "\n";
    out += "DEFEND " + print(mv.defense_term) + " : " + print(mv.defense_formula) + "\n";
  }
  return out;
}

}  // namespace ndgames
