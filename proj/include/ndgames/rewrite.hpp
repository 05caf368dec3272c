#pragma once

// One-step rewriting: the eight destructor-over-constructor contractions,
// redex enumeration in leftmost-outermost order, weak-head reduction, and
// the executable semantics of paths (replay and endpoint checking).

#include <functional>

#include "ndgames/print.hpp"
#include "ndgames/syntax.hpp"

namespace ndgames {

struct ReduceError : std::runtime_error {
  enum class Code { StaleRedex, StepBound, BadPath };
  Code code;
  ReduceError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct Redex {
  Position pos;
  RuleLabel label;
  bool operator==(const Redex& o) const { return pos == o.pos && label == o.label; }
};

// Contraction pattern at the head of `t`, if any.
inline std::optional<RuleLabel> head_redex(const ProofTerm& t) {
  using K = ProofTerm::Kind;
  switch (t.kind()) {
    case K::Fst:
      if (t.kids()[0].kind() == K::Pair) return RuleLabel::BetaFst;
      return std::nullopt;
    case K::Snd:
      if (t.kids()[0].kind() == K::Pair) return RuleLabel::BetaSnd;
      return std::nullopt;
    case K::Case:
      if (t.kids()[0].kind() == K::Inl) return RuleLabel::BetaCaseL;
      if (t.kids()[0].kind() == K::Inr) return RuleLabel::BetaCaseR;
      return std::nullopt;
    case K::App:
      if (t.kids()[0].kind() == K::Lam) return RuleLabel::BetaApp;
      return std::nullopt;
    case K::Extr:
      if (t.kids()[0].kind() == K::BigLam) return RuleLabel::BetaExtr;
      return std::nullopt;
    case K::Inst:
      if (t.kids()[0].kind() == K::Eps) return RuleLabel::BetaInst;
      return std::nullopt;
    case K::Rewr:
      if (t.kids()[0].kind() == K::PathIntro) return RuleLabel::BetaRewr;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// Contract a redex sitting at the root of `t`.
inline ProofTerm contract(const ProofTerm& t, RuleLabel label) {
  const auto& scrut = t.kids()[0];
  switch (label) {
    case RuleLabel::BetaFst:
      return scrut.kids()[0];
    case RuleLabel::BetaSnd:
      return scrut.kids()[1];
    case RuleLabel::BetaCaseL:
      return instantiate(t.kids()[1], SubstValue::proof(scrut.kids()[0]));
    case RuleLabel::BetaCaseR:
      return instantiate(t.kids()[2], SubstValue::proof(scrut.kids()[0]));
    case RuleLabel::BetaApp:
      return instantiate(scrut.kids()[0], SubstValue::proof(t.kids()[1]));
    case RuleLabel::BetaExtr:
      return instantiate(scrut.kids()[0], SubstValue::individual(t.ind()));
    case RuleLabel::BetaInst: {
      // body binds the witness (outer slot) and the instance proof (inner
      // slot); the proof enters under the witness binder, so it crosses
      // one binder on the way in
      ProofTerm d =
          instantiate(t.kids()[1], SubstValue::proof(shift(scrut.kids()[0], 1, 0)));
      return instantiate(d, SubstValue::individual(scrut.ind()));
    }
    case RuleLabel::BetaRewr:
      return instantiate(t.kids()[1], SubstValue::path(scrut.path()));
  }
  throw ReduceError(ReduceError::Code::StaleRedex, "contract: bad label");
}

namespace detail {
inline void find_redexes_into(const ProofTerm& t, Position& pos, std::vector<Redex>& out) {
  if (auto lbl = head_redex(t)) out.push_back({pos, *lbl});
  for (size_t i = 0; i < t.kids().size(); ++i) {
    pos.push_back(static_cast<int>(i));
    find_redexes_into(t.kids()[i], pos, out);
    pos.pop_back();
  }
}
}  // namespace detail

// Complete redex list in leftmost-outermost (pre-order) order.
inline std::vector<Redex> find_redexes(const ProofTerm& t) {
  std::vector<Redex> out;
  Position pos;
  detail::find_redexes_into(t, pos, out);
  return out;
}

// Apply one recorded contraction. Throws when the redex is stale.
inline ProofTerm beta_step(const ProofTerm& t, const Redex& r) {
  const ProofTerm* sub = subterm_at(t, r.pos);
  if (!sub || head_redex(*sub) != r.label)
    throw ReduceError(ReduceError::Code::StaleRedex,
                      "no " + std::string(rule_label_name(r.label)) + " redex at " +
                          position_string(r.pos));
  ProofTerm reduct = contract(*sub, r.label);
  auto replaced = replace_at(t, r.pos, reduct);
  return *replaced;
}

// Engine-recorded step for `r` applied to `t`: remembers the contracted
// subterm so the step can be replayed in both directions.
inline Path recorded_step(const ProofTerm& t, const Redex& r) {
  const ProofTerm* sub = subterm_at(t, r.pos);
  return Path::step(r.label, r.pos, *sub);
}

// Weak-head reduction: contract head redexes, reducing the scrutinee
// first when needed, until the head is canonical or stuck. Returns
// nullopt when the step bound is exhausted.
inline std::optional<ProofTerm> whnf(const ProofTerm& t, int bound = -1) {
  if (bound < 0) bound = 2 * term_size(t);
  ProofTerm cur = t;
  for (int steps = 0; steps <= bound; ++steps) {
    if (is_canonical(cur)) return cur;
    if (auto lbl = head_redex(cur)) {
      cur = contract(cur, *lbl);
      continue;
    }
    if (cur.kind() == ProofTerm::Kind::Var) return cur;  // stuck
    // reduce the scrutinee, then retry the head
    const ProofTerm& scrut = cur.kids()[0];
    auto sub = whnf(scrut, bound - steps);
    if (!sub) return std::nullopt;
    if (*sub == scrut) return cur;  // scrutinee stuck and non-canonical
    auto kids = cur.kids();
    kids[0] = std::move(*sub);
    cur = cur.with_kids(std::move(kids));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Path replay. A path hypothesis environment resolves path variables to
// their recorded endpoints (always individuals, from Id-elimination
// binders); slot i counts binders outward, aligned with variable indices.
// ---------------------------------------------------------------------------

struct PathHyp {
  Individual lhs, rhs;
  SortName sort;
};
// Indexed like the binder stack seen by variables: env[i] is the hypothesis
// for path variable index i, when that binder is a path binder.
using PathEnv = std::function<std::optional<PathHyp>(int index)>;

inline PathEnv empty_path_env() {
  return [](int) -> std::optional<PathHyp> { return std::nullopt; };
}

// -- proof-term world --

inline std::optional<ProofTerm> apply_atom(const PathAtom& a, const ProofTerm& t) {
  if (a.is_var) return std::nullopt;  // path variables range over individuals only
  if (a.forward) {
    const ProofTerm* sub = subterm_at(t, a.pos);
    if (!sub) return std::nullopt;
    if (a.before && *sub != *a.before) return std::nullopt;
    if (head_redex(*sub) != a.label) return std::nullopt;
    return replace_at(t, a.pos, contract(*sub, a.label));
  }
  // backwards: restore the recorded redex
  if (!a.before) return std::nullopt;
  const ProofTerm* sub = subterm_at(t, a.pos);
  if (!sub) return std::nullopt;
  if (head_redex(*a.before) != a.label) return std::nullopt;
  if (contract(*a.before, a.label) != *sub) return std::nullopt;
  return replace_at(t, a.pos, *a.before);
}

// -- individual world --

inline std::optional<Individual> apply_atom(const PathAtom& a, const Individual& i,
                                            const PathEnv& env) {
  if (!a.is_var) return std::nullopt;  // no rewrite steps on individuals
  auto h = env(a.var_index);
  if (!h) return std::nullopt;
  if (a.forward) {
    if (i != h->lhs) return std::nullopt;
    return h->rhs;
  }
  if (i != h->rhs) return std::nullopt;
  return h->lhs;
}

// Replay a path from a starting term; throws ReduceError on an
// inapplicable step.
inline ProofTerm replay_path(const Path& p, const ProofTerm& start) {
  ProofTerm cur = start;
  for (const auto& a : path_atoms(p)) {
    auto next = apply_atom(a, cur);
    if (!next)
      throw ReduceError(ReduceError::Code::BadPath,
                        "path step " + (a.is_var ? std::string("variable")
                                                 : std::string(rule_label_name(a.label)) + " @ " +
                                                       position_string(a.pos)) +
                            " not applicable to " + print(cur));
    cur = std::move(*next);
  }
  return cur;
}

inline Individual replay_path(const Path& p, const Individual& start,
                              const PathEnv& env = empty_path_env()) {
  Individual cur = start;
  for (const auto& a : path_atoms(p)) {
    auto next = apply_atom(a, cur, env);
    if (!next)
      throw ReduceError(ReduceError::Code::BadPath,
                        "path step not applicable to individual " + print(cur));
    cur = std::move(*next);
  }
  return cur;
}

// Does `p` connect `lhs` to `rhs`? Walks forward from the left end and
// backward from the right end; the two walks must meet. This accepts
// every engine-recorded path and every hand-written valley
// (forward steps followed by inverted ones).
inline bool path_connects(const Path& p, const ProofTerm& lhs, const ProofTerm& rhs) {
  auto atoms = path_atoms(p);
  size_t i = 0, j = atoms.size();
  ProofTerm left = lhs, right = rhs;
  while (i < j) {
    if (auto n = apply_atom(atoms[i], left)) {
      left = std::move(*n);
      ++i;
      continue;
    }
    PathAtom inv = atoms[j - 1];
    inv.forward = !inv.forward;
    if (auto n = apply_atom(inv, right)) {
      right = std::move(*n);
      --j;
      continue;
    }
    return false;
  }
  return left == right;
}

inline bool path_connects(const Path& p, const Individual& lhs, const Individual& rhs,
                          const PathEnv& env = empty_path_env()) {
  auto atoms = path_atoms(p);
  size_t i = 0, j = atoms.size();
  Individual left = lhs, right = rhs;
  while (i < j) {
    if (auto n = apply_atom(atoms[i], left, env)) {
      left = std::move(*n);
      ++i;
      continue;
    }
    PathAtom inv = atoms[j - 1];
    inv.forward = !inv.forward;
    if (auto n = apply_atom(inv, right, env)) {
      right = std::move(*n);
      --j;
      continue;
    }
    return false;
  }
  return left == right;
}

}  // namespace ndgames
