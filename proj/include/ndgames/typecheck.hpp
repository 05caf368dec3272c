#pragma once

// Judgement checking for the six connective families, bidirectionally:
// canonical terms are checked against a stated formula, non-canonical
// heads synthesise the formula of their scrutinee. Elimination motives
// for disjunction, existentials and identity are non-dependent.
//
// Destructors applied directly to constructors (beta-redexes) are
// well-typed terms, so scrutinee synthesis also covers canonical heads.
// Where a component is not determined by the term itself (the absent
// disjunct of inl/inr, the antecedent of a bare lam) the checker opens a
// metavariable and solves it by unification against later uses; meta
// solutions are always binder-closed formulas, and a check that leaves a
// meta unsolved succeeded for every closed instantiation of it.
//
// The named context holds individual declarations and proof hypotheses;
// the equality hypothesis of an identity elimination lives only on the
// binder stack while its branch is checked.

#include "ndgames/parse.hpp"
#include "ndgames/rewrite.hpp"

namespace ndgames {

struct TypeError : std::runtime_error {
  enum class Code {
    UnboundVariable,
    ConstructorMismatch,
    DestructorMismatch,
    SortMismatch,
    PathMismatch,
    CannotSynthesize,
    NegatedAtom,
    IllFormedFormula,
    ContextError,
  };
  Code code;
  TypeError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct ContextEntry {
  enum class Kind { Individual, Hypothesis };
  Kind kind;
  std::string name;
  SortName sort;    // Individual
  Formula formula;  // Hypothesis
};

struct Context {
  std::vector<ContextEntry> entries;

  const ContextEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
  Context& declare_ind(const std::string& name, const SortName& sort) {
    entries.push_back({ContextEntry::Kind::Individual, name, sort, {}});
    return *this;
  }
  Context& declare_hyp(const std::string& name, Formula f) {
    entries.push_back({ContextEntry::Kind::Hypothesis, name, {}, std::move(f)});
    return *this;
  }
};

struct Judgement {
  Context ctx;
  ProofTerm term;
  Formula formula;
  int line = 0;  // source line of the |- entry, when parsed from a file
};

struct CheckResult {
  bool ok = true;
  TypeError::Code code = TypeError::Code::ContextError;
  std::string error;

  static CheckResult success() { return {}; }
  static CheckResult failure(const TypeError& e) { return {false, e.code, e.what()}; }
  explicit operator bool() const { return ok; }
};

namespace detail {

class Checker {
 public:
  Checker(const Signature& sig, const Context& ctx) : sig_(sig), ctx_(ctx) {}

  struct Binder {
    enum class Kind { Individual, Proof, PathHyp };
    Kind kind;
    SortName sort;        // Individual / PathHyp endpoint sort
    Formula formula;      // Proof, expressed at the depth where it was pushed
    Individual lhs, rhs;  // PathHyp endpoints, ditto
  };

  void check(const ProofTerm& t, const Formula& goal_in) {
    using TK = ProofTerm::Kind;
    using FK = Formula::Kind;
    Formula goal = head_resolve(goal_in);
    if (goal.kind() == FK::Meta) {
      // nothing known about the slot yet: synthesise and solve
      unify(goal, synth(t));
      return;
    }
    switch (t.kind()) {
      case TK::Pair:
        require_head(goal, FK::Conj, "pair", "conjunction");
        check(t.kids()[0], goal.left());
        check(t.kids()[1], goal.right());
        return;
      case TK::Inl:
        require_head(goal, FK::Disj, "inl", "disjunction");
        check(t.kids()[0], goal.left());
        return;
      case TK::Inr:
        require_head(goal, FK::Disj, "inr", "disjunction");
        check(t.kids()[0], goal.right());
        return;
      case TK::Lam: {
        require_head(goal, FK::Impl, "lam", "implication");
        stack_.push_back({Binder::Kind::Proof, {}, goal.left(), {}, {}});
        check(t.kids()[0], shift(goal.right(), 1, 0));
        stack_.pop_back();
        return;
      }
      case TK::BigLam: {
        require_head(goal, FK::Forall, "Lam", "universal");
        if (t.blsort() != goal.qsort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "Lam binds sort " + t.blsort() + " but the universal ranges over " +
                              goal.qsort());
        stack_.push_back({Binder::Kind::Individual, goal.qsort(), {}, {}, {}});
        check(t.kids()[0], goal.body());
        stack_.pop_back();
        return;
      }
      case TK::Eps: {
        require_head(goal, FK::Exists, "eps", "existential");
        SortName ws = sort_of(t.ind());
        if (ws != goal.qsort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "witness " + print(t.ind()) + " has sort " + ws +
                              ", existential ranges over " + goal.qsort());
        check(t.kids()[0], instantiate(goal.body(), SubstValue::individual(t.ind())));
        return;
      }
      case TK::PathIntro: {
        require_head(goal, FK::Id, "path", "identity");
        if (!(t.path_lhs() == goal.id_lhs()) || !(t.path_rhs() == goal.id_rhs()))
          throw TypeError(TypeError::Code::PathMismatch,
                          "path endpoints do not match the identity formula");
        SortName ls = sort_of(t.path_lhs()), rs = sort_of(t.path_rhs());
        if (ls != goal.id_sort() || rs != goal.id_sort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "identity endpoints must have sort " + goal.id_sort());
        if (!path_connects(t.path(), t.path_lhs(), t.path_rhs(), path_env()))
          throw TypeError(TypeError::Code::PathMismatch,
                          "path " + print(t.path()) + " does not connect " +
                              print(t.path_lhs()) + " to " + print(t.path_rhs()));
        return;
      }
      case TK::Case: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Disj)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "case scrutinee has formula " + show(sf) + ", not a disjunction");
        stack_.push_back({Binder::Kind::Proof, {}, sf.left(), {}, {}});
        check(t.kids()[1], shift(goal, 1, 0));
        stack_.pop_back();
        stack_.push_back({Binder::Kind::Proof, {}, sf.right(), {}, {}});
        check(t.kids()[2], shift(goal, 1, 0));
        stack_.pop_back();
        return;
      }
      case TK::Inst: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Exists)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "inst scrutinee has formula " + show(sf) + ", not an existential");
        stack_.push_back({Binder::Kind::Individual, sf.qsort(), {}, {}, {}});
        stack_.push_back({Binder::Kind::Proof, {}, sf.body(), {}, {}});
        check(t.kids()[1], shift(goal, 2, 0));
        stack_.pop_back();
        stack_.pop_back();
        return;
      }
      case TK::Rewr: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Id)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "rewr scrutinee has formula " + show(sf) + ", not an identity");
        stack_.push_back({Binder::Kind::PathHyp, sf.id_sort(), {}, sf.id_lhs(), sf.id_rhs()});
        check(t.kids()[1], shift(goal, 1, 0));
        stack_.pop_back();
        return;
      }
      case TK::Var:
      case TK::Fst:
      case TK::Snd:
      case TK::App:
      case TK::Extr: {
        Formula got = synth(t);
        if (!unify(got, goal))
          throw TypeError(TypeError::Code::ConstructorMismatch,
                          "term has formula " + show(got) + ", expected " + show(goal));
        return;
      }
    }
  }

  // Synthesis; covers canonical heads so that redexes are checkable.
  Formula synth(const ProofTerm& t) {
    using TK = ProofTerm::Kind;
    using FK = Formula::Kind;
    switch (t.kind()) {
      case TK::Var: {
        if (t.index() >= 0) {
          if (t.index() >= static_cast<int>(stack_.size()))
            throw TypeError(TypeError::Code::UnboundVariable, "dangling bound variable");
          const Binder& b = stack_[stack_.size() - 1 - static_cast<size_t>(t.index())];
          if (b.kind != Binder::Kind::Proof)
            throw TypeError(TypeError::Code::UnboundVariable,
                            "bound variable does not name a proof");
          return shift(b.formula, t.index() + 1, 0);
        }
        const ContextEntry* e = ctx_.find(t.name());
        if (!e || e->kind != ContextEntry::Kind::Hypothesis)
          throw TypeError(TypeError::Code::UnboundVariable,
                          "unbound proof variable '" + t.name() + "'");
        return e->formula;  // context formulas are binder-closed
      }
      case TK::Fst: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Conj)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "destructor on non-conjunction: fst over " + show(sf));
        return sf.left();
      }
      case TK::Snd: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Conj)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "destructor on non-conjunction: snd over " + show(sf));
        return sf.right();
      }
      case TK::App: {
        if (t.kids()[0].kind() == TK::Lam) {
          // a beta-redex: type the argument first so the lam's antecedent
          // hole is already solved when its body is walked
          Formula arg = synth(t.kids()[1]);
          stack_.push_back({Binder::Kind::Proof, {}, arg, {}, {}});
          Formula body = synth(t.kids()[0].kids()[0]);
          stack_.pop_back();
          // formulas never mention proof binders, so the unshift is safe
          return shift(body, -1, 0);
        }
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Impl)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "destructor on non-implication: app over " + show(sf));
        check(t.kids()[1], sf.left());
        return sf.right();
      }
      case TK::Extr: {
        Formula sf = head_resolve(synth(t.kids()[0]));
        if (sf.kind() != FK::Forall)
          throw TypeError(TypeError::Code::DestructorMismatch,
                          "destructor on non-universal: extr over " + show(sf));
        SortName as = sort_of(t.ind());
        if (as != sf.qsort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "extr argument " + print(t.ind()) + " has sort " + as +
                              ", universal ranges over " + sf.qsort());
        return instantiate(sf.body(), SubstValue::individual(t.ind()));
      }
      case TK::Pair:
        return Formula::conj(synth(t.kids()[0]), synth(t.kids()[1]));
      case TK::Inl:
        return Formula::disj(synth(t.kids()[0]), fresh_meta());
      case TK::Inr:
        return Formula::disj(fresh_meta(), synth(t.kids()[0]));
      case TK::Lam: {
        Formula arg = fresh_meta();
        stack_.push_back({Binder::Kind::Proof, {}, arg, {}, {}});
        Formula body = synth(t.kids()[0]);
        stack_.pop_back();
        // formulas never mention proof binders, so the unshift is safe
        return Formula::impl(arg, shift(body, -1, 0));
      }
      case TK::BigLam: {
        if (!sig_.has_sort(t.blsort()))
          throw TypeError(TypeError::Code::IllFormedFormula,
                          "unknown sort '" + t.blsort() + "'");
        stack_.push_back({Binder::Kind::Individual, t.blsort(), {}, {}, {}});
        Formula body = synth(t.kids()[0]);
        stack_.pop_back();
        return Formula::forall(t.blsort(), body);
      }
      case TK::Eps: {
        // the unique non-dependent completion: the body does not abstract
        // the witness
        SortName ws = sort_of(t.ind());
        Formula pf = synth(t.kids()[0]);
        return Formula::exists(ws, shift(pf, 1, 0));
      }
      case TK::PathIntro: {
        SortName ls = sort_of(t.path_lhs()), rs = sort_of(t.path_rhs());
        if (ls != rs)
          throw TypeError(TypeError::Code::SortMismatch,
                          "path endpoints have different sorts");
        if (!path_connects(t.path(), t.path_lhs(), t.path_rhs(), path_env()))
          throw TypeError(TypeError::Code::PathMismatch,
                          "path " + print(t.path()) + " does not connect " +
                              print(t.path_lhs()) + " to " + print(t.path_rhs()));
        return Formula::id(ls, t.path_lhs(), t.path_rhs());
      }
      case TK::Case:
      case TK::Inst:
      case TK::Rewr:
        throw TypeError(TypeError::Code::CannotSynthesize,
                        "cannot synthesize the motive of an elimination; "
                        "check the term against a stated formula");
    }
    throw TypeError(TypeError::Code::CannotSynthesize, "cannot synthesize");
  }

  // Public inference: variables and destructor chains only; canonical
  // terms are checked, not inferred, and a result that still contains an
  // unsolved hole is not unique.
  Formula infer(const ProofTerm& t) {
    if (is_canonical(t))
      throw TypeError(TypeError::Code::CannotSynthesize,
                      "cannot synthesize for canonical term " + print(t) +
                          "; canonical terms are checked against a formula");
    Formula f = fully_resolve(synth(t));
    if (has_meta(f))
      throw TypeError(TypeError::Code::CannotSynthesize,
                      "formula of " + print(t) + " is not unique: " + show(f));
    return f;
  }

  SortName sort_of(const Individual& i) {
    switch (i.kind()) {
      case Individual::Kind::Bound: {
        if (i.index() >= static_cast<int>(stack_.size()))
          throw TypeError(TypeError::Code::UnboundVariable, "dangling bound individual");
        const Binder& b = stack_[stack_.size() - 1 - static_cast<size_t>(i.index())];
        if (b.kind != Binder::Kind::Individual)
          throw TypeError(TypeError::Code::UnboundVariable,
                          "bound variable does not name an individual");
        return b.sort;
      }
      case Individual::Kind::Var: {
        const ContextEntry* e = ctx_.find(i.name());
        if (!e || e->kind != ContextEntry::Kind::Individual)
          throw TypeError(TypeError::Code::UnboundVariable,
                          "unbound individual variable '" + i.name() + "'");
        if (e->sort != i.sort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "individual '" + i.name() + "' declared with sort " + e->sort);
        return e->sort;
      }
      case Individual::Kind::Const: {
        const ConstDecl* c = sig_.find_const(i.name());
        if (!c)
          throw TypeError(TypeError::Code::UnboundVariable,
                          "undeclared constant '" + i.name() + "'");
        if (c->sort != i.sort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "constant '" + i.name() + "' declared with sort " + c->sort);
        return c->sort;
      }
    }
    throw TypeError(TypeError::Code::UnboundVariable, "bad individual");
  }

  // Formula well-formedness at the current binder depth. Negated atoms
  // are evaluation-game literals and never appear in proof judgements.
  void validate_formula(const Formula& f) {
    using FK = Formula::Kind;
    switch (f.kind()) {
      case FK::Meta:
        return;
      case FK::NegAtom:
        throw TypeError(TypeError::Code::NegatedAtom,
                        "negated atom '" + print(f) + "' outside an evaluation game");
      case FK::Atom: {
        const PredDecl* d = sig_.find_pred(f.pred());
        if (!d)
          throw TypeError(TypeError::Code::IllFormedFormula,
                          "undeclared predicate '" + f.pred() + "'");
        if (d->arg_sorts.size() != f.args().size())
          throw TypeError(TypeError::Code::IllFormedFormula,
                          "predicate '" + f.pred() + "' arity mismatch");
        for (size_t i = 0; i < f.args().size(); ++i) {
          SortName s = sort_of(f.args()[i]);
          if (s != d->arg_sorts[i])
            throw TypeError(TypeError::Code::SortMismatch,
                            "argument " + std::to_string(i) + " of '" + f.pred() +
                                "' has sort " + s + ", expected " + d->arg_sorts[i]);
        }
        return;
      }
      case FK::Conj:
      case FK::Disj:
      case FK::Impl:
        validate_formula(f.left());
        validate_formula(f.right());
        return;
      case FK::Forall:
      case FK::Exists: {
        if (!sig_.has_sort(f.qsort()))
          throw TypeError(TypeError::Code::IllFormedFormula,
                          "unknown sort '" + f.qsort() + "'");
        stack_.push_back({Binder::Kind::Individual, f.qsort(), {}, {}, {}});
        validate_formula(f.body());
        stack_.pop_back();
        return;
      }
      case FK::Id: {
        if (!sig_.has_sort(f.id_sort()))
          throw TypeError(TypeError::Code::IllFormedFormula,
                          "unknown sort '" + f.id_sort() + "'");
        if (sort_of(f.id_lhs()) != f.id_sort() || sort_of(f.id_rhs()) != f.id_sort())
          throw TypeError(TypeError::Code::SortMismatch,
                          "identity endpoints must have sort " + f.id_sort());
        return;
      }
    }
  }

  PathEnv path_env() {
    return [this](int index) -> std::optional<PathHyp> {
      if (index < 0 || index >= static_cast<int>(stack_.size())) return std::nullopt;
      const Binder& b = stack_[stack_.size() - 1 - static_cast<size_t>(index)];
      if (b.kind != Binder::Kind::PathHyp) return std::nullopt;
      return PathHyp{shift(b.lhs, index + 1, 0), shift(b.rhs, index + 1, 0), b.sort};
    };
  }

 private:
  Formula fresh_meta() {
    solutions_.emplace_back();
    return Formula::meta(static_cast<int>(solutions_.size()) - 1);
  }

  Formula head_resolve(const Formula& f) const {
    Formula cur = f;
    while (cur.kind() == Formula::Kind::Meta) {
      const auto& sol = solutions_[static_cast<size_t>(cur.meta_id())];
      if (sol.null()) break;
      cur = sol;
    }
    return cur;
  }

  bool has_meta(const Formula& f) const {
    using FK = Formula::Kind;
    switch (f.kind()) {
      case FK::Meta: return true;
      case FK::Conj:
      case FK::Disj:
      case FK::Impl: return has_meta(f.left()) || has_meta(f.right());
      case FK::Forall:
      case FK::Exists: return has_meta(f.body());
      default: return false;
    }
  }

  Formula fully_resolve(const Formula& f) const {
    using FK = Formula::Kind;
    Formula g = head_resolve(f);
    switch (g.kind()) {
      case FK::Conj: return Formula::conj(fully_resolve(g.left()), fully_resolve(g.right()));
      case FK::Disj: return Formula::disj(fully_resolve(g.left()), fully_resolve(g.right()));
      case FK::Impl: return Formula::impl(fully_resolve(g.left()), fully_resolve(g.right()));
      case FK::Forall: return Formula::forall(g.qsort(), fully_resolve(g.body()), g.hint());
      case FK::Exists: return Formula::exists(g.qsort(), fully_resolve(g.body()), g.hint());
      default: return g;
    }
  }

  std::string show(const Formula& f) const { return print(fully_resolve(f)); }

  bool occurs(int id, const Formula& f) const {
    using FK = Formula::Kind;
    Formula g = head_resolve(f);
    switch (g.kind()) {
      case FK::Meta: return g.meta_id() == id;
      case FK::Conj:
      case FK::Disj:
      case FK::Impl: return occurs(id, g.left()) || occurs(id, g.right());
      case FK::Forall:
      case FK::Exists: return occurs(id, g.body());
      default: return false;
    }
  }

  bool solve(int id, const Formula& f) {
    if (occurs(id, f)) return false;
    // solutions must be closed for every binder, so they mean the same
    // formula wherever the meta occurs
    if (max_dangling(f, 0) >= 0) return false;
    solutions_[static_cast<size_t>(id)] = fully_resolve(f);
    return true;
  }

  bool unify(const Formula& a_in, const Formula& b_in) {
    using FK = Formula::Kind;
    Formula a = head_resolve(a_in), b = head_resolve(b_in);
    if (a.kind() == FK::Meta && b.kind() == FK::Meta && a.meta_id() == b.meta_id())
      return true;
    if (a.kind() == FK::Meta) return solve(a.meta_id(), b);
    if (b.kind() == FK::Meta) return solve(b.meta_id(), a);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case FK::Atom:
      case FK::NegAtom:
        return a.pred() == b.pred() && a.args() == b.args();
      case FK::Conj:
      case FK::Disj:
      case FK::Impl:
        return unify(a.left(), b.left()) && unify(a.right(), b.right());
      case FK::Forall:
      case FK::Exists:
        return a.qsort() == b.qsort() && unify(a.body(), b.body());
      case FK::Id:
        return a.id_sort() == b.id_sort() && a.id_lhs() == b.id_lhs() &&
               a.id_rhs() == b.id_rhs();
      case FK::Meta:
        return false;  // unreachable
    }
    return false;
  }

  void require_head(const Formula& goal, Formula::Kind want, const char* ctor,
                    const char* family) {
    if (goal.kind() != want)
      throw TypeError(TypeError::Code::ConstructorMismatch,
                      std::string("constructor/formula mismatch: ") + ctor + " against " +
                          show(goal) + " (needs a " + family + ")");
  }

  const Signature& sig_;
  const Context& ctx_;
  std::vector<Binder> stack_;
  std::vector<Formula> solutions_;  // meta id -> solution (null if open)
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

inline void validate_context(const Signature& sig, const Context& ctx) {
  Context seen;
  for (const auto& e : ctx.entries) {
    if (seen.find(e.name))
      throw TypeError(TypeError::Code::ContextError,
                      "duplicate context entry '" + e.name + "'");
    if (e.kind == ContextEntry::Kind::Individual) {
      if (!sig.has_sort(e.sort))
        throw TypeError(TypeError::Code::ContextError,
                        "context declares '" + e.name + "' with unknown sort " + e.sort);
    } else {
      if (max_dangling(e.formula, 0) >= 0)
        throw TypeError(TypeError::Code::ContextError,
                        "context formula for '" + e.name + "' has dangling binders");
      detail::Checker chk(sig, seen);  // earlier entries only
      chk.validate_formula(e.formula);
    }
    seen.entries.push_back(e);
  }
}

inline void check_or_throw(const Signature& sig, const Context& ctx, const ProofTerm& t,
                           const Formula& goal) {
  validate_context(sig, ctx);
  detail::Checker chk(sig, ctx);
  chk.validate_formula(goal);
  chk.check(t, goal);
}

inline CheckResult check(const Signature& sig, const Context& ctx, const ProofTerm& t,
                         const Formula& goal) {
  try {
    check_or_throw(sig, ctx, t, goal);
    return CheckResult::success();
  } catch (const TypeError& e) {
    return CheckResult::failure(e);
  }
}

inline Formula infer(const Signature& sig, const Context& ctx, const ProofTerm& t) {
  validate_context(sig, ctx);
  detail::Checker chk(sig, ctx);
  return chk.infer(t);
}

// A definitional-equality judgement `lhs =_path rhs`, between proof terms
// at a formula or between individuals at a sort. It holds when replaying
// the path transforms lhs into rhs.
struct EqualityJudgement {
  Context ctx;
  bool over_individuals = false;
  ProofTerm lhs_term, rhs_term;
  Formula formula;
  Individual lhs_ind, rhs_ind;
  SortName sort;
  Path path;
};

// Definitional-equality judgement: does `path` rewrite `lhs` into `rhs`?
inline CheckResult check_equality(const Signature& sig, const Context& ctx,
                                  const ProofTerm& lhs, const ProofTerm& rhs,
                                  const Path& path) {
  (void)sig;
  (void)ctx;
  if (path_connects(path, lhs, rhs)) return CheckResult::success();
  return CheckResult{false, TypeError::Code::PathMismatch,
                     "path " + print(path) + " does not connect " + print(lhs) + " to " +
                         print(rhs)};
}

inline CheckResult check_equality(const Signature& sig, const Context& ctx,
                                  const Individual& lhs, const Individual& rhs,
                                  const Path& path) {
  try {
    detail::Checker chk(sig, ctx);
    SortName ls = chk.sort_of(lhs), rs = chk.sort_of(rhs);
    if (ls != rs)
      return CheckResult{false, TypeError::Code::SortMismatch,
                         "equality endpoints have different sorts"};
  } catch (const TypeError& e) {
    return CheckResult::failure(e);
  }
  if (path_connects(path, lhs, rhs)) return CheckResult::success();
  return CheckResult{false, TypeError::Code::PathMismatch,
                     "path " + print(path) + " does not connect " + print(lhs) + " to " +
                         print(rhs)};
}

inline CheckResult check_equality(const Signature& sig, const EqualityJudgement& j) {
  if (j.over_individuals) return check_equality(sig, j.ctx, j.lhs_ind, j.rhs_ind, j.path);
  return check_equality(sig, j.ctx, j.lhs_term, j.rhs_term, j.path);
}

// ---------------------------------------------------------------------------
// Judgement files: context lines `x : A` (A a sort or formula), then a
// final line `|- term : formula`.
// ---------------------------------------------------------------------------

inline Judgement parse_judgement(const std::string& text, const Signature& sig) {
  Judgement j;
  Scope scope;
  int lineno = 0;
  size_t pos = 0;
  bool saw_turnstile = false;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    detail::Lexer lx(line, lineno);
    if (lx.at(detail::Token::Kind::Turnstile)) {
      lx.next();
      detail::Parser p(lx, &sig, &scope);
      j.term = p.parse_term();
      lx.expect(detail::Token::Kind::Colon, "':'");
      j.formula = p.parse_formula();
      p.expect_end();
      j.line = lineno;
      saw_turnstile = true;
      continue;
    }
    if (saw_turnstile) throw ParseError("content after the judgement line", lineno, 1);
    auto name = lx.expect(detail::Token::Kind::Ident, "a declaration name");
    lx.expect(detail::Token::Kind::Colon, "':'");
    // a bare declared sort means an individual declaration
    if (lx.at(detail::Token::Kind::Ident) && sig.has_sort(lx.peek().text) &&
        lx.peek(1).kind == detail::Token::Kind::End) {
      SortName s = lx.next().text;
      j.ctx.declare_ind(name.text, s);
      scope[name.text] = s;
      continue;
    }
    detail::Parser p(lx, &sig, &scope);
    Formula f = p.parse_formula();
    p.expect_end();
    j.ctx.declare_hyp(name.text, std::move(f));
  }
  if (!saw_turnstile) throw ParseError("missing '|-' judgement line", lineno, 1);
  return j;
}

}  // namespace ndgames
