#pragma once

// Seeded generation of well-typed judgements, derivation-directed: a term
// for a goal formula is built from the hypothesis rule, the constructor
// for the goal's head, or a cut through a destructor. Cuts over canonical
// scrutinees produce beta-redexes on purpose.
//
// Binders whose hypothesis formula the checker can only reconstruct up to
// a hole (branch binders of a redex case/inst, lam binders typed by a
// synthesised argument) are tracked as inexact; generated bodies use an
// inexact binder only as a pass-through at a binder-closed goal, which
// unification always accepts. Everything generated here passes check().

#include <random>

#include "ndgames/reduce.hpp"

namespace ndgames::testing {

struct GenOptions {
  int budget = 8;          // recursion fuel; roughly bounds term size
  int cut_percent = 45;    // chance of introducing a destructor cut
  int axiom_percent = 30;  // chance of using a hypothesis when available
};

class TermGen {
 public:
  TermGen(const Signature& sig, Context ctx, std::vector<Formula> pool, uint64_t seed)
      : sig_(sig), ctx_(std::move(ctx)), pool_(std::move(pool)), rng_(seed) {}

  const Context& ctx() const { return ctx_; }

  // A term checking against `goal` (which must be binder-closed).
  ProofTerm gen(const Formula& goal, GenOptions opts = {}) {
    stack_.clear();
    Result r = gen_at(goal, opts.budget, opts, false);
    return r.term;
  }

  Formula random_pool_formula() { return pool_[pick(pool_.size())]; }

  std::mt19937_64& rng() { return rng_; }

 private:
  struct Binder {
    enum class Kind { Proof, Ind, Path };
    Kind kind;
    Formula formula;  // Proof: at its own push depth
    SortName sort;    // Ind
    bool exact;       // checker knows this formula precisely
  };

  struct Result {
    ProofTerm term;
    bool exact;  // checker synthesis reproduces the generator's goal
  };

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool chance(int percent) {
    return std::uniform_int_distribution<int>(0, 99)(rng_) < percent;
  }

  int depth() const { return static_cast<int>(stack_.size()); }

  // Individuals usable at the current depth, of the given sort.
  std::vector<Individual> individuals_of(const SortName& sort) {
    std::vector<Individual> out;
    for (const auto& c : sig_.consts)
      if (c.sort == sort) out.push_back(Individual::constant(c.name, c.sort));
    for (const auto& e : ctx_.entries)
      if (e.kind == ContextEntry::Kind::Individual && e.sort == sort)
        out.push_back(Individual::var(e.name, e.sort));
    for (size_t i = 0; i < stack_.size(); ++i) {
      const Binder& b = stack_[stack_.size() - 1 - i];
      if (b.kind == Binder::Kind::Ind && b.sort == sort)
        out.push_back(Individual::bound(static_cast<int>(i)));
    }
    return out;
  }

  // Hypotheses matching the goal: bound slots first, then named ones.
  // Universal hypotheses also contribute one-step instantiations, which is
  // how open atoms P(x) under a quantifier binder are reached.
  //
  // A binder the checker only knows up to a hole may be passed through at
  // a binder-closed goal in a checked position (unification solves the
  // hole there); in a synthesis position the hole would flow upward
  // unsolved, so inexact binders are unusable there.
  std::vector<ProofTerm> axioms_for(const Formula& goal, bool clean) {
    std::vector<ProofTerm> out;
    for (size_t i = 0; i < stack_.size(); ++i) {
      const Binder& b = stack_[stack_.size() - 1 - i];
      if (b.kind != Binder::Kind::Proof) continue;
      bool usable = b.exact || (!clean && max_dangling(goal, 0) < 0);
      if (usable && shift(b.formula, static_cast<int>(i) + 1, 0) == goal)
        out.push_back(ProofTerm::bound(static_cast<int>(i)));
    }
    for (const auto& e : ctx_.entries) {
      if (e.kind != ContextEntry::Kind::Hypothesis) continue;
      if (max_dangling(goal, 0) < 0 && e.formula == goal)
        out.push_back(ProofTerm::var(e.name));
      if (e.formula.kind() == Formula::Kind::Forall) {
        for (const auto& i : individuals_of(e.formula.qsort()))
          if (instantiate(e.formula.body(), SubstValue::individual(i)) == goal)
            out.push_back(ProofTerm::extr(ProofTerm::var(e.name), i));
      }
    }
    return out;
  }

  // `clean`: the term lands in a synthesis position of its parent, so it
  // must stay free of case/inst/rewr (their motives cannot be synthesised).
  Result gen_at(const Formula& goal, int budget, const GenOptions& opts, bool clean) {
    auto axs = axioms_for(goal, clean);
    if (!axs.empty() && (budget <= 0 || chance(opts.axiom_percent)))
      return {axs[pick(axs.size())], true};
    if (budget > 0 && chance(opts.cut_percent)) {
      if (auto r = gen_cut(goal, budget - 1, opts, clean)) return *r;
    }
    if (auto r = gen_constructor(goal, budget - 1, opts, clean)) return *r;
    if (!axs.empty()) return {axs[pick(axs.size())], true};
    if (budget > 0) {
      if (auto r = gen_cut(goal, budget - 1, opts, clean)) return *r;
    }
    throw std::runtime_error("generator stuck at goal " + print(goal));
  }

  std::optional<Result> gen_constructor(const Formula& goal, int budget,
                                        const GenOptions& opts, bool clean) {
    using FK = Formula::Kind;
    switch (goal.kind()) {
      case FK::Conj: {
        Result a = gen_at(goal.left(), budget, opts, clean);
        Result b = gen_at(goal.right(), budget, opts, clean);
        return Result{ProofTerm::pair(a.term, b.term), a.exact && b.exact};
      }
      case FK::Disj: {
        // pick an inhabitable side; atoms without hypotheses are dead ends
        bool left = chance(50);
        for (int attempt = 0; attempt < 2; ++attempt, left = !left) {
          try {
            Result r = gen_at(left ? goal.left() : goal.right(), budget, opts, clean);
            return Result{left ? ProofTerm::inl(r.term) : ProofTerm::inr(r.term), false};
          } catch (const std::runtime_error&) {
          }
        }
        return std::nullopt;
      }
      case FK::Impl: {
        // a lam in a synthesis position gets a hole for its antecedent, so
        // the checker cannot see this binder's formula precisely there
        stack_.push_back({Binder::Kind::Proof, goal.left(), {}, !clean});
        Result b = gen_at(shift(goal.right(), 1, 0), budget, opts, clean);
        stack_.pop_back();
        return Result{ProofTerm::lam(b.term), false};
      }
      case FK::Forall: {
        stack_.push_back({Binder::Kind::Ind, {}, goal.qsort(), true});
        Result b = gen_at(goal.body(), budget, opts, clean);
        stack_.pop_back();
        return Result{ProofTerm::biglam(goal.qsort(), b.term), b.exact};
      }
      case FK::Exists: {
        bool constant_body = max_dangling(goal.body(), 0) < 0;
        // synthesis reads an eps non-dependently, so a dependent
        // existential cannot be built by eps in a synthesis position
        if (clean && !constant_body) return std::nullopt;
        auto inds = individuals_of(goal.qsort());
        if (inds.empty()) return std::nullopt;
        // a witness that keeps the instantiated body generatable
        for (size_t attempt = 0; attempt < inds.size(); ++attempt) {
          Individual w = inds[pick(inds.size())];
          try {
            Result p = gen_at(instantiate(goal.body(), SubstValue::individual(w)), budget,
                              opts, clean);
            return Result{ProofTerm::eps(w, p.term), p.exact && constant_body};
          } catch (const std::runtime_error&) {
          }
        }
        return std::nullopt;
      }
      case FK::Id: {
        if (goal.id_lhs() == goal.id_rhs())
          return Result{ProofTerm::path_intro(Path::refl(), goal.id_lhs(), goal.id_rhs()),
                        true};
        // distinct endpoints need an equality hypothesis; none are declared
        return std::nullopt;
      }
      case FK::Atom:
        return std::nullopt;  // atoms come from hypotheses or cuts only
      default:
        return std::nullopt;
    }
  }

  std::optional<Result> gen_cut(const Formula& goal, int budget, const GenOptions& opts,
                                bool clean) {
    if (budget < 0) return std::nullopt;
    // try a few cut shapes in random order; under a synthesis position the
    // motive-headed shapes (case/inst/rewr) are off the table
    std::vector<int> shapes = clean ? std::vector<int>{0, 1, 2, 4}
                                    : std::vector<int>{0, 1, 2, 3, 4, 5, 6};
    std::shuffle(shapes.begin(), shapes.end(), rng_);
    for (int s : shapes) {
      try {
        switch (s) {
          case 0: {  // fst over conj(goal, R)
            if (max_dangling(goal, 0) >= 0) break;
            Formula r = random_pool_formula();
            Result p = gen_at(Formula::conj(goal, r), budget, opts, true);
            return Result{ProofTerm::fst(p.term), p.exact};
          }
          case 1: {  // snd over conj(R, goal)
            if (max_dangling(goal, 0) >= 0) break;
            Formula r = random_pool_formula();
            Result p = gen_at(Formula::conj(r, goal), budget, opts, true);
            return Result{ProofTerm::snd(p.term), p.exact};
          }
          case 2: {  // app over impl(R, goal)
            if (max_dangling(goal, 0) >= 0) break;
            Formula r = random_pool_formula();
            Result f = gen_at(Formula::impl(r, goal), budget, opts, true);
            // an inexact function synthesises a hole for its antecedent, so
            // the argument must itself be synthesisable
            Result a = gen_at(r, budget, opts, !f.exact);
            return Result{ProofTerm::app(f.term, a.term), f.exact};
          }
          case 3: {  // case over disj(R1, R2)
            if (max_dangling(goal, 0) >= 0) break;
            Formula r1 = random_pool_formula(), r2 = random_pool_formula();
            Result sres = gen_at(Formula::disj(r1, r2), budget, opts, true);
            Formula up = shift(goal, 1, 0);
            stack_.push_back({Binder::Kind::Proof, r1, {}, sres.exact});
            Result b1 = gen_at(up, budget, opts, clean);
            stack_.pop_back();
            stack_.push_back({Binder::Kind::Proof, r2, {}, sres.exact});
            Result b2 = gen_at(up, budget, opts, clean);
            stack_.pop_back();
            return Result{ProofTerm::case_of(sres.term, b1.term, b2.term), false};
          }
          case 4: {  // extr over forall x:D. ^goal
            if (max_dangling(goal, 0) >= 0) break;
            const SortName& d = sig_.sorts.front();
            auto inds = individuals_of(d);
            if (inds.empty()) break;
            Result f = gen_at(Formula::forall(d, shift(goal, 1, 0)), budget, opts, true);
            return Result{ProofTerm::extr(f.term, inds[pick(inds.size())]), f.exact};
          }
          case 5: {  // inst over exists x:D. ^R
            if (max_dangling(goal, 0) >= 0) break;
            const SortName& d = sig_.sorts.front();
            Formula r = random_pool_formula();
            Result sres = gen_at(Formula::exists(d, shift(r, 1, 0)), budget, opts, true);
            stack_.push_back({Binder::Kind::Ind, {}, d, true});
            stack_.push_back({Binder::Kind::Proof, shift(r, 1, 0), {}, sres.exact});
            Result b = gen_at(shift(goal, 2, 0), budget, opts, clean);
            stack_.pop_back();
            stack_.pop_back();
            return Result{ProofTerm::inst(sres.term, b.term), false};
          }
          case 6: {  // rewr over Id(D, c, c)
            if (max_dangling(goal, 0) >= 0) break;
            const SortName& d = sig_.sorts.front();
            std::vector<Individual> consts;
            for (const auto& c : sig_.consts)
              if (c.sort == d) consts.push_back(Individual::constant(c.name, c.sort));
            if (consts.empty()) break;
            Individual c = consts[pick(consts.size())];
            Result sres = gen_at(Formula::id(d, c, c), budget, opts, true);
            stack_.push_back({Binder::Kind::Path, {}, d, true});
            Result b = gen_at(shift(goal, 1, 0), budget, opts, clean);
            stack_.pop_back();
            return Result{ProofTerm::rewr(sres.term, b.term), false};
          }
        }
      } catch (const std::runtime_error&) {
        // dead end; try the next shape
      }
    }
    return std::nullopt;
  }

  const Signature& sig_;
  Context ctx_;
  std::vector<Formula> pool_;
  std::mt19937_64 rng_;
  std::vector<Binder> stack_;
};

// The fixed generation setup shared by the property suites: one sort with
// two constants, unary P, propositional atoms A and B, hypotheses
// covering every atom in the pool.
struct GenFixture {
  Signature sig;
  Context ctx;
  std::vector<Formula> pool;

  GenFixture() {
    sig = parse_signature(
        "sort D\n"
        "pred P/1 : D\n"
        "pred A/0\n"
        "pred B/0\n"
        "const c : D\n"
        "const d : D\n");
    ctx.declare_hyp("u", parse_formula("A", &sig));
    ctx.declare_hyp("v", parse_formula("B", &sig));
    ctx.declare_hyp("w", parse_formula("P(c)", &sig));
    ctx.declare_hyp("q", parse_formula("forall x:D. P(x)", &sig));
    ctx.declare_hyp("ex", parse_formula("exists x:D. P(x)", &sig));
    const char* texts[] = {
        "A",
        "B",
        "A & B",
        "A | B",
        "A -> A",
        "A -> B -> A",
        "P(c)",
        "A & (A -> A)",
        "Id(D,c,c)",
        "forall x:D. P(x)",
        "exists x:D. P(x)",
        "(A -> A) & B",
    };
    for (const char* t : texts) pool.push_back(parse_formula(t, &sig));
  }

  TermGen make(uint64_t seed) const { return TermGen(sig, ctx, pool, seed); }
};

}  // namespace ndgames::testing
