#include <catch2/catch_amalgamated.hpp>

#include "ndgames/typecheck.hpp"
#include "support/generators.hpp"

using namespace ndgames;

namespace {
Signature test_sig() {
  return parse_signature(
      "sort D\n"
      "pred P/1 : D\n"
      "pred A/0\n"
      "pred B/0\n"
      "const c : D\n"
      "const d : D\n");
}
}  // namespace

TEST_CASE("introduction rules check against their formulas") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("a", parse_formula("A", &sig)).declare_hyp("b", parse_formula("B", &sig));

  REQUIRE(check(sig, ctx, parse_proofterm("pair(a,b)", &sig), parse_formula("A & B", &sig)).ok);
  REQUIRE(check(sig, ctx, ProofTerm::var("a"), parse_formula("A", &sig)).ok);
  REQUIRE(check(sig, ctx, parse_proofterm("inl(a)", &sig), parse_formula("A | B", &sig)).ok);
  REQUIRE(check(sig, ctx, parse_proofterm("inr(b)", &sig), parse_formula("A | B", &sig)).ok);
  REQUIRE(check(sig, ctx, parse_proofterm("lam(x. x)", &sig), parse_formula("A -> A", &sig)).ok);

  Context empty;
  REQUIRE(check(sig, empty, parse_proofterm("path(rho, c, c)", &sig),
                parse_formula("Id(D,c,c)", &sig))
              .ok);
  REQUIRE(check(sig, empty, parse_proofterm("Lam(x:D. lam(h. h))", &sig),
                parse_formula("forall x:D. P(x) -> P(x)", &sig))
              .ok);

  Context cw;
  cw.declare_hyp("w", parse_formula("P(c)", &sig));
  REQUIRE(check(sig, cw, parse_proofterm("eps(c, w)", &sig),
                parse_formula("exists x:D. P(x)", &sig))
              .ok);
}

TEST_CASE("constructor against the wrong connective is rejected") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("a", parse_formula("A", &sig)).declare_hyp("b", parse_formula("B", &sig));

  auto r = check(sig, ctx, parse_proofterm("pair(a,b)", &sig), parse_formula("A | B", &sig));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.code == TypeError::Code::ConstructorMismatch);

  auto r2 = check(sig, ctx, parse_proofterm("lam(x. x)", &sig), parse_formula("A & A", &sig));
  REQUIRE_FALSE(r2.ok);
}

TEST_CASE("destructor on the wrong connective is rejected") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("a", parse_formula("A", &sig));

  auto r = check(sig, ctx, ProofTerm::fst(ProofTerm::var("a")), parse_formula("A", &sig));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.code == TypeError::Code::DestructorMismatch);
  REQUIRE_THAT(r.error, Catch::Matchers::ContainsSubstring("non-conjunction"));
}

TEST_CASE("unbound and ill-sorted references are reported") {
  Signature sig = test_sig();
  Context ctx;
  auto r = check(sig, ctx, ProofTerm::var("nope"), parse_formula("A", &sig));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.code == TypeError::Code::UnboundVariable);

  // sort mismatch: quantifier over D applied at a different declared sort
  Signature sig2 = parse_signature("sort D\nsort S\npred P/1 : D\nconst c : D\nconst s : S\n");
  Context c2;
  c2.declare_hyp("q", parse_formula("forall x:D. P(x)", &sig2));
  auto r2 = check(sig2, c2, parse_proofterm("extr(q, s)", &sig2), parse_formula("P(c)", &sig2));
  REQUIRE_FALSE(r2.ok);
  REQUIRE(r2.code == TypeError::Code::SortMismatch);
}

TEST_CASE("negated atoms do not typecheck outside games") {
  Signature sig = test_sig();
  Context ctx;
  auto r = check(sig, ctx, ProofTerm::var("x"), parse_formula("~A", &sig));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.code == TypeError::Code::NegatedAtom);
}

TEST_CASE("inference on variables and destructor chains") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("p", parse_formula("A & B", &sig)).declare_hyp("x", parse_formula("A", &sig));

  REQUIRE(infer(sig, ctx, parse_proofterm("fst(p)", &sig)) == parse_formula("A", &sig));
  REQUIRE(infer(sig, ctx, ProofTerm::var("x")) == parse_formula("A", &sig));
  REQUIRE(infer(sig, ctx, parse_proofterm("snd(p)", &sig)) == parse_formula("B", &sig));

  REQUIRE_THROWS_MATCHES(
      infer(sig, ctx, parse_proofterm("pair(x,x)", &sig)), TypeError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("canonical term")));

  // elimination motives cannot be synthesised
  REQUIRE_THROWS_AS(
      infer(sig, ctx, parse_proofterm("case(inl(x), y => y, z => z)", &sig)), TypeError);
}

TEST_CASE("inference is deterministic on destructor chains") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("p", parse_formula("(A -> B) & A", &sig));
  auto t = parse_proofterm("app(fst(p), snd(p))", &sig);
  Formula f1 = infer(sig, ctx, t);
  Formula f2 = infer(sig, ctx, t);
  REQUIRE(f1 == f2);
  REQUIRE(f1 == parse_formula("B", &sig));
}

TEST_CASE("beta-redexes are well-typed terms") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("a", parse_formula("A", &sig)).declare_hyp("b", parse_formula("B", &sig));
  Context cw;
  cw.declare_hyp("w", parse_formula("P(c)", &sig)).declare_hyp("u", parse_formula("A", &sig));
  Context empty;

  REQUIRE(check(sig, ctx, parse_proofterm("fst(pair(a,b))", &sig), parse_formula("A", &sig)).ok);
  REQUIRE(check(sig, empty, parse_proofterm("app(lam(x. x), lam(y. y))", &sig),
                parse_formula("A -> A", &sig))
              .ok);
  REQUIRE(check(sig, ctx, parse_proofterm("case(inl(a), x => x, y => y)", &sig),
                parse_formula("A", &sig))
              .ok);
  REQUIRE(check(sig, cw, parse_proofterm("inst(eps(c,w), t g => g)", &sig),
                parse_formula("P(c)", &sig))
              .ok);
  REQUIRE(check(sig, empty, parse_proofterm("extr(Lam(x:D. lam(h. h)), c)", &sig),
                parse_formula("P(c) -> P(c)", &sig))
              .ok);
  REQUIRE(check(sig, empty, parse_proofterm("rewr(path(rho,c,c), t => path(t,c,c))", &sig),
                parse_formula("Id(D,c,c)", &sig))
              .ok);

  // junk buried inside a redex is still rejected
  REQUIRE_FALSE(
      check(sig, ctx, parse_proofterm("fst(pair(a, fst(b)))", &sig), parse_formula("A", &sig))
          .ok);
  REQUIRE_FALSE(check(sig, ctx, parse_proofterm("case(inl(a), x => x, y => fst(y))", &sig),
                      parse_formula("A", &sig))
                    .ok);
}

TEST_CASE("identity introduction requires a connecting path") {
  Signature sig = test_sig();
  Context empty;
  auto r = check(sig, empty, parse_proofterm("path(rho, c, d)", &sig),
                 parse_formula("Id(D,c,d)", &sig));
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.code == TypeError::Code::PathMismatch);

  // endpoints must match the formula
  auto r2 = check(sig, empty, parse_proofterm("path(rho, c, c)", &sig),
                  parse_formula("Id(D,d,d)", &sig));
  REQUIRE_FALSE(r2.ok);

  // inside rewr, the bound path connects exactly the scrutinee's endpoints
  REQUIRE(check(sig, empty,
                parse_proofterm("rewr(path(rho,c,c), t => path(tr(t, sym(t)), c, c))", &sig),
                parse_formula("Id(D,c,c)", &sig))
              .ok);
}

TEST_CASE("check_equality replays recorded steps") {
  Signature sig = test_sig();
  Context ctx;
  ctx.declare_hyp("a", parse_formula("A", &sig)).declare_hyp("b", parse_formula("B", &sig));

  auto fp = parse_proofterm("fst(pair(a,b))", &sig);
  REQUIRE(check_equality(sig, ctx, fp, ProofTerm::var("a"), Path::step(RuleLabel::BetaFst, {})).ok);
  REQUIRE(check_equality(sig, ctx, ProofTerm::var("a"), ProofTerm::var("a"), Path::refl()).ok);
  auto r = check_equality(sig, ctx, ProofTerm::var("a"), ProofTerm::var("b"), Path::refl());
  REQUIRE_FALSE(r.ok);

  // individuals: rho connects equals, nothing else
  REQUIRE(check_equality(sig, ctx, Individual::constant("c", "D"),
                         Individual::constant("c", "D"), Path::refl())
              .ok);
  REQUIRE_FALSE(check_equality(sig, ctx, Individual::constant("c", "D"),
                               Individual::constant("d", "D"), Path::refl())
                    .ok);

  // the judgement record carries either flavour
  EqualityJudgement ej;
  ej.ctx = ctx;
  ej.lhs_term = fp;
  ej.rhs_term = ProofTerm::var("a");
  ej.formula = parse_formula("A", &sig);
  ej.path = Path::step(RuleLabel::BetaFst, {});
  REQUIRE(check_equality(sig, ej).ok);
  EqualityJudgement ei;
  ei.over_individuals = true;
  ei.lhs_ind = ei.rhs_ind = Individual::constant("c", "D");
  ei.sort = "D";
  ei.path = Path::refl();
  REQUIRE(check_equality(sig, ei).ok);
}

TEST_CASE("weakening: adding a fresh hypothesis preserves checking") {
  ndgames::testing::GenFixture fx;
  for (int i = 0; i < 60; ++i) {
    auto g = fx.make(5100 + i);
    Formula goal = fx.pool[i % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 6});
    REQUIRE(check(fx.sig, fx.ctx, t, goal).ok);
    Context wider = fx.ctx;
    wider.declare_hyp("zzfresh", parse_formula("B -> B", &fx.sig));
    wider.declare_ind("zzind", "D");
    REQUIRE(check(fx.sig, wider, t, goal).ok);
  }
}

TEST_CASE("substitution property: hypotheses can be discharged") {
  ndgames::testing::GenFixture fx;
  Formula A = parse_formula("A", &fx.sig);
  for (int i = 0; i < 60; ++i) {
    auto g = fx.make(6200 + i);
    Formula goal = fx.pool[i % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 5});
    // discharge u : A by a closed proof of A routed through a redex
    ProofTerm a = parse_proofterm("fst(pair(u,v))", &fx.sig);
    ProofTerm t2 = subst_free(t, "u", SubstValue::proof(a));
    INFO(print(t) << "  [fst(pair(u,v))/u]  " << print(t2));
    REQUIRE(check(fx.sig, fx.ctx, t2, goal).ok);
  }
  (void)A;
}

TEST_CASE("generator soundness: generated derivations always check") {
  ndgames::testing::GenFixture fx;
  for (int i = 0; i < 500; ++i) {
    auto g = fx.make(777000 + i);
    Formula goal = fx.pool[i % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 7});
    INFO(print(t) << " : " << print(goal));
    REQUIRE(check(fx.sig, fx.ctx, t, goal).ok);
  }
}

TEST_CASE("judgement files parse into contexts") {
  Signature sig = test_sig();
  auto j = parse_judgement("a : A\nb : B\n|- pair(a,b) : A & B\n", sig);
  REQUIRE(j.ctx.entries.size() == 2);
  REQUIRE(check(sig, j.ctx, j.term, j.formula).ok);

  auto j2 = parse_judgement("x : D\nh : P(x)\n|- eps(x, h) : exists y:D. P(y)\n", sig);
  REQUIRE(j2.ctx.entries[0].kind == ContextEntry::Kind::Individual);
  REQUIRE(check(sig, j2.ctx, j2.term, j2.formula).ok);

  REQUIRE_THROWS_AS(parse_judgement("a : A\n", sig), ParseError);  // no |-
  REQUIRE_THROWS_AS(parse_judgement("|- x : A\nq : B\n", sig), ParseError);

  // duplicate names are a context error at check time
  auto j3 = parse_judgement("a : A\na : B\n|- a : A\n", sig);
  REQUIRE_THROWS_AS(check_or_throw(sig, j3.ctx, j3.term, j3.formula), TypeError);
}
