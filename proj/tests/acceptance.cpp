// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Bounds (counts, sizes, runtimes) are pinned here.
//
//   1  golden rewriting table, the eight contractions on literal instances
//   2  subject reduction over >= 10,000 generated terms        (< 1 min)
//   3  confluence, exhaustive closed terms up to size 10       (< 5 min)
//   4  termination bound 2*size on terms up to size 30         (< 5 min)
//   5  dialogue-reduction correspondence, canonical <= 12      (< 5 min)
//   6  game-truth adequacy, NNF sweep x all models size <= 3   (< 10 min)
//   7  path soundness over >= 1,000 derived paths              (< 1 min)
//   8  parse/print round trip, 100-item corpus + criterion-2 terms

#include <chrono>
#include <cstdio>
#include <functional>

#include "ndgames/dialogue.hpp"
#include "ndgames/evalgame.hpp"
#include "support/enumerate.hpp"
#include "support/generators.hpp"

using namespace ndgames;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& detail, double secs,
            double budget_secs) {
  bool in_budget = secs < budget_secs;
  if (!pass || !in_budget) ++g_failures;
  std::printf("CRITERION %d %s — %s (%.2f s, budget %.0f s)\n", criterion,
              pass && in_budget ? "PASS" : "FAIL", detail.c_str(), secs, budget_secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// 1. Golden rewriting table.
// ---------------------------------------------------------------------------

void criterion1() {
  auto t0 = Clock::now();
  Signature sig = parse_signature(
      "sort D\n"
      "pred A/0\npred B/0\npred C/0\npred P/1 : D\n"
      "const a : D\nconst b : D\nconst c : D\n");

  struct Row {
    const char* judgement;  // context lines + |- redex : formula
    const char* reduct;     // expected printed reduct
    RuleLabel label;
  };
  // one instance per associated rewriting, schematic letters instantiated
  // minimally: f(x) as app(f,x) etc., so the substitution is visible
  const Row rows[] = {
      {"a : A\nb : B\n|- fst(pair(a,b)) : A", "a", RuleLabel::BetaFst},
      {"a : A\nb : B\n|- snd(pair(a,b)) : B", "b", RuleLabel::BetaSnd},
      {"a : A\nf : A -> C\ng : B -> C\n|- case(inl(a), x => app(f,x), y => app(g,y)) : C",
       "app(f,a)", RuleLabel::BetaCaseL},
      {"b : B\nf : A -> C\ng : B -> C\n|- case(inr(b), x => app(f,x), y => app(g,y)) : C",
       "app(g,b)", RuleLabel::BetaCaseR},
      {"a : A\nb : A -> B\n|- app(lam(x. app(b,x)), a) : B", "app(b,a)",
       RuleLabel::BetaApp},
      {"f : forall x:D. P(x)\n|- extr(Lam(x:D. extr(f,x)), a) : P(a)", "extr(f,a)",
       RuleLabel::BetaExtr},
      {"f : forall x:D. P(x)\nh : forall x:D. P(a) -> C\n"
       "|- inst(eps(a, extr(f,a)), t g => app(extr(h,t), g)) : C",
       "app(extr(h,a),extr(f,a))", RuleLabel::BetaInst},
      {"|- rewr(path(rho,c,c), t => path(t,c,c)) : Id(D,c,c)", "path(rho,c,c)",
       RuleLabel::BetaRewr},
  };

  int passed = 0;
  std::string detail;
  for (const auto& row : rows) {
    Judgement j = parse_judgement(std::string(row.judgement) + "\n", sig);
    CheckResult chk = check(sig, j.ctx, j.term, j.formula);
    auto redexes = find_redexes(j.term);
    bool ok = chk.ok && redexes.size() >= 1 && redexes[0].pos.empty() &&
              redexes[0].label == row.label;
    if (ok) {
      ProofTerm reduct = beta_step(j.term, redexes[0]);
      ok = print(reduct) == row.reduct && check(sig, j.ctx, reduct, j.formula).ok;
      if (!ok)
        detail += " [" + std::string(rule_label_name(row.label)) + ": got " +
                  print(reduct) + "]";
    } else {
      detail += " [" + std::string(rule_label_name(row.label)) + ": setup failed" +
                (chk.ok ? "" : std::string(": ") + chk.error) + "]";
    }
    if (ok) ++passed;
  }
  report(1, passed == 8, "golden rewriting table " + std::to_string(passed) + "/8" + detail,
         seconds_since(t0), 1.0);
}

// ---------------------------------------------------------------------------
// 2. Subject reduction (also feeds criterion 8 with generated terms).
// ---------------------------------------------------------------------------

struct SubjectReductionOutcome {
  long terms = 0;
  long steps = 0;
  long failures = 0;
  long roundtrip_failures = 0;
};

SubjectReductionOutcome g_sr;

void criterion2() {
  auto t0 = Clock::now();
  ndgames::testing::GenFixture fx;
  const long kTerms = 10000;
  for (long i = 0; i < kTerms; ++i) {
    auto g = fx.make(20000 + static_cast<uint64_t>(i));
    Formula goal = fx.pool[static_cast<size_t>(i) % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 8});
    ++g_sr.terms;
    if (!check(fx.sig, fx.ctx, t, goal).ok) {
      ++g_sr.failures;
      continue;
    }
    if (!alpha_eq(parse_proofterm(print(t), &fx.sig), t)) ++g_sr.roundtrip_failures;
    for (const auto& r : find_redexes(t)) {
      ProofTerm t2 = beta_step(t, r);
      ++g_sr.steps;
      if (!check(fx.sig, fx.ctx, t2, goal).ok) ++g_sr.failures;
    }
  }
  report(2, g_sr.failures == 0,
         "subject reduction: " + std::to_string(g_sr.terms) + " terms, " +
             std::to_string(g_sr.steps) + " single steps, " +
             std::to_string(g_sr.failures) + " failures",
         seconds_since(t0), 60.0);
}

// ---------------------------------------------------------------------------
// 3. Confluence on exhaustively enumerated closed terms.
// ---------------------------------------------------------------------------

void criterion3() {
  auto t0 = Clock::now();
  Signature sig = parse_signature("sort D\npred P/1 : D\npred A/0\npred B/0\nconst c : D\n");
  Context empty;
  std::vector<Formula> pool;
  for (const char* s :
       {"A", "B", "A -> A", "B -> B", "A & A", "(A -> A) & (A -> A)",
        "(A -> A) | (B -> B)", "A -> A & A", "(A -> A) -> A -> A", "Id(D,c,c)",
        "forall x:D. A -> A", "exists x:D. A -> A", "P(c) -> P(c)"})
    pool.push_back(parse_formula(s, &sig));

  ndgames::testing::TypedEnumerator en(sig, empty, pool);
  auto all = en.all_terms(10);

  // distinct terms only: reduction ignores the formula
  std::set<std::string> seen;
  long terms = 0, sequences = 0, failures = 0;
  std::set<std::string> rules;
  for (const auto& [t, goal] : all) {
    if (!seen.insert(print(t)).second) continue;
    ++terms;
    NormalizeOptions opts;
    opts.max_traces = 100000;
    auto res = normalize_enumerated(sig, empty, t, goal, opts);
    if (res.truncated) ++failures;
    for (const auto& r : find_redexes(t)) rules.insert(rule_label_name(r.label));
    for (const auto& tr : res.traces) {
      ++sequences;
      if (!alpha_eq(tr.result(), res.traces[0].result())) ++failures;
      if (!find_redexes(tr.result()).empty()) ++failures;
    }
  }
  report(3, failures == 0 && terms > 5000,
         "confluence: " + std::to_string(terms) + " closed terms (size <= 10), " +
             std::to_string(sequences) + " maximal sequences, " +
             std::to_string(rules.size()) + "/8 rules exercised, " +
             std::to_string(failures) + " failures",
         seconds_since(t0), 300.0);
}

// ---------------------------------------------------------------------------
// 4. Termination bound: every enumerated sequence within 2 * size steps.
// ---------------------------------------------------------------------------

void criterion4() {
  auto t0 = Clock::now();
  ndgames::testing::GenFixture fx;
  long terms = 0, sequences = 0, violations = 0;
  int max_size_seen = 0;
  for (int i = 0; terms < 600 && i < 5000; ++i) {
    auto g = fx.make(440000 + static_cast<uint64_t>(i));
    Formula goal = fx.pool[static_cast<size_t>(i) % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 6 + (i % 9)});
    int size = term_size(t);
    if (size > 30) continue;
    if (!check(fx.sig, fx.ctx, t, goal).ok) continue;
    ++terms;
    max_size_seen = std::max(max_size_seen, size);
    NormalizeOptions opts;
    opts.step_bound = 2 * size;  // the bound under test
    opts.max_traces = 300;
    try {
      auto res = normalize_enumerated(fx.sig, fx.ctx, t, goal, opts);
      sequences += static_cast<long>(res.traces.size());
      for (const auto& tr : res.traces)
        if (static_cast<int>(tr.steps.size()) > 2 * size) ++violations;
    } catch (const ReduceError& e) {
      if (e.code == ReduceError::Code::StepBound) ++violations;
    }
  }
  report(4, violations == 0 && terms >= 600,
         "termination: " + std::to_string(terms) + " terms (max size " +
             std::to_string(max_size_seen) + "), " + std::to_string(sequences) +
             " sequences within 2*size steps, " + std::to_string(violations) +
             " violations",
         seconds_since(t0), 300.0);
}

// ---------------------------------------------------------------------------
// 5. Dialogue-reduction correspondence on exhaustive canonical terms.
// ---------------------------------------------------------------------------

void criterion5() {
  auto t0 = Clock::now();
  Signature sig =
      parse_signature("sort D\npred P/1 : D\npred A/0\npred B/0\nconst c : D\n");
  Context ctx;
  ctx.declare_hyp("u", parse_formula("A", &sig));
  ctx.declare_hyp("v", parse_formula("B", &sig));
  ctx.declare_hyp("w", parse_formula("P(c)", &sig));
  ctx.declare_hyp("q", parse_formula("forall x:D. P(x)", &sig));
  std::vector<Formula> pool;
  for (const char* s :
       {"A", "B", "A & B", "A | B", "A -> A", "A -> A & A", "P(c)", "Id(D,c,c)",
        "forall x:D. P(x)", "exists x:D. P(x)", "(A -> A) & B", "B -> A"})
    pool.push_back(parse_formula(s, &sig));

  ndgames::testing::TypedEnumerator en(sig, ctx, pool);
  auto all = en.all_terms(12);

  long canonical = 0, comparisons = 0, mismatches = 0;
  for (const auto& [t, goal] : all) {
    if (!is_canonical(t) || goal.is_literal()) continue;
    ++canonical;
    auto rep = check_correspondence(sig, ctx, t, goal);
    for (const auto& e : rep.entries) {
      ++comparisons;
      if (!e.match) ++mismatches;
    }
  }
  report(5, mismatches == 0 && canonical > 1000,
         "correspondence: " + std::to_string(canonical) +
             " canonical terms (size <= 12), " + std::to_string(comparisons) +
             " defense/reduct comparisons, " + std::to_string(mismatches) + " mismatches",
         seconds_since(t0), 300.0);
}

// ---------------------------------------------------------------------------
// 6. Game-truth adequacy: full sweep.
// ---------------------------------------------------------------------------

void criterion6() {
  auto t0 = Clock::now();
  std::vector<PredDecl> preds{{"E", {"D", "D"}}};
  auto sentences = enumerate_nnf_sentences("D", preds, 7, 2);
  auto models = enumerate_models("D", "E", 3);
  long total = 0, disagreements = 0;
  for (const auto& f : sentences) {
    for (const auto& m : models) {
      bool g = game_winner(f, m) == Player::Eloise;
      bool t = tarski_eval(f, m);
      ++total;
      if (g != t) ++disagreements;
    }
  }
  report(6, disagreements == 0,
         "game-truth adequacy: " + std::to_string(sentences.size()) +
             " NNF sentences (<= 7 nodes, qdepth <= 2) x " +
             std::to_string(models.size()) + " models = " + std::to_string(total) +
             " pairs, " + std::to_string(disagreements) + " disagreements",
         seconds_since(t0), 600.0);
}

// ---------------------------------------------------------------------------
// 7. Path soundness over derived paths.
// ---------------------------------------------------------------------------

void criterion7() {
  auto t0 = Clock::now();
  ndgames::testing::GenFixture fx;
  long pairs = 0, failures = 0;
  for (int i = 0; pairs < 1000 && i < 4000; ++i) {
    auto g = fx.make(700000 + static_cast<uint64_t>(i));
    Formula goal = fx.pool[static_cast<size_t>(i) % fx.pool.size()];
    ProofTerm t = g.gen(goal, {.budget = 7});
    if (!check(fx.sig, fx.ctx, t, goal).ok) continue;
    // walk a few random forward steps to another convertible term
    ProofTerm u = t;
    for (int k = 0; k < 3; ++k) {
      auto rs = find_redexes(u);
      if (rs.empty()) break;
      u = beta_step(u, rs[g.rng()() % rs.size()]);
    }
    auto p = derive_path(fx.sig, fx.ctx, t, u, goal);
    ++pairs;
    if (!p) {
      ++failures;
      continue;
    }
    try {
      if (!(replay_path(*p, t) == u)) ++failures;
      if (!check_equality(fx.sig, fx.ctx, t, u, *p).ok) ++failures;
      // groupoid laws on the derived path
      if (!path_eq_canonical(Path::sym(Path::sym(*p)), *p)) ++failures;
      if (!path_eq_canonical(Path::trans(*p, Path::refl()), *p)) ++failures;
      if (!path_eq_canonical(Path::trans(*p, Path::sym(*p)), Path::refl())) ++failures;
      if (!(replay_path(Path::sym(*p), u) == t)) ++failures;
    } catch (const ReduceError&) {
      ++failures;
    }
  }
  report(7, failures == 0 && pairs >= 1000,
         "path soundness: " + std::to_string(pairs) + " derived paths, " +
             std::to_string(failures) + " failures",
         seconds_since(t0), 60.0);
}

// ---------------------------------------------------------------------------
// 8. Round trip: fixed corpus plus the criterion-2 generated terms.
// ---------------------------------------------------------------------------

void criterion8() {
  auto t0 = Clock::now();
  Signature sig = parse_signature(
      "sort D\n"
      "pred P/1 : D\npred E/2 : D D\npred A/0\npred B/0\npred Q/0\n"
      "const a : D\nconst b : D\nconst c : D\n");

  const char* formulas[] = {
      "A", "B", "~A", "P(c)", "~P(c)", "E(a,b)", "A & B", "A | B", "A -> B",
      "A & B & Q", "A | B & Q", "A & B -> Q", "A -> B -> Q", "(A -> B) -> Q",
      "(A | B) & Q", "~A & ~B", "Id(D,a,b)", "Id(D,c,c)",
      "forall x:D. P(x)", "exists x:D. P(x)",
      "forall x:D. P(x) -> P(x)", "exists x:D. P(x) & A",
      "forall x:D. exists y:D. E(x,y)", "exists x:D. forall y:D. E(y,x)",
      "forall x:D. E(x,x) | ~E(x,x)", "(forall x:D. P(x)) -> P(a)",
      "A -> forall x:D. P(x)", "forall x:D. forall y:D. E(x,y) -> E(y,x)",
      "exists x:D. Id(D,x,x)", "forall x:D. Id(D,x,x)",
      "P(a) & P(b) & P(c)", "E(a,b) | E(b,a) | E(a,a)",
      "A -> A", "B -> B -> B", "(A -> A) & (B -> B)",
      "forall x:D. (P(x) -> A) -> A", "exists x:D. (A -> P(x)) & B",
      "~E(a,a)", "Q", "A & (B | Q)"};

  const char* terms[] = {
      "x", "pair(a,b)", "fst(p)", "snd(p)", "inl(a)", "inr(b)",
      "case(s, x => x, y => y)", "lam(x. x)", "app(f,a)", "Lam(x:D. w)",
      "extr(f, c)", "eps(c, w)", "inst(e, t g => g)",
      "path(rho, c, c)", "rewr(e, t => d)",
      "fst(pair(a,b))", "snd(pair(a,b))", "app(lam(x. x), a)",
      "case(inl(a), x => x, y => y)", "extr(Lam(x:D. extr(q,x)), c)",
      "inst(eps(c,w), t g => pair(g,g))", "rewr(path(rho,c,c), t => path(t,c,c))",
      "lam(x. lam(y. x))", "lam(x. lam(x. x))", "lam(x. pair(x,x))",
      "Lam(x:D. Lam(y:D. path(rho,x,x)))", "Lam(x:D. lam(h. h))",
      "pair(pair(a,b), pair(b,a))", "inl(inl(inl(a)))",
      "case(s, x => inl(x), y => inr(y))", "app(app(f,a),b)",
      "fst(snd(fst(p)))", "eps(a, eps(b, pair(u,v)))",
      "inst(e, t g => eps(t, g))", "rewr(e, t => pair(path(t,a,b), u))",
      "lam(x. app(x, lam(y. app(y, x))))",
      "case(case(s, x => inl(x), y => inr(y)), x => x, y => y)",
      "app(lam(x. pair(x,x)), fst(pair(a,a)))",
      "pair(lam(x. x), Lam(y:D. lam(z. z)))",
      "inst(eps(c, extr(q,c)), t g => app(extr(h,t), g))",
      "path(tr(rho, rho), c, c)", "path(sym(rho), c, c)",
      "rewr(path(rho,a,a), t => path(tr(t, sym(t)), a, a))",
      "lam(k. case(app(k, inl(u)), x => x, y => y))",
      "snd(pair(inl(u), pair(a,b)))"};

  const char* paths[] = {
      "rho", "beta-fst@root", "beta-snd@0", "beta-app@0.1", "beta-case-l@root",
      "beta-case-r@2", "beta-extr@root", "beta-inst@1", "beta-rewr@root",
      "sym(beta-fst@root)", "tr(beta-fst@root, beta-snd@root)",
      "tr(beta-app@root, sym(beta-extr@0))", "sym(sym(rho))",
      "tr(rho, tr(beta-fst@0, rho))", "sym(tr(beta-inst@root, beta-rewr@1.0))"};

  long items = 0, failures = 0;
  for (const char* s : formulas) {
    ++items;
    if (!(parse_formula(print(parse_formula(s, &sig)), &sig) == parse_formula(s, &sig)))
      ++failures;
  }
  for (const char* s : terms) {
    ++items;
    ProofTerm t = parse_proofterm(s, &sig);
    if (!alpha_eq(parse_proofterm(print(t), &sig), t)) ++failures;
  }
  for (const char* s : paths) {
    ++items;
    Path p = parse_path(s);
    if (!path_eq_canonical(parse_path(print(p)), p)) ++failures;
  }
  bool pass = failures == 0 && items == 100 && g_sr.roundtrip_failures == 0 &&
              g_sr.terms >= 10000;
  report(8, pass,
         "round trip: " + std::to_string(items) + "-item corpus, " +
             std::to_string(failures) + " corpus failures; " +
             std::to_string(g_sr.terms) + " generated terms, " +
             std::to_string(g_sr.roundtrip_failures) + " failures",
         seconds_since(t0), 30.0);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
