#pragma once

// Multi-step reduction: leftmost-outermost normalisation with recorded
// traces, exhaustive enumeration of reduction sequences, and derivation
// of equality paths between convertible terms.
//
// normalize() checks its input first; the default step bound is twice
// the starting term's size and exceeding it is an error, never a hang.

#include "ndgames/typecheck.hpp"

namespace ndgames {

struct ReductionTrace {
  ProofTerm start;
  struct Step {
    Redex redex;
    ProofTerm result;
  };
  std::vector<Step> steps;
  Path path;  // trans-composition of the recorded steps, canonicalized

  const ProofTerm& result() const { return steps.empty() ? start : steps.back().result; }
};

enum class Strategy { LeftmostOutermost, Enumerated };

struct NormalizeOptions {
  Strategy strategy = Strategy::LeftmostOutermost;
  int step_bound = 0;     // 0: use 2 * term_size(start)
  size_t max_traces = 20000;  // enumerated mode: hard cap on distinct sequences
};

namespace detail {

inline Path compose_trace_path(const ProofTerm& start, const std::vector<Redex>& redexes) {
  Path p = Path::refl();
  ProofTerm cur = start;
  for (const auto& r : redexes) {
    p = Path::trans(p, recorded_step(cur, r));
    cur = beta_step(cur, r);
  }
  return canonicalize(p);
}

}  // namespace detail

// Reduce with the leftmost-outermost strategy until no redex remains.
// The input is checked against `goal` in `ctx` first.
inline ReductionTrace normalize(const Signature& sig, const Context& ctx,
                                const ProofTerm& start, const Formula& goal,
                                int step_bound = 0) {
  check_or_throw(sig, ctx, start, goal);
  if (step_bound <= 0) step_bound = 2 * term_size(start);
  ReductionTrace tr;
  tr.start = start;
  ProofTerm cur = start;
  Path p = Path::refl();
  for (int n = 0;; ++n) {
    auto redexes = find_redexes(cur);
    if (redexes.empty()) break;
    if (n >= step_bound)
      throw ReduceError(ReduceError::Code::StepBound,
                        "step bound " + std::to_string(step_bound) + " exceeded");
    const Redex& r = redexes.front();
    p = Path::trans(p, recorded_step(cur, r));
    cur = beta_step(cur, r);
    tr.steps.push_back({r, cur});
  }
  tr.path = canonicalize(p);
  return tr;
}

struct EnumeratedTraces {
  std::vector<ReductionTrace> traces;
  bool truncated = false;  // trace cap hit; every returned trace is complete
};

// Every maximal reduction sequence from `start`, in redex-order DFS. Each
// sequence is bounded by the step bound; exceeding it is an error.
inline EnumeratedTraces normalize_enumerated(const Signature& sig, const Context& ctx,
                                             const ProofTerm& start, const Formula& goal,
                                             NormalizeOptions opts = {}) {
  check_or_throw(sig, ctx, start, goal);
  int bound = opts.step_bound > 0 ? opts.step_bound : 2 * term_size(start);
  EnumeratedTraces out;

  struct Frame {
    ProofTerm term;
    std::vector<Redex> redexes;
    size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<ReductionTrace::Step> steps;
  stack.push_back({start, find_redexes(start), 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.redexes.empty() && f.next == 0) {
      // maximal sequence reached
      if (out.traces.size() >= opts.max_traces) {
        out.truncated = true;
        return out;
      }
      ReductionTrace tr;
      tr.start = start;
      tr.steps = steps;
      Path p = Path::refl();
      {
        ProofTerm cur = start;
        for (const auto& s : steps) {
          p = Path::trans(p, recorded_step(cur, s.redex));
          cur = s.result;
        }
      }
      tr.path = canonicalize(p);
      out.traces.push_back(std::move(tr));
      f.next = 1;  // mark visited
      continue;
    }
    if (f.next >= f.redexes.size()) {
      stack.pop_back();
      if (!steps.empty()) steps.pop_back();
      continue;
    }
    if (static_cast<int>(steps.size()) >= bound)
      throw ReduceError(ReduceError::Code::StepBound,
                        "step bound " + std::to_string(bound) +
                            " exceeded during enumeration");
    Redex r = f.redexes[f.next++];
    ProofTerm next = beta_step(f.term, r);
    steps.push_back({r, next});
    stack.push_back({next, find_redexes(next), 0});
  }
  return out;
}

// The path witnessing convertibility of `a` and `b`, when their normal
// forms agree: trans(nf-path of a, sym(nf-path of b)), canonicalized.
inline std::optional<Path> derive_path(const Signature& sig, const Context& ctx,
                                       const ProofTerm& a, const ProofTerm& b,
                                       const Formula& goal) {
  ReductionTrace ta = normalize(sig, ctx, a, goal);
  ReductionTrace tb = normalize(sig, ctx, b, goal);
  if (!(ta.result() == tb.result())) return std::nullopt;
  return canonicalize(Path::trans(ta.path, Path::sym(tb.path)));
}

// External trace format: one line per step.
inline std::string trace_lines(const ReductionTrace& tr) {
  std::string out;
  for (const auto& s : tr.steps) {
    out += rule_label_name(s.redex.label);
    out += " @ ";
    out += position_string(s.redex.pos);
    out += " : ";
    out += print(s.result);
    out += '\n';
  }
  return out;
}

}  // namespace ndgames
