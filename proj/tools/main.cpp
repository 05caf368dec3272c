// Command-line surface for the proof-term engine: judgement checking,
// normalisation, Attack/Defense dialogues, evaluation games, the Tarski
// oracle, and game-vs-oracle cross-checking.
//
// Exit codes: 0 success, 1 semantic failure, 2 parse error, 3 resource
// bound exceeded.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ndgames/dialogue.hpp"
#include "ndgames/evalgame.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitParse = 2;
constexpr int kExitBound = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Inputs {
  std::string signature_path;
  std::string judgement_path;
};

int cmd_check(const Inputs& in) {
  using namespace ndgames;
  Signature sig = parse_signature(slurp(in.signature_path));
  Judgement j = parse_judgement(slurp(in.judgement_path), sig);
  CheckResult r = check(sig, j.ctx, j.term, j.formula);
  if (!r.ok) {
    std::cerr << in.judgement_path << ":" << j.line << ": error: " << r.error << "\n";
    return kExitSemantic;
  }
  std::cout << "ok: " << print(j.term) << " : " << print(j.formula) << "\n";
  return kExitOk;
}

int cmd_normalize(const Inputs& in, bool trace, bool enumerate, int steps) {
  using namespace ndgames;
  Signature sig = parse_signature(slurp(in.signature_path));
  Judgement j = parse_judgement(slurp(in.judgement_path), sig);
  if (enumerate) {
    NormalizeOptions opts;
    opts.step_bound = steps;
    auto res = normalize_enumerated(sig, j.ctx, j.term, j.formula, opts);
    bool agree = true;
    for (size_t i = 0; i < res.traces.size(); ++i) {
      std::cout << "trace " << i + 1 << ":\n" << trace_lines(res.traces[i]);
      std::cout << "normal form: " << print(res.traces[i].result()) << "\n";
      agree = agree && alpha_eq(res.traces[i].result(), res.traces[0].result());
    }
    std::cout << res.traces.size() << " trace(s)" << (res.truncated ? " (truncated)" : "")
              << ", endpoints agree: " << (agree ? "yes" : "NO") << "\n";
    return agree ? kExitOk : kExitSemantic;
  }
  ReductionTrace tr = normalize(sig, j.ctx, j.term, j.formula, steps);
  if (trace) std::cout << trace_lines(tr);
  std::cout << "normal form: " << print(tr.result()) << "\n";
  std::cout << "path: " << print(tr.path) << "\n";
  return kExitOk;
}

int cmd_dialogue(const Inputs& in, const std::string& script_path,
                 const std::string& pool_path, bool interactive) {
  using namespace ndgames;
  Signature sig = parse_signature(slurp(in.signature_path));
  Judgement j = parse_judgement(slurp(in.judgement_path), sig);
  DialogueState st = start_dialogue(sig, j.ctx, j.term, j.formula);

  if (interactive) {
    AttackerCallback ask = [&](const DialogueState& s,
                               const std::vector<AttackShape>& shapes) -> std::optional<Attack> {
      for (;;) {
        std::cerr << "assertion: " << print(s.term) << " : " << print(s.formula) << "\n";
        std::cerr << "legal attacks:";
        for (const auto& sh : shapes) std::cerr << "  " << sh.display();
        std::cerr << "\nattack> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return std::nullopt;
        if (line == "quit" || line == "q") return std::nullopt;
        try {
          auto moves = parse_script(line + "\n", sig);
          if (moves.size() != 1) {
            std::cerr << "enter exactly one move\n";
            continue;
          }
          // validate by trial: defend throws on an illegal or ill-typed move
          defend(s, moves[0]);
          return moves[0];
        } catch (const std::exception& e) {
          std::cerr << "invalid move: " << e.what() << "\n";
        }
      }
    };
    DialogueState fin = run_interactive(st, ask);
    std::cout << transcript_lines(fin);
    return fin.status == DialogueStatus::AtomicClosed ? kExitOk : kExitSemantic;
  }

  if (!script_path.empty()) {
    auto script = parse_script(slurp(script_path), sig);
    DialogueState fin = run_scripted(st, script);
    std::cout << transcript_lines(fin);
    return fin.status == DialogueStatus::AtomicClosed ? kExitOk : kExitSemantic;
  }

  ChallengePool pool;
  if (!pool_path.empty()) pool = parse_pool(slurp(pool_path), sig);
  auto terminals = run_exhaustive(st, pool);
  bool all_closed = true;
  for (size_t i = 0; i < terminals.size(); ++i) {
    std::cout << "play " << i + 1 << ":\n" << transcript_lines(terminals[i]);
    all_closed = all_closed && terminals[i].status == DialogueStatus::AtomicClosed;
  }
  std::cout << terminals.size() << " play(s), all closed: " << (all_closed ? "yes" : "NO")
            << "\n";
  return all_closed ? kExitOk : kExitSemantic;
}

int cmd_game(const std::string& model_path, const std::string& formula_text,
             bool interactive, const std::string& player) {
  using namespace ndgames;
  Model m = parse_model(slurp(model_path));
  Signature sig = m.signature();
  Formula f = parse_formula(formula_text, &sig);
  {
    std::set<std::string> free;
    collect_free_names(f, free);
    for (const auto& n : free)
      if (!m.domain_of_element(n) && !sig.find_const(n))
        throw GameError("free variable '" + n +
                        "': provide a sentence (element names act as constants)");
  }
  Controller eloise, abelard;
  if (interactive) {
    Controller human;
    human.interactive = true;
    human.choose = [&](const GamePosition& pos, const std::vector<GameMove>& moves) {
      for (;;) {
        std::cerr << "position: " << print(pos.formula) << "\n";
        for (size_t i = 0; i < moves.size(); ++i)
          std::cerr << "  [" << i << "] " << moves[i].label << "\n";
        std::cerr << "choose> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) throw GameError("input closed");
        try {
          size_t idx = 0;
          int k = std::stoi(line, &idx);
          if (idx == line.size() && k >= 0 && static_cast<size_t>(k) < moves.size()) return k;
        } catch (...) {
        }
        std::cerr << "enter an index between 0 and " << moves.size() - 1 << "\n";
      }
    };
    if (player == "abelard")
      abelard = human;
    else
      eloise = human;
  }
  PlayResult res = play_game(f, m, {}, eloise, abelard);
  std::cout << play_transcript(res);
  return kExitOk;
}

int cmd_oracle(const std::string& model_path, const std::string& formula_text) {
  using namespace ndgames;
  Model m = parse_model(slurp(model_path));
  Signature sig = m.signature();
  Formula f = parse_formula(formula_text, &sig);
  std::cout << (tarski_eval(f, m) ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_crosscheck(int max_nodes, int max_qdepth, int max_model, long sample,
                   unsigned long seed) {
  using namespace ndgames;
  std::vector<PredDecl> preds{{"E", {"D", "D"}}};
  auto sentences = enumerate_nnf_sentences("D", preds, max_nodes, max_qdepth);
  auto models = enumerate_models("D", "E", max_model);
  size_t total = 0, disagreements = 0;
  for (const auto& f : sentences) {
    for (const auto& m : models) {
      bool g = game_winner(f, m) == Player::Eloise;
      bool t = tarski_eval(f, m);
      ++total;
      if (g != t) {
        ++disagreements;
        std::cout << "DISAGREE " << print(f) << " on model #" << total << "\n";
      }
    }
  }
  if (sample > 0) {
    // seeded random sweep past the exhaustive bounds
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> modelsize(1, std::max(1, max_model));
    for (long k = 0; k < sample; ++k) {
      int n = modelsize(rng);
      Model m;
      Model::Domain dom{"D", {}};
      const char* names[] = {"a", "b", "c", "d", "e"};
      for (int i = 0; i < n; ++i) dom.elements.push_back(names[i]);
      m.domains.push_back(dom);
      Model::PredInterp p{"E", {"D", "D"}, {}};
      for (const auto& x : dom.elements)
        for (const auto& y : dom.elements)
          if (rng() & 1) p.tuples.insert({x, y});
      m.preds.push_back(std::move(p));
      std::uniform_int_distribution<size_t> pick(0, sentences.size() - 1);
      const Formula& f = sentences[pick(rng)];
      bool g = game_winner(f, m) == Player::Eloise;
      bool t = tarski_eval(f, m);
      ++total;
      if (g != t) {
        ++disagreements;
        std::cout << "DISAGREE " << print(f) << " (sampled)\n";
      }
    }
  }
  double pct = total == 0 ? 100.0 : 100.0 * static_cast<double>(total - disagreements) /
                                        static_cast<double>(total);
  std::cout << "agreement " << pct << "% over " << total << " formula/model pairs\n";
  return disagreements == 0 ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof-term engine: labelled natural deduction, reduction, "
               "dialogues, and evaluation games"};
  app.require_subcommand(1);

  Inputs in;
  bool trace = false, enumerate = false, interactive = false;
  int steps = 0;
  std::string script_path, pool_path, model_path, formula_text, player = "eloise";
  int max_nodes = 5, max_qdepth = 2, max_model = 2;
  long sample = 0;
  unsigned long seed = 0;

  auto* c_check = app.add_subcommand("check", "type-check a judgement file");
  c_check->add_option("signature", in.signature_path, "signature file")->required();
  c_check->add_option("judgement", in.judgement_path, "judgement file")->required();

  auto* c_norm = app.add_subcommand("normalize", "beta-normalize a checked judgement");
  c_norm->add_option("signature", in.signature_path)->required();
  c_norm->add_option("judgement", in.judgement_path)->required();
  c_norm->add_flag("--trace", trace, "print one line per reduction step");
  c_norm->add_flag("--enumerate", enumerate, "explore every reduction order");
  c_norm->add_option("--steps", steps, "step bound (default 2x term size)");

  auto* c_dlg = app.add_subcommand("dialogue", "play the Attack/Defense dialogue");
  c_dlg->add_option("signature", in.signature_path)->required();
  c_dlg->add_option("judgement", in.judgement_path)->required();
  c_dlg->add_option("--script", script_path, "move file: L?, R?, ?, ! <term>, @ <const>");
  c_dlg->add_option("--pool", pool_path, "challenge pool for exhaustive attack");
  c_dlg->add_flag("--interactive", interactive, "prompt for each attack");

  auto* c_game = app.add_subcommand("game", "play the evaluation game over a model");
  c_game->add_option("model", model_path, "model file")->required();
  c_game->add_option("formula", formula_text, "NNF sentence")->required();
  c_game->add_flag("--interactive", interactive, "a human plays one side");
  c_game->add_option("--player", player, "side the human controls (eloise|abelard)")
      ->check(CLI::IsMember({"eloise", "abelard"}));

  auto* c_oracle = app.add_subcommand("oracle", "Tarski truth of a sentence in a model");
  c_oracle->add_option("model", model_path)->required();
  c_oracle->add_option("formula", formula_text)->required();

  auto* c_cross = app.add_subcommand(
      "crosscheck", "sweep formulas x models: game winner vs Tarski truth");
  c_cross->add_option("--max-nodes", max_nodes, "formula size bound (default 5)");
  c_cross->add_option("--max-qdepth", max_qdepth, "quantifier depth bound (default 2)");
  c_cross->add_option("--max-model", max_model, "domain size bound (default 2)");
  c_cross->add_option("--sample", sample, "additional seeded random pairs");
  c_cross->add_option("--seed", seed, "seed for --sample");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return cmd_check(in);
    if (c_norm->parsed()) return cmd_normalize(in, trace, enumerate, steps);
    if (c_dlg->parsed()) return cmd_dialogue(in, script_path, pool_path, interactive);
    if (c_game->parsed()) return cmd_game(model_path, formula_text, interactive, player);
    if (c_oracle->parsed()) return cmd_oracle(model_path, formula_text);
    if (c_cross->parsed())
      return cmd_crosscheck(max_nodes, max_qdepth, max_model, sample, seed);
  } catch (const ndgames::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ndgames::ReduceError& e) {
    if (e.code == ndgames::ReduceError::Code::StepBound) {
      std::cerr << "resource bound: " << e.what() << "\n";
      return kExitBound;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}
