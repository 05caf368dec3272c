#pragma once

// Core syntax: sorts, individuals, first-order formulas, labelled proof
// terms, and rewrite paths.
//
// Binding is nameless: every binder (quantifier, lam, Lam, case branch,
// inst branch, rewr branch) pushes one slot onto a single shared stack,
// and a bound occurrence stores the number of binders between it and its
// own. Alpha-equivalence is therefore plain structural equality; surface
// names survive only as printing hints and never take part in comparison.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ndgames {

using SortName = std::string;

// ---------------------------------------------------------------------------
// Signature: declared sorts, predicates, constants.
// ---------------------------------------------------------------------------

struct PredDecl {
  std::string name;
  std::vector<SortName> arg_sorts;  // empty for propositional atoms
};

struct ConstDecl {
  std::string name;
  SortName sort;
};

struct Signature {
  std::vector<SortName> sorts;
  std::vector<PredDecl> preds;
  std::vector<ConstDecl> consts;

  bool has_sort(const std::string& s) const {
    return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
  }
  const PredDecl* find_pred(const std::string& n) const {
    for (const auto& p : preds)
      if (p.name == n) return &p;
    return nullptr;
  }
  const ConstDecl* find_const(const std::string& n) const {
    for (const auto& c : consts)
      if (c.name == n) return &c;
    return nullptr;
  }

  void add_sort(const std::string& s) {
    if (!has_sort(s)) sorts.push_back(s);
  }
  void add_pred(const std::string& n, std::vector<SortName> args) {
    if (!find_pred(n)) preds.push_back({n, std::move(args)});
  }
  void add_const(const std::string& n, const SortName& s) {
    if (!find_const(n)) consts.push_back({n, s});
  }
};

// ---------------------------------------------------------------------------
// Individuals: bound variables, free variables, constants. No function
// symbols; every free individual carries its sort, a bound one takes the
// sort of its binder.
// ---------------------------------------------------------------------------

class Individual {
 public:
  enum class Kind { Bound, Var, Const };

  Individual() = default;

  static Individual bound(int index, std::string hint = "") {
    Individual i;
    i.kind_ = Kind::Bound;
    i.index_ = index;
    i.name_ = std::move(hint);
    return i;
  }
  static Individual var(std::string name, SortName sort) {
    Individual i;
    i.kind_ = Kind::Var;
    i.name_ = std::move(name);
    i.sort_ = std::move(sort);
    return i;
  }
  static Individual constant(std::string name, SortName sort) {
    Individual i;
    i.kind_ = Kind::Const;
    i.name_ = std::move(name);
    i.sort_ = std::move(sort);
    return i;
  }

  Kind kind() const { return kind_; }
  int index() const { return index_; }
  const std::string& name() const { return name_; }
  const SortName& sort() const { return sort_; }

  bool operator==(const Individual& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Bound) return index_ == o.index_;  // hint ignored
    return name_ == o.name_ && sort_ == o.sort_;
  }
  bool operator!=(const Individual& o) const { return !(*this == o); }

 private:
  Kind kind_ = Kind::Var;
  int index_ = -1;
  std::string name_;
  SortName sort_;
};

// ---------------------------------------------------------------------------
// Rewrite rule labels and positions.
// ---------------------------------------------------------------------------

enum class RuleLabel {
  BetaFst,
  BetaSnd,
  BetaCaseL,
  BetaCaseR,
  BetaApp,
  BetaExtr,
  BetaInst,
  BetaRewr,
};

inline const char* rule_label_name(RuleLabel l) {
  switch (l) {
    case RuleLabel::BetaFst: return "beta-fst";
    case RuleLabel::BetaSnd: return "beta-snd";
    case RuleLabel::BetaCaseL: return "beta-case-l";
    case RuleLabel::BetaCaseR: return "beta-case-r";
    case RuleLabel::BetaApp: return "beta-app";
    case RuleLabel::BetaExtr: return "beta-extr";
    case RuleLabel::BetaInst: return "beta-inst";
    case RuleLabel::BetaRewr: return "beta-rewr";
  }
  return "?";
}

inline std::optional<RuleLabel> rule_label_from_name(const std::string& s) {
  static const std::pair<const char*, RuleLabel> table[] = {
      {"beta-fst", RuleLabel::BetaFst},     {"beta-snd", RuleLabel::BetaSnd},
      {"beta-case-l", RuleLabel::BetaCaseL}, {"beta-case-r", RuleLabel::BetaCaseR},
      {"beta-app", RuleLabel::BetaApp},     {"beta-extr", RuleLabel::BetaExtr},
      {"beta-inst", RuleLabel::BetaInst},   {"beta-rewr", RuleLabel::BetaRewr},
  };
  for (const auto& [n, l] : table)
    if (s == n) return l;
  return std::nullopt;
}

// Position of a subterm: indices of proof-term children from the root.
using Position = std::vector<int>;

inline std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula / ProofTerm / Path. Immutable shared nodes; wrappers are cheap
// values. A default-constructed wrapper is null and only valid as a
// placeholder slot inside nodes.
// ---------------------------------------------------------------------------

class Formula;
class ProofTerm;
class Path;

class Formula {
 public:
  // Meta is internal to the checker: a hole for a not-yet-determined
  // formula, only ever solved by binder-closed formulas. It never appears
  // in parsed or printed syntax.
  enum class Kind { Atom, NegAtom, Conj, Disj, Impl, Forall, Exists, Id, Meta };
  struct Node;

  Formula() = default;

  static Formula atom(std::string pred, std::vector<Individual> args = {});
  static Formula natom(std::string pred, std::vector<Individual> args = {});
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula impl(Formula l, Formula r);
  static Formula forall(SortName sort, Formula body, std::string hint = "x");
  static Formula exists(SortName sort, Formula body, std::string hint = "x");
  static Formula id(SortName sort, Individual lhs, Individual rhs);
  static Formula meta(int id);

  bool null() const { return p_ == nullptr; }
  Kind kind() const;
  const Node& node() const { return *p_; }

  const std::string& pred() const;
  const std::vector<Individual>& args() const;
  const Formula& left() const;
  const Formula& right() const;
  const SortName& qsort() const;     // Forall/Exists
  const Formula& body() const;       // Forall/Exists
  const std::string& hint() const;   // Forall/Exists
  const SortName& id_sort() const;   // Id
  const Individual& id_lhs() const;
  const Individual& id_rhs() const;
  int meta_id() const;               // Meta

  bool is_literal() const {
    return kind() == Kind::Atom || kind() == Kind::NegAtom;
  }
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  friend Formula make_formula(Node n);
  explicit Formula(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

class ProofTerm {
 public:
  enum class Kind {
    Var,
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Case,
    Lam,
    App,
    BigLam,
    Extr,
    Eps,
    Inst,
    PathIntro,
    Rewr,
  };
  struct Node;

  ProofTerm() = default;

  static ProofTerm bound(int index, std::string hint = "");
  static ProofTerm var(std::string name);
  static ProofTerm pair(ProofTerm a, ProofTerm b);
  static ProofTerm fst(ProofTerm p);
  static ProofTerm snd(ProofTerm p);
  static ProofTerm inl(ProofTerm p);
  static ProofTerm inr(ProofTerm p);
  static ProofTerm case_of(ProofTerm scrut, ProofTerm left_branch,
                           ProofTerm right_branch, std::string lhint = "x",
                           std::string rhint = "y");
  static ProofTerm lam(ProofTerm body, std::string hint = "x");
  static ProofTerm app(ProofTerm f, ProofTerm a);
  static ProofTerm biglam(SortName sort, ProofTerm body, std::string hint = "x");
  static ProofTerm extr(ProofTerm f, Individual a);
  static ProofTerm eps(Individual witness, ProofTerm proof);
  // inst binds two slots in `body`: the witness individual (outer, index 1)
  // and the instance proof (inner, index 0).
  static ProofTerm inst(ProofTerm scrut, ProofTerm body,
                        std::string ind_hint = "t", std::string proof_hint = "g");
  static ProofTerm path_intro(Path p, Individual lhs, Individual rhs);
  static ProofTerm rewr(ProofTerm scrut, ProofTerm body, std::string hint = "t");

  bool null() const { return p_ == nullptr; }
  Kind kind() const;
  const Node& node() const { return *p_; }

  // Var
  bool is_bound_var() const;
  int index() const;
  const std::string& name() const;

  // Proof-term children in position order.
  const std::vector<ProofTerm>& kids() const;
  ProofTerm with_kids(std::vector<ProofTerm> kids) const;

  const SortName& blsort() const;       // BigLam
  const Individual& ind() const;        // Extr argument / Eps witness
  const Path& path() const;             // PathIntro
  const Individual& path_lhs() const;   // PathIntro
  const Individual& path_rhs() const;   // PathIntro
  const std::vector<std::string>& hints() const;

  bool operator==(const ProofTerm& o) const;
  bool operator!=(const ProofTerm& o) const { return !(*this == o); }

 private:
  friend ProofTerm make_term(Node n);
  explicit ProofTerm(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

class Path {
 public:
  enum class Kind { Refl, Step, Sym, Trans, PVar };
  struct Node;

  Path() = default;

  static Path refl();
  // `before` optionally records the contracted subterm; it makes the step
  // replayable backwards and is ignored by comparison and printing.
  static Path step(RuleLabel label, Position pos,
                   std::optional<ProofTerm> before = std::nullopt);
  static Path sym(Path p);
  static Path trans(Path a, Path b);
  static Path pvar(int index, std::string hint = "");

  bool null() const { return p_ == nullptr; }
  Kind kind() const;
  const Node& node() const { return *p_; }

  RuleLabel label() const;
  const Position& pos() const;
  const std::optional<ProofTerm>& before() const;
  const Path& inner() const;  // Sym
  const Path& first() const;  // Trans
  const Path& second() const;
  int index() const;  // PVar
  const std::string& hint() const;

  // Structural equality ignoring hints and step payloads (no groupoid
  // normalisation; see path_eq_canonical for that).
  bool operator==(const Path& o) const;
  bool operator!=(const Path& o) const { return !(*this == o); }

 private:
  friend Path make_path(Node n);
  explicit Path(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

struct Formula::Node {
  Kind k;
  std::string pred;
  std::vector<Individual> args;
  Formula l, r;
  SortName sort;
  std::string hint;
  Formula body;
  Individual lhs, rhs;
  int meta = -1;
};

struct Path::Node {
  Kind k;
  RuleLabel label = RuleLabel::BetaFst;
  Position pos;
  std::optional<ProofTerm> before;
  Path a, b;
  int index = -1;
  std::string hint;
};

struct ProofTerm::Node {
  Kind k;
  int index = -1;       // Var: >=0 bound, -1 free
  std::string name;     // Var: free name or bound hint
  std::vector<ProofTerm> kids;
  SortName sort;                   // BigLam
  Individual ind;                  // Extr / Eps
  Path path;                       // PathIntro
  Individual plhs, prhs;           // PathIntro endpoints
  std::vector<std::string> hints;  // binder hints in binding order
};

// ---- Formula impl ----

inline Formula make_formula(Formula::Node n) {
  return Formula(std::make_shared<const Formula::Node>(std::move(n)));
}

inline Formula Formula::atom(std::string pred, std::vector<Individual> args) {
  Node n;
  n.k = Kind::Atom;
  n.pred = std::move(pred);
  n.args = std::move(args);
  return make_formula(std::move(n));
}
inline Formula Formula::natom(std::string pred, std::vector<Individual> args) {
  Node n;
  n.k = Kind::NegAtom;
  n.pred = std::move(pred);
  n.args = std::move(args);
  return make_formula(std::move(n));
}
inline Formula Formula::conj(Formula l, Formula r) {
  Node n;
  n.k = Kind::Conj;
  n.l = std::move(l);
  n.r = std::move(r);
  return make_formula(std::move(n));
}
inline Formula Formula::disj(Formula l, Formula r) {
  Node n;
  n.k = Kind::Disj;
  n.l = std::move(l);
  n.r = std::move(r);
  return make_formula(std::move(n));
}
inline Formula Formula::impl(Formula l, Formula r) {
  Node n;
  n.k = Kind::Impl;
  n.l = std::move(l);
  n.r = std::move(r);
  return make_formula(std::move(n));
}
inline Formula Formula::forall(SortName sort, Formula body, std::string hint) {
  Node n;
  n.k = Kind::Forall;
  n.sort = std::move(sort);
  n.body = std::move(body);
  n.hint = std::move(hint);
  return make_formula(std::move(n));
}
inline Formula Formula::exists(SortName sort, Formula body, std::string hint) {
  Node n;
  n.k = Kind::Exists;
  n.sort = std::move(sort);
  n.body = std::move(body);
  n.hint = std::move(hint);
  return make_formula(std::move(n));
}
inline Formula Formula::id(SortName sort, Individual lhs, Individual rhs) {
  Node n;
  n.k = Kind::Id;
  n.sort = std::move(sort);
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make_formula(std::move(n));
}

inline Formula Formula::meta(int id) {
  Node n;
  n.k = Kind::Meta;
  n.meta = id;
  return make_formula(std::move(n));
}

inline Formula::Kind Formula::kind() const { return p_->k; }
inline const std::string& Formula::pred() const { return p_->pred; }
inline const std::vector<Individual>& Formula::args() const { return p_->args; }
inline const Formula& Formula::left() const { return p_->l; }
inline const Formula& Formula::right() const { return p_->r; }
inline const SortName& Formula::qsort() const { return p_->sort; }
inline const Formula& Formula::body() const { return p_->body; }
inline const std::string& Formula::hint() const { return p_->hint; }
inline const SortName& Formula::id_sort() const { return p_->sort; }
inline const Individual& Formula::id_lhs() const { return p_->lhs; }
inline const Individual& Formula::id_rhs() const { return p_->rhs; }
inline int Formula::meta_id() const { return p_->meta; }

// ---- Path impl ----

inline Path make_path(Path::Node n) {
  return Path(std::make_shared<const Path::Node>(std::move(n)));
}

inline Path Path::refl() {
  Node n;
  n.k = Kind::Refl;
  return make_path(std::move(n));
}
inline Path Path::step(RuleLabel label, Position pos, std::optional<ProofTerm> before) {
  Node n;
  n.k = Kind::Step;
  n.label = label;
  n.pos = std::move(pos);
  n.before = std::move(before);
  return make_path(std::move(n));
}
inline Path Path::sym(Path p) {
  Node n;
  n.k = Kind::Sym;
  n.a = std::move(p);
  return make_path(std::move(n));
}
inline Path Path::trans(Path a, Path b) {
  Node n;
  n.k = Kind::Trans;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_path(std::move(n));
}
inline Path Path::pvar(int index, std::string hint) {
  Node n;
  n.k = Kind::PVar;
  n.index = index;
  n.hint = std::move(hint);
  return make_path(std::move(n));
}

inline Path::Kind Path::kind() const { return p_->k; }
inline RuleLabel Path::label() const { return p_->label; }
inline const Position& Path::pos() const { return p_->pos; }
inline const std::optional<ProofTerm>& Path::before() const { return p_->before; }
inline const Path& Path::inner() const { return p_->a; }
inline const Path& Path::first() const { return p_->a; }
inline const Path& Path::second() const { return p_->b; }
inline int Path::index() const { return p_->index; }
inline const std::string& Path::hint() const { return p_->hint; }

// ---- ProofTerm impl ----

inline ProofTerm make_term(ProofTerm::Node n) {
  return ProofTerm(std::make_shared<const ProofTerm::Node>(std::move(n)));
}

inline ProofTerm ProofTerm::bound(int index, std::string hint) {
  Node n;
  n.k = Kind::Var;
  n.index = index;
  n.name = std::move(hint);
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::var(std::string name) {
  Node n;
  n.k = Kind::Var;
  n.index = -1;
  n.name = std::move(name);
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::pair(ProofTerm a, ProofTerm b) {
  Node n;
  n.k = Kind::Pair;
  n.kids = {std::move(a), std::move(b)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::fst(ProofTerm p) {
  Node n;
  n.k = Kind::Fst;
  n.kids = {std::move(p)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::snd(ProofTerm p) {
  Node n;
  n.k = Kind::Snd;
  n.kids = {std::move(p)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::inl(ProofTerm p) {
  Node n;
  n.k = Kind::Inl;
  n.kids = {std::move(p)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::inr(ProofTerm p) {
  Node n;
  n.k = Kind::Inr;
  n.kids = {std::move(p)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::case_of(ProofTerm scrut, ProofTerm lb, ProofTerm rb,
                                    std::string lhint, std::string rhint) {
  Node n;
  n.k = Kind::Case;
  n.kids = {std::move(scrut), std::move(lb), std::move(rb)};
  n.hints = {std::move(lhint), std::move(rhint)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::lam(ProofTerm body, std::string hint) {
  Node n;
  n.k = Kind::Lam;
  n.kids = {std::move(body)};
  n.hints = {std::move(hint)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::app(ProofTerm f, ProofTerm a) {
  Node n;
  n.k = Kind::App;
  n.kids = {std::move(f), std::move(a)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::biglam(SortName sort, ProofTerm body, std::string hint) {
  Node n;
  n.k = Kind::BigLam;
  n.kids = {std::move(body)};
  n.sort = std::move(sort);
  n.hints = {std::move(hint)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::extr(ProofTerm f, Individual a) {
  Node n;
  n.k = Kind::Extr;
  n.kids = {std::move(f)};
  n.ind = std::move(a);
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::eps(Individual witness, ProofTerm proof) {
  Node n;
  n.k = Kind::Eps;
  n.kids = {std::move(proof)};
  n.ind = std::move(witness);
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::inst(ProofTerm scrut, ProofTerm body,
                                 std::string ind_hint, std::string proof_hint) {
  Node n;
  n.k = Kind::Inst;
  n.kids = {std::move(scrut), std::move(body)};
  n.hints = {std::move(ind_hint), std::move(proof_hint)};
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::path_intro(Path p, Individual lhs, Individual rhs) {
  Node n;
  n.k = Kind::PathIntro;
  n.path = std::move(p);
  n.plhs = std::move(lhs);
  n.prhs = std::move(rhs);
  return make_term(std::move(n));
}
inline ProofTerm ProofTerm::rewr(ProofTerm scrut, ProofTerm body, std::string hint) {
  Node n;
  n.k = Kind::Rewr;
  n.kids = {std::move(scrut), std::move(body)};
  n.hints = {std::move(hint)};
  return make_term(std::move(n));
}

inline ProofTerm::Kind ProofTerm::kind() const { return p_->k; }
inline bool ProofTerm::is_bound_var() const {
  return p_->k == Kind::Var && p_->index >= 0;
}
inline int ProofTerm::index() const { return p_->index; }
inline const std::string& ProofTerm::name() const { return p_->name; }
inline const std::vector<ProofTerm>& ProofTerm::kids() const { return p_->kids; }
inline const SortName& ProofTerm::blsort() const { return p_->sort; }
inline const Individual& ProofTerm::ind() const { return p_->ind; }
inline const Path& ProofTerm::path() const { return p_->path; }
inline const Individual& ProofTerm::path_lhs() const { return p_->plhs; }
inline const Individual& ProofTerm::path_rhs() const { return p_->prhs; }
inline const std::vector<std::string>& ProofTerm::hints() const { return p_->hints; }

inline ProofTerm ProofTerm::with_kids(std::vector<ProofTerm> kids) const {
  Node n = *p_;
  n.kids = std::move(kids);
  return make_term(std::move(n));
}

// ---- equality (alpha-equivalence by construction) ----

inline bool Path::operator==(const Path& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (p_->k != o.p_->k) return false;
  switch (p_->k) {
    case Kind::Refl: return true;
    case Kind::Step: return p_->label == o.p_->label && p_->pos == o.p_->pos;
    case Kind::Sym: return p_->a == o.p_->a;
    case Kind::Trans: return p_->a == o.p_->a && p_->b == o.p_->b;
    case Kind::PVar: return p_->index == o.p_->index;
  }
  return false;
}

inline bool Formula::operator==(const Formula& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (p_->k != o.p_->k) return false;
  switch (p_->k) {
    case Kind::Atom:
    case Kind::NegAtom:
      return p_->pred == o.p_->pred && p_->args == o.p_->args;
    case Kind::Conj:
    case Kind::Disj:
    case Kind::Impl:
      return p_->l == o.p_->l && p_->r == o.p_->r;
    case Kind::Forall:
    case Kind::Exists:
      return p_->sort == o.p_->sort && p_->body == o.p_->body;
    case Kind::Id:
      return p_->sort == o.p_->sort && p_->lhs == o.p_->lhs && p_->rhs == o.p_->rhs;
    case Kind::Meta:
      return p_->meta == o.p_->meta;
  }
  return false;
}

inline bool ProofTerm::operator==(const ProofTerm& o) const {
  if (p_ == o.p_) return true;
  if (!p_ || !o.p_) return false;
  if (p_->k != o.p_->k) return false;
  switch (p_->k) {
    case Kind::Var:
      if (p_->index != o.p_->index) return false;
      return p_->index >= 0 || p_->name == o.p_->name;
    case Kind::BigLam:
      if (p_->sort != o.p_->sort) return false;
      break;
    case Kind::Extr:
    case Kind::Eps:
      if (p_->ind != o.p_->ind) return false;
      break;
    case Kind::PathIntro:
      return p_->path == o.p_->path && p_->plhs == o.p_->plhs && p_->prhs == o.p_->prhs;
    default:
      break;
  }
  return p_->kids == o.p_->kids;
}

// Named entry points for alpha-equivalence.
inline bool alpha_eq(const ProofTerm& a, const ProofTerm& b) { return a == b; }
inline bool alpha_eq(const Formula& a, const Formula& b) { return a == b; }

// ---------------------------------------------------------------------------
// Canonical / non-canonical classification. Variables count as
// non-canonical: they stand in elimination position and block weak-head
// reduction just like a stuck destructor.
// ---------------------------------------------------------------------------

inline bool is_canonical(const ProofTerm& t) {
  switch (t.kind()) {
    case ProofTerm::Kind::Pair:
    case ProofTerm::Kind::Inl:
    case ProofTerm::Kind::Inr:
    case ProofTerm::Kind::Lam:
    case ProofTerm::Kind::BigLam:
    case ProofTerm::Kind::Eps:
    case ProofTerm::Kind::PathIntro:
      return true;
    default:
      return false;
  }
}
inline bool is_non_canonical(const ProofTerm& t) { return !is_canonical(t); }

// ---------------------------------------------------------------------------
// Binder bookkeeping: how many slots each child of a node sits under.
// ---------------------------------------------------------------------------

inline int binders_of_kid(const ProofTerm& t, size_t kid) {
  switch (t.kind()) {
    case ProofTerm::Kind::Lam:
    case ProofTerm::Kind::BigLam:
      return 1;
    case ProofTerm::Kind::Case:
      return kid == 0 ? 0 : 1;
    case ProofTerm::Kind::Inst:
      return kid == 0 ? 0 : 2;
    case ProofTerm::Kind::Rewr:
      return kid == 0 ? 0 : 1;
    default:
      return 0;
  }
}

// What kind of thing can stand for a variable.
struct SubstValue {
  enum class Kind { Proof, Ind, PathVal } kind;
  ProofTerm t;
  Individual i;
  Path p;

  static SubstValue proof(ProofTerm x) { return {Kind::Proof, std::move(x), {}, {}}; }
  static SubstValue individual(Individual x) { return {Kind::Ind, {}, std::move(x), {}}; }
  static SubstValue path(Path x) { return {Kind::PathVal, {}, {}, std::move(x)}; }
};

struct BindingError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---- shift ----

Individual shift(const Individual& x, int by, int cutoff);
Formula shift(const Formula& x, int by, int cutoff);
Path shift(const Path& x, int by, int cutoff);
ProofTerm shift(const ProofTerm& x, int by, int cutoff);

inline Individual shift(const Individual& x, int by, int cutoff) {
  if (x.kind() == Individual::Kind::Bound && x.index() >= cutoff)
    return Individual::bound(x.index() + by, x.name());
  return x;
}

inline Formula shift(const Formula& f, int by, int cutoff) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom: {
      std::vector<Individual> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(shift(a, by, cutoff));
      return f.kind() == K::Atom ? Formula::atom(f.pred(), std::move(args))
                                 : Formula::natom(f.pred(), std::move(args));
    }
    case K::Conj: return Formula::conj(shift(f.left(), by, cutoff), shift(f.right(), by, cutoff));
    case K::Disj: return Formula::disj(shift(f.left(), by, cutoff), shift(f.right(), by, cutoff));
    case K::Impl: return Formula::impl(shift(f.left(), by, cutoff), shift(f.right(), by, cutoff));
    case K::Forall:
      return Formula::forall(f.qsort(), shift(f.body(), by, cutoff + 1), f.hint());
    case K::Exists:
      return Formula::exists(f.qsort(), shift(f.body(), by, cutoff + 1), f.hint());
    case K::Id:
      return Formula::id(f.id_sort(), shift(f.id_lhs(), by, cutoff), shift(f.id_rhs(), by, cutoff));
    case K::Meta:
      return f;  // meta solutions are binder-closed
  }
  throw BindingError("shift: bad formula");
}

inline Path shift(const Path& p, int by, int cutoff) {
  using K = Path::Kind;
  switch (p.kind()) {
    case K::Refl: return p;
    case K::Step: {
      std::optional<ProofTerm> before;
      if (p.before()) before = shift(*p.before(), by, cutoff);
      return Path::step(p.label(), p.pos(), std::move(before));
    }
    case K::Sym: return Path::sym(shift(p.inner(), by, cutoff));
    case K::Trans:
      return Path::trans(shift(p.first(), by, cutoff), shift(p.second(), by, cutoff));
    case K::PVar:
      if (p.index() >= cutoff) return Path::pvar(p.index() + by, p.hint());
      return p;
  }
  throw BindingError("shift: bad path");
}

inline ProofTerm shift(const ProofTerm& t, int by, int cutoff) {
  using K = ProofTerm::Kind;
  if (t.kind() == K::Var) {
    if (t.index() >= cutoff && t.index() >= 0)
      return ProofTerm::bound(t.index() + by, t.name());
    return t;
  }
  if (t.kind() == K::PathIntro) {
    return ProofTerm::path_intro(shift(t.path(), by, cutoff),
                                 shift(t.path_lhs(), by, cutoff),
                                 shift(t.path_rhs(), by, cutoff));
  }
  ProofTerm::Node n = t.node();
  n.ind = shift(n.ind, by, cutoff);
  std::vector<ProofTerm> kids;
  kids.reserve(t.kids().size());
  for (size_t i = 0; i < t.kids().size(); ++i)
    kids.push_back(shift(t.kids()[i], by, cutoff + binders_of_kid(t, i)));
  n.kids = std::move(kids);
  return make_term(std::move(n));
}

// ---- open: replace the bound slot `depth` with a value, closing one binder ----

Individual open_at(const Individual& x, int depth, const SubstValue& v);
Formula open_at(const Formula& x, int depth, const SubstValue& v);
Path open_at(const Path& x, int depth, const SubstValue& v);
ProofTerm open_at(const ProofTerm& x, int depth, const SubstValue& v);

inline Individual open_at(const Individual& x, int depth, const SubstValue& v) {
  if (x.kind() != Individual::Kind::Bound) return x;
  if (x.index() == depth) {
    if (v.kind != SubstValue::Kind::Ind)
      throw BindingError("bound individual instantiated with non-individual");
    return shift(v.i, depth, 0);
  }
  if (x.index() > depth) return Individual::bound(x.index() - 1, x.name());
  return x;
}

inline Formula open_at(const Formula& f, int depth, const SubstValue& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom: {
      std::vector<Individual> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(open_at(a, depth, v));
      return f.kind() == K::Atom ? Formula::atom(f.pred(), std::move(args))
                                 : Formula::natom(f.pred(), std::move(args));
    }
    case K::Conj: return Formula::conj(open_at(f.left(), depth, v), open_at(f.right(), depth, v));
    case K::Disj: return Formula::disj(open_at(f.left(), depth, v), open_at(f.right(), depth, v));
    case K::Impl: return Formula::impl(open_at(f.left(), depth, v), open_at(f.right(), depth, v));
    case K::Forall: return Formula::forall(f.qsort(), open_at(f.body(), depth + 1, v), f.hint());
    case K::Exists: return Formula::exists(f.qsort(), open_at(f.body(), depth + 1, v), f.hint());
    case K::Id:
      return Formula::id(f.id_sort(), open_at(f.id_lhs(), depth, v), open_at(f.id_rhs(), depth, v));
    case K::Meta:
      return f;
  }
  throw BindingError("open: bad formula");
}

inline Path open_at(const Path& p, int depth, const SubstValue& v) {
  using K = Path::Kind;
  switch (p.kind()) {
    case K::Refl: return p;
    case K::Step: {
      std::optional<ProofTerm> before;
      if (p.before()) before = open_at(*p.before(), depth, v);
      return Path::step(p.label(), p.pos(), std::move(before));
    }
    case K::Sym: return Path::sym(open_at(p.inner(), depth, v));
    case K::Trans:
      return Path::trans(open_at(p.first(), depth, v), open_at(p.second(), depth, v));
    case K::PVar:
      if (p.index() == depth) {
        if (v.kind != SubstValue::Kind::PathVal)
          throw BindingError("bound path variable instantiated with non-path");
        return shift(v.p, depth, 0);
      }
      if (p.index() > depth) return Path::pvar(p.index() - 1, p.hint());
      return p;
  }
  throw BindingError("open: bad path");
}

inline ProofTerm open_at(const ProofTerm& t, int depth, const SubstValue& v) {
  using K = ProofTerm::Kind;
  if (t.kind() == K::Var) {
    if (t.index() == depth) {
      if (v.kind != SubstValue::Kind::Proof)
        throw BindingError("bound proof variable instantiated with non-proof");
      return shift(v.t, depth, 0);
    }
    if (t.index() > depth) return ProofTerm::bound(t.index() - 1, t.name());
    return t;
  }
  if (t.kind() == K::PathIntro) {
    return ProofTerm::path_intro(open_at(t.path(), depth, v),
                                 open_at(t.path_lhs(), depth, v),
                                 open_at(t.path_rhs(), depth, v));
  }
  ProofTerm::Node n = t.node();
  n.ind = open_at(n.ind, depth, v);
  std::vector<ProofTerm> kids;
  kids.reserve(t.kids().size());
  for (size_t i = 0; i < t.kids().size(); ++i)
    kids.push_back(open_at(t.kids()[i], depth + binders_of_kid(t, i), v));
  n.kids = std::move(kids);
  return make_term(std::move(n));
}

// Instantiate the innermost binder of a body that sits under exactly one
// more binder than its surroundings.
inline ProofTerm instantiate(const ProofTerm& body, const SubstValue& v) {
  return open_at(body, 0, v);
}
inline Formula instantiate(const Formula& body, const SubstValue& v) {
  return open_at(body, 0, v);
}

// ---- free-name substitution (capture-free by construction) ----

Individual subst_free(const Individual& x, const std::string& name, const SubstValue& v);
Formula subst_free(const Formula& x, const std::string& name, const SubstValue& v);
Path subst_free(const Path& x, const std::string& name, const SubstValue& v);
ProofTerm subst_free(const ProofTerm& x, const std::string& name, const SubstValue& v);

inline Individual subst_free(const Individual& x, const std::string& name,
                             const SubstValue& v) {
  if (x.kind() == Individual::Kind::Var && x.name() == name) {
    if (v.kind != SubstValue::Kind::Ind)
      throw BindingError("individual variable substituted with non-individual");
    return v.i;
  }
  return x;
}

inline Formula subst_free(const Formula& f, const std::string& name, const SubstValue& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom: {
      std::vector<Individual> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(subst_free(a, name, v));
      return f.kind() == K::Atom ? Formula::atom(f.pred(), std::move(args))
                                 : Formula::natom(f.pred(), std::move(args));
    }
    case K::Conj: return Formula::conj(subst_free(f.left(), name, v), subst_free(f.right(), name, v));
    case K::Disj: return Formula::disj(subst_free(f.left(), name, v), subst_free(f.right(), name, v));
    case K::Impl: return Formula::impl(subst_free(f.left(), name, v), subst_free(f.right(), name, v));
    case K::Forall: return Formula::forall(f.qsort(), subst_free(f.body(), name, v), f.hint());
    case K::Exists: return Formula::exists(f.qsort(), subst_free(f.body(), name, v), f.hint());
    case K::Id:
      return Formula::id(f.id_sort(), subst_free(f.id_lhs(), name, v),
                         subst_free(f.id_rhs(), name, v));
    case K::Meta:
      return f;
  }
  throw BindingError("subst: bad formula");
}

inline Path subst_free(const Path& p, const std::string& name, const SubstValue& v) {
  using K = Path::Kind;
  switch (p.kind()) {
    case K::Refl:
    case K::PVar:
      return p;
    case K::Step: {
      std::optional<ProofTerm> before;
      if (p.before()) before = subst_free(*p.before(), name, v);
      return Path::step(p.label(), p.pos(), std::move(before));
    }
    case K::Sym: return Path::sym(subst_free(p.inner(), name, v));
    case K::Trans:
      return Path::trans(subst_free(p.first(), name, v), subst_free(p.second(), name, v));
  }
  throw BindingError("subst: bad path");
}

inline ProofTerm subst_free(const ProofTerm& t, const std::string& name,
                            const SubstValue& v) {
  using K = ProofTerm::Kind;
  if (t.kind() == K::Var) {
    if (t.index() < 0 && t.name() == name) {
      if (v.kind != SubstValue::Kind::Proof)
        throw BindingError("proof variable substituted with non-proof");
      return v.t;
    }
    return t;
  }
  if (t.kind() == K::PathIntro) {
    return ProofTerm::path_intro(subst_free(t.path(), name, v),
                                 subst_free(t.path_lhs(), name, v),
                                 subst_free(t.path_rhs(), name, v));
  }
  ProofTerm::Node n = t.node();
  n.ind = subst_free(n.ind, name, v);
  std::vector<ProofTerm> kids;
  kids.reserve(t.kids().size());
  for (const auto& k : t.kids()) kids.push_back(subst_free(k, name, v));
  n.kids = std::move(kids);
  return make_term(std::move(n));
}

// ---------------------------------------------------------------------------
// Size, free names, dangling-index checks, subterm navigation.
// ---------------------------------------------------------------------------

inline int term_size(const ProofTerm& t) {
  int n = 1;
  for (const auto& k : t.kids()) n += term_size(k);
  return n;
}

inline void collect_free_names(const Individual& x, std::set<std::string>& out) {
  if (x.kind() != Individual::Kind::Bound) out.insert(x.name());
}
inline void collect_free_names(const Formula& f, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom:
      for (const auto& a : f.args()) collect_free_names(a, out);
      return;
    case K::Conj:
    case K::Disj:
    case K::Impl:
      collect_free_names(f.left(), out);
      collect_free_names(f.right(), out);
      return;
    case K::Forall:
    case K::Exists:
      collect_free_names(f.body(), out);
      return;
    case K::Id:
      collect_free_names(f.id_lhs(), out);
      collect_free_names(f.id_rhs(), out);
      return;
    case K::Meta:
      return;
  }
}
inline void collect_free_names(const ProofTerm& t, std::set<std::string>& out) {
  if (t.kind() == ProofTerm::Kind::Var) {
    if (t.index() < 0) out.insert(t.name());
    return;
  }
  if (t.kind() == ProofTerm::Kind::PathIntro) {
    collect_free_names(t.path_lhs(), out);
    collect_free_names(t.path_rhs(), out);
    return;
  }
  collect_free_names(t.ind(), out);
  for (const auto& k : t.kids()) collect_free_names(k, out);
}

// Largest bound index reaching out of the node, minus depth; < 0 when closed.
int max_dangling(const ProofTerm& t, int depth);
inline int max_dangling(const Individual& x, int depth) {
  if (x.kind() == Individual::Kind::Bound) return x.index() - depth;
  return -1;
}
inline int max_dangling(const Formula& f, int depth) {
  using K = Formula::Kind;
  int m = -1;
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom:
      for (const auto& a : f.args()) m = std::max(m, max_dangling(a, depth));
      return m;
    case K::Conj:
    case K::Disj:
    case K::Impl:
      return std::max(max_dangling(f.left(), depth), max_dangling(f.right(), depth));
    case K::Forall:
    case K::Exists:
      return max_dangling(f.body(), depth + 1);
    case K::Id:
      return std::max(max_dangling(f.id_lhs(), depth), max_dangling(f.id_rhs(), depth));
    case K::Meta:
      return -1;
  }
  return m;
}
inline int max_dangling(const Path& p, int depth) {
  using K = Path::Kind;
  switch (p.kind()) {
    case K::Refl: return -1;
    case K::Step: return p.before() ? max_dangling(*p.before(), depth) : -1;
    case K::Sym: return max_dangling(p.inner(), depth);
    case K::Trans:
      return std::max(max_dangling(p.first(), depth), max_dangling(p.second(), depth));
    case K::PVar: return p.index() - depth;
  }
  return -1;
}
inline int max_dangling(const ProofTerm& t, int depth) {
  if (t.kind() == ProofTerm::Kind::Var)
    return t.index() < 0 ? -1 : t.index() - depth;
  if (t.kind() == ProofTerm::Kind::PathIntro) {
    int m = max_dangling(t.path(), depth);
    m = std::max(m, max_dangling(t.path_lhs(), depth));
    return std::max(m, max_dangling(t.path_rhs(), depth));
  }
  int m = max_dangling(t.ind(), depth);
  for (size_t i = 0; i < t.kids().size(); ++i)
    m = std::max(m, max_dangling(t.kids()[i], depth + binders_of_kid(t, i)));
  return m;
}

inline bool is_closed(const ProofTerm& t) { return max_dangling(t, 0) < 0; }
inline bool is_closed(const Formula& f) { return max_dangling(f, 0) < 0; }

inline const ProofTerm* subterm_at(const ProofTerm& t, const Position& pos,
                                   size_t from = 0) {
  if (from == pos.size()) return &t;
  int k = pos[from];
  if (k < 0 || static_cast<size_t>(k) >= t.kids().size()) return nullptr;
  return subterm_at(t.kids()[k], pos, from + 1);
}

inline std::optional<ProofTerm> replace_at(const ProofTerm& t, const Position& pos,
                                           const ProofTerm& repl, size_t from = 0) {
  if (from == pos.size()) return repl;
  int k = pos[from];
  if (k < 0 || static_cast<size_t>(k) >= t.kids().size()) return std::nullopt;
  auto sub = replace_at(t.kids()[k], pos, repl, from + 1);
  if (!sub) return std::nullopt;
  auto kids = t.kids();
  kids[static_cast<size_t>(k)] = std::move(*sub);
  return t.with_kids(std::move(kids));
}

// ---------------------------------------------------------------------------
// Path canonicalisation: flatten to a word of oriented atoms, push sym
// inward, drop refl, cancel adjacent inverse pairs. Step payloads are
// carried along; two steps cancel only if their payloads agree (a payload
// pins down which redex the step contracted).
// ---------------------------------------------------------------------------

struct PathAtom {
  bool forward = true;
  bool is_var = false;
  int var_index = -1;
  std::string var_hint;
  RuleLabel label = RuleLabel::BetaFst;
  Position pos;
  std::optional<ProofTerm> before;

  // Same generator, regardless of orientation or payload.
  bool same_generator(const PathAtom& o) const {
    if (is_var != o.is_var) return false;
    if (is_var) return var_index == o.var_index;
    return label == o.label && pos == o.pos;
  }
  bool cancels(const PathAtom& o) const {
    if (forward == o.forward || !same_generator(o)) return false;
    if (is_var) return true;
    if (before.has_value() != o.before.has_value()) return false;
    return !before || *before == *o.before;
  }
};

inline void flatten_path(const Path& p, bool fwd, std::vector<PathAtom>& out) {
  switch (p.kind()) {
    case Path::Kind::Refl:
      return;
    case Path::Kind::Step: {
      PathAtom a;
      a.forward = fwd;
      a.label = p.label();
      a.pos = p.pos();
      a.before = p.before();
      if (!out.empty() && out.back().cancels(a))
        out.pop_back();
      else
        out.push_back(std::move(a));
      return;
    }
    case Path::Kind::PVar: {
      PathAtom a;
      a.forward = fwd;
      a.is_var = true;
      a.var_index = p.index();
      a.var_hint = p.hint();
      if (!out.empty() && out.back().cancels(a))
        out.pop_back();
      else
        out.push_back(std::move(a));
      return;
    }
    case Path::Kind::Sym:
      flatten_path(p.inner(), !fwd, out);
      return;
    case Path::Kind::Trans:
      if (fwd) {
        flatten_path(p.first(), true, out);
        flatten_path(p.second(), true, out);
      } else {
        flatten_path(p.second(), false, out);
        flatten_path(p.first(), false, out);
      }
      return;
  }
}

inline std::vector<PathAtom> path_atoms(const Path& p) {
  std::vector<PathAtom> out;
  flatten_path(p, true, out);
  return out;
}

inline Path atom_to_path(const PathAtom& a) {
  Path base = a.is_var ? Path::pvar(a.var_index, a.var_hint)
                       : Path::step(a.label, a.pos, a.before);
  return a.forward ? base : Path::sym(base);
}

// Right-nested trans of the reduced word; refl when the word is empty.
inline Path canonicalize(const Path& p) {
  auto atoms = path_atoms(p);
  if (atoms.empty()) return Path::refl();
  Path out = atom_to_path(atoms.back());
  for (size_t i = atoms.size() - 1; i-- > 0;)
    out = Path::trans(atom_to_path(atoms[i]), out);
  return out;
}

// Equality in the free groupoid (payloads ignored).
inline bool path_eq_canonical(const Path& a, const Path& b) {
  auto wa = path_atoms(a);
  auto wb = path_atoms(b);
  if (wa.size() != wb.size()) return false;
  for (size_t i = 0; i < wa.size(); ++i) {
    if (wa[i].forward != wb[i].forward || !wa[i].same_generator(wb[i])) return false;
  }
  return true;
}

}  // namespace ndgames
