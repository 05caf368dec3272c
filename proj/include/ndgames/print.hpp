#pragma once

// Deterministic printing. Bound variables are renamed x0, x1, ... by binder
// depth (skipping any name that occurs free in the printed node), so output
// re-parses to an alpha-equal value regardless of the hints it carried.

#include <sstream>
#include <string>

#include "ndgames/syntax.hpp"

namespace ndgames {

namespace detail {

struct Namer {
  std::set<std::string> taken;
  std::vector<std::string> stack;  // innermost last
  int next = 0;

  explicit Namer(const std::set<std::string>& free_names) : taken(free_names) {}

  std::string push() {
    std::string n;
    do {
      n = "x" + std::to_string(next++);
    } while (taken.count(n));
    stack.push_back(n);
    return n;
  }
  void pop() { stack.pop_back(); }
  std::string resolve(int index, const std::string& hint) const {
    if (index >= 0 && static_cast<size_t>(index) < stack.size())
      return stack[stack.size() - 1 - static_cast<size_t>(index)];
    return "?" + (hint.empty() ? std::to_string(index) : hint);
  }
};

inline std::string print_ind(const Individual& i, const Namer& nm) {
  if (i.kind() == Individual::Kind::Bound) return nm.resolve(i.index(), i.name());
  return i.name();
}

void print_path(std::ostream& os, const Path& p, Namer& nm);
void print_term(std::ostream& os, const ProofTerm& t, Namer& nm);

// Precedence: impl and quantifier bodies bind loosest (1), then disj (2),
// conj (3), units (4). A child is parenthesised when its level is below
// what its slot requires.
inline void print_formula(std::ostream& os, const Formula& f, Namer& nm, int min_prec) {
  using K = Formula::Kind;
  auto wrap = [&](int prec, auto&& body) {
    bool paren = prec < min_prec;
    if (paren) os << '(';
    body();
    if (paren) os << ')';
  };
  switch (f.kind()) {
    case K::Atom:
    case K::NegAtom:
      if (f.kind() == K::NegAtom) os << '~';
      os << f.pred();
      if (!f.args().empty()) {
        os << '(';
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ',';
          os << print_ind(f.args()[i], nm);
        }
        os << ')';
      }
      return;
    case K::Conj:
      wrap(3, [&] {
        print_formula(os, f.left(), nm, 3);
        os << " & ";
        print_formula(os, f.right(), nm, 4);
      });
      return;
    case K::Disj:
      wrap(2, [&] {
        print_formula(os, f.left(), nm, 2);
        os << " | ";
        print_formula(os, f.right(), nm, 3);
      });
      return;
    case K::Impl:
      wrap(1, [&] {
        print_formula(os, f.left(), nm, 2);
        os << " -> ";
        print_formula(os, f.right(), nm, 1);
      });
      return;
    case K::Forall:
    case K::Exists:
      wrap(1, [&] {
        os << (f.kind() == K::Forall ? "forall " : "exists ");
        std::string n = nm.push();
        os << n << ':' << f.qsort() << ". ";
        print_formula(os, f.body(), nm, 1);
        nm.pop();
      });
      return;
    case K::Id:
      os << "Id(" << f.id_sort() << ',' << print_ind(f.id_lhs(), nm) << ','
         << print_ind(f.id_rhs(), nm) << ')';
      return;
    case K::Meta:
      os << "?M" << f.meta_id();  // checker-internal, shows up only in errors
      return;
  }
}

inline void print_path(std::ostream& os, const Path& p, Namer& nm) {
  using K = Path::Kind;
  switch (p.kind()) {
    case K::Refl:
      os << "rho";
      return;
    case K::Step:
      os << rule_label_name(p.label()) << '@' << position_string(p.pos());
      return;
    case K::Sym:
      os << "sym(";
      print_path(os, p.inner(), nm);
      os << ')';
      return;
    case K::Trans:
      os << "tr(";
      print_path(os, p.first(), nm);
      os << ',';
      print_path(os, p.second(), nm);
      os << ')';
      return;
    case K::PVar:
      os << nm.resolve(p.index(), p.hint());
      return;
  }
}

inline void print_term(std::ostream& os, const ProofTerm& t, Namer& nm) {
  using K = ProofTerm::Kind;
  auto kid = [&](size_t i) -> const ProofTerm& { return t.kids()[i]; };
  switch (t.kind()) {
    case K::Var:
      os << (t.index() >= 0 ? nm.resolve(t.index(), t.name()) : t.name());
      return;
    case K::Pair:
      os << "pair(";
      print_term(os, kid(0), nm);
      os << ',';
      print_term(os, kid(1), nm);
      os << ')';
      return;
    case K::Fst:
    case K::Snd:
    case K::Inl:
    case K::Inr: {
      const char* h = t.kind() == K::Fst   ? "fst"
                      : t.kind() == K::Snd ? "snd"
                      : t.kind() == K::Inl ? "inl"
                                           : "inr";
      os << h << '(';
      print_term(os, kid(0), nm);
      os << ')';
      return;
    }
    case K::Case: {
      os << "case(";
      print_term(os, kid(0), nm);
      os << ',';
      std::string xl = nm.push();
      os << xl << " => ";
      print_term(os, kid(1), nm);
      nm.pop();
      os << ',';
      std::string xr = nm.push();
      os << xr << " => ";
      print_term(os, kid(2), nm);
      nm.pop();
      os << ')';
      return;
    }
    case K::Lam: {
      os << "lam(";
      std::string x = nm.push();
      os << x << ". ";
      print_term(os, kid(0), nm);
      nm.pop();
      os << ')';
      return;
    }
    case K::App:
      os << "app(";
      print_term(os, kid(0), nm);
      os << ',';
      print_term(os, kid(1), nm);
      os << ')';
      return;
    case K::BigLam: {
      os << "Lam(";
      std::string x = nm.push();
      os << x << ':' << t.blsort() << ". ";
      print_term(os, kid(0), nm);
      nm.pop();
      os << ')';
      return;
    }
    case K::Extr:
      os << "extr(";
      print_term(os, kid(0), nm);
      os << ',' << print_ind(t.ind(), nm) << ')';
      return;
    case K::Eps:
      os << "eps(" << print_ind(t.ind(), nm) << ',';
      print_term(os, kid(0), nm);
      os << ')';
      return;
    case K::Inst: {
      os << "inst(";
      print_term(os, kid(0), nm);
      os << ',';
      std::string xt = nm.push();
      std::string xg = nm.push();
      os << xt << ' ' << xg << " => ";
      print_term(os, kid(1), nm);
      nm.pop();
      nm.pop();
      os << ')';
      return;
    }
    case K::PathIntro:
      os << "path(";
      print_path(os, t.path(), nm);
      os << ',' << print_ind(t.path_lhs(), nm) << ',' << print_ind(t.path_rhs(), nm)
         << ')';
      return;
    case K::Rewr: {
      os << "rewr(";
      print_term(os, kid(0), nm);
      os << ',';
      std::string xt = nm.push();
      os << xt << " => ";
      print_term(os, kid(1), nm);
      nm.pop();
      os << ')';
      return;
    }
  }
}

}  // namespace detail

inline std::string print(const Formula& f) {
  std::set<std::string> free;
  collect_free_names(f, free);
  detail::Namer nm(free);
  std::ostringstream os;
  detail::print_formula(os, f, nm, 1);
  return os.str();
}

inline std::string print(const ProofTerm& t) {
  std::set<std::string> free;
  collect_free_names(t, free);
  detail::Namer nm(free);
  std::ostringstream os;
  detail::print_term(os, t, nm);
  return os.str();
}

inline std::string print(const Path& p) {
  detail::Namer nm({});
  std::ostringstream os;
  detail::print_path(os, p, nm);
  return os.str();
}

inline std::string print(const Individual& i) {
  detail::Namer nm({});
  return detail::print_ind(i, nm);
}

}  // namespace ndgames
