// Copyright 2026 The atlkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atlkd/printer.hpp"

#include <optional>
#include <sstream>

namespace atlkd {

namespace {

// Precedence levels, loosest to tightest. Modal until-forms carry their own
// mandatory parentheses and are self-delimiting, hence atom-level.
constexpr int kIff = 0;
constexpr int kImplies = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kUnary = 4;
constexpr int kAtomic = 5;

bool is_false(const Formula& f) { return f.kind() == FormulaKind::False; }

// ¬x is x -> false.
const Formula* match_not(const Formula& f) {
  if (f.kind() == FormulaKind::Implies && is_false(f.child(1)))
    return &f.child(0);
  return nullptr;
}

bool is_true(const Formula& f) {
  const Formula* n = match_not(f);
  return n != nullptr && is_false(*n);
}

struct Pair {
  const Formula* a;
  const Formula* b;
};

// a & b is !(a -> !b).
std::optional<Pair> match_and(const Formula& f) {
  const Formula* inner = match_not(f);
  if (inner == nullptr || inner->kind() != FormulaKind::Implies) return {};
  const Formula* nb = match_not(inner->child(1));
  if (nb == nullptr) return {};
  return Pair{&inner->child(0), nb};
}

// a | b is !a -> b.
std::optional<Pair> match_or(const Formula& f) {
  if (f.kind() != FormulaKind::Implies) return {};
  const Formula* na = match_not(f.child(0));
  if (na == nullptr) return {};
  return Pair{na, &f.child(1)};
}

// a <-> b is (a -> b) & (b -> a).
std::optional<Pair> match_iff(const Formula& f) {
  auto conj = match_and(f);
  if (!conj) return {};
  if (conj->a->kind() != FormulaKind::Implies ||
      conj->b->kind() != FormulaKind::Implies)
    return {};
  if (conj->a->child(0) != conj->b->child(1)) return {};
  if (conj->a->child(1) != conj->b->child(0)) return {};
  return Pair{&conj->a->child(0), &conj->a->child(1)};
}

// φ W ψ encodes as ¬(¬ψ U (¬ψ & ¬φ)) under the dual until constructor.
// Given the until arguments, recovers (φ, ψ) if they have that shape.
std::optional<Pair> match_weak_args(const Formula& left, const Formula& right) {
  const Formula* npsi = match_not(left);
  if (npsi == nullptr) return {};
  auto conj = match_and(right);
  if (!conj) return {};
  if (*conj->a != left) return {};
  const Formula* nphi = match_not(*conj->b);
  if (nphi == nullptr) return {};
  (void)npsi;
  return Pair{nphi, match_not(left)};
}

void render_rec(const Formula& f, int min_prec, std::ostringstream& os);

void child_at(const Formula& f, int prec, std::ostringstream& os) {
  render_rec(f, prec, os);
}

void render_core(const Formula& f, int min_prec, std::ostringstream& os) {
  const auto paren = [&os, min_prec](int prec, auto body) {
    const bool need = prec < min_prec;
    if (need) os << "(";
    body();
    if (need) os << ")";
  };
  switch (f.kind()) {
    case FormulaKind::False:
      os << "false";
      return;
    case FormulaKind::Atom:
      os << f.atom_name();
      return;
    case FormulaKind::Implies:
      paren(kImplies, [&] {
        child_at(f.child(0), kImplies + 1, os);
        os << " -> ";
        child_at(f.child(1), kImplies, os);
      });
      return;
    case FormulaKind::DKnows:
      paren(kUnary, [&] {
        os << "K{" << f.coalition().to_string() << "} ";
        child_at(f.child(0), kUnary, os);
      });
      return;
    case FormulaKind::CoopNext:
      paren(kUnary, [&] {
        os << "<<" << f.coalition().to_string() << ">> X ";
        child_at(f.child(0), kUnary, os);
      });
      return;
    case FormulaKind::CoopUntil:
      if (is_true(f.child(0))) {
        paren(kUnary, [&] {
          os << "<<" << f.coalition().to_string() << ">> F ";
          child_at(f.child(1), kUnary, os);
        });
      } else {
        os << "<<" << f.coalition().to_string() << ">> (";
        child_at(f.child(0), kIff, os);
        os << " U ";
        child_at(f.child(1), kIff, os);
        os << ")";
      }
      return;
    case FormulaKind::DualCoopUntil:
      if (is_true(f.child(0))) {
        paren(kUnary, [&] {
          os << "[[" << f.coalition().to_string() << "]] F ";
          child_at(f.child(1), kUnary, os);
        });
      } else {
        os << "[[" << f.coalition().to_string() << "]] (";
        child_at(f.child(0), kIff, os);
        os << " U ";
        child_at(f.child(1), kIff, os);
        os << ")";
      }
      return;
    case FormulaKind::ExistsNext:
      paren(kUnary, [&] {
        os << "E X ";
        child_at(f.child(0), kUnary, os);
      });
      return;
    case FormulaKind::ExistsUntil:
      if (is_true(f.child(0))) {
        paren(kUnary, [&] {
          os << "E F ";
          child_at(f.child(1), kUnary, os);
        });
      } else {
        os << "E (";
        child_at(f.child(0), kIff, os);
        os << " U ";
        child_at(f.child(1), kIff, os);
        os << ")";
      }
      return;
    case FormulaKind::ForallUntil:
      if (is_true(f.child(0))) {
        paren(kUnary, [&] {
          os << "A F ";
          child_at(f.child(1), kUnary, os);
        });
      } else {
        os << "A (";
        child_at(f.child(0), kIff, os);
        os << " U ";
        child_at(f.child(1), kIff, os);
        os << ")";
      }
      return;
  }
}

// Tries to print a negation-based sugar form; returns false when `f` is not
// a !-headed pattern, in which case the caller prints the core form.
bool render_negated(const Formula& f, int min_prec, std::ostringstream& os) {
  const Formula* inner = match_not(f);
  if (inner == nullptr) return false;
  const auto paren = [&os, min_prec](int prec, auto body) {
    const bool need = prec < min_prec;
    if (need) os << "(";
    body();
    if (need) os << ")";
  };

  if (is_true(f)) {
    os << "true";
    return true;
  }
  if (auto iff = match_iff(f)) {
    paren(kIff, [&] {
      child_at(*iff->a, kIff + 1, os);
      os << " <-> ";
      child_at(*iff->b, kIff, os);
    });
    return true;
  }
  if (auto conj = match_and(f)) {
    paren(kAnd, [&] {
      child_at(*conj->a, kAnd, os);
      os << " & ";
      child_at(*conj->b, kAnd + 1, os);
    });
    return true;
  }

  switch (inner->kind()) {
    case FormulaKind::DKnows: {
      if (const Formula* body = match_not(inner->child(0))) {
        paren(kUnary, [&] {
          os << "P{" << inner->coalition().to_string() << "} ";
          child_at(*body, kUnary, os);
        });
        return true;
      }
      return false;
    }
    case FormulaKind::CoopNext: {
      if (const Formula* body = match_not(inner->child(0))) {
        paren(kUnary, [&] {
          os << "[[" << inner->coalition().to_string() << "]] X ";
          child_at(*body, kUnary, os);
        });
        return true;
      }
      return false;
    }
    case FormulaKind::CoopUntil: {
      // ![[..]]-duals: <<Γ>> G φ is !<<'>>... no — [[Γ]] G φ = !<<Γ>> F !φ
      // and [[Γ]] (φ W ψ) = !<<Γ>> (¬ψ U ¬ψ&¬φ).
      if (auto w = match_weak_args(inner->child(0), inner->child(1))) {
        os << "[[" << inner->coalition().to_string() << "]] (";
        child_at(*w->a, kIff, os);
        os << " W ";
        child_at(*w->b, kIff, os);
        os << ")";
        return true;
      }
      if (is_true(inner->child(0))) {
        if (const Formula* body = match_not(inner->child(1))) {
          paren(kUnary, [&] {
            os << "[[" << inner->coalition().to_string() << "]] G ";
            child_at(*body, kUnary, os);
          });
          return true;
        }
      }
      return false;
    }
    case FormulaKind::DualCoopUntil: {
      if (auto w = match_weak_args(inner->child(0), inner->child(1))) {
        os << "<<" << inner->coalition().to_string() << ">> (";
        child_at(*w->a, kIff, os);
        os << " W ";
        child_at(*w->b, kIff, os);
        os << ")";
        return true;
      }
      if (is_true(inner->child(0))) {
        if (const Formula* body = match_not(inner->child(1))) {
          paren(kUnary, [&] {
            os << "<<" << inner->coalition().to_string() << ">> G ";
            child_at(*body, kUnary, os);
          });
          return true;
        }
      }
      return false;
    }
    case FormulaKind::ExistsNext: {
      if (const Formula* body = match_not(inner->child(0))) {
        paren(kUnary, [&] {
          os << "A X ";
          child_at(*body, kUnary, os);
        });
        return true;
      }
      return false;
    }
    case FormulaKind::ExistsUntil: {
      if (auto w = match_weak_args(inner->child(0), inner->child(1))) {
        os << "A (";
        child_at(*w->a, kIff, os);
        os << " W ";
        child_at(*w->b, kIff, os);
        os << ")";
        return true;
      }
      if (is_true(inner->child(0))) {
        if (const Formula* body = match_not(inner->child(1))) {
          paren(kUnary, [&] {
            os << "A G ";
            child_at(*body, kUnary, os);
          });
          return true;
        }
      }
      return false;
    }
    case FormulaKind::ForallUntil: {
      if (auto w = match_weak_args(inner->child(0), inner->child(1))) {
        os << "E (";
        child_at(*w->a, kIff, os);
        os << " W ";
        child_at(*w->b, kIff, os);
        os << ")";
        return true;
      }
      if (is_true(inner->child(0))) {
        if (const Formula* body = match_not(inner->child(1))) {
          paren(kUnary, [&] {
            os << "E G ";
            child_at(*body, kUnary, os);
          });
          return true;
        }
      }
      return false;
    }
    default:
      return false;
  }
}

void render_rec(const Formula& f, int min_prec, std::ostringstream& os) {
  if (match_not(f) != nullptr) {
    if (render_negated(f, min_prec, os)) return;
    // Or-sugar: !a -> b. Implies with a negated lhs prints as |.
    const bool need = kUnary < min_prec;
    if (need) os << "(";
    os << "!";
    child_at(*match_not(f), kUnary, os);
    if (need) os << ")";
    return;
  }
  if (auto disj = match_or(f)) {
    const bool need = kOr < min_prec;
    if (need) os << "(";
    child_at(*disj->a, kOr, os);
    os << " | ";
    child_at(*disj->b, kOr + 1, os);
    if (need) os << ")";
    return;
  }
  render_core(f, min_prec, os);
}

}  // namespace

std::string render(const Formula& f) {
  std::ostringstream os;
  render_rec(f, kIff, os);
  return os.str();
}

}  // namespace atlkd
