#pragma once

#include <set>
#include <string>
#include <vector>

#include "mortt/expr.hpp"

namespace mortt {

// Closed registry of inference rules, one identifier per conclusion of the
// seven rule figures. Unknown names are rejected by the checker.
inline const std::vector<std::string>& rule_registry() {
  static const std::vector<std::string> rules = {
      // Predicate Calculus Expressions
      "EXPR.empty", "EXPR.universe", "EXPR.declare", "EXPR.bool", "EXPR.assume",
      "EXPR.assumption", "EXPR.weaken", "EXPR.arrow", "EXPR.apply",
      "EXPR.or-form", "EXPR.not-form", "EXPR.forall-form", "EXPR.eq-form",
      "EXPR.cumulative",
      // Predicate Calculus Inference Rules
      "PC.case", "PC.or-intro-l", "PC.or-intro-r", "PC.dneg-intro", "PC.neg-or",
      "PC.forall-elim", "PC.forall-intro", "PC.eq-refl", "PC.eq-sym",
      "PC.eq-trans", "PC.subst", "PC.ext", "PC.choice", "PC.infinity",
      // Dependent Pair Types, Absolute Equality and Subtypes
      "PAIR.form", "PAIR.intro", "PAIR.intro-proj1", "PAIR.intro-proj2",
      "PAIR.proj1", "PAIR.proj2", "PAIR.eta", "PAIR.abs-refl", "PAIR.abs-sym",
      "PAIR.abs-trans", "PAIR.abs-subst", "PAIR.sub-form", "PAIR.sub-intro",
      "PAIR.sub-elim-ty", "PAIR.sub-elim-pred",
      // Definite Descriptions and Additional Absolute Equality Rules
      "DESC.the-set", "DESC.the-set-pred", "DESC.the-closed",
      "DESC.the-closed-pred", "DESC.set-eq-abs", "DESC.fun-cong",
      "DESC.fun-ext-abs", "DESC.type-antisym",
      // Judgmental Inference
      "J.intype-inn", "J.abs-eq-form", "J.inn-form", "J.or-form", "J.not-form",
      "J.forall-form", "J.declare", "J.assume", "J.case", "J.or-intro-l",
      "J.or-intro-r", "J.dneg-intro", "J.neg-or", "J.forall-elim",
      "J.forall-intro",
      // Isomorphism Rules
      "ISO.updown-intro", "ISO.updown-carry", "ISO.pair-intro",
      "ISO.carry-iff-eq", "ISO.member", "ISO.eq-gen", "ISO.carry-pair",
      "ISO.carry-arrow", "ISO.carry-subtype",
      // Natural Maps
      "NAT.lam", "NAT.app", "NAT.beta"};
  return rules;
}

inline bool known_rule(const std::string& name) {
  static const std::set<std::string> s(rule_registry().begin(), rule_registry().end());
  return s.count(name) > 0;
}

// δ[α] simple in α: α itself, anything without α free, arrows, non-dependent
// pairs and subtypes over simple bodies (§2.2 grammar).
inline bool simple_in(const ExprPtr& e, const std::string& a) {
  if (e->k == EK::Var && e->var == a) return true;
  if (!free_vars(e).count(a)) return true;
  switch (e->k) {
    case EK::ArrowType:
      return simple_in(e->kids[0], a) && simple_in(e->kids[1], a);
    case EK::PairType:
      if (free_vars(e->kids[1]).count(e->var)) return false;  // must be simple PairOf
      return simple_in(e->kids[0], a) && simple_in(e->kids[1], a);
    case EK::SubType:
      return simple_in(e->kids[0], a);  // the predicate is unrestricted
    default:
      return false;
  }
}

// σ in the equality-generation rule: a universe constant or a nested
// non-dependent pair of such ("any tree over types").
inline bool type_tree(const ExprPtr& e) {
  if (e->k == EK::TypeConst) return true;
  if (e->k == EK::PairType && !free_vars(e->kids[1]).count(e->var))
    return type_tree(e->kids[0]) && type_tree(e->kids[1]);
  return false;
}

}  // namespace mortt
