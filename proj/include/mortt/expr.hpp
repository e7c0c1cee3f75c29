#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mortt/sexpr.hpp"

namespace mortt {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class EK : uint8_t {
  // core
  Var, TypeConst, BoolType, ArrowType, App, Forall, Or, Not, EqIn, AbsEq,
  InnType, PairType, MkPair, Proj, SubType, Iso, UpDown, The, NatLam, NatApp,
  NatArrow, Carry,
  // sugar, eliminated by expand_abbrevs (pairof desugars at parse)
  And, Implies, Iff, Exists, ExistsUnique, Inhabited, Lam, Bijection, Embed,
};

// Binding forms hold the bound name in `var` and the body last in `kids`:
//   Forall/Exists/ExistsUnique(var) kids = {domain, body}
//   PairType/SubType/The/NatLam/NatArrow(var) kids = {domain, body}
//   Lam(var) kids = {domain, body, result_type}
struct Expr {
  EK k;
  std::string var;
  int num = 0;  // TypeConst level, Proj index
  std::vector<ExprPtr> kids;

  static ExprPtr mk(EK k, std::vector<ExprPtr> kids = {}, std::string var = {}, int num = 0) {
    auto e = std::make_shared<Expr>();
    e->k = k;
    e->var = std::move(var);
    e->num = num;
    e->kids = std::move(kids);
    return e;
  }
};

inline ExprPtr evar(const std::string& n) { return Expr::mk(EK::Var, {}, n); }
inline ExprPtr etype(int level) { return Expr::mk(EK::TypeConst, {}, {}, level); }
inline ExprPtr ebool() { return Expr::mk(EK::BoolType); }
inline ExprPtr earrow(ExprPtr a, ExprPtr b) { return Expr::mk(EK::ArrowType, {a, b}); }
inline ExprPtr eapp(ExprPtr f, ExprPtr a) { return Expr::mk(EK::App, {f, a}); }
inline ExprPtr eforall(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::Forall, {dom, body}, x);
}
inline ExprPtr eor(ExprPtr a, ExprPtr b) { return Expr::mk(EK::Or, {a, b}); }
inline ExprPtr enot(ExprPtr a) { return Expr::mk(EK::Not, {a}); }
inline ExprPtr eeq(ExprPtr ty, ExprPtr a, ExprPtr b) { return Expr::mk(EK::EqIn, {ty, a, b}); }
inline ExprPtr eabseq(ExprPtr a, ExprPtr b) { return Expr::mk(EK::AbsEq, {a, b}); }
inline ExprPtr einn(ExprPtr e, ExprPtr ty) { return Expr::mk(EK::InnType, {e, ty}); }
inline ExprPtr epairtype(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::PairType, {dom, body}, x);
}
inline ExprPtr emkpair(ExprPtr a, ExprPtr b) { return Expr::mk(EK::MkPair, {a, b}); }
inline ExprPtr eproj(int i, ExprPtr e) { return Expr::mk(EK::Proj, {e}, {}, i); }
inline ExprPtr esubtype(const std::string& x, ExprPtr dom, ExprPtr pred) {
  return Expr::mk(EK::SubType, {dom, pred}, x);
}
inline ExprPtr eiso(ExprPtr ty, ExprPtr a, ExprPtr b) { return Expr::mk(EK::Iso, {ty, a, b}); }
inline ExprPtr eupdown(ExprPtr s, ExprPtr t, ExprPtr f) { return Expr::mk(EK::UpDown, {s, t, f}); }
inline ExprPtr ethe(const std::string& x, ExprPtr dom, ExprPtr pred) {
  return Expr::mk(EK::The, {dom, pred}, x);
}
inline ExprPtr eand(ExprPtr a, ExprPtr b) { return Expr::mk(EK::And, {a, b}); }
inline ExprPtr eimplies(ExprPtr a, ExprPtr b) { return Expr::mk(EK::Implies, {a, b}); }
inline ExprPtr eiff(ExprPtr a, ExprPtr b) { return Expr::mk(EK::Iff, {a, b}); }
inline ExprPtr eexists(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::Exists, {dom, body}, x);
}
inline ExprPtr eexists_unique(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::ExistsUnique, {dom, body}, x);
}
inline ExprPtr ecarry(ExprPtr ty, ExprPtr a, ExprPtr b) { return Expr::mk(EK::Carry, {ty, a, b}); }
inline ExprPtr enatlam(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::NatLam, {dom, body}, x);
}
inline ExprPtr enatapp(ExprPtr f, ExprPtr a) { return Expr::mk(EK::NatApp, {f, a}); }
inline ExprPtr enatarrow(const std::string& x, ExprPtr dom, ExprPtr body) {
  return Expr::mk(EK::NatArrow, {dom, body}, x);
}

// -- structural identity -------------------------------------------------------

inline bool expr_identical(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->k != b->k || a->var != b->var || a->num != b->num ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); i++)
    if (!expr_identical(a->kids[i], b->kids[i])) return false;
  return true;
}

// -- binder bookkeeping ----------------------------------------------------------

// Which kid positions lie under the binder(s)?
//   first_bound: index of the first kid in the binder's scope (domain kids
//   before it are not in scope). Non-binding forms return npos.
inline size_t scope_start(EK k) {
  switch (k) {
    case EK::Forall:
    case EK::Exists:
    case EK::ExistsUnique:
    case EK::PairType:
    case EK::SubType:
    case EK::The:
    case EK::NatLam:
    case EK::NatArrow:
    case EK::Lam:
      return 1;  // kids[0] is the domain, out of scope
    default:
      return (size_t)-1;
  }
}

inline bool binds(EK k) { return scope_start(k) != (size_t)-1; }

inline void free_vars_into(const ExprPtr& e, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  if (e->k == EK::Var) {
    if (!bound.count(e->var)) out.insert(e->var);
    return;
  }
  size_t s = scope_start(e->k);
  for (size_t i = 0; i < e->kids.size(); i++) {
    if (binds(e->k) && i >= s) {
      bool added = bound.insert(e->var).second;
      free_vars_into(e->kids[i], bound, out);
      if (added) bound.erase(e->var);
    } else {
      free_vars_into(e->kids[i], bound, out);
    }
  }
}

inline std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> bound, out;
  free_vars_into(e, bound, out);
  return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; i++) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

// Capture-avoiding substitution e[x := t].
inline ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& t) {
  if (e->k == EK::Var) return e->var == x ? t : e;
  if (!binds(e->k)) {
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    bool changed = false;
    for (auto& k : e->kids) {
      auto nk = substitute(k, x, t);
      changed |= nk.get() != k.get();
      kids.push_back(nk);
    }
    if (!changed) return e;
    return Expr::mk(e->k, std::move(kids), e->var, e->num);
  }
  size_t s = scope_start(e->k);
  std::vector<ExprPtr> kids = e->kids;
  for (size_t i = 0; i < s; i++) kids[i] = substitute(kids[i], x, t);
  std::string v = e->var;
  if (v != x) {
    bool need = false;
    for (size_t i = s; i < kids.size(); i++)
      if (free_vars(kids[i]).count(x)) { need = true; break; }
    if (need) {
      auto ft = free_vars(t);
      if (ft.count(v)) {
        // rename the binder before substituting to avoid capture
        std::set<std::string> avoid = ft;
        avoid.insert(x);
        for (size_t i = s; i < kids.size(); i++)
          for (auto& n : free_vars(kids[i])) avoid.insert(n);
        std::string nv = fresh_name(v, avoid);
        for (size_t i = s; i < kids.size(); i++) kids[i] = substitute(kids[i], v, evar(nv));
        v = nv;
      }
      for (size_t i = s; i < kids.size(); i++) kids[i] = substitute(kids[i], x, t);
    }
  }
  return Expr::mk(e->k, std::move(kids), v, e->num);
}

// -- alpha equivalence ---------------------------------------------------------

namespace detail {
inline bool alpha_eq_rec(const ExprPtr& a, const ExprPtr& b,
                         std::map<std::string, std::string>& m1,
                         std::map<std::string, std::string>& m2, int& counter) {
  if (a->k != b->k || a->num != b->num || a->kids.size() != b->kids.size()) return false;
  if (a->k == EK::Var) {
    auto i1 = m1.find(a->var), i2 = m2.find(b->var);
    if (i1 != m1.end() || i2 != m2.end())
      return i1 != m1.end() && i2 != m2.end() && i1->second == i2->second;
    return a->var == b->var;
  }
  if (!binds(a->k)) {
    for (size_t i = 0; i < a->kids.size(); i++)
      if (!alpha_eq_rec(a->kids[i], b->kids[i], m1, m2, counter)) return false;
    return true;
  }
  size_t s = scope_start(a->k);
  for (size_t i = 0; i < s; i++)
    if (!alpha_eq_rec(a->kids[i], b->kids[i], m1, m2, counter)) return false;
  std::string tag = "#" + std::to_string(counter++);
  auto o1 = m1.find(a->var) != m1.end() ? std::optional<std::string>(m1[a->var]) : std::nullopt;
  auto o2 = m2.find(b->var) != m2.end() ? std::optional<std::string>(m2[b->var]) : std::nullopt;
  m1[a->var] = tag;
  m2[b->var] = tag;
  bool ok = true;
  for (size_t i = s; i < a->kids.size() && ok; i++)
    ok = alpha_eq_rec(a->kids[i], b->kids[i], m1, m2, counter);
  if (o1) m1[a->var] = *o1; else m1.erase(a->var);
  if (o2) m2[b->var] = *o2; else m2.erase(b->var);
  return ok;
}
}  // namespace detail

inline bool alpha_eq(const ExprPtr& a, const ExprPtr& b) {
  std::map<std::string, std::string> m1, m2;
  int counter = 0;
  return detail::alpha_eq_rec(a, b, m1, m2, counter);
}

// -- abbreviation expansion -----------------------------------------------------

// Eliminates the sugar connectives into the core constructors, exactly per
// the abbreviation tables. Idempotent; preserves free variables.
inline ExprPtr expand_abbrevs(const ExprPtr& e) {
  std::vector<ExprPtr> kids;
  kids.reserve(e->kids.size());
  for (auto& k : e->kids) kids.push_back(expand_abbrevs(k));
  auto same = [&]() { return Expr::mk(e->k, kids, e->var, e->num); };
  switch (e->k) {
    case EK::And:  // ¬(¬Φ ∨ ¬Ψ)
      return enot(eor(enot(kids[0]), enot(kids[1])));
    case EK::Implies:  // ¬Φ ∨ Ψ
      return eor(enot(kids[0]), kids[1]);
    case EK::Iff:
      return expand_abbrevs(eand(eimplies(kids[0], kids[1]), eimplies(kids[1], kids[0])));
    case EK::Exists:  // ¬∀x:σ ¬Φ
      return enot(eforall(e->var, kids[0], enot(kids[1])));
    case EK::Inhabited: {  // (∃x:σ) ≡ ∃x:σ x =_σ x
      std::string x = fresh_name("x", free_vars(kids[0]));
      return expand_abbrevs(eexists(x, kids[0], eeq(kids[0], evar(x), evar(x))));
    }
    case EK::ExistsUnique: {
      // ∃x Φ[x] ∧ ∀x,y:σ (Φ[x] ∧ Φ[y]) ⇒ x =_σ y
      std::set<std::string> avoid = free_vars(kids[1]);
      for (auto& n : free_vars(kids[0])) avoid.insert(n);
      avoid.insert(e->var);
      std::string y = fresh_name(e->var + "2", avoid);
      ExprPtr phi_y = substitute(kids[1], e->var, evar(y));
      ExprPtr part1 = eexists(e->var, kids[0], kids[1]);
      ExprPtr part2 = eforall(
          e->var, kids[0],
          eforall(y, kids[0],
                  eimplies(eand(kids[1], phi_y), eeq(kids[0], evar(e->var), evar(y)))));
      return expand_abbrevs(eand(part1, part2));
    }
    case EK::Lam: {
      // The(f : σ→τ, ∀x:σ f(x) =_τ e[x])
      std::set<std::string> avoid = free_vars(same());
      std::string f = fresh_name("f", avoid);
      return expand_abbrevs(ethe(
          f, earrow(kids[0], kids[2]),
          eforall(e->var, kids[0], eeq(kids[2], eapp(evar(f), evar(e->var)), kids[1]))));
    }
    case EK::Bijection: {
      // SubType(f : σ→τ, ∀y:τ ∃!x:σ f(x) =_τ y)
      std::set<std::string> avoid = free_vars(same());
      std::string f = fresh_name("f", avoid);
      avoid.insert(f);
      std::string x = fresh_name("x", avoid);
      avoid.insert(x);
      std::string y = fresh_name("y", avoid);
      return expand_abbrevs(esubtype(
          f, earrow(kids[0], kids[1]),
          eforall(y, kids[1],
                  eexists_unique(x, kids[0],
                                 eeq(kids[1], eapp(evar(f), evar(x)), evar(y))))));
    }
    case EK::Embed: {  // σ ↪ τ ≡ Π_{x:σ} τ, x not free in τ
      std::string x = fresh_name("x", free_vars(same()));
      return enatarrow(x, kids[0], kids[1]);
    }
    case EK::Carry: {  // a ↔△_σ b ≡ (∃ x : iso(σ,a,b))
      ExprPtr isoty = eiso(kids[0], kids[1], kids[2]);
      return expand_abbrevs(Expr::mk(EK::Inhabited, {isoty}));
    }
    default:
      return same();
  }
}

// -- printing --------------------------------------------------------------------

inline std::string print_expr(const ExprPtr& e) {
  switch (e->k) {
    case EK::Var: return e->var;
    case EK::TypeConst: return "(type-i " + std::to_string(e->num) + ")";
    case EK::BoolType: return "(bool-type)";
    case EK::ArrowType: return "(arrow " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::App: return "(app " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Forall:
      return "(forall (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::Or: return "(or " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Not: return "(not " + print_expr(e->kids[0]) + ")";
    case EK::EqIn:
      return "(eq " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + " " +
             print_expr(e->kids[2]) + ")";
    case EK::AbsEq: return "(abs-eq " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::InnType: return "(inn " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::PairType:
      return "(pairtype (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::MkPair:
      return "(mkpair " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Proj:
      return "(proj" + std::to_string(e->num) + " " + print_expr(e->kids[0]) + ")";
    case EK::SubType:
      return "(subtype (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::Iso:
      return "(iso " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + " " +
             print_expr(e->kids[2]) + ")";
    case EK::UpDown:
      return "(updown " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + " " +
             print_expr(e->kids[2]) + ")";
    case EK::The:
      return "(the (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::NatLam:
      return "(nat-lam (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::NatApp:
      return "(nat-app " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::NatArrow:
      return "(nat-arrow (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::Carry:
      return "(carry " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + " " +
             print_expr(e->kids[2]) + ")";
    case EK::And: return "(and " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Implies:
      return "(implies " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Iff: return "(iff " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Exists:
      return "(exists (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) + ")";
    case EK::ExistsUnique:
      return "(exists-unique (" + e->var + " " + print_expr(e->kids[0]) + ") " +
             print_expr(e->kids[1]) + ")";
    case EK::Inhabited: return "(inhabited " + print_expr(e->kids[0]) + ")";
    case EK::Lam:
      return "(lam (" + e->var + " " + print_expr(e->kids[0]) + ") " + print_expr(e->kids[1]) +
             " " + print_expr(e->kids[2]) + ")";
    case EK::Bijection:
      return "(bijection " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
    case EK::Embed:
      return "(embed " + print_expr(e->kids[0]) + " " + print_expr(e->kids[1]) + ")";
  }
  return {};
}

// -- parsing ----------------------------------------------------------------------

inline ExprPtr expr_from_sexpr(const Sexpr& e);

namespace detail {
inline bool known_head(const std::string& h) {
  static const std::set<std::string> heads = {
      "var", "type-i", "bool-type", "arrow", "app", "forall", "or", "not", "eq",
      "abs-eq", "inn", "pairtype", "mkpair", "proj1", "proj2", "subtype", "iso",
      "updown", "the", "nat-lam", "nat-app", "nat-arrow", "carry", "and",
      "implies", "iff", "exists", "exists-unique", "inhabited", "lam", "pairof",
      "bijection", "embed", "enc"};
  return heads.count(h) > 0;
}
// a binder is (x type) where x is a plain symbol, not an expression head
inline bool is_binder(const Sexpr& e) {
  return e.is_list() && e.size() == 2 && e[0].is_atom && !known_head(e[0].atom);
}
inline std::pair<std::string, ExprPtr> binder_from_sexpr(const Sexpr& e) {
  if (!is_binder(e)) throw ParseError("binder (x type) expected", e.line, e.col);
  return {e[0].atom, expr_from_sexpr(e[1])};
}
inline void arity(const Sexpr& e, size_t n) {
  if (e.size() != n) throw ParseError("wrong arity for " + e[0].atom, e.line, e.col);
}
}  // namespace detail

inline ExprPtr expr_from_sexpr(const Sexpr& e) {
  using detail::arity;
  using detail::binder_from_sexpr;
  if (e.is_atom) return evar(e.atom);  // bare symbols abbreviate (var x)
  if (!e.size() || !e[0].is_atom) throw ParseError("expression expected", e.line, e.col);
  const std::string& h = e[0].atom;
  if (h == "var") { arity(e, 2); return evar(e[1].atom); }
  if (h == "type-i") {
    arity(e, 2);
    return etype(std::stoi(e[1].atom));
  }
  if (h == "bool-type") { arity(e, 1); return ebool(); }
  if (h == "arrow") {
    // n-ary right-associative: (arrow s1 s2 ... t) is the curried product arrow
    if (e.size() < 3) throw ParseError("arrow needs at least two arguments", e.line, e.col);
    ExprPtr t = expr_from_sexpr(e[e.size() - 1]);
    for (size_t i = e.size() - 1; i-- > 1;) t = earrow(expr_from_sexpr(e[i]), t);
    return t;
  }
  if (h == "app") {
    if (e.size() < 3) throw ParseError("app needs at least two arguments", e.line, e.col);
    ExprPtr f = expr_from_sexpr(e[1]);
    for (size_t i = 2; i < e.size(); i++) f = eapp(f, expr_from_sexpr(e[i]));
    return f;
  }
  if (h == "forall") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return eforall(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "or") { arity(e, 3); return eor(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "not") { arity(e, 2); return enot(expr_from_sexpr(e[1])); }
  if (h == "eq") {
    arity(e, 4);
    return eeq(expr_from_sexpr(e[1]), expr_from_sexpr(e[2]), expr_from_sexpr(e[3]));
  }
  if (h == "abs-eq") { arity(e, 3); return eabseq(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "inn") { arity(e, 3); return einn(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "pairtype") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return epairtype(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "mkpair") { arity(e, 3); return emkpair(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "proj1") { arity(e, 2); return eproj(1, expr_from_sexpr(e[1])); }
  if (h == "proj2") { arity(e, 2); return eproj(2, expr_from_sexpr(e[1])); }
  if (h == "subtype") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return esubtype(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "iso") {
    arity(e, 4);
    return eiso(expr_from_sexpr(e[1]), expr_from_sexpr(e[2]), expr_from_sexpr(e[3]));
  }
  if (h == "updown") {
    arity(e, 4);
    return eupdown(expr_from_sexpr(e[1]), expr_from_sexpr(e[2]), expr_from_sexpr(e[3]));
  }
  if (h == "the") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return ethe(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "nat-lam") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return enatlam(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "nat-app") { arity(e, 3); return enatapp(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "nat-arrow") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return enatarrow(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "carry") {
    arity(e, 4);
    return ecarry(expr_from_sexpr(e[1]), expr_from_sexpr(e[2]), expr_from_sexpr(e[3]));
  }
  if (h == "and") { arity(e, 3); return eand(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "implies") {
    arity(e, 3);
    return eimplies(expr_from_sexpr(e[1]), expr_from_sexpr(e[2]));
  }
  if (h == "iff") { arity(e, 3); return eiff(expr_from_sexpr(e[1]), expr_from_sexpr(e[2])); }
  if (h == "exists") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return eexists(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "exists-unique") {
    arity(e, 3);
    auto [x, d] = binder_from_sexpr(e[1]);
    return eexists_unique(x, d, expr_from_sexpr(e[2]));
  }
  if (h == "inhabited") { arity(e, 2); return Expr::mk(EK::Inhabited, {expr_from_sexpr(e[1])}); }
  if (h == "lam") {
    arity(e, 4);
    auto [x, d] = binder_from_sexpr(e[1]);
    return Expr::mk(EK::Lam, {d, expr_from_sexpr(e[2]), expr_from_sexpr(e[3])}, x);
  }
  if (h == "pairof") {
    // (pairof s t) | (pairof (x s) (y t)) | (pairof (x s) (y t) st phi);
    // desugars into PairType / SubType-over-PairType right away
    if (e.size() == 3 && !detail::is_binder(e[1])) {
      ExprPtr s = expr_from_sexpr(e[1]), t = expr_from_sexpr(e[2]);
      std::string x = fresh_name("x", free_vars(t));
      return epairtype(x, s, t);
    }
    if (e.size() == 3) {
      auto [x, s] = binder_from_sexpr(e[1]);
      auto [y, t] = binder_from_sexpr(e[2]);
      (void)y;
      return epairtype(x, s, t);
    }
    if (e.size() == 5 && e[3].is_atom && e[3].atom == "st") {
      auto [x, s] = binder_from_sexpr(e[1]);
      auto [y, t] = binder_from_sexpr(e[2]);
      ExprPtr phi = expr_from_sexpr(e[4]);
      ExprPtr pt = epairtype(x, s, t);
      std::set<std::string> avoid = free_vars(phi);
      for (auto& v : free_vars(pt)) avoid.insert(v);
      std::string z = fresh_name("z", avoid);
      ExprPtr pred = substitute(phi, x, eproj(1, evar(z)));
      pred = substitute(pred, y, eproj(2, evar(z)));
      return esubtype(z, pt, pred);
    }
    throw ParseError("bad pairof form", e.line, e.col);
  }
  if (h == "bijection") {
    arity(e, 3);
    return Expr::mk(EK::Bijection, {expr_from_sexpr(e[1]), expr_from_sexpr(e[2])});
  }
  if (h == "embed") {
    arity(e, 3);
    return Expr::mk(EK::Embed, {expr_from_sexpr(e[1]), expr_from_sexpr(e[2])});
  }
  throw ParseError("unknown expression head '" + h + "'", e.line, e.col);
}

inline ExprPtr parse_expr(const std::string& text) { return expr_from_sexpr(parse_sexpr(text)); }

// -- contexts and sequents ---------------------------------------------------------

enum class AssumeKind : uint8_t { Proposition, Formula, Judgement };

struct ContextEntry {
  bool is_decl;
  std::string var;     // declarations
  ExprPtr body;        // declared type, or the assumption
  AssumeKind kind = AssumeKind::Proposition;

  static ContextEntry decl(std::string x, ExprPtr ty) {
    return {true, std::move(x), std::move(ty), AssumeKind::Proposition};
  }
  static ContextEntry assume(ExprPtr phi) {
    AssumeKind k = AssumeKind::Proposition;
    if (phi->k == EK::AbsEq) k = AssumeKind::Judgement;
    else if (phi->k == EK::InnType) k = AssumeKind::Formula;
    return {false, {}, std::move(phi), k};
  }
};

using Context = std::vector<ContextEntry>;

enum class JudgeKind : uint8_t { True, TypeOf, Formula };

struct Sequent {
  Context ctx;
  JudgeKind jk = JudgeKind::True;
  ExprPtr e, ty;  // TypeOf: e : ty; Formula: e

  static Sequent truth(Context c) { return {std::move(c), JudgeKind::True, nullptr, nullptr}; }
  static Sequent typing(Context c, ExprPtr e, ExprPtr ty) {
    return {std::move(c), JudgeKind::TypeOf, std::move(e), std::move(ty)};
  }
  static Sequent formula(Context c, ExprPtr phi) {
    return {std::move(c), JudgeKind::Formula, std::move(phi), nullptr};
  }
};

inline Context context_from_sexpr(const Sexpr& e) {
  if (!e.head_is("ctx")) throw ParseError("(ctx ...) expected", e.line, e.col);
  Context ctx;
  for (size_t i = 1; i < e.size(); i++) {
    const Sexpr& it = e[i];
    if (it.head_is("decl")) {
      if (it.size() != 3 || !it[1].is_atom) throw ParseError("bad decl", it.line, it.col);
      ctx.push_back(ContextEntry::decl(it[1].atom, expr_from_sexpr(it[2])));
    } else if (it.head_is("assume")) {
      if (it.size() != 2) throw ParseError("bad assume", it.line, it.col);
      ctx.push_back(ContextEntry::assume(expr_from_sexpr(it[1])));
    } else {
      throw ParseError("context entry expected", it.line, it.col);
    }
  }
  return ctx;
}

inline Sequent sequent_from_sexpr(const Sexpr& e) {
  if (!e.head_is("seq") || e.size() != 3) throw ParseError("(seq <ctx> <judgement>) expected", e.line, e.col);
  Context ctx = context_from_sexpr(e[1]);
  const Sexpr& j = e[2];
  if (j.is_atom && j.atom == "true") return Sequent::truth(std::move(ctx));
  if (j.head_is("oftype") && j.size() == 3)
    return Sequent::typing(std::move(ctx), expr_from_sexpr(j[1]), expr_from_sexpr(j[2]));
  if (j.head_is("holds") && j.size() == 2)
    return Sequent::formula(std::move(ctx), expr_from_sexpr(j[1]));
  throw ParseError("judgement expected", j.line, j.col);
}

inline Sequent parse_sequent(const std::string& text) {
  return sequent_from_sexpr(parse_sexpr(text));
}

inline std::string print_context(const Context& ctx) {
  std::string s = "(ctx";
  for (auto& en : ctx) {
    if (en.is_decl) s += " (decl " + en.var + " " + print_expr(en.body) + ")";
    else s += " (assume " + print_expr(en.body) + ")";
  }
  return s + ")";
}

inline std::string print_sequent(const Sequent& s) {
  std::string out = "(seq " + print_context(s.ctx) + " ";
  switch (s.jk) {
    case JudgeKind::True: out += "true"; break;
    case JudgeKind::TypeOf: out += "(oftype " + print_expr(s.e) + " " + print_expr(s.ty) + ")"; break;
    case JudgeKind::Formula: out += "(holds " + print_expr(s.e) + ")"; break;
  }
  return out + ")";
}

// Alpha-equivalence of sequents: contexts aligned entrywise, declared
// variables tagged consistently like binders.
inline bool alpha_eq_sequent(const Sequent& a, const Sequent& b) {
  if (a.jk != b.jk || a.ctx.size() != b.ctx.size()) return false;
  std::map<std::string, std::string> m1, m2;
  int counter = 0;
  for (size_t i = 0; i < a.ctx.size(); i++) {
    const auto& ea = a.ctx[i];
    const auto& eb = b.ctx[i];
    if (ea.is_decl != eb.is_decl) return false;
    if (!detail::alpha_eq_rec(ea.body, eb.body, m1, m2, counter)) return false;
    if (ea.is_decl) {
      std::string tag = "#" + std::to_string(counter++);
      m1[ea.var] = tag;
      m2[eb.var] = tag;
    }
  }
  if (a.jk == JudgeKind::True) return true;
  if (!detail::alpha_eq_rec(a.e, b.e, m1, m2, counter)) return false;
  if (a.jk == JudgeKind::TypeOf) return detail::alpha_eq_rec(a.ty, b.ty, m1, m2, counter);
  return true;
}

// Syntactic context well-formedness: distinct declarations, entries
// well-scoped (free variables declared before use).
inline bool wellformed_context(const Context& ctx) {
  std::set<std::string> declared;
  for (auto& en : ctx) {
    if (en.is_decl) {
      if (declared.count(en.var)) return false;
      for (auto& v : free_vars(en.body))
        if (!declared.count(v)) return false;
      declared.insert(en.var);
    } else {
      for (auto& v : free_vars(en.body))
        if (!declared.count(v)) return false;
    }
  }
  return true;
}

}  // namespace mortt
