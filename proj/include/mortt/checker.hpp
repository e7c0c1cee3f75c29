#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mortt/rules.hpp"

namespace mortt {

struct Step {
  std::string id;
  Sequent claim;
  std::string rule;
  std::vector<std::string> premises;
  std::map<std::string, Sexpr> hints;
};

struct ProofScript {
  std::vector<Step> steps;
};

enum class StepState : uint8_t { Ok, Failed, Skipped };

struct StepStatus {
  std::string id;
  StepState state;
  std::string message;
};

struct CheckReport {
  bool accepted = false;
  std::vector<StepStatus> steps;
  std::string first_failure;  // "step <id>: <reason>"
};

namespace chk {

using Fail = std::optional<std::string>;  // nullopt = ok

inline Sequent expand_sequent(const Sequent& s) {
  Sequent r = s;
  for (auto& en : r.ctx) en.body = expand_abbrevs(en.body);
  if (r.e) r.e = expand_abbrevs(r.e);
  if (r.ty) r.ty = expand_abbrevs(r.ty);
  return r;
}

inline bool ctx_entry_eq(const ContextEntry& a, const ContextEntry& b) {
  if (a.is_decl != b.is_decl) return false;
  if (a.is_decl && a.var != b.var) return false;
  return alpha_eq(a.body, b.body);
}

inline bool ctx_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); i++)
    if (!ctx_entry_eq(a[i], b[i])) return false;
  return true;
}

// big = small plus exactly one trailing entry
inline bool ctx_extends1(const Context& big, const Context& small) {
  if (big.size() != small.size() + 1) return false;
  for (size_t i = 0; i < small.size(); i++)
    if (!ctx_entry_eq(big[i], small[i])) return false;
  return true;
}

inline bool declared(const Context& ctx, const std::string& x) {
  for (auto& en : ctx)
    if (en.is_decl && en.var == x) return true;
  return false;
}

inline bool is_type_const(const ExprPtr& e, int* level = nullptr) {
  if (e->k != EK::TypeConst) return false;
  if (level) *level = e->num;
  return true;
}

inline bool typing(const Sequent& s) { return s.jk == JudgeKind::TypeOf; }
inline bool formula(const Sequent& s) { return s.jk == JudgeKind::Formula; }
inline bool truth(const Sequent& s) { return s.jk == JudgeKind::True; }

// typing with a universe type: Σ ⊢ e : type_i
inline bool universe_typing(const Sequent& s, ExprPtr* e = nullptr, int* level = nullptr) {
  if (!typing(s) || s.ty->k != EK::TypeConst) return false;
  if (e) *e = s.e;
  if (level) *level = s.ty->num;
  return true;
}

inline Fail fail(const std::string& m) { return m; }

struct RuleCtx {
  const Sequent& claim;                  // expanded
  const std::vector<Sequent>& prem;      // expanded, in premise order
  const std::map<std::string, Sexpr>& hints;
};

inline Fail need_premises(const RuleCtx& rc, size_t n) {
  if (rc.prem.size() != n)
    return fail("expected " + std::to_string(n) + " premises, got " +
                std::to_string(rc.prem.size()));
  return std::nullopt;
}

inline Fail same_ctx(const RuleCtx& rc) {
  for (auto& p : rc.prem)
    if (!ctx_eq(p.ctx, rc.claim.ctx)) return fail("premise context differs from claim context");
  return std::nullopt;
}

inline Fail want_formula_claim(const RuleCtx& rc, const ExprPtr& want) {
  if (!formula(rc.claim)) return fail("claim must be a formula judgement");
  if (!alpha_eq(rc.claim.e, want))
    return fail("claim does not match rule conclusion; expected " + print_expr(want));
  return std::nullopt;
}

inline Fail want_typing_claim(const RuleCtx& rc, const ExprPtr& e, const ExprPtr& ty) {
  if (!typing(rc.claim)) return fail("claim must be a typing judgement");
  if (!alpha_eq(rc.claim.e, e) || !alpha_eq(rc.claim.ty, ty))
    return fail("claim does not match rule conclusion; expected (oftype " + print_expr(e) +
                " " + print_expr(ty) + ")");
  return std::nullopt;
}

inline std::optional<ExprPtr> hint_expr(const RuleCtx& rc, const std::string& key) {
  auto it = rc.hints.find(key);
  if (it == rc.hints.end()) return std::nullopt;
  return expand_abbrevs(expr_from_sexpr(it->second));
}

// inn(e, ty) formula decomposition
inline bool inn_formula(const Sequent& s, ExprPtr* e, ExprPtr* ty) {
  if (!formula(s) || s.e->k != EK::InnType) return false;
  *e = s.e->kids[0];
  *ty = s.e->kids[1];
  return true;
}

// destructure an expanded A ⇔ B: ¬(¬(¬A ∨ B) ∨ ¬(¬B ∨ A))
inline bool destructure_iff(const ExprPtr& e, ExprPtr* a, ExprPtr* b) {
  if (e->k != EK::Not || e->kids[0]->k != EK::Or) return false;
  ExprPtr l = e->kids[0]->kids[0], r = e->kids[0]->kids[1];
  if (l->k != EK::Not || l->kids[0]->k != EK::Or) return false;
  if (r->k != EK::Not || r->kids[0]->k != EK::Or) return false;
  ExprPtr la = l->kids[0]->kids[0], lb = l->kids[0]->kids[1];
  ExprPtr ra = r->kids[0]->kids[0], rb = r->kids[0]->kids[1];
  if (la->k != EK::Not || ra->k != EK::Not) return false;
  if (!alpha_eq(la->kids[0], rb) || !alpha_eq(ra->kids[0], lb)) return false;
  *a = la->kids[0];
  *b = lb;
  return true;
}

// -- the rule table -------------------------------------------------------------

inline Fail check_rule(const std::string& rule, const RuleCtx& rc) {
  const Sequent& c = rc.claim;
  const auto& P = rc.prem;

  // ---- EXPR ----
  if (rule == "EXPR.empty") {
    if (auto f = need_premises(rc, 0)) return f;
    if (!truth(c) || !c.ctx.empty()) return fail("conclusion must be the empty-context True");
    return std::nullopt;
  }
  if (rule == "EXPR.universe") {
    if (auto f = need_premises(rc, 0)) return f;
    if (!c.ctx.empty() || !typing(c)) return fail("conclusion must be an empty-context typing");
    int j, i;
    if (!is_type_const(c.e, &j) || !is_type_const(c.ty, &i))
      return fail("conclusion must type a universe constant in a universe");
    if (!(j < i)) return fail("universe levels must satisfy j < i");
    return std::nullopt;
  }
  if (rule == "EXPR.declare" || rule == "J.declare") {
    if (auto f = need_premises(rc, 1)) return f;
    ExprPtr sigma;
    if (rule == "EXPR.declare") {
      if (!universe_typing(P[0], &sigma)) return fail("premise must be Σ ⊢ τ : type_i");
    } else {
      ExprPtr ty;
      if (!inn_formula(P[0], &sigma, &ty) || ty->k != EK::TypeConst)
        return fail("premise must be Σ ⊢ (inn τ type_i)");
    }
    if (!truth(c) || !ctx_extends1(c.ctx, P[0].ctx))
      return fail("conclusion must extend the premise context by one entry");
    const ContextEntry& last = c.ctx.back();
    if (!last.is_decl) return fail("the new entry must be a declaration");
    if (!alpha_eq(last.body, sigma)) return fail("declared type differs from premise");
    if (declared(P[0].ctx, last.var)) return fail("variable already declared");
    return std::nullopt;
  }
  if (rule == "EXPR.bool") {
    if (auto f = need_premises(rc, 0)) return f;
    if (!c.ctx.empty() || !typing(c) || c.e->k != EK::BoolType || c.ty->k != EK::TypeConst ||
        c.ty->num != 0)
      return fail("conclusion must be ε ⊢ Bool : type_0");
    return std::nullopt;
  }
  if (rule == "EXPR.assume" || rule == "J.assume") {
    if (auto f = need_premises(rc, 1)) return f;
    ExprPtr phi;
    if (rule == "EXPR.assume") {
      if (!typing(P[0]) || P[0].ty->k != EK::BoolType) return fail("premise must be Σ ⊢ Φ : Bool");
      phi = P[0].e;
    } else {
      ExprPtr ty;
      if (!inn_formula(P[0], &phi, &ty) || ty->k != EK::BoolType)
        return fail("premise must be Σ ⊢ (inn Θ Bool)");
    }
    if (!truth(c) || !ctx_extends1(c.ctx, P[0].ctx))
      return fail("conclusion must extend the premise context by one assumption");
    const ContextEntry& last = c.ctx.back();
    if (last.is_decl || !alpha_eq(last.body, phi))
      return fail("the new entry must assume the premise formula");
    return std::nullopt;
  }
  if (rule == "EXPR.assumption") {
    if (auto f = need_premises(rc, 1)) return f;
    if (!truth(P[0]) || P[0].ctx.empty()) return fail("premise must be Σ;Θ ⊢ True, Σ;Θ nonempty");
    if (!ctx_eq(c.ctx, P[0].ctx)) return fail("claim context must equal premise context");
    const ContextEntry& last = c.ctx.back();
    if (last.is_decl) return want_typing_claim(rc, evar(last.var), last.body);
    return want_formula_claim(rc, last.body);
  }
  if (rule == "EXPR.weaken") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!truth(P[0])) return fail("first premise must be Σ;Θ ⊢ True");
    if (!ctx_extends1(P[0].ctx, P[1].ctx))
      return fail("first premise context must extend the second by one entry");
    if (!ctx_eq(c.ctx, P[0].ctx)) return fail("claim context must be the extended context");
    if (c.jk != P[1].jk) return fail("claim judgement kind must match the weakened premise");
    if (truth(c)) return std::nullopt;
    if (!alpha_eq(c.e, P[1].e)) return fail("claim judgement differs from weakened premise");
    if (typing(c) && !alpha_eq(c.ty, P[1].ty)) return fail("claim type differs");
    return std::nullopt;
  }
  if (rule == "EXPR.arrow") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr t1, t2;
    int i1, i2;
    if (!universe_typing(P[0], &t1, &i1) || !universe_typing(P[1], &t2, &i2))
      return fail("premises must type the components in a universe");
    if (i1 != i2) return fail("universe levels must agree");
    return want_typing_claim(rc, earrow(t1, t2), etype(i1));
  }
  if (rule == "EXPR.apply") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::ArrowType)
      return fail("first premise must type f at an arrow type");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, P[0].ty->kids[0]))
      return fail("argument type must match the arrow domain");
    return want_typing_claim(rc, eapp(P[0].e, P[1].e), P[0].ty->kids[1]);
  }
  if (rule == "EXPR.or-form" || rule == "EXPR.not-form") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    for (auto& p : P)
      if (!typing(p) || p.ty->k != EK::BoolType) return fail("premises must type at Bool");
    ExprPtr want = rule == "EXPR.or-form" ? eor(P[0].e, P[1].e) : enot(P[0].e);
    return want_typing_claim(rc, want, ebool());
  }
  if (rule == "EXPR.forall-form") {
    if (auto f = need_premises(rc, 2)) return f;
    ExprPtr tau;
    int lvl;
    if (!universe_typing(P[0], &tau, &lvl)) return fail("first premise must type τ in a universe");
    if (!ctx_eq(P[0].ctx, c.ctx)) return fail("first premise context must equal claim context");
    if (!ctx_extends1(P[1].ctx, c.ctx) || !P[1].ctx.back().is_decl)
      return fail("second premise must extend the context by a declaration");
    const ContextEntry& d = P[1].ctx.back();
    if (!alpha_eq(d.body, tau)) return fail("declared type must be τ");
    if (!typing(P[1]) || P[1].ty->k != EK::BoolType)
      return fail("second premise must type the body at Bool");
    return want_typing_claim(rc, eforall(d.var, tau, P[1].e), ebool());
  }
  if (rule == "EXPR.eq-form") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr tau;
    if (!universe_typing(P[0], &tau)) return fail("first premise must type τ in a universe");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, tau) || !typing(P[2]) || !alpha_eq(P[2].ty, tau))
      return fail("operands must be typed at τ");
    return want_typing_claim(rc, eeq(tau, P[1].e, P[2].e), ebool());
  }
  if (rule == "EXPR.cumulative") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr sigma;
    int i, j;
    if (!universe_typing(P[0], &sigma, &i)) return fail("premise must type σ in a universe");
    if (!typing(c) || !is_type_const(c.ty, &j)) return fail("claim must type σ in a universe");
    if (!alpha_eq(c.e, sigma)) return fail("claim subject must be σ");
    if (!(j > i)) return fail("universe levels must satisfy j > i");
    return std::nullopt;
  }

  // ---- PC / J boolean rules ----
  if (rule == "PC.case" || rule == "J.case") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!formula(c)) return fail("conclusion must be a formula");
    if (!ctx_extends1(P[0].ctx, c.ctx) || !ctx_extends1(P[1].ctx, c.ctx))
      return fail("premise contexts must extend the claim context by one assumption");
    const ContextEntry& e1 = P[0].ctx.back();
    const ContextEntry& e2 = P[1].ctx.back();
    if (e1.is_decl || e2.is_decl) return fail("case split entries must be assumptions");
    if (!alpha_eq(e2.body, enot(e1.body))) return fail("second assumption must be ¬ of the first");
    if (!formula(P[0]) || !formula(P[1]) || !alpha_eq(P[0].e, c.e) || !alpha_eq(P[1].e, c.e))
      return fail("both branches must derive the claimed formula");
    return std::nullopt;
  }
  if (rule == "PC.or-intro-l" || rule == "PC.or-intro-r" || rule == "PC.dneg-intro" ||
      rule == "J.or-intro-l" || rule == "J.or-intro-r" || rule == "J.dneg-intro") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0])) return fail("first premise must be a derived formula");
    ExprPtr phi = P[0].e, psi;
    if (rule[0] == 'P') {
      if (!typing(P[1]) || P[1].ty->k != EK::BoolType)
        return fail("second premise must be Σ ⊢ Ψ : Bool");
      psi = P[1].e;
    } else {
      ExprPtr ty;
      if (!inn_formula(P[1], &psi, &ty) || ty->k != EK::BoolType)
        return fail("second premise must be Σ ⊢ (inn Ψ Bool)");
    }
    ExprPtr want;
    if (rule.ends_with("or-intro-l")) want = eor(phi, psi);
    else if (rule.ends_with("or-intro-r")) want = eor(psi, phi);
    else want = enot(enot(phi));
    return want_formula_claim(rc, want);
  }
  if (rule == "PC.neg-or" || rule == "J.neg-or") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::Not || !formula(P[1]) || P[1].e->k != EK::Not)
      return fail("premises must be negations");
    return want_formula_claim(rc, enot(eor(P[1].e->kids[0], P[0].e->kids[0])));
  }
  if (rule == "PC.forall-elim" || rule == "J.forall-elim") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::Forall)
      return fail("first premise must be a universal formula");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, P[0].e->kids[0]))
      return fail("witness must be typed at the quantifier domain");
    return want_formula_claim(rc, substitute(P[0].e->kids[1], P[0].e->var, P[1].e));
  }
  if (rule == "PC.forall-intro" || rule == "J.forall-intro") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !ctx_eq(P[0].ctx, P[1].ctx))
      return fail("premise contexts must extend the claim context by the quantified variable");
    const ContextEntry& d = P[0].ctx.back();
    if (!d.is_decl) return fail("extension must be a declaration");
    ExprPtr phi0;
    if (rule[0] == 'P') {
      if (!typing(P[0]) || P[0].ty->k != EK::BoolType)
        return fail("first premise must type the body at Bool");
      phi0 = P[0].e;
    } else {
      ExprPtr ty;
      if (!inn_formula(P[0], &phi0, &ty) || ty->k != EK::BoolType)
        return fail("first premise must be Σ;x:σ ⊢ (inn Φ Bool)");
    }
    if (!formula(P[1]) || !alpha_eq(P[1].e, phi0))
      return fail("second premise must derive the same body");
    return want_formula_claim(rc, eforall(d.var, d.body, phi0));
  }
  if (rule == "PC.eq-refl") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0])) return fail("premise must be a typing");
    return want_formula_claim(rc, eeq(P[0].ty, P[0].e, P[0].e));
  }
  if (rule == "PC.eq-sym") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::EqIn) return fail("premise must be an equality");
    auto& e = P[0].e;
    return want_formula_claim(rc, eeq(e->kids[0], e->kids[2], e->kids[1]));
  }
  if (rule == "PC.eq-trans") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::EqIn || !formula(P[1]) || P[1].e->k != EK::EqIn)
      return fail("premises must be equalities");
    auto& a = P[0].e;
    auto& b = P[1].e;
    if (!alpha_eq(a->kids[0], b->kids[0])) return fail("equality types must agree");
    if (!alpha_eq(a->kids[2], b->kids[1])) return fail("middle terms must agree");
    return want_formula_claim(rc, eeq(a->kids[0], a->kids[1], b->kids[2]));
  }
  if (rule == "PC.subst") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !P[0].ctx.back().is_decl)
      return fail("first premise must extend the context by the substitution variable");
    if (!ctx_eq(P[1].ctx, c.ctx)) return fail("second premise context must equal claim context");
    const std::string& x = P[0].ctx.back().var;
    const ExprPtr sigma = P[0].ctx.back().body;
    if (!typing(P[0])) return fail("first premise must be a typing Σ;x:σ ⊢ e[x] : τ");
    const ExprPtr tau = P[0].ty;
    if (free_vars(tau).count(x)) return fail("x must not be free in τ");
    if (!formula(P[1]) || P[1].e->k != EK::EqIn || !alpha_eq(P[1].e->kids[0], sigma))
      return fail("second premise must be an equality at σ");
    ExprPtr w = P[1].e->kids[1], u = P[1].e->kids[2];
    return want_formula_claim(
        rc, eeq(tau, substitute(P[0].e, x, w), substitute(P[0].e, x, u)));
  }
  if (rule == "PC.ext") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::ArrowType || !typing(P[1]) ||
        !alpha_eq(P[0].ty, P[1].ty))
      return fail("premises must type f and g at the same arrow type");
    ExprPtr sigma = P[0].ty->kids[0], tau = P[0].ty->kids[1];
    std::string x = fresh_name("x", free_vars(eapp(P[0].e, P[1].e)));
    ExprPtr want =
        eforall(x, sigma, eeq(tau, eapp(P[0].e, evar(x)), eapp(P[1].e, evar(x))));
    if (!formula(P[2]) || !alpha_eq(P[2].e, want))
      return fail("third premise must be the pointwise equality");
    return want_formula_claim(rc, eeq(P[0].ty, P[0].e, P[1].e));
  }
  if (rule == "PC.choice") {
    if (auto f = need_premises(rc, 2)) return f;
    if (P[0].ctx.size() != c.ctx.size() + 2) return fail("first premise must add x:σ and y:τ");
    for (size_t i = 0; i < c.ctx.size(); i++)
      if (!ctx_entry_eq(P[0].ctx[i], c.ctx[i])) return fail("premise context mismatch");
    const ContextEntry& dx = P[0].ctx[c.ctx.size()];
    const ContextEntry& dy = P[0].ctx[c.ctx.size() + 1];
    if (!dx.is_decl || !dy.is_decl) return fail("both extensions must be declarations");
    if (free_vars(dy.body).count(dx.var)) return fail("x must not be free in τ");
    if (!typing(P[0]) || P[0].ty->k != EK::BoolType)
      return fail("first premise must type Φ at Bool");
    if (!ctx_eq(P[1].ctx, c.ctx)) return fail("second premise context must equal claim context");
    ExprPtr phi = P[0].e;
    ExprPtr want2 =
        expand_abbrevs(eforall(dx.var, dx.body, eexists(dy.var, dy.body, phi)));
    if (!formula(P[1]) || !alpha_eq(P[1].e, want2))
      return fail("second premise must be ∀x:σ ∃y:τ Φ[x,y]");
    std::set<std::string> avoid = free_vars(phi);
    avoid.insert(dx.var);
    avoid.insert(dy.var);
    std::string fv = fresh_name("f", avoid);
    ExprPtr body = substitute(phi, dy.var, eapp(evar(fv), evar(dx.var)));
    ExprPtr want = expand_abbrevs(
        eexists(fv, earrow(dx.body, dy.body), eforall(dx.var, dx.body, body)));
    return want_formula_claim(rc, want);
  }
  if (rule == "PC.infinity") {
    if (auto f = need_premises(rc, 0)) return f;
    if (!c.ctx.empty()) return fail("axiom holds in the empty context");
    ExprPtr al = evar("alpha"), fn = evar("f"), x = evar("x"), y = evar("y");
    ExprPtr body = eeq(etype(0), eapp(fn, y), earrow(eapp(fn, x), ebool()));
    ExprPtr ax = eexists(
        "alpha", etype(0),
        eexists("f", earrow(al, etype(0)),
                eforall("x", al, eexists("y", al, body))));
    return want_formula_claim(rc, expand_abbrevs(ax));
  }

  // ---- PAIR ----
  if (rule == "PAIR.form" || rule == "PAIR.sub-form") {
    if (auto f = need_premises(rc, 2)) return f;
    ExprPtr sigma;
    int lvl;
    if (!universe_typing(P[0], &sigma, &lvl)) return fail("first premise must type σ in a universe");
    if (!ctx_eq(P[0].ctx, c.ctx)) return fail("first premise context must equal claim context");
    if (!ctx_extends1(P[1].ctx, c.ctx) || !P[1].ctx.back().is_decl)
      return fail("second premise must extend the context by the bound variable");
    const ContextEntry& d = P[1].ctx.back();
    if (!alpha_eq(d.body, sigma)) return fail("bound variable must be declared at σ");
    if (rule == "PAIR.form") {
      int lvl2;
      if (!universe_typing(P[1], nullptr, &lvl2) || lvl2 != lvl)
        return fail("body must be typed in the same universe");
      return want_typing_claim(rc, epairtype(d.var, sigma, P[1].e), etype(lvl));
    }
    if (!typing(P[1]) || P[1].ty->k != EK::BoolType)
      return fail("predicate must be typed at Bool");
    return want_typing_claim(rc, esubtype(d.var, sigma, P[1].e), etype(lvl));
  }
  if (rule == "PAIR.intro" || rule == "PAIR.intro-proj1" || rule == "PAIR.intro-proj2") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr pt;
    if (!universe_typing(P[0], &pt) || pt->k != EK::PairType)
      return fail("first premise must type a pair type in a universe");
    ExprPtr sigma = pt->kids[0], tau = pt->kids[1];
    if (!typing(P[1]) || !alpha_eq(P[1].ty, sigma)) return fail("u must be typed at σ");
    ExprPtr u = P[1].e;
    if (!typing(P[2]) || !alpha_eq(P[2].ty, substitute(tau, pt->var, u)))
      return fail("w must be typed at τ[u]");
    ExprPtr w = P[2].e;
    if (rule == "PAIR.intro") return want_typing_claim(rc, emkpair(u, w), pt);
    if (rule == "PAIR.intro-proj1")
      return want_formula_claim(rc, eabseq(eproj(1, emkpair(u, w)), u));
    return want_formula_claim(rc, eabseq(eproj(2, emkpair(u, w)), w));
  }
  if (rule == "PAIR.proj1" || rule == "PAIR.proj2" || rule == "PAIR.eta") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::PairType)
      return fail("premise must type p at a pair type");
    ExprPtr p = P[0].e, pt = P[0].ty;
    if (rule == "PAIR.proj1") return want_typing_claim(rc, eproj(1, p), pt->kids[0]);
    if (rule == "PAIR.proj2")
      return want_typing_claim(rc, eproj(2, p), substitute(pt->kids[1], pt->var, eproj(1, p)));
    return want_formula_claim(rc, eabseq(p, emkpair(eproj(1, p), eproj(2, p))));
  }
  if (rule == "PAIR.abs-refl") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0])) return fail("premise must be a typing");
    return want_formula_claim(rc, eabseq(P[0].e, P[0].e));
  }
  if (rule == "PAIR.abs-sym") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::AbsEq) return fail("premise must be an absolute equality");
    return want_formula_claim(rc, eabseq(P[0].e->kids[1], P[0].e->kids[0]));
  }
  if (rule == "PAIR.abs-trans") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::AbsEq || !formula(P[1]) || P[1].e->k != EK::AbsEq)
      return fail("premises must be absolute equalities");
    if (!alpha_eq(P[0].e->kids[1], P[1].e->kids[0])) return fail("middle terms must agree");
    return want_formula_claim(rc, eabseq(P[0].e->kids[0], P[1].e->kids[1]));
  }
  if (rule == "PAIR.abs-subst") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!formula(P[0]) || P[0].e->k != EK::AbsEq) return fail("first premise must be u ≐ w");
    ExprPtr u = P[0].e->kids[0], w = P[0].e->kids[1];
    auto pit = rc.hints.find("pattern");
    auto it = rc.hints.find("var");
    if (pit == rc.hints.end() || it == rc.hints.end() || !it->second.is_atom)
      return fail("abs-subst requires (hints (pattern Θ[z]) (var z))");
    for (auto& [k, v] : rc.hints)
      if (k != "pattern" && k != "var") return fail("unknown hint '" + k + "'");
    const std::string& z = it->second.atom;
    // Θ may be a formula or a typing judgement, selected by the pattern shape
    if (pit->second.head_is("oftype")) {
      if (pit->second.size() != 3) return fail("(pattern (oftype e ty)) expected");
      ExprPtr pe = expand_abbrevs(expr_from_sexpr(pit->second[1]));
      ExprPtr pty = expand_abbrevs(expr_from_sexpr(pit->second[2]));
      if (!typing(P[1]) || !alpha_eq(P[1].e, substitute(pe, z, u)) ||
          !alpha_eq(P[1].ty, substitute(pty, z, u)))
        return fail("second premise does not match the typing pattern at u");
      return want_typing_claim(rc, substitute(pe, z, w), substitute(pty, z, w));
    }
    ExprPtr pat = expand_abbrevs(expr_from_sexpr(pit->second));
    if (!formula(P[1])) return fail("second premise must be a formula Θ[u]");
    if (!alpha_eq(P[1].e, substitute(pat, z, u)))
      return fail("second premise does not match pattern at u");
    return want_formula_claim(rc, substitute(pat, z, w));
  }
  if (rule == "PAIR.sub-intro") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr st;
    if (!universe_typing(P[0], &st) || st->k != EK::SubType)
      return fail("first premise must type a subtype in a universe");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, st->kids[0]))
      return fail("e must be typed at the carrier");
    ExprPtr e = P[1].e;
    if (!formula(P[2]) || !alpha_eq(P[2].e, substitute(st->kids[1], st->var, e)))
      return fail("third premise must be Φ[e]");
    return want_typing_claim(rc, e, st);
  }
  if (rule == "PAIR.sub-elim-ty" || rule == "PAIR.sub-elim-pred") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::SubType)
      return fail("premise must type e at a subtype");
    ExprPtr st = P[0].ty, e = P[0].e;
    if (rule == "PAIR.sub-elim-ty") return want_typing_claim(rc, e, st->kids[0]);
    return want_formula_claim(rc, substitute(st->kids[1], st->var, e));
  }

  // ---- DESC ----
  if (rule == "DESC.the-set" || rule == "DESC.the-set-pred" || rule == "DESC.the-closed" ||
      rule == "DESC.the-closed-pred") {
    bool set_scoped = rule == "DESC.the-set" || rule == "DESC.the-set-pred";
    if (auto f = need_premises(rc, set_scoped ? 3 : 2)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !P[0].ctx.back().is_decl)
      return fail("first premise must extend the context by the description variable");
    const ContextEntry& d = P[0].ctx.back();
    if (!typing(P[0]) || P[0].ty->k != EK::BoolType) return fail("Φ must be typed at Bool");
    ExprPtr phi = P[0].e, sigma = d.body;
    if (!ctx_eq(P[1].ctx, c.ctx)) return fail("second premise context must equal claim context");
    ExprPtr uniq = expand_abbrevs(eexists_unique(d.var, sigma, phi));
    if (!formula(P[1]) || !alpha_eq(P[1].e, uniq))
      return fail("second premise must be ∃! x:σ Φ[x]");
    ExprPtr the = ethe(d.var, sigma, phi);
    if (set_scoped) {
      if (!ctx_eq(P[2].ctx, c.ctx)) return fail("third premise context must equal claim context");
      if (!typing(P[2]) || !alpha_eq(P[2].e, sigma) || P[2].ty->k != EK::TypeConst ||
          P[2].ty->num != 0)
        return fail("third premise must be Σ ⊢ σ : type_0");
    } else if (!free_vars(the).empty()) {
      return fail("description must be closed");
    }
    if (rule.ends_with("pred")) return want_formula_claim(rc, substitute(phi, d.var, the));
    return want_typing_claim(rc, the, sigma);
  }
  if (rule == "DESC.set-eq-abs") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::TypeConst || P[0].ty->num != 0)
      return fail("first premise must be Σ ⊢ σ : type_0");
    if (!formula(P[1]) || P[1].e->k != EK::EqIn || !alpha_eq(P[1].e->kids[0], P[0].e))
      return fail("second premise must be an equality at σ");
    return want_formula_claim(rc, eabseq(P[1].e->kids[1], P[1].e->kids[2]));
  }
  if (rule == "DESC.fun-cong") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::ArrowType)
      return fail("first premise must type f at an arrow type");
    if (!formula(P[1]) || P[1].e->k != EK::EqIn ||
        !alpha_eq(P[1].e->kids[0], P[0].ty->kids[0]))
      return fail("second premise must be an equality at the domain");
    return want_formula_claim(
        rc, eabseq(eapp(P[0].e, P[1].e->kids[1]), eapp(P[0].e, P[1].e->kids[2])));
  }
  if (rule == "DESC.fun-ext-abs") {
    if (auto f = need_premises(rc, 3)) return f;
    if (!ctx_eq(P[0].ctx, c.ctx) || !ctx_eq(P[1].ctx, c.ctx))
      return fail("typing premises must share the claim context");
    if (!typing(P[0]) || P[0].ty->k != EK::ArrowType || !typing(P[1]) ||
        !alpha_eq(P[0].ty, P[1].ty))
      return fail("premises must type f and g at the same arrow type");
    if (!ctx_extends1(P[2].ctx, c.ctx) || !P[2].ctx.back().is_decl)
      return fail("third premise must extend the context by x:σ");
    const ContextEntry& d = P[2].ctx.back();
    if (!alpha_eq(d.body, P[0].ty->kids[0])) return fail("variable must range over the domain");
    ExprPtr want = eabseq(eapp(P[0].e, evar(d.var)), eapp(P[1].e, evar(d.var)));
    if (!formula(P[2]) || !alpha_eq(P[2].e, want))
      return fail("third premise must be the pointwise absolute equality");
    return want_formula_claim(rc, eabseq(P[0].e, P[1].e));
  }
  if (rule == "DESC.type-antisym") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !ctx_extends1(P[1].ctx, c.ctx))
      return fail("premises must extend the claim context by one declaration");
    const ContextEntry& d1 = P[0].ctx.back();
    const ContextEntry& d2 = P[1].ctx.back();
    if (!d1.is_decl || !d2.is_decl) return fail("extensions must be declarations");
    if (!typing(P[0]) || !typing(P[1]) || P[0].e->k != EK::Var || P[0].e->var != d1.var ||
        P[1].e->k != EK::Var || P[1].e->var != d2.var)
      return fail("premises must type the declared variable");
    if (!alpha_eq(d1.body, P[1].ty) || !alpha_eq(d2.body, P[0].ty))
      return fail("types must be mutually inclusive");
    return want_formula_claim(rc, eabseq(d1.body, P[0].ty));
  }

  // ---- J formation ----
  if (rule == "J.intype-inn") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0])) return fail("premise must be a typing");
    return want_formula_claim(rc, einn(P[0].e, P[0].ty));
  }
  if (rule == "J.abs-eq-form" || rule == "J.inn-form") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr sigma, ty0, a, ta, b, tb;
    if (!inn_formula(P[0], &sigma, &ty0) || ty0->k != EK::TypeConst)
      return fail("first premise must be (inn σ type_i)");
    if (!inn_formula(P[1], &a, &ta) || !inn_formula(P[2], &b, &tb))
      return fail("premises must be membership formulas");
    if (rule == "J.abs-eq-form") return want_formula_claim(rc, einn(eabseq(a, b), ebool()));
    return want_formula_claim(rc, einn(einn(a, sigma), ebool()));
  }
  if (rule == "J.or-form" || rule == "J.not-form") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr phi, psi, t1, t2;
    if (!inn_formula(P[0], &phi, &t1) || t1->k != EK::BoolType ||
        !inn_formula(P[1], &psi, &t2) || t2->k != EK::BoolType)
      return fail("premises must be (inn Φ Bool) formulas");
    if (rule == "J.or-form") return want_formula_claim(rc, einn(eor(phi, psi), ebool()));
    return want_formula_claim(rc, einn(enot(phi), ebool()));
  }
  if (rule == "J.forall-form") {
    if (auto f = need_premises(rc, 1)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !P[0].ctx.back().is_decl)
      return fail("premise must extend the context by the quantified variable");
    const ContextEntry& d = P[0].ctx.back();
    ExprPtr phi, ty;
    if (!inn_formula(P[0], &phi, &ty) || ty->k != EK::BoolType)
      return fail("premise must be (inn Φ Bool)");
    return want_formula_claim(rc, einn(eforall(d.var, d.body, phi), ebool()));
  }

  // ---- ISO ----
  if (rule == "ISO.updown-intro" || rule == "ISO.updown-carry") {
    if (auto f = need_premises(rc, 3)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr sigma, tau;
    int i1, i2;
    if (!universe_typing(P[0], &sigma, &i1) || !universe_typing(P[1], &tau, &i2) || i1 != i2)
      return fail("first premises must type σ and τ in the same universe");
    ExprPtr bij = expand_abbrevs(Expr::mk(EK::Bijection, {sigma, tau}));
    if (!typing(P[2]) || !alpha_eq(P[2].ty, bij))
      return fail("third premise must type f as a bijection σ→τ");
    ExprPtr f = P[2].e;
    ExprPtr ud = eupdown(sigma, tau, f);
    if (rule == "ISO.updown-intro")
      return want_formula_claim(rc, einn(ud, eiso(etype(i1), sigma, tau)));
    std::set<std::string> avoid = free_vars(ud);
    std::string x = fresh_name("x", avoid);
    avoid.insert(x);
    std::string y = fresh_name("y", avoid);
    ExprPtr body = eiff(ecarry(ud, evar(x), evar(y)), eeq(tau, eapp(f, evar(x)), evar(y)));
    return want_formula_claim(rc, expand_abbrevs(eforall(x, sigma, eforall(y, tau, body))));
  }
  if (rule == "ISO.pair-intro") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr a3, isoA, b3, isoB;
    if (!inn_formula(P[0], &a3, &isoA) || isoA->k != EK::Iso ||
        !inn_formula(P[1], &b3, &isoB) || isoB->k != EK::Iso)
      return fail("premises must be iso memberships");
    ExprPtr sigma = isoA->kids[0], tau = isoB->kids[0];
    std::string x = fresh_name("x", free_vars(tau));
    ExprPtr pt = epairtype(x, sigma, tau);
    ExprPtr want = einn(emkpair(a3, b3),
                        eiso(pt, emkpair(isoA->kids[1], isoB->kids[1]),
                             emkpair(isoA->kids[2], isoB->kids[2])));
    return want_formula_claim(rc, want);
  }
  if (rule == "ISO.carry-iff-eq") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || !typing(P[1]) || !alpha_eq(P[0].ty, P[1].ty))
      return fail("premises must type a and b at the same σ");
    ExprPtr sigma = P[0].ty, a = P[0].e, b = P[1].e;
    return want_formula_claim(
        rc, expand_abbrevs(eiff(ecarry(sigma, a, b), eeq(sigma, a, b))));
  }
  if (rule == "ISO.member") {
    if (auto f = need_premises(rc, 1)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr a3, isoA;
    if (!inn_formula(P[0], &a3, &isoA) || isoA->k != EK::Iso)
      return fail("premise must be an iso membership");
    return want_formula_claim(rc, einn(a3, isoA->kids[0]));
  }
  if (rule == "ISO.eq-gen") {
    // the carrying premise is accepted either as the stated formula or in
    // unfolded definitional form: a derived ⇔-instance whose left side is the
    // required carry, together with its derived right-hand side
    if (rc.prem.size() != 4 && rc.prem.size() != 5)
      return fail("expected 4 premises (or 5 with an unfolded carry)");
    if (auto f = same_ctx(rc)) return f;
    if (!typing(P[0]) || P[0].ty->k != EK::PairType || P[0].e->k != EK::MkPair)
      return fail("first premise must type a pair at a pair type");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, P[0].ty) || P[1].e->k != EK::MkPair)
      return fail("second premise must type a pair at the same pair type");
    ExprPtr pt = P[0].ty;
    ExprPtr a1 = P[0].e->kids[0], b1 = P[0].e->kids[1];
    ExprPtr a2 = P[1].e->kids[0], b2 = P[1].e->kids[1];
    if (!type_tree(pt->kids[0])) return fail("σ must be a tree over universe constants");
    if (!simple_in(pt->kids[1], pt->var)) return fail("τ[x] must be simple in x");
    ExprPtr a3, isoA;
    if (!inn_formula(P[2], &a3, &isoA) || isoA->k != EK::Iso ||
        !alpha_eq(isoA->kids[0], pt->kids[0]) || !alpha_eq(isoA->kids[1], a1) ||
        !alpha_eq(isoA->kids[2], a2))
      return fail("third premise must be (inn a3 (iso σ a1 a2))");
    ExprPtr carry =
        expand_abbrevs(ecarry(substitute(pt->kids[1], pt->var, a3), b1, b2));
    if (rc.prem.size() == 4) {
      if (!formula(P[3]) || !alpha_eq(P[3].e, carry))
        return fail("fourth premise must be the carrying formula");
    } else {
      ExprPtr lhs, rhs;
      if (!formula(P[3]) || !destructure_iff(P[3].e, &lhs, &rhs))
        return fail("fourth premise must be a carrying ⇔-instance");
      if (!alpha_eq(lhs, carry))
        return fail("the ⇔-instance does not define the required carrying");
      if (!formula(P[4]) || !alpha_eq(P[4].e, rhs))
        return fail("fifth premise must derive the right-hand side of the ⇔-instance");
    }
    return want_formula_claim(rc, eeq(pt, P[0].e, P[1].e));
  }
  if (rule == "ISO.carry-pair" || rule == "ISO.carry-arrow" || rule == "ISO.carry-subtype") {
    if (auto f = need_premises(rc, 6)) return f;
    if (!ctx_eq(P[0].ctx, c.ctx) || !ctx_eq(P[1].ctx, c.ctx) || !ctx_eq(P[2].ctx, c.ctx) ||
        !ctx_eq(P[4].ctx, c.ctx) || !ctx_eq(P[5].ctx, c.ctx))
      return fail("premise contexts must equal the claim context");
    if (!typing(P[0]) || !typing(P[1]) || !alpha_eq(P[0].ty, P[1].ty))
      return fail("a1 and a2 must be typed at the same σ");
    ExprPtr sigma = P[0].ty, a1 = P[0].e, a2 = P[1].e;
    ExprPtr a3, isoA;
    if (!inn_formula(P[2], &a3, &isoA) || isoA->k != EK::Iso ||
        !alpha_eq(isoA->kids[0], sigma) || !alpha_eq(isoA->kids[1], a1) ||
        !alpha_eq(isoA->kids[2], a2))
      return fail("third premise must be (inn a3 (iso σ a1 a2))");
    if (!ctx_extends1(P[3].ctx, c.ctx) || !P[3].ctx.back().is_decl)
      return fail("fourth premise must extend the context by x:σ");
    const ContextEntry& d = P[3].ctx.back();
    if (!alpha_eq(d.body, sigma)) return fail("family variable must be declared at σ");
    const std::string& x = d.var;
    ExprPtr fam;
    if (!universe_typing(P[3], &fam)) return fail("fourth premise must type the family");
    auto at = [&](const ExprPtr& e, const ExprPtr& a) { return substitute(e, x, a); };
    if (rule == "ISO.carry-pair") {
      if (fam->k != EK::PairType || free_vars(fam->kids[1]).count(fam->var))
        return fail("family must be a simple pair type");
      ExprPtr t1 = fam->kids[0], t2 = fam->kids[1];
      if (!simple_in(t1, x) || !simple_in(t2, x)) return fail("components must be simple in x");
      if (!typing(P[4]) || !alpha_eq(P[4].ty, at(fam, a1)) || !typing(P[5]) ||
          !alpha_eq(P[5].ty, at(fam, a2)))
        return fail("b1 and b2 must be typed at the family at a1, a2");
      ExprPtr b1 = P[4].e, b2 = P[5].e;
      ExprPtr lhs = ecarry(at(fam, a3), b1, b2);
      ExprPtr rhs = eand(ecarry(at(t1, a3), eproj(1, b1), eproj(1, b2)),
                         ecarry(at(t2, a3), eproj(2, b1), eproj(2, b2)));
      return want_formula_claim(rc, expand_abbrevs(eiff(lhs, rhs)));
    }
    if (rule == "ISO.carry-arrow") {
      if (fam->k != EK::ArrowType) return fail("family must be an arrow type");
      ExprPtr t1 = fam->kids[0], t2 = fam->kids[1];
      if (!simple_in(t1, x) || !simple_in(t2, x)) return fail("components must be simple in x");
      if (!typing(P[4]) || !alpha_eq(P[4].ty, at(fam, a1)) || !typing(P[5]) ||
          !alpha_eq(P[5].ty, at(fam, a2)))
        return fail("b1 and b2 must be typed at the family at a1, a2");
      ExprPtr b1 = P[4].e, b2 = P[5].e;
      std::set<std::string> avoid = free_vars(fam);
      for (auto& v : free_vars(eapp(b1, b2))) avoid.insert(v);
      std::string x1 = fresh_name("x1", avoid);
      avoid.insert(x1);
      std::string x2 = fresh_name("x2", avoid);
      ExprPtr lhs = ecarry(at(fam, a3), b1, b2);
      ExprPtr rhs = eforall(
          x1, at(t1, a1),
          eforall(x2, at(t1, a2),
                  eimplies(ecarry(at(t1, a3), evar(x1), evar(x2)),
                           ecarry(at(t2, a3), eapp(b1, evar(x1)), eapp(b2, evar(x2))))));
      return want_formula_claim(rc, expand_abbrevs(eiff(lhs, rhs)));
    }
    // ISO.carry-subtype
    if (fam->k != EK::SubType) return fail("family must be a subtype");
    ExprPtr t = fam->kids[0];
    if (!simple_in(t, x)) return fail("carrier must be simple in x");
    if (!typing(P[4]) || !alpha_eq(P[4].ty, at(fam, a1)) || !typing(P[5]) ||
        !alpha_eq(P[5].ty, at(fam, a2)))
      return fail("b1 and b2 must be typed at the family at a1, a2");
    ExprPtr b1 = P[4].e, b2 = P[5].e;
    ExprPtr lhs = ecarry(at(fam, a3), b1, b2);
    ExprPtr rhs = ecarry(at(t, a3), b1, b2);
    return want_formula_claim(rc, expand_abbrevs(eiff(lhs, rhs)));
  }

  // ---- NAT ----
  if (rule == "NAT.lam") {
    if (auto f = need_premises(rc, 1)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !P[0].ctx.back().is_decl)
      return fail("premise must extend the context by x:σ");
    const ContextEntry& d = P[0].ctx.back();
    if (!typing(P[0])) return fail("premise must be a typing");
    ExprPtr lam = enatlam(d.var, d.body, P[0].e);
    ExprPtr pi = enatarrow(d.var, d.body, P[0].ty);
    return want_formula_claim(rc, einn(lam, pi));
  }
  if (rule == "NAT.app") {
    if (auto f = need_premises(rc, 2)) return f;
    if (auto f = same_ctx(rc)) return f;
    ExprPtr f0, pi;
    if (!inn_formula(P[0], &f0, &pi) || pi->k != EK::NatArrow)
      return fail("first premise must be (inn f (nat-arrow ...))");
    if (!typing(P[1]) || !alpha_eq(P[1].ty, pi->kids[0]))
      return fail("argument must be typed at the Π domain");
    return want_typing_claim(rc, enatapp(f0, P[1].e),
                             substitute(pi->kids[1], pi->var, P[1].e));
  }
  if (rule == "NAT.beta") {
    if (auto f = need_premises(rc, 2)) return f;
    if (!ctx_extends1(P[0].ctx, c.ctx) || !P[0].ctx.back().is_decl)
      return fail("first premise must extend the context by x:σ");
    const ContextEntry& d = P[0].ctx.back();
    if (!typing(P[0])) return fail("first premise must be a typing");
    if (!ctx_eq(P[1].ctx, c.ctx) || !typing(P[1]) || !alpha_eq(P[1].ty, d.body))
      return fail("second premise must type the argument at σ");
    ExprPtr lam = enatlam(d.var, d.body, P[0].e);
    return want_formula_claim(
        rc, eabseq(enatapp(lam, P[1].e), substitute(P[0].e, d.var, P[1].e)));
  }

  return fail("unknown rule '" + rule + "'");
}

}  // namespace chk

// Verifies a single step against the derived-so-far map. Returns nullopt on
// success, otherwise the reason for rejection.
inline std::optional<std::string> check_step(const Step& step,
                                             const std::map<std::string, Sequent>& derived) {
  if (!known_rule(step.rule)) return "unknown rule '" + step.rule + "'";
  std::vector<Sequent> prem;
  prem.reserve(step.premises.size());
  for (auto& id : step.premises) {
    auto it = derived.find(id);
    if (it == derived.end()) return "premise '" + id + "' not derived";
    prem.push_back(chk::expand_sequent(it->second));
  }
  Sequent claim = chk::expand_sequent(step.claim);
  // hints are only meaningful for abs-subst; reject stray ones elsewhere
  if (step.rule != "PAIR.abs-subst" && !step.hints.empty())
    return "rule takes no hints";
  chk::RuleCtx rc{claim, prem, step.hints};
  if (auto f = chk::check_rule(step.rule, rc)) return *f;
  return std::nullopt;
}

inline CheckReport check_script(const ProofScript& script) {
  CheckReport report;
  std::map<std::string, Sequent> derived;
  bool failed = false;
  for (auto& st : script.steps) {
    if (failed) {
      report.steps.push_back({st.id, StepState::Skipped, "skipped after first failure"});
      continue;
    }
    std::string why;
    if (derived.count(st.id)) {
      why = "duplicate step id";
    } else if (auto f = check_step(st, derived)) {
      why = *f;
    }
    if (!why.empty()) {
      failed = true;
      report.steps.push_back({st.id, StepState::Failed, why});
      report.first_failure = "step " + st.id + ": " + why;
    } else {
      report.steps.push_back({st.id, StepState::Ok, ""});
      derived[st.id] = st.claim;
    }
  }
  report.accepted = !failed && !script.steps.empty();
  return report;
}

// -- proof file format -----------------------------------------------------------
// (proof (step <id> <sequent> (rule <name>) (premises <id>*) (hints (<k> <v>)*)) ...)

inline ProofScript proof_from_sexpr(const Sexpr& e) {
  if (!e.head_is("proof")) throw ParseError("(proof ...) expected", e.line, e.col);
  ProofScript script;
  for (size_t i = 1; i < e.size(); i++) {
    const Sexpr& s = e[i];
    if (!s.head_is("step") || s.size() < 4)
      throw ParseError("(step <id> <sequent> (rule <name>) ...) expected", s.line, s.col);
    Step st;
    if (!s[1].is_atom) throw ParseError("step id must be an atom", s[1].line, s[1].col);
    st.id = s[1].atom;
    st.claim = sequent_from_sexpr(s[2]);
    if (!s[3].head_is("rule") || s[3].size() != 2 || !s[3][1].is_atom)
      throw ParseError("(rule <name>) expected", s[3].line, s[3].col);
    st.rule = s[3][1].atom;
    for (size_t k = 4; k < s.size(); k++) {
      const Sexpr& part = s[k];
      if (part.head_is("premises")) {
        for (size_t j = 1; j < part.size(); j++) {
          if (!part[j].is_atom) throw ParseError("premise id expected", part[j].line, part[j].col);
          st.premises.push_back(part[j].atom);
        }
      } else if (part.head_is("hints")) {
        for (size_t j = 1; j < part.size(); j++) {
          if (!part[j].is_list() || part[j].size() != 2 || !part[j][0].is_atom)
            throw ParseError("(key value) hint expected", part[j].line, part[j].col);
          st.hints.emplace(part[j][0].atom, part[j][1]);
        }
      } else {
        throw ParseError("unknown step component", part.line, part.col);
      }
    }
    script.steps.push_back(std::move(st));
  }
  return script;
}

inline ProofScript parse_proof(const std::string& text) {
  return proof_from_sexpr(parse_sexpr(text));
}

}  // namespace mortt
