#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mortt/checker.hpp"

namespace mortt {

// LCF-flavored proof authoring: every added step is checked immediately, and
// common obligations (context well-formedness, Bool formation, typings,
// weakening chains) are synthesized and deduplicated. Scripts produced here
// are verified again from their serialized form by the batch checker.
class Author {
 public:
  const ProofScript& script() const { return script_; }

  std::string serialize() const {
    std::string out = "(proof\n";
    for (auto& st : script_.steps) {
      out += "  (step " + st.id + " " + print_sequent(st.claim) + " (rule " + st.rule + ")";
      if (!st.premises.empty()) {
        out += " (premises";
        for (auto& p : st.premises) out += " " + p;
        out += ")";
      }
      if (!st.hints.empty()) {
        out += " (hints";
        for (auto& [k, v] : st.hints) out += " (" + k + " " + sexpr_to_string(v) + ")";
        out += ")";
      }
      out += ")\n";
    }
    return out + ")\n";
  }

  // Adds a step after checking it; returns its id. Reuses an existing step
  // with an alpha-equal claim instead of duplicating (unless forced).
  std::string add(const std::string& rule, Sequent claim, std::vector<std::string> premises = {},
                  std::map<std::string, Sexpr> hints = {}, bool force = false) {
    if (!force)
      if (auto hit = lookup(claim)) return *hit;
    Step st;
    st.id = "s" + std::to_string(++counter_);
    st.claim = std::move(claim);
    st.rule = rule;
    st.premises = std::move(premises);
    st.hints = std::move(hints);
    if (auto why = check_step(st, derived_))
      throw std::runtime_error("authoring " + st.id + " (" + rule + "): " + *why + "\n  claim: " +
                               print_sequent(st.claim));
    derived_[st.id] = st.claim;
    script_.steps.push_back(st);
    return st.id;
  }

  // exact declared names (the checker never renames context variables),
  // alpha-equivalence inside the entries and the judgement
  static bool reusable(const Sequent& a, const Sequent& b) {
    if (a.jk != b.jk || !chk::ctx_eq(a.ctx, b.ctx)) return false;
    if (a.jk == JudgeKind::True) return true;
    if (!alpha_eq(a.e, b.e)) return false;
    return a.jk != JudgeKind::TypeOf || alpha_eq(a.ty, b.ty);
  }

  std::optional<std::string> lookup(const Sequent& s) const {
    for (auto& st : script_.steps)
      if (reusable(st.claim, s)) return st.id;
    return std::nullopt;
  }

  std::optional<std::string> lookup_typing(const Context& ctx, const ExprPtr& e,
                                           ExprPtr* ty = nullptr) const {
    for (auto& st : script_.steps) {
      if (st.claim.jk != JudgeKind::TypeOf) continue;
      if (!chk::ctx_eq(st.claim.ctx, ctx) || !alpha_eq(st.claim.e, e)) continue;
      if (ty) *ty = expand_abbrevs(st.claim.ty);
      return st.id;
    }
    return std::nullopt;
  }

  // Σ ⊢ True for the given context, deriving declarations and assumptions
  // entry by entry.
  std::string wf(const Context& ctx) {
    if (auto hit = lookup(Sequent::truth(ctx))) return *hit;
    if (ctx.empty()) return add("EXPR.empty", Sequent::truth({}));
    Context prefix(ctx.begin(), ctx.end() - 1);
    const ContextEntry& last = ctx.back();
    wf(prefix);
    if (last.is_decl) {
      auto [tid, lvl] = typing_in_universe(prefix, last.body);
      (void)lvl;
      return add("EXPR.declare", Sequent::truth(ctx), {tid});
    }
    // propositional assumptions through EXPR.assume, judgemental through J.assume
    if (auto prop = try_formation(prefix, last.body))
      return add("EXPR.assume", Sequent::truth(ctx), {*prop});
    std::string inn = j_formation(prefix, last.body);
    return add("J.assume", Sequent::truth(ctx), {inn});
  }

  // Σ ⊢ e : type_i, unpacking subtype declarations as needed.
  std::pair<std::string, int> typing_in_universe(const Context& ctx, const ExprPtr& e) {
    auto [id, ty] = typing(ctx, e);
    while (ty->k == EK::SubType) {
      id = add("PAIR.sub-elim-ty", Sequent::typing(ctx, e, ty->kids[0]), {id});
      ty = ty->kids[0];
    }
    if (ty->k != EK::TypeConst)
      throw std::runtime_error("not typed in a universe: " + print_expr(e));
    return {id, ty->num};
  }

  // Σ ⊢ e : τ, synthesized; consults already-derived typings first.
  std::pair<std::string, ExprPtr> typing(const Context& ctx, const ExprPtr& e0) {
    ExprPtr e = expand_abbrevs(e0);
    ExprPtr ty;
    if (auto hit = lookup_typing(ctx, e, &ty)) return {*hit, ty};
    switch (e->k) {
      case EK::Var: {
        for (size_t i = 0; i < ctx.size(); i++) {
          if (!ctx[i].is_decl || ctx[i].var != e->var) continue;
          Context through(ctx.begin(), ctx.begin() + i + 1);
          wf(through);
          std::string id =
              add("EXPR.assumption", Sequent::typing(through, e, ctx[i].body), {wf(through)});
          return {weaken_into(ctx, id, Sequent::typing(through, e, ctx[i].body)),
                  expand_abbrevs(ctx[i].body)};
        }
        throw std::runtime_error("typing: unbound variable " + e->var);
      }
      case EK::TypeConst: {
        Sequent s = Sequent::typing({}, e, etype(e->num + 1));
        std::string id = lookup(s) ? *lookup(s) : add("EXPR.universe", s);
        return {weaken_into(ctx, id, s), etype(e->num + 1)};
      }
      case EK::BoolType: {
        Sequent s = Sequent::typing({}, e, etype(0));
        std::string id = lookup(s) ? *lookup(s) : add("EXPR.bool", s);
        return {weaken_into(ctx, id, s), etype(0)};
      }
      case EK::ArrowType: {
        auto [i1, l1] = typing_in_universe(ctx, e->kids[0]);
        auto [i2, l2] = typing_in_universe(ctx, e->kids[1]);
        int l = std::max(l1, l2);
        i1 = lift(ctx, i1, e->kids[0], l1, l);
        i2 = lift(ctx, i2, e->kids[1], l2, l);
        return {add("EXPR.arrow", Sequent::typing(ctx, e, etype(l)), {i1, i2}), etype(l)};
      }
      case EK::App: {
        auto [fi, fty] = typing(ctx, e->kids[0]);
        while (fty->k == EK::SubType) {  // functions packaged in subtypes
          fi = add("PAIR.sub-elim-ty", Sequent::typing(ctx, e->kids[0], fty->kids[0]), {fi});
          fty = fty->kids[0];
        }
        if (fty->k != EK::ArrowType)
          throw std::runtime_error("typing: applying a non-arrow " + print_expr(e->kids[0]));
        auto [ai, aty] = typing(ctx, e->kids[1]);
        if (!alpha_eq(aty, fty->kids[0]))
          throw std::runtime_error("typing: argument type mismatch in " + print_expr(e));
        return {add("EXPR.apply", Sequent::typing(ctx, e, fty->kids[1]), {fi, ai}),
                fty->kids[1]};
      }
      case EK::Forall: {
        auto [di, dl] = typing_in_universe(ctx, e->kids[0]);
        (void)dl;
        auto [x, body] = open_binder(ctx, e);
        Context inner = ctx;
        inner.push_back(ContextEntry::decl(x, e->kids[0]));
        std::string bi = formation(inner, body);
        return {add("EXPR.forall-form", Sequent::typing(ctx, e, ebool()), {di, bi}), ebool()};
      }
      case EK::Or: {
        std::string a = formation(ctx, e->kids[0]);
        std::string b = formation(ctx, e->kids[1]);
        return {add("EXPR.or-form", Sequent::typing(ctx, e, ebool()), {a, b}), ebool()};
      }
      case EK::Not: {
        std::string a = formation(ctx, e->kids[0]);
        return {add("EXPR.not-form", Sequent::typing(ctx, e, ebool()), {a, a}), ebool()};
      }
      case EK::EqIn: {
        auto [ti, tl] = typing_in_universe(ctx, e->kids[0]);
        (void)tl;
        auto [ai, aty] = typing(ctx, e->kids[1]);
        auto [bi, bty] = typing(ctx, e->kids[2]);
        if (!alpha_eq(aty, e->kids[0]) || !alpha_eq(bty, e->kids[0]))
          throw std::runtime_error("typing: equality operand type mismatch in " + print_expr(e));
        return {add("EXPR.eq-form", Sequent::typing(ctx, e, ebool()), {ti, ai, bi}), ebool()};
      }
      case EK::PairType: {
        auto [di, l1] = typing_in_universe(ctx, e->kids[0]);
        auto [x, body] = open_binder(ctx, e);
        Context inner = ctx;
        inner.push_back(ContextEntry::decl(x, e->kids[0]));
        auto [bi, l2] = typing_in_universe(inner, body);
        int l = std::max(l1, l2);
        di = lift(ctx, di, e->kids[0], l1, l);
        bi = lift(inner, bi, body, l2, l);
        return {add("PAIR.form", Sequent::typing(ctx, e, etype(l)), {di, bi}), etype(l)};
      }
      case EK::SubType: {
        auto [di, l] = typing_in_universe(ctx, e->kids[0]);
        auto [x, body] = open_binder(ctx, e);
        Context inner = ctx;
        inner.push_back(ContextEntry::decl(x, e->kids[0]));
        std::string pi = formation(inner, body);
        return {add("PAIR.sub-form", Sequent::typing(ctx, e, etype(l)), {di, pi}), etype(l)};
      }
      case EK::Proj: {
        auto [pi, pty] = typing(ctx, e->kids[0]);
        if (pty->k != EK::PairType)
          throw std::runtime_error("typing: projecting a non-pair " + print_expr(e->kids[0]));
        if (e->num == 1)
          return {add("PAIR.proj1", Sequent::typing(ctx, e, pty->kids[0]), {pi}), pty->kids[0]};
        ExprPtr ty2 = substitute(pty->kids[1], pty->var, eproj(1, e->kids[0]));
        return {add("PAIR.proj2", Sequent::typing(ctx, e, ty2), {pi}), ty2};
      }
      case EK::MkPair: {
        throw std::runtime_error(
            "typing: pair introductions need an explicit target type; use pair_intro");
      }
      case EK::NatApp: {
        // Σ ⊢ f⟨a⟩ : τ[a] from a previously derived inn(f, Π) formula
        for (auto& st : script_.steps) {
          if (st.claim.jk != JudgeKind::Formula || st.claim.e->k != EK::InnType) continue;
          if (!chk::ctx_eq(st.claim.ctx, ctx)) continue;
          if (!alpha_eq(st.claim.e->kids[0], e->kids[0])) continue;
          ExprPtr pi = st.claim.e->kids[1];
          if (pi->k != EK::NatArrow) continue;
          auto [ai, aty] = typing(ctx, e->kids[1]);
          if (!alpha_eq(aty, pi->kids[0])) continue;
          ExprPtr ty2 = substitute(pi->kids[1], pi->var, e->kids[1]);
          return {add("NAT.app", Sequent::typing(ctx, e, ty2), {st.id, ai}), ty2};
        }
        throw std::runtime_error("typing: no Π-membership derived for " + print_expr(e));
      }
      default:
        throw std::runtime_error("typing: no synthesis for " + print_expr(e));
    }
  }

  // Σ ⊢ Φ : Bool
  std::string formation(const Context& ctx, const ExprPtr& phi) {
    auto r = try_formation(ctx, phi);
    if (!r) throw std::runtime_error("formation failed for " + print_expr(phi));
    return *r;
  }

  std::optional<std::string> try_formation(const Context& ctx, const ExprPtr& phi0) {
    try {
      ExprPtr phi = expand_abbrevs(phi0);
      auto [id, ty] = typing(ctx, phi);
      if (ty->k != EK::BoolType) return std::nullopt;
      return id;
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
  }

  // Σ ⊢ (inn Φ Bool), the judgmental formation of a formula.
  std::string j_formation(const Context& ctx, const ExprPtr& phi0) {
    ExprPtr phi = expand_abbrevs(phi0);
    Sequent want = Sequent::formula(ctx, einn(phi, ebool()));
    if (auto hit = lookup(want)) return *hit;
    switch (phi->k) {
      case EK::AbsEq: {
        std::string si = j_member(ctx, etype(0));
        std::string ai = j_member(ctx, phi->kids[0]);
        std::string bi = j_member(ctx, phi->kids[1]);
        return add("J.abs-eq-form", want, {si, ai, bi});
      }
      case EK::InnType: {
        std::string si = j_member(ctx, phi->kids[1]);
        std::string ai = j_member(ctx, phi->kids[0]);
        return add("J.inn-form", want, {si, ai, ai});
      }
      case EK::Or: {
        std::string a = j_formation(ctx, phi->kids[0]);
        std::string b = j_formation(ctx, phi->kids[1]);
        return add("J.or-form", want, {a, b});
      }
      case EK::Not: {
        std::string a = j_formation(ctx, phi->kids[0]);
        return add("J.not-form", want, {a, a});
      }
      case EK::Forall: {
        auto [x, body] = open_binder(ctx, phi);
        Context inner = ctx;
        inner.push_back(ContextEntry::decl(x, phi->kids[0]));
        std::string b = j_formation(inner, body);
        return add("J.forall-form", want, {b});
      }
      default: {
        std::string id = formation(ctx, phi);
        return add("J.intype-inn", want, {id});
      }
    }
  }

  // Σ ⊢ (inn e τ) from a synthesized typing.
  std::string j_member(const Context& ctx, const ExprPtr& e) {
    auto [id, ty] = typing(ctx, e);
    Sequent want = Sequent::formula(ctx, einn(e, ty));
    if (auto hit = lookup(want)) return *hit;
    return add("J.intype-inn", want, {id});
  }

  // Weakens a derived sequent into an extension of its context.
  std::string weaken_into(const Context& target, std::string id, Sequent have) {
    while (have.ctx.size() < target.size()) {
      Context next(target.begin(), target.begin() + have.ctx.size() + 1);
      std::string w = wf(next);
      Sequent claim = have;
      claim.ctx = next;
      id = add("EXPR.weaken", claim, {w, id});
      have = claim;
    }
    return id;
  }

  // Derives the last context entry as a judgement (assumption rule), in the
  // given context (weakened as needed).
  std::string assume_last(const Context& ctx) {
    const ContextEntry& last = ctx.back();
    Sequent claim = last.is_decl ? Sequent::typing(ctx, evar(last.var), last.body)
                                 : Sequent::formula(ctx, last.body);
    if (auto hit = lookup(claim)) return *hit;
    return add("EXPR.assumption", claim, {wf(ctx)});
  }

  // Σ ⊢ Pair(u, w) : PT via PAIR.intro; pt must be a PairType expression.
  std::string pair_intro(const Context& ctx, const ExprPtr& pt0, const ExprPtr& u,
                         const ExprPtr& w) {
    ExprPtr pt = expand_abbrevs(pt0);
    auto [pti, ptty] = typing(ctx, pt);
    (void)ptty;
    auto [ui, uty] = typing(ctx, u);
    (void)uty;
    auto [wi, wty] = typing(ctx, w);
    (void)wty;
    return add("PAIR.intro", Sequent::typing(ctx, emkpair(u, w), pt), {pti, ui, wi});
  }

 private:
  ProofScript script_;
  std::map<std::string, Sequent> derived_;
  int counter_ = 0;

  // binder name that does not collide with declared variables
  static std::pair<std::string, ExprPtr> open_binder(const Context& ctx, const ExprPtr& e) {
    std::set<std::string> avoid;
    for (auto& en : ctx)
      if (en.is_decl) avoid.insert(en.var);
    for (auto& v : free_vars(e)) avoid.insert(v);
    std::string x = fresh_name(e->var, avoid);
    ExprPtr body = x == e->var ? e->kids[1] : substitute(e->kids[1], e->var, evar(x));
    return {x, body};
  }

  static int universe_level(const ExprPtr& ty) {
    if (ty->k != EK::TypeConst)
      throw std::runtime_error("expected a universe, got " + print_expr(ty));
    return ty->num;
  }

  std::string lift(const Context& ctx, std::string id, const ExprPtr& e, int from, int to) {
    for (int l = from; l < to; l++)
      id = add("EXPR.cumulative", Sequent::typing(ctx, e, etype(l + 1)), {id});
    return id;
  }
};

}  // namespace mortt
