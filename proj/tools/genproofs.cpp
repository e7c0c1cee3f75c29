// Authors the bundled proof scripts and writes them under proofs/.
// Each script is checked step by step while being built, and the serialized
// form is reparsed and checked again before it is written out.

#include <fstream>
#include <iostream>

#include "mortt/author.hpp"

using namespace mortt;

namespace {

ExprPtr P(const std::string& s) { return parse_expr(s); }

void emit(const std::string& path, Author& a) {
  std::string text = a.serialize();
  auto rep = check_script(parse_proof(text));
  if (!rep.accepted) {
    std::cerr << path << " failed recheck: " << rep.first_failure << "\n";
    std::exit(1);
  }
  std::ofstream f(path, std::ios::binary);
  f << "; generated by tools/genproofs; " << rep.steps.size() << " steps\n" << text;
  std::cout << path << ": " << rep.steps.size() << " steps, accepted\n";
}

Sexpr atom(const std::string& s) {
  Sexpr e;
  e.is_atom = true;
  e.atom = s;
  return e;
}

std::map<std::string, Sexpr> pattern_hints(const std::string& pattern, const std::string& var) {
  return {{"pattern", parse_sexpr(pattern)}, {"var", atom(var)}};
}

Context push(const Context& c, const std::string& x, const ExprPtr& ty) {
  Context r = c;
  r.push_back(ContextEntry::decl(x, ty));
  return r;
}

// Θ[u] -> Θ[w] rewriting with an explicit u ≐ w step.
std::string rewrite(Author& a, const Context& ctx, const std::string& eq_id,
                    const std::string& src_id, const std::string& pattern,
                    const std::string& var, const Sequent& want) {
  return a.add("PAIR.abs-subst", want, {eq_id, src_id}, pattern_hints(pattern, var));
}

// ----------------------------------------------------------------------------
// (a) Voldemort's theorem, transcribed at a dependent family tf : sg -> Set
//     with single-class fibers, so e[x] = The(y : tf(x), y = y) is typeable.
// ----------------------------------------------------------------------------
void voldemort() {
  Author a;
  // tf lands in the subtype of single-class sets, so the uniqueness premise
  // of the description rule comes out of subtype elimination
  std::string One = "(subtype (t (type-i 0)) (exists-unique (w t) (eq t w w)))";
  ExprPtr the_of = P("(the (y (app tf aa)) (eq (app tf aa) y y))");
  ExprPtr pt = P("(pairtype (x sg) (app tf x))");
  Context C{ContextEntry::decl("sg", etype(0)),
            ContextEntry::decl("tf", P("(arrow sg " + One + ")")),
            ContextEntry::decl("aa", P("sg")),
            ContextEntry::decl("bb", P("(app tf aa)"))};

  // The(y : tf(aa), ...) : tf(aa) via the set-scoped description rule
  auto the_typing = [&](const Context& ctx, const ExprPtr& at) {
    ExprPtr dom = eapp(evar("tf"), at);
    ExprPtr body = eeq(dom, evar("y"), evar("y"));
    Context inner = ctx;
    inner.push_back(ContextEntry::decl("y", dom));
    std::string phi_bool = a.formation(inner, body);
    auto [app_one, app_one_ty] = a.typing(ctx, dom);  // tf(at) : One
    (void)app_one_ty;
    ExprPtr one_expanded = expand_abbrevs(P(One));
    ExprPtr uniq_at_e = expand_abbrevs(
        substitute(one_expanded->kids[1], one_expanded->var, dom));
    std::string uniq_at =
        a.add("PAIR.sub-elim-pred", Sequent::formula(ctx, uniq_at_e), {app_one});
    auto [seti, setl] = a.typing_in_universe(ctx, dom);
    (void)setl;
    ExprPtr the = ethe("y", dom, body);
    return a.add("DESC.the-set", Sequent::typing(ctx, the, dom), {phi_bool, uniq_at, seti});
  };

  std::string e_aa = the_typing(C, evar("aa"));
  ExprPtr pair_ab = emkpair(evar("aa"), evar("bb"));
  ExprPtr pair_ae = emkpair(evar("aa"), the_of);
  ExprPtr eq_pairs = eeq(pt, pair_ab, pair_ae);
  a.pair_intro(C, pt, evar("aa"), evar("bb"));
  a.pair_intro(C, pt, evar("aa"), the_of);
  Context CE = C;
  CE.push_back(ContextEntry::assume(eq_pairs));
  std::string hyp = a.assume_last(CE);
  std::string the_ce = the_typing(CE, evar("aa"));  // reused by the projections

  // substitution with e[p] := (tf(pi1 p) ∋ pi2 p = The(...)) at Bool
  Context CP = CE;
  CP.push_back(ContextEntry::decl("p", pt));
  std::string the_p = the_typing(CP, eproj(1, evar("p")));
  ExprPtr phi_p = P(
      "(eq (app tf (proj1 p)) (proj2 p) (the (y (app tf (proj1 p))) (eq (app tf (proj1 p)) y "
      "y)))");
  std::string phi_bool = a.formation(CP, phi_p);
  ExprPtr phi_ab = substitute(phi_p, "p", pair_ab);
  ExprPtr phi_ae = substitute(phi_p, "p", pair_ae);
  ExprPtr s_eq = eeq(ebool(), phi_ab, phi_ae);
  std::string subst = a.add("PC.subst", Sequent::formula(CE, s_eq), {phi_bool, hyp});

  // projection equations, weakened into the equality context
  auto proj_eq = [&](const char* rule, const ExprPtr& u, const ExprPtr& w, int which) {
    ExprPtr pr = emkpair(u, w);
    auto [pti, pty] = a.typing(CE, pt);
    (void)pty;
    auto [ui, uty] = a.typing(CE, u);
    (void)uty;
    auto [wi, wty] = a.typing(CE, w);
    (void)wty;
    ExprPtr lhs = eproj(which, pr);
    ExprPtr rhs = which == 1 ? u : w;
    return a.add(rule, Sequent::formula(CE, eabseq(lhs, rhs)), {pti, ui, wi});
  };
  std::string p1ab = proj_eq("PAIR.intro-proj1", evar("aa"), evar("bb"), 1);
  std::string p2ab = proj_eq("PAIR.intro-proj2", evar("aa"), evar("bb"), 2);
  std::string p1ae = proj_eq("PAIR.intro-proj1", evar("aa"), the_of, 1);
  std::string p2ae = proj_eq("PAIR.intro-proj2", evar("aa"), the_of, 2);

  // rewrite the substituted equation down to
  //   (bb = The(aa)) =_Bool (The(aa) = The(aa))
  auto phi_at = [&](const std::string& z) {
    return "(eq (app tf " + z + ") (proj2 q_) (the (y (app tf " + z + ")) (eq (app tf " + z +
           ") y y)))";
  };
  std::string qab = print_expr(pair_ab), qae = print_expr(pair_ae);
  auto replace_all = [](std::string text, const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
      text.replace(pos, from.size(), to);
      pos += to.size();
    }
    return text;
  };
  // left side: collapse (proj1 q) then (proj2 q)
  std::string pat1 = "(eq (bool-type) " +
                     replace_all(phi_at("z_"), "q_", qab) + " " +
                     print_expr(phi_ae) + ")";
  ExprPtr phi_ab_1 = substitute(P(replace_all(phi_at("z_"), "q_", qab)), "z_", evar("aa"));
  std::string step1 =
      rewrite(a, CE, p1ab, subst, pat1, "z_", Sequent::formula(CE, eeq(ebool(), phi_ab_1, phi_ae)));
  std::string pat2 = "(eq (bool-type) (eq (app tf aa) z_ " + print_expr(the_of) + ") " +
                     print_expr(phi_ae) + ")";
  ExprPtr phi_ab_2 = eeq(eapp(evar("tf"), evar("aa")), evar("bb"), the_of);
  std::string step2 =
      rewrite(a, CE, p2ab, step1, pat2, "z_", Sequent::formula(CE, eeq(ebool(), phi_ab_2, phi_ae)));
  // right side
  std::string pat3 = "(eq (bool-type) " + print_expr(phi_ab_2) + " " +
                     replace_all(phi_at("z_"), "q_", qae) + ")";
  ExprPtr phi_ae_1 = substitute(P(replace_all(phi_at("z_"), "q_", qae)), "z_", evar("aa"));
  std::string step3 =
      rewrite(a, CE, p1ae, step2, pat3, "z_", Sequent::formula(CE, eeq(ebool(), phi_ab_2, phi_ae_1)));
  std::string pat4 = "(eq (bool-type) " + print_expr(phi_ab_2) + " (eq (app tf aa) z_ " +
                     print_expr(the_of) + "))";
  ExprPtr phi_ae_2 = eeq(eapp(evar("tf"), evar("aa")), the_of, the_of);
  std::string step4 =
      rewrite(a, CE, p2ae, step3, pat4, "z_", Sequent::formula(CE, eeq(ebool(), phi_ab_2, phi_ae_2)));

  // reflexivity on the right, converted through Bool-scoped absolute equality
  std::string refl =
      a.add("PC.eq-refl", Sequent::formula(CE, phi_ae_2), {the_ce});
  auto [bool_set, bl] = a.typing_in_universe(CE, ebool());
  (void)bl;
  std::string abs =
      a.add("DESC.set-eq-abs", Sequent::formula(CE, eabseq(phi_ab_2, phi_ae_2)), {bool_set, step4});
  std::string sym = a.add("PAIR.abs-sym", Sequent::formula(CE, eabseq(phi_ae_2, phi_ab_2)), {abs});
  rewrite(a, CE, sym, refl, "z_", "z_", Sequent::formula(CE, phi_ab_2));

  emit("proofs/voldemort.mortt", a);
}

// ----------------------------------------------------------------------------
// (b) cryptomorphism transfer between PairOf(sg,tu) and PairOf(tu,sg) via the
//     swap natural maps; both round-trip identities are derived.
// ----------------------------------------------------------------------------
void cryptomorphism() {
  Author a;
  ExprPtr pt = P("(pairtype (x sg) tu)");
  ExprPtr qt = P("(pairtype (x tu) sg)");
  Context C{ContextEntry::decl("sg", etype(0)), ContextEntry::decl("tu", etype(0)),
            ContextEntry::decl("G", pt), ContextEntry::decl("H", pt)};
  ExprPtr swap_f = enatlam("p", pt, emkpair(eproj(2, evar("p")), eproj(1, evar("p"))));
  ExprPtr swap_g = enatlam("q", qt, emkpair(eproj(2, evar("q")), eproj(1, evar("q"))));

  // natural-map memberships: f ∈ pt ↪ qt and g ∈ qt ↪ pt
  Context Cp = C;
  Cp.push_back(ContextEntry::decl("p", pt));
  std::string body_f = a.pair_intro(Cp, qt, eproj(2, evar("p")), eproj(1, evar("p")));
  std::string f_inn =
      a.add("NAT.lam", Sequent::formula(C, einn(swap_f, enatarrow("p", pt, qt))), {body_f});
  Context Cq = C;
  Cq.push_back(ContextEntry::decl("q", qt));
  std::string body_g = a.pair_intro(Cq, pt, eproj(2, evar("q")), eproj(1, evar("q")));
  std::string g_inn =
      a.add("NAT.lam", Sequent::formula(C, einn(swap_g, enatarrow("q", qt, pt))), {body_g});

  Sequent f_seq = Sequent::formula(C, einn(swap_f, enatarrow("p", pt, qt)));
  Sequent g_seq = Sequent::formula(C, einn(swap_g, enatarrow("q", qt, pt)));
  auto ensure_nat = [&](const Context& ctx) {
    a.weaken_into(ctx, f_inn, f_seq);
    a.weaken_into(ctx, g_inn, g_seq);
  };

  // the round trip x ≐ g⟨f⟨x⟩⟩ at a concrete argument
  auto round_trip = [&](const Context& ctx, const ExprPtr& x) {
    ensure_nat(ctx);
    ExprPtr fx = enatapp(swap_f, x);
    ExprPtr swapped = emkpair(eproj(2, x), eproj(1, x));
    auto [xi, xty] = a.typing(ctx, x);
    (void)xty;
    std::string beta_f = a.add(
        "NAT.beta", Sequent::formula(ctx, eabseq(fx, swapped)),
        {a.pair_intro(push(ctx, "p", pt), qt, eproj(2, evar("p")), eproj(1, evar("p"))), xi});
    a.typing(ctx, fx);  // seed f⟨x⟩ : qt through NAT.app
    ExprPtr gfx = enatapp(swap_g, fx);
    ExprPtr gswap = emkpair(eproj(2, fx), eproj(1, fx));
    std::string beta_g = a.add(
        "NAT.beta", Sequent::formula(ctx, eabseq(gfx, gswap)),
        {a.pair_intro(push(ctx, "q", qt), pt, eproj(2, evar("q")), eproj(1, evar("q"))),
         a.typing(ctx, fx).first});
    // rewrite f⟨x⟩ inside the second beta equation to the swapped pair
    ExprPtr gsw2 = emkpair(eproj(2, swapped), eproj(1, swapped));
    std::string rw = rewrite(
        a, ctx, beta_f, beta_g,
        "(abs-eq " + print_expr(gfx) + " (mkpair (proj2 z_) (proj1 z_)))", "z_",
        Sequent::formula(ctx, eabseq(gfx, gsw2)));
    // collapse the projections of the swapped pair
    auto [qti, qty] = a.typing(ctx, qt);
    (void)qty;
    auto [ui, uty] = a.typing(ctx, eproj(2, x));
    (void)uty;
    auto [wi, wty] = a.typing(ctx, eproj(1, x));
    (void)wty;
    std::string pr2 = a.add(
        "PAIR.intro-proj2",
        Sequent::formula(ctx, eabseq(eproj(2, swapped), eproj(1, x))), {qti, ui, wi});
    std::string pr1 = a.add(
        "PAIR.intro-proj1",
        Sequent::formula(ctx, eabseq(eproj(1, swapped), eproj(2, x))), {qti, ui, wi});
    std::string rw2 = rewrite(a, ctx, pr2, rw,
                              "(abs-eq " + print_expr(gfx) + " (mkpair z_ " +
                                  print_expr(eproj(1, swapped)) + "))",
                              "z_",
                              Sequent::formula(ctx, eabseq(gfx, emkpair(eproj(1, x),
                                                                        eproj(1, swapped)))));
    std::string rw3 = rewrite(
        a, ctx, pr1, rw2,
        "(abs-eq " + print_expr(gfx) + " (mkpair (proj1 " + print_expr(x) + ") z_))", "z_",
        Sequent::formula(ctx, eabseq(gfx, emkpair(eproj(1, x), eproj(2, x)))));
    // eta on x, then stitch the chain into x ≐ g⟨f⟨x⟩⟩
    std::string eta =
        a.add("PAIR.eta", Sequent::formula(ctx, eabseq(x, emkpair(eproj(1, x), eproj(2, x)))),
              {xi});
    std::string sym = a.add(
        "PAIR.abs-sym",
        Sequent::formula(ctx, eabseq(emkpair(eproj(1, x), eproj(2, x)), gfx)), {rw3});
    return a.add("PAIR.abs-trans", Sequent::formula(ctx, eabseq(x, gfx)), {eta, sym});
  };

  // the rule's round-trip antecedents, stated on fresh variables
  Context Cx = C;
  Cx.push_back(ContextEntry::decl("x", pt));
  round_trip(Cx, evar("x"));
  Context Cy = C;
  Cy.push_back(ContextEntry::decl("y", qt));
  // y ≐ f⟨g⟨y⟩⟩ by the symmetric construction
  {
    ensure_nat(Cy);
    ExprPtr y = evar("y");
    ExprPtr gy = enatapp(swap_g, y);
    ExprPtr swapped = emkpair(eproj(2, y), eproj(1, y));
    auto [yi, yty] = a.typing(Cy, y);
    (void)yty;
    std::string beta_g = a.add(
        "NAT.beta", Sequent::formula(Cy, eabseq(gy, swapped)),
        {a.pair_intro(push(Cy, "q", qt), pt, eproj(2, evar("q")), eproj(1, evar("q"))), yi});
    a.typing(Cy, gy);
    ExprPtr fgy = enatapp(swap_f, gy);
    ExprPtr fswap = emkpair(eproj(2, gy), eproj(1, gy));
    std::string beta_f = a.add(
        "NAT.beta", Sequent::formula(Cy, eabseq(fgy, fswap)),
        {a.pair_intro(push(Cy, "p", pt), qt, eproj(2, evar("p")), eproj(1, evar("p"))),
         a.typing(Cy, gy).first});
    std::string rw = rewrite(a, Cy, beta_g, beta_f,
                             "(abs-eq " + print_expr(fgy) + " (mkpair (proj2 z_) (proj1 z_)))",
                             "z_",
                             Sequent::formula(Cy, eabseq(fgy, emkpair(eproj(2, swapped),
                                                                      eproj(1, swapped)))));
    auto [pti, ptyy] = a.typing(Cy, pt);
    (void)ptyy;
    auto [ui, uty] = a.typing(Cy, eproj(2, y));
    (void)uty;
    auto [wi, wty] = a.typing(Cy, eproj(1, y));
    (void)wty;
    std::string pr2 =
        a.add("PAIR.intro-proj2",
              Sequent::formula(Cy, eabseq(eproj(2, swapped), eproj(1, y))), {pti, ui, wi});
    std::string pr1 =
        a.add("PAIR.intro-proj1",
              Sequent::formula(Cy, eabseq(eproj(1, swapped), eproj(2, y))), {pti, ui, wi});
    std::string rw2 = rewrite(a, Cy, pr2, rw,
                              "(abs-eq " + print_expr(fgy) + " (mkpair z_ " +
                                  print_expr(eproj(1, swapped)) + "))",
                              "z_",
                              Sequent::formula(Cy, eabseq(fgy, emkpair(eproj(1, y),
                                                                       eproj(1, swapped)))));
    std::string rw3 = rewrite(
        a, Cy, pr1, rw2,
        "(abs-eq " + print_expr(fgy) + " (mkpair (proj1 y) z_))", "z_",
        Sequent::formula(Cy, eabseq(fgy, emkpair(eproj(1, y), eproj(2, y)))));
    std::string eta = a.add(
        "PAIR.eta", Sequent::formula(Cy, eabseq(y, emkpair(eproj(1, y), eproj(2, y)))), {yi});
    std::string sym = a.add(
        "PAIR.abs-sym",
        Sequent::formula(Cy, eabseq(emkpair(eproj(1, y), eproj(2, y)), fgy)), {rw3});
    a.add("PAIR.abs-trans", Sequent::formula(Cy, eabseq(y, fgy)), {eta, sym});
  }

  // (G =_pt H) ⇔ (f⟨G⟩ =_qt f⟨H⟩), assembled from the two case-split
  // implications (introductions only; the boolean fragment has no MP)
  ExprPtr fG = enatapp(swap_f, evar("G")), fH = enatapp(swap_f, evar("H"));
  ExprPtr eqGH = eeq(pt, evar("G"), evar("H"));
  ExprPtr eqFGH = eeq(qt, fG, fH);
  ensure_nat(C);
  a.typing(C, fG);
  a.typing(C, fH);
  std::string eqGH_bool = a.formation(C, eqGH);
  std::string eqFGH_bool = a.formation(C, eqFGH);

  // imp1: ¬(G=H) ∨ (fG=fH)
  Context C1 = C;
  C1.push_back(ContextEntry::assume(eqGH));
  {
    std::string hyp = a.assume_last(C1);
    Context C1p = C1;
    C1p.push_back(ContextEntry::decl("p", pt));
    ensure_nat(C1p);
    std::string fp = a.typing(C1p, enatapp(swap_f, evar("p"))).first;
    std::string sub = a.add("PC.subst", Sequent::formula(C1, eqFGH), {fp, hyp});
    std::string notf = a.formation(C1, enot(eqGH));
    a.add("PC.or-intro-r", Sequent::formula(C1, eor(enot(eqGH), eqFGH)), {sub, notf});
  }
  Context C1n = C;
  C1n.push_back(ContextEntry::assume(enot(eqGH)));
  {
    std::string hyp = a.assume_last(C1n);
    ensure_nat(C1n);
    std::string fb = a.formation(C1n, eqFGH);
    a.add("PC.or-intro-l", Sequent::formula(C1n, eor(enot(eqGH), eqFGH)), {hyp, fb});
  }
  ExprPtr imp1 = eor(enot(eqGH), eqFGH);
  std::string imp1_id =
      a.add("PC.case", Sequent::formula(C, imp1),
            {*a.lookup(Sequent::formula(C1, imp1)), *a.lookup(Sequent::formula(C1n, imp1))});

  // imp2: ¬(fG=fH) ∨ (G=H), using the concrete round trips at G and H
  Context C2 = C;
  C2.push_back(ContextEntry::assume(eqFGH));
  {
    std::string hyp = a.assume_last(C2);
    Context C2q = C2;
    C2q.push_back(ContextEntry::decl("q", qt));
    ensure_nat(C2q);
    std::string gq = a.typing(C2q, enatapp(swap_g, evar("q"))).first;
    ExprPtr gfG = enatapp(swap_g, fG), gfH = enatapp(swap_g, fH);
    std::string sub = a.add("PC.subst", Sequent::formula(C2, eeq(pt, gfG, gfH)), {gq, hyp});
    std::string rtG = round_trip(C2, evar("G"));
    std::string rtH = round_trip(C2, evar("H"));
    std::string symG =
        a.add("PAIR.abs-sym", Sequent::formula(C2, eabseq(gfG, evar("G"))), {rtG});
    std::string symH =
        a.add("PAIR.abs-sym", Sequent::formula(C2, eabseq(gfH, evar("H"))), {rtH});
    std::string rw1 = rewrite(a, C2, symG, sub,
                              "(eq " + print_expr(pt) + " z_ " + print_expr(gfH) + ")", "z_",
                              Sequent::formula(C2, eeq(pt, evar("G"), gfH)));
    std::string rw2 = rewrite(a, C2, symH, rw1,
                              "(eq " + print_expr(pt) + " G z_)", "z_",
                              Sequent::formula(C2, eqGH));
    std::string notf = a.formation(C2, enot(eqFGH));
    a.add("PC.or-intro-r", Sequent::formula(C2, eor(enot(eqFGH), eqGH)), {rw2, notf});
  }
  Context C2n = C;
  C2n.push_back(ContextEntry::assume(enot(eqFGH)));
  {
    std::string hyp = a.assume_last(C2n);
    std::string fb = a.formation(C2n, eqGH);
    a.add("PC.or-intro-l", Sequent::formula(C2n, eor(enot(eqFGH), eqGH)), {hyp, fb});
  }
  ExprPtr imp2 = eor(enot(eqFGH), eqGH);
  std::string imp2_id =
      a.add("PC.case", Sequent::formula(C, imp2),
            {*a.lookup(Sequent::formula(C2, imp2)), *a.lookup(Sequent::formula(C2n, imp2))});

  std::string imp1_bool = a.formation(C, imp1);
  std::string imp2_bool = a.formation(C, imp2);
  std::string nn1 =
      a.add("PC.dneg-intro", Sequent::formula(C, enot(enot(imp1))), {imp1_id, imp1_bool});
  std::string nn2 =
      a.add("PC.dneg-intro", Sequent::formula(C, enot(enot(imp2))), {imp2_id, imp2_bool});
  ExprPtr iff = expand_abbrevs(eiff(eqGH, eqFGH));
  a.add("PC.neg-or", Sequent::formula(C, iff), {nn2, nn1});

  emit("proofs/cryptomorphism.mortt", a);
}

// ----------------------------------------------------------------------------
// (c) isomorphism of two 2-element groups presented as pointed carriers,
//     via the ISO equality-generation rule with an updown witness.
// ----------------------------------------------------------------------------
void group_iso() {
  Author a;
  auto card2 = [](const std::string& t) {
    return "(exists (x " + t + ") (exists (y " + t + ") (and (not (eq " + t + " x y)) " +
           "(forall (z " + t + ") (or (eq " + t + " z x) (eq " + t + " z y))))))";
  };
  Context C{ContextEntry::decl("al", etype(0)),
            ContextEntry::decl("c", P("al")),
            ContextEntry::decl("bt", etype(0)),
            ContextEntry::decl("d", P("bt")),
            ContextEntry::assume(P(card2("al"))),
            ContextEntry::assume(P(card2("bt"))),
            ContextEntry::decl("bj", P("(bijection al bt)")),
            ContextEntry::assume(P("(eq bt (app bj c) d)"))};
  a.wf(C);

  auto [al_set, l1] = a.typing_in_universe(C, P("al"));
  auto [bt_set, l2] = a.typing_in_universe(C, P("bt"));
  (void)l1;
  (void)l2;
  auto [bj_ty, bjt] = a.typing(C, P("bj"));
  (void)bjt;
  ExprPtr ud = P("(updown al bt bj)");
  std::string ud_inn =
      a.add("ISO.updown-intro",
            Sequent::formula(C, einn(ud, eiso(etype(0), P("al"), P("bt")))),
            {al_set, bt_set, bj_ty});
  ExprPtr carry_iff = expand_abbrevs(
      eforall("x", P("al"),
              eforall("y", P("bt"),
                      eiff(ecarry(ud, evar("x"), evar("y")),
                           eeq(P("bt"), eapp(evar("bj"), evar("x")), evar("y"))))));
  std::string carry_all =
      a.add("ISO.updown-carry", Sequent::formula(C, carry_iff), {al_set, bt_set, bj_ty});

  // instantiate the carry characterization at (c, d)
  auto [ci, cty] = a.typing(C, P("c"));
  (void)cty;
  ExprPtr at_c = substitute(carry_iff->kids[1], carry_iff->var, evar("c"));
  std::string at_c_id =
      a.add("PC.forall-elim", Sequent::formula(C, at_c), {carry_all, ci});
  auto [di, dty] = a.typing(C, P("d"));
  (void)dty;
  ExprPtr at_cd = substitute(at_c->kids[1], at_c->var, evar("d"));
  std::string at_cd_id = a.add("PC.forall-elim", Sequent::formula(C, at_cd), {at_c_id, di});

  std::string hom = a.assume_last(C);  // (eq bt (app bj c) d)

  // Pair(al, c) =_{PairOf(x:Set, y:x)} Pair(bt, d)
  ExprPtr pt = P("(pairtype (x (type-i 0)) x)");
  std::string p1 = a.pair_intro(C, pt, P("al"), P("c"));
  std::string p2 = a.pair_intro(C, pt, P("bt"), P("d"));
  a.add("ISO.eq-gen",
        Sequent::formula(C, eeq(pt, P("(mkpair al c)"), P("(mkpair bt d)"))),
        {p1, p2, ud_inn, at_cd_id, hom});

  emit("proofs/group_iso.mortt", a);
}

// ----------------------------------------------------------------------------
// (d) colored-graph transfer: CGraph' to CGraph by the substitution rule,
//     with carriers bounded to one-element subtypes of Set.
// ----------------------------------------------------------------------------
void cgraph() {
  Author a;
  std::string One = "(subtype (a (type-i 0)) (exists-unique (w a) (eq a w w)))";
  std::string GraphT = "(pairtype (al " + One + ") (arrow al al (bool-type)))";
  std::string CGraphT =
      "(pairtype (g " + GraphT + ") (pairtype (be " + One + ") (arrow (proj1 g) be)))";
  std::string CGraph2 = "(pairtype (pp (pairtype (u1 " + One + ") " + One + ")) " +
                        "(pairtype (ed0 (arrow (proj1 pp) (proj1 pp) (bool-type))) " +
                        "(arrow (proj1 pp) (proj2 pp))))";
  // the two colored graphs share a one-element carrier pair and differ in
  // their edge and coloring components; the equation between them is assumed
  Context C{ContextEntry::decl("a1", P(One)),
            ContextEntry::decl("ed", P("(arrow a1 a1 (bool-type))")),
            ContextEntry::decl("cc", P("(arrow a1 a1)")),
            ContextEntry::decl("ed2", P("(arrow a1 a1 (bool-type))")),
            ContextEntry::decl("cc2", P("(arrow a1 a1)"))};

  // Pair(Pair(a1,a1), Pair(e,c)) : CGraph' -- the inner pair needs its type
  // carried through the pair projections with absolute equality
  ExprPtr PP = P("(mkpair a1 a1)");
  ExprPtr pp_ty = P("(pairtype (u1 " + One + ") " + One + ")");
  auto typed_cg = [&](const Context& ctx, const std::string& e, const std::string& c) {
    std::string ppi = a.pair_intro(ctx, pp_ty, P("a1"), P("a1"));
    ExprPtr y = P("(mkpair " + e + " " + c + ")");
    std::string yi = a.pair_intro(
        ctx, P("(pairtype (ed0 (arrow a1 a1 (bool-type))) (arrow a1 a1))"), P(e), P(c));
    auto [pti, ptl] = a.typing(ctx, pp_ty);
    (void)ptl;
    auto [ui, ul] = a.typing(ctx, P("a1"));
    (void)ul;
    std::string pr1 = a.add(
        "PAIR.intro-proj1", Sequent::formula(ctx, eabseq(eproj(1, PP), P("a1"))),
        {pti, ui, ui});
    std::string pr2 = a.add(
        "PAIR.intro-proj2", Sequent::formula(ctx, eabseq(eproj(2, PP), P("a1"))),
        {pti, ui, ui});
    std::string pr1s =
        a.add("PAIR.abs-sym", Sequent::formula(ctx, eabseq(P("a1"), eproj(1, PP))), {pr1});
    std::string pr2s =
        a.add("PAIR.abs-sym", Sequent::formula(ctx, eabseq(P("a1"), eproj(2, PP))), {pr2});
    ExprPtr ty1 = P("(pairtype (ed0 (arrow (proj1 (mkpair a1 a1)) (proj1 (mkpair a1 a1)) "
                    "(bool-type))) (arrow (proj1 (mkpair a1 a1)) a1))");
    std::string rw1 =
        a.add("PAIR.abs-subst", Sequent::typing(ctx, y, ty1), {pr1s, yi},
              pattern_hints("(oftype " + print_expr(y) +
                                " (pairtype (ed0 (arrow z_ z_ (bool-type))) (arrow z_ a1)))",
                            "z_"));
    ExprPtr ty2 = P("(pairtype (ed0 (arrow (proj1 (mkpair a1 a1)) (proj1 (mkpair a1 a1)) "
                    "(bool-type))) (arrow (proj1 (mkpair a1 a1)) (proj2 (mkpair a1 a1))))");
    std::string rw2 =
        a.add("PAIR.abs-subst", Sequent::typing(ctx, y, ty2), {pr2s, rw1},
              pattern_hints("(oftype " + print_expr(y) +
                                " (pairtype (ed0 (arrow (proj1 (mkpair a1 a1)) (proj1 (mkpair "
                                "a1 a1)) (bool-type))) (arrow (proj1 (mkpair a1 a1)) z_)))",
                            "z_"));
    auto [cgi, cgl] = a.typing(ctx, P(CGraph2));
    (void)cgl;
    return a.add("PAIR.intro",
                 Sequent::typing(ctx, emkpair(PP, y), P(CGraph2)), {cgi, ppi, rw2});
  };
  typed_cg(C, "ed", "cc");
  typed_cg(C, "ed2", "cc2");
  ExprPtr Gp = P("(mkpair (mkpair a1 a1) (mkpair ed cc))");
  ExprPtr Hp = P("(mkpair (mkpair a1 a1) (mkpair ed2 cc2))");
  C.push_back(ContextEntry::assume(eeq(P(CGraph2), Gp, Hp)));
  a.wf(C);

  // the repacking q : CGraph' |- Pair(Pair(..), Pair(..)) : CGraph
  Context Cq = C;
  Cq.push_back(ContextEntry::decl("q", P(CGraph2)));
  ExprPtr A = P("(mkpair (proj1 (proj1 q)) (proj1 (proj2 q)))");
  ExprPtr B = P("(mkpair (proj2 (proj1 q)) (proj2 (proj2 q)))");
  std::string a_ty = a.pair_intro(Cq, P(GraphT), A->kids[0], A->kids[1]);
  std::string inner2 =
      "(pairtype (be " + One + ") (arrow (proj1 (proj1 q)) be))";
  std::string b_ty = a.pair_intro(Cq, P(inner2), B->kids[0], B->kids[1]);

  // rewrite B's type through proj1(Pair(..,..)) ≐ .. to match the family at A
  auto [gt_i, gt_ty] = a.typing(Cq, P(GraphT));
  (void)gt_ty;
  auto [u_i, u_ty] = a.typing(Cq, A->kids[0]);
  (void)u_ty;
  auto [w_i, w_ty] = a.typing(Cq, A->kids[1]);
  (void)w_ty;
  std::string proj_a = a.add(
      "PAIR.intro-proj1",
      Sequent::formula(Cq, eabseq(eproj(1, A), A->kids[0])), {gt_i, u_i, w_i});
  std::string proj_a_sym = a.add(
      "PAIR.abs-sym", Sequent::formula(Cq, eabseq(A->kids[0], eproj(1, A))), {proj_a});
  ExprPtr family_at_A =
      P("(pairtype (be " + One + ") (arrow (proj1 (mkpair (proj1 (proj1 q)) (proj1 (proj2 "
        "q)))) be))");
  std::string b_at_a = a.add(
      "PAIR.abs-subst", Sequent::typing(Cq, B, family_at_A), {proj_a_sym, b_ty},
      pattern_hints("(oftype " + print_expr(B) + " (pairtype (be " + One +
                        ") (arrow z_ be)))",
                    "z_"));
  auto [ct_i, ct_ty] = a.typing(Cq, P(CGraphT));
  (void)ct_ty;
  std::string repack =
      a.add("PAIR.intro", Sequent::typing(Cq, emkpair(A, B), P(CGraphT)), {ct_i, a_ty, b_at_a});

  // transfer the assumed CGraph' equation through the repacking
  std::string hyp = a.assume_last(C);
  ExprPtr repack_G = substitute(emkpair(A, B), "q", Gp);
  ExprPtr repack_H = substitute(emkpair(A, B), "q", Hp);
  a.add("PC.subst", Sequent::formula(C, eeq(P(CGraphT), repack_G, repack_H)), {repack, hyp});

  emit("proofs/cgraph.mortt", a);
}

}  // namespace

int main() {
  try {
    voldemort();
    cryptomorphism();
    group_iso();
    cgraph();
  } catch (const std::exception& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
