#include "catch_amalgamated.hpp"

#include <set>

#include "mortt/author.hpp"

using namespace mortt;

namespace {

ExprPtr P(const std::string& s) { return parse_expr(s); }

Context push_decl(const Context& c, const std::string& x, const ExprPtr& ty) {
  Context r = c;
  r.push_back(ContextEntry::decl(x, ty));
  return r;
}
Context push_assume(const Context& c, const ExprPtr& phi) {
  Context r = c;
  r.push_back(ContextEntry::assume(phi));
  return r;
}

Sexpr atom(const std::string& s) {
  Sexpr e;
  e.is_atom = true;
  e.atom = s;
  return e;
}

// A library exercising every registered rule at least once. Built with the
// checking author, so construction is itself a positive test.
struct Library {
  Author a;
  ProofScript script;

  Library() {
    build();
    script = a.script();
  }

  void build() {
    Context E{};
    Context C{ContextEntry::decl("s", etype(0)), ContextEntry::decl("c", P("s")),
              ContextEntry::decl("d", P("s")),
              ContextEntry::decl("Q", P("(arrow s (bool-type))"))};
    a.wf(C);
    // EXPR coverage: empty, universe, bool, declare, assumption, weaken all
    // appear through wf/typing; the rest explicitly:
    auto [qc, qcty] = a.typing(C, P("(app Q c)"));
    (void)qcty;
    auto [qd, qdty] = a.typing(C, P("(app Q d)"));
    (void)qdty;
    a.typing(C, P("(or (app Q c) (app Q d))"));
    a.typing(C, P("(not (app Q c))"));
    a.typing(C, P("(eq s c d)"));
    a.typing(C, P("(forall (y s) (eq s y y))"));
    auto [si, sty] = a.typing(C, P("s"));
    (void)sty;
    a.add("EXPR.cumulative", Sequent::typing(C, P("s"), etype(1)), {si});

    // PC: boolean introductions under a case split
    ExprPtr qcE = P("(app Q c)");
    ExprPtr goal = eor(qcE, enot(qcE));
    Context Cp = push_assume(C, qcE);
    std::string notb = a.formation(Cp, enot(qcE));
    std::string h1 = a.assume_last(Cp);
    std::string b1 = a.add("PC.or-intro-l", Sequent::formula(Cp, goal), {h1, notb});
    Context Cn = push_assume(C, enot(qcE));
    std::string h2 = a.assume_last(Cn);
    std::string qcb = a.formation(Cn, qcE);
    std::string b2 = a.add("PC.or-intro-r", Sequent::formula(Cn, goal), {h2, qcb});
    a.add("PC.case", Sequent::formula(C, goal), {b1, b2});
    a.add("PC.dneg-intro", Sequent::formula(Cp, enot(enot(qcE))), {h1, notb});
    // neg-or needs two negated assumptions
    Context Cnn = push_assume(Cn, enot(P("(app Q d)")));
    std::string hnd = a.assume_last(Cnn);
    std::string hnc = a.weaken_into(Cnn, h2, Sequent::formula(Cn, enot(qcE)));
    a.add("PC.neg-or", Sequent::formula(Cnn, enot(eor(qcE, P("(app Q d)")))), {hnd, hnc});

    // forall intro and elim
    Context Cy = push_decl(C, "y", P("s"));
    std::string eqyy_bool = a.formation(Cy, P("(eq s y y)"));
    auto [yi, yty] = a.typing(Cy, P("y"));
    (void)yty;
    std::string refl_y = a.add("PC.eq-refl", Sequent::formula(Cy, P("(eq s y y)")), {yi});
    ExprPtr all_refl = P("(forall (y s) (eq s y y))");
    std::string alli =
        a.add("PC.forall-intro", Sequent::formula(C, all_refl), {eqyy_bool, refl_y});
    auto [ci, cty] = a.typing(C, P("c"));
    (void)cty;
    a.add("PC.forall-elim", Sequent::formula(C, P("(eq s c c)")), {alli, ci});

    // equality rules
    a.add("PC.eq-refl", Sequent::formula(C, P("(eq s c c)")), {ci});
    Context Ce = push_assume(C, P("(eq s c d)"));
    std::string he = a.assume_last(Ce);
    std::string sym = a.add("PC.eq-sym", Sequent::formula(Ce, P("(eq s d c)")), {he});
    a.add("PC.eq-trans", Sequent::formula(Ce, P("(eq s c c)")), {he, sym});
    // substitution
    Context Cey = push_decl(Ce, "y", P("s"));
    auto [qy, qyty] = a.typing(Cey, P("(app Q y)"));
    (void)qyty;
    a.add("PC.subst",
          Sequent::formula(Ce, P("(eq (bool-type) (app Q c) (app Q d))")), {qy, he});
    // extensionality
    auto [qi2, qity] = a.typing(C, P("Q"));
    (void)qity;
    ExprPtr ptw = P("(forall (y s) (eq (bool-type) (app Q y) (app Q y)))");
    std::string qq_bool = a.formation(Cy, P("(eq (bool-type) (app Q y) (app Q y))"));
    auto [qyy, qyyty] = a.typing(Cy, P("(app Q y)"));
    (void)qyyty;
    std::string refl_q =
        a.add("PC.eq-refl", Sequent::formula(Cy, P("(eq (bool-type) (app Q y) (app Q y))")),
              {qyy});
    std::string allq = a.add("PC.forall-intro", Sequent::formula(C, ptw), {qq_bool, refl_q});
    a.add("PC.ext",
          Sequent::formula(C, P("(eq (arrow s (bool-type)) Q Q)")), {qi2, qi2, allq});
    // choice from an assumed ∀∃
    ExprPtr ae = P("(forall (x s) (exists (y s) (eq s x y)))");
    Context Cc = push_assume(C, ae);
    std::string hc = a.assume_last(Cc);
    Context Ccxy = push_decl(push_decl(Cc, "x", P("s")), "y", P("s"));
    std::string phcreatei = a.formation(Ccxy, P("(eq s x y)"));
    a.add("PC.choice",
          Sequent::formula(
              Cc, expand_abbrevs(P(
                      "(exists (f (arrow s s)) (forall (x s) (eq s x (app f x))))"))),
          {phcreatei, hc});
    // infinity
    a.add("PC.infinity",
          Sequent::formula(
              E, expand_abbrevs(P("(exists (alpha (type-i 0)) (exists (f (arrow alpha "
                                  "(type-i 0))) (forall (x alpha) (exists (y alpha) (eq "
                                  "(type-i 0) (app f y) (arrow (app f x) (bool-type)))))))"))));

    // PAIR rules
    ExprPtr pt = P("(pairtype (x s) s)");
    std::string p_ab = a.pair_intro(C, pt, P("c"), P("d"));
    auto [pti, ptty] = a.typing(C, pt);
    (void)ptty;
    auto [di2, dty2] = a.typing(C, P("d"));
    (void)dty2;
    a.add("PAIR.intro-proj1",
          Sequent::formula(C, P("(abs-eq (proj1 (mkpair c d)) c)")), {pti, ci, di2});
    a.add("PAIR.intro-proj2",
          Sequent::formula(C, P("(abs-eq (proj2 (mkpair c d)) d)")), {pti, ci, di2});
    Context Cpr = push_decl(C, "pp", pt);
    a.typing(Cpr, P("(proj1 pp)"));
    a.typing(Cpr, P("(proj2 pp)"));
    auto [ppi, ppty] = a.typing(Cpr, P("pp"));
    (void)ppty;
    a.add("PAIR.eta",
          Sequent::formula(Cpr, P("(abs-eq pp (mkpair (proj1 pp) (proj2 pp)))")), {ppi});
    a.add("PAIR.abs-refl", Sequent::formula(C, P("(abs-eq c c)")), {ci});
    Context Ca = push_assume(C, P("(abs-eq c d)"));
    std::string ha = a.assume_last(Ca);
    std::string asym = a.add("PAIR.abs-sym", Sequent::formula(Ca, P("(abs-eq d c)")), {ha});
    a.add("PAIR.abs-trans", Sequent::formula(Ca, P("(abs-eq c c)")), {ha, asym});
    auto [cca, ccty] = a.typing(Ca, P("c"));
    (void)ccty;
    std::string reflca = a.add("PC.eq-refl", Sequent::formula(Ca, P("(eq s c c)")), {cca});
    a.add("PAIR.abs-subst", Sequent::formula(Ca, P("(eq s d c)")), {ha, reflca},
          {{"pattern", parse_sexpr("(eq s z c)")}, {"var", atom("z")}});
    ExprPtr st = P("(subtype (y s) (eq s y y))");
    auto [sti, stty] = a.typing(C, st);
    (void)stty;
    std::string reflc = *a.lookup(Sequent::formula(C, P("(eq s c c)")));
    std::string csub =
        a.add("PAIR.sub-intro", Sequent::typing(C, P("c"), st), {sti, ci, reflc});
    Context Cq2 = push_decl(C, "q", st);
    auto [qi3, qty3] = a.typing(Cq2, P("q"));
    (void)qty3;
    a.add("PAIR.sub-elim-ty", Sequent::typing(Cq2, P("q"), P("s")), {qi3});
    a.add("PAIR.sub-elim-pred", Sequent::formula(Cq2, P("(eq s q q)")), {qi3});

    // DESC rules
    Context Cd = push_assume(C, P("(exists-unique (y s) (eq s y c))"));
    Context Cdy = push_decl(Cd, "y", P("s"));
    std::string phid = a.formation(Cdy, P("(eq s y c)"));
    std::string hd = a.assume_last(Cd);
    auto [sset, ssetl] = a.typing_in_universe(Cd, P("s"));
    (void)ssetl;
    ExprPtr the1 = P("(the (y s) (eq s y c))");
    a.add("DESC.the-set", Sequent::typing(Cd, the1, P("s")), {phid, hd, sset});
    a.add("DESC.the-set-pred",
          Sequent::formula(Cd, P("(eq s (the (y s) (eq s y c)) c)")), {phid, hd, sset});
    // closed description over Bool
    Context Cb = push_assume(C, P("(exists-unique (b (bool-type)) (eq (bool-type) b b))"));
    Context Cbb = push_decl(Cb, "b", ebool());
    std::string phib = a.formation(Cbb, P("(eq (bool-type) b b)"));
    std::string hb = a.assume_last(Cb);
    ExprPtr the2 = P("(the (b (bool-type)) (eq (bool-type) b b))");
    a.add("DESC.the-closed", Sequent::typing(Cb, the2, ebool()), {phib, hb});
    a.add("DESC.the-closed-pred",
          Sequent::formula(Cb, eeq(ebool(), the2, the2)), {phib, hb});
    auto [sset2, sl2] = a.typing_in_universe(Ce, P("s"));
    (void)sl2;
    a.add("DESC.set-eq-abs", Sequent::formula(Ce, P("(abs-eq c d)")), {sset2, he});
    auto [qie, qiety] = a.typing(Ce, P("Q"));
    (void)qiety;
    a.add("DESC.fun-cong",
          Sequent::formula(Ce, P("(abs-eq (app Q c) (app Q d))")), {qie, he});
    auto [qcy, qcyty] = a.typing(Cy, P("(app Q y)"));
    (void)qcyty;
    std::string aref =
        a.add("PAIR.abs-refl", Sequent::formula(Cy, P("(abs-eq (app Q y) (app Q y))")), {qcy});
    a.add("DESC.fun-ext-abs", Sequent::formula(C, P("(abs-eq Q Q)")), {qi2, qi2, aref});
    std::string xs1 = a.assume_last(push_decl(C, "x", P("s")));
    a.add("DESC.type-antisym", Sequent::formula(C, P("(abs-eq s s)")), {xs1, xs1});

    // J rules (the author reaches intype-inn, abs-eq-form, inn-form, or-form,
    // not-form, forall-form, assume through judgemental contexts)
    a.j_formation(C, P("(abs-eq c d)"));
    a.j_formation(C, P("(inn c s)"));
    a.j_formation(C, P("(or (abs-eq c c) (abs-eq d d))"));
    a.j_formation(C, P("(not (abs-eq c c))"));
    a.j_formation(C, P("(forall (y s) (abs-eq y y))"));
    Context Cj = push_assume(C, P("(abs-eq c d)"));
    a.wf(Cj);
    std::string ji = a.j_member(C, P("s"));
    a.add("J.declare", Sequent::truth(push_decl(C, "w", P("s"))), {ji}, {}, true);
    // J boolean rules mirror the PC ones with inn-premises
    Context Cjp = push_assume(C, P("(abs-eq c c)"));
    std::string hj = a.assume_last(Cjp);
    std::string jb = a.j_formation(Cjp, P("(abs-eq d d)"));
    ExprPtr jor = eor(P("(abs-eq c c)"), P("(abs-eq d d)"));
    std::string j1 = a.add("J.or-intro-l", Sequent::formula(Cjp, jor), {hj, jb});
    a.add("J.or-intro-r",
          Sequent::formula(Cjp, eor(P("(abs-eq d d)"), P("(abs-eq c c)"))), {hj, jb});
    a.add("J.dneg-intro", Sequent::formula(Cjp, enot(enot(P("(abs-eq c c)")))), {hj, jb});
    Context Cjn = push_assume(C, enot(P("(abs-eq c c)")));
    std::string hjn = a.assume_last(Cjn);
    Context Cjnn = push_assume(Cjn, enot(P("(abs-eq d d)")));
    std::string hjd = a.assume_last(Cjnn);
    std::string hjc = a.weaken_into(Cjnn, hjn, Sequent::formula(Cjn, enot(P("(abs-eq c c)"))));
    a.add("J.neg-or",
          Sequent::formula(Cjnn, enot(eor(P("(abs-eq c c)"), P("(abs-eq d d)")))),
          {hjd, hjc});
    // J.case on the judgemental goal
    ExprPtr jgoal = eor(P("(abs-eq c c)"), enot(P("(abs-eq c c)")));
    std::string jgb1 = a.j_formation(Cjp, enot(P("(abs-eq c c)")));
    // or-intro at formula level needs the Bool-typing; use the J variants
    std::string jb1 = a.add("J.or-intro-l", Sequent::formula(Cjp, jgoal), {hj, jgb1});
    std::string jgb2 = a.j_formation(Cjn, P("(abs-eq c c)"));
    std::string jb2 = a.add("J.or-intro-r", Sequent::formula(Cjn, jgoal), {hjn, jgb2});
    a.add("J.case", Sequent::formula(C, jgoal), {jb1, jb2});
    // J forall intro/elim over a judgemental body
    Context Cyj = push_decl(C, "y", P("s"));
    std::string jf = a.j_formation(Cyj, P("(abs-eq y y)"));
    auto [yi2, yty2] = a.typing(Cyj, P("y"));
    (void)yty2;
    std::string jrefl =
        a.add("PAIR.abs-refl", Sequent::formula(Cyj, P("(abs-eq y y)")), {yi2});
    ExprPtr jall = eforall("y", P("s"), P("(abs-eq y y)"));
    std::string jalli = a.add("J.forall-intro", Sequent::formula(C, jall), {jf, jrefl});
    a.add("J.forall-elim", Sequent::formula(C, P("(abs-eq c c)")), {jalli, ci}, {}, true);

    // ISO rules
    Context Ci{ContextEntry::decl("s", etype(0)), ContextEntry::decl("c", P("s")),
               ContextEntry::decl("d", P("s")),
               ContextEntry::decl("bj", P("(bijection s s)"))};
    a.wf(Ci);
    auto [ss, ssl] = a.typing_in_universe(Ci, P("s"));
    (void)ssl;
    auto [bji, bjty] = a.typing(Ci, P("bj"));
    (void)bjty;
    ExprPtr ud = P("(updown s s bj)");
    std::string udi = a.add(
        "ISO.updown-intro",
        Sequent::formula(Ci, einn(ud, eiso(etype(0), P("s"), P("s")))), {ss, ss, bji});
    ExprPtr carry_iff = expand_abbrevs(
        eforall("x", P("s"),
                eforall("y", P("s"),
                        eiff(ecarry(ud, evar("x"), evar("y")),
                             eeq(P("s"), eapp(evar("bj"), evar("x")), evar("y"))))));
    std::string udc =
        a.add("ISO.updown-carry", Sequent::formula(Ci, carry_iff), {ss, ss, bji});
    a.add("ISO.pair-intro",
          Sequent::formula(Ci, einn(emkpair(ud, ud),
                                    eiso(P("(pairtype (x (type-i 0)) (type-i 0))"),
                                         emkpair(P("s"), P("s")), emkpair(P("s"), P("s"))))),
          {udi, udi});
    auto [cci, ccity] = a.typing(Ci, P("c"));
    (void)ccity;
    auto [ddi, ddity] = a.typing(Ci, P("d"));
    (void)ddity;
    a.add("ISO.carry-iff-eq",
          Sequent::formula(Ci, expand_abbrevs(eiff(ecarry(P("s"), P("c"), P("d")),
                                                   P("(eq s c d)")))),
          {cci, ddi});
    a.add("ISO.member", Sequent::formula(Ci, einn(ud, etype(0))), {udi});
    // eq-gen in unfolded carry form, as in the bundled group script
    ExprPtr ptt = P("(pairtype (x (type-i 0)) x)");
    std::string g1 = a.pair_intro(Ci, ptt, P("s"), P("c"));
    std::string g2 = a.pair_intro(Ci, ptt, P("s"), P("d"));
    ExprPtr atc = substitute(carry_iff->kids[1], carry_iff->var, P("c"));
    std::string atci = a.add("PC.forall-elim", Sequent::formula(Ci, atc), {udc, cci});
    ExprPtr atcd = substitute(atc->kids[1], atc->var, P("d"));
    std::string atcdi = a.add("PC.forall-elim", Sequent::formula(Ci, atcd), {atci, ddi});
    Context Cih = push_assume(Ci, P("(eq s (app bj c) d)"));
    std::string hih = a.assume_last(Cih);
    std::string g1h = a.weaken_into(Cih, g1, Sequent::typing(Ci, P("(mkpair s c)"), ptt));
    std::string g2h = a.weaken_into(Cih, g2, Sequent::typing(Ci, P("(mkpair s d)"), ptt));
    std::string udih = a.weaken_into(Cih, udi,
                                     Sequent::formula(Ci, einn(ud, eiso(etype(0), P("s"), P("s")))));
    std::string atcdih = a.weaken_into(Cih, atcdi, Sequent::formula(Ci, atcd));
    a.add("ISO.eq-gen",
          Sequent::formula(Cih, eeq(ptt, P("(mkpair s c)"), P("(mkpair s d)"))),
          {g1h, g2h, udih, atcdih, hih});
    // carry-pair / carry-arrow / carry-subtype
    Context Cix = push_decl(Ci, "x", etype(0));
    auto [fam_pair, fpl] = a.typing_in_universe(Cix, P("(pairtype (y x) x)"));
    (void)fpl;
    std::string b1 = a.pair_intro(Ci, P("(pairtype (y s) s)"), P("c"), P("d"));
    std::string b2 = a.pair_intro(Ci, P("(pairtype (y s) s)"), P("d"), P("c"));
    ExprPtr lhs_p = ecarry(P("(pairtype (y (updown s s bj)) (updown s s bj))"),
                           P("(mkpair c d)"), P("(mkpair d c)"));
    ExprPtr rhs_p = eand(ecarry(ud, P("(proj1 (mkpair c d))"), P("(proj1 (mkpair d c))")),
                         ecarry(ud, P("(proj2 (mkpair c d))"), P("(proj2 (mkpair d c))")));
    a.add("ISO.carry-pair",
          Sequent::formula(Ci, expand_abbrevs(eiff(lhs_p, rhs_p))),
          {cci, ddi, udi, fam_pair, b1, b2});
    auto [fam_arrow, fal] = a.typing_in_universe(Cix, P("(arrow x x)"));
    (void)fal;
    // bj unpacked to the raw arrow type for the b-premises
    std::string bja = a.add("PAIR.sub-elim-ty",
                            Sequent::typing(Ci, P("bj"), P("(arrow s s)")), {bji});
    ExprPtr lhs_a = ecarry(P("(arrow (updown s s bj) (updown s s bj))"), P("bj"), P("bj"));
    ExprPtr rhs_a = eforall(
        "x1", P("s"),
        eforall("x2", P("s"),
                eimplies(ecarry(ud, evar("x1"), evar("x2")),
                         ecarry(ud, eapp(P("bj"), evar("x1")), eapp(P("bj"), evar("x2"))))));
    a.add("ISO.carry-arrow",
          Sequent::formula(Ci, expand_abbrevs(eiff(lhs_a, rhs_a))),
          {cci, ddi, udi, fam_arrow, bja, bja});
    auto [fam_sub, fsl] = a.typing_in_universe(Cix, P("(subtype (y x) (eq x y y))"));
    (void)fsl;
    std::string reflci = a.add("PC.eq-refl", Sequent::formula(Ci, P("(eq s c c)")), {cci});
    std::string refldi = a.add("PC.eq-refl", Sequent::formula(Ci, P("(eq s d d)")), {ddi});
    auto [sti2, stty2] = a.typing(Ci, P("(subtype (y s) (eq s y y))"));
    (void)stty2;
    std::string sb1 = a.add("PAIR.sub-intro",
                            Sequent::typing(Ci, P("c"), P("(subtype (y s) (eq s y y))")),
                            {sti2, cci, reflci});
    std::string sb2 = a.add("PAIR.sub-intro",
                            Sequent::typing(Ci, P("d"), P("(subtype (y s) (eq s y y))")),
                            {sti2, ddi, refldi});
    ExprPtr lhs_s = ecarry(P("(subtype (y (updown s s bj)) (eq (updown s s bj) y y))"),
                           P("c"), P("d"));
    ExprPtr rhs_s = ecarry(ud, P("c"), P("d"));
    a.add("ISO.carry-subtype",
          Sequent::formula(Ci, expand_abbrevs(eiff(lhs_s, rhs_s))),
          {cci, ddi, udi, fam_sub, sb1, sb2});

    // NAT rules
    Context Cnat = push_decl(C, "x", P("s"));
    auto [xi, xty] = a.typing(Cnat, P("x"));
    (void)xty;
    ExprPtr lam = enatlam("x", P("s"), evar("x"));
    std::string lami = a.add(
        "NAT.lam", Sequent::formula(C, einn(lam, enatarrow("x", P("s"), P("s")))), {xi});
    a.add("NAT.app", Sequent::typing(C, enatapp(lam, P("c")), P("s")), {lami, ci});
    a.add("NAT.beta", Sequent::formula(C, eabseq(enatapp(lam, P("c")), P("c"))), {xi, ci});
  }
};

Library& library() {
  static Library lib;
  return lib;
}

// a minimal mutation of a claim that must break any schema match
Sequent mutate(const Sequent& s) {
  Sequent m = s;
  switch (s.jk) {
    case JudgeKind::Formula:
      m.e = enot(s.e);
      break;
    case JudgeKind::TypeOf:
      m.ty = earrow(s.ty, s.ty);
      break;
    case JudgeKind::True:
      m.ctx.push_back(ContextEntry::decl("mutant__", ebool()));
      break;
  }
  return m;
}

}  // namespace

TEST_CASE("the rule library is accepted end to end, including reparse") {
  auto& lib = library();
  auto rep = check_script(lib.script);
  INFO(rep.first_failure);
  CHECK(rep.accepted);
  auto rep2 = check_script(parse_proof(lib.a.serialize()));
  INFO(rep2.first_failure);
  CHECK(rep2.accepted);
}

TEST_CASE("every registered rule has a positive instance in the library") {
  auto& lib = library();
  std::set<std::string> used;
  for (auto& st : lib.script.steps) used.insert(st.rule);
  for (auto& rule : rule_registry()) {
    INFO(rule);
    CHECK(used.count(rule));
  }
}

TEST_CASE("every registered rule rejects a mutated claim") {
  auto& lib = library();
  std::set<std::string> mutated;
  std::map<std::string, Sequent> derived;
  for (auto& st : lib.script.steps) {
    if (!mutated.count(st.rule)) {
      Step bad = st;
      bad.claim = mutate(st.claim);
      auto why = check_step(bad, derived);
      INFO(st.rule << " accepted a mutated claim");
      CHECK(why.has_value());
      mutated.insert(st.rule);
    }
    derived[st.id] = st.claim;
  }
  for (auto& rule : rule_registry()) {
    INFO(rule);
    CHECK(mutated.count(rule));
  }
}

TEST_CASE("structural rejection modes") {
  // unknown rule
  auto bad1 = parse_proof("(proof (step s1 (seq (ctx) true) (rule EXPR.nope)))");
  CHECK_FALSE(check_script(bad1).accepted);
  // forward premise reference
  auto bad2 = parse_proof(
      "(proof (step s1 (seq (ctx) (oftype (bool-type) (type-i 0))) (rule EXPR.bool) "
      "(premises s2)) (step s2 (seq (ctx) true) (rule EXPR.empty)))");
  CHECK_FALSE(check_script(bad2).accepted);
  // duplicate ids
  auto bad3 = parse_proof(
      "(proof (step s1 (seq (ctx) true) (rule EXPR.empty)) (step s1 (seq (ctx) true) (rule "
      "EXPR.empty)))");
  CHECK_FALSE(check_script(bad3).accepted);
  // stray hints
  auto bad4 = parse_proof(
      "(proof (step s1 (seq (ctx) true) (rule EXPR.empty) (hints (pattern x) (var x))))");
  CHECK_FALSE(check_script(bad4).accepted);
  // later steps are marked skipped after the first failure
  auto bad5 = parse_proof(
      "(proof (step s1 (seq (ctx) (oftype (type-i 1) (type-i 0))) (rule EXPR.universe)) "
      "(step s2 (seq (ctx) true) (rule EXPR.empty)))");
  auto rep = check_script(bad5);
  CHECK_FALSE(rep.accepted);
  REQUIRE(rep.steps.size() == 2);
  CHECK(rep.steps[0].state == StepState::Failed);
  CHECK(rep.steps[1].state == StepState::Skipped);
}

TEST_CASE("checking is deterministic") {
  auto& lib = library();
  auto r1 = check_script(lib.script);
  auto r2 = check_script(lib.script);
  REQUIRE(r1.steps.size() == r2.steps.size());
  for (size_t i = 0; i < r1.steps.size(); i++) CHECK(r1.steps[i].state == r2.steps[i].state);
}

TEST_CASE("side conditions") {
  // x not declared twice
  Author a;
  Context C{ContextEntry::decl("s", etype(0))};
  a.wf(C);
  auto [si, sl] = a.typing_in_universe(C, P("s"));
  (void)sl;
  Step bad;
  bad.id = "x";
  bad.rule = "EXPR.declare";
  bad.claim = Sequent::truth(push_decl(C, "s", P("s")));
  bad.premises = {si};
  std::map<std::string, Sequent> derived;
  for (auto& st : a.script().steps) derived[st.id] = st.claim;
  CHECK(check_step(bad, derived).has_value());

  // universe levels
  auto lvl = parse_proof("(proof (step s1 (seq (ctx) (oftype (type-i 2) (type-i 2))) (rule EXPR.universe)))");
  CHECK_FALSE(check_script(lvl).accepted);

  // closedness for the closed description rule: a free variable must fail
  Author b;
  Context Cd{ContextEntry::decl("s", etype(0)), ContextEntry::decl("c", P("s"))};
  Context CdA = Cd;
  CdA.push_back(ContextEntry::assume(P("(exists-unique (y s) (eq s y c))")));
  Context CdY = CdA;
  CdY.push_back(ContextEntry::decl("y", P("s")));
  std::string phid = b.formation(CdY, P("(eq s y c)"));
  std::string hd = b.assume_last(CdA);
  Step open_desc;
  open_desc.id = "bad";
  open_desc.rule = "DESC.the-closed";
  open_desc.claim = Sequent::typing(CdA, P("(the (y s) (eq s y c))"), P("s"));
  open_desc.premises = {phid, hd};
  std::map<std::string, Sequent> derived2;
  for (auto& st : b.script().steps) derived2[st.id] = st.claim;
  auto why = check_step(open_desc, derived2);
  REQUIRE(why.has_value());
  CHECK(why->find("closed") != std::string::npos);
}
