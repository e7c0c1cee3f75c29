#include "catch_amalgamated.hpp"

#include <random>

#include "mortt/gen.hpp"
#include "mortt/model.hpp"

using namespace mortt;

namespace {
ModelConfig tiny() {
  ModelConfig cfg;
  cfg.alphabet = {"1", "2"};
  cfg.max_card = 2;
  return cfg;
}
ExprPtr P(const std::string& s) { return parse_expr(s); }
ValuePtr V(const std::string& s) { return parse_value(s); }
}  // namespace

TEST_CASE("model file parsing") {
  auto cfg = parse_model(
      "(model (alphabet a b c) (max-card 3) (max-rank 2) (universe 0 100) (universe 1 500) "
      "(budget 1000))");
  CHECK(cfg.alphabet.size() == 3);
  CHECK(cfg.max_card == 3);
  CHECK(cfg.max_rank == 2);
  CHECK(cfg.universe_caps.at(0) == 100);
  CHECK(cfg.budget == 1000);
  CHECK_THROWS_AS(parse_model("(model (max-card 2))"), ParseError);
}

TEST_CASE("bounded Set universe counts discrete point types") {
  Evaluator ev(tiny());
  auto u0 = ev.universe(0);
  REQUIRE(u0.ok());
  // independent brute force: partial bijections over a 2-letter alphabet
  std::vector<ValuePtr> pool;
  for (int i = 1; i <= 2; i++)
    for (int j = 1; j <= 2; j++) pool.push_back(Value::point(Index::num(i), Index::num(j)));
  int count = 0;
  for (size_t mask = 0; mask < 16; mask++) {
    std::vector<ValuePtr> pts;
    for (size_t b = 0; b < 4; b++)
      if (mask & (1u << b)) pts.push_back(pool[b]);
    ValuePtr t = Value::type(std::move(pts));
    if ((int)t->members().size() > 2) continue;
    if (!check_weak(t).ok()) continue;
    bool discrete = true;
    for (auto& x : t->members())
      for (auto& y : t->members())
        if (!Value::equal(x, y) && eq_in(t, x, y)) discrete = false;
    if (discrete) count++;
  }
  CHECK((int)u0.v->members().size() == count);
  CHECK(u0.v->members().size() == 7);
  // the universe value itself is a strong morphoid type with interface TypeOf(Point)
  CHECK(check_strong(u0.v).ok());
  auto a = interface_template(u0.v);
  REQUIRE(a.has_value());
  CHECK(template_equal(*a, Template::type_of(Template::point())));
  auto u1 = ev.universe(1);
  REQUIRE(u1.ok());
  CHECK(check_strong(u1.v).ok());
}

TEST_CASE("context enumeration") {
  Evaluator ev(tiny());
  std::string why;
  auto empty = ev.enum_context({}, &why);
  REQUIRE(empty.has_value());
  CHECK(empty->structures.size() == 1);

  Context cb{ContextEntry::decl("x", ebool())};
  auto two = ev.enum_context(cb, &why);
  REQUIRE(two.has_value());
  CHECK(two->structures.size() == 2);

  Context cs{ContextEntry::decl("al", etype(0))};
  auto sets = ev.enum_context(cs, &why);
  REQUIRE(sets.has_value());
  CHECK(sets->structures.size() == 7);

  // assumptions filter
  Context cf = cb;
  cf.push_back(ContextEntry::assume(P("x")));
  auto one = ev.enum_context(cf, &why);
  REQUIRE(one.has_value());
  CHECK(one->structures.size() == 1);
  CHECK(one->structures[0].at("x")->flag());

  // judgemental assumptions filter by direct evaluation
  Context cj{ContextEntry::decl("x", ebool()), ContextEntry::decl("y", ebool()),
             ContextEntry::assume(P("(abs-eq x y)"))};
  auto diag = ev.enum_context(cj, &why);
  REQUIRE(diag.has_value());
  CHECK(diag->structures.size() == 2);
}

TEST_CASE("value function clauses against direct oracles") {
  Evaluator ev(tiny());
  Structure rho;
  // Bool
  auto b = ev.eval(ebool(), rho);
  REQUIRE(b.ok());
  CHECK(b.v->members().size() == 2);
  // disjunction/negation truth tables
  for (bool x : {false, true})
    for (bool y : {false, true}) {
      Structure r{{"x", Value::boolean(x)}, {"y", Value::boolean(y)}};
      auto o = ev.eval(P("(or x y)"), r);
      REQUIRE(o.ok());
      CHECK(o.v->flag() == (x || y));
      auto n = ev.eval(P("(not x)"), r);
      CHECK(n.v->flag() == !x);
    }
  // forall over Bool
  CHECK(ev.eval(P("(forall (x (bool-type)) (or x (not x)))"), rho).v->flag());
  CHECK_FALSE(ev.eval(P("(forall (x (bool-type)) x)"), rho).v->flag());
  // abs-eq is canonical identity
  Structure r2{{"a", V("(type (point 1 1) (point 2 2))")},
               {"b", V("(type (point 2 2) (point 1 1))")}};
  CHECK(ev.eval(P("(abs-eq a b)"), r2).v->flag());
  // application goes through @Point
  Structure r3{{"f", Value::fun({{V("(point 1 1)"), Value::boolean(true)}})},
               {"p", V("(point 1 1)")}};
  CHECK(ev.eval(P("(app f p)"), r3).v->flag());
  CHECK(ev.eval(P("(app f (bool-type))"), Structure{{"f", r3.at("f")}}).st ==
        EvalStatus::Undef);
}

TEST_CASE("pair types and subtypes evaluate to comprehension sets") {
  Evaluator ev(tiny());
  Structure rho{{"al", V("(type (point 1 1) (point 2 2))")}};
  auto pt = ev.eval(P("(pairtype (x al) al)"), rho);
  REQUIRE(pt.ok());
  // direct two-loop comprehension
  std::vector<ValuePtr> expect;
  for (auto& v : rho.at("al")->members())
    for (auto& w : rho.at("al")->members()) expect.push_back(Value::pair(v, w));
  CHECK(Value::equal(pt.v, Value::type(expect)));

  auto st = ev.eval(P("(subtype (x al) (eq al x x))"), rho);
  REQUIRE(st.ok());
  CHECK(Value::equal(st.v, rho.at("al")));

  auto st2 = ev.eval(P("(subtype (x al) (not (eq al x x)))"), rho);
  REQUIRE(st2.ok());
  CHECK(st2.v->members().empty());
}

TEST_CASE("equality at Set is cardinality") {
  Evaluator ev(tiny());
  Structure rho{{"a", V("(type (point 1 1))")}, {"b", V("(type (point 2 2))")},
                {"c", V("(type)")}};
  CHECK(ev.eval(P("(eq (type-i 0) a b)"), rho).v->flag());
  CHECK_FALSE(ev.eval(P("(eq (type-i 0) a c)"), rho).v->flag());
  CHECK(ev.eval(P("(eq (type-i 0) c c)"), rho).v->flag());
}

TEST_CASE("iso, updown and The clauses") {
  Evaluator ev(tiny());
  Structure rho{{"a", V("(type (point 1 1) (point 2 2))")},
                {"b", V("(type (point 1 1) (point 2 2))")}};
  auto iso = ev.eval(P("(iso (type-i 0) a b)"), rho);
  REQUIRE(iso.ok());
  CHECK_FALSE(iso.v->members().empty());
  auto the = ev.eval(P("(the (x (bool-type)) x)"), Structure{});
  REQUIRE(the.ok());
  CHECK(the.v->flag());
  auto none = ev.eval(P("(the (x (bool-type)) (or x (not x)))"), Structure{});
  CHECK(none.st == EvalStatus::Undef);  // two classes

  Structure rf{{"a", V("(type (point 1 1))")}, {"b", V("(type (point 2 2))")},
               {"f", Value::fun({{V("(point 1 1)"), V("(point 2 2)")}})}};
  auto ud = ev.eval(P("(updown a b f)"), rf);
  REQUIRE(ud.ok());
  CHECK(Value::equal(ud.v, V("(type (point 2 1))")));
}

TEST_CASE("natural maps are unsupported in the model") {
  Evaluator ev(tiny());
  auto r = ev.eval(P("(nat-lam (x (bool-type)) x)"), {});
  CHECK(r.st == EvalStatus::Unsupported);
}

TEST_CASE("entailment") {
  Evaluator ev(tiny());
  CHECK(ev.entails({}, P("(forall (x (bool-type)) (or x (not x)))")).yes());
  Context cb{ContextEntry::decl("x", ebool())};
  CHECK_FALSE(ev.entails(cb, P("x")).yes());
  CHECK(ev.entails(cb, P("(or x (not x))")).yes());
}

TEST_CASE("V1 holds for variables and fails for absolute equality") {
  Evaluator ev(tiny());
  Context cb{ContextEntry::decl("x", ebool())};
  CHECK(ev.check_v1(cb, P("x")).yes());
  CHECK(ev.check_v1(cb, P("(or x (not x))")).yes());
  // ≐ between members of a non-discrete type is not V1-compatible: that is
  // exactly why it is not a proposition
  Context cj{ContextEntry::decl("sg", etype(1)), ContextEntry::decl("x", P("sg")),
             ContextEntry::decl("y", P("sg"))};
  auto out = ev.check_v1(cj, P("(abs-eq x y)"));
  CHECK(out.st == Outcome::St::No);
  // pair expressions stay V1-compatible
  Context cp{ContextEntry::decl("sg", etype(0)), ContextEntry::decl("x", P("sg")),
             ContextEntry::decl("y", P("sg"))};
  CHECK(ev.check_v1(cp, P("(mkpair x y)")).yes());
}

TEST_CASE("V2 monotonicity") {
  Evaluator ev(tiny());
  Context c{ContextEntry::decl("sg", etype(0))};
  CHECK(ev.check_v2(c, P("sg")).yes());
  CHECK(ev.check_v2(c, P("(bool-type)")).yes());
  CHECK(ev.check_v2(c, P("(arrow sg sg)")).yes());
}

TEST_CASE("validate_sequent") {
  Evaluator ev(tiny());
  CHECK(ev.validate(Sequent::typing({}, ebool(), etype(0))).st == Validation::Pass);
  CHECK(ev.validate(Sequent::typing({}, etype(0), etype(1))).st == Validation::Pass);
  Context cb{ContextEntry::decl("x", ebool())};
  CHECK(ev.validate(Sequent::formula(cb, P("(or x (not x))"))).st == Validation::Pass);
  CHECK(ev.validate(Sequent::formula(cb, P("x"))).st == Validation::Fail);
  // natural maps are flagged, not failed
  CHECK(ev.validate(Sequent::formula({}, einn(P("(nat-lam (x (bool-type)) x)"),
                                              P("(nat-arrow (x (bool-type)) (bool-type))"))))
            .st == Validation::NotCheckable);
  // the infinity axiom cannot hold in a finite model
  ExprPtr inf = expand_abbrevs(
      P("(exists (alpha (type-i 0)) (exists (f (arrow alpha (type-i 0))) (forall (x alpha) "
        "(exists (y alpha) (eq (type-i 0) (app f y) (arrow (app f x) (bool-type)))))))"));
  auto r = ev.validate(Sequent::formula({}, inf));
  CHECK(r.st == Validation::Fail);
}

TEST_CASE("left-right duality on evaluated expressions") {
  Evaluator ev(tiny());
  Context c{ContextEntry::decl("sg", etype(0)), ContextEntry::decl("x", P("sg"))};
  std::string why;
  auto cs = ev.enum_context(c, &why);
  REQUIRE(cs.has_value());
  for (auto* expr : {"sg", "x", "(mkpair x x)", "(pairtype (z sg) sg)", "(arrow sg sg)"}) {
    ExprPtr e = P(expr);
    for (auto& rho : cs->structures) {
      auto v = ev.eval(e, rho);
      REQUIRE(v.ok());
      auto vi = ev.eval(e, invert_structure(rho));
      REQUIRE(vi.ok());
      CHECK(Value::equal(vi.v, invert(v.v)));
    }
  }
}

TEST_CASE("all values are strong morphoids with minimal teval templates") {
  Evaluator ev(tiny());
  Context c{ContextEntry::decl("sg", etype(0)), ContextEntry::decl("x", P("sg"))};
  std::string why;
  auto cs = ev.enum_context(c, &why);
  REQUIRE(cs.has_value());
  for (auto* expr :
       {"sg", "x", "(bool-type)", "(mkpair x sg)", "(pairtype (z sg) sg)", "(arrow sg sg)",
        "(subtype (z sg) (eq sg z z))", "(eq sg x x)", "(iso (type-i 0) sg sg)"}) {
    ExprPtr e = P(expr);
    for (auto& rho : cs->structures) {
      auto v = ev.eval(e, rho);
      REQUIRE(v.ok());
      CHECK(check_strong(v.v).ok());
      StructureTemplate eta;
      for (auto& [name, val] : rho) {
        auto t = minimal_template(val);
        REQUIRE(t.has_value());
        eta[name] = *t;
      }
      auto tmpl = teval(e, eta);
      REQUIRE(tmpl.has_value());
      auto img = abstract(v.v, *tmpl);
      REQUIRE(img.has_value());
      CHECK(precedes(*img, v.v));  // the computed template is minimal
    }
  }
}

TEST_CASE("budget guards yield unsupported, never truncation") {
  ModelConfig cfg = tiny();
  cfg.budget = 3;
  Evaluator ev(cfg);
  Structure rho{{"al", V("(type (point 1 1) (point 2 2))")}};
  auto r = ev.eval(P("(forall (x (type-i 0)) (eq (type-i 0) x x))"), rho);
  CHECK(r.st == EvalStatus::Unsupported);
  ModelConfig cfg2 = tiny();
  cfg2.universe_caps[0] = 2;
  Evaluator ev2(cfg2);
  CHECK(ev2.universe(0).st == EvalStatus::Unsupported);
}
