#include "catch_amalgamated.hpp"

#include "mortt/figures.hpp"

using namespace mortt;

namespace {
ValuePtr pn(int64_t i, int64_t j) { return Value::point(Index::num(i), Index::num(j)); }
TemplatePtr TP() { return Template::point(); }
TemplatePtr TB() { return Template::boolean(); }
TemplatePtr TOP() { return Template::type_of(Template::point()); }
}  // namespace

TEST_CASE("abstraction case table") {
  CHECK(Value::equal(*abstract(Value::boolean(true), TB()), Value::boolean(true)));
  CHECK_FALSE(abstract(Value::boolean(true), TP())->is_bool());  // a point now
  CHECK(Value::equal(*abstract(pn(1, 2), TP()), pn(1, 2)));

  // sigma is already a point type so @TypeOf(Point) fixes it
  ValuePtr s = figures::sigma12();
  CHECK(Value::equal(*abstract(s, TOP()), s));

  // functions cannot abstract to types
  ValuePtr f = Value::fun({{pn(1, 1), Value::boolean(true)}});
  CHECK_FALSE(abstract(f, TOP()).has_value());
  CHECK_FALSE(abstract(Value::boolean(true), Template::pair(TB(), TB())).has_value());
}

TEST_CASE("subpoint") {
  CHECK(Value::equal(subpoint(Value::boolean(false)), Value::boolean(false)));
  ValuePtr p = Value::pair(pn(1, 2), pn(3, 4));
  CHECK(Value::equal(subpoint(p), p));  // points fixed under @Point
  ValuePtr t = Value::type({Value::pair(pn(1, 2), Value::boolean(true))});
  ValuePtr expect =
      Value::type({Value::pair(pn(1, 2), *abstract(Value::boolean(true), TP()))});
  CHECK(Value::equal(subpoint(t), expect));
  CHECK_THROWS_AS(subpoint(pn(1, 2)), std::invalid_argument);
}

TEST_CASE("abstraction to a point uses encoded boundaries") {
  ValuePtr t = Value::type({pn(1, 1)});
  ValuePtr a = *abstract(t, TP());
  REQUIRE(a->is_point());
  CHECK(a->left_index().tag() == Index::Tag::Encoded);
  CHECK(Value::equal(a->left_index().value(), left(t)));
  CHECK(Value::equal(a->right_index().value(), right(t)));
}

TEST_CASE("precedes") {
  ValuePtr s = figures::sigma12();
  CHECK(precedes(s, s));
  ValuePtr sp = *abstract(s, TOP());
  CHECK(precedes(s, sp));
  // a two-class point type is not preceded by its point abstraction
  ValuePtr a = *abstract(s, TP());
  CHECK_FALSE(precedes(a, s));
}

TEST_CASE("minimal and interface templates") {
  CHECK(template_equal(*minimal_template(pn(1, 2)), TP()));
  CHECK(template_equal(*minimal_template(Value::boolean(true)), TB()));
  CHECK(template_equal(*minimal_template(figures::sigma12()), TOP()));

  // the group-shaped pair: (TypeV, curried FunV)
  ValuePtr carrier = Value::type({pn(1, 1), pn(2, 2)});
  std::vector<Value::Entry> outer;
  for (auto& x : carrier->members()) {
    std::vector<Value::Entry> inner;
    for (auto& y : carrier->members()) inner.push_back({y, x});
    outer.push_back({x, Value::fun(std::move(inner))});
  }
  ValuePtr group_like = Value::pair(carrier, Value::fun(std::move(outer)));
  auto t = minimal_template(group_like);
  REQUIRE(t.has_value());
  CHECK(print_template(*t) == "(pair (typeof POINT) (arrow POINT (arrow POINT POINT)))");

  // empty type: canonical choice TypeOf(Point)
  CHECK(template_equal(*minimal_template(Value::type({})), TOP()));
  CHECK(template_equal(*interface_template(Value::type({})), TP()));
}

TEST_CASE("interface search") {
  // closure failure: the @-image of a member is missing
  ValuePtr present = Value::pair(pn(1, 1), Value::type({pn(2, 2)}));
  ValuePtr missing_partner = Value::type({present});
  CHECK_FALSE(interface_template(missing_partner).has_value());
  ValuePtr img = *abstract(present, Template::pair(TP(), TOP()));
  ValuePtr closed = Value::type({present, img});
  auto a = interface_template(closed);
  REQUIRE(a.has_value());
  CHECK(template_equal(*a, Template::pair(TP(), TOP())));
}

TEST_CASE("range templates") {
  ValuePtr dom = Value::type({pn(1, 1), pn(2, 2)});
  std::vector<Value::Entry> g;
  for (auto& x : dom->members()) g.push_back({x, Value::boolean(true)});
  CHECK(template_equal(*range_template(Value::fun(g)), TB()));

  // a range value that is not fixed by abstraction has no range template
  ValuePtr nested = Value::type({Value::type({pn(1, 1)})});  // members are types
  ValuePtr f = Value::fun({{pn(1, 1), nested}});
  CHECK_FALSE(range_template(f).has_value());
}

TEST_CASE("check_strong") {
  CHECK(check_strong(figures::sigma12()).ok());
  CHECK(check_strong(Value::boolean(true)).ok());
  auto rep = check_strong(Value::type({pn(1, 2), Value::type({})}));
  REQUIRE_FALSE(rep.ok());
  bool t2 = false;
  for (auto& v : rep.violations) t2 |= v.kind == ProblemKind::T2_NoInterface;
  CHECK(t2);
  // exhaustive candidate check at depth <= 2 agrees: no abstract template
  // abstracts both a point and a type into the set
  ValuePtr bad = Value::type({pn(1, 2), Value::type({})});
  std::vector<TemplatePtr> fam = {TP(), TB(), TOP(), Template::arrow(TP()),
                                  Template::arrow(TB()), Template::arrow(TOP()),
                                  Template::pair(TP(), TP()), Template::pair(TP(), TB()),
                                  Template::pair(TB(), TP()), Template::pair(TOP(), TOP())};
  for (auto& cand : fam) {
    bool closes = true;
    for (auto& m : bad->members()) {
      auto i = abstract(m, cand);
      if (!i || !bad->has_member(*i)) closes = false;
    }
    CHECK_FALSE(closes);
  }
}

TEST_CASE("at_type and eq_in") {
  ValuePtr s = figures::sigma12();
  for (auto& x : s->members()) {
    CHECK(s->has_member(at_type(x, s)));
    CHECK(eq_in(s, x, at_type(x, s)));  // (=.D)
    CHECK(eq_in(s, x, x));
  }
  ValuePtr pa = Value::point(Index::atom("a"), Index::atom("A"));
  ValuePtr pb = Value::point(Index::atom("b"), Index::atom("B"));
  CHECK_FALSE(eq_in(s, pa, pb));
  CHECK_THROWS_AS(eq_in(s, pa, pn(9, 9)), std::invalid_argument);
}

TEST_CASE("iso_type") {
  ValuePtr s = figures::sigma12();
  ValuePtr pa = Value::point(Index::atom("a"), Index::atom("A"));
  ValuePtr pat = Value::point(Index::atom("a~"), Index::atom("A~"));
  ValuePtr pb = Value::point(Index::atom("b"), Index::atom("B"));
  ValuePtr self = iso_type(s, pa, pa);
  CHECK(self->has_member(at_type(pa, s)));
  CHECK_FALSE(iso_type(s, pa, pat)->members().empty());
  CHECK(iso_type(s, pa, pb)->members().empty());
  for (auto& x : s->members())
    for (auto& y : s->members())
      CHECK((!iso_type(s, x, y)->members().empty()) == eq_in(s, x, y));
  // the iso type is weak and carries sigma's interface
  ValuePtr i = iso_type(s, pa, pat);
  CHECK(check_weak(i).ok());
  auto a = interface_template(s);
  for (auto& z : i->members()) CHECK(i->has_member(*abstract(z, *a)));
}

TEST_CASE("function application abstracts its argument") {
  ValuePtr dom = Value::type({pn(1, 1), pn(2, 2)});
  std::vector<Value::Entry> g;
  for (auto& x : dom->members()) g.push_back({x, x});
  ValuePtr f = Value::fun(std::move(g));
  CHECK(Value::equal(*fun_apply(f, pn(1, 1)), pn(1, 1)));
  CHECK_FALSE(fun_apply(f, pn(9, 9)).has_value());
  CHECK_FALSE(fun_apply(Value::fun({}), pn(1, 1)).has_value());
  // a non-point argument is taken to its point abstraction first
  ValuePtr t = Value::type({pn(3, 3)});
  ValuePtr tp = at_point(t);
  ValuePtr f2 = Value::fun({{tp, Value::boolean(true)}});
  CHECK(Value::equal(*fun_apply(f2, t), Value::boolean(true)));
}

TEST_CASE("arrow spaces") {
  ValuePtr s = Value::type({pn(1, 1), pn(2, 2)});
  ValuePtr t = Value::type({pn(3, 3), pn(4, 4), pn(5, 5)});
  ValuePtr arr = arrow_type(s, t);
  CHECK(arr->members().size() == 9);  // |tau|^classes = 3^2
  CHECK(check_strong(arr).ok());
  // interface is Point -> A_tau
  auto at = interface_template(t);
  for (auto& f : arr->members())
    CHECK(arr->has_member(*abstract(f, Template::arrow(*at))));

  CHECK(arrow_type(s, Value::type({}))->members().empty());
  ValuePtr unit = arrow_type(Value::type({}), Value::type({}));
  REQUIRE(unit->members().size() == 1);
  CHECK(unit->members()[0]->is_fun());
  CHECK(unit->members()[0]->graph().empty());

  // exhaustive oracle on a small instance: every class-constant graph with
  // values in tau's abstract image appears
  ValuePtr arr2 = arrow_type(s, Value::type({pn(7, 7)}));
  CHECK(arr2->members().size() == 1);
}

TEST_CASE("updown") {
  ValuePtr a = Value::type({pn(1, 1), pn(2, 2)});
  ValuePtr b = Value::type({pn(3, 3), pn(4, 4)});
  // f swaps the classes: 1 -> 4, 2 -> 3
  ValuePtr f = Value::fun({{pn(1, 1), pn(4, 4)}, {pn(2, 2), pn(3, 3)}});
  ValuePtr ud = updown(a, b, f);
  // brute-force the defining comprehension over all (x, y) pairs
  std::vector<ValuePtr> expect;
  for (auto& x : a->members())
    for (auto& y : b->members())
      if (eq_in(b, y, *fun_apply(f, x)))
        expect.push_back(Value::point(at_point(y)->left_index(), at_point(x)->right_index()));
  CHECK(Value::equal(ud, Value::type(expect)));
  CHECK(ud->has_member(pn(4, 1)));
  CHECK(ud->has_member(pn(3, 2)));
  CHECK(check_weak(ud).ok());
  // boundary identities of the second helper
  CHECK(Value::equal(left(ud), left(*abstract(b, TOP()))));
  CHECK(Value::equal(right(ud), right(*abstract(a, TOP()))));
  // identity-on-classes updown over the same type
  ValuePtr idf = Value::fun({{pn(1, 1), pn(1, 1)}, {pn(2, 2), pn(2, 2)}});
  ValuePtr udi = updown(a, a, idf);
  CHECK(Value::equal(udi, a));
  // non-bijection rejected
  ValuePtr collapse = Value::fun({{pn(1, 1), pn(3, 3)}, {pn(2, 2), pn(3, 3)}});
  CHECK_THROWS_AS(updown(a, b, collapse), std::invalid_argument);
}

TEST_CASE("the_choice") {
  ValuePtr single = Value::type({pn(1, 1)});
  CHECK(Value::equal(*the_choice(single), pn(1, 1)));
  ValuePtr two = Value::type({pn(1, 1), pn(2, 2)});
  CHECK_FALSE(the_choice(two).has_value());
  CHECK_FALSE(the_choice(Value::type({})).has_value());
  // The(sigma)@sigma = The(sigma) on a single-class block type
  ValuePtr block = Value::type({pn(1, 1), pn(1, 2), pn(2, 1), pn(2, 2)});
  auto c = the_choice(block);
  REQUIRE(c.has_value());
  CHECK(Value::equal(at_type(*c, block), *c));
}

TEST_CASE("the permutation-group counterexample to outward distribution") {
  ValuePtr t1 = figures::perm_tau1();
  ValuePtr t2 = figures::perm_tau2();
  CHECK(check_strong(t1).ok());
  CHECK(check_strong(t2).ok());
  CHECK_FALSE(compose(t1, t2).has_value());
  ValuePtr a1 = *abstract(t1, TOP());
  ValuePtr a2 = *abstract(t2, TOP());
  CHECK(compose(a1, a2).has_value());
  // both abstractions collapse to the single point over the diagonal sigma
  CHECK(a1->members().size() == 1);
  CHECK(Value::equal(a1, a2));
}
