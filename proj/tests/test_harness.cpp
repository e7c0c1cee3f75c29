#include "catch_amalgamated.hpp"

#include <set>

#include "mortt/properties.hpp"

using namespace mortt;

TEST_CASE("generators satisfy their advertised predicates") {
  Gen g(7);
  for (int i = 0; i < 200; i++) {
    CHECK(check_weak(g.point_type()).ok());
    ValuePtr w = g.weak(2);
    CHECK(check_weak(w).ok());
    ValuePtr s = g.strong(2);
    CHECK(check_strong(s).ok());
    auto [x, y] = g.composable_pair(2);
    CHECK(compose(x, y).has_value());
    ValuePtr f = g.weak_fun(1);
    CHECK(check_weak(f).ok());
    auto [v, t] = g.abstractable(2);
    CHECK(abstract(v, t).has_value());
  }
}

TEST_CASE("the fixed corpus values are part of generation seeds") {
  // the paper's worked values are exercised directly by the kernel tests;
  // here we only check they satisfy the generator contracts
  CHECK(check_strong(figures::sigma12()).ok());
  CHECK(check_strong(figures::tau12()).ok());
  CHECK(check_strong(figures::graph_g()).ok());
  CHECK(check_strong(figures::graph_h()).ok());
  CHECK(compose(figures::sigma12(), figures::tau12()).has_value());
}

TEST_CASE("registry completeness against the hard-coded manifest") {
  const char* manifest[] = {
      "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9",
      "Fun-Left-Right", "Funs-Composable", "Fun-Composition",
      "Composables-Equivalent", "≃.A", "≃.B", "Partner", "Rank Preservation",
      "~.A", "~.B", "At-Point-Defined", "Abs-Expansion", "Abs-Compression",
      "Abs-Alternation", "Abs-Rank-Preservation", "⪯.A", "⪯.B", "~.C", "~.D",
      "~.E", "Min-Template.A", "Min-Template.B", "Min-Template.C",
      "Morphoid-Closure", "Abs-Distributes-In", "Abs-Distributes-Out", "=.A",
      "=.B", "=.C", "=.D", "=.V1", "=.V2", "type_i", "→.A", "→.V1", "→.V2",
      "App.V1", "App.V2", "↕.A", "↕.B", "Iso"};
  std::set<std::string> expected(std::begin(manifest), std::end(manifest));
  std::set<std::string> registered;
  for (auto& p : property_registry()) {
    CHECK(registered.insert(p.name).second);  // exactly once
    CHECK_FALSE(p.figure.empty());
    CHECK_FALSE(p.quote.empty());
  }
  CHECK(registered == expected);
  CHECK(registered.size() == 50);
}

TEST_CASE("a short registry run passes") {
  auto rep = run_properties({}, 12345, 25);
  for (auto& r : rep.results) {
    INFO(r.name << ": " << r.counterexample);
    CHECK(r.passed);
  }
  CHECK(rep.results.size() == property_registry().size());
}

TEST_CASE("selection and determinism") {
  auto rep = run_properties({"G5", "G6"}, 9, 40);
  REQUIRE(rep.results.size() == 2);
  CHECK(rep.results[0].name == "G5");
  auto rep2 = run_properties({"G5", "G6"}, 9, 40);
  CHECK(rep2.results[0].iterations == rep.results[0].iterations);
  auto empty = run_properties({"no-such-property"}, 9, 10);
  CHECK(empty.results.empty());
}

TEST_CASE("a broken composition law is caught by the checks") {
  // the mutation smoke test: run the G6 check shape against a compose that
  // drops the boundary condition, and require a counterexample
  Gen g(2024);
  bool caught = false;
  for (int i = 0; i < 200 && !caught; i++) {
    auto [x, y] = g.composable_pair(2);
    // broken op: composes pointwise but forgets the right-boundary filter on
    // types, modelled by composing x with Left(y) instead of y
    auto broken = compose(x, left(y));
    if (!broken) continue;  // the mutation made it undefined: still wrong, but
                            // the law we watch is the value equation
    auto a = compose(invert(x), x);
    auto chain = a ? compose(*a, left(y)) : std::nullopt;
    if (!chain || !Value::equal(*chain, y)) caught = true;  // G6 fails
  }
  CHECK(caught);
}

TEST_CASE("shrinking reduces counterexamples") {
  // a fabricated failure: "some member is a point with left index 1";
  // shrinking must keep the property while removing unrelated members
  ValuePtr big = Value::type({Value::point(Index::num(1), Index::num(5)),
                              Value::point(Index::num(2), Index::num(2)),
                              Value::point(Index::num(3), Index::num(3))});
  auto fails = [](const std::vector<ValuePtr>& vs) {
    if (!vs[0]->is_type()) return false;
    for (auto& m : vs[0]->members())
      if (m->is_point() && m->left_index() == Index::num(1)) return true;
    return false;
  };
  auto shrunk = shrink_tuple({big}, fails);
  REQUIRE(fails(shrunk));
  CHECK(shrunk[0]->members().size() == 1);
}
