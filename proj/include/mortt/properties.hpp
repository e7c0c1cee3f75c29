#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mortt/figures.hpp"
#include "mortt/gen.hpp"
#include "mortt/model.hpp"

namespace mortt {

// One registered executable law. `figure` and `quote` record where the label
// lives in the source material; `check` runs one generated instance and
// returns a counterexample description on failure.
struct Property {
  std::string name;
  std::string figure;
  std::string quote;
  std::function<std::optional<std::string>(Gen&)> check;
};

struct PropertyResult {
  std::string name;
  int iterations = 0;
  bool passed = true;
  std::string counterexample;
};

struct PropertyReport {
  std::vector<PropertyResult> results;
  bool all_passed() const {
    for (auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

namespace props {

using Check = std::optional<std::string>;

inline std::string pv(const ValuePtr& v) { return print_value(v); }

inline Check ok() { return std::nullopt; }

inline Check cx(const std::string& what, std::vector<ValuePtr> vals,
                const std::function<bool(const std::vector<ValuePtr>&)>& fails) {
  if (fails) vals = shrink_tuple(std::move(vals), fails);
  std::string s = what;
  for (auto& v : vals) s += "\n  " + pv(v);
  return s;
}

// --- kernel groupoid laws -----------------------------------------------------

inline Check g1(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  auto bad = [](const std::vector<ValuePtr>& t) {
    return !is_weak(t[0]) ||
           !(is_weak(left(t[0])) && is_weak(right(t[0])) && is_weak(invert(t[0])));
  };
  if (!is_weak(x)) return ok();  // generator self-check lives elsewhere
  if (is_weak(left(x)) && is_weak(right(x)) && is_weak(invert(x))) return ok();
  return cx("G1: boundary of a weak morphoid is not weak", {x}, bad);
}

inline Check g2(Gen& g) {
  // composable by construction
  auto [x, y] = g.composable_pair(g.bounds().max_depth);
  if (!Value::equal(right(x), left(y))) return cx("generator broke boundaries", {x, y}, nullptr);
  auto c = compose(x, y);
  if (!c) return cx("G2: compose undefined despite matching boundaries", {x, y}, nullptr);
  if (is_weak(x) && is_weak(y) && !is_weak(*c))
    return cx("G2: composite of weak morphoids is not weak", {x, y, *c}, nullptr);
  // non-composable direction
  ValuePtr a = g.weak(1), b = g.weak(1);
  auto d = compose(a, b);
  bool boundaries = Value::equal(right(a), left(b));
  if (d.has_value() != boundaries)
    return cx("G2: definedness disagrees with Right(x) = Left(y)", {a, b}, nullptr);
  return ok();
}

inline Check g3(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (Value::equal(left(invert(x)), right(x)) && Value::equal(right(invert(x)), left(x)))
    return ok();
  return cx("G3 violated", {x}, [](const std::vector<ValuePtr>& t) {
    return !(Value::equal(left(invert(t[0])), right(t[0])) &&
             Value::equal(right(invert(t[0])), left(t[0])));
  });
}

inline Check g4(Gen& g) {
  auto [x, y] = g.composable_pair(g.bounds().max_depth);
  auto c = compose(x, y);
  if (!c) return ok();
  if (Value::equal(left(*c), left(x)) && Value::equal(right(*c), right(y))) return ok();
  return cx("G4 violated", {x, y}, nullptr);
}

inline Check g5(Gen& g) {
  auto [x, y, z] = g.composable_triple(g.bounds().max_depth);
  auto xy = compose(x, y);
  if (!xy) return ok();
  auto yz = compose(y, z);
  if (!yz) return ok();
  auto l = compose(*xy, z);
  auto r = compose(x, *yz);
  if (l.has_value() != r.has_value()) return cx("G5: associativity definedness", {x, y, z}, nullptr);
  if (l && !Value::equal(*l, *r)) return cx("G5: associativity value", {x, y, z}, nullptr);
  return ok();
}

inline Check g6(Gen& g) {
  auto [x, y] = g.composable_pair(g.bounds().max_depth);
  auto a = compose(invert(x), x);
  auto a2 = a ? compose(*a, y) : std::nullopt;
  if (!a2 || !Value::equal(*a2, y)) return cx("G6: x⁻¹∘x∘y ≠ y", {x, y}, nullptr);
  auto b = compose(x, y);
  auto b2 = b ? compose(*b, invert(y)) : std::nullopt;
  if (!b2 || !Value::equal(*b2, x)) return cx("G6: x∘y∘y⁻¹ ≠ x", {x, y}, nullptr);
  return ok();
}

inline Check g7(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  auto r = compose(invert(x), x);
  auto l = compose(x, invert(x));
  if (!r || !Value::equal(*r, right(x))) return cx("G7: Right(x) ≠ x⁻¹∘x", {x}, nullptr);
  if (!l || !Value::equal(*l, left(x))) return cx("G7: Left(x) ≠ x∘x⁻¹", {x}, nullptr);
  return ok();
}

inline Check g8(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (Value::equal(invert(invert(x)), x)) return ok();
  return cx("G8 violated", {x}, nullptr);
}

inline Check g9(Gen& g) {
  auto [x, y] = g.composable_pair(g.bounds().max_depth);
  auto c = compose(x, y);
  if (!c) return ok();
  auto d = compose(invert(y), invert(x));
  if (!d || !Value::equal(invert(*c), *d)) return cx("G9 violated", {x, y}, nullptr);
  return ok();
}

inline Check fun_left_right(Gen& g) {
  ValuePtr f = g.weak_fun(g.bounds().max_depth - 1);
  if (!is_weak(f)) return ok();
  ValuePtr lf = left(f);
  if (!Value::equal(lf->domain(), left(f->domain())))
    return cx("Fun-Left-Right: Dom(Left(f)) ≠ Left(Dom(f))", {f}, nullptr);
  for (auto& e : f->graph()) {
    auto got = lf->lookup(left(e.first));
    if (!got || !Value::equal(*got, left(e.second)))
      return cx("Fun-Left-Right: Left(f)[Left(x)] ≠ Left(f[x])", {f, e.first}, nullptr);
  }
  return ok();
}

inline Check funs_composable(Gen& g) {
  auto [f, h] = g.composable_pair(g.bounds().max_depth);
  if (!f->is_fun() || !h->is_fun()) {
    ValuePtr a = g.weak_fun(1), b = g.weak_fun(1);
    bool def = compose(a, b).has_value();
    auto dd = compose(a->domain(), b->domain());
    bool pointwise = dd.has_value();
    if (pointwise)
      for (auto& e1 : a->graph())
        for (auto& e2 : b->graph())
          if (compose(e1.first, e2.first) && !compose(e1.second, e2.second)) pointwise = false;
    if (def && !pointwise)
      return cx("Funs-Composable: composite defined without pointwise composability", {a, b},
                nullptr);
    return ok();
  }
  bool def = compose(f, h).has_value();
  auto dd = compose(f->domain(), h->domain());
  bool pointwise = dd.has_value();
  if (pointwise)
    for (auto& e1 : f->graph())
      for (auto& e2 : h->graph())
        if (compose(e1.first, e2.first) && !compose(e1.second, e2.second)) pointwise = false;
  if (def != pointwise) return cx("Funs-Composable: iff fails", {f, h}, nullptr);
  return ok();
}

inline Check fun_composition(Gen& g) {
  auto [f, h] = g.composable_pair(g.bounds().max_depth);
  if (!f->is_fun() || !h->is_fun()) return ok();
  auto c = compose(f, h);
  if (!c) return ok();
  auto dd = compose(f->domain(), h->domain());
  if (!dd || !Value::equal((*c)->domain(), *dd))
    return cx("Fun-Composition: Dom(f∘g) ≠ Dom(f)∘Dom(g)", {f, h}, nullptr);
  for (auto& e1 : f->graph())
    for (auto& e2 : h->graph()) {
      auto xy = compose(e1.first, e2.first);
      if (!xy) continue;
      auto want = compose(e1.second, e2.second);
      auto got = (*c)->lookup(*xy);
      if (!want || !got || !Value::equal(*got, *want))
        return cx("Fun-Composition: (f∘g)[x∘y] ≠ f[x]∘g[y]", {f, h}, nullptr);
    }
  return ok();
}

inline Check composables_equivalent(Gen& g) {
  ValuePtr sigma = g.weak_type(g.bounds().max_depth);
  const auto& ms = sigma->members();
  for (auto& x : ms)
    for (auto& y : ms) {
      if (!compose(x, invert(y)) && !compose(invert(x), y)) continue;
      if (!equiv(sigma, x, y))
        return cx("Composables-Equivalent violated", {sigma, x, y}, nullptr);
    }
  return ok();
}

inline Check equiv_a(Gen& g) {
  ValuePtr sigma = g.weak_type(g.bounds().max_depth);
  const auto& ms = sigma->members();
  for (auto& x : ms)
    if (!equiv(sigma, x, x)) return cx("≃.A: not reflexive", {sigma, x}, nullptr);
  for (auto& x : ms)
    for (auto& y : ms)
      if (equiv(sigma, x, y) != equiv(sigma, y, x))
        return cx("≃.A: not symmetric", {sigma, x, y}, nullptr);
  for (auto& x : ms)
    for (auto& y : ms)
      for (auto& z : ms)
        if (equiv(sigma, x, y) && equiv(sigma, y, z) && !equiv(sigma, x, z))
          return cx("≃.A: not transitive", {sigma, x, y, z}, nullptr);
  return ok();
}

inline Check equiv_b(Gen& g) {
  auto [s, t] = g.composable_pair(2);
  if (!s->is_type() || !t->is_type()) return ok();
  auto st = compose(s, t);
  if (!st) return ok();
  for (auto& x1 : s->members())
    for (auto& y1 : t->members()) {
      auto c1 = compose(x1, y1);
      if (!c1) continue;
      for (auto& x2 : s->members())
        for (auto& y2 : t->members()) {
          auto c2 = compose(x2, y2);
          if (!c2) continue;
          bool e0 = equiv(*st, *c1, *c2);
          bool e1 = equiv(s, x1, x2);
          bool e2 = equiv(t, y1, y2);
          if (e0 != e1 || e1 != e2)
            return cx("≃.B violated", {s, t, x1, y1, x2, y2}, nullptr);
        }
    }
  return ok();
}

inline Check partner(Gen& g) {
  auto [s, t] = g.composable_pair(2);
  if (!s->is_type() || !t->is_type() || !compose(s, t)) return ok();
  for (auto& x : s->members()) {
    bool found = false;
    for (auto& y : t->members())
      if (compose(x, y)) { found = true; break; }
    if (!found) return cx("Partner: no partner on the right", {s, t, x}, nullptr);
  }
  for (auto& y : t->members()) {
    bool found = false;
    for (auto& x : s->members())
      if (compose(x, y)) { found = true; break; }
    if (!found) return cx("Partner: no partner on the left", {s, t, y}, nullptr);
  }
  return ok();
}

inline Check rank_preservation(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (rank(invert(x)) != rank(x) || rank(left(x)) != rank(x) || rank(right(x)) != rank(x))
    return cx("Rank Preservation: unary ops", {x}, nullptr);
  auto [a, b] = g.composable_pair(g.bounds().max_depth);
  auto c = compose(a, b);
  if (c && (rank(a) != rank(b) || rank(*c) != rank(a)))
    return cx("Rank Preservation: composition", {a, b}, nullptr);
  return ok();
}

inline Check tilde_a(Gen& g) {
  // reflexive / symmetric / transitive with explicitly constructed witnesses
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (!tilde_witness(x, invert(x), x)) return cx("~.A: reflexivity witness fails", {x}, nullptr);
  auto [a, b] = g.composable_pair(g.bounds().max_depth);
  auto ab = compose(a, b);
  if (!ab) return ok();
  // a ~ a∘b with witness a⁻¹; symmetry via the inverted bracket
  ValuePtr w = invert(a);
  if (!tilde_witness(a, w, *ab)) return cx("~.A: witness construction", {a, *ab}, nullptr);
  auto bracket = compose(a, w);
  auto full = bracket ? compose(*bracket, *ab) : std::nullopt;
  if (!full) return cx("~.A: bracket", {a, *ab}, nullptr);
  if (!tilde_witness(*ab, invert(*full), a))
    return cx("~.A: symmetry witness fails", {a, *ab}, nullptr);
  // transitivity: a ~ a∘b ~ Right(a∘b); compose the two witnesses around the middle
  ValuePtr w2 = right(*ab);  // witness for a∘b ~ Right(a∘b)
  if (!tilde_witness(*ab, w2, right(*ab))) return cx("~.A: second witness", {*ab}, nullptr);
  auto mid = compose(w, *ab);
  auto w3 = mid ? compose(*mid, w2) : std::nullopt;
  if (!w3 || !tilde_witness(a, *w3, right(*ab)))
    return cx("~.A: transitivity witness fails", {a, *ab}, nullptr);
  return ok();
}

inline Check tilde_b(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (!tilde_witness(x, right(x), invert(x))) return cx("~.B: x ~ x⁻¹", {x}, nullptr);
  if (!tilde_witness(x, invert(x), left(x))) return cx("~.B: x ~ Left(x)", {x}, nullptr);
  if (!tilde_witness(x, right(x), right(x))) return cx("~.B: x ~ Right(x)", {x}, nullptr);
  auto [a, b] = g.composable_pair(g.bounds().max_depth);
  if (compose(a, b)) {
    if (!tilde_witness(a, left(b), b)) return cx("~.B: x ~ y for composables", {a, b}, nullptr);
    if (!tilde_witness(a, invert(a), *compose(a, b)))
      return cx("~.B: x ~ x∘y", {a, b}, nullptr);
  }
  return ok();
}

// --- abstraction laws -----------------------------------------------------------

inline Check at_point_defined(Gen& g) {
  ValuePtr x = g.weak(g.bounds().max_depth);
  if (!abstract(x, Template::point())) return cx("At-Point-Defined violated", {x}, nullptr);
  return ok();
}

inline Check abs_expansion(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  for (auto& t : g.template_family(x)) {
    auto a = abstract(x, t);
    if (!a) continue;
    if (!abstract(*a, t)) return cx("Abs-Expansion violated at " + print_template(t), {x}, nullptr);
  }
  return ok();
}

inline Check abs_compression(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  auto fam = g.template_family(x);
  for (auto& t1 : fam) {
    auto a = abstract(x, t1);
    if (!a) continue;
    for (auto& t2 : fam) {
      auto b = abstract(*a, t2);
      if (!b) continue;
      auto direct = abstract(x, t2);
      if (!direct || !Value::equal(*b, *direct))
        return cx("Abs-Compression violated at " + print_template(t1) + " then " +
                      print_template(t2),
                  {x}, nullptr);
    }
  }
  return ok();
}

inline Check abs_alternation(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  auto fam = g.template_family(x);
  for (auto& t1 : fam)
    for (auto& t2 : fam) {
      auto a1 = abstract(x, t1);
      auto a2 = abstract(x, t2);
      if (!a1 || !a2) continue;
      if (!abstract(*a1, t2) || !abstract(*a2, t1)) continue;
      if (!Value::equal(*a1, *a2))
        return cx("Abs-Alternation violated at " + print_template(t1) + " / " +
                      print_template(t2),
                  {x}, nullptr);
    }
  return ok();
}

inline Check abs_rank_preservation(Gen& g) {
  auto [x, t] = g.abstractable(g.bounds().max_depth);
  auto a = abstract(x, t);
  if (a && rank(*a) > rank(x)) return cx("Abs-Rank-Preservation violated", {x, *a}, nullptr);
  return ok();
}

inline Check prec_a(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  if (!precedes(x, x)) return cx("⪯.A: not reflexive", {x}, nullptr);
  auto t1 = g.abstract_template(1);
  auto y0 = abstract(x, t1);
  ValuePtr y = y0 ? *y0 : x;
  auto t2 = g.abstract_template(1);
  auto z0 = abstract(y, t2);
  ValuePtr z = z0 ? *z0 : y;
  if (precedes(x, y) && precedes(y, z) && !precedes(x, z))
    return cx("⪯.A: not transitive", {x, y, z}, nullptr);
  return ok();
}

inline Check prec_b(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  for (auto& t : g.template_family(x)) {
    auto a = abstract(x, t);
    if (!a) continue;
    if (!precedes(x, *a))
      return cx("⪯.B violated at " + print_template(t), {x, *a}, nullptr);
  }
  return ok();
}

// connected pair with a verified witness
inline std::optional<std::pair<ValuePtr, ValuePtr>> connected_pair(Gen& g) {
  auto [a, b] = g.composable_pair(g.bounds().max_depth);
  auto ab = compose(a, b);
  if (!ab) return std::nullopt;
  switch (g.pick(3)) {
    case 0: return std::make_pair(a, *ab);      // witness a⁻¹
    case 1: return std::make_pair(a, invert(a));  // witness Right(a)
    default: return std::make_pair(a, left(a));   // witness a⁻¹
  }
}

inline Check tilde_c(Gen& g) {
  auto p = connected_pair(g);
  if (!p) return ok();
  auto [x, y] = *p;
  for (auto& t : g.template_family(x))
    if (abstract(x, t).has_value() != abstract(y, t).has_value())
      return cx("~.C violated at " + print_template(t), {x, y}, nullptr);
  return ok();
}

inline Check tilde_d(Gen& g) {
  auto p = connected_pair(g);
  if (!p) return ok();
  auto [x, y] = *p;
  for (auto& t : g.template_family(x)) {
    auto ax = abstract(x, t);
    auto ay = abstract(y, t);
    if (!ax || !ay) continue;
    bool fx = Value::equal(*ax, x), fy = Value::equal(*ay, y);
    if (fx != fy) return cx("~.D violated at " + print_template(t), {x, y}, nullptr);
  }
  return ok();
}

inline Check tilde_e(Gen& g) {
  auto p = connected_pair(g);
  if (!p) return ok();
  auto [x, y] = *p;
  auto tx = minimal_template(x);
  auto ty = minimal_template(y);
  if (tx.has_value() != ty.has_value())
    return cx("~.E: one side has no minimal template", {x, y}, nullptr);
  if (tx && !template_equal(*tx, *ty)) return cx("~.E: minimal templates differ", {x, y}, nullptr);
  return ok();
}

inline Check min_template_a(Gen& g) {
  ValuePtr s = g.strong(g.bounds().max_depth);
  if (!s->is_type()) s = g.point_type();
  auto a = interface_template(s);
  if (!a) return ok();
  auto img = abstract(s, Template::type_of(*a));
  if (!img || !precedes(*img, s))
    return cx("Min-Template.A: TypeOf(interface) is not minimal", {s}, nullptr);
  // converse on a sampled abstract template: minimal ⇒ interface
  TemplatePtr b = g.abstract_template(1);
  auto ib = abstract(s, Template::type_of(b));
  if (ib && precedes(*ib, s)) {
    for (auto& m : s->members()) {
      auto i = abstract(m, b);
      if (!i || !s->has_member(*i))
        return cx("Min-Template.A: minimal TypeOf body is not an interface", {s}, nullptr);
    }
  }
  return ok();
}

inline Check min_template_b(Gen& g) {
  ValuePtr f = g.abstract_value(Template::arrow(g.abstract_template(1)));
  auto a = range_template(f);
  if (!a) return cx("Min-Template.B: generated function lacks a range template", {f}, nullptr);
  auto img = abstract(f, Template::arrow(*a));
  if (!img || !precedes(*img, f))
    return cx("Min-Template.B: Point→range is not minimal", {f}, nullptr);
  return ok();
}

inline Check min_template_c(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  auto t = minimal_template(x);
  if (!t) return cx("Min-Template.C: no minimal template", {x}, nullptr);
  auto img = abstract(x, *t);
  if (!img || !precedes(*img, x))
    return cx("Min-Template.C: constructed template is not minimal", {x}, nullptr);
  return ok();
}

inline Check morphoid_closure(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  if (!is_strong(x)) return cx("generator produced a non-strong value", {x}, nullptr);
  if (!is_strong(left(x)) || !is_strong(right(x)) || !is_strong(invert(x)))
    return cx("Morphoid-Closure: boundary not strong", {x}, nullptr);
  auto t = minimal_template(x);
  if (t) {
    auto img = abstract(x, *t);
    if (img && !is_strong(*img)) return cx("Morphoid-Closure: abstraction not strong", {x}, nullptr);
  }
  auto [a, b] = g.composable_pair(g.bounds().max_depth - 1);
  if (is_strong(a) && is_strong(b)) {
    auto c = compose(a, b);
    if (c && !is_strong(*c)) return cx("Morphoid-Closure: composite not strong", {a, b}, nullptr);
  }
  return ok();
}

inline Check abs_distributes_in(Gen& g) {
  auto [x, y] = g.composable_pair(g.bounds().max_depth);
  auto c = compose(x, y);
  if (!c) return ok();
  for (auto& t : g.template_family(*c)) {
    auto a = abstract(*c, t);
    if (!a) continue;
    auto ax = abstract(x, t);
    auto ay = abstract(y, t);
    if (!ax || !ay) return cx("Abs-Distributes-In: components undefined", {x, y}, nullptr);
    auto comp = compose(*ax, *ay);
    if (!comp || !Value::equal(*a, *comp))
      return cx("Abs-Distributes-In violated at " + print_template(t), {x, y}, nullptr);
  }
  return ok();
}

inline Check abs_distributes_out(Gen& g) {
  ValuePtr x = g.strong(g.bounds().max_depth);
  ValuePtr y = g.strong(g.bounds().max_depth);
  TemplatePtr a = g.abstract_template(1), b = g.abstract_template(1);
  auto xa = abstract(x, a);
  auto ya = abstract(y, a);
  if (!xa || !ya) return ok();
  auto xab = abstract(*xa, b);
  auto yab = abstract(*ya, b);
  if (!xab || !yab) return ok();
  auto lhs = compose(*xab, *yab);
  if (!lhs) return ok();
  auto inner = compose(*xa, *ya);
  if (!inner) return cx("Abs-Distributes-Out: inner composite undefined", {x, y}, nullptr);
  auto rhs = abstract(*inner, b);
  if (!rhs || !Value::equal(*lhs, *rhs))
    return cx("Abs-Distributes-Out violated at " + print_template(a) + " then " +
                  print_template(b),
              {x, y}, nullptr);
  return ok();
}

// --- =_σ and the derived constructions -------------------------------------------

inline ValuePtr strong_type(Gen& g) {
  for (int i = 0; i < 4; i++) {
    ValuePtr s = g.strong(g.bounds().max_depth);
    if (s->is_type() && is_strong(s)) return s;
  }
  return g.point_type();
}

inline Check eq_a(Gen& g) {
  ValuePtr s = strong_type(g);
  const auto& ms = s->members();
  for (auto& x : ms)
    if (!eq_in(s, x, x)) return cx("=.A: not reflexive", {s, x}, nullptr);
  for (auto& x : ms)
    for (auto& y : ms)
      if (eq_in(s, x, y) != eq_in(s, y, x)) return cx("=.A: not symmetric", {s, x, y}, nullptr);
  for (auto& x : ms)
    for (auto& y : ms)
      for (auto& z : ms)
        if (eq_in(s, x, y) && eq_in(s, y, z) && !eq_in(s, x, z))
          return cx("=.A: not transitive", {s, x, y, z}, nullptr);
  return ok();
}

inline Check eq_b(Gen& g) {
  ValuePtr s = strong_type(g);
  for (auto& x : s->members())
    for (auto& y : s->members())
      if (equiv(s, x, y) && !eq_in(s, x, y)) return cx("=.B violated", {s, x, y}, nullptr);
  return ok();
}

inline Check eq_c(Gen& g) {
  ValuePtr s = strong_type(g);
  ValuePtr sp = *abstract(s, Template::type_of(Template::point()));
  for (auto& x : s->members())
    for (auto& y : s->members()) {
      bool lhs = eq_in(s, x, y);
      bool rhs = eq_in(sp, at_point(x), at_point(y));
      if (lhs != rhs) return cx("=.C violated", {s, x, y}, nullptr);
    }
  return ok();
}

inline Check eq_d(Gen& g) {
  ValuePtr s = strong_type(g);
  for (auto& x : s->members())
    if (!eq_in(s, x, at_type(x, s))) return cx("=.D violated", {s, x}, nullptr);
  return ok();
}

inline Check eq_v1(Gen& g) {
  auto [s, t] = g.composable_pair(2);
  if (!s->is_type() || !t->is_type() || !is_strong(s) || !is_strong(t)) return ok();
  auto st = compose(s, t);
  if (!st) return ok();
  for (auto& x1 : s->members())
    for (auto& y1 : t->members()) {
      auto c1 = compose(x1, y1);
      if (!c1) continue;
      for (auto& x2 : s->members())
        for (auto& y2 : t->members()) {
          auto c2 = compose(x2, y2);
          if (!c2) continue;
          bool e0 = eq_in(*st, *c1, *c2);
          bool e1 = eq_in(s, x1, x2);
          bool e2 = eq_in(t, y1, y2);
          if (e0 != e1 || e1 != e2) return cx("=.V1 violated", {s, t, x1, y1, x2, y2}, nullptr);
        }
    }
  return ok();
}

inline Check eq_v2(Gen& g) {
  ValuePtr s = strong_type(g);
  auto a = interface_template(s);
  if (!a) return ok();
  ValuePtr stilde = *abstract(s, Template::type_of(*a));
  for (auto& x1 : s->members())
    for (auto& x2 : s->members()) {
      ValuePtr t1 = *abstract(x1, *a), t2 = *abstract(x2, *a);
      if (eq_in(s, x1, x2) != eq_in(stilde, t1, t2))
        return cx("=.V2 violated", {s, x1, x2}, nullptr);
    }
  return ok();
}

inline Check prop_type_i(Gen& g) {
  (void)g;
  static std::optional<std::string> cached = [] {
    ModelConfig cfg;
    cfg.alphabet = {"1", "2"};
    cfg.max_card = 2;
    Evaluator ev(cfg);
    for (int lvl = 0; lvl <= 1; lvl++) {
      auto u = ev.universe(lvl);
      if (!u.ok()) return std::optional<std::string>("universe unavailable: " + u.why);
      if (!check_strong(u.v).ok())
        return std::optional<std::string>("type_" + std::to_string(lvl) +
                                          " is not a strong morphoid type");
      auto a = interface_template(u.v);
      if (!a || !template_equal(*a, Template::type_of(Template::point())))
        return std::optional<std::string>("type_" + std::to_string(lvl) +
                                          " interface is not TypeOf(Point)");
    }
    return std::optional<std::string>();
  }();
  return cached;
}

inline Check arrow_a(Gen& g) {
  ValuePtr s = g.point_type(), t = g.point_type();
  ValuePtr arr = arrow_type(s, t);
  if (!is_strong(arr)) return cx("→.A: arrow type not strong", {s, t}, nullptr);
  auto at = interface_template(t);
  TemplatePtr want = Template::arrow(*at);
  for (auto& f : arr->members()) {
    auto img = abstract(f, want);
    if (!img || !arr->has_member(*img))
      return cx("→.A: Point→A_τ is not an interface", {s, t, f}, nullptr);
  }
  return ok();
}

inline Check arrow_v1(Gen& g) {
  auto [s1, s2] = g.composable_pair(2);
  auto [t1, t2] = g.composable_pair(2);
  if (!s1->is_type() || !t1->is_type()) return ok();
  if (!s1->members().size() || !compose(s1, s2) || !compose(t1, t2)) return ok();
  if (!is_strong(s1) || !is_strong(s2) || !is_strong(t1) || !is_strong(t2)) return ok();
  ValuePtr a1 = arrow_type(s1, t1), a2 = arrow_type(s2, t2);
  auto lhs = compose(a1, a2);
  auto sc = compose(s1, s2);
  auto tc = compose(t1, t2);
  ValuePtr rhs = arrow_type(*sc, *tc);
  if (!lhs) return cx("→.V1: arrow spaces do not compose", {s1, s2, t1, t2}, nullptr);
  if (!Value::equal(*lhs, rhs)) return cx("→.V1 violated", {s1, s2, t1, t2}, nullptr);
  return ok();
}

inline Check arrow_v2(Gen& g) {
  ValuePtr s = g.point_type(), t = g.point_type();
  auto as = interface_template(s), at = interface_template(t);
  if (!as || !at) return ok();
  ValuePtr st = *abstract(s, Template::type_of(*as));
  ValuePtr tt = *abstract(t, Template::type_of(*at));
  ValuePtr a = arrow_type(s, t), b = arrow_type(st, tt);
  if (!precedes(a, b)) return cx("→.V2 violated", {s, t}, nullptr);
  return ok();
}

inline Check app_v1(Gen& g) {
  auto [f, h] = g.composable_pair(g.bounds().max_depth);
  if (!f->is_fun() || !h->is_fun()) return ok();
  auto c = compose(f, h);
  if (!c) return ok();
  for (auto& e1 : f->graph())
    for (auto& e2 : h->graph()) {
      auto xy = compose(e1.first, e2.first);
      if (!xy) continue;
      auto fx = fun_apply(f, e1.first);
      auto gy = fun_apply(h, e2.first);
      if (!fx || !gy) continue;
      auto lhs = fun_apply(*c, *xy);
      auto rhs = compose(*fx, *gy);
      if (!lhs || !rhs || !Value::equal(*lhs, *rhs))
        return cx("App.V1 violated", {f, h}, nullptr);
    }
  return ok();
}

inline Check app_v2(Gen& g) {
  ValuePtr f = g.abstract_value(Template::arrow(g.abstract_template(1)));
  auto rt = range_template(f);
  if (!rt) return ok();
  ValuePtr ft = *abstract(f, Template::arrow(*rt));
  for (auto& e : f->graph()) {
    auto fx = fun_apply(f, e.first);
    auto gx = fun_apply(ft, e.first);
    if (!fx || !gx) continue;
    if (!precedes(*fx, *gx)) return cx("App.V2 violated", {f, e.first}, nullptr);
  }
  return ok();
}

// a class bijection f in arrow(s, t); requires equal class counts
inline std::optional<ValuePtr> make_bijection(Gen& g, const ValuePtr& s, const ValuePtr& t) {
  auto cs = detail::equiv_classes(s);
  auto ct = detail::equiv_classes(t);
  if (cs.size() != ct.size()) return std::nullopt;
  auto at = interface_template(t);
  if (!at) return std::nullopt;
  std::vector<size_t> perm(ct.size());
  for (size_t i = 0; i < perm.size(); i++) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), g.rng());
  ValuePtr dom = *abstract(s, Template::type_of(Template::point()));
  auto dcs = detail::equiv_classes(dom);
  if (dcs.size() != cs.size()) return std::nullopt;
  std::vector<Value::Entry> graph;
  for (size_t k = 0; k < dcs.size(); k++) {
    ValuePtr target = *abstract(ct[perm[k]].front(), *at);
    for (auto& p : dcs[k]) graph.push_back({p, target});
  }
  return Value::fun(std::move(graph));
}

inline Check updown_a(Gen& g) {
  ValuePtr s = g.point_type(), t = g.point_type();
  auto f = make_bijection(g, s, t);
  if (!f) return ok();
  ValuePtr ud;
  try {
    ud = updown(s, t, *f);
  } catch (const std::invalid_argument& e) {
    return cx(std::string("↕.A: updown rejected a bijection: ") + e.what(), {s, t, *f}, nullptr);
  }
  for (auto& m : ud->members())
    if (!m->is_point()) return cx("↕.A: not a point type", {s, t, ud}, nullptr);
  if (!check_weak(ud).ok()) return cx("↕.A: not weak", {s, t, ud}, nullptr);
  if (!is_strong(ud)) return cx("↕.A: not strong", {s, t, ud}, nullptr);
  return ok();
}

inline Check updown_b(Gen& g) {
  ValuePtr s = g.point_type(), t = g.point_type();
  auto f = make_bijection(g, s, t);
  if (!f) return ok();
  ValuePtr ud;
  try {
    ud = updown(s, t, *f);
  } catch (const std::invalid_argument&) {
    return ok();
  }
  ValuePtr sp = *abstract(s, Template::type_of(Template::point()));
  ValuePtr tp = *abstract(t, Template::type_of(Template::point()));
  auto a = compose(sp, invert(ud));
  auto b = a ? compose(*a, tp) : std::nullopt;
  if (!b) return cx("↕.B: (σ@TP)∘↕⁻¹∘(τ@TP) undefined", {s, t, ud}, nullptr);
  return ok();
}

inline Check prop_iso(Gen& g) {
  ValuePtr s = strong_type(g);
  if (s->members().empty()) return ok();
  ValuePtr x = s->members()[g.pick((int)s->members().size())];
  ValuePtr y = s->members()[g.pick((int)s->members().size())];
  ValuePtr iso = iso_type(s, x, y);
  if (!is_strong(iso)) return cx("Iso: iso type not strong", {s, x, y}, nullptr);
  auto a = interface_template(s);
  if (a)
    for (auto& z : iso->members()) {
      auto img = abstract(z, *a);
      if (!img || !iso->has_member(*img))
        return cx("Iso: σ's interface is not iso's interface", {s, x, y}, nullptr);
    }
  // nonempty iff eq for members
  if (s->has_member(x) && s->has_member(y)) {
    bool nonempty = !iso->members().empty();
    if (nonempty != eq_in(s, x, y))
      return cx("Iso: nonempty ⇔ =_σ fails", {s, x, y}, nullptr);
  }
  return ok();
}

}  // namespace props

inline const std::vector<Property>& property_registry() {
  static const std::vector<Property> reg = [] {
    std::vector<Property> r;
    auto add = [&](std::string name, std::string fig, std::string quote,
                   std::function<std::optional<std::string>(Gen&)> f) {
      r.push_back({std::move(name), std::move(fig), std::move(quote), std::move(f)});
    };
    add("G1", "The Groupoid Properties of Morphoids", "Left(x), Right(x) and x^-1", props::g1);
    add("G2", "The Groupoid Properties of Morphoids", "defined if and only if", props::g2);
    add("G3", "The Groupoid Properties of Morphoids", "Left(x^-1) = Right(x)", props::g3);
    add("G4", "The Groupoid Properties of Morphoids", "Left(x . y) = Left(x)", props::g4);
    add("G5", "The Groupoid Properties of Morphoids", "(x . y) . z = x . (y . z)", props::g5);
    add("G6", "The Groupoid Properties of Morphoids", "x^-1 . x . y = y", props::g6);
    add("G7", "The Groupoid Properties of Morphoids", "Right(x) = x^-1 . x", props::g7);
    add("G8", "The Groupoid Properties of Morphoids", "(x^-1)^-1 = x", props::g8);
    add("G9", "The Groupoid Properties of Morphoids", "(x . y)^-1 = y^-1 . x^-1", props::g9);
    add("Fun-Left-Right", "Weak Morphoid Properties", "Left(f)(Left(x)) = Left(f[x])",
        props::fun_left_right);
    add("Funs-Composable", "Weak Morphoid Properties", "f . g is defined if and only if",
        props::funs_composable);
    add("Fun-Composition", "Weak Morphoid Properties", "(f . g)[x . y] = f[x] . g[y]",
        props::fun_composition);
    add("Composables-Equivalent", "Weak Morphoid Properties", "either x . y^-1 or x^-1 . y",
        props::composables_equivalent);
    add("≃.A", "Weak Morphoid Properties", "an equivalence relation on members", props::equiv_a);
    add("≃.B", "Weak Morphoid Properties", "if and only if x1 ≃ x2", props::equiv_b);
    add("Partner", "Weak Morphoid Properties", "there exists y with x . y defined",
        props::partner);
    add("Rank Preservation", "Weak Morphoid Properties", "R(x) = R(y) = R(x . y)",
        props::rank_preservation);
    add("~.A", "Weak Morphoid Properties", "an equivalence relation on weak morphoids",
        props::tilde_a);
    add("~.B", "Weak Morphoid Properties", "x ~ y ~ (x . y)", props::tilde_b);
    add("At-Point-Defined", "Weak Morphoid Abstraction Properties", "x@Point is defined",
        props::at_point_defined);
    add("Abs-Expansion", "Weak Morphoid Abstraction Properties", "x@T@T is also defined",
        props::abs_expansion);
    add("Abs-Compression", "Weak Morphoid Abstraction Properties", "(x@T1)@T2 = x@T2",
        props::abs_compression);
    add("Abs-Alternation", "Weak Morphoid Abstraction Properties", "x@T1 = x@T2",
        props::abs_alternation);
    add("Abs-Rank-Preservation", "Weak Morphoid Abstraction Properties", "R(x@T) <= R(x)",
        props::abs_rank_preservation);
    add("⪯.A", "Weak Morphoid Abstraction Properties", "a preorder", props::prec_a);
    add("⪯.B", "Weak Morphoid Abstraction Properties", "x ⪯ x@T", props::prec_b);
    add("~.C", "Weak Morphoid Abstraction Properties", "x@T defined iff y@T defined",
        props::tilde_c);
    add("~.D", "Weak Morphoid Abstraction Properties", "x@T = x iff y@T = y", props::tilde_d);
    add("~.E", "Weak Morphoid Abstraction Properties", "the same minimal templates",
        props::tilde_e);
    add("Min-Template.A", "Morphoid Properties", "TypeOf(A) is a minimal template",
        props::min_template_a);
    add("Min-Template.B", "Morphoid Properties", "Point -> A is a minimal template",
        props::min_template_b);
    add("Min-Template.C", "Morphoid Properties", "Every morphoid has a minimal template",
        props::min_template_c);
    add("Morphoid-Closure", "Morphoid Properties", "closed under the groupoid operations",
        props::morphoid_closure);
    add("Abs-Distributes-In", "Morphoid Properties", "(x . y)@T = (x@T) . (y@T)",
        props::abs_distributes_in);
    add("Abs-Distributes-Out", "Morphoid Properties", "((x@A) . (y@A))@B",
        props::abs_distributes_out);
    add("=.A", "Morphoid Properties", "an equivalence relation on elements", props::eq_a);
    add("=.B", "Morphoid Properties", "x ≃ y implies x = y", props::eq_b);
    add("=.C", "Morphoid Properties", "x@Point =_{σ@TypeOf(Point)} y@Point", props::eq_c);
    add("=.D", "Morphoid Properties", "x =_σ x@σ", props::eq_d);
    add("=.V1", "Morphoid Properties", "(x1 . y1) =_{σ.τ} (x2 . y2)", props::eq_v1);
    add("=.V2", "Morphoid Properties", "x1 =_σ x2 iff x̃1 =_σ̃ x̃2", props::eq_v2);
    add("type_i", "Morphoid Properties", "interface template TypeOf(Point)", props::prop_type_i);
    add("→.A", "Additional Properties", "Point -> A is an interface template", props::arrow_a);
    add("→.V1", "Additional Properties", "(σ1→τ1) . (σ2→τ2)", props::arrow_v1);
    add("→.V2", "Additional Properties", "(σ→τ) ⪯ (σ̃→τ̃)", props::arrow_v2);
    add("App.V1", "Additional Properties", "(f . g)(x . y) = f(x) . g(y)", props::app_v1);
    add("App.V2", "Additional Properties", "f(x) ⪯ f̃(x̃)", props::app_v2);
    add("↕.A", "Additional Properties", "a morphoid point type", props::updown_a);
    add("↕.B", "Additional Properties", "iso(type_i, σ, τ)", props::updown_b);
    add("Iso", "Additional Properties", "is a morphoid type and any interface", props::prop_iso);
    return r;
  }();
  return reg;
}

// Runs the selected properties; each iteration reseeds deterministically from
// (seed, property name, iteration), so results are schedule-independent.
inline PropertyReport run_properties(const std::vector<std::string>& selection, uint64_t seed,
                                     int iterations, GenBounds bounds = {}) {
  PropertyReport report;
  auto selected = [&](const std::string& name) {
    if (selection.empty()) return true;
    for (auto& s : selection)
      if (s == name) return true;
    return false;
  };
  for (auto& prop : property_registry()) {
    if (!selected(prop.name)) continue;
    PropertyResult res;
    res.name = prop.name;
    std::hash<std::string> h;
    for (int i = 0; i < iterations; i++) {
      Gen g(seed * 0x9e3779b97f4a7c15ULL + h(prop.name) * 1000003ULL + (uint64_t)i, bounds);
      auto fail = prop.check(g);
      res.iterations = i + 1;
      if (fail) {
        res.passed = false;
        res.counterexample = *fail;
        break;
      }
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

}  // namespace mortt
