#pragma once

#include <optional>
#include <stdexcept>

#include "mortt/template.hpp"
#include "mortt/weak.hpp"

namespace mortt {

inline std::optional<ValuePtr> abstract(const ValuePtr& x, const TemplatePtr& t);

// SubPoint case table (fig. "Abstraction"); undefined (a fault) on points.
inline ValuePtr subpoint(const ValuePtr& x) {
  switch (x->kind()) {
    case Kind::Point:
      throw std::invalid_argument("subpoint: undefined on points");
    case Kind::Bool:
      return x;
    case Kind::Pair:
      return Value::pair(*abstract(x->first(), Template::point()),
                         *abstract(x->second(), Template::point()));
    case Kind::Type: {
      std::vector<ValuePtr> ms;
      ms.reserve(x->members().size());
      for (auto& m : x->members()) ms.push_back(*abstract(m, Template::point()));
      return Value::type(std::move(ms));
    }
    case Kind::Fun: {
      std::vector<Value::Entry> g;
      g.reserve(x->graph().size());
      for (auto& e : x->graph())
        g.push_back({e.first, *abstract(e.second, Template::point())});
      return Value::fun(std::move(g));
    }
  }
  return x;
}

inline std::optional<ValuePtr> abstract(const ValuePtr& x, const TemplatePtr& t) {
  switch (t->kind) {
    case TKind::Point: {
      if (x->is_point()) return x;
      ValuePtr sp = subpoint(x);
      return Value::point(Index::encoded(left(sp)), Index::encoded(right(sp)));
    }
    case TKind::Bool:
      if (x->is_bool()) return x;
      return std::nullopt;
    case TKind::Pair: {
      if (!x->is_pair()) return std::nullopt;
      auto a = abstract(x->first(), t->t1);
      auto b = abstract(x->second(), t->t2);
      if (!a || !b) return std::nullopt;
      return Value::pair(*a, *b);
    }
    case TKind::TypeOf: {
      if (!x->is_type()) return std::nullopt;
      std::vector<ValuePtr> ms;
      ms.reserve(x->members().size());
      for (auto& m : x->members()) {
        auto a = abstract(m, t->body);
        if (!a) return std::nullopt;
        ms.push_back(*a);
      }
      return Value::type(std::move(ms));
    }
    case TKind::Arrow: {
      if (!x->is_fun()) return std::nullopt;
      std::vector<Value::Entry> g;
      g.reserve(x->graph().size());
      for (auto& e : x->graph()) {
        auto a = abstract(e.second, t->body);
        if (!a) return std::nullopt;
        g.push_back({e.first, *a});
      }
      return Value::fun(std::move(g));
    }
  }
  return std::nullopt;
}

inline ValuePtr at_point(const ValuePtr& x) { return *abstract(x, Template::point()); }

// -- interface / range templates ----------------------------------------------

namespace detail {

// Abstract shapes with a bottom element so empty functions join with any
// range shape. Bottom resolves to Point (the least template) at the end.
struct Shape;
using ShapePtr = std::shared_ptr<const Shape>;
struct Shape {
  enum K : uint8_t { Bot, Point, Bool, TypeOfPoint, Arrow, Pair } k;
  ShapePtr a, b;
  static ShapePtr mk(K k, ShapePtr a = nullptr, ShapePtr b = nullptr) {
    auto s = std::make_shared<Shape>();
    s->k = k;
    s->a = std::move(a);
    s->b = std::move(b);
    return s;
  }
};

inline std::optional<ShapePtr> shape_join(const ShapePtr& a, const ShapePtr& b) {
  if (a->k == Shape::Bot) return b;
  if (b->k == Shape::Bot) return a;
  if (a->k != b->k) return std::nullopt;
  switch (a->k) {
    case Shape::Point:
    case Shape::Bool:
    case Shape::TypeOfPoint:
      return a;
    case Shape::Arrow: {
      auto j = shape_join(a->a, b->a);
      if (!j) return std::nullopt;
      return Shape::mk(Shape::Arrow, *j);
    }
    case Shape::Pair: {
      auto j1 = shape_join(a->a, b->a);
      auto j2 = shape_join(a->b, b->b);
      if (!j1 || !j2) return std::nullopt;
      return Shape::mk(Shape::Pair, *j1, *j2);
    }
    default:
      return std::nullopt;
  }
}

inline std::optional<ShapePtr> abstract_shape(const ValuePtr& v) {
  switch (v->kind()) {
    case Kind::Point: return Shape::mk(Shape::Point);
    case Kind::Bool: return Shape::mk(Shape::Bool);
    case Kind::Type: return Shape::mk(Shape::TypeOfPoint);
    case Kind::Pair: {
      auto a = abstract_shape(v->first());
      auto b = abstract_shape(v->second());
      if (!a || !b) return std::nullopt;
      return Shape::mk(Shape::Pair, *a, *b);
    }
    case Kind::Fun: {
      ShapePtr j = Shape::mk(Shape::Bot);
      for (auto& e : v->graph()) {
        auto s = abstract_shape(e.second);
        if (!s) return std::nullopt;
        auto joined = shape_join(j, *s);
        if (!joined) return std::nullopt;
        j = *joined;
      }
      return Shape::mk(Shape::Arrow, j);
    }
  }
  return std::nullopt;
}

inline TemplatePtr shape_to_template(const ShapePtr& s) {
  switch (s->k) {
    case Shape::Bot:
    case Shape::Point:
      return Template::point();
    case Shape::Bool:
      return Template::boolean();
    case Shape::TypeOfPoint:
      return Template::type_of(Template::point());
    case Shape::Arrow:
      return Template::arrow(shape_to_template(s->a));
    case Shape::Pair:
      return Template::pair(shape_to_template(s->a), shape_to_template(s->b));
  }
  return Template::point();
}

}  // namespace detail

// Abstract template A with x@A defined and x@A ∈ σ for every member
// (condition (T2)). Search: shape-join candidate, then a Point fallback for
// mixed-shape types; closure verified by direct membership.
inline std::optional<TemplatePtr> interface_template(const ValuePtr& sigma) {
  if (!sigma->is_type()) return std::nullopt;
  if (sigma->members().empty()) return Template::point();  // canonical least
  detail::ShapePtr join = detail::Shape::mk(detail::Shape::Bot);
  bool joinable = true;
  for (auto& m : sigma->members()) {
    auto s = detail::abstract_shape(m);
    if (!s) { joinable = false; break; }
    auto j = detail::shape_join(join, *s);
    if (!j) { joinable = false; break; }
    join = *j;
  }
  std::vector<TemplatePtr> candidates;
  if (joinable) candidates.push_back(detail::shape_to_template(join));
  if (candidates.empty() || !template_equal(candidates.front(), Template::point()))
    candidates.push_back(Template::point());
  for (auto& a : candidates) {
    bool ok = true;
    for (auto& m : sigma->members()) {
      auto img = abstract(m, a);
      if (!img || !sigma->has_member(*img)) { ok = false; break; }
    }
    if (ok) return a;
  }
  return std::nullopt;
}

// Abstract template A fixing every range value: f[x]@A = f[x] (condition (F2)).
inline std::optional<TemplatePtr> range_template(const ValuePtr& f) {
  if (!f->is_fun()) return std::nullopt;
  if (f->graph().empty()) return Template::point();  // canonical least
  detail::ShapePtr join = detail::Shape::mk(detail::Shape::Bot);
  for (auto& e : f->graph()) {
    auto s = detail::abstract_shape(e.second);
    if (!s) return std::nullopt;
    auto j = detail::shape_join(join, *s);
    if (!j) return std::nullopt;
    join = *j;
  }
  TemplatePtr a = detail::shape_to_template(join);
  for (auto& e : f->graph()) {
    auto img = abstract(e.second, a);
    if (!img || !Value::equal(*img, e.second)) return std::nullopt;
  }
  return a;
}

// Minimal template: Point/Bool for atoms, Pair of component minimals,
// TypeOf(interface) for types, Point->range for functions ((Min-Template.A/B)).
inline std::optional<TemplatePtr> minimal_template(const ValuePtr& x) {
  switch (x->kind()) {
    case Kind::Point: return Template::point();
    case Kind::Bool: return Template::boolean();
    case Kind::Pair: {
      auto a = minimal_template(x->first());
      auto b = minimal_template(x->second());
      if (!a || !b) return std::nullopt;
      return Template::pair(*a, *b);
    }
    case Kind::Type: {
      auto a = interface_template(x);
      if (!a) return std::nullopt;
      return Template::type_of(*a);
    }
    case Kind::Fun: {
      auto a = range_template(x);
      if (!a) return std::nullopt;
      return Template::arrow(*a);
    }
  }
  return std::nullopt;
}

// x ⪯ y, decided through a minimal template of y (sound and complete given
// minimality, by (Abs-Compression)). Faults when y has no minimal template.
inline bool precedes(const ValuePtr& x, const ValuePtr& y) {
  auto t = minimal_template(y);
  if (!t) throw std::invalid_argument("precedes: no minimal template (not a strong morphoid)");
  auto xi = abstract(x, *t);
  if (!xi) return false;
  auto yi = abstract(y, *t);
  return yi && Value::equal(*xi, *yi);
}

// -- strong morphoids ----------------------------------------------------------

struct StrongReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {
inline void check_strong_into(const ValuePtr& x, const std::string& path,
                              std::vector<Violation>& out) {
  switch (x->kind()) {
    case Kind::Point:
    case Kind::Bool:
      return;
    case Kind::Pair:
      check_strong_into(x->first(), path + "/first", out);
      check_strong_into(x->second(), path + "/second", out);
      return;
    case Kind::Type: {
      for (size_t i = 0; i < x->members().size(); i++)
        check_strong_into(x->members()[i], path + "/member[" + std::to_string(i) + "]", out);
      if (!interface_template(x)) out.push_back({path, ProblemKind::T2_NoInterface});
      return;
    }
    case Kind::Fun: {
      for (size_t i = 0; i < x->graph().size(); i++)
        check_strong_into(x->graph()[i].second,
                          path + "/range[" + print_value(x->graph()[i].first) + "]", out);
      if (!range_template(x)) out.push_back({path, ProblemKind::F2_NoRange});
      return;
    }
  }
}
}  // namespace detail

inline StrongReport check_strong(const ValuePtr& x) {
  StrongReport r;
  auto weak = check_weak(x);
  r.violations = std::move(weak.violations);
  detail::check_strong_into(x, "", r.violations);
  return r;
}

inline bool is_strong(const ValuePtr& x) { return check_strong(x).ok(); }

// x@σ for an interface template of σ; independent of the choice by
// (Abs-Alternation), asserted when several candidates exist.
inline ValuePtr at_type(const ValuePtr& x, const ValuePtr& sigma) {
  auto a = interface_template(sigma);
  if (!a) throw std::invalid_argument("at_type: sigma has no interface template");
  auto img = abstract(x, *a);
  if (!img) throw std::invalid_argument("at_type: abstraction undefined");
  return *img;
}

// x =_σ y, the isomorphism relation: x@σ ≃_σ y@σ. Faults when x,y ∉ σ or σ
// is not strong.
inline bool eq_in(const ValuePtr& sigma, const ValuePtr& x, const ValuePtr& y) {
  if (!sigma->is_type()) throw std::invalid_argument("eq_in: sigma is not a type");
  if (!sigma->has_member(x) || !sigma->has_member(y))
    throw std::invalid_argument("eq_in: argument is not a member of sigma");
  return equiv(sigma, at_type(x, sigma), at_type(y, sigma));
}

// iso(σ,x,y): subtype of σ of members z with (x@σ)∘z⁻¹∘(y@σ) defined.
// Membership of x,y is not required, only that the abstractions exist.
inline ValuePtr iso_type(const ValuePtr& sigma, const ValuePtr& x, const ValuePtr& y) {
  ValuePtr xa = at_type(x, sigma);  // faults when undefined, per precondition
  ValuePtr ya = at_type(y, sigma);
  std::vector<ValuePtr> ms;
  for (auto& z : sigma->members())
    if (compose3_inv(xa, z, ya)) ms.push_back(z);
  return Value::type(std::move(ms));
}

// f(x) = f[x@Point]; absent when x@Point is outside the domain.
inline std::optional<ValuePtr> fun_apply(const ValuePtr& f, const ValuePtr& x) {
  if (!f->is_fun()) return std::nullopt;
  return f->lookup(at_point(x));
}

// The finite function space σ→τ: all graphs over σ@TypeOf(Point) that are
// ≃-class-constant with values drawn from τ's abstract image.
inline ValuePtr arrow_type(const ValuePtr& sigma, const ValuePtr& tau) {
  if (!sigma->is_type() || !tau->is_type())
    throw std::invalid_argument("arrow_type: arguments must be types");
  auto asig = interface_template(sigma);
  auto atau = interface_template(tau);
  if (!asig || !atau) throw std::invalid_argument("arrow_type: missing interface template");
  ValuePtr dom = *abstract(sigma, Template::type_of(Template::point()));
  ValuePtr pool = *abstract(tau, Template::type_of(*atau));
  auto classes = detail::equiv_classes(dom);
  std::vector<ValuePtr> funs;
  if (classes.empty()) {
    funs.push_back(Value::fun({}));
    return Value::type(std::move(funs));
  }
  if (pool->members().empty()) return Value::type({});
  std::vector<size_t> pick(classes.size(), 0);
  const size_t n = pool->members().size();
  while (true) {
    std::vector<Value::Entry> g;
    for (size_t c = 0; c < classes.size(); c++)
      for (auto& p : classes[c]) g.push_back({p, pool->members()[pick[c]]});
    funs.push_back(Value::fun(std::move(g)));
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == n) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return Value::type(std::move(funs));
}

// ↕(σ,τ,f): the point type Point(π1(y@Point), π2(x@Point)) for y =_τ f(x).
// Faults unless f is a class-bijection in σ→τ.
inline ValuePtr updown(const ValuePtr& sigma, const ValuePtr& tau, const ValuePtr& f) {
  if (!f->is_fun()) throw std::invalid_argument("updown: f is not a function");
  ValuePtr dom = *abstract(sigma, Template::type_of(Template::point()));
  if (!Value::equal(f->domain(), dom))
    throw std::invalid_argument("updown: Dom(f) is not sigma@TypeOf(Point)");
  // induced class map must be injective and surjective on eq-classes
  auto sclasses = detail::equiv_classes(sigma);
  auto tclasses = detail::equiv_classes(tau);
  std::vector<bool> hit(tclasses.size(), false);
  for (auto& sc : sclasses) {
    auto img = fun_apply(f, sc.front());
    if (!img || !tau->has_member(*img))
      throw std::invalid_argument("updown: f does not map into tau");
    size_t which = tclasses.size();
    for (size_t i = 0; i < tclasses.size(); i++)
      if (eq_in(tau, *img, tclasses[i].front())) { which = i; break; }
    if (which == tclasses.size() || hit[which])
      throw std::invalid_argument("updown: f is not a bijection on classes");
    hit[which] = true;
  }
  for (bool h : hit)
    if (!h) throw std::invalid_argument("updown: f is not surjective on classes");
  std::vector<ValuePtr> pts;
  for (auto& x : sigma->members()) {
    auto fx = fun_apply(f, x);
    for (auto& y : tau->members())
      if (eq_in(tau, y, *fx)) {
        ValuePtr yp = at_point(y), xp = at_point(x);
        pts.push_back(Value::point(yp->left_index(), xp->right_index()));
      }
  }
  return Value::type(std::move(pts));
}

// The(σ): deterministic global choice — least canonical form in σ's abstract
// image; absent unless σ has exactly one =_σ-class.
inline std::optional<ValuePtr> the_choice(const ValuePtr& sigma) {
  if (!sigma->is_type() || sigma->members().empty()) return std::nullopt;
  auto a = interface_template(sigma);
  if (!a) return std::nullopt;
  for (auto& m : sigma->members())
    if (!eq_in(sigma, m, sigma->members().front())) return std::nullopt;
  ValuePtr img = *abstract(sigma, Template::type_of(*a));
  return img->members().front();  // members are sorted by canonical form
}

}  // namespace mortt
