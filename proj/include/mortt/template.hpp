#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "mortt/sexpr.hpp"

namespace mortt {

struct Template;
using TemplatePtr = std::shared_ptr<const Template>;

enum class TKind : uint8_t { Point, Bool, TypeOf, Arrow, Pair };

// Abstraction templates, grammar of fig. "Abstraction":
//   T ::= A | TypeOf(A) | Pair(T1, T2)
//   A ::= Point | TypeOf(Point) | Bool | Point -> A | Pair(A1, A2)
// TypeOf and Arrow bodies are restricted to abstract templates by
// construction. Templates have a total order (kind rank, then children) used
// for canonical choices; Point is least.
struct Template {
  TKind kind;
  TemplatePtr body;            // TypeOf / Arrow
  TemplatePtr t1, t2;          // Pair
  std::string key;             // canonical encoding; also the order key

  static TemplatePtr point() {
    static TemplatePtr t = mk(TKind::Point, nullptr, nullptr, nullptr, "0");
    return t;
  }
  static TemplatePtr boolean() {
    static TemplatePtr t = mk(TKind::Bool, nullptr, nullptr, nullptr, "1");
    return t;
  }
  static TemplatePtr type_of(TemplatePtr b) {
    if (!b->is_abstract()) throw std::invalid_argument("TypeOf body must be abstract");
    std::string k = "2(" + b->key + ")";
    return mk(TKind::TypeOf, std::move(b), nullptr, nullptr, std::move(k));
  }
  static TemplatePtr arrow(TemplatePtr b) {
    if (!b->is_abstract()) throw std::invalid_argument("Arrow body must be abstract");
    std::string k = "3(" + b->key + ")";
    return mk(TKind::Arrow, std::move(b), nullptr, nullptr, std::move(k));
  }
  static TemplatePtr pair(TemplatePtr a, TemplatePtr b) {
    std::string k = "4(" + a->key + "," + b->key + ")";
    return mk(TKind::Pair, nullptr, std::move(a), std::move(b), std::move(k));
  }

  bool is_abstract() const {
    switch (kind) {
      case TKind::Point:
      case TKind::Bool:
        return true;
      case TKind::TypeOf:
        return body->kind == TKind::Point;
      case TKind::Arrow:
        return true;  // body abstract by construction
      case TKind::Pair:
        return t1->is_abstract() && t2->is_abstract();
    }
    return false;
  }

 private:
  static TemplatePtr mk(TKind k, TemplatePtr b, TemplatePtr x, TemplatePtr y, std::string key) {
    auto t = std::make_shared<Template>();
    t->kind = k;
    t->body = std::move(b);
    t->t1 = std::move(x);
    t->t2 = std::move(y);
    t->key = std::move(key);
    return t;
  }
};

inline bool template_equal(const TemplatePtr& a, const TemplatePtr& b) { return a->key == b->key; }
inline bool template_less(const TemplatePtr& a, const TemplatePtr& b) { return a->key < b->key; }

inline std::string print_template(const TemplatePtr& t) {
  switch (t->kind) {
    case TKind::Point: return "POINT";
    case TKind::Bool: return "BOOL";
    case TKind::TypeOf: return "(typeof " + print_template(t->body) + ")";
    case TKind::Arrow: return "(arrow POINT " + print_template(t->body) + ")";
    case TKind::Pair:
      return "(pair " + print_template(t->t1) + " " + print_template(t->t2) + ")";
  }
  return {};
}

inline TemplatePtr template_from_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    if (e.atom == "POINT") return Template::point();
    if (e.atom == "BOOL") return Template::boolean();
    throw ParseError("unknown template atom", e.line, e.col);
  }
  if (e.head_is("typeof") && e.size() == 2) return Template::type_of(template_from_sexpr(e[1]));
  if (e.head_is("arrow") && e.size() == 3) {
    if (!(e[1].is_atom && e[1].atom == "POINT"))
      throw ParseError("template arrow domain must be POINT", e.line, e.col);
    return Template::arrow(template_from_sexpr(e[2]));
  }
  if (e.head_is("pair") && e.size() == 3)
    return Template::pair(template_from_sexpr(e[1]), template_from_sexpr(e[2]));
  throw ParseError("unknown template form", e.line, e.col);
}

inline TemplatePtr parse_template(const std::string& text) {
  return template_from_sexpr(parse_sexpr(text));
}

}  // namespace mortt
