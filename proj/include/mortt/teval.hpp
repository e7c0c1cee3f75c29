#pragma once

#include <functional>
#include <map>
#include <optional>

#include "mortt/expr.hpp"
#include "mortt/template.hpp"

namespace mortt {

// A structure template: minimal templates for the free variables of an
// expression.
using StructureTemplate = std::map<std::string, TemplatePtr>;

// Abstract interpretation computing a minimal template of the value of e
// (fig. "Template Evaluation"). Absent when no clause applies or a helper is
// applied to the wrong template shape.
inline std::optional<TemplatePtr> teval(const ExprPtr& e0, const StructureTemplate& eta) {
  ExprPtr e = expand_abbrevs(e0);
  std::function<std::optional<TemplatePtr>(const ExprPtr&, const StructureTemplate&)> go =
      [&](const ExprPtr& x, const StructureTemplate& env) -> std::optional<TemplatePtr> {
    auto mem = [](const std::optional<TemplatePtr>& t) -> std::optional<TemplatePtr> {
      if (!t || (*t)->kind != TKind::TypeOf) return std::nullopt;
      return (*t)->body;
    };
    switch (x->k) {
      case EK::Var: {
        auto it = env.find(x->var);
        if (it == env.end()) return std::nullopt;
        return it->second;
      }
      case EK::BoolType:
        return Template::type_of(Template::boolean());
      case EK::TypeConst:
        return Template::type_of(Template::type_of(Template::point()));
      case EK::ArrowType: {
        auto m = mem(go(x->kids[1], env));
        if (!m) return std::nullopt;
        return Template::type_of(Template::arrow(*m));
      }
      case EK::SubType:
        return go(x->kids[0], env);
      case EK::PairType: {
        auto a = mem(go(x->kids[0], env));
        if (!a) return std::nullopt;
        StructureTemplate env2 = env;
        env2[x->var] = *a;
        auto b = mem(go(x->kids[1], env2));
        if (!b) return std::nullopt;
        return Template::type_of(Template::pair(*a, *b));
      }
      case EK::App: {
        auto f = go(x->kids[0], env);
        if (!f || (*f)->kind != TKind::Arrow) return std::nullopt;
        return (*f)->body;
      }
      case EK::MkPair: {
        auto a = go(x->kids[0], env);
        auto b = go(x->kids[1], env);
        if (!a || !b) return std::nullopt;
        return Template::pair(*a, *b);
      }
      case EK::Proj: {
        auto t = go(x->kids[0], env);
        if (!t || (*t)->kind != TKind::Pair) return std::nullopt;
        return x->num == 1 ? (*t)->t1 : (*t)->t2;
      }
      case EK::UpDown:
        return Template::type_of(Template::point());
      case EK::Iso:
        return go(x->kids[0], env);
      case EK::The: {
        auto m = mem(go(x->kids[0], env));
        if (!m) return std::nullopt;
        return m;
      }
      case EK::EqIn:
      case EK::AbsEq:
      case EK::InnType:
      case EK::Or:
      case EK::Not:
      case EK::Forall:
        return Template::boolean();
      default:
        // natural maps and anything else have no clause
        return std::nullopt;
    }
  };
  return go(e, eta);
}

}  // namespace mortt
