#pragma once

#include <optional>

#include "mortt/value.hpp"

namespace mortt {

// The groupoid operations Left, Right, inverse, composition of
// fig. "The Groupoid Operations". Composition is partial: x∘y is defined iff
// Right(x) = Left(y); an absent result is not a fault.

inline ValuePtr left(const ValuePtr& x);
inline ValuePtr right(const ValuePtr& x);
inline ValuePtr invert(const ValuePtr& x);
inline std::optional<ValuePtr> compose(const ValuePtr& x, const ValuePtr& y);

namespace detail {
// raw case-table composite without the Right(x)=Left(y) guard; nullopt when
// the table gives nothing
inline std::optional<ValuePtr> compose_raw(const ValuePtr& x, const ValuePtr& y) {
  if (x->kind() != y->kind()) return std::nullopt;
  switch (x->kind()) {
    case Kind::Bool:
      if (x->flag() != y->flag()) return std::nullopt;
      return x;
    case Kind::Point:
      if (!(x->right_index() == y->left_index())) return std::nullopt;
      return Value::point(x->left_index(), y->right_index());
    case Kind::Pair: {
      auto a = compose(x->first(), y->first());
      auto b = compose(x->second(), y->second());
      if (!a || !b) return std::nullopt;
      return Value::pair(*a, *b);
    }
    case Kind::Type: {
      std::vector<ValuePtr> ms;
      for (auto& p : x->members())
        for (auto& q : y->members())
          if (auto c = compose(p, q)) ms.push_back(*c);
      return Value::type(std::move(ms));
    }
    case Kind::Fun: {
      std::vector<Value::Entry> g;
      for (auto& e1 : x->graph())
        for (auto& e2 : y->graph()) {
          auto d = compose(e1.first, e2.first);
          if (!d) continue;
          auto v = compose(e1.second, e2.second);
          if (!v) continue;
          g.push_back({*d, *v});
        }
      return Value::fun(std::move(g));
    }
  }
  return std::nullopt;
}
}  // namespace detail

inline ValuePtr left(const ValuePtr& x) {
  switch (x->kind()) {
    case Kind::Bool: return x;
    case Kind::Point: return Value::point(x->left_index(), x->left_index());
    case Kind::Pair: return Value::pair(left(x->first()), left(x->second()));
    case Kind::Type: {
      std::vector<ValuePtr> ms;
      for (auto& p : x->members())
        for (auto& q : x->members())
          if (auto c = compose(p, invert(q))) ms.push_back(*c);
      return Value::type(std::move(ms));
    }
    case Kind::Fun: {
      std::vector<Value::Entry> g;
      for (auto& e1 : x->graph())
        for (auto& e2 : x->graph()) {
          auto d = compose(e1.first, invert(e2.first));
          if (!d) continue;
          auto v = compose(e1.second, invert(e2.second));
          if (!v) continue;
          g.push_back({*d, *v});
        }
      return Value::fun(std::move(g));
    }
  }
  return x;
}

inline ValuePtr right(const ValuePtr& x) {
  switch (x->kind()) {
    case Kind::Bool: return x;
    case Kind::Point: return Value::point(x->right_index(), x->right_index());
    case Kind::Pair: return Value::pair(right(x->first()), right(x->second()));
    case Kind::Type: {
      std::vector<ValuePtr> ms;
      for (auto& p : x->members())
        for (auto& q : x->members())
          if (auto c = compose(invert(p), q)) ms.push_back(*c);
      return Value::type(std::move(ms));
    }
    case Kind::Fun: {
      std::vector<Value::Entry> g;
      for (auto& e1 : x->graph())
        for (auto& e2 : x->graph()) {
          auto d = compose(invert(e1.first), e2.first);
          if (!d) continue;
          auto v = compose(invert(e1.second), e2.second);
          if (!v) continue;
          g.push_back({*d, *v});
        }
      return Value::fun(std::move(g));
    }
  }
  return x;
}

inline ValuePtr invert(const ValuePtr& x) {
  switch (x->kind()) {
    case Kind::Bool: return x;
    case Kind::Point: return Value::point(x->right_index(), x->left_index());
    case Kind::Pair: return Value::pair(invert(x->first()), invert(x->second()));
    case Kind::Type: {
      std::vector<ValuePtr> ms;
      ms.reserve(x->members().size());
      for (auto& p : x->members()) ms.push_back(invert(p));
      return Value::type(std::move(ms));
    }
    case Kind::Fun: {
      std::vector<Value::Entry> g;
      g.reserve(x->graph().size());
      for (auto& e : x->graph()) g.push_back({invert(e.first), invert(e.second)});
      return Value::fun(std::move(g));
    }
  }
  return x;
}

inline std::optional<ValuePtr> compose(const ValuePtr& x, const ValuePtr& y) {
  // fast paths avoid recomputing boundaries for the flat kinds
  if (x->kind() != y->kind()) return std::nullopt;
  switch (x->kind()) {
    case Kind::Bool:
      if (x->flag() != y->flag()) return std::nullopt;
      return x;
    case Kind::Point:
      if (!(x->right_index() == y->left_index())) return std::nullopt;
      return Value::point(x->left_index(), y->right_index());
    case Kind::Pair:
      // boundary equality of pairs is exactly componentwise definedness
      return detail::compose_raw(x, y);
    default:
      break;
  }
  if (!Value::equal(right(x), left(y))) return std::nullopt;
  return detail::compose_raw(x, y);
}

inline uint32_t rank(const ValuePtr& x) { return x->rank(); }

// x∘y⁻¹∘z, the (T1) closure composite, or nullopt.
inline std::optional<ValuePtr> compose3_inv(const ValuePtr& x, const ValuePtr& y,
                                            const ValuePtr& z) {
  auto a = compose(x, invert(y));
  if (!a) return std::nullopt;
  return compose(*a, z);
}

}  // namespace mortt
