#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mortt/groupoid.hpp"

namespace mortt {

enum class ProblemKind : uint8_t {
  T1,               // type not closed under x∘y⁻¹∘z
  F1,               // equivalent domain points map to distinct values
  DomainNotPoints,  // function domain contains a non-point
  NotFunctional,    // function graph maps a point twice
  T2_NoInterface,   // no interface template (strong check)
  F2_NoRange,       // no range template (strong check)
};

inline const char* problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::T1: return "T1";
    case ProblemKind::F1: return "F1";
    case ProblemKind::DomainNotPoints: return "DomainNotPoints";
    case ProblemKind::NotFunctional: return "NotFunctional";
    case ProblemKind::T2_NoInterface: return "T2-NoInterface";
    case ProblemKind::F2_NoRange: return "F2-NoRange";
  }
  return "?";
}

struct Violation {
  std::string path;  // e.g. "/member[2]/range[(point 1 2)]"
  ProblemKind kind;
};

struct WeaknessReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// x ≃_σ y: some z ∈ σ makes x∘z⁻¹∘y defined. Faults unless x,y ∈ σ.
inline bool equiv(const ValuePtr& sigma, const ValuePtr& x, const ValuePtr& y) {
  if (!sigma->is_type()) throw std::invalid_argument("equiv: sigma is not a type");
  if (!sigma->has_member(x) || !sigma->has_member(y))
    throw std::invalid_argument("equiv: argument is not a member of sigma");
  if (x->is_point() && y->is_point())
    // x∘z⁻¹∘y defined forces z = Point(left(y), right(x))
    return sigma->has_member(Value::point(y->left_index(), x->right_index()));
  for (auto& z : sigma->members())
    if (compose3_inv(x, z, y)) return true;
  return false;
}

namespace detail {

inline void check_weak_into(const ValuePtr& x, const std::string& path,
                            std::vector<Violation>& out);

// (T1) closure of a member list, bucketing by boundary keys so only plausible
// triples are composed.
inline void check_t1(const ValuePtr& sigma, const std::string& path,
                     std::vector<Violation>& out) {
  const auto& ms = sigma->members();
  std::map<std::string, std::vector<size_t>> by_right, by_left;
  std::vector<ValuePtr> lefts(ms.size()), rights(ms.size());
  for (size_t i = 0; i < ms.size(); i++) {
    lefts[i] = left(ms[i]);
    rights[i] = right(ms[i]);
    by_right[rights[i]->key()].push_back(i);
    by_left[lefts[i]->key()].push_back(i);
  }
  for (size_t i = 0; i < ms.size(); i++) {
    // x∘y⁻¹ defined iff Right(x)=Right(y); then ∘z needs Left(z)=Left(y).
    for (size_t j : by_right[rights[i]->key()]) {
      auto xy = compose(ms[i], invert(ms[j]));
      if (!xy) continue;
      auto it = by_left.find(lefts[j]->key());
      if (it == by_left.end()) continue;
      for (size_t k : it->second) {
        auto w = compose(*xy, ms[k]);
        if (!w) continue;
        if (!sigma->has_member(*w)) {
          out.push_back({path, ProblemKind::T1});
          return;  // one witness per node is enough
        }
      }
    }
  }
}

inline void check_weak_into(const ValuePtr& x, const std::string& path,
                            std::vector<Violation>& out) {
  switch (x->kind()) {
    case Kind::Point:
    case Kind::Bool:
      return;
    case Kind::Pair:
      check_weak_into(x->first(), path + "/first", out);
      check_weak_into(x->second(), path + "/second", out);
      return;
    case Kind::Type: {
      for (size_t i = 0; i < x->members().size(); i++)
        check_weak_into(x->members()[i], path + "/member[" + std::to_string(i) + "]", out);
      check_t1(x, path, out);
      return;
    }
    case Kind::Fun: {
      const auto& g = x->graph();
      for (size_t i = 0; i + 1 < g.size(); i++)
        if (Value::equal(g[i].first, g[i + 1].first)) {
          out.push_back({path, ProblemKind::NotFunctional});
          break;
        }
      bool points_only = true;
      for (auto& e : g)
        if (!e.first->is_point()) points_only = false;
      if (!points_only) out.push_back({path, ProblemKind::DomainNotPoints});
      auto dom = x->domain();
      check_t1(dom, path + "/dom", out);
      for (size_t i = 0; i < g.size(); i++)
        check_weak_into(g[i].second, path + "/range[" + print_value(g[i].first) + "]", out);
      // (F1): ≃-equivalent domain points map to identical values
      for (size_t i = 0; i < g.size(); i++)
        for (size_t j = i + 1; j < g.size(); j++) {
          if (Value::equal(g[i].second, g[j].second)) continue;
          bool eq = false;
          if (points_only) {
            eq = dom->has_member(
                Value::point(g[j].first->left_index(), g[i].first->right_index()));
          } else {
            for (auto& z : dom->members())
              if (compose3_inv(g[i].first, z, g[j].first)) { eq = true; break; }
          }
          if (eq) {
            out.push_back({path, ProblemKind::F1});
            return;
          }
        }
      return;
    }
  }
}

}  // namespace detail

inline WeaknessReport check_weak(const ValuePtr& x) {
  WeaknessReport r;
  detail::check_weak_into(x, "", r.violations);
  return r;
}

inline bool is_weak(const ValuePtr& x) { return check_weak(x).ok(); }

// x ~ y certified by an explicit witness z: true iff x∘z∘y is defined.
inline bool tilde_witness(const ValuePtr& x, const ValuePtr& z, const ValuePtr& y) {
  auto a = compose(x, z);
  if (!a) return false;
  return compose(*a, y).has_value();
}

namespace detail {

// ≃-classes of a type's member list, each class sorted, classes ordered by
// their least member key (deterministic).
inline std::vector<std::vector<ValuePtr>> equiv_classes(const ValuePtr& sigma) {
  bool points_only = true;
  for (auto& m : sigma->members())
    if (!m->is_point()) { points_only = false; break; }
  std::vector<std::vector<ValuePtr>> classes;
  for (auto& m : sigma->members()) {
    bool placed = false;
    for (auto& c : classes) {
      if (points_only) {
        placed = sigma->has_member(
            Value::point(c.front()->left_index(), m->right_index()));
      } else {
        for (auto& z : sigma->members())
          if (compose3_inv(m, z, c.front())) { placed = true; break; }
      }
      if (placed) { c.push_back(m); break; }
    }
    if (!placed) classes.push_back({m});
  }
  return classes;  // members() is sorted, so class reps are sorted too
}

constexpr int kConnectBudget = 4096;

// Connector z with Left(z)=Right(a) and Right(z)=Left(b), so that a∘z∘b is
// defined. Sound-only search; `budget` caps the class-pairing enumeration.
inline std::optional<ValuePtr> connect(const ValuePtr& a, const ValuePtr& b, int& budget);

inline bool next_permutation_checked(std::vector<size_t>& perm) {
  return std::next_permutation(perm.begin(), perm.end());
}

inline std::optional<ValuePtr> connect_types(const ValuePtr& a, const ValuePtr& b, int& budget) {
  ValuePtr L = right(a), R = left(b);
  auto lc = equiv_classes(L), rc = equiv_classes(R);
  if (lc.size() != rc.size()) return std::nullopt;
  size_t n = lc.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; i++) perm[i] = i;
  do {
    if (--budget < 0) return std::nullopt;
    std::vector<ValuePtr> zs;
    bool ok = true;
    for (size_t k = 0; k < n && ok; k++)
      for (auto& u : lc[k]) {
        for (auto& v : rc[perm[k]]) {
          auto w = connect(u, v, budget);
          if (!w) { ok = false; break; }
          zs.push_back(*w);
        }
        if (!ok) break;
      }
    if (!ok) continue;
    ValuePtr z = Value::type(std::move(zs));
    if (tilde_witness(a, z, b) && is_weak(z)) return z;
  } while (next_permutation_checked(perm));
  return std::nullopt;
}

inline std::optional<ValuePtr> connect_funs(const ValuePtr& a, const ValuePtr& b, int& budget) {
  ValuePtr da = a->domain(), db = b->domain();
  auto dz = connect_types(da, db, budget);
  if (!dz) return std::nullopt;
  // each connector point (j,k) links Right-classes of Dom(a) to Left-classes
  // of Dom(b); pick any matching entries and connect their values
  std::vector<Value::Entry> g;
  for (auto& p : (*dz)->members()) {
    if (!p->is_point()) return std::nullopt;
    std::optional<ValuePtr> va, vb;
    for (auto& e : a->graph())
      if (right(e.first)->key() == left(p)->key()) { va = e.second; break; }
    for (auto& e : b->graph())
      if (left(e.first)->key() == right(p)->key()) { vb = e.second; break; }
    if (!va || !vb) return std::nullopt;
    auto w = connect(*va, *vb, budget);
    if (!w) return std::nullopt;
    g.push_back({p, *w});
  }
  ValuePtr z = Value::fun(std::move(g));
  if (tilde_witness(a, z, b) && is_weak(z)) return z;
  return std::nullopt;
}

inline std::optional<ValuePtr> connect(const ValuePtr& a, const ValuePtr& b, int& budget) {
  if (--budget < 0) return std::nullopt;
  if (a->kind() != b->kind()) return std::nullopt;
  switch (a->kind()) {
    case Kind::Point:
      return Value::point(a->right_index(), b->left_index());
    case Kind::Bool:
      if (a->flag() != b->flag()) return std::nullopt;
      return a;
    case Kind::Pair: {
      auto z1 = connect(a->first(), b->first(), budget);
      auto z2 = connect(a->second(), b->second(), budget);
      if (!z1 || !z2) return std::nullopt;
      return Value::pair(*z1, *z2);
    }
    case Kind::Type:
      return connect_types(a, b, budget);
    case Kind::Fun:
      return connect_funs(a, b, budget);
  }
  return std::nullopt;
}

}  // namespace detail

// Constructive search for a ~-witness: z with x∘z∘y defined. Sound but not
// complete; every returned witness is verified with tilde_witness.
inline std::optional<ValuePtr> tilde_search(const ValuePtr& x, const ValuePtr& y) {
  int budget = detail::kConnectBudget;
  auto z = detail::connect(x, y, budget);
  if (z && tilde_witness(x, *z, y)) return z;
  return std::nullopt;
}

}  // namespace mortt
