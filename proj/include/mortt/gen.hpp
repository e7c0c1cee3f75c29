#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <tuple>
#include <string>
#include <vector>

#include "mortt/abstraction.hpp"

namespace mortt {

struct GenBounds {
  int alphabet = 4;   // indices drawn from 1..alphabet
  int max_card = 4;   // members per type node
  int max_depth = 2;  // structural depth of generated values
};

// Seeded value generators. Values satisfy their advertised predicate by
// construction: weak types are closed unions of blocks, strong values are
// built from the closure-preserving constructors, composable pairs share
// their middle boundary.
class Gen {
 public:
  Gen(uint64_t seed, GenBounds b = {}) : rng_(seed), bounds_(b) {}

  std::mt19937_64& rng() { return rng_; }
  const GenBounds& bounds() const { return bounds_; }

  int pick(int n) { return (int)(rng_() % (uint64_t)n); }
  bool coin() { return pick(2) == 0; }

  Index index() { return Index::num(1 + pick(bounds_.alphabet)); }

  ValuePtr point() { return Value::point(index(), index()); }
  ValuePtr boolean() { return Value::boolean(coin()); }

  // T1-closed point type: a union of blocks I_k x J_k with the I_k pairwise
  // disjoint and the J_k pairwise disjoint.
  ValuePtr point_type() {
    auto [lp, rp] = block_partitions();
    std::vector<ValuePtr> pts;
    for (size_t k = 0; k < lp.size(); k++)
      for (int i : lp[k])
        for (int j : rp[k]) pts.push_back(Value::point(Index::num(i), Index::num(j)));
    return Value::type(std::move(pts));
  }

  ValuePtr bool_type() {
    std::vector<ValuePtr> ms;
    if (coin()) ms.push_back(Value::boolean(false));
    if (coin() || ms.empty()) ms.push_back(Value::boolean(true));
    return Value::type(std::move(ms));
  }

  // random abstract template of bounded depth
  TemplatePtr abstract_template(int depth) {
    switch (depth > 0 ? pick(5) : pick(3)) {
      case 0: return Template::point();
      case 1: return Template::boolean();
      case 2: return Template::type_of(Template::point());
      case 3: return Template::arrow(abstract_template(depth - 1));
      default:
        return Template::pair(abstract_template(depth - 1), abstract_template(depth - 1));
    }
  }

  // a value fixed by the given abstract template (v@A = v)
  ValuePtr abstract_value(const TemplatePtr& a) {
    switch (a->kind) {
      case TKind::Point: return point();
      case TKind::Bool: return boolean();
      case TKind::TypeOf: return point_type();
      case TKind::Pair: return Value::pair(abstract_value(a->t1), abstract_value(a->t2));
      case TKind::Arrow: {
        ValuePtr dom = point_type();
        auto classes = detail::equiv_classes(dom);
        std::vector<Value::Entry> g;
        std::vector<ValuePtr> per_class;
        per_class.reserve(classes.size());
        for (size_t k = 0; k < classes.size(); k++) per_class.push_back(abstract_value(a->body));
        for (size_t k = 0; k < classes.size(); k++)
          for (auto& p : classes[k]) g.push_back({p, per_class[k]});
        return Value::fun(std::move(g));
      }
    }
    return boolean();
  }

  // strong morphoid, by closure-preserving construction
  ValuePtr strong(int depth) {
    if (depth <= 0) {
      switch (pick(4)) {
        case 0: return point();
        case 1: return boolean();
        case 2: return point_type();
        default: return bool_type();
      }
    }
    switch (pick(6)) {
      case 0: return point();
      case 1: return point_type();
      case 2: return Value::pair(strong(depth - 1), strong(depth - 1));
      case 3: return abstract_value(abstract_template(depth - 1));
      case 4: {
        // type of same-shape abstract members, closed under composition chains
        TemplatePtr a = abstract_template(depth - 1);
        std::vector<ValuePtr> ms;
        int n = 1 + pick(bounds_.max_card);
        for (int i = 0; i < n; i++) ms.push_back(abstract_value(a));
        return close_t1(Value::type(std::move(ms)));
      }
      default: {
        ValuePtr x = strong(depth - 1);
        auto t = minimal_template(x);
        if (t) {
          auto img = abstract(x, *t);
          if (img) return *img;
        }
        return x;
      }
    }
  }

  // weak morphoid (possibly not strong): strong values plus mixed-kind types
  ValuePtr weak(int depth) {
    if (depth > 0 && pick(4) == 0) {
      ValuePtr x = weak(depth - 1);
      ValuePtr y = weak(depth - 1);
      return Value::pair(x, y);
    }
    if (pick(3) == 0) {
      // mixed-kind weak type (cross-kind compositions are undefined)
      std::vector<ValuePtr> ms;
      ValuePtr pt = point_type();
      for (auto& m : pt->members()) ms.push_back(m);
      if (coin()) ms.push_back(Value::boolean(coin()));
      return close_t1(Value::type(std::move(ms)));
    }
    return strong(depth);
  }

  ValuePtr weak_type(int depth) {
    ValuePtr v = weak(depth);
    if (v->is_type()) return v;
    return point_type();
  }

  // weak function: point-type domain, class-constant values
  ValuePtr weak_fun(int depth) {
    ValuePtr dom = point_type();
    auto classes = detail::equiv_classes(dom);
    std::vector<Value::Entry> g;
    for (auto& c : classes) {
      ValuePtr v = weak(depth);
      for (auto& p : c) g.push_back({p, v});
    }
    return Value::fun(std::move(g));
  }

  // x and y with Right(x) = Left(y), built around a shared middle boundary
  std::pair<ValuePtr, ValuePtr> composable_pair(int depth) {
    switch (depth > 0 ? pick(5) : pick(3)) {
      case 0: {
        Index i = index(), j = index(), k = index();
        return {Value::point(i, j), Value::point(j, k)};
      }
      case 1: {
        bool b = coin();
        return {Value::boolean(b), Value::boolean(b)};
      }
      case 2: {
        auto [l, m, r] = chain_partitions();
        return {blocks_to_type(l, m), blocks_to_type(m, r)};
      }
      case 3: {
        auto [a1, b1] = composable_pair(depth - 1);
        auto [a2, b2] = composable_pair(depth - 1);
        return {Value::pair(a1, a2), Value::pair(b1, b2)};
      }
      default: {
        // align the blocks directly so class values share the middle boundary
        auto [l, m, r] = chain_partitions();
        std::vector<Value::Entry> g1, g2;
        for (size_t k = 0; k < l.size(); k++) {
          auto [v, w] = composable_pair(depth - 1);
          for (int i : l[k])
            for (int j : m[k]) g1.push_back({Value::point(Index::num(i), Index::num(j)), v});
          for (int j : m[k])
            for (int o : r[k]) g2.push_back({Value::point(Index::num(j), Index::num(o)), w});
        }
        return {Value::fun(std::move(g1)), Value::fun(std::move(g2))};
      }
    }
  }

  std::tuple<ValuePtr, ValuePtr, ValuePtr> composable_triple(int depth) {
    auto [x, y] = composable_pair(depth);
    // extend the chain with a third value sharing y's right boundary
    ValuePtr z = invert(y);
    auto zz = compose(invert(y), y);  // Right(y) as a left boundary
    switch (pick(3)) {
      case 0: z = invert(y); break;
      case 1: z = right(y); break;
      default: z = *zz; break;
    }
    return {x, y, z};
  }

  // (x, T) with x@T defined
  std::pair<ValuePtr, TemplatePtr> abstractable(int depth) {
    ValuePtr x = strong(depth);
    if (coin()) return {x, Template::point()};
    auto t = minimal_template(x);
    if (t) return {x, *t};
    return {x, Template::point()};
  }

  // family of templates to instantiate "for all templates" properties:
  // generated to depth 3 plus the operand's minimal template
  std::vector<TemplatePtr> template_family(const ValuePtr& x) {
    std::vector<TemplatePtr> fam = {Template::point(), Template::boolean(),
                                    Template::type_of(Template::point()),
                                    Template::arrow(Template::point()),
                                    Template::pair(Template::point(), Template::point())};
    for (int i = 0; i < 4; i++) fam.push_back(abstract_template(2));
    fam.push_back(general_template(2));
    if (auto t = minimal_template(x)) fam.push_back(*t);
    return fam;
  }

  TemplatePtr general_template(int depth) {
    if (depth > 0 && pick(3) == 0)
      return Template::pair(general_template(depth - 1), general_template(depth - 1));
    if (pick(3) == 0) return Template::type_of(abstract_template(depth));
    return abstract_template(depth);
  }

  // T1 closure of a candidate type (bounded; retries with fewer members on
  // blowup, so the result is always closed)
  ValuePtr close_t1(ValuePtr t) {
    std::vector<ValuePtr> ms = t->members();
    for (int round = 0; round < 8; round++) {
      ValuePtr cur = Value::type(ms);
      std::vector<ValuePtr> added;
      const auto& m = cur->members();
      for (auto& x : m)
        for (auto& y : m)
          for (auto& z : m)
            if (auto w = compose3_inv(x, y, z))
              if (!cur->has_member(*w)) added.push_back(*w);
      if (added.empty()) return cur;
      if (m.size() + added.size() > 24) {
        // too big: halve and retry
        ms.resize(std::max<size_t>(1, ms.size() / 2));
        continue;
      }
      for (auto& a : added) ms.push_back(a);
    }
    return Value::type({});
  }

 private:
  std::mt19937_64 rng_;
  GenBounds bounds_;

  // disjoint partitions of left and right index sets into matching blocks
  std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> block_partitions() {
    int nblocks = 1 + pick(2);
    std::vector<std::vector<int>> lp(nblocks), rp(nblocks);
    std::vector<int> ls = sample_indices(), rs = sample_indices();
    for (size_t i = 0; i < ls.size(); i++) lp[pick(nblocks)].push_back(ls[i]);
    for (size_t i = 0; i < rs.size(); i++) rp[pick(nblocks)].push_back(rs[i]);
    std::vector<std::vector<int>> l2, r2;
    for (int k = 0; k < nblocks; k++)
      if (!lp[k].empty() && !rp[k].empty()) {
        l2.push_back(lp[k]);
        r2.push_back(rp[k]);
      }
    return {l2, r2};
  }

  // three aligned partitions for a composable chain of point types
  std::tuple<std::vector<std::vector<int>>, std::vector<std::vector<int>>,
             std::vector<std::vector<int>>>
  chain_partitions() {
    int nblocks = 1 + pick(2);
    std::vector<std::vector<int>> l(nblocks), m(nblocks), r(nblocks);
    for (int i : sample_indices()) l[pick(nblocks)].push_back(i);
    for (int i : sample_indices()) m[pick(nblocks)].push_back(i);
    for (int i : sample_indices()) r[pick(nblocks)].push_back(i);
    std::vector<std::vector<int>> l2, m2, r2;
    for (int k = 0; k < nblocks; k++)
      if (!l[k].empty() && !m[k].empty() && !r[k].empty()) {
        l2.push_back(l[k]);
        m2.push_back(m[k]);
        r2.push_back(r[k]);
      }
    if (l2.empty()) {
      l2.push_back({1});
      m2.push_back({1});
      r2.push_back({1});
    }
    return {l2, m2, r2};
  }

  std::vector<int> sample_indices() {
    std::vector<int> all;
    for (int i = 1; i <= bounds_.alphabet; i++) all.push_back(i);
    std::shuffle(all.begin(), all.end(), rng_);
    int n = 1 + pick(std::min(bounds_.max_card, bounds_.alphabet));
    all.resize(n);
    return all;
  }

  ValuePtr blocks_to_type(const std::vector<std::vector<int>>& lp,
                          const std::vector<std::vector<int>>& rp) {
    std::vector<ValuePtr> pts;
    for (size_t k = 0; k < lp.size(); k++)
      for (int i : lp[k])
        for (int j : rp[k]) pts.push_back(Value::point(Index::num(i), Index::num(j)));
    return Value::type(std::move(pts));
  }
};

// Greedy structural shrinking: repeatedly replace values in the tuple with
// smaller variants while the failure predicate stays true.
inline std::vector<ValuePtr> shrink_tuple(
    std::vector<ValuePtr> vals, const std::function<bool(const std::vector<ValuePtr>&)>& fails) {
  auto variants = [](const ValuePtr& v) {
    std::vector<ValuePtr> out;
    switch (v->kind()) {
      case Kind::Type: {
        for (size_t i = 0; i < v->members().size(); i++) {
          std::vector<ValuePtr> ms;
          for (size_t j = 0; j < v->members().size(); j++)
            if (j != i) ms.push_back(v->members()[j]);
          out.push_back(Value::type(std::move(ms)));
        }
        break;
      }
      case Kind::Fun: {
        for (size_t i = 0; i < v->graph().size(); i++) {
          std::vector<Value::Entry> g;
          for (size_t j = 0; j < v->graph().size(); j++)
            if (j != i) g.push_back(v->graph()[j]);
          out.push_back(Value::fun(std::move(g)));
        }
        break;
      }
      case Kind::Pair:
        out.push_back(v->first());
        out.push_back(v->second());
        break;
      default:
        break;
    }
    return out;
  };
  bool progress = true;
  int rounds = 0;
  while (progress && rounds++ < 64) {
    progress = false;
    for (size_t i = 0; i < vals.size() && !progress; i++) {
      for (auto& cand : variants(vals[i])) {
        std::vector<ValuePtr> next = vals;
        next[i] = cand;
        if (fails(next)) {
          vals = next;
          progress = true;
          break;
        }
      }
    }
  }
  return vals;
}

}  // namespace mortt
