#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mortt/abstraction.hpp"
#include "mortt/checker.hpp"
#include "mortt/teval.hpp"

namespace mortt {

// Bounds that make the universes enumerable. universe_caps guard enumeration
// sizes: exceeding one yields `unsupported`, never silent truncation.
struct ModelConfig {
  std::vector<std::string> alphabet = {"1", "2", "3"};
  int max_card = 3;
  int max_rank = 2;
  std::map<int, size_t> universe_caps;  // level -> max enumerated members
  size_t budget = 500000;               // quantifier / materialization budget
};

inline ModelConfig model_from_sexpr(const Sexpr& e) {
  if (!e.head_is("model")) throw ParseError("(model ...) expected", e.line, e.col);
  ModelConfig cfg;
  cfg.alphabet.clear();
  for (size_t i = 1; i < e.size(); i++) {
    const Sexpr& it = e[i];
    if (it.head_is("alphabet")) {
      for (size_t j = 1; j < it.size(); j++) cfg.alphabet.push_back(it[j].atom);
    } else if (it.head_is("max-card") && it.size() == 2) {
      cfg.max_card = std::stoi(it[1].atom);
    } else if (it.head_is("max-rank") && it.size() == 2) {
      cfg.max_rank = std::stoi(it[1].atom);
    } else if (it.head_is("universe") && it.size() == 3) {
      cfg.universe_caps[std::stoi(it[1].atom)] = std::stoul(it[2].atom);
    } else if (it.head_is("budget") && it.size() == 2) {
      cfg.budget = std::stoul(it[1].atom);
    } else {
      throw ParseError("unknown model clause", it.line, it.col);
    }
  }
  if (cfg.alphabet.empty() || cfg.max_card < 1)
    throw ParseError("model needs an alphabet and max-card >= 1", e.line, e.col);
  return cfg;
}

inline ModelConfig parse_model(const std::string& text) {
  return model_from_sexpr(parse_sexpr(text));
}

// Alphabet atoms follow the value syntax: digit strings are numeric indices.
inline Index alphabet_index(const std::string& name) {
  Sexpr s;
  s.is_atom = true;
  s.atom = name;
  return index_from_sexpr(s);
}

// A structure: finite variable assignment. Groupoid operations and the
// abstraction order lift pointwise.
using Structure = std::map<std::string, ValuePtr>;

inline std::string structure_key(const Structure& rho) {
  std::string k;
  for (auto& [x, v] : rho) k += x + "=" + v->key() + ";";
  return k;
}

inline Structure invert_structure(const Structure& rho) {
  Structure r;
  for (auto& [x, v] : rho) r[x] = invert(v);
  return r;
}

inline std::optional<Structure> compose_structures(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return std::nullopt;
  Structure r;
  auto ib = b.begin();
  for (auto& [x, v] : a) {
    if (ib->first != x) return std::nullopt;
    auto c = compose(v, ib->second);
    if (!c) return std::nullopt;
    r[x] = *c;
    ++ib;
  }
  return r;
}

enum class EvalStatus : uint8_t { Value, Undef, Unsupported };

struct EvalResult {
  EvalStatus st;
  ValuePtr v;
  std::string why;
  static EvalResult value(ValuePtr x) { return {EvalStatus::Value, std::move(x), {}}; }
  static EvalResult undef(std::string w) { return {EvalStatus::Undef, nullptr, std::move(w)}; }
  static EvalResult unsupported(std::string w) {
    return {EvalStatus::Unsupported, nullptr, std::move(w)};
  }
  bool ok() const { return st == EvalStatus::Value; }
};

struct Outcome {
  enum class St : uint8_t { Yes, No, Unsupported } st;
  std::string why;
  bool yes() const { return st == St::Yes; }
  static Outcome yes_() { return {St::Yes, {}}; }
  static Outcome no(std::string w) { return {St::No, std::move(w)}; }
  static Outcome unsupported(std::string w) { return {St::Unsupported, std::move(w)}; }
};

enum class Validation : uint8_t { Pass, Fail, NotCheckable, Unsupported };

struct ValidationReport {
  Validation st;
  std::string detail;
};

class Evaluator {
 public:
  explicit Evaluator(ModelConfig cfg) : cfg_(std::move(cfg)) {}

  const ModelConfig& config() const { return cfg_; }

  // -- bounded universes ------------------------------------------------------

  // Set: all discrete point types over the alphabet, cardinality <= max_card.
  // type_i (i>=1): every (T1-closed) point type over the alphabet plus the
  // boolean types; closure under the groupoid operations is what keeps the
  // universe value a morphoid type.
  EvalResult universe(int level) {
    auto it = universes_.find(level);
    if (it != universes_.end()) return EvalResult::value(it->second);
    if (cfg_.max_rank < 1) return EvalResult::unsupported("max-rank < 1 leaves universes empty");
    std::vector<ValuePtr> members;
    size_t n = cfg_.alphabet.size();
    std::vector<ValuePtr> points;
    for (auto& i : cfg_.alphabet)
      for (auto& j : cfg_.alphabet)
        points.push_back(Value::point(alphabet_index(i), alphabet_index(j)));
    if (level == 0) {
      // partial bijections on the alphabet
      std::function<void(size_t, std::vector<ValuePtr>&, std::set<size_t>&, std::set<size_t>&)>
          rec = [&](size_t li, std::vector<ValuePtr>& acc, std::set<size_t>& usedL,
                    std::set<size_t>& usedR) {
            members.push_back(Value::type(acc));
            if ((int)acc.size() >= cfg_.max_card) return;
            for (size_t l = li; l < n; l++) {
              if (usedL.count(l)) continue;
              for (size_t r = 0; r < n; r++) {
                if (usedR.count(r)) continue;
                acc.push_back(Value::point(alphabet_index(cfg_.alphabet[l]),
                                           alphabet_index(cfg_.alphabet[r])));
                usedL.insert(l);
                usedR.insert(r);
                rec(l + 1, acc, usedL, usedR);
                usedL.erase(l);
                usedR.erase(r);
                acc.pop_back();
              }
            }
          };
      std::vector<ValuePtr> acc;
      std::set<size_t> ul, ur;
      rec(0, acc, ul, ur);
    } else {
      if (n > 4) return EvalResult::unsupported("alphabet too large for type_i enumeration");
      auto add_closed_subsets = [&](const std::vector<ValuePtr>& pool) {
        size_t total = pool.size();
        for (size_t mask = 0; mask < (size_t(1) << total); mask++) {
          std::vector<ValuePtr> pts;
          for (size_t b = 0; b < total; b++)
            if (mask & (size_t(1) << b)) pts.push_back(pool[b]);
          ValuePtr t = Value::type(std::move(pts));
          if (check_weak(t).ok()) members.push_back(t);
        }
      };
      add_closed_subsets(points);
      // boolean types and their @TypeOf(Point) images, so that TypeOf(Point)
      // stays an interface template of the universe value
      Index et = Index::encoded(Value::boolean(true));
      Index ef = Index::encoded(Value::boolean(false));
      std::vector<ValuePtr> epoints = {
          Value::point(et, et), Value::point(et, ef), Value::point(ef, et),
          Value::point(ef, ef)};
      add_closed_subsets(epoints);
      members.push_back(Value::type({Value::boolean(false)}));
      members.push_back(Value::type({Value::boolean(true)}));
      members.push_back(Value::type({Value::boolean(false), Value::boolean(true)}));
    }
    ValuePtr u = Value::type(std::move(members));
    auto cap = cfg_.universe_caps.find(level);
    if (cap != cfg_.universe_caps.end() && u->members().size() > cap->second)
      return EvalResult::unsupported("universe " + std::to_string(level) + " exceeds its cap");
    universes_[level] = u;
    return EvalResult::value(u);
  }

  // Intensional membership in type_i: a strong morphoid type, discrete for
  // Set. (The enumerated value is used only for quantifier ranges.)
  bool in_universe(const ValuePtr& v, int level) {
    if (!v->is_type() || !strong_cached(v)) return false;
    if (level == 0) return discrete_cached(v);
    return true;
  }

  bool strong_cached(const ValuePtr& v) {
    auto it = strong_memo_.find(v->key());
    if (it != strong_memo_.end()) return it->second;
    bool r = check_strong(v).ok();
    strong_memo_[v->key()] = r;
    return r;
  }

  bool discrete_cached(const ValuePtr& v) {
    auto it = discrete_memo_.find(v->key());
    if (it != discrete_memo_.end()) return it->second;
    bool r = true;
    for (size_t i = 0; i < v->members().size() && r; i++)
      for (size_t j = i + 1; j < v->members().size() && r; j++)
        if (eq_in(v, v->members()[i], v->members()[j])) r = false;
    discrete_memo_[v->key()] = r;
    return r;
  }

  ValuePtr arrow_cached(const ValuePtr& s, const ValuePtr& t) {
    std::string key = s->key() + "->" + t->key();
    auto it = arrow_memo_.find(key);
    if (it != arrow_memo_.end()) return it->second;
    ValuePtr r = arrow_type(s, t);
    arrow_memo_[key] = r;
    return r;
  }

  // -- the value function ------------------------------------------------------

  EvalResult eval(const ExprPtr& e0, const Structure& rho) {
    ExprPtr e = expand_abbrevs(e0);
    return eval_core(e, rho);
  }

  // membership with intensional universes and structural pair/sub types
  Outcome member_of(const ValuePtr& v, const ExprPtr& ty, const Structure& rho) {
    ExprPtr t = expand_abbrevs(ty);
    return member_core(v, t, rho);
  }

  // -- contexts ----------------------------------------------------------------

  struct ContextSet {
    std::vector<Structure> structures;
    std::set<std::string> keys;  // structure_key of each member
    bool contains(const Structure& r) const { return keys.count(structure_key(r)) > 0; }
  };

  std::optional<ContextSet> enum_context(const Context& ctx, std::string* why) {
    ContextSet out;
    out.structures.push_back({});
    for (auto& en : ctx) {
      std::vector<Structure> next;
      if (en.is_decl) {
        ExprPtr dom = expand_abbrevs(en.body);
        for (auto& rho : out.structures) {
          EvalResult t = eval_core(dom, rho);
          if (t.st == EvalStatus::Unsupported) {
            if (why) *why = t.why;
            return std::nullopt;
          }
          if (!t.ok() || !t.v->is_type()) {
            if (why) *why = "declared type does not evaluate to a type";
            return std::nullopt;
          }
          if (next.size() + t.v->members().size() > cfg_.budget) {
            if (why) *why = "context enumeration exceeds budget";
            return std::nullopt;
          }
          for (auto& v : t.v->members()) {
            Structure r = rho;
            r[en.var] = v;
            next.push_back(std::move(r));
          }
        }
      } else {
        ExprPtr phi = expand_abbrevs(en.body);
        for (auto& rho : out.structures) {
          EvalResult b = eval_core(phi, rho);
          if (b.st == EvalStatus::Unsupported) {
            if (why) *why = b.why;
            return std::nullopt;
          }
          if (b.ok() && b.v->is_bool() && b.v->flag()) next.push_back(rho);
        }
      }
      out.structures = std::move(next);
    }
    for (auto& r : out.structures) out.keys.insert(structure_key(r));
    return out;
  }

  Outcome entails(const Context& ctx, const ExprPtr& phi) {
    std::string why;
    auto cs = enum_context(ctx, &why);
    if (!cs) return Outcome::unsupported(why);
    ExprPtr p = expand_abbrevs(phi);
    for (auto& rho : cs->structures) {
      EvalResult b = eval_core(p, rho);
      if (b.st == EvalStatus::Unsupported) return Outcome::unsupported(b.why);
      if (!b.ok() || !b.v->is_bool())
        return Outcome::no("formula not boolean at " + structure_key(rho));
      if (!b.v->flag()) return Outcome::no("false at " + structure_key(rho));
    }
    return Outcome::yes_();
  }

  // (V1): value compatibility with structure composition, brute force over
  // composable triples in the enumerated context set.
  Outcome check_v1(const Context& ctx, const ExprPtr& e0) {
    std::string why;
    auto cs = enum_context(ctx, &why);
    if (!cs) return Outcome::unsupported(why);
    ExprPtr e = expand_abbrevs(e0);
    auto& ss = cs->structures;
    // bucket by boundary keys so only plausible triples are composed
    std::map<std::string, std::vector<size_t>> by_right, by_left;
    std::vector<Structure> rights(ss.size()), lefts(ss.size());
    for (size_t i = 0; i < ss.size(); i++) {
      Structure l, r;
      for (auto& [x, v] : ss[i]) {
        l[x] = left(v);
        r[x] = right(v);
      }
      lefts[i] = std::move(l);
      rights[i] = std::move(r);
      by_right[structure_key(rights[i])].push_back(i);
      by_left[structure_key(lefts[i])].push_back(i);
    }
    for (size_t i = 0; i < ss.size(); i++) {
      for (size_t j : by_right[structure_key(rights[i])]) {
        auto ij = compose_structures(ss[i], invert_structure(ss[j]));
        if (!ij) continue;
        auto it = by_left.find(structure_key(lefts[j]));
        if (it == by_left.end()) continue;
        for (size_t k : it->second) {
          auto comp = compose_structures(*ij, ss[k]);
          if (!comp || !cs->contains(*comp)) continue;
          EvalResult lhs = eval_core(e, *comp);
          EvalResult v1 = eval_core(e, ss[i]);
          EvalResult v2 = eval_core(e, ss[j]);
          EvalResult v3 = eval_core(e, ss[k]);
          if (lhs.st == EvalStatus::Unsupported || v1.st == EvalStatus::Unsupported ||
              v2.st == EvalStatus::Unsupported || v3.st == EvalStatus::Unsupported)
            return Outcome::unsupported("evaluation unsupported inside V1 scan");
          if (!lhs.ok() || !v1.ok() || !v2.ok() || !v3.ok())
            return Outcome::no("value undefined inside V1 scan");
          auto a = compose(v1.v, invert(v2.v));
          auto rhs = a ? compose(*a, v3.v) : std::nullopt;
          if (!rhs) return Outcome::no("composite of values undefined");
          if (!Value::equal(lhs.v, *rhs))
            return Outcome::no("V1 violated at a structure triple");
        }
      }
    }
    return Outcome::yes_();
  }

  // (V2): monotonicity along the pointwise abstraction order.
  Outcome check_v2(const Context& ctx, const ExprPtr& e0) {
    std::string why;
    auto cs = enum_context(ctx, &why);
    if (!cs) return Outcome::unsupported(why);
    ExprPtr e = expand_abbrevs(e0);
    auto& ss = cs->structures;
    auto struct_prec = [&](const Structure& a, const Structure& b) {
      auto ib = b.begin();
      for (auto& [x, v] : a) {
        if (ib->first != x) return false;
        try {
          if (!precedes(v, ib->second)) return false;
        } catch (const std::invalid_argument&) {
          return false;
        }
        ++ib;
      }
      return true;
    };
    for (size_t i = 0; i < ss.size(); i++)
      for (size_t j = 0; j < ss.size(); j++) {
        if (!struct_prec(ss[i], ss[j])) continue;
        EvalResult a = eval_core(e, ss[i]);
        EvalResult b = eval_core(e, ss[j]);
        if (a.st == EvalStatus::Unsupported || b.st == EvalStatus::Unsupported)
          return Outcome::unsupported("evaluation unsupported inside V2 scan");
        if (!a.ok() || !b.ok()) return Outcome::no("value undefined inside V2 scan");
        bool prec;
        try {
          prec = precedes(a.v, b.v);
        } catch (const std::invalid_argument&) {
          prec = false;
        }
        if (!prec) return Outcome::no("V2 violated at a structure pair");
      }
    return Outcome::yes_();
  }

  // Validates a checker-accepted sequent at the configured bounds.
  ValidationReport validate(const Sequent& seq) {
    if (has_natural_map(seq)) return {Validation::NotCheckable, "mentions natural maps"};
    if (!wellformed_context(seq.ctx)) return {Validation::Fail, "ill-formed context"};
    std::string why;
    auto cs = enum_context(seq.ctx, &why);
    if (!cs) return {Validation::Unsupported, why};
    if (seq.jk == JudgeKind::True) return {Validation::Pass, "context enumerable"};
    if (seq.jk == JudgeKind::Formula) {
      Outcome o = entails(seq.ctx, seq.e);
      if (o.st == Outcome::St::Unsupported) return {Validation::Unsupported, o.why};
      return o.yes() ? ValidationReport{Validation::Pass, "entailed"}
                     : ValidationReport{Validation::Fail, o.why};
    }
    // typing judgement: membership + strong values + V1 + V2
    ExprPtr e = expand_abbrevs(seq.e), ty = expand_abbrevs(seq.ty);
    for (auto& rho : cs->structures) {
      EvalResult v = eval_core(e, rho);
      if (v.st == EvalStatus::Unsupported) return {Validation::Unsupported, v.why};
      if (!v.ok()) return {Validation::Fail, "value undefined at " + structure_key(rho)};
      Outcome m = member_core(v.v, ty, rho);
      if (m.st == Outcome::St::Unsupported) return {Validation::Unsupported, m.why};
      if (!m.yes())
        return {Validation::Fail, "value outside the claimed type at " + structure_key(rho)};
      if (!strong_cached(v.v))
        return {Validation::Fail, "value is not a strong morphoid at " + structure_key(rho)};
    }
    Outcome o1 = check_v1(seq.ctx, seq.e);
    if (o1.st == Outcome::St::Unsupported) return {Validation::Unsupported, o1.why};
    if (!o1.yes()) return {Validation::Fail, "V1: " + o1.why};
    Outcome o2 = check_v2(seq.ctx, seq.e);
    if (o2.st == Outcome::St::Unsupported) return {Validation::Unsupported, o2.why};
    if (!o2.yes()) return {Validation::Fail, "V2: " + o2.why};
    return {Validation::Pass, "membership, strength, V1 and V2 verified"};
  }

  static bool has_natural_map(const ExprPtr& e) {
    if (e->k == EK::NatLam || e->k == EK::NatApp || e->k == EK::NatArrow) return true;
    for (auto& k : e->kids)
      if (has_natural_map(k)) return true;
    return false;
  }
  static bool has_natural_map(const Sequent& s) {
    for (auto& en : s.ctx)
      if (has_natural_map(en.body)) return true;
    if (s.e && has_natural_map(s.e)) return true;
    if (s.ty && has_natural_map(s.ty)) return true;
    return false;
  }

 private:
  ModelConfig cfg_;
  std::map<int, ValuePtr> universes_;
  std::unordered_map<std::string, bool> strong_memo_, discrete_memo_;
  std::unordered_map<std::string, ValuePtr> arrow_memo_;
  std::unordered_map<std::string, EvalResult> eval_memo_;

  EvalResult eval_core(const ExprPtr& e, const Structure& rho) {
    std::string key = std::to_string(reinterpret_cast<uintptr_t>(e.get())) + "|" +
                      structure_key(rho);
    auto hit = eval_memo_.find(key);
    if (hit != eval_memo_.end()) return hit->second;
    EvalResult r = eval_uncached(e, rho);
    eval_memo_[key] = r;
    return r;
  }

  EvalResult eval_uncached(const ExprPtr& e, const Structure& rho) {
    switch (e->k) {
      case EK::Var: {
        auto it = rho.find(e->var);
        if (it == rho.end()) return EvalResult::undef("unbound variable " + e->var);
        return EvalResult::value(it->second);
      }
      case EK::BoolType:
        return EvalResult::value(Value::type({Value::boolean(false), Value::boolean(true)}));
      case EK::TypeConst:
        return universe(e->num);
      case EK::App: {
        EvalResult f = eval_core(e->kids[0], rho);
        EvalResult a = eval_core(e->kids[1], rho);
        if (!f.ok()) return f;
        if (!a.ok()) return a;
        if (!f.v->is_fun()) return EvalResult::undef("application of a non-function");
        auto r = fun_apply(f.v, a.v);
        if (!r) return EvalResult::undef("argument outside the function domain");
        return EvalResult::value(*r);
      }
      case EK::ArrowType: {
        EvalResult s = eval_core(e->kids[0], rho);
        EvalResult t = eval_core(e->kids[1], rho);
        if (!s.ok()) return s;
        if (!t.ok()) return t;
        if (!s.v->is_type() || !t.v->is_type())
          return EvalResult::undef("arrow of non-types");
        auto atau = interface_template(t.v);
        if (!atau) return EvalResult::undef("codomain has no interface template");
        double classes = (double)detail::equiv_classes(
                             *abstract(s.v, Template::type_of(Template::point())))
                             .size();
        double pool = (double)(*abstract(t.v, Template::type_of(*atau)))->members().size();
        if (classes > 0 && pool > 1 && classes * std::log2(pool) > std::log2((double)cfg_.budget))
          return EvalResult::unsupported("function space exceeds budget");
        try {
          return EvalResult::value(arrow_cached(s.v, t.v));
        } catch (const std::invalid_argument& ex) {
          return EvalResult::undef(ex.what());
        }
      }
      case EK::Forall: {
        EvalResult dom = eval_core(e->kids[0], rho);
        if (!dom.ok()) return dom;
        if (!dom.v->is_type()) return EvalResult::undef("quantifier domain is not a type");
        if (dom.v->members().size() > cfg_.budget)
          return EvalResult::unsupported("quantifier domain exceeds budget");
        bool all = true;
        for (auto& v : dom.v->members()) {
          Structure r2 = rho;
          r2[e->var] = v;
          EvalResult b = eval_core(e->kids[1], r2);
          if (b.st == EvalStatus::Unsupported) return b;
          if (!b.ok() || !b.v->is_bool())
            return EvalResult::undef("quantifier body not boolean");
          if (!b.v->flag()) all = false;
        }
        return EvalResult::value(Value::boolean(all));
      }
      case EK::Or: {
        EvalResult a = eval_core(e->kids[0], rho);
        EvalResult b = eval_core(e->kids[1], rho);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        if (!a.v->is_bool() || !b.v->is_bool()) return EvalResult::undef("disjunct not boolean");
        return EvalResult::value(Value::boolean(a.v->flag() || b.v->flag()));
      }
      case EK::Not: {
        EvalResult a = eval_core(e->kids[0], rho);
        if (!a.ok()) return a;
        if (!a.v->is_bool()) return EvalResult::undef("negand not boolean");
        return EvalResult::value(Value::boolean(!a.v->flag()));
      }
      case EK::EqIn: {
        EvalResult a = eval_core(e->kids[1], rho);
        EvalResult b = eval_core(e->kids[2], rho);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return eval_eq(e->kids[0], a.v, b.v, rho);
      }
      case EK::AbsEq: {
        EvalResult a = eval_core(e->kids[0], rho);
        EvalResult b = eval_core(e->kids[1], rho);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return EvalResult::value(Value::boolean(Value::equal(a.v, b.v)));
      }
      case EK::InnType: {
        EvalResult a = eval_core(e->kids[0], rho);
        if (!a.ok()) return a;
        Outcome m = member_core(a.v, e->kids[1], rho);
        if (m.st == Outcome::St::Unsupported) return EvalResult::unsupported(m.why);
        return EvalResult::value(Value::boolean(m.yes()));
      }
      case EK::PairType: {
        EvalResult s = eval_core(e->kids[0], rho);
        if (!s.ok()) return s;
        if (!s.v->is_type()) return EvalResult::undef("pair domain is not a type");
        std::vector<ValuePtr> members;
        for (auto& v : s.v->members()) {
          Structure r2 = rho;
          r2[e->var] = v;
          EvalResult t = eval_core(e->kids[1], r2);
          if (t.st == EvalStatus::Unsupported) return t;
          if (!t.ok() || !t.v->is_type()) return EvalResult::undef("pair body is not a type");
          if (members.size() + t.v->members().size() > cfg_.budget)
            return EvalResult::unsupported("pair type exceeds budget");
          for (auto& w : t.v->members()) members.push_back(Value::pair(v, w));
        }
        return EvalResult::value(Value::type(std::move(members)));
      }
      case EK::MkPair: {
        EvalResult a = eval_core(e->kids[0], rho);
        EvalResult b = eval_core(e->kids[1], rho);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return EvalResult::value(Value::pair(a.v, b.v));
      }
      case EK::Proj: {
        EvalResult a = eval_core(e->kids[0], rho);
        if (!a.ok()) return a;
        if (!a.v->is_pair()) return EvalResult::undef("projection of a non-pair");
        return EvalResult::value(e->num == 1 ? a.v->first() : a.v->second());
      }
      case EK::SubType: {
        EvalResult s = eval_core(e->kids[0], rho);
        if (!s.ok()) return s;
        if (!s.v->is_type()) return EvalResult::undef("subtype carrier is not a type");
        std::vector<ValuePtr> members;
        for (auto& v : s.v->members()) {
          Structure r2 = rho;
          r2[e->var] = v;
          EvalResult b = eval_core(e->kids[1], r2);
          if (b.st == EvalStatus::Unsupported) return b;
          if (!b.ok() || !b.v->is_bool())
            return EvalResult::undef("subtype predicate not boolean");
          if (b.v->flag()) members.push_back(v);
        }
        return EvalResult::value(Value::type(std::move(members)));
      }
      case EK::Iso: {
        EvalResult s = eval_core(e->kids[0], rho);
        EvalResult a = eval_core(e->kids[1], rho);
        EvalResult b = eval_core(e->kids[2], rho);
        if (!s.ok()) return s;
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        try {
          return EvalResult::value(iso_type(s.v, a.v, b.v));
        } catch (const std::invalid_argument& ex) {
          return EvalResult::undef(ex.what());
        }
      }
      case EK::UpDown: {
        EvalResult s = eval_core(e->kids[0], rho);
        EvalResult t = eval_core(e->kids[1], rho);
        EvalResult f = eval_core(e->kids[2], rho);
        if (!s.ok()) return s;
        if (!t.ok()) return t;
        if (!f.ok()) return f;
        try {
          return EvalResult::value(updown(s.v, t.v, f.v));
        } catch (const std::invalid_argument& ex) {
          return EvalResult::undef(ex.what());
        }
      }
      case EK::The: {
        EvalResult s = eval_core(esubtype(e->var, e->kids[0], e->kids[1]), rho);
        if (!s.ok()) return s;
        auto c = the_choice(s.v);
        if (!c) return EvalResult::undef("description is not single-valued");
        return EvalResult::value(*c);
      }
      case EK::NatLam:
      case EK::NatApp:
      case EK::NatArrow:
        return EvalResult::unsupported("natural maps have no semantic clause");
      default:
        return EvalResult::undef("expression has no semantic clause");
    }
  }

  // s =_σ w with intensional membership; materializes σ when affordable.
  EvalResult eval_eq(const ExprPtr& sigma, const ValuePtr& a, const ValuePtr& b,
                     const Structure& rho) {
    Outcome ma = member_core(a, sigma, rho);
    if (ma.st == Outcome::St::Unsupported) return EvalResult::unsupported(ma.why);
    Outcome mb = member_core(b, sigma, rho);
    if (mb.st == Outcome::St::Unsupported) return EvalResult::unsupported(mb.why);
    if (!ma.yes() || !mb.yes()) return EvalResult::undef("equality operand outside its type");
    EvalResult sv = eval_core(sigma, rho);
    if (sv.ok()) {
      if (!sv.v->is_type()) return EvalResult::undef("equality at a non-type");
      try {
        return EvalResult::value(Value::boolean(eq_in(sv.v, a, b)));
      } catch (const std::invalid_argument& ex) {
        return EvalResult::undef(ex.what());
      }
    }
    if (sv.st == EvalStatus::Undef) return sv;
    // unsupported: too big to materialize; search a witness structurally
    auto ia = abstract_by_type(a, sigma, rho);
    auto ib = abstract_by_type(b, sigma, rho);
    if (!ia || !ib) return EvalResult::unsupported("no interface for oversized type");
    auto z = witness_search(sigma, rho, right(*ia), left(*ib));
    return EvalResult::value(Value::boolean(z.has_value()));
  }

  // x@σ where σ is known only as an expression: interface via teval.
  std::optional<ValuePtr> abstract_by_type(const ValuePtr& v, const ExprPtr& sigma,
                                           const Structure& rho) {
    StructureTemplate eta;
    for (auto& [x, val] : rho) {
      auto t = minimal_template(val);
      if (!t) return std::nullopt;
      eta[x] = *t;
    }
    auto t = teval(sigma, eta);
    if (!t || (*t)->kind != TKind::TypeOf) return std::nullopt;
    return abstract(v, (*t)->body);
  }

  // member z of ⟦σ⟧ρ with left(z) = L and right(z) = R, searched structurally
  // so oversized pair/sub types need not be materialized.
  std::optional<ValuePtr> witness_search(const ExprPtr& sigma, const Structure& rho,
                                         const ValuePtr& L, const ValuePtr& R) {
    switch (sigma->k) {
      case EK::PairType: {
        if (!L->is_pair() || !R->is_pair()) return std::nullopt;
        EvalResult s = eval_core(sigma->kids[0], rho);
        if (!s.ok()) return std::nullopt;
        for (auto& v1 : s.v->members()) {
          if (!Value::equal(left(v1), L->first()) || !Value::equal(right(v1), R->first()))
            continue;
          Structure r2 = rho;
          r2[sigma->var] = v1;
          auto z2 = witness_search(sigma->kids[1], r2, L->second(), R->second());
          if (z2) return Value::pair(v1, *z2);
        }
        return std::nullopt;
      }
      case EK::SubType: {
        auto z = witness_search(sigma->kids[0], rho, L, R);
        if (!z) return std::nullopt;
        Structure r2 = rho;
        r2[sigma->var] = *z;
        EvalResult b = eval_core(sigma->kids[1], r2);
        if (b.ok() && b.v->is_bool() && b.v->flag()) return z;
        return std::nullopt;
      }
      default: {
        EvalResult s = eval_core(sigma, rho);
        if (!s.ok() || !s.v->is_type()) return std::nullopt;
        for (auto& z : s.v->members())
          if (Value::equal(left(z), L) && Value::equal(right(z), R)) return z;
        return std::nullopt;
      }
    }
  }

  Outcome member_core(const ValuePtr& v, const ExprPtr& ty, const Structure& rho) {
    switch (ty->k) {
      case EK::TypeConst:
        return in_universe(v, ty->num)
                   ? Outcome::yes_()
                   : Outcome::no("not a member of type_" + std::to_string(ty->num));
      case EK::PairType: {
        if (!v->is_pair()) return Outcome::no("not a pair");
        Outcome m1 = member_core(v->first(), ty->kids[0], rho);
        if (!m1.yes()) return m1;
        Structure r2 = rho;
        r2[ty->var] = v->first();
        return member_core(v->second(), ty->kids[1], r2);
      }
      case EK::SubType: {
        Outcome m = member_core(v, ty->kids[0], rho);
        if (!m.yes()) return m;
        Structure r2 = rho;
        r2[ty->var] = v;
        EvalResult b = eval_core(ty->kids[1], r2);
        if (b.st == EvalStatus::Unsupported) return Outcome::unsupported(b.why);
        if (!b.ok() || !b.v->is_bool()) return Outcome::no("subtype predicate not boolean");
        return b.v->flag() ? Outcome::yes_() : Outcome::no("subtype predicate false");
      }
      default: {
        EvalResult t = eval_core(ty, rho);
        if (t.st == EvalStatus::Unsupported) return Outcome::unsupported(t.why);
        if (!t.ok() || !t.v->is_type()) return Outcome::no("membership in a non-type");
        return t.v->has_member(v) ? Outcome::yes_() : Outcome::no("not a member");
      }
    }
  }
};

}  // namespace mortt
