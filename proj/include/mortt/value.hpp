#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mortt/sexpr.hpp"

namespace mortt {

class Value;
using ValuePtr = std::shared_ptr<const Value>;

enum class Kind : uint8_t { Point, Bool, Type, Fun, Pair };

// A point index: a symbol, an integer, or a whole value (abstraction to a
// point turns morphoids into indices). Compared by canonical encoding.
class Index {
 public:
  enum class Tag : uint8_t { Atom, Num, Encoded };

  static Index atom(std::string name) {
    Index i;
    i.tag_ = Tag::Atom;
    i.key_ = "a" + std::to_string(name.size()) + ":" + name;
    i.name_ = std::move(name);
    return i;
  }
  static Index num(int64_t n) {
    Index i;
    i.tag_ = Tag::Num;
    i.num_ = n;
    i.key_ = "n" + std::to_string(n) + ";";
    return i;
  }
  static Index encoded(ValuePtr v);

  Tag tag() const { return tag_; }
  const std::string& name() const { return name_; }
  int64_t num() const { return num_; }
  const ValuePtr& value() const { return val_; }

  // Injective, self-delimiting byte encoding.
  const std::string& key() const { return key_; }

  bool operator==(const Index& o) const { return key_ == o.key_; }
  bool operator<(const Index& o) const { return key_ < o.key_; }

 private:
  Tag tag_ = Tag::Atom;
  std::string name_;
  int64_t num_ = 0;
  ValuePtr val_;
  std::string key_;
  friend class Value;
};

// The five-way morphoid value. Immutable; member sets and function graphs are
// kept sorted by canonical encoding, so equality of encodings realizes the
// paper's absolute equality (structural on points/bools/pairs, extensional on
// types/functions).
class Value : public std::enable_shared_from_this<Value> {
 public:
  using Entry = std::pair<ValuePtr, ValuePtr>;  // (domain point, value)

  static ValuePtr point(Index left, Index right) {
    auto v = std::make_shared<Value>(Private{});
    v->kind_ = Kind::Point;
    v->left_ = std::move(left);
    v->right_ = std::move(right);
    v->rank_ = 0;
    v->key_ = "P" + v->left_.key() + v->right_.key();
    return v;
  }

  static ValuePtr boolean(bool b) {
    auto v = std::make_shared<Value>(Private{});
    v->kind_ = Kind::Bool;
    v->flag_ = b;
    v->rank_ = 0;
    v->key_ = b ? "B1" : "B0";
    return v;
  }

  // Members are deduplicated and sorted by encoding (set semantics).
  static ValuePtr type(std::vector<ValuePtr> members) {
    auto v = std::make_shared<Value>(Private{});
    v->kind_ = Kind::Type;
    std::sort(members.begin(), members.end(), less);
    members.erase(std::unique(members.begin(), members.end(), equal), members.end());
    uint32_t r = 0;
    for (auto& m : members) r = std::max(r, m->rank() + 1);
    v->rank_ = r;
    v->members_ = std::move(members);
    v->key_ = "T" + std::to_string(v->members_.size()) + ";";
    for (auto& m : v->members_) v->key_ += m->key();
    return v;
  }

  // Entries sorted by (domain key, value key); byte-identical entries merge.
  // Conflicting duplicates are kept so check_weak can report NotFunctional.
  static ValuePtr fun(std::vector<Entry> graph) {
    auto v = std::make_shared<Value>(Private{});
    v->kind_ = Kind::Fun;
    std::sort(graph.begin(), graph.end(), [](const Entry& a, const Entry& b) {
      if (a.first->key() != b.first->key()) return a.first->key() < b.first->key();
      return a.second->key() < b.second->key();
    });
    graph.erase(std::unique(graph.begin(), graph.end(),
                            [](const Entry& a, const Entry& b) {
                              return a.first->key() == b.first->key() &&
                                     a.second->key() == b.second->key();
                            }),
                graph.end());
    uint32_t rdom = 0, rval = 0;
    for (auto& e : graph) {
      rdom = std::max(rdom, e.first->rank() + 1);
      rval = std::max(rval, e.second->rank() + 1);
    }
    v->rank_ = std::max(rdom + 1, rval);  // 1 + max(rank(Dom), range ranks)
    v->graph_ = std::move(graph);
    v->key_ = "F" + std::to_string(v->graph_.size()) + ";";
    for (auto& e : v->graph_) v->key_ += e.first->key() + e.second->key();
    return v;
  }

  static ValuePtr pair(ValuePtr a, ValuePtr b) {
    auto v = std::make_shared<Value>(Private{});
    v->kind_ = Kind::Pair;
    v->rank_ = std::max(a->rank(), b->rank()) + 1;
    v->first_ = std::move(a);
    v->second_ = std::move(b);
    v->key_ = "R" + v->first_->key() + v->second_->key();
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_point() const { return kind_ == Kind::Point; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_type() const { return kind_ == Kind::Type; }
  bool is_fun() const { return kind_ == Kind::Fun; }
  bool is_pair() const { return kind_ == Kind::Pair; }

  const Index& left_index() const { return left_; }
  const Index& right_index() const { return right_; }
  bool flag() const { return flag_; }
  const std::vector<ValuePtr>& members() const { return members_; }
  const std::vector<Entry>& graph() const { return graph_; }
  const ValuePtr& first() const { return first_; }
  const ValuePtr& second() const { return second_; }

  // Finite morphoid rank (all artifact values are finite).
  uint32_t rank() const { return rank_; }

  // Canonical form: injective deterministic serialization. Identity of keys
  // is absolute equality.
  const std::string& key() const { return key_; }

  bool has_member(const ValuePtr& x) const {
    return std::binary_search(members_.begin(), members_.end(), x, less);
  }

  // Graph lookup by domain point; first entry on (non-functional) duplicates.
  std::optional<ValuePtr> lookup(const ValuePtr& p) const {
    auto it = std::lower_bound(graph_.begin(), graph_.end(), p,
                               [](const Entry& e, const ValuePtr& q) {
                                 return e.first->key() < q->key();
                               });
    if (it == graph_.end() || it->first->key() != p->key()) return std::nullopt;
    return it->second;
  }

  // Domain of a function as a type value.
  ValuePtr domain() const {
    std::vector<ValuePtr> pts;
    pts.reserve(graph_.size());
    for (auto& e : graph_) pts.push_back(e.first);
    return type(std::move(pts));
  }

  static bool equal(const ValuePtr& a, const ValuePtr& b) { return a->key() == b->key(); }
  static bool less(const ValuePtr& a, const ValuePtr& b) { return a->key() < b->key(); }

  struct Private {};
  explicit Value(Private) {}

 private:
  Kind kind_ = Kind::Bool;
  Index left_, right_;
  bool flag_ = false;
  std::vector<ValuePtr> members_;
  std::vector<Entry> graph_;
  ValuePtr first_, second_;
  uint32_t rank_ = 0;
  std::string key_;
};

inline Index Index::encoded(ValuePtr v) {
  Index i;
  i.tag_ = Tag::Encoded;
  i.key_ = "e" + v->key();
  i.val_ = std::move(v);
  return i;
}

// -- printing ----------------------------------------------------------------

inline std::string print_index(const Index& i);
inline std::string print_value(const ValuePtr& v);

inline std::string print_index(const Index& i) {
  switch (i.tag()) {
    case Index::Tag::Atom: return i.name();
    case Index::Tag::Num: return std::to_string(i.num());
    case Index::Tag::Encoded: return "(enc " + print_value(i.value()) + ")";
  }
  return {};
}

inline std::string print_value(const ValuePtr& v) {
  switch (v->kind()) {
    case Kind::Point:
      return "(point " + print_index(v->left_index()) + " " + print_index(v->right_index()) + ")";
    case Kind::Bool:
      return v->flag() ? "(bool true)" : "(bool false)";
    case Kind::Type: {
      std::string s = "(type";
      for (auto& m : v->members()) s += " " + print_value(m);
      return s + ")";
    }
    case Kind::Fun: {
      std::string s = "(fun (";
      bool first = true;
      for (auto& e : v->graph()) {
        if (!first) s += " ";
        first = false;
        s += "(" + print_value(e.first) + " " + print_value(e.second) + ")";
      }
      return s + "))";
    }
    case Kind::Pair:
      return "(pair " + print_value(v->first()) + " " + print_value(v->second()) + ")";
  }
  return {};
}

// -- parsing -----------------------------------------------------------------

inline ValuePtr value_from_sexpr(const Sexpr& e);

inline Index index_from_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    const std::string& a = e.atom;
    bool numeric = !a.empty() && (std::isdigit((unsigned char)a[0]) ||
                                  (a[0] == '-' && a.size() > 1 && std::isdigit((unsigned char)a[1])));
    if (numeric) {
      for (size_t k = 1; k < a.size(); k++)
        if (!std::isdigit((unsigned char)a[k])) { numeric = false; break; }
    }
    if (numeric) return Index::num(std::stoll(a));
    return Index::atom(a);
  }
  if (e.head_is("enc") && e.size() == 2) return Index::encoded(value_from_sexpr(e[1]));
  throw ParseError("bad index", e.line, e.col);
}

inline ValuePtr value_from_sexpr(const Sexpr& e) {
  if (e.is_atom) throw ParseError("value expected", e.line, e.col);
  if (e.head_is("point") && e.size() == 3)
    return Value::point(index_from_sexpr(e[1]), index_from_sexpr(e[2]));
  if (e.head_is("bool") && e.size() == 2) {
    if (e[1].is_atom && e[1].atom == "true") return Value::boolean(true);
    if (e[1].is_atom && e[1].atom == "false") return Value::boolean(false);
    throw ParseError("bad boolean", e.line, e.col);
  }
  if (e.head_is("type")) {
    std::vector<ValuePtr> ms;
    for (size_t i = 1; i < e.size(); i++) ms.push_back(value_from_sexpr(e[i]));
    return Value::type(std::move(ms));
  }
  if (e.head_is("fun") && e.size() == 2 && e[1].is_list()) {
    std::vector<Value::Entry> g;
    for (auto& ent : e[1].items) {
      if (!ent.is_list() || ent.size() != 2) throw ParseError("bad fun entry", ent.line, ent.col);
      g.push_back({value_from_sexpr(ent[0]), value_from_sexpr(ent[1])});
    }
    return Value::fun(std::move(g));
  }
  if (e.head_is("pair") && e.size() == 3)
    return Value::pair(value_from_sexpr(e[1]), value_from_sexpr(e[2]));
  throw ParseError("unknown value form", e.line, e.col);
}

inline ValuePtr parse_value(const std::string& text) {
  return value_from_sexpr(parse_sexpr(text));
}

inline std::string canonical_form(const ValuePtr& v) { return v->key(); }

}  // namespace mortt
