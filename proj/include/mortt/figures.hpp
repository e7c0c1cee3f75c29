#pragma once

#include <string>
#include <vector>

#include "mortt/abstraction.hpp"

namespace mortt {
namespace figures {

// The worked example values: a 12-point type σ with three 2x2 blocks over
// indices {a,a~,b,b~,c,c~} x {A,A~,B,B~,C,C~}, its partner τ, and the
// three-node graphs G and H.

inline ValuePtr block(const std::vector<std::string>& lefts,
                      const std::vector<std::string>& rights) {
  std::vector<ValuePtr> pts;
  for (auto& i : lefts)
    for (auto& j : rights) pts.push_back(Value::point(Index::atom(i), Index::atom(j)));
  return Value::type(std::move(pts));
}

inline ValuePtr union_types(const std::vector<ValuePtr>& types) {
  std::vector<ValuePtr> ms;
  for (auto& t : types)
    for (auto& m : t->members()) ms.push_back(m);
  return Value::type(std::move(ms));
}

inline ValuePtr sigma12() {
  return union_types({block({"a", "a~"}, {"A", "A~"}),
                      block({"b", "b~"}, {"B", "B~"}),
                      block({"c", "c~"}, {"C", "C~"})});
}

inline ValuePtr tau12() {
  return union_types({block({"A", "A~"}, {"X", "X~"}),
                      block({"B", "B~"}, {"Y", "Y~"}),
                      block({"C", "C~"}, {"Z", "Z~"})});
}

// A graph value: Pair(nodes, edges) with nodes a point type and edges a
// curried node -> node -> Bool function.
inline ValuePtr graph(const std::vector<ValuePtr>& nodes,
                      const std::vector<std::pair<size_t, size_t>>& edges) {
  auto connected = [&](size_t i, size_t j) {
    for (auto& e : edges)
      if ((e.first == i && e.second == j) || (e.first == j && e.second == i)) return true;
    return false;
  };
  std::vector<Value::Entry> outer;
  for (size_t i = 0; i < nodes.size(); i++) {
    std::vector<Value::Entry> inner;
    for (size_t j = 0; j < nodes.size(); j++)
      inner.push_back({nodes[j], Value::boolean(connected(i, j))});
    outer.push_back({nodes[i], Value::fun(std::move(inner))});
  }
  return Value::pair(Value::type(nodes), Value::fun(std::move(outer)));
}

inline ValuePtr point2(const std::string& i, const std::string& j) {
  return Value::point(Index::atom(i), Index::atom(j));
}

// G: path a-b-c on nodes Point(a,A), Point(b,B), Point(c,C).
inline ValuePtr graph_g() {
  return graph({point2("a", "A"), point2("b", "B"), point2("c", "C")}, {{0, 1}, {1, 2}});
}

// H: the same shape on Point(A,X), Point(B,Y), Point(C,Z).
inline ValuePtr graph_h() {
  return graph({point2("A", "X"), point2("B", "Y"), point2("C", "Z")}, {{0, 1}, {1, 2}});
}

// Permutation-group counterexample to unrestricted outward distribution:
// over the diagonal sigma = {Point(1,1), Point(2,2)}, tau1 is the full
// two-element permutation group {id, swap} and tau2 the trivial one {id}.
inline ValuePtr perm_sigma() {
  return Value::type({Value::point(Index::num(1), Index::num(1)),
                      Value::point(Index::num(2), Index::num(2))});
}
inline ValuePtr gamma_id() { return perm_sigma(); }
inline ValuePtr gamma_swap() {
  return Value::type({Value::point(Index::num(1), Index::num(2)),
                      Value::point(Index::num(2), Index::num(1))});
}
inline ValuePtr perm_tau1() { return Value::type({gamma_id(), gamma_swap()}); }
inline ValuePtr perm_tau2() { return Value::type({gamma_id()}); }

// The twelve recomputed tables of fig. "Examples of Left, Right, inverse and
// composition", printed canonically. Byte-compared against the golden file.
inline std::string render_tables() {
  ValuePtr s = sigma12(), t = tau12(), g = graph_g(), h = graph_h();
  std::string out;
  auto emit = [&](const std::string& name, const ValuePtr& v) {
    out += name + " = " + print_value(v) + "\n";
  };
  emit("sigma", s);
  emit("Left(sigma)", left(s));
  emit("Right(sigma)", right(s));
  emit("sigma^-1", invert(s));
  emit("tau", t);
  emit("sigma.tau", *compose(s, t));
  emit("G", g);
  emit("Left(G)", left(g));
  emit("Right(G)", right(g));
  emit("G^-1", invert(g));
  emit("H", h);
  emit("G.H", *compose(g, h));
  return out;
}

}  // namespace figures
}  // namespace mortt
