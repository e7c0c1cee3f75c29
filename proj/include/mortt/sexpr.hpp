#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mortt {

// Parenthesized symbolic expressions: the surface syntax shared by values,
// templates, terms, proof files and model files.
struct Sexpr {
  bool is_atom = true;
  std::string atom;            // valid when is_atom
  std::vector<Sexpr> items;    // valid when !is_atom
  int line = 0, col = 0;

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const Sexpr& operator[](size_t i) const { return items[i]; }
  bool head_is(const std::string& s) const {
    return is_list() && !items.empty() && items[0].is_atom && items[0].atom == s;
  }
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

class SexprReader {
 public:
  explicit SexprReader(std::string text) : text_(std::move(text)) {}

  // All toplevel forms in the input.
  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip_ws();
    while (!eof()) {
      out.push_back(read());
      skip_ws();
    }
    return out;
  }

  // Exactly one form.
  Sexpr read_one() {
    skip_ws();
    if (eof()) throw ParseError("empty input", line_, col_);
    Sexpr e = read();
    skip_ws();
    if (!eof()) throw ParseError("trailing input", line_, col_);
    return e;
  }

 private:
  std::string text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') { line_++; col_ = 1; } else { col_++; }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {                   // line comment
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return c != '(' && c != ')' && c != ';' && c != ' ' && c != '\t' && c != '\n' && c != '\r';
  }

  Sexpr read() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of input", line_, col_);
    int l = line_, c = col_;
    if (peek() == '(') {
      get();
      Sexpr e;
      e.is_atom = false;
      e.line = l; e.col = c;
      skip_ws();
      while (!eof() && peek() != ')') {
        e.items.push_back(read());
        skip_ws();
      }
      if (eof()) throw ParseError("missing ')'", l, c);
      get();
      return e;
    }
    if (peek() == ')') throw ParseError("unexpected ')'", l, c);
    Sexpr e;
    e.line = l; e.col = c;
    while (!eof() && atom_char(peek())) e.atom.push_back(get());
    if (e.atom.empty()) throw ParseError("bad character", l, c);
    return e;
  }
};

inline Sexpr parse_sexpr(const std::string& text) { return SexprReader(text).read_one(); }
inline std::vector<Sexpr> parse_sexprs(const std::string& text) { return SexprReader(text).read_all(); }

inline std::string sexpr_to_string(const Sexpr& e) {
  if (e.is_atom) return e.atom;
  std::string s = "(";
  for (size_t i = 0; i < e.items.size(); i++) {
    if (i) s += ' ';
    s += sexpr_to_string(e.items[i]);
  }
  s += ')';
  return s;
}

}  // namespace mortt
