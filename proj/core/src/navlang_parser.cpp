// Copyright 2026 The IVLMap Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "ivlmap/navlang.hpp"

namespace ivlmap::navlang {

std::string to_string(const SourceSpan& span) {
  return std::to_string(span.line) + ":" + std::to_string(span.column);
}

ParseError::ParseError(const std::string& message, SourceSpan span)
    : Error("line " + to_string(span) + ": " + message), span_(span), detail_(message) {}

ExecutionError::ExecutionError(const std::string& message, SourceSpan span)
    : Error("line " + to_string(span) + ": " + message), span_(span) {}

const std::vector<FunctionSig>& function_library() {
  using P = ParamKind;
  using V = ValueKind;
  static const std::vector<FunctionSig> lib = {
      {"get_nearest_obj_pos", {P::string}, 1, V::position},
      {"get_obj_attributes", {P::string, P::number, P::string, P::ordering}, 3, V::attr},
      {"get_specified_obj_pos", {P::object}, 1, V::position},
      {"get_nearest_obj_contour", {P::object}, 1, V::contour},
      {"move_to", {P::position}, 1, V::none},
      {"move_to_left", {P::object}, 1, V::none},
      {"move_to_right", {P::object}, 1, V::none},
      {"with_object_on_left", {P::object}, 1, V::none},
      {"with_object_on_right", {P::object}, 1, V::none},
      {"move_in_between", {P::object, P::object}, 2, V::none},
      {"turn", {P::number}, 1, V::none},
      {"face", {P::object}, 1, V::none},
      {"turn_absolute", {P::number}, 1, V::none},
      {"move_north", {P::object}, 1, V::none},
      {"move_south", {P::object}, 1, V::none},
      {"move_east", {P::object}, 1, V::none},
      {"move_west", {P::object}, 1, V::none},
      {"move_to_object", {P::object}, 1, V::none},
      {"move_forward", {P::number}, 1, V::none},
      {"stop", {}, 0, V::none},
  };
  return lib;
}

const FunctionSig* find_function(std::string_view name) {
  static const std::map<std::string_view, std::string_view> aliases = {
      {"attrs", "get_obj_attributes"},
      {"get_specifed_obj_pos", "get_specified_obj_pos"},
      {"move_to_obiect", "move_to_object"},
  };
  if (auto it = aliases.find(name); it != aliases.end()) name = it->second;
  for (const auto& f : function_library())
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

// ---- lexer ----

enum class Tok {
  ident, number, string, lparen, rparen, lbrace, rbrace, lbracket, rbracket, comma,
  semicolon, equals, dot, newline, end
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  SourceSpan span;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    const SourceSpan here{line, col};
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (ch == '\n') {
      out.push_back({Tok::newline, "\n", 0.0, here});
      advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), 0.0, here});
      advance(j - i);
      continue;
    }
    const bool signed_number =
        (ch == '-' || ch == '+') && i + 1 < src.size() &&
        (std::isdigit(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '.');
    const bool leading_dot = ch == '.' && i + 1 < src.size() &&
                             std::isdigit(static_cast<unsigned char>(src[i + 1]));
    if (std::isdigit(static_cast<unsigned char>(ch)) || leading_dot || signed_number) {
      std::size_t j = i + (signed_number ? 1 : 0);
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) ||
                                src[j] == '.' || src[j] == 'e' || src[j] == 'E' ||
                                ((src[j] == '-' || src[j] == '+') &&
                                 (src[j - 1] == 'e' || src[j - 1] == 'E'))))
        ++j;
      std::string text(src.substr(i, j - i));
      const char* first = text.data() + (text[0] == '+' ? 1 : 0);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("malformed number '" + text + "'", here);
      out.push_back({Tok::number, text, value, here});
      advance(j - i);
      continue;
    }
    if (ch == '"' || ch == '\'') {
      std::string value;
      advance();
      bool closed = false;
      while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') break;
        if (c == ch) {
          closed = true;
          advance();
          break;
        }
        if (c == '\\' && i + 1 < src.size()) {
          advance();
          value.push_back(src[i]);
          advance();
          continue;
        }
        value.push_back(c);
        advance();
      }
      if (!closed) throw ParseError("unterminated string literal", here);
      out.push_back({Tok::string, value, 0.0, here});
      continue;
    }
    Tok kind;
    switch (ch) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '{': kind = Tok::lbrace; break;
      case '}': kind = Tok::rbrace; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ',': kind = Tok::comma; break;
      case ';': kind = Tok::semicolon; break;
      case '=': kind = Tok::equals; break;
      case '.': kind = Tok::dot; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", here);
    }
    out.push_back({kind, std::string(1, ch), 0.0, here});
    advance();
  }
  out.push_back({Tok::end, "", 0.0, {line, col}});
  return out;
}

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::string: return "string";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::equals: return "'='";
    case Tok::dot: return "'.'";
    case Tok::newline: return "end of line";
    case Tok::end: return "end of input";
  }
  return "token";
}

std::string_view describe(ParamKind k) {
  switch (k) {
    case ParamKind::string: return "a string";
    case ParamKind::number: return "a number";
    case ParamKind::object: return "an object (attribute triple, binding or name)";
    case ParamKind::position: return "a position binding";
    case ParamKind::ordering: return "\"nearest\" or \"left_to_right\"";
  }
  return "?";
}

// ---- parser ----

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  NavProgram program() {
    NavProgram p;
    skip_separators();
    while (peek().kind != Tok::end) {
      p.statements.push_back(statement());
      end_of_statement();
    }
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind)
      throw ParseError("expected " + std::string(what) + ", found " +
                           std::string(describe(peek().kind)) +
                           (peek().text.empty() || peek().kind == Tok::newline
                                ? ""
                                : " '" + peek().text + "'"),
                       peek().span);
    return next();
  }
  void skip_separators() {
    while (peek().kind == Tok::newline || peek().kind == Tok::semicolon) next();
  }
  void end_of_statement() {
    const Tok k = peek().kind;
    // Whitespace alone separates statements on one line.
    if (k == Tok::end || k == Tok::rbrace || k == Tok::ident) return;
    if (k == Tok::newline || k == Tok::semicolon || k == Tok::comma) {
      next();
      skip_separators();
      return;
    }
    throw ParseError("expected end of statement, found " + std::string(describe(k)), peek().span);
  }

  Stmt statement() {
    if (peek().kind == Tok::ident && peek().text == "repeat") return Stmt{repeat()};
    return Stmt{call()};
  }

  Repeat repeat() {
    Repeat r;
    r.span = next().span;
    const Token& n = expect(Tok::number, "repeat count");
    if (n.number < 1 || n.number != double(int(n.number)))
      throw ParseError("repeat count must be a positive integer", n.span);
    r.count = int(n.number);
    skip_newlines();
    expect(Tok::lbrace, "'{'");
    skip_separators();
    ++loop_depth_;
    while (peek().kind != Tok::rbrace) {
      if (peek().kind == Tok::end) throw ParseError("unterminated repeat block", r.span);
      r.body.push_back(statement());
      end_of_statement();
    }
    --loop_depth_;
    next();
    if (r.body.empty()) throw ParseError("repeat block is empty", r.span);
    return r;
  }

  void skip_newlines() {
    while (peek().kind == Tok::newline) next();
  }

  void skip_agent_prefix() {
    if (peek().kind == Tok::ident && peek().text == "agent" && peek(1).kind == Tok::dot) {
      next();
      next();
    }
  }

  Call call() {
    Call c;
    skip_agent_prefix();
    const Token& first = expect(Tok::ident, "function name");
    c.span = first.span;
    std::string name = first.text;
    if (peek().kind == Tok::equals) {
      next();
      c.bind = name;
      skip_agent_prefix();
      const Token& fn = expect(Tok::ident, "function name");
      name = fn.text;
      c.span = fn.span;
    }
    const FunctionSig* sig = find_function(name);
    if (!sig) throw ParseError("unknown function '" + name + "'", c.span);
    c.function = std::string(sig->name);
    expect(Tok::lparen, "'('");
    std::vector<SourceSpan> arg_spans;
    if (peek().kind != Tok::rparen) {
      arg_spans.push_back(peek().span);
      c.args.push_back(argument());
      while (peek().kind == Tok::comma) {
        next();
        arg_spans.push_back(peek().span);
        c.args.push_back(argument());
      }
    }
    expect(Tok::rparen, "')'");
    const int n = int(c.args.size());
    if (n < sig->required || n > int(sig->params.size()))
      throw ParseError(c.function + " expects " +
                           (sig->required == int(sig->params.size())
                                ? std::to_string(sig->required)
                                : std::to_string(sig->required) + " to " +
                                      std::to_string(sig->params.size())) +
                           " argument(s), got " + std::to_string(n),
                       c.span);
    for (int k = 0; k < n; ++k) check_arg(*sig, k, c.args[std::size_t(k)], arg_spans[std::size_t(k)]);
    if (c.bind) {
      if (sig->returns == ValueKind::none)
        throw ParseError(c.function + " returns no value to bind", c.span);
      vars_[*c.bind] = sig->returns;
    }
    return c;
  }

  Arg argument() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: next(); return t.number;
      case Tok::string: next(); return t.text;
      case Tok::lparen: return attr_literal();
      case Tok::ident: {
        next();
        if (t.text == "None") return NoneLit{};
        if (peek().kind == Tok::lbracket) {
          next();
          IndexRef ref{t.text, std::nullopt};
          const Token& idx = peek();
          if (idx.kind == Tok::number && idx.number >= 0 && idx.number == double(int(idx.number))) {
            ref.index = int(idx.number);
            next();
          } else if (idx.kind == Tok::ident && idx.text == "i") {
            if (loop_depth_ == 0)
              throw ParseError("loop counter 'i' used outside a repeat block", idx.span);
            next();
          } else {
            throw ParseError("index must be a non-negative integer or 'i'", idx.span);
          }
          expect(Tok::rbracket, "']'");
          return ref;
        }
        return VarRef{t.text};
      }
      default:
        throw ParseError("expected an argument, found " + std::string(describe(t.kind)), t.span);
    }
  }

  Arg attr_literal() {
    const SourceSpan start = next().span;
    AttrLit a;
    const Token& name = expect(Tok::string, "object name string");
    a.name = name.text;
    expect(Tok::comma, "','");
    const Token& idx = peek();
    if (idx.kind == Tok::ident && idx.text == "None") {
      next();
    } else {
      const Token& n = expect(Tok::number, "instance index");
      if (n.number < 0 || n.number != double(int(n.number)))
        throw ParseError("instance index must be a non-negative integer", n.span);
      a.instance_idx = int(n.number);
    }
    expect(Tok::comma, "','");
    const Token& col = peek();
    if (col.kind == Tok::ident && col.text == "None") {
      next();
    } else {
      a.color = expect(Tok::string, "color string or None").text;
      if (a.color->empty() || *a.color == "None") a.color.reset();
    }
    expect(Tok::rparen, "')' closing the attribute triple");
    (void)start;
    return a;
  }

  std::optional<ValueKind> var_kind(const std::string& name, SourceSpan span) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) throw ParseError("undefined variable '" + name + "'", span);
    return it->second;
  }

  void check_arg(const FunctionSig& sig, int k, const Arg& arg, SourceSpan span) {
    const ParamKind want = sig.params[std::size_t(k)];
    auto fail = [&]() {
      throw ParseError(std::string(sig.name) + " argument " + std::to_string(k + 1) +
                           " must be " + std::string(describe(want)),
                       span);
    };
    // get_obj_attributes accepts None for the ordinal and the color.
    const bool is_none = std::holds_alternative<NoneLit>(arg);
    const bool none_ok = sig.name == "get_obj_attributes" && (k == 1 || k == 2);
    if (is_none) {
      if (!none_ok) fail();
      return;
    }
    switch (want) {
      case ParamKind::string:
        if (!std::holds_alternative<std::string>(arg)) fail();
        break;
      case ParamKind::ordering: {
        const auto* s = std::get_if<std::string>(&arg);
        if (!s || !localization::parse_ordering(*s)) fail();
        break;
      }
      case ParamKind::number:
        if (const auto* ref = std::get_if<IndexRef>(&arg)) {
          if (var_kind(ref->name, span) != ValueKind::contour)
            throw ParseError("'" + ref->name + "' is not a contour and cannot be indexed", span);
        } else if (!std::holds_alternative<double>(arg)) {
          fail();
        }
        break;
      case ParamKind::object:
        if (const auto* v = std::get_if<VarRef>(&arg)) {
          if (var_kind(v->name, span) != ValueKind::attr) fail();
        } else if (!std::holds_alternative<AttrLit>(arg) &&
                   !std::holds_alternative<std::string>(arg)) {
          fail();
        }
        break;
      case ParamKind::position:
        if (const auto* v = std::get_if<VarRef>(&arg)) {
          const auto kind = var_kind(v->name, span);
          if (kind != ValueKind::position && kind != ValueKind::attr) fail();
        } else if (!std::holds_alternative<AttrLit>(arg)) {
          fail();
        }
        break;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;
  std::map<std::string, ValueKind> vars_;
};

// ---- printing ----

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string number_text(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string print_arg(const Arg& a) {
  struct Visitor {
    std::string operator()(double v) const { return number_text(v); }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(const NoneLit&) const { return "None"; }
    std::string operator()(const AttrLit& a) const {
      return "(" + quote(a.name) + ", " + std::to_string(a.instance_idx) + ", " +
             (a.color ? quote(*a.color) : std::string("None")) + ")";
    }
    std::string operator()(const VarRef& v) const { return v.name; }
    std::string operator()(const IndexRef& r) const {
      return r.name + "[" + (r.index ? std::to_string(*r.index) : std::string("i")) + "]";
    }
  };
  return std::visit(Visitor{}, a);
}

void print_stmts(const std::vector<Stmt>& stmts, int depth, std::ostringstream& os) {
  const std::string indent(std::size_t(depth) * 2, ' ');
  for (const auto& s : stmts) {
    if (const auto* c = std::get_if<Call>(&s.node)) {
      os << indent;
      if (c->bind) os << *c->bind << " = ";
      os << c->function << "(";
      for (std::size_t k = 0; k < c->args.size(); ++k) {
        if (k) os << ", ";
        os << print_arg(c->args[k]);
      }
      os << ")\n";
    } else {
      const auto& r = std::get<Repeat>(s.node);
      os << indent << "repeat " << r.count << " {\n";
      print_stmts(r.body, depth + 1, os);
      os << indent << "}\n";
    }
  }
}

bool same_stmts(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].node.index() != b[i].node.index()) return false;
    if (const auto* ca = std::get_if<Call>(&a[i].node)) {
      const auto& cb = std::get<Call>(b[i].node);
      if (ca->bind != cb.bind || ca->function != cb.function || ca->args != cb.args) return false;
    } else {
      const auto& ra = std::get<Repeat>(a[i].node);
      const auto& rb = std::get<Repeat>(b[i].node);
      if (ra.count != rb.count || !same_stmts(ra.body, rb.body)) return false;
    }
  }
  return true;
}

}  // namespace

NavProgram parse_program(std::string_view text) { return Parser(lex(text)).program(); }

std::string print_program(const NavProgram& program) {
  std::ostringstream os;
  print_stmts(program.statements, 0, os);
  return os.str();
}

bool same_ast(const NavProgram& a, const NavProgram& b) {
  return same_stmts(a.statements, b.statements);
}

}  // namespace ivlmap::navlang
