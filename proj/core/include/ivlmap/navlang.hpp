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

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ivlmap/error.hpp"
#include "ivlmap/localization.hpp"
#include "ivlmap/navigation.hpp"
#include "ivlmap/vocab.hpp"

namespace ivlmap::navlang {

struct SourceSpan {
  int line = 1;
  int column = 1;
};

std::string to_string(const SourceSpan& span);

/// Syntax or static-check failure, positioned in the program text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceSpan span_;
  std::string detail_;
};

/// Runtime failure of one statement.
class ExecutionError : public Error {
 public:
  ExecutionError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// ---- AST ------------------------------------------------------------------

struct NoneLit {
  friend bool operator==(const NoneLit&, const NoneLit&) = default;
};
/// ("name", idx, "color") literal.
struct AttrLit {
  std::string name;
  int instance_idx = 0;
  std::optional<std::string> color;
  friend bool operator==(const AttrLit&, const AttrLit&) = default;
};
struct VarRef {
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};
/// var[k] or var[i]; `index` empty means the innermost repeat counter.
struct IndexRef {
  std::string name;
  std::optional<int> index;
  friend bool operator==(const IndexRef&, const IndexRef&) = default;
};

using Arg = std::variant<double, std::string, NoneLit, AttrLit, VarRef, IndexRef>;

struct Call {
  std::optional<std::string> bind;  // `bind = function(...)`
  std::string function;             // canonical library name
  std::vector<Arg> args;
  SourceSpan span;
};

struct Stmt;
struct Repeat {
  int count = 1;
  std::vector<Stmt> body;
  SourceSpan span;
};

struct Stmt {
  std::variant<Call, Repeat> node;
};

struct NavProgram {
  std::vector<Stmt> statements;
};

/// Structural equality; source positions are ignored.
bool same_ast(const NavProgram& a, const NavProgram& b);

// ---- function library -----------------------------------------------------

enum class ParamKind { string, number, object, position, ordering };
enum class ValueKind { none, attr, position, contour };

struct FunctionSig {
  std::string_view name;
  std::vector<ParamKind> params;
  int required = 0;  // leading parameters that must be present
  ValueKind returns = ValueKind::none;
};

/// High-level navigation functions plus `stop`.
const std::vector<FunctionSig>& function_library();
/// Canonical signature for a name or accepted alias; nullptr when unknown.
const FunctionSig* find_function(std::string_view name);

// ---- parsing ----------------------------------------------------------------

/// Parses a program. Accepts `agent.` prefixes, '#' comments, and newline,
/// ';' or ',' between statements. Unknown functions, arity or type mismatches
/// and undefined variables raise ParseError with a line/column.
NavProgram parse_program(std::string_view text);

/// Canonical text form; parse_program(print_program(p)) is structurally equal to p.
std::string print_program(const NavProgram& program);

// ---- execution -------------------------------------------------------------

struct ExecutionResult {
  navigation::Trajectory trajectory;
  std::vector<std::string> log;
  std::optional<std::string> error;
  std::optional<SourceSpan> error_span;

  bool ok() const { return !error.has_value(); }
};

/// Runs the program on `navigator`, stopping at the first failing statement.
ExecutionResult interpret(const NavProgram& program, navigation::Navigator& navigator);

// ---- attribute extraction -------------------------------------------------

struct AttrTuple {
  localization::ObjAttr attr;
  std::size_t begin = 0;  // byte span in the command
  std::size_t end = 0;
};

struct ExtractionResult {
  std::vector<AttrTuple> tuples;
  std::vector<std::string> warnings;
};

/// Template-driven landmark extraction: ordinals ("first".."tenth", "2nd"),
/// "nearest"/"closest", color words and category nouns from the vocabularies.
ExtractionResult extract_attributes(std::string_view command,
                                    const vocab::Vocabulary& categories,
                                    const vocab::Vocabulary& colors);

/// "[(table, 3, yellow), (sofa, 0, None)]".
std::string format_tuples(const std::vector<AttrTuple>& tuples);

/// Visits each tuple in order: resolve, move to the object, stop.
NavProgram visit_program(const std::vector<AttrTuple>& tuples);

// ---- external translator ---------------------------------------------------

struct TranslatorEndpoint {
  std::string host = "127.0.0.1";
  int port = 0;
  std::chrono::milliseconds timeout{30'000};
};

/// Request body: command line, blank line, prompt block.
std::string translator_request(std::string_view command);
/// Prompt block describing the function library and the program syntax.
std::string translator_prompt();

struct TranslationResult {
  NavProgram program;
  bool fallback = false;
  std::vector<std::string> warnings;
  std::string response;
};

/// Sends the command to an out-of-process translator over TCP and parses the
/// reply. Timeouts, connection failures and rejected programs fall back to
/// visit_program(extract_attributes(command)).
TranslationResult external_translate(std::string_view command, const TranslatorEndpoint& endpoint,
                                     const vocab::Vocabulary& categories,
                                     const vocab::Vocabulary& colors);

}  // namespace ivlmap::navlang
