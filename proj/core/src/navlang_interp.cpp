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

#include <cmath>
#include <map>
#include <sstream>

#include "ivlmap/navlang.hpp"

namespace ivlmap::navlang {

namespace {

using navigation::Contour;
using navigation::Navigator;
using navigation::ObjectRef;
using navigation::ResolvedAttr;

using Value = std::variant<std::monostate, ResolvedAttr, Cell, Contour>;

std::string show(const Value& v) {
  std::ostringstream os;
  if (const auto* a = std::get_if<ResolvedAttr>(&v)) {
    os << "(" << a->name << ", " << a->label_id << ", " << (a->color.empty() ? "None" : a->color)
       << ")";
  } else if (const auto* c = std::get_if<Cell>(&v)) {
    os << "(" << c->px << ", " << c->py << ")";
  } else if (const auto* k = std::get_if<Contour>(&v)) {
    os << "[" << (*k)[0] << ", " << (*k)[1] << ", " << (*k)[2] << ", " << (*k)[3] << "]";
  }
  return os.str();
}

class Interpreter {
 public:
  Interpreter(Navigator& nav, ExecutionResult& result) : nav_(nav), result_(result) {}

  void run(const std::vector<Stmt>& stmts) {
    for (const auto& s : stmts) {
      if (const auto* c = std::get_if<Call>(&s.node)) {
        exec(*c);
      } else {
        const auto& r = std::get<Repeat>(s.node);
        counters_.push_back(0);
        for (int k = 0; k < r.count; ++k) {
          counters_.back() = k;
          run(r.body);
        }
        counters_.pop_back();
      }
    }
  }

 private:
  const Value& lookup(const std::string& name, SourceSpan span) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) throw ExecutionError("undefined variable '" + name + "'", span);
    return it->second;
  }

  double number(const Arg& a, SourceSpan span) const {
    if (const auto* d = std::get_if<double>(&a)) return *d;
    if (const auto* r = std::get_if<IndexRef>(&a)) {
      const auto* contour = std::get_if<Contour>(&lookup(r->name, span));
      if (!contour) throw ExecutionError("'" + r->name + "' is not a contour", span);
      int k = r->index ? *r->index : (counters_.empty() ? 0 : counters_.back());
      return (*contour)[std::size_t(k % 4)];
    }
    throw ExecutionError("expected a number", span);
  }

  ObjectRef object(const Arg& a, SourceSpan span) const {
    if (const auto* s = std::get_if<std::string>(&a)) return localization::ObjAttr{*s, 0, {}};
    if (const auto* l = std::get_if<AttrLit>(&a))
      return localization::ObjAttr{l->name, l->instance_idx, l->color};
    if (const auto* v = std::get_if<VarRef>(&a)) {
      if (const auto* r = std::get_if<ResolvedAttr>(&lookup(v->name, span))) return *r;
      throw ExecutionError("'" + v->name + "' is not an object", span);
    }
    throw ExecutionError("expected an object", span);
  }

  Cell position(const Arg& a, SourceSpan span) {
    if (const auto* v = std::get_if<VarRef>(&a)) {
      const Value& val = lookup(v->name, span);
      if (const auto* c = std::get_if<Cell>(&val)) return *c;
    }
    return nav_.get_specified_obj_pos(object(a, span));
  }

  Value dispatch(const Call& c) {
    const auto& f = c.function;
    const auto& a = c.args;
    const auto sp = c.span;
    if (f == "get_nearest_obj_pos") return nav_.get_nearest_obj_pos(std::get<std::string>(a[0]));
    if (f == "get_obj_attributes") {
      const int idx = std::holds_alternative<NoneLit>(a[1]) ? 0 : int(std::lround(number(a[1], sp)));
      std::optional<std::string> color;
      if (const auto* s = std::get_if<std::string>(&a[2]); s && !s->empty() && *s != "None")
        color = *s;
      std::optional<localization::Ordering> ordering;
      if (a.size() > 3) ordering = localization::parse_ordering(std::get<std::string>(a[3]));
      return nav_.get_obj_attributes(std::get<std::string>(a[0]), idx, color, ordering);
    }
    if (f == "get_specified_obj_pos") return nav_.get_specified_obj_pos(object(a[0], sp));
    if (f == "get_nearest_obj_contour") {
      if (const auto* s = std::get_if<std::string>(&a[0])) return nav_.get_nearest_obj_contour(*s);
      return nav_.get_obj_contour(object(a[0], sp));
    }
    if (f == "move_to") nav_.move_to(position(a[0], sp));
    else if (f == "move_to_left") nav_.move_to_left(object(a[0], sp));
    else if (f == "move_to_right") nav_.move_to_right(object(a[0], sp));
    else if (f == "with_object_on_left") nav_.with_object_on_left(object(a[0], sp));
    else if (f == "with_object_on_right") nav_.with_object_on_right(object(a[0], sp));
    else if (f == "move_in_between") nav_.move_in_between(object(a[0], sp), object(a[1], sp));
    else if (f == "turn") nav_.turn(number(a[0], sp));
    else if (f == "face") nav_.face(object(a[0], sp));
    else if (f == "turn_absolute") nav_.turn_absolute(number(a[0], sp));
    else if (f == "move_north") nav_.move_north(object(a[0], sp));
    else if (f == "move_south") nav_.move_south(object(a[0], sp));
    else if (f == "move_east") nav_.move_east(object(a[0], sp));
    else if (f == "move_west") nav_.move_west(object(a[0], sp));
    else if (f == "move_to_object") nav_.move_to_object(object(a[0], sp));
    else if (f == "move_forward") {
      const auto r = nav_.move_forward(number(a[0], sp));
      if (r.blocked) note_ = " (blocked after " + std::to_string(r.cells) + " cells)";
    } else if (f == "stop") nav_.stop();
    else throw ExecutionError("unknown function '" + f + "'", sp);
    return std::monostate{};
  }

  void exec(const Call& c) {
    nav_.mark_call(c.function);
    note_.clear();
    Value v;
    try {
      v = dispatch(c);
    } catch (const ExecutionError&) {
      throw;
    } catch (const Error& e) {
      throw ExecutionError(c.function + ": " + e.what(), c.span);
    }
    std::string line = to_string(c.span) + " " + c.function;
    if (!std::holds_alternative<std::monostate>(v)) {
      line += " -> " + show(v);
      if (c.bind) vars_[*c.bind] = v;
    }
    const auto& agent = nav_.agent();
    line += " @ (" + std::to_string(agent.cell.px) + ", " + std::to_string(agent.cell.py) + ")" +
            note_;
    result_.log.push_back(std::move(line));
  }

  Navigator& nav_;
  ExecutionResult& result_;
  std::map<std::string, Value> vars_;
  std::vector<int> counters_;
  std::string note_;
};

}  // namespace

ExecutionResult interpret(const NavProgram& program, Navigator& navigator) {
  ExecutionResult result;
  const std::size_t first = navigator.trajectory().steps.size();
  try {
    Interpreter(navigator, result).run(program.statements);
  } catch (const ExecutionError& e) {
    result.error = e.what();
    result.error_span = e.span();
    result.log.push_back("error: " + std::string(e.what()));
  }
  const auto& steps = navigator.trajectory().steps;
  result.trajectory.steps.assign(steps.begin() + std::ptrdiff_t(std::min(first, steps.size())),
                                 steps.end());
  return result;
}

}  // namespace ivlmap::navlang
