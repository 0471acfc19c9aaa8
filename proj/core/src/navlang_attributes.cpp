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

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "ivlmap/navlang.hpp"

namespace ivlmap::navlang {

namespace {

struct Word {
  std::string text;  // lowercased
  std::size_t begin = 0;
  std::size_t end = 0;
  bool boundary = false;  // punctuation or clause conjunction
};

std::vector<Word> tokenize(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto ch = static_cast<unsigned char>(s[i]);
    if (std::isalnum(ch)) {
      std::size_t j = i;
      std::string text;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '\'')) {
        if (s[j] != '\'') text.push_back(char(std::tolower(static_cast<unsigned char>(s[j]))));
        ++j;
      }
      const bool conj = text == "then" || text == "and";
      out.push_back({text, i, j, conj});
      i = j;
    } else {
      if (ch == '.' || ch == ',' || ch == ';' || ch == '!' || ch == '?' || ch == ':')
        out.push_back({std::string(1, char(ch)), i, i + 1, true});
      ++i;
    }
  }
  return out;
}

std::optional<int> ordinal(const std::string& w) {
  static const std::array<const char*, 10> words = {"first", "second", "third",  "fourth",
                                                    "fifth", "sixth",  "seventh", "eighth",
                                                    "ninth", "tenth"};
  for (std::size_t k = 0; k < words.size(); ++k)
    if (w == words[k]) return int(k) + 1;
  if (w == "nearest" || w == "closest") return 0;
  if (w.size() >= 3) {
    const std::string suffix = w.substr(w.size() - 2);
    const std::string digits = w.substr(0, w.size() - 2);
    if ((suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int v = std::stoi(digits);
      if (v >= 1) return v;
    }
  }
  return std::nullopt;
}

bool is_determiner(const std::string& w) { return w == "the" || w == "a" || w == "an"; }

std::vector<std::string> split_label(const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == ' ' || c == '_' || c == '-') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

bool word_matches(const std::string& word, const std::string& part, bool last) {
  if (word == part) return true;
  if (!last) return false;
  if (word.size() == part.size() + 1 && word.back() == 's' && word.compare(0, part.size(), part) == 0)
    return true;
  return word.size() == part.size() + 2 && word.ends_with("es") &&
         word.compare(0, part.size(), part) == 0;
}

/// Longest category match starting at word `i`: (category index, words consumed).
std::optional<std::pair<std::size_t, std::size_t>> match_category(
    const std::vector<Word>& words, std::size_t i, const std::vector<std::vector<std::string>>& cats) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t c = 0; c < cats.size(); ++c) {
    const auto& parts = cats[c];
    if (parts.empty() || i + parts.size() > words.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < parts.size() && ok; ++k)
      ok = !words[i + k].boundary &&
           word_matches(words[i + k].text, parts[k], k + 1 == parts.size());
    if (ok && (!best || parts.size() > best->second)) best = {{c, parts.size()}};
  }
  return best;
}

}  // namespace

ExtractionResult extract_attributes(std::string_view command, const vocab::Vocabulary& categories,
                                    const vocab::Vocabulary& colors) {
  ExtractionResult out;
  const auto words = tokenize(command);
  std::vector<std::vector<std::string>> cats;
  for (const auto& l : categories.labels()) cats.push_back(split_label(l));

  std::optional<int> pending_ord;
  std::optional<std::string> pending_color;
  std::optional<std::size_t> pending_begin;
  auto flush = [&](std::string_view why) {
    if (pending_ord || pending_color) {
      std::string what;
      if (pending_ord) what += "ordinal " + std::to_string(*pending_ord);
      if (pending_color) what += (what.empty() ? "" : " and ") + ("color " + *pending_color);
      out.warnings.push_back(what + " without an object before " + std::string(why) +
                             " at offset " + std::to_string(*pending_begin));
    }
    pending_ord.reset();
    pending_color.reset();
    pending_begin.reset();
  };

  for (std::size_t i = 0; i < words.size();) {
    const Word& w = words[i];
    if (w.boundary) {
      flush("'" + w.text + "'");
      ++i;
      continue;
    }
    if (is_determiner(w.text)) {
      flush("'" + w.text + "'");
      ++i;
      continue;
    }
    if (auto cat = match_category(words, i, cats)) {
      AttrTuple t;
      t.attr.name = categories.at(static_cast<int>(cat->first));
      t.attr.instance_idx = pending_ord.value_or(0);
      t.attr.color = pending_color;
      t.begin = pending_begin.value_or(w.begin);
      t.end = words[i + cat->second - 1].end;
      out.tuples.push_back(std::move(t));
      pending_ord.reset();
      pending_color.reset();
      pending_begin.reset();
      i += cat->second;
      continue;
    }
    if (auto ord = ordinal(w.text)) {
      pending_ord = *ord;
      if (!pending_begin) pending_begin = w.begin;
    } else if (colors.find(w.text)) {
      pending_color = w.text;
      if (!pending_begin) pending_begin = w.begin;
    }
    ++i;
  }
  flush("end of command");
  return out;
}

std::string format_tuples(const std::vector<AttrTuple>& tuples) {
  std::string out = "[";
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    if (k) out += ", ";
    out += localization::to_string(tuples[k].attr);
  }
  return out + "]";
}

NavProgram visit_program(const std::vector<AttrTuple>& tuples) {
  NavProgram p;
  for (const auto& t : tuples) {
    Call get;
    get.bind = "obj";
    get.function = "get_obj_attributes";
    get.args = {Arg{t.attr.name}, Arg{double(t.attr.instance_idx)},
                t.attr.color ? Arg{*t.attr.color} : Arg{NoneLit{}}};
    Call move;
    move.function = "move_to_object";
    move.args = {Arg{VarRef{"obj"}}};
    Call stop;
    stop.function = "stop";
    p.statements.push_back(Stmt{get});
    p.statements.push_back(Stmt{move});
    p.statements.push_back(Stmt{stop});
  }
  return p;
}

}  // namespace ivlmap::navlang
