/*
 * Copyright 2026 The epbes authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sexpr.hpp"

#include <sstream>
#include <stdexcept>

namespace presburger {

std::string Sexpr::str() const {
  if (isAtom) return atom;
  std::string s = "(";
  for (size_t i = 0; i < kids.size(); ++i) {
    if (i) s += " ";
    s += kids[i].str();
  }
  return s + ")";
}

namespace {

int skipLayout(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == EOF) return EOF;
    if (c == ';') {
      while (c != EOF && c != '\n') {
        in.get();
        c = in.peek();
      }
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    return c;
  }
}

bool atomDelim(int c) {
  return c == EOF || std::isspace(c) || c == '(' || c == ')' || c == ';';
}

Sexpr readAtom(std::istream& in) {
  Sexpr s;
  s.isAtom = true;
  int c = in.peek();
  if (c == '|') {
    in.get();
    for (;;) {
      c = in.get();
      if (c == EOF) throw std::runtime_error("unterminated |symbol|");
      if (c == '|') break;
      s.atom.push_back(static_cast<char>(c));
    }
    return s;
  }
  if (c == '"') {
    in.get();
    s.atom.push_back('"');
    for (;;) {
      c = in.get();
      if (c == EOF) throw std::runtime_error("unterminated string");
      if (c == '"') {
        if (in.peek() == '"') {  // escaped quote
          in.get();
          s.atom.push_back('"');
          continue;
        }
        break;
      }
      s.atom.push_back(static_cast<char>(c));
    }
    s.atom.push_back('"');
    return s;
  }
  while (!atomDelim(in.peek())) s.atom.push_back(static_cast<char>(in.get()));
  if (s.atom.empty()) throw std::runtime_error("empty atom");
  return s;
}

}  // namespace

std::optional<Sexpr> readSexpr(std::istream& in) {
  int c = skipLayout(in);
  if (c == EOF) return std::nullopt;
  if (c == ')') throw std::runtime_error("unexpected ')'");
  if (c != '(') return readAtom(in);
  in.get();
  Sexpr s;
  for (;;) {
    c = skipLayout(in);
    if (c == EOF) throw std::runtime_error("unterminated '('");
    if (c == ')') {
      in.get();
      return s;
    }
    auto kid = readSexpr(in);
    if (!kid) throw std::runtime_error("unterminated '('");
    s.kids.push_back(std::move(*kid));
  }
}

std::vector<Sexpr> parseAllSexprs(const std::string& text) {
  std::istringstream in(text);
  std::vector<Sexpr> out;
  while (auto s = readSexpr(in)) out.push_back(std::move(*s));
  return out;
}

}  // namespace presburger
