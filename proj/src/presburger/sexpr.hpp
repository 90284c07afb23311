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

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace presburger {

struct Sexpr {
  bool isAtom = false;
  std::string atom;          // |..| quoting already stripped
  std::vector<Sexpr> kids;

  std::string str() const;
};

/// Reads one complete s-expression, skipping whitespace and ;-comments.
/// Returns nullopt at end of input. Throws std::runtime_error on
/// malformed input.
std::optional<Sexpr> readSexpr(std::istream& in);

std::vector<Sexpr> parseAllSexprs(const std::string& text);

}  // namespace presburger
