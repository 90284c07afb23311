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

#include <string>
#include <string_view>

#include "epbes/ast.hpp"

namespace epbes {

class ParseError : public Error {
 public:
  ParseError(std::string msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Parses the PBES surface grammar. The result is well-formed and
/// well-sorted; universal quantifiers are accepted here and rejected by
/// the normalizer.
Pbes parsePbes(std::string_view text);

/// `X1(2)` or `M(0, 4)`; values are naturals or true/false.
Signature parseQuery(std::string_view text);

/// Validates a query against the PBES: bound variable, arity, sorts.
void checkQuery(const Pbes& p, const Signature& sig);

}  // namespace epbes
