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

#include "epbes/ast.hpp"

namespace epbes {

/// Text in the surface grammar; reparsing yields a structurally
/// identical tree. Recognizes `e mod 2 = 0/1` and prints even(e)/odd(e).
std::string printDataExpr(const DataExprPtr& e);
std::string printFormula(const FormulaPtr& f);
std::string printPbes(const Pbes& p);

}  // namespace epbes
