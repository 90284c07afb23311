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

#include <map>
#include <string>

#include "epbes/ast.hpp"

namespace epbes {

using Env = std::map<std::string, Value>;

/// Ground evaluation of a quantifier-free data expression. Monus clamps
/// at 0. Throws EvalError on unbound variables or quantified bodies.
Value evalData(const DataExpr& e, const Env& env);
Value evalData(const DataExprPtr& e, const Env& env);

bool evalBool(const DataExprPtr& e, const Env& env);

}  // namespace epbes
