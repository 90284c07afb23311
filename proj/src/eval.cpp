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

#include "epbes/eval.hpp"

namespace epbes {

Value evalData(const DataExpr& e, const Env& env) {
  switch (e.op) {
    case DataOp::NatConst:
      return Value::ofNat(e.k);
    case DataOp::BoolConst:
      return Value::ofBool(e.bval);
    case DataOp::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case DataOp::Add:
      return Value::ofNat(evalData(*e.args[0], env).nat + evalData(*e.args[1], env).nat);
    case DataOp::Monus: {
      std::uint64_t a = evalData(*e.args[0], env).nat;
      std::uint64_t b = evalData(*e.args[1], env).nat;
      return Value::ofNat(a >= b ? a - b : 0);
    }
    case DataOp::MulConst:
      return Value::ofNat(e.k * evalData(*e.args[0], env).nat);
    case DataOp::ModConst:
      return Value::ofNat(evalData(*e.args[0], env).nat % e.k);
    case DataOp::Eq:
    case DataOp::Ne: {
      Value a = evalData(*e.args[0], env);
      Value b = evalData(*e.args[1], env);
      bool eq = a == b;
      return Value::ofBool(e.op == DataOp::Eq ? eq : !eq);
    }
    case DataOp::Lt:
    case DataOp::Le:
    case DataOp::Gt:
    case DataOp::Ge: {
      std::uint64_t a = evalData(*e.args[0], env).nat;
      std::uint64_t b = evalData(*e.args[1], env).nat;
      switch (e.op) {
        case DataOp::Lt: return Value::ofBool(a < b);
        case DataOp::Le: return Value::ofBool(a <= b);
        case DataOp::Gt: return Value::ofBool(a > b);
        default: return Value::ofBool(a >= b);
      }
    }
    case DataOp::Not:
      return Value::ofBool(!evalData(*e.args[0], env).b);
    case DataOp::And: {
      for (const auto& a : e.args)
        if (!evalData(*a, env).b) return Value::ofBool(false);
      return Value::ofBool(true);
    }
    case DataOp::Or: {
      for (const auto& a : e.args)
        if (evalData(*a, env).b) return Value::ofBool(true);
      return Value::ofBool(false);
    }
    case DataOp::Exists:
      throw EvalError("cannot evaluate a quantified body");
  }
  throw EvalError("malformed expression");
}

Value evalData(const DataExprPtr& e, const Env& env) { return evalData(*e, env); }

bool evalBool(const DataExprPtr& e, const Env& env) {
  Value v = evalData(*e, env);
  if (v.sort != Sort::Bool) throw EvalError("expected a Boolean expression");
  return v.b;
}

}  // namespace epbes
