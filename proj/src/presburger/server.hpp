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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "presburger.hpp"
#include "sexpr.hpp"

namespace presburger {

/// SMT-LIB2 front end over the linear-integer-arithmetic engine.
/// Supported commands: set-logic, set-option, set-info, declare-const,
/// declare-fun (arity 0), assert, push, pop, check-sat, get-model, echo,
/// reset, exit.
class SmtServer {
 public:
  /// Handles one command; returns the response text ("" when silent).
  std::string evalCommand(const Sexpr& cmd);

  /// Reads commands from `in` until EOF or (exit), writing responses
  /// (flushed per command) to `out`.
  void run(std::istream& in, std::ostream& out);

  bool exited() const { return exited_; }

 private:
  struct Decl {
    std::string name;
    bool isInt = true;
    int varId = -1;
    bool shadowed = false;
    Decl* previous = nullptr;
  };

  struct ModelEntry {
    std::string name;
    bool isInt = true;
    Int value = 0;
  };

  NPtr translateBool(const Sexpr& s, std::vector<std::pair<std::string, Decl>>& scope);
  NPtr relateEquals(const Sexpr& s, std::vector<std::pair<std::string, Decl>>& scope);

  struct IntCase {
    NPtr guard;
    std::vector<int> fresh;
    LinTerm term;
  };

  std::vector<IntCase> translateInt(const Sexpr& s,
                                    std::vector<std::pair<std::string, Decl>>& scope);

  bool inferIsInt(const Sexpr& s,
                  const std::vector<std::pair<std::string, Decl>>& scope) const;

  const Decl* lookup(const std::string& name,
                     const std::vector<std::pair<std::string, Decl>>& scope) const;

  std::string doCheckSat();
  std::string doGetModel() const;
  void doReset();

  std::vector<std::vector<Decl>> declLevels_{1};
  std::vector<std::vector<NPtr>> assertLevels_{1};
  int nextVar_ = 0;
  int nextFresh_ = 1 << 24;  // fresh ids never collide with declarations
  std::optional<std::vector<ModelEntry>> model_;
  bool exited_ = false;
};

}  // namespace presburger
