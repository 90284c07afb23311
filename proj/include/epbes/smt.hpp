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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "epbes/ast.hpp"

namespace epbes {

class SolverUnknown : public Error {
 public:
  SolverUnknown(const std::string& msg, std::string script)
      : Error(msg), script(std::move(script)) {}
  std::string script;
};

class SolverCrash : public Error {
 public:
  using Error::Error;
};

struct SmtConfig {
  std::vector<std::string> command;  // argv of the child solver
  int timeoutMs = 30000;
};

/// Default child-solver command: `epbes-smt` next to the running
/// executable when present, otherwise resolved through PATH.
SmtConfig defaultSmtConfig();

enum class SmtVerdict { Sat, Unsat, Unknown };

struct SmtResult {
  SmtVerdict verdict = SmtVerdict::Unknown;
  std::map<std::string, Value> model;  // populated for Sat when requested
};

/// SMT-LIB2 rendering of a data expression. Nat variables are rendered
/// as Int; quantified Nat variables carry an explicit >= 0 bound.
std::string encodeSmtTerm(const DataExprPtr& e);

/// One satisfiability question: free typed constants plus an assertion.
/// Nat constants get a `>= 0` side constraint.
struct SmtQuery {
  std::vector<Param> consts;
  DataExprPtr assertion;

  std::string script() const;  // declarations + (assert ...)
};

/// A child SMT solver process, one in-flight query at a time. Verdicts
/// (and models) are cached per script; the child is restarted once after
/// a crash with the prelude replayed.
class SolverSession {
 public:
  explicit SolverSession(SmtConfig config);
  ~SolverSession();
  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  SmtResult check(const SmtQuery& q, bool wantModel = false);

  std::uint64_t queryCount() const { return queries_; }
  std::uint64_t solverCallCount() const { return calls_; }
  double totalSeconds() const { return seconds_; }
  const std::string& lastScript() const { return lastScript_; }

 private:
  void start();
  void stop();
  void writeAll(const std::string& s);
  std::string readLine(std::int64_t deadlineMs);
  std::string readBalanced(std::int64_t deadlineMs);
  bool fillBuffer(std::int64_t deadlineMs);
  SmtResult runQuery(const std::string& script, bool wantModel);

  SmtConfig config_;
  int childIn_ = -1;
  int childOut_ = -1;
  long pid_ = -1;
  std::string buf_;
  std::uint64_t queries_ = 0;
  std::uint64_t calls_ = 0;
  double seconds_ = 0.0;
  std::string lastScript_;
  struct CacheEntry {
    SmtVerdict verdict;
    bool hasModel;
    std::map<std::string, Value> model;
  };
  std::unordered_map<std::string, CacheEntry> cache_;
};

/// Shorthand used by the symbolic-set layer: Unknown raises
/// SolverUnknown carrying the offending script.
SmtVerdict smtCheckVerdict(SolverSession& s, const SmtQuery& q);

}  // namespace epbes
