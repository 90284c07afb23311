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

#include "epbes/explicit_game.hpp"

#include <map>

#include "epbes/eval.hpp"

namespace epbes {

const char* oracleVerdictName(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::True: return "TRUE";
    case OracleVerdict::False: return "FALSE";
    default: return "UNKNOWN";
  }
}

namespace {

/// Witness tuples ordered by maximum component, then lexicographically.
class WitnessEnumerator {
 public:
  WitnessEnumerator(const std::vector<Param>& params, std::uint64_t witnessCap) {
    for (const auto& p : params)
      caps_.push_back(p.sort == Sort::Nat ? witnessCap : 1);
    sorts_ = params;
  }

  /// Calls fn for every tuple; fn returns false to stop early.
  template <typename Fn>
  void forEach(Fn&& fn) const {
    if (sorts_.empty()) {
      fn(std::vector<Value>{});
      return;
    }
    std::uint64_t maxCap = 0;
    for (auto c : caps_) maxCap = std::max(maxCap, c);
    std::vector<std::uint64_t> tuple(sorts_.size(), 0);
    for (std::uint64_t m = 0; m <= maxCap; ++m)
      if (!lexRec(tuple, 0, m, false, fn)) return;
  }

 private:
  template <typename Fn>
  bool lexRec(std::vector<std::uint64_t>& tuple, size_t i, std::uint64_t m,
              bool sawMax, Fn&& fn) const {
    if (i == tuple.size()) {
      if (!sawMax) return true;  // tuple already produced for a smaller m
      std::vector<Value> vals;
      vals.reserve(tuple.size());
      for (size_t j = 0; j < tuple.size(); ++j)
        vals.push_back(sorts_[j].sort == Sort::Nat ? Value::ofNat(tuple[j])
                                                   : Value::ofBool(tuple[j] != 0));
      return fn(vals);
    }
    std::uint64_t hi = std::min(caps_[i], m);
    bool canReachMax = false;  // can a later component hit m?
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (caps_[j] >= m) canReachMax = true;
    for (std::uint64_t v = 0; v <= hi; ++v) {
      tuple[i] = v;
      bool nowMax = sawMax || v == m;
      if (!nowMax && !canReachMax && v != m) continue;
      if (!lexRec(tuple, i + 1, m, nowMax, fn)) return false;
    }
    return true;
  }

  std::vector<Param> sorts_;
  std::vector<std::uint64_t> caps_;
};

}  // namespace

ExplicitGame explore(const ClausePbes& c, const Signature& sig, const ExplicitBounds& b) {
  if (b.vertexCap == 0) throw Error("vertex cap must be positive");
  ExplicitGame g;
  g.priorityBase = c.priorityBase();

  std::map<Signature, int> orIndex;
  std::vector<std::vector<int>> orSucc;   // or -> and ids
  std::vector<std::vector<int>> andSucc;  // and -> or ids
  std::vector<int> queue;
  bool aborted = false;

  auto internOr = [&](const Signature& sg) -> int {
    auto it = orIndex.find(sg);
    if (it != orIndex.end()) return it->second;
    if (g.size() >= b.vertexCap) {
      aborted = true;
      return -1;
    }
    int id = static_cast<int>(g.orVertices.size());
    orIndex[sg] = id;
    g.orVertices.push_back({sg, false});
    orSucc.emplace_back();
    queue.push_back(id);
    return id;
  };

  internOr(sig);
  g.root = 0;
  size_t expanded = 0;

  for (size_t qi = 0; qi < queue.size() && !aborted; ++qi, expanded = qi) {
    int v = queue[qi];
    Signature cur = g.orVertices[v].sig;
    int eqIdx = c.indexOf(cur.var);
    if (eqIdx < 0) throw Error("unknown predicate variable '" + cur.var + "'");
    const ClauseEquation& eq = c.equations[eqIdx];

    bool beyondCap = false;
    for (const Value& val : cur.args)
      if (val.sort == Sort::Nat && val.nat > b.valueCap) beyondCap = true;
    if (beyondCap) {
      g.orVertices[v].frontier = true;
      g.closed = false;
      continue;
    }

    Env env;
    for (size_t p = 0; p < eq.params.size(); ++p) env[eq.params[p].name] = cur.args[p];

    for (size_t k = 0; k < eq.clauses.size() && !aborted; ++k) {
      const Clause& cl = eq.clauses[k];
      WitnessEnumerator wit(cl.exists, b.witnessCap);
      wit.forEach([&](const std::vector<Value>& w) {
        Env full = env;
        for (size_t p = 0; p < cl.exists.size(); ++p) full[cl.exists[p].name] = w[p];
        if (!evalBool(cl.constraint, full)) return true;
        std::vector<int> succs;
        for (const auto& call : cl.calls) {
          Signature next;
          next.var = c.equations[call.target].name;
          for (const auto& arg : call.args) next.args.push_back(evalData(arg, full));
          int id = internOr(next);
          if (id < 0) return false;  // vertex cap
          succs.push_back(id);
        }
        if (g.size() >= b.vertexCap) {
          aborted = true;
          return false;
        }
        int andId = static_cast<int>(g.andVertices.size());
        g.andVertices.push_back({eqIdx, static_cast<int>(k), w});
        andSucc.push_back(std::move(succs));
        orSucc[v].push_back(andId);
        return true;
      });
    }
    if (aborted) {
      // the current vertex's enumeration is incomplete: make it stuck
      orSucc[v].clear();
      g.orVertices[v].frontier = true;
    }
  }

  if (aborted) {
    g.closed = false;
    for (size_t qi = expanded; qi < queue.size(); ++qi) {
      g.orVertices[queue[qi]].frontier = true;
      orSucc[queue[qi]].clear();
    }
  }

  // assemble the parity game: ∨ first, then ∧
  int nOr = static_cast<int>(g.orVertices.size());
  int total = nOr + static_cast<int>(g.andVertices.size());
  g.game.priority.resize(total);
  g.game.circleOwned.resize(total);
  g.game.succ.resize(total);
  std::vector<bool> muSeq = c.muSequence();
  for (int v = 0; v < nOr; ++v) {
    int eqIdx = c.indexOf(g.orVertices[v].sig.var);
    g.game.priority[v] = g.priorityBase - rankOfIndex(muSeq, eqIdx);
    g.game.circleOwned[v] = true;
    for (int a : orSucc[v]) g.game.succ[v].push_back(nOr + a);
  }
  for (size_t a = 0; a < g.andVertices.size(); ++a) {
    int v = nOr + static_cast<int>(a);
    g.game.priority[v] = 0;
    g.game.circleOwned[v] = false;
    g.game.succ[v] = andSucc[a];
  }
  return g;
}

OracleVerdict solveExplicit(const ExplicitGame& g) {
  ParitySolution sol = solveParity(g.game);
  if (sol.circleWins[g.root]) return OracleVerdict::True;
  return g.closed ? OracleVerdict::False : OracleVerdict::Unknown;
}

}  // namespace epbes
