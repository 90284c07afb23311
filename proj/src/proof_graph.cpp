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

#include "epbes/proof_graph.hpp"

#include <algorithm>
#include <map>

#include "epbes/eval.hpp"

namespace epbes {

int ConcreteProofGraph::indexOf(const Signature& sig) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].sig == sig) return static_cast<int>(i);
  return -1;
}

ConcreteProofGraph extractConcrete(const SolvedPbes& solved, const Signature& sig,
                                   size_t budget, SolverSession& s) {
  const ClausePbes& c = solved.clauses;
  const Block& rootBlock = blockOf(solved.family, c, sig, s);
  int rootVertex = solved.game.vertexOf(rootBlock.id);
  if (!solved.solution.circleWins[rootVertex])
    throw Error("no proof graph: " + sig.str() + " is not won by the ∨-player");

  ConcreteProofGraph pg;
  std::map<Signature, int> index;
  std::vector<int> queue;
  auto intern = [&](const Signature& sg) {
    auto it = index.find(sg);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(pg.vertices.size());
    index[sg] = id;
    pg.vertices.push_back({sg, -1, {}});
    pg.succ.emplace_back();
    queue.push_back(id);
    return id;
  };
  intern(sig);

  for (size_t qi = 0; qi < queue.size(); ++qi) {
    if (pg.vertices.size() > budget) {
      pg.closed = false;
      for (size_t r = qi; r < queue.size(); ++r) pg.frontier.push_back(queue[r]);
      return pg;
    }
    int v = queue[qi];
    Signature cur = pg.vertices[v].sig;
    const Block& b = blockOf(solved.family, c, cur, s);
    int gv = solved.game.vertexOf(b.id);
    int target = solved.solution.strategy[gv];
    if (target < 0)
      throw InternalInconsistency("winning strategy undefined on " + cur.str());
    const Block& psi = solved.game.vertices[target];
    const ClauseEquation& eq = c.equations[psi.eq];
    const Clause& cl = eq.clauses[psi.clause];
    auto witness = secondaryWitness(psi.shape, cur.args, cl.constraint, s);
    if (!witness)
      throw InternalInconsistency("no witness for " + cur.str() + " in its ∧-block");
    pg.vertices[v].clause = psi.clause;
    pg.vertices[v].witness = *witness;
    Env env;
    for (size_t p = 0; p < eq.params.size(); ++p) env[eq.params[p].name] = cur.args[p];
    for (size_t p = 0; p < cl.exists.size(); ++p) env[cl.exists[p].name] = (*witness)[p];
    for (const auto& call : cl.calls) {
      Signature next;
      next.var = c.equations[call.target].name;
      for (const auto& arg : call.args) next.args.push_back(evalData(arg, env));
      int w = intern(next);
      auto& out = pg.succ[v];
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
  }
  pg.closed = true;
  return pg;
}

namespace {

/// Tarjan SCC, iterative.
std::vector<int> sccOf(const std::vector<std::vector<int>>& succ) {
  int n = static_cast<int>(succ.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> onStack(n, 0);
  int counter = 0, comps = 0;
  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    onStack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < succ[f.v].size()) {
        int w = succ[f.v][f.child++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          onStack[w] = 1;
          frames.push_back({w, 0});
        } else if (onStack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            onStack[w] = 0;
            comp[w] = comps;
            if (w == f.v) break;
          }
          ++comps;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comp;
}

/// A cycle through a vertex of `marked` inside the graph restricted to
/// `kept` vertices; returns such a vertex or -1.
int cycleThroughMarked(const std::vector<std::vector<int>>& succ,
                       const std::vector<char>& kept, const std::vector<char>& marked) {
  int n = static_cast<int>(succ.size());
  std::vector<std::vector<int>> sub(n);
  for (int v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    for (int w : succ[v])
      if (kept[w]) sub[v].push_back(w);
  }
  std::vector<int> comp = sccOf(sub);
  std::vector<int> compSize(n, 0);
  for (int v = 0; v < n; ++v)
    if (kept[v]) ++compSize[comp[v]];
  for (int v = 0; v < n; ++v) {
    if (!kept[v] || !marked[v]) continue;
    if (compSize[comp[v]] > 1) return v;
    for (int w : sub[v])
      if (w == v) return v;  // self-loop
  }
  return -1;
}

}  // namespace

std::optional<Violation> validateConcrete(const ConcreteProofGraph& pg,
                                          const ClausePbes& c) {
  int n = static_cast<int>(pg.vertices.size());

  // ranks per vertex; structural checks on annotations
  std::vector<int> ranks(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto& vx = pg.vertices[v];
    int eq = c.indexOf(vx.sig.var);
    if (eq < 0)
      return Violation{0, vx.sig.str(), "unknown predicate variable"};
    ranks[v] = c.rankOf(eq);
  }

  // condition 2: no cycle whose minimum rank is odd — equivalently, for
  // every odd rank r, no cycle through a rank-r vertex among vertices of
  // rank >= r
  int maxRank = 0;
  for (int v = 0; v < n; ++v) maxRank = std::max(maxRank, ranks[v]);
  for (int r = 1; r <= maxRank; r += 2) {
    std::vector<char> kept(n, 0), marked(n, 0);
    for (int v = 0; v < n; ++v) {
      kept[v] = ranks[v] >= r;
      marked[v] = ranks[v] == r;
    }
    int bad = cycleThroughMarked(pg.succ, kept, marked);
    if (bad >= 0)
      return Violation{2, pg.vertices[bad].sig.str(),
                       "cycle with odd minimum rank " + std::to_string(r)};
  }

  // condition 1: the annotated clause fires and its calls are covered
  for (int v = 0; v < n; ++v) {
    const auto& vx = pg.vertices[v];
    int eq = c.indexOf(vx.sig.var);
    const ClauseEquation& ce = c.equations[eq];
    if (vx.clause < 0 || vx.clause >= static_cast<int>(ce.clauses.size()))
      return Violation{1, vx.sig.str(), "missing or invalid clause annotation"};
    const Clause& cl = ce.clauses[vx.clause];
    if (vx.witness.size() != cl.exists.size())
      return Violation{1, vx.sig.str(), "witness arity mismatch"};
    if (vx.sig.args.size() != ce.params.size())
      return Violation{1, vx.sig.str(), "signature arity mismatch"};
    Env env;
    for (size_t p = 0; p < ce.params.size(); ++p) env[ce.params[p].name] = vx.sig.args[p];
    for (size_t p = 0; p < cl.exists.size(); ++p) {
      if (vx.witness[p].sort != cl.exists[p].sort)
        return Violation{1, vx.sig.str(), "witness sort mismatch"};
      env[cl.exists[p].name] = vx.witness[p];
    }
    if (!evalBool(cl.constraint, env))
      return Violation{1, vx.sig.str(), "clause constraint evaluates to false"};
    for (const auto& call : cl.calls) {
      Signature want;
      want.var = c.equations[call.target].name;
      for (const auto& arg : call.args) want.args.push_back(evalData(arg, env));
      bool found = false;
      for (int w : pg.succ[v])
        if (pg.vertices[w].sig == want) {
          found = true;
          break;
        }
      if (!found)
        return Violation{1, vx.sig.str(), "postset misses call target " + want.str()};
    }
  }
  return std::nullopt;
}

int ReducedStrategyGraph::localOf(int gameVertex) const {
  for (size_t i = 0; i < gameVertices.size(); ++i)
    if (gameVertices[i] == gameVertex) return static_cast<int>(i);
  return -1;
}

ReducedStrategyGraph strategySubgraph(const SolvedPbes& solved, const Signature& sig,
                                      SolverSession& s) {
  const Block& rootBlock = blockOf(solved.family, solved.clauses, sig, s);
  int root = solved.game.vertexOf(rootBlock.id);
  if (!solved.solution.circleWins[root])
    throw Error("no strategy subgraph: " + sig.str() + " is not won by the ∨-player");
  ReducedStrategyGraph rsg;
  std::map<int, int> local;
  std::vector<int> queue;
  auto intern = [&](int gv) {
    auto it = local.find(gv);
    if (it != local.end()) return it->second;
    int id = static_cast<int>(rsg.gameVertices.size());
    local[gv] = id;
    rsg.gameVertices.push_back(gv);
    rsg.succ.emplace_back();
    queue.push_back(gv);
    return id;
  };
  rsg.root = intern(root);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int gv = queue[qi];
    int lv = local[gv];
    if (solved.game.game.circleOwned[gv]) {
      int t = solved.solution.strategy[gv];
      if (t >= 0) rsg.succ[lv].push_back(intern(t));
    } else {
      for (int w : solved.game.game.succ[gv]) rsg.succ[lv].push_back(intern(w));
    }
  }
  return rsg;
}

bool edgeIsUniform(const ClausePbes& c, const Block& src, const Block& dst,
                   SolverSession& s) {
  if (!src.isAnd && dst.isAnd) {
    // every v in src must have a pair (v,w) in dst satisfying φ_ik
    const ClauseEquation& eq = c.equations[dst.eq];
    const Clause& cl = eq.clauses[dst.clause];
    DataExprPtr inner = dx::andE({dst.shape.body, cl.constraint});
    for (auto it = cl.exists.rbegin(); it != cl.exists.rend(); ++it)
      inner = dx::exists(it->name, it->sort, inner);
    SetExpr bad{eq.params, {}, simplifyData(dx::andE({src.shape.body, dx::notE(inner)}))};
    return isEmpty(bad, s);
  }
  if (src.isAnd && !dst.isAnd) {
    // every (v,w) in src must be sent into dst by some call
    const ClauseEquation& eq = c.equations[src.eq];
    const Clause& cl = eq.clauses[src.clause];
    std::vector<DataExprPtr> hits;
    for (const auto& call : cl.calls) {
      if (call.target != dst.eq) continue;
      std::map<std::string, DataExprPtr> sub;
      const auto& params = c.equations[dst.eq].params;
      for (size_t i = 0; i < params.size(); ++i) sub[params[i].name] = call.args[i];
      hits.push_back(substituteData(dst.shape.body, sub));
    }
    SetExpr bad{eq.params, cl.exists,
                simplifyData(dx::andE({src.shape.body, dx::notE(dx::orE(hits))}))};
    return isEmpty(bad, s);
  }
  throw Error("edge between same-kind blocks");
}

std::optional<Violation> validateReducedStrategy(const ReducedStrategyGraph& rsg,
                                                 const SolvedPbes& solved,
                                                 SolverSession& s) {
  const ParityGame& game = solved.game.game;
  int n = static_cast<int>(rsg.gameVertices.size());

  for (int lv = 0; lv < n; ++lv) {
    int gv = rsg.gameVertices[lv];
    if (!solved.solution.circleWins[gv])
      return Violation{0, blockLabel(solved, gv), "vertex outside circle's winning region"};
    if (game.circleOwned[gv] && rsg.succ[lv].size() != 1)
      return Violation{0, blockLabel(solved, gv), "∨-vertex without a unique strategy edge"};
  }

  // every cycle must have even maximum priority
  int maxPrio = 0;
  for (int lv = 0; lv < n; ++lv)
    maxPrio = std::max(maxPrio, game.priority[rsg.gameVertices[lv]]);
  for (int p = 1; p <= maxPrio; p += 2) {
    std::vector<char> kept(n, 0), marked(n, 0);
    for (int lv = 0; lv < n; ++lv) {
      int prio = game.priority[rsg.gameVertices[lv]];
      kept[lv] = prio <= p;
      marked[lv] = prio == p;
    }
    int bad = cycleThroughMarked(rsg.succ, kept, marked);
    if (bad >= 0)
      return Violation{2, blockLabel(solved, rsg.gameVertices[bad]),
                       "cycle with odd maximum priority " + std::to_string(p)};
  }

  for (int lv = 0; lv < n; ++lv) {
    const Block& src = solved.game.vertices[rsg.gameVertices[lv]];
    for (int lw : rsg.succ[lv]) {
      const Block& dst = solved.game.vertices[rsg.gameVertices[lw]];
      if (!edgeIsUniform(solved.clauses, src, dst, s))
        return Violation{1, blockLabel(solved, rsg.gameVertices[lv]),
                         "edge is not uniformly enabled"};
    }
  }
  return std::nullopt;
}

}  // namespace epbes
