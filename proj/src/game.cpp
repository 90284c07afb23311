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

#include "epbes/game.hpp"

#include <algorithm>

namespace epbes {

int ReducedGame::vertexOf(BlockId id) const {
  auto it = vertexOfBlock.find(id);
  if (it == vertexOfBlock.end()) throw Error("unknown block id");
  return it->second;
}

ReducedGame buildReducedGame(const PartitionFamily& P, const ClausePbes& c,
                             SolverSession& s) {
  ReducedGame g;
  for (const auto& phis : P.phi)
    for (const Block& b : phis) g.vertices.push_back(b);
  for (const auto& eqPsis : P.psi)
    for (const auto& psis : eqPsis)
      for (const Block& b : psis) g.vertices.push_back(b);
  std::sort(g.vertices.begin(), g.vertices.end(),
            [](const Block& a, const Block& b) { return a.id < b.id; });
  for (size_t i = 0; i < g.vertices.size(); ++i)
    g.vertexOfBlock[g.vertices[i].id] = static_cast<int>(i);

  g.priorityBase = c.priorityBase();
  int n = static_cast<int>(g.vertices.size());
  g.game.priority.resize(n);
  g.game.circleOwned.resize(n);
  g.game.succ.assign(n, {});
  for (int v = 0; v < n; ++v) {
    const Block& b = g.vertices[v];
    g.game.circleOwned[v] = !b.isAnd;
    g.game.priority[v] = b.isAnd ? 0 : g.priorityBase - c.rankOf(b.eq);
  }

  // ∨ → ∧ edges
  for (size_t i = 0; i < c.equations.size(); ++i) {
    const auto& eq = c.equations[i];
    for (const Block& phi : P.phi[i]) {
      int src = g.vertexOf(phi.id);
      for (size_t k = 0; k < eq.clauses.size(); ++k) {
        const Clause& cl = eq.clauses[k];
        SetExpr phiPair{eq.params, cl.exists, phi.shape.body};
        SetExpr constraint{eq.params, cl.exists, cl.constraint};
        for (const Block& psi : P.psi[i][k]) {
          SetExpr witness = meet(meet(phiPair, constraint), psi.shape);
          if (!isEmpty(witness, s))
            g.game.succ[src].push_back(g.vertexOf(psi.id));
        }
      }
    }
  }

  // ∧ → ∨ edges (one edge per target block, over all calls)
  for (size_t i = 0; i < c.equations.size(); ++i) {
    const auto& eq = c.equations[i];
    for (size_t k = 0; k < eq.clauses.size(); ++k) {
      const Clause& cl = eq.clauses[k];
      for (const Block& psi : P.psi[i][k]) {
        int src = g.vertexOf(psi.id);
        std::vector<int> targets;
        for (size_t j = 0; j < cl.calls.size(); ++j) {
          for (const Block& phi : P.phi[cl.calls[j].target]) {
            SetExpr image = splitterG(c, static_cast<int>(i), static_cast<int>(k),
                                      static_cast<int>(j), phi);
            if (!isEmpty(meet(psi.shape, image), s))
              targets.push_back(g.vertexOf(phi.id));
          }
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        g.game.succ[src] = std::move(targets);
      }
    }
  }
  for (auto& succ : g.game.succ) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return g;
}

ReducedGame pruneReachable(const ReducedGame& g, const PartitionFamily& P,
                           const ClausePbes& c, const Signature& root, SolverSession& s) {
  int start = g.vertexOf(blockOf(P, c, root, s).id);
  std::vector<char> seen(g.vertices.size(), 0);
  std::vector<int> queue{start};
  seen[start] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (int w : g.game.succ[queue[qi]])
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  ReducedGame out;
  out.priorityBase = g.priorityBase;
  std::vector<int> remap(g.vertices.size(), -1);
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (!seen[v]) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(g.vertices[v]);
    out.game.priority.push_back(g.game.priority[v]);
    out.game.circleOwned.push_back(g.game.circleOwned[v]);
  }
  out.game.succ.resize(out.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    if (!seen[v]) continue;
    for (int w : g.game.succ[v]) out.game.succ[remap[v]].push_back(remap[w]);
  }
  for (size_t i = 0; i < out.vertices.size(); ++i)
    out.vertexOfBlock[out.vertices[i].id] = static_cast<int>(i);
  return out;
}

bool SolvedPbes::query(const Signature& sig, SolverSession& s) const {
  const Block& b = blockOf(family, clauses, sig, s);
  return solution.circleWins[game.vertexOf(b.id)];
}

PipelineResult runPipeline(const Pbes& p, const PipelineConfig& cfg, SolverSession& s) {
  ClausePbes clauses = toClauseForm(p, cfg.maxClauses);
  SaturationResult sat = saturate(clauses, cfg.maxIter, s, cfg.keepTrace, cfg.hook);
  PipelineResult res;
  res.iterations = sat.iterations;
  if (!sat.saturated) {
    res.diverged = true;
    res.partial = std::move(sat);
    return res;
  }
  SolvedPbes solved;
  solved.clauses = std::move(clauses);
  solved.family = std::move(sat.family);
  solved.trace = std::move(sat.trace);
  solved.iterations = sat.iterations;
  solved.game = buildReducedGame(solved.family, solved.clauses, s);
  solved.solution = solveParity(solved.game.game);
  res.solved = std::move(solved);
  return res;
}

Verdict membership(const Pbes& p, const Signature& sig, const PipelineConfig& cfg,
                   SolverSession& s) {
  PipelineResult r = runPipeline(p, cfg, s);
  if (r.diverged) return Verdict::Diverged;
  return r.solved->query(sig, s) ? Verdict::True : Verdict::False;
}

std::string blockLabel(const SolvedPbes& solved, int vertex) {
  const Block& b = solved.game.vertices[vertex];
  std::string name = solved.clauses.equations[b.eq].name;
  if (b.isAnd) name += ".k" + std::to_string(b.clause + 1);
  return name + "#" + std::to_string(b.id);
}

}  // namespace epbes
