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

#include "epbes/refine.hpp"

namespace epbes {

size_t PartitionFamily::totalBlocks() const {
  size_t n = 0;
  for (const auto& p : phi) n += p.size();
  for (const auto& eq : psi)
    for (const auto& k : eq) n += k.size();
  return n;
}

PartitionFamily initialFamily(const ClausePbes& c) {
  PartitionFamily P;
  P.phi.resize(c.equations.size());
  P.psi.resize(c.equations.size());
  for (size_t i = 0; i < c.equations.size(); ++i) {
    const auto& eq = c.equations[i];
    Block b;
    b.id = P.freshId();
    b.isAnd = false;
    b.eq = static_cast<int>(i);
    b.shape = fullSet(eq.params);
    P.phi[i].push_back(std::move(b));
    P.psi[i].resize(eq.clauses.size());
    for (size_t k = 0; k < eq.clauses.size(); ++k) {
      Block a;
      a.id = P.freshId();
      a.isAnd = true;
      a.eq = static_cast<int>(i);
      a.clause = static_cast<int>(k);
      a.shape = fullSet(eq.params, eq.clauses[k].exists);
      P.psi[i][k].push_back(std::move(a));
    }
  }
  return P;
}

SetExpr splitterF(const ClausePbes& c, int i, int k, const Block& psiBlock) {
  const auto& eq = c.equations[i];
  const Clause& cl = eq.clauses[k];
  SetExpr constraint{eq.params, cl.exists, cl.constraint};
  return existsProject(meet(constraint, psiBlock.shape));
}

SetExpr splitterG(const ClausePbes& c, int i, int k, int j, const Block& phiBlock) {
  const auto& eq = c.equations[i];
  const Clause& cl = eq.clauses[k];
  const Clause::CallRef& call = cl.calls[j];
  return substituteInto(phiBlock.shape, eq.params, cl.exists, call.args);
}

void divide(std::vector<Block>& blocks, const SetExpr& splitter, SolverSession& s,
            PartitionFamily& family, std::vector<SplitEvent>* trace,
            const SplitEvent& proto) {
  if (splitter.body->op == DataOp::BoolConst) return;  // full or empty splitter
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (Block& b : blocks) {
    SetExpr inter = meet(b.shape, splitter);
    if (isEmpty(inter, s)) {
      out.push_back(std::move(b));
      continue;
    }
    SetExpr rest = meet(b.shape, complement(splitter));
    if (isEmpty(rest, s)) {
      out.push_back(std::move(b));
      continue;
    }
    Block left = b;
    left.id = family.freshId();
    left.shape = std::move(inter);
    Block right = b;
    right.id = family.freshId();
    right.shape = std::move(rest);
    if (trace) {
      SplitEvent ev = proto;
      ev.parent = b.id;
      ev.left = left.id;
      ev.right = right.id;
      trace->push_back(ev);
    }
    out.push_back(std::move(left));
    out.push_back(std::move(right));
  }
  blocks = std::move(out);
}

void stepHD(const ClausePbes& c, PartitionFamily& P, SolverSession& s,
            std::vector<SplitEvent>* trace) {
  for (size_t i = 0; i < c.equations.size(); ++i) {
    for (size_t k = 0; k < c.equations[i].clauses.size(); ++k) {
      // snapshot: dividing Φ_i does not touch Ψ_ik
      std::vector<Block> psiBlocks = P.psi[i][k];
      for (const Block& psi : psiBlocks) {
        SetExpr f = splitterF(c, static_cast<int>(i), static_cast<int>(k), psi);
        SplitEvent proto;
        proto.iteration = P.iterations;
        proto.dividedAnd = false;
        proto.eq = static_cast<int>(i);
        proto.clause = static_cast<int>(k);
        proto.splitterBlock = psi.id;
        divide(P.phi[i], f, s, P, trace, proto);
      }
    }
  }
}

void stepHB(const ClausePbes& c, PartitionFamily& P, SolverSession& s,
            std::vector<SplitEvent>* trace) {
  for (size_t i = 0; i < c.equations.size(); ++i) {
    for (size_t k = 0; k < c.equations[i].clauses.size(); ++k) {
      const Clause& cl = c.equations[i].clauses[k];
      for (size_t j = 0; j < cl.calls.size(); ++j) {
        int target = cl.calls[j].target;
        std::vector<Block> phiBlocks = P.phi[target];
        for (const Block& phi : phiBlocks) {
          SetExpr g = splitterG(c, static_cast<int>(i), static_cast<int>(k),
                                static_cast<int>(j), phi);
          SplitEvent proto;
          proto.iteration = P.iterations;
          proto.dividedAnd = true;
          proto.eq = static_cast<int>(i);
          proto.clause = static_cast<int>(k);
          proto.call = static_cast<int>(j);
          proto.splitterBlock = phi.id;
          divide(P.psi[i][k], g, s, P, trace, proto);
        }
      }
    }
  }
}

SaturationResult saturate(const ClausePbes& c, int maxIter, SolverSession& s,
                          bool keepTrace, const IterationHook& hook) {
  SaturationResult res;
  res.family = initialFamily(c);
  std::vector<SplitEvent>* trace = keepTrace ? &res.trace : nullptr;
  for (int iter = 1; iter <= maxIter; ++iter) {
    size_t before = res.family.totalBlocks();
    res.family.iterations = iter;
    stepHD(c, res.family, s, trace);
    stepHB(c, res.family, s, trace);
    if (hook) hook(res.family, iter);
    res.iterations = iter;
    if (res.family.totalBlocks() == before) {
      res.saturated = true;
      return res;
    }
  }
  res.saturated = false;
  return res;
}

const Block& blockOf(const PartitionFamily& P, const ClausePbes& c, const Signature& sig,
                     SolverSession& s) {
  int i = c.indexOf(sig.var);
  if (i < 0) throw Error("unknown predicate variable '" + sig.var + "'");
  for (const Block& b : P.phi[i])
    if (contains(b.shape, sig.args, s)) return b;
  throw Error("no block contains " + sig.str() + " (partition invariant violated)");
}

}  // namespace epbes
