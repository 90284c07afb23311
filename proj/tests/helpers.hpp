// Shared test utilities: fixture loading, solver sessions against the
// bundled SMT server, a finite denotational evaluator for mod-k systems,
// a brute-force parity oracle, and random system generators.

#pragma once

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "epbes/enf.hpp"
#include "epbes/eval.hpp"
#include "epbes/parity.hpp"
#include "epbes/parser.hpp"
#include "epbes/smt.hpp"

namespace testutil {

inline std::string fixturePath(const std::string& name) {
  return std::string(EPBES_FIXTURE_DIR) + "/" + name;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline epbes::Pbes loadFixture(const std::string& name) {
  return epbes::parsePbes(readFile(fixturePath(name)));
}

inline epbes::SmtConfig testSmtConfig() {
  epbes::SmtConfig cfg;
  cfg.command = {EPBES_SMT_BIN};
  cfg.timeoutMs = 30000;
  return cfg;
}

// ---------------------------------------------------------------------
// Finite denotational evaluator: exact nested-fixpoint semantics for
// systems whose values all stay below `bound` (mod-k arithmetic). The
// reference answer for everything downstream.
class FiniteSemantics {
 public:
  FiniteSemantics(const epbes::Pbes& p, std::uint64_t bound) : p_(p), bound_(bound) {
    interp_.resize(p.equations.size());
    std::map<int, Interp> env;
    solve(0, env);
  }

  bool holds(const epbes::Signature& sig) const {
    int i = p_.indexOf(sig.var);
    REQUIRE(i >= 0);
    return interp_[i].count(sig.args) > 0;
  }

 private:
  using Tuple = std::vector<epbes::Value>;
  using Interp = std::set<Tuple>;

  std::vector<Tuple> domain(int eq) const {
    using namespace epbes;
    std::vector<Tuple> dom{{}};
    for (const auto& prm : p_.equations[eq].params) {
      std::vector<Tuple> next;
      for (const auto& t : dom) {
        if (prm.sort == Sort::Nat) {
          for (std::uint64_t v = 0; v < bound_; ++v) {
            Tuple u = t;
            u.push_back(Value::ofNat(v));
            next.push_back(std::move(u));
          }
        } else {
          for (bool b : {false, true}) {
            Tuple u = t;
            u.push_back(Value::ofBool(b));
            next.push_back(std::move(u));
          }
        }
      }
      dom = std::move(next);
    }
    return dom;
  }

  bool evalFormula(const epbes::FormulaPtr& f, epbes::Env& env,
                   const std::map<int, Interp>& interp) const {
    using namespace epbes;
    switch (f->op) {
      case FormulaOp::Data:
        return evalBool(f->data, env);
      case FormulaOp::AndF:
        return evalFormula(f->kids[0], env, interp) &&
               evalFormula(f->kids[1], env, interp);
      case FormulaOp::OrF:
        return evalFormula(f->kids[0], env, interp) ||
               evalFormula(f->kids[1], env, interp);
      case FormulaOp::ExistsF:
      case FormulaOp::ForallF: {
        bool isExists = f->op == FormulaOp::ExistsF;
        auto saved = env.find(f->name);
        std::optional<Value> old;
        if (saved != env.end()) old = saved->second;
        bool result = !isExists;
        if (f->varSort == Sort::Nat) {
          for (std::uint64_t v = 0; v < bound_; ++v) {
            env[f->name] = Value::ofNat(v);
            bool b = evalFormula(f->kids[0], env, interp);
            if (isExists && b) {
              result = true;
              break;
            }
            if (!isExists && !b) {
              result = false;
              break;
            }
          }
        } else {
          for (bool v : {false, true}) {
            env[f->name] = Value::ofBool(v);
            bool b = evalFormula(f->kids[0], env, interp);
            if (isExists && b) {
              result = true;
              break;
            }
            if (!isExists && !b) {
              result = false;
              break;
            }
          }
        }
        if (old)
          env[f->name] = *old;
        else
          env.erase(f->name);
        return result;
      }
      case FormulaOp::Call: {
        int t = p_.indexOf(f->name);
        REQUIRE(t >= 0);
        Tuple args;
        for (const auto& a : f->callArgs) {
          Value v = evalData(a, env);
          REQUIRE_MESSAGE((v.sort != epbes::Sort::Nat || v.nat < bound_),
                          "value escapes the finite domain");
          args.push_back(v);
        }
        auto it = interp.find(t);
        REQUIRE(it != interp.end());
        return it->second.count(args) > 0;
      }
    }
    return false;
  }

  // nested fixpoint, leftmost equation outermost
  void solve(size_t i, std::map<int, Interp>& outer) {
    using namespace epbes;
    if (i == p_.equations.size()) return;
    const Equation& eq = p_.equations[i];
    std::vector<Tuple> dom = domain(static_cast<int>(i));
    Interp cur;
    if (!eq.isMu)
      for (const auto& t : dom) cur.insert(t);  // ν starts full
    for (;;) {
      auto env = outer;
      env[static_cast<int>(i)] = cur;
      solve(i + 1, env);
      Interp next;
      for (const auto& t : dom) {
        Env venv;
        for (size_t pidx = 0; pidx < eq.params.size(); ++pidx)
          venv[eq.params[pidx].name] = t[pidx];
        if (evalFormula(eq.body, venv, env)) next.insert(t);
      }
      if (next == cur) {
        for (size_t j = i; j < p_.equations.size(); ++j)
          interp_[j] = env.at(static_cast<int>(j));
        return;
      }
      cur = std::move(next);
    }
  }

  const epbes::Pbes& p_;
  std::uint64_t bound_;
  std::vector<Interp> interp_;
};

// ---------------------------------------------------------------------
// Brute-force parity oracle: enumerate circle's positional strategies,
// check box's best answer by reachability of losing patterns.
class BruteParity {
 public:
  explicit BruteParity(const epbes::ParityGame& g) : g_(g) { run(); }

  bool circleWins(int v) const { return wins_[v]; }
  const std::vector<bool>& winners() const { return wins_; }

  /// Box can beat this fixed circle strategy starting from v.
  static bool boxBeats(const epbes::ParityGame& g, const std::vector<int>& sigma, int v) {
    int n = g.size();
    // successor function under sigma
    std::vector<std::vector<int>> succ(n);
    for (int u = 0; u < n; ++u) {
      if (g.circleOwned[u]) {
        if (sigma[u] >= 0) succ[u].push_back(sigma[u]);
      } else {
        succ[u] = g.succ[u];
      }
    }
    // bad targets: stuck circle vertices and vertices on odd-max cycles
    std::vector<char> bad(n, 0);
    for (int u = 0; u < n; ++u)
      if (g.circleOwned[u] && succ[u].empty()) bad[u] = 1;
    int maxPrio = 0;
    for (int u = 0; u < n; ++u) maxPrio = std::max(maxPrio, g.priority[u]);
    for (int p = 1; p <= maxPrio; p += 2) {
      // SCC of the subgraph with priorities <= p
      std::vector<char> kept(n, 0);
      for (int u = 0; u < n; ++u) kept[u] = g.priority[u] <= p;
      std::vector<int> comp = sccIds(succ, kept);
      std::vector<int> size(n, 0);
      for (int u = 0; u < n; ++u)
        if (kept[u] && comp[u] >= 0) ++size[comp[u]];
      for (int u = 0; u < n; ++u) {
        if (!kept[u] || g.priority[u] != p || comp[u] < 0) continue;
        bool cyc = size[comp[u]] > 1;
        if (!cyc)
          for (int w : succ[u])
            if (w == u) cyc = true;
        if (cyc)
          for (int x = 0; x < n; ++x)
            if (kept[x] && comp[x] == comp[u]) bad[x] = 1;
      }
    }
    // box realizes any path: reachability
    std::vector<char> seen(n, 0);
    std::vector<int> queue{v};
    seen[v] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      if (bad[u]) return true;
      for (int w : succ[u])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    return false;
  }

 private:
  static std::vector<int> sccIds(const std::vector<std::vector<int>>& succ,
                                 const std::vector<char>& kept) {
    int n = static_cast<int>(succ.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> onStack(n, 0);
    int counter = 0, comps = 0;
    struct Frame {
      int v;
      size_t child;
    };
    for (int root = 0; root < n; ++root) {
      if (!kept[root] || idx[root] >= 0) continue;
      std::vector<Frame> frames{{root, 0}};
      idx[root] = low[root] = counter++;
      stack.push_back(root);
      onStack[root] = 1;
      while (!frames.empty()) {
        Frame& f = frames.back();
        bool descended = false;
        while (f.child < succ[f.v].size()) {
          int w = succ[f.v][f.child++];
          if (!kept[w]) continue;
          if (idx[w] < 0) {
            idx[w] = low[w] = counter++;
            stack.push_back(w);
            onStack[w] = 1;
            frames.push_back({w, 0});
            descended = true;
            break;
          }
          if (onStack[w]) low[f.v] = std::min(low[f.v], idx[w]);
        }
        if (descended) continue;
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
    return comp;
  }

  void run() {
    int n = g_.size();
    wins_.assign(n, false);
    std::vector<int> circleVerts;
    for (int v = 0; v < n; ++v)
      if (g_.circleOwned[v] && !g_.succ[v].empty()) circleVerts.push_back(v);
    std::vector<int> sigma(n, -1);
    std::vector<size_t> choice(circleVerts.size(), 0);
    for (;;) {
      for (size_t i = 0; i < circleVerts.size(); ++i)
        sigma[circleVerts[i]] = g_.succ[circleVerts[i]][choice[i]];
      for (int v = 0; v < n; ++v)
        if (!wins_[v] && !boxBeats(g_, sigma, v)) wins_[v] = true;
      // next strategy
      size_t i = 0;
      for (; i < circleVerts.size(); ++i) {
        if (++choice[i] < g_.succ[circleVerts[i]].size()) break;
        choice[i] = 0;
      }
      if (i == circleVerts.size()) break;
    }
  }

  const epbes::ParityGame& g_;
  std::vector<bool> wins_;
};

inline epbes::ParityGame randomGame(std::mt19937& rng, int maxVertices = 8,
                                    int maxPriority = 4, int maxOut = 3) {
  std::uniform_int_distribution<int> nv(1, maxVertices);
  epbes::ParityGame g;
  int n = nv(rng);
  std::uniform_int_distribution<int> pr(0, maxPriority);
  std::uniform_int_distribution<int> owner(0, 1);
  std::uniform_int_distribution<int> deg(0, maxOut);
  std::uniform_int_distribution<int> tgt(0, n - 1);
  for (int v = 0; v < n; ++v) {
    g.priority.push_back(pr(rng));
    g.circleOwned.push_back(owner(rng) == 1);
    std::set<int> out;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) out.insert(tgt(rng));
    g.succ.emplace_back(out.begin(), out.end());
  }
  return g;
}

// ---------------------------------------------------------------------
// Random existential PBESs over mod-k arithmetic: every call argument is
// reduced mod k, so explicit exploration closes and the finite evaluator
// is exact.
inline epbes::Pbes randomModKPbes(std::mt19937& rng, std::uint64_t k, int maxEq = 3,
                                  int maxClauses = 3) {
  using namespace epbes;
  std::uniform_int_distribution<int> eqCount(1, maxEq);
  int n = eqCount(rng);
  std::uniform_int_distribution<int> clCount(1, maxClauses);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::uint64_t> modVal(0, k - 1);
  std::uniform_int_distribution<int> target(0, n - 1);
  std::uniform_int_distribution<int> callCount(0, 2);

  Pbes p;
  for (int i = 0; i < n; ++i) {
    Equation eq;
    eq.isMu = coin(rng) == 1;
    eq.name = "X" + std::to_string(i + 1);
    eq.params = {{"d", Sort::Nat}};
    p.equations.push_back(std::move(eq));
  }
  for (int i = 0; i < n; ++i) {
    Equation& eq = p.equations[i];
    FormulaPtr body;
    int m = clCount(rng);
    for (int kk = 0; kk < m; ++kk) {
      bool hasE = coin(rng) == 1;
      auto atom = [&](const std::string& var) -> DataExprPtr {
        DataExprPtr reduced = dx::modc(dx::var(var, Sort::Nat), k);
        DataExprPtr cst = dx::natc(modVal(rng));
        switch (coin(rng) * 2 + coin(rng)) {
          case 0: return dx::cmp(DataOp::Eq, reduced, cst);
          case 1: return dx::cmp(DataOp::Le, reduced, cst);
          case 2: return dx::cmp(DataOp::Ne, reduced, cst);
          default: return dx::cmp(DataOp::Gt, reduced, cst);
        }
      };
      DataExprPtr guard = atom("d");
      if (hasE && coin(rng)) guard = dx::andE({guard, atom("e")});
      FormulaPtr clause = pf::leaf(guard);
      int calls = callCount(rng);
      for (int c = 0; c < calls; ++c) {
        int t = target(rng);
        // ((a*d + b*e + c0) mod k)
        DataExprPtr arg = dx::mulc(modVal(rng), dx::var("d", Sort::Nat));
        if (hasE) arg = dx::add(arg, dx::mulc(modVal(rng), dx::var("e", Sort::Nat)));
        arg = dx::modc(dx::add(arg, dx::natc(modVal(rng))), k);
        clause = pf::andF(clause, pf::call(p.equations[t].name, {arg}));
      }
      if (hasE) clause = pf::existsF("e", Sort::Nat, clause);
      body = body ? pf::orF(body, clause) : clause;
    }
    eq.body = body;
  }
  checkPbes(p);
  return p;
}

}  // namespace testutil
