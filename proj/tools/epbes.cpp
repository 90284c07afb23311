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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "epbes/explicit_game.hpp"
#include "epbes/io.hpp"
#include "epbes/parser.hpp"
#include "epbes/printer.hpp"
#include "epbes/proof_graph.hpp"

namespace {

using namespace epbes;

// exit codes: 0 true/ok, 1 false, 2 diverged/unknown, 3 input, 4 solver
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kDiverged = 2;
constexpr int kInputError = 3;
constexpr int kSolverError = 4;

struct Options {
  std::string smtCmd;
  int smtTimeoutMs = 30000;
  int maxIter = 100;
  bool prune = false;
  bool trace = false;
  std::string format = "text";
  std::uint64_t valueCap = 256;
  std::uint64_t witnessCap = 64;
  std::uint64_t vertexCap = 100000;
  std::uint64_t budget = 64;
  std::string query;

  std::string pbesFile;
  std::string proofFile;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SmtConfig smtConfigFrom(const Options& opt) {
  SmtConfig cfg = defaultSmtConfig();
  if (!opt.smtCmd.empty()) {
    cfg.command.clear();
    std::istringstream ss(opt.smtCmd);
    std::string word;
    while (ss >> word) cfg.command.push_back(word);
    if (cfg.command.empty()) throw Error("empty --smt-cmd");
  }
  cfg.timeoutMs = opt.smtTimeoutMs;
  return cfg;
}

Pbes loadPbes(const Options& opt) { return parsePbes(readFile(opt.pbesFile)); }

Signature loadQuery(const Pbes& p, const Options& opt) {
  if (opt.query.empty()) throw Error("missing --query");
  Signature sig = parseQuery(opt.query);
  checkQuery(p, sig);
  return sig;
}

void printStats(const SolverSession& s) {
  std::cerr << "solver: " << s.queryCount() << " queries ("
            << s.solverCallCount() << " solver calls, "
            << static_cast<long>(s.totalSeconds() * 1000) << " ms)\n";
}

int cmdParse(const Options& opt) {
  Pbes p = loadPbes(opt);
  std::cout << printPbes(p);
  return kTrue;
}

int cmdNormalize(const Options& opt) {
  Pbes p = loadPbes(opt);
  ClausePbes c = toClauseForm(p);
  std::cout << printClausePbes(c);
  return kTrue;
}

int cmdRefine(const Options& opt) {
  Pbes p = loadPbes(opt);
  ClausePbes c = toClauseForm(p);
  SolverSession session(smtConfigFrom(opt));
  SaturationResult res = saturate(c, opt.maxIter, session, opt.trace);
  if (opt.format == "json") {
    if (opt.trace)
      std::cout << traceToJson(res.trace, res.iterations, res.saturated);
    else
      std::cout << partitionToJson(res.family, c);
  } else {
    std::cout << (res.saturated ? "saturated" : "diverged") << " after "
              << res.iterations << " iterations\n";
    for (size_t i = 0; i < res.family.phi.size(); ++i) {
      std::cout << "Phi(" << c.equations[i].name << "): " << res.family.phi[i].size()
                << " blocks\n";
      for (const Block& b : res.family.phi[i])
        std::cout << "  #" << b.id << " " << b.shape.str() << "\n";
    }
    for (size_t i = 0; i < res.family.psi.size(); ++i)
      for (size_t k = 0; k < res.family.psi[i].size(); ++k) {
        std::cout << "Psi(" << c.equations[i].name << ",k" << k + 1
                  << "): " << res.family.psi[i][k].size() << " blocks\n";
        for (const Block& b : res.family.psi[i][k])
          std::cout << "  #" << b.id << " " << b.shape.str() << "\n";
      }
    if (opt.trace)
      for (const auto& e : res.trace)
        std::cout << "split iter=" << e.iteration << " " << (e.dividedAnd ? "psi" : "phi")
                  << " eq=" << e.eq + 1 << " k=" << e.clause + 1 << " parent=#"
                  << e.parent << " -> #" << e.left << ",#" << e.right << "\n";
    if (!res.saturated) {
      std::cout << "last splits:\n";
      size_t from = res.trace.size() > 5 ? res.trace.size() - 5 : 0;
      for (size_t i = from; i < res.trace.size(); ++i)
        std::cout << "  iter=" << res.trace[i].iteration << " parent=#"
                  << res.trace[i].parent << " -> #" << res.trace[i].left << ",#"
                  << res.trace[i].right << "\n";
    }
  }
  printStats(session);
  return res.saturated ? kTrue : kDiverged;
}

PipelineConfig pipelineConfig(const Options& opt) {
  PipelineConfig cfg;
  cfg.maxIter = opt.maxIter;
  cfg.keepTrace = opt.trace;
  return cfg;
}

int cmdSolve(const Options& opt) {
  Pbes p = loadPbes(opt);
  Signature sig = loadQuery(p, opt);
  SolverSession session(smtConfigFrom(opt));
  PipelineResult res = runPipeline(p, pipelineConfig(opt), session);
  if (res.diverged) {
    std::cout << "diverged after " << res.iterations << " iterations\n";
    printStats(session);
    return kDiverged;
  }
  SolvedPbes& solved = *res.solved;
  if (opt.prune)
    solved.game = pruneReachable(solved.game, solved.family, solved.clauses, sig, session);
  if (opt.prune) solved.solution = solveParity(solved.game.game);
  bool answer = solved.query(sig, session);

  // cross-check against the bounded explicit instantiation when it closes
  ExplicitBounds small{32, 8, 2000};
  std::string crosscheck = "skipped";
  {
    ExplicitGame eg = explore(solved.clauses, sig, small);
    if (eg.closed) {
      OracleVerdict ov = solveExplicit(eg);
      bool oracleAnswer = ov == OracleVerdict::True;
      if (ov != OracleVerdict::Unknown && oracleAnswer != answer) {
        std::cerr << "error: explicit oracle disagrees on " << sig.str() << ": reduced="
                  << (answer ? "true" : "false") << " explicit="
                  << oracleVerdictName(ov) << "\n";
        return kSolverError;
      }
      crosscheck = "agreed";
    }
  }

  if (opt.format == "json") {
    std::cout << "{\n  \"kind\": \"solve-result\",\n  \"query\": \"" << sig.str()
              << "\",\n  \"verdict\": " << (answer ? "true" : "false")
              << ",\n  \"iterations\": " << solved.iterations
              << ",\n  \"vertices\": " << solved.game.vertices.size()
              << ",\n  \"crosscheck\": \"" << crosscheck << "\"\n}\n";
  } else {
    std::cout << sig.str() << " is " << (answer ? "true" : "false") << "\n";
    std::cerr << "reduced space: " << solved.game.vertices.size() << " vertices, "
              << solved.iterations << " iterations, crosscheck " << crosscheck << "\n";
  }
  printStats(session);
  return answer ? kTrue : kFalse;
}

int cmdProve(const Options& opt) {
  Pbes p = loadPbes(opt);
  Signature sig = loadQuery(p, opt);
  SolverSession session(smtConfigFrom(opt));
  PipelineResult res = runPipeline(p, pipelineConfig(opt), session);
  if (res.diverged) {
    std::cout << "diverged after " << res.iterations << " iterations\n";
    return kDiverged;
  }
  SolvedPbes& solved = *res.solved;
  if (!solved.query(sig, session)) {
    std::cout << sig.str() << " is false; no proof graph exists\n";
    return kFalse;
  }
  ConcreteProofGraph pg = extractConcrete(solved, sig, opt.budget, session);
  ReducedStrategyGraph rsg = strategySubgraph(solved, sig, session);
  auto rsgCheck = validateReducedStrategy(rsg, solved, session);
  std::optional<Violation> pgCheck;
  if (pg.closed) pgCheck = validateConcrete(pg, solved.clauses);

  if (opt.format == "dot") {
    std::cout << proofGraphToDot(pg);
    std::cout << strategyGraphToDot(rsg, solved);
  } else if (opt.format == "json") {
    std::cout << proofGraphToJson(pg);
  } else {
    std::cout << (pg.closed ? "closed" : "partial") << " proof graph: "
              << pg.vertices.size() << " vertices";
    if (!pg.closed) std::cout << " (frontier " << pg.frontier.size() << ")";
    std::cout << "\n";
    for (size_t v = 0; v < pg.vertices.size(); ++v) {
      const auto& vx = pg.vertices[v];
      std::cout << "  " << vx.sig.str();
      if (vx.clause >= 0) {
        std::cout << " [k=" << vx.clause + 1;
        if (!vx.witness.empty()) {
          std::cout << " w=(";
          for (size_t i = 0; i < vx.witness.size(); ++i)
            std::cout << (i ? "," : "") << vx.witness[i].str();
          std::cout << ")";
        }
        std::cout << "]";
      }
      std::cout << " ->";
      for (int w : pg.succ[v]) std::cout << " " << pg.vertices[w].sig.str();
      std::cout << "\n";
    }
    std::cout << "strategy subgraph: " << rsg.gameVertices.size() << " vertices, "
              << (rsgCheck ? "Violation" : "Ok") << "\n";
    if (pg.closed)
      std::cout << "concrete validation: " << (pgCheck ? "Violation" : "Ok") << "\n";
  }
  if (rsgCheck)
    std::cerr << "strategy violation(condition " << rsgCheck->condition << ") at "
              << rsgCheck->location << ": " << rsgCheck->detail << "\n";
  if (pgCheck)
    std::cerr << "proof-graph violation(condition " << pgCheck->condition << ") at "
              << pgCheck->location << ": " << pgCheck->detail << "\n";
  printStats(session);
  return (rsgCheck || pgCheck) ? kSolverError : kTrue;
}

int cmdValidate(const Options& opt) {
  Pbes p = loadPbes(opt);
  ClausePbes c = toClauseForm(p);
  ConcreteProofGraph pg = proofGraphFromJson(readFile(opt.proofFile));
  auto v = validateConcrete(pg, c);
  if (!v) {
    std::cout << "Ok\n";
    return kTrue;
  }
  std::cout << "Violation(condition " << v->condition << ") at " << v->location << ": "
            << v->detail << "\n";
  return kFalse;
}

int cmdOracle(const Options& opt) {
  Pbes p = loadPbes(opt);
  Signature sig = loadQuery(p, opt);
  ClausePbes c = toClauseForm(p);
  ExplicitBounds bounds{opt.valueCap, opt.witnessCap, opt.vertexCap};
  ExplicitGame g = explore(c, sig, bounds);
  OracleVerdict v = solveExplicit(g);
  if (opt.format == "dot") {
    std::cout << explicitToDot(g, c);
  } else if (opt.format == "json") {
    std::cout << "{\n  \"kind\": \"oracle-result\",\n  \"query\": \"" << sig.str()
              << "\",\n  \"verdict\": \"" << oracleVerdictName(v)
              << "\",\n  \"closed\": " << (g.closed ? "true" : "false")
              << ",\n  \"or_vertices\": " << g.orVertices.size()
              << ",\n  \"and_vertices\": " << g.andVertices.size() << "\n}\n";
  } else {
    std::cout << sig.str() << ": " << oracleVerdictName(v)
              << (g.closed ? " (closed " : " (not closed, ") << g.orVertices.size()
              << "+" << g.andVertices.size() << " vertices)\n";
  }
  switch (v) {
    case OracleVerdict::True: return kTrue;
    case OracleVerdict::False: return kFalse;
    default: return kDiverged;
  }
}

int cmdExport(const Options& opt) {
  Pbes p = loadPbes(opt);
  SolverSession session(smtConfigFrom(opt));
  PipelineResult res = runPipeline(p, pipelineConfig(opt), session);
  if (res.diverged) {
    std::cout << "diverged after " << res.iterations << " iterations\n";
    return kDiverged;
  }
  SolvedPbes& solved = *res.solved;
  if (opt.prune) {
    Signature sig = loadQuery(p, opt);
    solved.game = pruneReachable(solved.game, solved.family, solved.clauses, sig, session);
    solved.solution = solveParity(solved.game.game);
  }
  if (opt.format == "dot")
    std::cout << gameToDot(solved);
  else
    std::cout << gameToJson(solved);
  printStats(session);
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership solver for existential parameterised Boolean equation systems"};
  app.set_config("--config");
  app.fallthrough();

  Options opt;
  app.add_option("--smt-cmd", opt.smtCmd, "SMT solver command line")
      ->envname("EPBES_SMT_CMD");
  app.add_option("--smt-timeout-ms", opt.smtTimeoutMs, "per-query solver timeout")
      ->envname("EPBES_SMT_TIMEOUT_MS");
  app.add_option("--max-iter", opt.maxIter, "refinement iteration bound");
  app.add_flag("--prune", opt.prune, "drop blocks unreachable from the query");
  app.add_flag("--trace", opt.trace, "record split events");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--value-cap", opt.valueCap, "explicit oracle value cap");
  app.add_option("--witness-cap", opt.witnessCap, "explicit oracle witness cap");
  app.add_option("--vertex-cap", opt.vertexCap, "explicit oracle vertex cap");
  app.add_option("--budget", opt.budget, "proof graph unrolling budget");

  auto addFile = [&](CLI::App* sub) {
    sub->add_option("pbes", opt.pbesFile, "PBES file")->required();
  };
  auto addQuery = [&](CLI::App* sub) {
    sub->add_option("--query", opt.query, "signature, e.g. \"X1(2)\"");
  };

  CLI::App* parse = app.add_subcommand("parse", "parse and reprint a PBES");
  addFile(parse);
  CLI::App* normalize = app.add_subcommand("normalize", "print the clause form");
  addFile(normalize);
  CLI::App* refine = app.add_subcommand("refine", "run partition refinement");
  addFile(refine);
  CLI::App* solve = app.add_subcommand("solve", "decide a membership query");
  addFile(solve);
  addQuery(solve);
  CLI::App* prove = app.add_subcommand("prove", "extract a proof graph");
  addFile(prove);
  addQuery(prove);
  CLI::App* validate = app.add_subcommand("validate", "check a proof graph");
  addFile(validate);
  validate->add_option("proof", opt.proofFile, "proof graph JSON")->required();
  CLI::App* oracle = app.add_subcommand("oracle", "bounded explicit instantiation");
  addFile(oracle);
  addQuery(oracle);
  CLI::App* exportCmd = app.add_subcommand("export", "emit the reduced game");
  addFile(exportCmd);
  addQuery(exportCmd);

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (parse->parsed()) return cmdParse(opt);
    if (normalize->parsed()) return cmdNormalize(opt);
    if (refine->parsed()) return cmdRefine(opt);
    if (solve->parsed()) return cmdSolve(opt);
    if (prove->parsed()) return cmdProve(opt);
    if (validate->parsed()) return cmdValidate(opt);
    if (oracle->parsed()) return cmdOracle(opt);
    if (exportCmd->parsed()) return cmdExport(opt);
  } catch (const SolverUnknown& e) {
    std::cerr << "solver error: " << e.what() << "\noffending script:\n"
              << e.script << "\n";
    return kSolverError;
  } catch (const SolverCrash& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSolverError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
