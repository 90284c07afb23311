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

#include "epbes/io.hpp"

#include <json.hpp>

#include "epbes/printer.hpp"

namespace epbes {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

ordered_json valueJson(const Value& v) {
  if (v.sort == Sort::Nat) return ordered_json(v.nat);
  return ordered_json(v.b);
}

Value valueFromJson(const ordered_json& j) {
  if (j.is_boolean()) return Value::ofBool(j.get<bool>());
  return Value::ofNat(j.get<std::uint64_t>());
}

}  // namespace

std::string gameToDot(const SolvedPbes& solved) {
  const ReducedGame& g = solved.game;
  std::string out = "digraph reduced {\n  rankdir=TB;\n";
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const Block& b = g.vertices[v];
    std::string label = blockLabel(solved, static_cast<int>(v)) + "\\n" +
                        dotEscape(b.shape.str()) + "\\nprio " +
                        std::to_string(g.game.priority[v]);
    out += "  n" + std::to_string(v) + " [shape=" + (b.isAnd ? "box" : "oval") +
           ", label=\"" + label + "\"";
    if (solved.solution.circleWins[v]) out += ", penwidth=2";
    out += "];\n";
  }
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int w : g.game.succ[v]) {
      out += "  n" + std::to_string(v) + " -> n" + std::to_string(w);
      if (solved.solution.strategy[v] == w) out += " [style=bold]";
      out += ";\n";
    }
  return out + "}\n";
}

std::string explicitToDot(const ExplicitGame& g, const ClausePbes& c) {
  std::string out = "digraph explicit {\n  rankdir=TB;\n";
  int nOr = static_cast<int>(g.orVertices.size());
  for (int v = 0; v < nOr; ++v) {
    std::string label = g.orVertices[v].sig.str();
    if (g.orVertices[v].frontier) label += " (frontier)";
    out += "  n" + std::to_string(v) + " [shape=oval, label=\"" + dotEscape(label) +
           "\"];\n";
  }
  for (size_t a = 0; a < g.andVertices.size(); ++a) {
    const auto& av = g.andVertices[a];
    std::string label = "(" + c.equations[av.eq].name + ",k" +
                        std::to_string(av.clause + 1);
    for (const auto& w : av.witness) label += "," + w.str();
    label += ")";
    out += "  n" + std::to_string(nOr + a) + " [shape=box, label=\"" +
           dotEscape(label) + "\"];\n";
  }
  for (size_t v = 0; v < g.game.succ.size(); ++v)
    for (int w : g.game.succ[v])
      out += "  n" + std::to_string(v) + " -> n" + std::to_string(w) + ";\n";
  return out + "}\n";
}

std::string proofGraphToDot(const ConcreteProofGraph& pg) {
  std::string out = "digraph proof {\n";
  for (size_t v = 0; v < pg.vertices.size(); ++v) {
    const auto& vx = pg.vertices[v];
    std::string label = vx.sig.str();
    if (vx.clause >= 0) {
      label += "\\nk=" + std::to_string(vx.clause + 1);
      if (!vx.witness.empty()) {
        label += " w=(";
        for (size_t i = 0; i < vx.witness.size(); ++i) {
          if (i) label += ",";
          label += vx.witness[i].str();
        }
        label += ")";
      }
    } else {
      label += "\\n(frontier)";
    }
    out += "  n" + std::to_string(v) + " [shape=oval, label=\"" + dotEscape(label) +
           "\"];\n";
  }
  for (size_t v = 0; v < pg.succ.size(); ++v)
    for (int w : pg.succ[v])
      out += "  n" + std::to_string(v) + " -> n" + std::to_string(w) + ";\n";
  return out + "}\n";
}

std::string strategyGraphToDot(const ReducedStrategyGraph& rsg, const SolvedPbes& solved) {
  std::string out = "digraph strategy {\n";
  for (size_t lv = 0; lv < rsg.gameVertices.size(); ++lv) {
    int gv = rsg.gameVertices[lv];
    const Block& b = solved.game.vertices[gv];
    std::string label = blockLabel(solved, gv) + "\\nprio " +
                        std::to_string(solved.game.game.priority[gv]);
    out += "  n" + std::to_string(lv) + " [shape=" + (b.isAnd ? "box" : "oval") +
           ", label=\"" + label + "\"];\n";
  }
  for (size_t lv = 0; lv < rsg.succ.size(); ++lv)
    for (int lw : rsg.succ[lv])
      out += "  n" + std::to_string(lv) + " -> n" + std::to_string(lw) + ";\n";
  return out + "}\n";
}

std::string gameToJson(const SolvedPbes& solved) {
  const ReducedGame& g = solved.game;
  ordered_json j;
  j["kind"] = "reduced-game";
  j["priority_base"] = g.priorityBase;
  j["iterations"] = solved.iterations;
  ordered_json verts = ordered_json::array();
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const Block& b = g.vertices[v];
    ordered_json jv;
    jv["id"] = v;
    jv["block"] = b.id;
    jv["player"] = b.isAnd ? "and" : "or";
    jv["equation"] = solved.clauses.equations[b.eq].name;
    if (b.isAnd) jv["clause"] = b.clause + 1;
    jv["shape"] = b.shape.str();
    jv["priority"] = g.game.priority[v];
    jv["winner"] = solved.solution.circleWins[v] ? "or" : "and";
    if (solved.solution.strategy[v] >= 0) jv["strategy"] = solved.solution.strategy[v];
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  ordered_json edges = ordered_json::array();
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int w : g.game.succ[v]) edges.push_back(ordered_json::array({v, w}));
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::string proofGraphToJson(const ConcreteProofGraph& pg) {
  ordered_json j;
  j["kind"] = "proof-graph";
  j["closed"] = pg.closed;
  ordered_json verts = ordered_json::array();
  for (size_t v = 0; v < pg.vertices.size(); ++v) {
    const auto& vx = pg.vertices[v];
    ordered_json jv;
    jv["id"] = v;
    jv["var"] = vx.sig.var;
    ordered_json args = ordered_json::array();
    for (const auto& a : vx.sig.args) args.push_back(valueJson(a));
    jv["args"] = std::move(args);
    if (vx.clause >= 0) {
      jv["clause"] = vx.clause + 1;
      ordered_json wit = ordered_json::array();
      for (const auto& w : vx.witness) wit.push_back(valueJson(w));
      jv["witness"] = std::move(wit);
    }
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  ordered_json edges = ordered_json::array();
  for (size_t v = 0; v < pg.succ.size(); ++v)
    for (int w : pg.succ[v]) edges.push_back(ordered_json::array({v, w}));
  j["edges"] = std::move(edges);
  ordered_json frontier = ordered_json::array();
  for (int f : pg.frontier) frontier.push_back(f);
  j["frontier"] = std::move(frontier);
  return j.dump(2) + "\n";
}

ConcreteProofGraph proofGraphFromJson(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ConcreteProofGraph pg;
  pg.closed = j.value("closed", true);
  for (const auto& jv : j.at("vertices")) {
    ConcreteProofGraph::Vertex vx;
    vx.sig.var = jv.at("var").get<std::string>();
    for (const auto& a : jv.at("args")) vx.sig.args.push_back(valueFromJson(a));
    if (jv.contains("clause")) {
      vx.clause = jv.at("clause").get<int>() - 1;
      if (jv.contains("witness"))
        for (const auto& w : jv.at("witness")) vx.witness.push_back(valueFromJson(w));
    }
    pg.vertices.push_back(std::move(vx));
  }
  pg.succ.resize(pg.vertices.size());
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>();
    int b = e.at(1).get<int>();
    if (a < 0 || b < 0 || a >= static_cast<int>(pg.vertices.size()) ||
        b >= static_cast<int>(pg.vertices.size()))
      throw Error("edge endpoint out of range in proof graph");
    pg.succ[a].push_back(b);
  }
  if (j.contains("frontier"))
    for (const auto& f : j.at("frontier")) pg.frontier.push_back(f.get<int>());
  return pg;
}

std::string traceToJson(const std::vector<SplitEvent>& trace, int iterations,
                        bool saturated) {
  ordered_json j;
  j["kind"] = "refinement-trace";
  j["iterations"] = iterations;
  j["saturated"] = saturated;
  ordered_json evs = ordered_json::array();
  for (const auto& e : trace) {
    ordered_json je;
    je["iteration"] = e.iteration;
    je["partition"] = e.dividedAnd ? "psi" : "phi";
    je["equation"] = e.eq + 1;
    je["clause"] = e.clause + 1;
    if (e.call >= 0) je["call"] = e.call + 1;
    je["splitter_block"] = e.splitterBlock;
    je["parent"] = e.parent;
    je["left"] = e.left;
    je["right"] = e.right;
    evs.push_back(std::move(je));
  }
  j["events"] = std::move(evs);
  return j.dump(2) + "\n";
}

std::string partitionToJson(const PartitionFamily& P, const ClausePbes& c) {
  ordered_json j;
  j["kind"] = "partition-family";
  j["iterations"] = P.iterations;
  ordered_json phis = ordered_json::array();
  for (size_t i = 0; i < P.phi.size(); ++i) {
    ordered_json jp;
    jp["equation"] = c.equations[i].name;
    ordered_json blocks = ordered_json::array();
    for (const Block& b : P.phi[i]) {
      ordered_json jb;
      jb["id"] = b.id;
      jb["shape"] = b.shape.str();
      blocks.push_back(std::move(jb));
    }
    jp["blocks"] = std::move(blocks);
    phis.push_back(std::move(jp));
  }
  j["phi"] = std::move(phis);
  ordered_json psis = ordered_json::array();
  for (size_t i = 0; i < P.psi.size(); ++i) {
    for (size_t k = 0; k < P.psi[i].size(); ++k) {
      ordered_json jp;
      jp["equation"] = c.equations[i].name;
      jp["clause"] = k + 1;
      ordered_json blocks = ordered_json::array();
      for (const Block& b : P.psi[i][k]) {
        ordered_json jb;
        jb["id"] = b.id;
        jb["shape"] = b.shape.str();
        blocks.push_back(std::move(jb));
      }
      jp["blocks"] = std::move(blocks);
      psis.push_back(std::move(jp));
    }
  }
  j["psi"] = std::move(psis);
  return j.dump(2) + "\n";
}

}  // namespace epbes
