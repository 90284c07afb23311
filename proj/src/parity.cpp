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

#include "epbes/parity.hpp"

#include <algorithm>

namespace epbes {

namespace {

/// Zielonka on a totalized copy of the input: stuck vertices get an edge
/// to a losing sink for their owner, so the recursion never sees a
/// vertex without successors.
class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : n_(g.size()) {
    int total = n_ + 2;
    prio_.resize(total);
    circle_.resize(total);
    succ_.resize(total);
    pred_.resize(total);
    // sink n_: circle loses there; sink n_+1: box loses there
    prio_[n_] = 1;
    prio_[n_ + 1] = 0;
    circle_[n_] = true;
    circle_[n_ + 1] = false;
    succ_[n_] = {n_};
    succ_[n_ + 1] = {n_ + 1};
    for (int v = 0; v < n_; ++v) {
      prio_[v] = g.priority[v];
      circle_[v] = g.circleOwned[v];
      succ_[v] = g.succ[v];
      if (succ_[v].empty()) succ_[v].push_back(circle_[v] ? n_ : n_ + 1);
    }
    for (int v = 0; v < total; ++v)
      for (int w : succ_[v]) pred_[w].push_back(v);
    win_.assign(total, false);
    strat_.assign(total, -1);
    alive_.assign(total, true);
    solve();
  }

  ParitySolution take(const ParityGame& g) {
    ParitySolution sol;
    sol.circleWins.assign(n_, false);
    sol.strategy.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
      sol.circleWins[v] = win_[v];
      int s = strat_[v];
      sol.strategy[v] = (s >= 0 && s < n_) ? s : -1;
      if (g.succ[v].empty()) sol.strategy[v] = -1;
    }
    return sol;
  }

 private:
  void solve() {
    std::vector<int> verts;
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v) verts.push_back(v);
    solveRec(verts);
  }

  /// Attractor of `target` for `forCircle` within `inSet`; records the
  /// pulling edge for attracted vertices of the attracting player.
  std::vector<int> attractor(bool forCircle, const std::vector<int>& target,
                             const std::vector<char>& inSet, std::vector<int>& stratOut) {
    std::vector<char> inAttr(inSet.size(), 0);
    std::vector<int> cnt(inSet.size(), 0);
    for (size_t v = 0; v < inSet.size(); ++v) {
      if (!inSet[v]) continue;
      for (int w : succ_[v])
        if (inSet[w]) ++cnt[v];
    }
    std::vector<int> queue = target;
    for (int v : target) inAttr[v] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int w : pred_[u]) {
        if (!inSet[w] || inAttr[w]) continue;
        if (circle_[w] == forCircle) {
          inAttr[w] = 1;
          stratOut[w] = u;
          queue.push_back(w);
        } else {
          if (--cnt[w] == 0) {
            inAttr[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    return queue;
  }

  void solveRec(const std::vector<int>& verts) {
    if (verts.empty()) return;
    int p = prio_[verts[0]];
    for (int v : verts) p = std::max(p, prio_[v]);
    bool player = p % 2 == 0;  // circle on even top priority

    std::vector<char> inSet(alive_.size(), 0);
    for (int v : verts) inSet[v] = 1;
    std::vector<int> seeds;
    for (int v : verts)
      if (prio_[v] == p) seeds.push_back(v);

    std::vector<int> attrStrat(alive_.size(), -1);
    std::vector<int> attr = attractor(player, seeds, inSet, attrStrat);
    std::vector<char> inAttr(alive_.size(), 0);
    for (int v : attr) inAttr[v] = 1;

    std::vector<int> rest;
    for (int v : verts)
      if (!inAttr[v]) rest.push_back(v);
    solveRec(rest);

    std::vector<int> oppWon;
    for (int v : rest)
      if (win_[v] != player) oppWon.push_back(v);

    if (oppWon.empty()) {
      for (int v : attr) {
        win_[v] = player;
        if (circle_[v] == player) {
          if (attrStrat[v] >= 0) {
            strat_[v] = attrStrat[v];
          } else {
            // a seed: any successor inside the subgame is safe
            for (int w : succ_[v])
              if (inSet[w]) {
                strat_[v] = w;
                break;
              }
          }
        } else {
          strat_[v] = -1;
        }
      }
      return;
    }

    std::vector<int> oppStrat(alive_.size(), -1);
    std::vector<int> oppAttr = attractor(!player, oppWon, inSet, oppStrat);
    std::vector<char> inOpp(alive_.size(), 0);
    for (int v : oppAttr) inOpp[v] = 1;
    std::vector<char> isSeed(alive_.size(), 0);
    for (int v : oppWon) isSeed[v] = 1;
    for (int v : oppAttr) {
      win_[v] = !player;
      if (circle_[v] == !player) {
        if (!isSeed[v]) strat_[v] = oppStrat[v];
        // seeds keep the strategy found by the recursive call
      } else {
        strat_[v] = -1;
      }
    }
    std::vector<int> remaining;
    for (int v : verts)
      if (!inOpp[v]) remaining.push_back(v);
    solveRec(remaining);
  }

  int n_;
  std::vector<int> prio_;
  std::vector<char> circle_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<bool> win_;
  std::vector<int> strat_;
  std::vector<char> alive_;
};

}  // namespace

ParitySolution solveParity(const ParityGame& g) {
  Zielonka z(g);
  return z.take(g);
}

}  // namespace epbes
