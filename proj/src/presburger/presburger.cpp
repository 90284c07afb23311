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

#include "presburger.hpp"

#include <algorithm>
#include <cstdlib>

namespace presburger {

Int checkedAdd(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw SolverLimit("integer overflow");
  return r;
}

Int checkedMul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw SolverLimit("integer overflow");
  return r;
}

Int gcdInt(Int a, Int b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcmInt(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checkedMul(std::llabs(a) / gcdInt(a, b), std::llabs(b));
}

Int floorDiv(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int modNonNeg(Int a, Int b) {
  Int m = a % b;
  return m < 0 ? m + std::llabs(b) : m;
}

LinTerm LinTerm::constant(Int v) {
  LinTerm t;
  t.c = v;
  return t;
}

LinTerm LinTerm::variable(int v) {
  LinTerm t;
  t.coef[v] = 1;
  return t;
}

LinTerm LinTerm::plus(const LinTerm& o) const {
  LinTerm r = *this;
  r.c = checkedAdd(r.c, o.c);
  for (const auto& [v, k] : o.coef) {
    Int nk = checkedAdd(r.coefOf(v), k);
    if (nk == 0)
      r.coef.erase(v);
    else
      r.coef[v] = nk;
  }
  return r;
}

LinTerm LinTerm::minus(const LinTerm& o) const { return plus(o.negated()); }

LinTerm LinTerm::negated() const { return scaled(-1); }

LinTerm LinTerm::scaled(Int k) const {
  LinTerm r;
  if (k == 0) return r;
  r.c = checkedMul(c, k);
  for (const auto& [v, a] : coef) r.coef[v] = checkedMul(a, k);
  return r;
}

LinTerm LinTerm::withConst(Int delta) const {
  LinTerm r = *this;
  r.c = checkedAdd(r.c, delta);
  return r;
}

Int LinTerm::coefOf(int v) const {
  auto it = coef.find(v);
  return it == coef.end() ? 0 : it->second;
}

LinTerm LinTerm::without(int v) const {
  LinTerm r = *this;
  r.coef.erase(v);
  return r;
}

LinTerm LinTerm::substitute(int v, const LinTerm& s) const {
  Int a = coefOf(v);
  if (a == 0) return *this;
  return without(v).plus(s.scaled(a));
}

namespace {

NPtr mk(Node n) { return std::make_shared<const Node>(std::move(n)); }

const NPtr kTrue = mk(Node{Kind::True, {}, 0, -1, {}});
const NPtr kFalse = mk(Node{Kind::False, {}, 0, -1, {}});

bool isTrue(const NPtr& f) { return f->kind == Kind::True; }
bool isFalse(const NPtr& f) { return f->kind == Kind::False; }

bool sameAtom(const NPtr& a, const NPtr& b) {
  return a->kind == b->kind && a->m == b->m && a->t == b->t;
}

}  // namespace

NPtr mkTrue() { return kTrue; }
NPtr mkFalse() { return kFalse; }
NPtr mkBool(bool v) { return v ? kTrue : kFalse; }

NPtr mkLt(LinTerm t) {
  if (t.isGround()) return mkBool(t.c < 0);
  return mk(Node{Kind::Lt, std::move(t), 0, -1, {}});
}

NPtr mkEq(LinTerm t) {
  if (t.isGround()) return mkBool(t.c == 0);
  // normalize sign: first coefficient positive
  if (!t.coef.empty() && t.coef.begin()->second < 0) t = t.negated();
  // divide by content; unsatisfiable when the gcd misses the constant
  Int g = 0;
  for (const auto& [v, k] : t.coef) g = gcdInt(g, k);
  if (g > 1) {
    if (t.c % g != 0) return mkFalse();
    LinTerm r;
    r.c = t.c / g;
    for (const auto& [v, k] : t.coef) r.coef[v] = k / g;
    t = std::move(r);
  }
  return mk(Node{Kind::Eq, std::move(t), 0, -1, {}});
}

NPtr mkDvd(Int m, LinTerm t) {
  m = std::llabs(m);
  if (m == 0) throw SolverLimit("zero modulus");
  if (m == 1) return mkTrue();
  if (t.isGround()) return mkBool(modNonNeg(t.c, m) == 0);
  // reduce coefficients modulo m
  LinTerm r;
  r.c = modNonNeg(t.c, m);
  for (const auto& [v, k] : t.coef) {
    Int nk = modNonNeg(k, m);
    if (nk != 0) r.coef[v] = nk;
  }
  if (r.coef.empty()) return mkBool(r.c == 0);
  return mk(Node{Kind::Dvd, std::move(r), m, -1, {}});
}

NPtr mkNdvd(Int m, LinTerm t) {
  NPtr d = mkDvd(m, std::move(t));
  if (isTrue(d)) return mkFalse();
  if (isFalse(d)) return mkTrue();
  return mk(Node{Kind::Ndvd, d->t, d->m, -1, {}});
}

namespace {

NPtr mkJunction(Kind kind, std::vector<NPtr> kids) {
  bool isAnd = kind == Kind::And;
  std::vector<NPtr> out;
  for (auto& k : kids) {
    if (k->kind == kind) {
      out.insert(out.end(), k->kids.begin(), k->kids.end());
      continue;
    }
    if (isAnd ? isTrue(k) : isFalse(k)) continue;
    if (isAnd ? isFalse(k) : isTrue(k)) return isAnd ? mkFalse() : mkTrue();
    out.push_back(std::move(k));
  }
  // cheap structural dedupe of atoms
  std::vector<NPtr> uniq;
  for (auto& k : out) {
    bool dup = false;
    if (k->kids.empty()) {
      for (const auto& u : uniq)
        if (u->kids.empty() && sameAtom(u, k)) {
          dup = true;
          break;
        }
    }
    if (!dup) uniq.push_back(std::move(k));
  }
  if (uniq.empty()) return isAnd ? mkTrue() : mkFalse();
  if (uniq.size() == 1) return uniq[0];
  return mk(Node{kind, {}, 0, -1, std::move(uniq)});
}

}  // namespace

NPtr mkAnd(std::vector<NPtr> kids) { return mkJunction(Kind::And, std::move(kids)); }
NPtr mkOr(std::vector<NPtr> kids) { return mkJunction(Kind::Or, std::move(kids)); }

NPtr mkNot(NPtr a) {
  if (isTrue(a)) return mkFalse();
  if (isFalse(a)) return mkTrue();
  if (a->kind == Kind::Not) return a->kids[0];
  return mk(Node{Kind::Not, {}, 0, -1, {std::move(a)}});
}

NPtr mkExists(int var, NPtr body) {
  if (isTrue(body) || isFalse(body)) return body;
  return mk(Node{Kind::Exists, {}, 0, var, {std::move(body)}});
}

NPtr mkForall(int var, NPtr body) {
  if (isTrue(body) || isFalse(body)) return body;
  return mk(Node{Kind::Forall, {}, 0, var, {std::move(body)}});
}

size_t nodeCount(const NPtr& f) {
  size_t n = 1;
  for (const auto& k : f->kids) n += nodeCount(k);
  return n;
}

bool containsVar(const NPtr& f, int var) {
  switch (f->kind) {
    case Kind::Lt:
    case Kind::Eq:
    case Kind::Dvd:
    case Kind::Ndvd:
      return f->t.coefOf(var) != 0;
    case Kind::Exists:
    case Kind::Forall:
      if (f->var == var) return false;
      return containsVar(f->kids[0], var);
    default:
      for (const auto& k : f->kids)
        if (containsVar(k, var)) return true;
      return false;
  }
}

NPtr nnf(const NPtr& f, bool negate) {
  switch (f->kind) {
    case Kind::True:
      return mkBool(!negate);
    case Kind::False:
      return mkBool(negate);
    case Kind::Lt:
      // ¬(t < 0)  ⇔  -t - 1 < 0
      return negate ? mkLt(f->t.negated().withConst(-1)) : mkLt(f->t);
    case Kind::Eq:
      if (!negate) return mkEq(f->t);
      return mkOr({mkLt(f->t), mkLt(f->t.negated())});
    case Kind::Dvd:
      return negate ? mkNdvd(f->m, f->t) : mkDvd(f->m, f->t);
    case Kind::Ndvd:
      return negate ? mkDvd(f->m, f->t) : mkNdvd(f->m, f->t);
    case Kind::Not:
      return nnf(f->kids[0], !negate);
    case Kind::And:
    case Kind::Or: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(nnf(k, negate));
      bool mkA = (f->kind == Kind::And) != negate;
      return mkA ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall: {
      NPtr body = nnf(f->kids[0], negate);
      bool ex = (f->kind == Kind::Exists) != negate;
      return ex ? mkExists(f->var, std::move(body)) : mkForall(f->var, std::move(body));
    }
  }
  return f;
}

namespace {

constexpr size_t kNodeBudget = 4u << 20;

void checkBudget(const NPtr& f) {
  if (nodeCount(f) > kNodeBudget) throw SolverLimit("formula too large");
}

/// Rescales every atom mentioning var so its coefficient is ±1, reading
/// the scaled variable as a fresh unit; conjoins Dvd(l, var).
NPtr unitize(const NPtr& f, int var, Int l) {
  switch (f->kind) {
    case Kind::Lt: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      Int k = l / std::llabs(a);
      LinTerm t = f->t.without(var).scaled(k);
      t.coef[var] = a > 0 ? 1 : -1;
      return mk(Node{Kind::Lt, std::move(t), 0, -1, {}});
    }
    case Kind::Eq: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      Int k = l / std::llabs(a);
      LinTerm t = f->t.without(var).scaled(k);
      t.coef[var] = a > 0 ? 1 : -1;
      if (t.coefOf(var) < 0) t = t.negated();
      return mk(Node{Kind::Eq, std::move(t), 0, -1, {}});
    }
    case Kind::Dvd:
    case Kind::Ndvd: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      Int k = l / std::llabs(a);
      LinTerm t = f->t.without(var).scaled(k);
      t.coef[var] = a > 0 ? 1 : -1;
      if (t.coefOf(var) < 0) t = t.negated();  // m | t  ⇔  m | -t
      Int m = checkedMul(f->m, k);
      return mk(Node{f->kind, std::move(t), m, -1, {}});
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& c : f->kids) kids.push_back(unitize(c, var, l));
      return mk(Node{f->kind, {}, 0, -1, std::move(kids)});
    }
    default:
      return f;
  }
}

/// Substitute var := s in a unit-coefficient formula, folding constants.
NPtr substUnit(const NPtr& f, int var, const LinTerm& s) {
  switch (f->kind) {
    case Kind::Lt:
      return mkLt(f->t.substitute(var, s));
    case Kind::Eq:
      return mkEq(f->t.substitute(var, s));
    case Kind::Dvd:
      return mkDvd(f->m, f->t.substitute(var, s));
    case Kind::Ndvd:
      return mkNdvd(f->m, f->t.substitute(var, s));
    case Kind::And:
    case Kind::Or: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& c : f->kids) kids.push_back(substUnit(c, var, s));
      return f->kind == Kind::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    default:
      return f;
  }
}

/// The var → -∞ (low) or +∞ (high) residue of a unit formula: inequality
/// atoms collapse to constants, divisibility atoms survive.
NPtr infinity(const NPtr& f, int var, bool low) {
  switch (f->kind) {
    case Kind::Lt: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      return mkBool((a > 0) == low);
    }
    case Kind::Eq:
      return f->t.coefOf(var) != 0 ? mkFalse() : NPtr(f);
    case Kind::Dvd:
    case Kind::Ndvd:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& c : f->kids) kids.push_back(infinity(c, var, low));
      return f->kind == Kind::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    default:
      return f;
  }
}

void collectBounds(const NPtr& f, int var, std::vector<LinTerm>& lower,
                   std::vector<LinTerm>& upper, Int& delta) {
  switch (f->kind) {
    case Kind::Lt: {
      Int a = f->t.coefOf(var);
      if (a == 1) {
        // var + r < 0: upper boundary -r
        upper.push_back(f->t.without(var).negated());
      } else if (a == -1) {
        // -var + r < 0 ⇔ var > r: lower boundary r
        lower.push_back(f->t.without(var));
      }
      return;
    }
    case Kind::Eq: {
      if (f->t.coefOf(var) == 1) {
        LinTerm r = f->t.without(var);
        lower.push_back(r.negated().withConst(-1));  // var = -r: just below
        upper.push_back(r.negated().withConst(1));   // and just above
      }
      return;
    }
    case Kind::Dvd:
    case Kind::Ndvd:
      if (f->t.coefOf(var) != 0) delta = lcmInt(delta, f->m);
      return;
    case Kind::And:
    case Kind::Or:
      for (const auto& c : f->kids) collectBounds(c, var, lower, upper, delta);
      return;
    default:
      return;
  }
}

void dedupeTerms(std::vector<LinTerm>& ts) {
  std::vector<LinTerm> out;
  for (auto& t : ts) {
    bool dup = false;
    for (const auto& u : out)
      if (u == t) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(t));
  }
  ts = std::move(out);
}

}  // namespace

NPtr cooperEliminate(int var, const NPtr& body) {
  if (!containsVar(body, var)) return body;

  // lcm of coefficients of var
  Int l = 1;
  {
    std::vector<const Node*> stack{body.get()};
    while (!stack.empty()) {
      const Node* n = stack.back();
      stack.pop_back();
      switch (n->kind) {
        case Kind::Lt:
        case Kind::Eq:
        case Kind::Dvd:
        case Kind::Ndvd: {
          Int a = n->t.coefOf(var);
          if (a != 0) l = lcmInt(l, a);
          break;
        }
        default:
          for (const auto& k : n->kids) stack.push_back(k.get());
      }
    }
  }

  NPtr unit = unitize(body, var, l);
  if (l != 1) unit = mkAnd({unit, mkDvd(l, LinTerm::variable(var))});

  Int delta = 1;
  std::vector<LinTerm> lower, upper;
  collectBounds(unit, var, lower, upper, delta);
  dedupeTerms(lower);
  dedupeTerms(upper);

  bool useLower = lower.size() <= upper.size();
  const std::vector<LinTerm>& bounds = useLower ? lower : upper;

  std::vector<NPtr> disjuncts;
  NPtr inf = infinity(unit, var, /*low=*/useLower);
  for (Int j = 1; j <= delta; ++j) {
    NPtr d = substUnit(inf, var, LinTerm::constant(useLower ? j : -j));
    if (isTrue(d)) return mkTrue();
    if (!isFalse(d)) disjuncts.push_back(std::move(d));
  }
  for (const auto& b : bounds) {
    for (Int j = 1; j <= delta; ++j) {
      LinTerm point = useLower ? b.withConst(j) : b.withConst(-j);
      NPtr d = substUnit(unit, var, point);
      if (isTrue(d)) return mkTrue();
      if (!isFalse(d)) disjuncts.push_back(std::move(d));
    }
  }
  NPtr out = mkOr(std::move(disjuncts));
  checkBudget(out);
  return out;
}

NPtr eliminateAll(const NPtr& f) {
  switch (f->kind) {
    case Kind::Exists: {
      NPtr body = nnf(eliminateAll(f->kids[0]), false);
      return cooperEliminate(f->var, body);
    }
    case Kind::Forall: {
      NPtr negBody = nnf(eliminateAll(f->kids[0]), true);
      return nnf(cooperEliminate(f->var, negBody), true);
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Not: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(eliminateAll(k));
      if (f->kind == Kind::Not) return mkNot(kids[0]);
      return f->kind == Kind::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    default:
      return f;
  }
}

bool evalGround(const NPtr& f) {
  switch (f->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lt:
      if (!f->t.isGround()) throw SolverLimit("non-ground atom");
      return f->t.c < 0;
    case Kind::Eq:
      if (!f->t.isGround()) throw SolverLimit("non-ground atom");
      return f->t.c == 0;
    case Kind::Dvd:
      if (!f->t.isGround()) throw SolverLimit("non-ground atom");
      return modNonNeg(f->t.c, f->m) == 0;
    case Kind::Ndvd:
      if (!f->t.isGround()) throw SolverLimit("non-ground atom");
      return modNonNeg(f->t.c, f->m) != 0;
    case Kind::Not:
      return !evalGround(f->kids[0]);
    case Kind::And:
      for (const auto& k : f->kids)
        if (!evalGround(k)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : f->kids)
        if (evalGround(k)) return true;
      return false;
    default:
      throw SolverLimit("quantifier in ground evaluation");
  }
}

NPtr substGroundVar(const NPtr& f, int var, Int value) {
  switch (f->kind) {
    case Kind::Lt:
    case Kind::Eq: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      LinTerm t = f->t.without(var).withConst(checkedMul(a, value));
      return f->kind == Kind::Lt ? mkLt(std::move(t)) : mkEq(std::move(t));
    }
    case Kind::Dvd:
    case Kind::Ndvd: {
      Int a = f->t.coefOf(var);
      if (a == 0) return f;
      LinTerm t = f->t.without(var).withConst(checkedMul(a, value));
      return f->kind == Kind::Dvd ? mkDvd(f->m, std::move(t)) : mkNdvd(f->m, std::move(t));
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Not: {
      std::vector<NPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(substGroundVar(k, var, value));
      if (f->kind == Kind::Not) return mkNot(kids[0]);
      return f->kind == Kind::And ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case Kind::Exists:
    case Kind::Forall: {
      if (f->var == var) return f;
      NPtr body = substGroundVar(f->kids[0], var, value);
      return f->kind == Kind::Exists ? mkExists(f->var, std::move(body))
                                     : mkForall(f->var, std::move(body));
    }
    default:
      return f;
  }
}

namespace {

/// Window guaranteed to contain a solution of a one-variable formula, if
/// any exists: beyond the last inequality boundary the truth value is
/// constant up to divisibility, which is delta-periodic.
void scanWindow(const NPtr& f, int var, Int& lo, Int& hi) {
  Int minB = 0, maxB = 0;
  Int delta = 1;
  std::vector<const Node*> stack{f.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    switch (n->kind) {
      case Kind::Lt:
      case Kind::Eq: {
        Int a = n->t.coefOf(var);
        if (a != 0) {
          Int b = floorDiv(-n->t.c, a);
          minB = std::min({minB, b - 1});
          maxB = std::max({maxB, b + 1});
        }
        break;
      }
      case Kind::Dvd:
      case Kind::Ndvd:
        if (n->t.coefOf(var) != 0) delta = lcmInt(delta, n->m);
        break;
      default:
        for (const auto& k : n->kids) stack.push_back(k.get());
    }
  }
  lo = checkedAdd(minB, -delta);
  hi = checkedAdd(maxB, delta);
}

}  // namespace

DecideResult decide(const NPtr& f, const std::vector<int>& freeOrder, bool wantModel) {
  NPtr qf = nnf(eliminateAll(f), false);

  size_t n = freeOrder.size();
  std::vector<NPtr> chain(n + 1);
  chain[n] = qf;
  for (size_t k = n; k > 0; --k)
    chain[k - 1] = cooperEliminate(freeOrder[k - 1], nnf(chain[k], false));

  DecideResult res;
  res.sat = evalGround(chain[0]);
  if (!res.sat || !wantModel) return res;

  for (size_t k = 0; k < n; ++k) {
    NPtr slice = chain[k + 1];
    for (size_t j = 0; j < k; ++j)
      slice = substGroundVar(slice, freeOrder[j], res.model.at(freeOrder[j]));
    int v = freeOrder[k];
    if (!containsVar(slice, v)) {
      res.model[v] = 0;
      continue;
    }
    Int lo, hi;
    scanWindow(slice, v, lo, hi);
    bool found = false;
    for (Int x = lo; x <= hi; ++x) {
      if (evalGround(substGroundVar(slice, v, x))) {
        res.model[v] = x;
        found = true;
        break;
      }
    }
    if (!found) throw SolverLimit("model reconstruction failed");
  }
  return res;
}

std::string toStringDebug(const NPtr& f) {
  switch (f->kind) {
    case Kind::True:
      return "T";
    case Kind::False:
      return "F";
    case Kind::Lt:
    case Kind::Eq:
    case Kind::Dvd:
    case Kind::Ndvd: {
      std::string t;
      for (const auto& [v, k] : f->t.coef)
        t += (t.empty() ? "" : "+") + std::to_string(k) + "x" + std::to_string(v);
      t += (t.empty() ? "" : "+") + std::to_string(f->t.c);
      switch (f->kind) {
        case Kind::Lt: return "(" + t + "<0)";
        case Kind::Eq: return "(" + t + "=0)";
        case Kind::Dvd: return "(" + std::to_string(f->m) + "|" + t + ")";
        default: return "!(" + std::to_string(f->m) + "|" + t + ")";
      }
    }
    case Kind::Not:
      return "~" + toStringDebug(f->kids[0]);
    case Kind::And:
    case Kind::Or: {
      std::string s = f->kind == Kind::And ? "(and" : "(or";
      for (const auto& k : f->kids) s += " " + toStringDebug(k);
      return s + ")";
    }
    case Kind::Exists:
      return "(ex x" + std::to_string(f->var) + ". " + toStringDebug(f->kids[0]) + ")";
    case Kind::Forall:
      return "(all x" + std::to_string(f->var) + ". " + toStringDebug(f->kids[0]) + ")";
  }
  return "?";
}

}  // namespace presburger
