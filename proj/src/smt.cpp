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

#include "epbes/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <stdexcept>

namespace epbes {

namespace {

std::string quoteSymbol(const std::string& name) { return "|" + name + "|"; }

std::int64_t nowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string encodeSmtTerm(const DataExprPtr& e) {
  switch (e->op) {
    case DataOp::NatConst:
      return std::to_string(e->k);
    case DataOp::BoolConst:
      return e->bval ? "true" : "false";
    case DataOp::Var:
      return quoteSymbol(e->name);
    case DataOp::Add:
      return "(+ " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Monus: {
      std::string a = encodeSmtTerm(e->args[0]);
      std::string b = encodeSmtTerm(e->args[1]);
      return "(ite (>= " + a + " " + b + ") (- " + a + " " + b + ") 0)";
    }
    case DataOp::MulConst:
      return "(* " + std::to_string(e->k) + " " + encodeSmtTerm(e->args[0]) + ")";
    case DataOp::ModConst:
      return "(mod " + encodeSmtTerm(e->args[0]) + " " + std::to_string(e->k) + ")";
    case DataOp::Eq:
      return "(= " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Ne:
      return "(distinct " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Lt:
      return "(< " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Le:
      return "(<= " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Gt:
      return "(> " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Ge:
      return "(>= " + encodeSmtTerm(e->args[0]) + " " + encodeSmtTerm(e->args[1]) + ")";
    case DataOp::Not:
      return "(not " + encodeSmtTerm(e->args[0]) + ")";
    case DataOp::And:
    case DataOp::Or: {
      std::string s = e->op == DataOp::And ? "(and" : "(or";
      for (const auto& a : e->args) s += " " + encodeSmtTerm(a);
      return s + ")";
    }
    case DataOp::Exists: {
      std::string v = quoteSymbol(e->name);
      if (e->varSort == Sort::Nat)
        return "(exists ((" + v + " Int)) (and (>= " + v + " 0) " +
               encodeSmtTerm(e->args[0]) + "))";
      return "(exists ((" + v + " Bool)) " + encodeSmtTerm(e->args[0]) + ")";
    }
  }
  throw Error("malformed expression");
}

std::string SmtQuery::script() const {
  std::string s;
  for (const auto& c : consts) {
    std::string v = quoteSymbol(c.name);
    if (c.sort == Sort::Nat) {
      s += "(declare-const " + v + " Int)\n";
      s += "(assert (>= " + v + " 0))\n";
    } else {
      s += "(declare-const " + v + " Bool)\n";
    }
  }
  s += "(assert " + encodeSmtTerm(assertion) + ")\n";
  return s;
}

SmtConfig defaultSmtConfig() {
  SmtConfig cfg;
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    auto candidate = self.parent_path() / "epbes-smt";
    if (std::filesystem::exists(candidate, ec) && !ec) {
      cfg.command = {candidate.string()};
      return cfg;
    }
  }
  cfg.command = {"epbes-smt"};
  return cfg;
}

SolverSession::SolverSession(SmtConfig config) : config_(std::move(config)) {
  if (config_.command.empty()) throw Error("empty SMT solver command");
}

SolverSession::~SolverSession() { stop(); }

void SolverSession::start() {
  int inPipe[2];   // parent -> child
  int outPipe[2];  // child -> parent
  if (pipe(inPipe) != 0 || pipe(outPipe) != 0)
    throw SolverCrash("cannot create pipes for the SMT solver");
  pid_t pid = fork();
  if (pid < 0) throw SolverCrash("cannot fork the SMT solver");
  if (pid == 0) {
    dup2(inPipe[0], STDIN_FILENO);
    dup2(outPipe[1], STDOUT_FILENO);
    close(inPipe[0]);
    close(inPipe[1]);
    close(outPipe[0]);
    close(outPipe[1]);
    std::vector<char*> argv;
    for (const auto& a : config_.command) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    fprintf(stderr, "epbes: cannot execute SMT solver '%s': %s\n", argv[0],
            strerror(errno));
    _exit(127);
  }
  close(inPipe[0]);
  close(outPipe[1]);
  childIn_ = inPipe[1];
  childOut_ = outPipe[0];
  pid_ = pid;
  buf_.clear();
  signal(SIGPIPE, SIG_IGN);
  writeAll("(set-logic ALL)\n");
}

void SolverSession::stop() {
  if (childIn_ >= 0) {
    close(childIn_);
    childIn_ = -1;
  }
  if (childOut_ >= 0) {
    close(childOut_);
    childOut_ = -1;
  }
  if (pid_ > 0) {
    kill(static_cast<pid_t>(pid_), SIGKILL);
    int status = 0;
    waitpid(static_cast<pid_t>(pid_), &status, 0);
    pid_ = -1;
  }
}

void SolverSession::writeAll(const std::string& s) {
  size_t off = 0;
  while (off < s.size()) {
    ssize_t n = write(childIn_, s.data() + off, s.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SolverCrash("SMT solver pipe closed while writing");
    }
    off += static_cast<size_t>(n);
  }
}

bool SolverSession::fillBuffer(std::int64_t deadlineMs) {
  std::int64_t remain = deadlineMs - nowMs();
  if (remain < 0) remain = 0;
  pollfd pfd{childOut_, POLLIN, 0};
  int pr = poll(&pfd, 1, static_cast<int>(remain));
  if (pr == 0) return false;  // timeout
  if (pr < 0) throw SolverCrash("poll on SMT solver failed");
  char chunk[4096];
  ssize_t n = read(childOut_, chunk, sizeof chunk);
  if (n <= 0) throw SolverCrash("SMT solver closed its output");
  buf_.append(chunk, static_cast<size_t>(n));
  return true;
}

std::string SolverSession::readLine(std::int64_t deadlineMs) {
  for (;;) {
    size_t nl = buf_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buf_.substr(0, nl);
      buf_.erase(0, nl + 1);
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (line.empty()) continue;
      return line;
    }
    if (!fillBuffer(deadlineMs)) return "";  // timeout
  }
}

std::string SolverSession::readBalanced(std::int64_t deadlineMs) {
  size_t pos = 0;
  int depth = 0;
  bool started = false;
  for (;;) {
    for (; pos < buf_.size(); ++pos) {
      char c = buf_[pos];
      if (c == '(') {
        ++depth;
        started = true;
      } else if (c == ')') {
        --depth;
      }
      if (started && depth == 0) {
        std::string s = buf_.substr(0, pos + 1);
        buf_.erase(0, pos + 1);
        return s;
      }
    }
    if (!fillBuffer(deadlineMs)) return "";  // timeout
  }
}

namespace {

Value parseModelValue(const std::string& sort, const std::string& text) {
  if (sort == "Bool") return Value::ofBool(text == "true");
  long long v = 0;
  bool neg = false;
  for (char c : text) {
    if (c == '-') neg = true;
    if (std::isdigit(static_cast<unsigned char>(c)))
      v = v * 10 + (c - '0');
  }
  if (neg) v = -v;
  if (v < 0) v = 0;  // Nat constants carry >= 0 assertions
  return Value::ofNat(static_cast<std::uint64_t>(v));
}

// minimal reader for ((define-fun name () Sort value) ...)
std::map<std::string, Value> parseModel(const std::string& text) {
  std::map<std::string, Value> model;
  size_t pos = 0;
  auto skipWs = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto token = [&]() -> std::string {
    skipWs();
    if (pos >= text.size()) return "";
    char c = text[pos];
    if (c == '(' || c == ')') {
      ++pos;
      return std::string(1, c);
    }
    if (c == '|') {
      size_t end = text.find('|', pos + 1);
      std::string t = text.substr(pos + 1, end - pos - 1);
      pos = end + 1;
      return t;
    }
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return text.substr(start, pos - start);
  };
  // walk tokens; on "define-fun" read: name, (, ), sort, value
  std::string t;
  while (!(t = token()).empty()) {
    if (t != "define-fun") continue;
    std::string name = token();
    std::string open = token();
    std::string close = token();
    std::string sort = token();
    std::string val = token();
    if (val == "(") {
      // negative numeral (- k)
      std::string minus = token();
      std::string num = token();
      token();  // ')'
      val = minus + num;
    }
    if (open == "(" && close == ")") model[name] = parseModelValue(sort, val);
  }
  return model;
}

}  // namespace

SmtResult SolverSession::runQuery(const std::string& script, bool wantModel) {
  if (pid_ < 0) start();
  std::int64_t deadline = nowMs() + config_.timeoutMs;
  ++calls_;
  writeAll("(push 1)\n" + script + "(check-sat)\n");
  std::string verdict = readLine(deadline);
  if (verdict.empty()) {
    // timeout: the child may be stuck, drop it
    stop();
    return {SmtVerdict::Unknown, {}};
  }
  if (verdict.rfind("(error", 0) == 0)
    throw SolverCrash("SMT solver reported: " + verdict);
  SmtResult res;
  if (verdict == "sat")
    res.verdict = SmtVerdict::Sat;
  else if (verdict == "unsat")
    res.verdict = SmtVerdict::Unsat;
  else if (verdict == "unknown")
    res.verdict = SmtVerdict::Unknown;
  else
    throw SolverCrash("unexpected SMT solver reply '" + verdict + "'");
  if (res.verdict == SmtVerdict::Sat && wantModel) {
    writeAll("(get-model)\n");
    std::string modelText = readBalanced(deadline);
    if (modelText.empty()) {
      stop();
      return {SmtVerdict::Unknown, {}};
    }
    res.model = parseModel(modelText);
  }
  writeAll("(pop 1)\n");
  return res;
}

SmtResult SolverSession::check(const SmtQuery& q, bool wantModel) {
  ++queries_;
  std::string script = q.script();
  lastScript_ = script;
  auto it = cache_.find(script);
  if (it != cache_.end() && (!wantModel || it->second.hasModel)) {
    SmtResult res;
    res.verdict = it->second.verdict;
    if (wantModel) res.model = it->second.model;
    return res;
  }
  auto t0 = std::chrono::steady_clock::now();
  SmtResult res;
  try {
    res = runQuery(script, wantModel);
  } catch (const SolverCrash&) {
    // one restart with the query replayed
    stop();
    res = runQuery(script, wantModel);
  }
  seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.verdict != SmtVerdict::Unknown)
    cache_[script] = CacheEntry{res.verdict, wantModel, res.model};
  return res;
}

SmtVerdict smtCheckVerdict(SolverSession& s, const SmtQuery& q) {
  SmtResult r = s.check(q, false);
  if (r.verdict == SmtVerdict::Unknown)
    throw SolverUnknown("SMT solver returned unknown", s.lastScript());
  return r.verdict;
}

}  // namespace epbes
