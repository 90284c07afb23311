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

// SMT-LIB2 solver for quantified linear integer arithmetic, reading
// commands from stdin and answering on stdout. Complete for Presburger
// formulas (quantifier elimination), so emptiness checks never come back
// unknown for the fragment this toolset emits.

#include <iostream>
#include <string>

#include "../src/presburger/server.hpp"

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--help" || arg == "-h") {
      std::cout << "usage: epbes-smt\n"
                   "Reads SMT-LIB2 commands on stdin (set-logic, declare-const,\n"
                   "assert, push, pop, check-sat, get-model, reset, exit) and\n"
                   "writes responses on stdout. Sorts: Int, Bool.\n";
      return 0;
    }
    std::cerr << "epbes-smt: unknown argument '" << arg << "'\n";
    return 2;
  }
  std::ios::sync_with_stdio(false);
  presburger::SmtServer server;
  server.run(std::cin, std::cout);
  return 0;
}
