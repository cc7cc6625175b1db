#pragma once

// Reader for fixtures/cli_contract.txt: one CLI invocation per line, preceded
// by its expected exit status. "{F}" expands to the fixture directory.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace contract {

struct Case {
  int expected = 0;
  std::vector<std::string> args;
  std::string line;
};

inline std::vector<Case> load() {
  std::ifstream in(oracle::fixture("cli_contract.txt"));
  std::vector<Case> out;
  std::string line;
  const std::string dir = FIXTURE_DIR;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    Case c;
    c.line = line;
    words >> c.expected;
    std::string w;
    while (words >> w) {
      for (auto pos = w.find("{F}"); pos != std::string::npos; pos = w.find("{F}")) w.replace(pos, 3, dir);
      c.args.push_back(w);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace contract
