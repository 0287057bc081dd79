#include <algorithm>
#include <iostream>

#include "suite.hpp"

int main() {
  frontlab::suite::PaperSuite suite;
  const auto results = suite.run_all(&std::cout);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << '\n';
  return all ? 0 : 1;
}
