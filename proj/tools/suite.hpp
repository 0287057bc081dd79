#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "frontlab/pde.hpp"

namespace frontlab::suite {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

/// Acceptance matrix 1-10. PDE runs are cached and shared between criteria.
class PaperSuite {
 public:
  static constexpr int kCount = 10;

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

 private:
  const Simulation& fig1(double k);
  const Simulation& anti();

  std::optional<Simulation> k2_, k05_, k1_, anti_;
};

std::string format(const CriterionResult& r);

}  // namespace frontlab::suite
