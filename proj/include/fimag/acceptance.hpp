#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fimag/io.hpp"

namespace fimag {

enum class Scale { small, full };

Scale parse_scale(const std::string& s);  // "small" | "full"
std::string scale_name(Scale s);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // one line of counts, or the first failure
  double seconds = 0;  // not part of the JSON report
  Json data;           // deterministic counts
};

// Criteria 1-10 in order. `only` restricts to the listed ids. Criterion 10
// reruns the small-scale suite and compares the JSON byte for byte.
std::vector<CriterionResult> run_acceptance(Scale scale, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

// Deterministic report: no timings.
Json acceptance_to_json(Scale scale, const std::vector<CriterionResult>& results);

}  // namespace fimag
