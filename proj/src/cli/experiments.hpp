#pragma once

#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace wqed::cli {

// n evenly spaced points from a to b inclusive (n = 1 gives a).
std::vector<double> linspace(double a, double b, long n, const char* key);

Result run(const ExperimentConfig& cfg);

}  // namespace wqed::cli
