#pragma once

#include <string>
#include <vector>

#include "blocky/extract.hpp"

namespace blocky {

/// Replays an extraction trace against the original matrix and checks every
/// per-step inequality the recursion relies on. Returns a list of problems;
/// empty means the trace is consistent.
std::vector<std::string> audit_extraction(const BooleanMatrix& a, const ExtractionResult& result,
                                          int td_exact_limit = 24);

}  // namespace blocky
