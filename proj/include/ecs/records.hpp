#pragma once

#include <string>
#include <vector>

#include "ecs/experiments.hpp"

namespace ecs {

// Floats are rendered with 12 significant digits, locale-independent.
std::string format_double(double x);

// Meta lines are echoed as '# ...' comments above the header row.
// LF line endings, UTF-8, deterministic for fixed inputs.
std::string records_to_csv(const std::vector<SweepRecord>& records,
                           const std::vector<std::string>& meta_lines);

// Array of flat objects mirroring the CSV columns.
std::string records_to_json(const std::vector<SweepRecord>& records);

}  // namespace ecs
