#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracline/grid.hpp"
#include "fracline/solvers.hpp"

namespace fracline {

/// 17 significant digits, locale independent.
std::string format_number(double v);

/// Header `x,t,w` (or `x,t,E`), one row per (time, node) pair.  All
/// writers go through a temp file in the target directory followed by a
/// rename, so readers never observe a partial file.
void write_field_csv(const std::string& path, const SolutionField& field,
                     const std::string& value_column);

/// Flat key=value report, one pair per line, keys written in the order
/// given.
void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& kv);

/// Initial condition from a CSV with header `x,g`: x strictly increasing
/// and uniform starting at 0, finite values.  Throws on format errors.
GridFunction read_initial_csv(const std::string& path);

}  // namespace fracline
