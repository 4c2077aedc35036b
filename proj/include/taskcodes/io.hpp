#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "taskcodes/partition.hpp"
#include "taskcodes/probability.hpp"
#include "taskcodes/task_code.hpp"

namespace taskcodes {

// Plain-text inputs. Blank lines and lines starting with '#' are ignored;
// errors carry the 1-based line number of the offending line.
//
//   pmf:     one probability per line
//   markov:  state count, then the initial row, then one row per state
//   budgets: one budget per line, a positive integer or "inf"
Pmf parse_pmf(std::string_view text);
MarkovSource parse_markov(std::string_view text);
LambdaBudget parse_budgets(std::string_view text);

std::string read_file(const std::string& path);

// CSV cells: 12 significant digits, '.' separator, "inf"/"-inf"/"nan".
std::string format_number(double value);

std::string report_csv_header(bool mismatch = false);
std::string report_csv_row(const MomentReport& report);
// Mismatch rows add q_id and delta_bits.
std::string report_csv_row(const MomentReport& report, std::string_view q_id,
                           double delta_bits);

}  // namespace taskcodes
