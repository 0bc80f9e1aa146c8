#pragma once

#include <iosfwd>
#include <string>

#include "vclda/simulate.hpp"

namespace vclda {

// Dataset CSV format: header "u,y,x1,...,xp", one sample per row, u in
// [0,1], y in {0,1}, full-precision decimal floats, LF line endings.

void write_dataset_csv(std::ostream& os, const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

// Throws ParseError naming the offending row/column on malformed input.
Dataset read_dataset_csv(std::istream& is);
Dataset read_dataset_csv(const std::string& path);

}  // namespace vclda
