#pragma once

// Text forms accepted on the command line.

#include "odo/simple_function.hpp"

#include <string>
#include <vector>

namespace odo::cli {

// example-d | uniform:A | dyadic:B[:Q] | table:FILE
MeasureSeq parse_system(const std::string& spec);

// "0,1,1" -> {0, 1, 1}
std::vector<unsigned> parse_digits(const std::string& text);

// B<k> (marker system only) | full | comma-separated cylinder digits
PatternSet parse_set(const std::string& spec, const MeasureSeq& ms, bool marker_system);

// Comma-separated values on all depth-D cylinders (beta_D entries); a single
// value is a constant.
SimpleFunction parse_phi(const std::string& spec, const BaseSeq& base);

}  // namespace odo::cli
