#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace sdr {

using BigInt = boost::multiprecision::cpp_int;
// Exact arbitrary-precision rational, always kept in canonical form
// (positive denominator, reduced) by the backend.
using Rat = boost::multiprecision::cpp_rational;

// Accepts "p/q", plain integers, and decimal strings like "-1.25".
Rat parse_rational(const std::string& text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rat& r);

}  // namespace sdr
