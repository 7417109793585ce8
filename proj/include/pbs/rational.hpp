#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pbs {

// Exact arbitrary-precision rational used wherever a statistic or an optimum
// must not pick up floating-point error: oracle objective values, benchmark
// ratio aggregates.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Decimal rendering with exactly six fractional digits, ties rounded to even
// (so 0.0000005 -> "0.000000" and 0.0000015 -> "0.000002"). Used for every
// rational emitted in text output.
std::string format_fixed6(const Rational& x);

}  // namespace pbs
