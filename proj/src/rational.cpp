#include "pbs/rational.hpp"

namespace pbs {

std::string format_fixed6(const Rational& x) {
  const bool negative = x < 0;
  const Rational a = negative ? Rational(-x) : x;

  BigInt scaled = boost::multiprecision::numerator(a) * 1'000'000;
  const BigInt den = boost::multiprecision::denominator(a);
  BigInt q = scaled / den;
  const BigInt twice_rem = (scaled % den) * 2;
  if (twice_rem > den || (twice_rem == den && (q & 1) != 0)) ++q;

  std::string digits = q.str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  digits.insert(digits.size() - 6, ".");
  if (negative && q != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace pbs
