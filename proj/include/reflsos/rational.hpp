#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "reflsos/error.hpp"

namespace rsos {

// All core arithmetic is exact. mpq_class is always kept canonicalized.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  require(den != 0, Errc::invalid_argument, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p" or "p/q" with optional sign.
Rat rat_parse(const std::string& s);

std::string rat_str(const Rat& q);

double rat_double(const Rat& q);

Rat rat_abs(const Rat& q);

Rat factorial(int n);
Rat binomial(int n, int k);

// Best rational approximation of x with denominator <= max_den (continued fractions).
// Used when rounding floating solver output back into exact arithmetic.
Rat rationalize(double x, std::int64_t max_den);

}  // namespace rsos
