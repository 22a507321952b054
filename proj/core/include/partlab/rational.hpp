#pragma once

#include <gmpxx.h>

#include <string>

namespace partlab {

using Int = mpz_class;
using Rational = mpq_class;

// Canonical "num/den" text with an explicit denominator, e.g. "23/16", "0/1".
std::string to_fraction_string(const Rational& q);

// The exact rational value of a finite double (every finite double is rational).
Rational rational_from_double(double x);

} // namespace partlab
