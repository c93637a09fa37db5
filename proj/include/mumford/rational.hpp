#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>

namespace mumford {

using Q = mpq_class;
using Z = mpz_class;

// Valuation of zero.
inline constexpr long kInfVal = LONG_MAX;

long valuation(const Z& x, unsigned long p);
long valuation(const Q& x, unsigned long p);

// p^k for any integer k.
Q qpow(unsigned long p, long k);

// Parses "a", "a/b", or decimal-free forms; throws std::invalid_argument.
Q parseRational(const std::string& s);
std::string toString(const Q& x);

} // namespace mumford
