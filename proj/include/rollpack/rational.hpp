#ifndef ROLLPACK_RATIONAL_HPP
#define ROLLPACK_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rollpack {

// Every size, load and probability in the workbench is an exact rational.
// GMP keeps values canonical (reduced, positive denominator), so equality
// is plain value equality and comparisons near bin capacity are exact.
using Rat = mpq_class;
using Int = mpz_class;

// Canonicalized rational from integer parts. Throws on zero denominator.
Rat rat(long num, long den = 1);
Rat rat(const Int& num, const Int& den);

// Accepts "13/20", "0.65", "2"; decimals are converted exactly
// ("0.36" -> 9/25). Throws std::invalid_argument on malformed input.
Rat parse_rational(std::string_view text);

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rat& r);

double to_double(const Rat& r);

Int ceil_rat(const Rat& r);
Int floor_rat(const Rat& r);

}  // namespace rollpack

#endif
