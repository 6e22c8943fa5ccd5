#ifndef KSTAB_RATIONAL_HPP
#define KSTAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kstab {

// All arithmetic in this project is exact.  Rational is the only scalar type;
// no floating point appears anywhere in the computation paths.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "n" or "n/d" with d > 0.  Throws InputError on anything else.
Rational parse_rational(std::string_view text);

// Canonical form: "n" when the denominator is 1, else "n/d".
std::string rational_str(const Rational& q);

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

} // namespace kstab

#endif
