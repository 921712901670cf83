/**
 * Exact arithmetic scalars: arbitrary-precision rationals and integers
 * (GMP-backed) plus the "p/q" string round-trip used by all serializers.
 */

#ifndef BRKZ_RATIONAL_HPP
#define BRKZ_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace brkz {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

inline std::string rational_to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    Rational r(s);                  // GMP accepts "p" and "p/q"
    if (denominator(r) == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + s);
    return r;
}

inline Integer factorial(int n)
{
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/** (n-1)!! for even n >= 0 interpreted as the number of perfect matchings of n points. */
inline Integer double_factorial_odd(int n)
{
    Integer f = 1;
    for (int i = n - 1; i > 1; i -= 2) f *= i;
    return f;
}

inline Integer binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    Integer b = 1;
    for (int i = 0; i < k; ++i) { b *= (n - i); b /= (i + 1); }
    return b;
}

} // namespace brkz

#endif
