#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tspgap {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;

/// num/den in lowest terms. Throws ValidationError when den == 0.
Rat make_rat(const mpz_class& num, const mpz_class& den);
Rat make_rat(long num, long den = 1);

/// Parses "a", "-a" or "a/b".
Rat parse_rat(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rat& value);

/// Fixed-point rendering rounded half away from zero; annotation only.
std::string to_decimal(const Rat& value, int digits = 6);

/// Least common multiple of the denominators in [first, last).
template <typename It>
mpz_class common_denominator(It first, It last) {
  mpz_class lcm = 1;
  for (; first != last; ++first) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), first->get_den_mpz_t());
  }
  return lcm;
}

}  // namespace tspgap
