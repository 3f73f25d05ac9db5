#ifndef KNEAD_RATIONAL_HPP
#define KNEAD_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace knead {

// Exact arithmetic only: every weight, length and bound in this library is a
// rational or an integer, never a float.
using Rat = mpq_class;
using Int = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "3", "-3", "7/2". Decimal notation is rejected: callers that want
// 0.5 must write 1/2.
Rat parse_rational(const std::string& text);

std::string rat_to_string(const Rat& r);

// floor(r) as an exact integer.
Int rat_floor(const Rat& r);

// Binomial coefficient C(n, k) with big integers.
Int binomial(unsigned long n, unsigned long k);

Int int_pow(const Int& base, unsigned long exp);

}  // namespace knead

#endif
