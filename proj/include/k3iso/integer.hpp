#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace k3iso {

using Int = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied data that violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An identity that must hold by construction failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Non-negative gcd of all values; gcd of an empty list is 0.
Int gcd_all(std::span<const Int> values);
Int gcd_all(std::initializer_list<Int> values);

// Residue in [0, |m|).
Int mod(const Int& a, const Int& m);

bool divides(const Int& divisor, const Int& value);

// a / b, throwing InvariantError with `what` if b does not divide a.
Int exact_div(const Int& a, const Int& b, std::string_view what);

Int isqrt(const Int& n);

// True iff n >= 0 is a perfect square; stores the root when requested.
bool is_square(const Int& n, Int* root = nullptr);

// Distinct prime divisors of |n| in increasing order (trial division).
std::vector<Int> prime_divisors(const Int& n);

// All positive divisors of |n| in increasing order; n must be nonzero.
std::vector<Int> positive_divisors(const Int& n);

Int parse_int(std::string_view text);

std::string to_string(const Int& value);

}  // namespace k3iso
