#include "k3iso/integer.hpp"

#include <algorithm>

namespace k3iso {

Int gcd_all(std::span<const Int> values) {
  Int g = 0;
  for (const Int& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  return g;
}

Int gcd_all(std::initializer_list<Int> values) {
  return gcd_all(std::span<const Int>(values.begin(), values.size()));
}

Int mod(const Int& a, const Int& m) {
  if (m == 0) {
    throw PreconditionError("mod: zero modulus");
  }
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool divides(const Int& divisor, const Int& value) {
  return mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

Int exact_div(const Int& a, const Int& b, std::string_view what) {
  if (b == 0 || !divides(b, a)) {
    throw InvariantError("inexact division: " + std::string(what));
  }
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int isqrt(const Int& n) {
  if (n < 0) {
    throw PreconditionError("isqrt of a negative number");
  }
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n, Int* root) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) {
    return false;
  }
  if (root != nullptr) {
    *root = isqrt(n);
  }
  return true;
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> primes;
  Int m = abs(n);
  for (Int p = 2; p * p <= m; ++p) {
    if (divides(p, m)) {
      primes.push_back(p);
      while (divides(p, m)) {
        m /= p;
      }
    }
  }
  if (m > 1) {
    primes.push_back(m);
  }
  return primes;
}

std::vector<Int> positive_divisors(const Int& n) {
  if (n == 0) {
    throw PreconditionError("divisors of zero");
  }
  const Int m = abs(n);
  std::vector<Int> small, large;
  for (Int k = 1; k * k <= m; ++k) {
    if (divides(k, m)) {
      small.push_back(k);
      Int other = m / k;
      if (other != k) {
        large.push_back(other);
      }
    }
  }
  std::reverse(large.begin(), large.end());
  small.insert(small.end(), large.begin(), large.end());
  return small;
}

Int parse_int(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') {
    s.erase(0, 1);
  }
  const bool digits_ok =
      !s.empty() &&
      std::all_of(s.begin() + (s.front() == '-' ? 1 : 0), s.end(),
                  [](char ch) { return ch >= '0' && ch <= '9'; }) &&
      s != "-";
  if (!digits_ok) {
    throw PreconditionError("not an integer: '" + std::string(text) + "'");
  }
  return Int(s, 10);
}

std::string to_string(const Int& value) { return value.get_str(10); }

}  // namespace k3iso
