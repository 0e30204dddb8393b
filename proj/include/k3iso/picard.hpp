#pragma once

// The rank-2 lattice N containing the polarization H with H.N = Z.
//
// With H^2 = 2abc^2 and d = -det N, N is generated by H, the orthogonal
// direction delta (delta^2 = -2abc^2 d) and w = (mu H + delta) / 2abc^2.
// Elements are written z = (x H + y delta) / 2abc^2 with x = mu y mod 2abc^2,
// and carried as the integer pair (x, y).

#include <optional>
#include <string>
#include <utility>

#include "k3iso/integer.hpp"
#include "k3iso/lattice.hpp"

namespace k3iso {

struct PicardParams {
  Int a;
  Int b;
  Int c;
  Int d;
  Int mu;

  Int r() const { return a * c; }
  Int s() const { return b * c; }
  // H^2 = 2rs = 2abc^2.
  Int h_square() const { return 2 * a * b * c * c; }

  // Accepts the (r, s) vocabulary: c = gcd(r, s), a = r / c, b = s / c.
  static PicardParams from_rs(const Int& r, const Int& s, const Int& d, const Int& mu);

  bool operator==(const PicardParams& other) const = default;
};

// Reason the parameters are invalid, or nullopt if they are valid.
std::optional<std::string> validation_error(const PicardParams& params);
bool validate(const PicardParams& params);

// Throws PreconditionError if the parameters are invalid.
void require_valid(const PicardParams& params);

// mu reduced into [0, 2abc^2).
PicardParams canonical(const PicardParams& params);

// Canonical form with the smaller of mu and 2abc^2 - mu.
PicardParams normalized(const PicardParams& params);

struct NVector {
  Int x;
  Int y;

  bool operator==(const NVector& other) const = default;
};

NVector operator+(const NVector& u, const NVector& v);
NVector operator-(const NVector& u, const NVector& v);
NVector operator-(const NVector& v);
NVector operator*(const Int& k, const NVector& v);

// x = mu y (mod 2abc^2).
bool in_lattice(const PicardParams& params, const NVector& z);

NVector polarization(const PicardParams& params);     // H = (2abc^2, 0)
NVector w_generator(const PicardParams& params);      // w = (mu, 1)
NVector delta_direction(const PicardParams& params);  // delta = (0, 2abc^2)

// z^2 = (x^2 - d y^2) / 2abc^2; throws InvariantError if z is not in N.
Int norm(const PicardParams& params, const NVector& z);
Int pair(const PicardParams& params, const NVector& z1, const NVector& z2);

// Gram matrix in the basis (H, w): [[2abc^2, mu], [mu, (mu^2 - d) / 2abc^2]].
GramLattice gram(const PicardParams& params);

// (alpha, beta) with z = alpha H + beta w.
std::pair<Int, Int> basis_coordinates(const PicardParams& params, const NVector& z);
NVector from_basis(const PicardParams& params, const Int& alpha, const Int& beta);

// Largest n with z / n in N (0 for z = 0).
Int element_divisor(const PicardParams& params, const NVector& z);

}  // namespace k3iso
