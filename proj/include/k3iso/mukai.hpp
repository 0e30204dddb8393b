#pragma once

// Mukai vectors (r, c1, s) over the rank-2 model and the universal moves
// acting on them: reflection, tensor twist, scaling nu(d1, d2) and the
// Tyurin target test.

#include "k3iso/integer.hpp"
#include "k3iso/picard.hpp"

namespace k3iso {

enum class Sign { kPlus, kMinus };

inline int sign_value(Sign s) { return s == Sign::kPlus ? 1 : -1; }
inline char sign_char(Sign s) { return s == Sign::kPlus ? '+' : '-'; }

struct MukaiVector {
  PicardParams params;
  Int r;
  NVector c1;
  Int s;

  // Checks r >= 0 and c1 in N; throws PreconditionError otherwise.
  static MukaiVector make(const PicardParams& params, const Int& r, const NVector& c1,
                          const Int& s);

  bool operator==(const MukaiVector& other) const = default;
};

// (ac, H, bc), the vector whose moduli space is Y.
MukaiVector initial_vector(const PicardParams& params);

// c1^2 - 2rs.
Int mukai_square(const MukaiVector& v);

// gcd(r, divisor of c1 in N, s).
Int gcd_divisor(const MukaiVector& v);
bool is_primitive(const MukaiVector& v);

// (r, c1, s) -> (s, c1, r). Requires r, s >= 1 and v primitive.
MukaiVector reflect(const MukaiVector& v);

// E -> E (x) O(D): (r, c1 + rD, s + r D^2/2 + D.c1).
MukaiVector tensor_twist(const MukaiVector& v, const NVector& twist);

// kTheorem enforces every hypothesis of the scaling theorem (v isotropic, c1
// primitive, coprimality); kCoprimalityOnly checks only
// (d1, s) = (d2, r) = (d1, d2) = 1 and is used for composing scalings.
enum class NuHypotheses { kTheorem, kCoprimalityOnly };

// (r, c1, s) -> (d1^2 r, d1 d2 c1, d2^2 s).
MukaiVector scale_nu(const MukaiVector& v, const Int& d1, const Int& d2,
                     NuHypotheses hypotheses = NuHypotheses::kTheorem);

// True iff v = (sign h1^2 / 2, h1, sign). Requires sign * h1^2 > 0.
bool tyurin_target_check(const MukaiVector& v, const NVector& h1, Sign sign);

}  // namespace k3iso
