#include "k3iso/mukai.hpp"

namespace k3iso {

MukaiVector MukaiVector::make(const PicardParams& params, const Int& r, const NVector& c1,
                              const Int& s) {
  if (r < 0) {
    throw PreconditionError("Mukai vector: rank must be non-negative");
  }
  if (!in_lattice(params, c1)) {
    throw PreconditionError("Mukai vector: c1 is not in N");
  }
  return MukaiVector{params, r, c1, s};
}

MukaiVector initial_vector(const PicardParams& params) {
  return MukaiVector::make(params, params.r(), polarization(params), params.s());
}

Int mukai_square(const MukaiVector& v) { return norm(v.params, v.c1) - 2 * v.r * v.s; }

Int gcd_divisor(const MukaiVector& v) {
  if (v.r == 0 && v.s == 0 && v.c1 == NVector{0, 0}) {
    throw PreconditionError("gcd_divisor: zero vector");
  }
  return gcd_all({v.r, element_divisor(v.params, v.c1), v.s});
}

bool is_primitive(const MukaiVector& v) { return gcd_divisor(v) == 1; }

MukaiVector reflect(const MukaiVector& v) {
  if (v.r < 1 || v.s < 1) {
    throw PreconditionError("reflect: requires r >= 1 and s >= 1");
  }
  if (!is_primitive(v)) {
    throw PreconditionError("reflect: vector is not primitive");
  }
  return MukaiVector{v.params, v.s, v.c1, v.r};
}

MukaiVector tensor_twist(const MukaiVector& v, const NVector& twist) {
  if (!in_lattice(v.params, twist)) {
    throw PreconditionError("tensor_twist: D is not in N");
  }
  const Int half_square = exact_div(norm(v.params, twist), 2, "D^2 / 2");
  MukaiVector out = v;
  out.c1 = v.c1 + v.r * twist;
  out.s = v.s + v.r * half_square + pair(v.params, twist, v.c1);
  return out;
}

MukaiVector scale_nu(const MukaiVector& v, const Int& d1, const Int& d2,
                     NuHypotheses hypotheses) {
  if (d1 < 1 || d2 < 1) {
    throw PreconditionError("scale_nu: d1 and d2 must be positive");
  }
  if (gcd_all({d1, v.s}) != 1 || gcd_all({d2, v.r}) != 1 || gcd_all({d1, d2}) != 1) {
    throw PreconditionError("scale_nu: coprimality (d1,s) = (d2,r) = (d1,d2) = 1 violated");
  }
  if (hypotheses == NuHypotheses::kTheorem) {
    if (mukai_square(v) != 0) {
      throw PreconditionError("scale_nu: vector is not isotropic");
    }
    if (element_divisor(v.params, v.c1) != 1) {
      throw PreconditionError("scale_nu: c1 is not primitive");
    }
  }
  return MukaiVector{v.params, d1 * d1 * v.r, (d1 * d2) * v.c1, d2 * d2 * v.s};
}

bool tyurin_target_check(const MukaiVector& v, const NVector& h1, Sign sign) {
  const Int h1_square = norm(v.params, h1);
  if (h1_square == 0) {
    throw PreconditionError("tyurin_target_check: h1^2 = 0");
  }
  const int sg = sign_value(sign);
  if (sg * h1_square <= 0) {
    throw PreconditionError("tyurin_target_check: sign * h1^2 must be positive");
  }
  return v.r == exact_div(sg * h1_square, 2, "h1^2 / 2") && v.c1 == h1 && v.s == sg;
}

}  // namespace k3iso
