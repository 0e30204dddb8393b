#include "k3iso/picard.hpp"

namespace k3iso {

PicardParams PicardParams::from_rs(const Int& r, const Int& s, const Int& d, const Int& mu) {
  if (r < 1 || s < 1) {
    throw PreconditionError("r and s must be positive");
  }
  const Int c = gcd_all({r, s});
  return PicardParams{r / c, s / c, c, d, mu};
}

std::optional<std::string> validation_error(const PicardParams& p) {
  if (p.a < 1 || p.b < 1 || p.c < 1) return "a, b, c must be positive";
  if (gcd_all({p.a, p.b}) != 1) return "gcd(a, b) must be 1";
  if (p.d < 1) return "d must be positive";
  const Int h2 = p.h_square();
  if (gcd_all({p.mu, h2}) != 1) return "mu must be a unit modulo 2abc^2";
  if (!divides(2 * h2, p.mu * p.mu - p.d)) return "mu^2 must be congruent to d modulo 4abc^2";
  return std::nullopt;
}

bool validate(const PicardParams& params) { return !validation_error(params).has_value(); }

void require_valid(const PicardParams& params) {
  if (auto err = validation_error(params)) {
    throw PreconditionError("invalid Picard parameters: " + *err);
  }
}

PicardParams canonical(const PicardParams& params) {
  PicardParams out = params;
  out.mu = mod(params.mu, params.h_square());
  return out;
}

PicardParams normalized(const PicardParams& params) {
  PicardParams out = canonical(params);
  Int other = out.h_square() - out.mu;
  if (out.mu != 0 && other < out.mu) out.mu = other;
  return out;
}

NVector operator+(const NVector& u, const NVector& v) { return {u.x + v.x, u.y + v.y}; }
NVector operator-(const NVector& u, const NVector& v) { return {u.x - v.x, u.y - v.y}; }
NVector operator-(const NVector& v) { return {-v.x, -v.y}; }
NVector operator*(const Int& k, const NVector& v) { return {k * v.x, k * v.y}; }

bool in_lattice(const PicardParams& params, const NVector& z) {
  return divides(params.h_square(), z.x - params.mu * z.y);
}

NVector polarization(const PicardParams& params) { return {params.h_square(), 0}; }
NVector w_generator(const PicardParams& params) { return {params.mu, 1}; }
NVector delta_direction(const PicardParams& params) { return {0, params.h_square()}; }

Int pair(const PicardParams& params, const NVector& z1, const NVector& z2) {
  if (!in_lattice(params, z1) || !in_lattice(params, z2)) {
    throw InvariantError("pair: element violates x = mu y (mod 2abc^2)");
  }
  return exact_div(z1.x * z2.x - params.d * z1.y * z2.y, params.h_square(),
                   "pairing in N");
}

Int norm(const PicardParams& params, const NVector& z) { return pair(params, z, z); }

GramLattice gram(const PicardParams& params) {
  const Int h2 = params.h_square();
  IntMatrix g(2, 2);
  g(0, 0) = h2;
  g(0, 1) = params.mu;
  g(1, 0) = params.mu;
  g(1, 1) = exact_div(params.mu * params.mu - params.d, h2, "w^2");
  return GramLattice(std::move(g));
}

std::pair<Int, Int> basis_coordinates(const PicardParams& params, const NVector& z) {
  Int alpha = exact_div(z.x - params.mu * z.y, params.h_square(), "H-coordinate");
  return {alpha, z.y};
}

NVector from_basis(const PicardParams& params, const Int& alpha, const Int& beta) {
  return alpha * polarization(params) + beta * w_generator(params);
}

Int element_divisor(const PicardParams& params, const NVector& z) {
  auto [alpha, beta] = basis_coordinates(params, z);
  return gcd_all({alpha, beta});
}

}  // namespace k3iso
