#include "k3iso/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace k3iso::oracle {

namespace {

void require_bound(std::int64_t bound) {
  if (bound < 0 || bound > kMaxBruteForceBound) {
    throw PreconditionError("oracle: bound must lie in [0, 10^4]");
  }
}

bool is_square_i64(std::int64_t n, std::int64_t* root) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  *root = r;
  return r * r == n;
}

std::vector<PellPoint> sorted(std::vector<PellPoint> pts) {
  std::sort(pts.begin(), pts.end(), solution_order);
  return pts;
}

}  // namespace

std::vector<PellPoint> pell_double_loop(std::int64_t d, std::int64_t rhs, std::int64_t bound) {
  require_bound(bound);
  std::vector<PellPoint> out;
  for (std::int64_t p = -bound; p <= bound; ++p) {
    for (std::int64_t q = -bound; q <= bound; ++q) {
      if (p * p - d * q * q == rhs) out.push_back({Int(p), Int(q)});
    }
  }
  return sorted(std::move(out));
}

std::vector<PellPoint> pell_scan(std::int64_t d, std::int64_t rhs, std::int64_t bound) {
  require_bound(bound);
  std::vector<PellPoint> out;
  for (std::int64_t q = -bound; q <= bound; ++q) {
    std::int64_t p = 0;
    if (!is_square_i64(rhs + d * q * q, &p) || p > bound) continue;
    out.push_back({Int(p), Int(q)});
    if (p != 0) out.push_back({Int(-p), Int(q)});
  }
  return sorted(std::move(out));
}

std::vector<SeriesSolution> series_scan(const PicardParams& params, Series series, Sign sign,
                                        std::int64_t bound) {
  const bool a_series = series == Series::kA;
  const Int first = a_series ? params.a : params.b;
  const Int cofactor = a_series ? params.b * params.c : params.a * params.c;
  const Int modulus = 2 * first * params.c;
  const Int rhs = sign_value(sign) * 4 * first * params.c;
  std::vector<SeriesSolution> out;
  for (const PellPoint& pt : pell_scan(params.d.get_si(), rhs.get_si(), bound)) {
    if (!divides(modulus, pt.p - params.mu * pt.q)) continue;
    const NVector h1{pt.p * cofactor, pt.q * cofactor};
    // h1 = alpha H + beta w with alpha = (x - mu y) / 2abc^2, beta = y.
    const Int h2 = params.h_square();
    if (!divides(h2, h1.x - params.mu * h1.y)) continue;
    const Int alpha = (h1.x - params.mu * h1.y) / h2;
    // h1^2 = cofactor^2 rhs / 2abc^2 = +-2 cofactor.
    if (gram_pair(params, alpha, h1.y, alpha, h1.y) != sign_value(sign) * 2 * cofactor) continue;
    out.push_back({series, sign, pt.p, pt.q, h1, 0});
  }
  return out;
}

BasisVector to_basis(const MukaiVector& v) {
  const Int h2 = v.params.h_square();
  return {v.r, exact_div(v.c1.x - v.params.mu * v.c1.y, h2, "oracle: H-coordinate"), v.c1.y, v.s};
}

MukaiVector from_basis(const PicardParams& params, const BasisVector& v) {
  return MukaiVector{params, v.r, NVector{v.alpha * params.h_square() + v.beta * params.mu, v.beta},
                     v.s};
}

Int gram_pair(const PicardParams& params, const Int& a1, const Int& b1, const Int& a2,
              const Int& b2) {
  const Int h2 = params.h_square();
  const Int w2 = exact_div(params.mu * params.mu - params.d, h2, "oracle: w^2");
  return a1 * a2 * h2 + (a1 * b2 + a2 * b1) * params.mu + b1 * b2 * w2;
}

Int square(const PicardParams& params, const BasisVector& v) {
  return gram_pair(params, v.alpha, v.beta, v.alpha, v.beta) - 2 * v.r * v.s;
}

Int divisor(const BasisVector& v) {
  return gcd_all({v.r, v.alpha, v.beta, v.s});
}

BasisVector reflect(const BasisVector& v) { return {v.s, v.alpha, v.beta, v.r}; }

BasisVector twist(const PicardParams& params, const BasisVector& v, const Int& d_alpha,
                  const Int& d_beta) {
  // ch(E (x) O(D)) = ch(E) e^D, so s picks up r D^2 / 2 + D.c1.
  const Int dd = gram_pair(params, d_alpha, d_beta, d_alpha, d_beta);
  const Int dc = gram_pair(params, d_alpha, d_beta, v.alpha, v.beta);
  return {v.r, v.alpha + v.r * d_alpha, v.beta + v.r * d_beta, v.s + v.r * dd / 2 + dc};
}

BasisVector nu(const BasisVector& v, const Int& d1, const Int& d2) {
  return {d1 * d1 * v.r, d1 * d2 * v.alpha, d1 * d2 * v.beta, d2 * d2 * v.s};
}

}  // namespace k3iso::oracle
