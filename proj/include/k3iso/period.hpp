#pragma once

// Period computation for M_X(r, H, s) in the Mukai lattice model
// U(1) + U(2) with basis (e1, e2, f1, f2), e1.e2 = -1, f1.f2 = 1. The
// unimodular rank-20 summand is the same for every surface involved and is
// left out.
//
//   H = abc^2 f1 + f2                 (Picard lattice of X)
//   t = -abc^2 f1 + f2                (transcendental lattice of X)
//   v = d1^2 ac e1 + d2^2 bc e2 + d1 d2 H
//
// H^2(Y) = v^perp / Zv, with T(Y) generated by the image of t divided by c.

#include <optional>
#include <string>
#include <vector>

#include "k3iso/integer.hpp"
#include "k3iso/lattice.hpp"

namespace k3iso {

struct MukaiModel {
  GramLattice lattice;

  MukaiModel();
};

// Model coordinates of nu(d1, d2)(ac, H, bc). Requires positive arguments
// and gcd(d1, bc) = gcd(d2, ac) = gcd(d1, d2) = 1.
LatVec embed_vector(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2);

// Applies nu(d1, d2) to x e1 + y e2 + k H: (d1^2 x, d2^2 y, d1 d2 k H).
LatVec scale_nu_model(const LatVec& v, const Int& d1, const Int& d2);

// The basis of v^perp written down by hand:
//   alpha = d1 e1 + d2 bc f1,  beta = d2 e2 + d1 ac f1,  t.
struct ExplicitPerpBasis {
  LatVec alpha;
  LatVec beta;
  LatVec t;
};

ExplicitPerpBasis explicit_perp_basis(const Int& a, const Int& b, const Int& c, const Int& d1,
                                      const Int& d2);

// Divisibilities of the classes of alpha, beta, t in v^perp / Zv.
struct DivisorChecks {
  Int alpha = 0;  // expected d2
  Int beta = 0;   // expected d1
  Int t = 0;      // expected c
  bool relation = false;        // d1 ac alpha + d2 bc beta + d1 d2 t = 0 mod Zv
  bool explicit_basis = false;  // alpha, beta, t generate v^perp
  // Every element of v^perp has e1-coordinate divisible by d1 and
  // e2-coordinate divisible by d2.
  bool coordinate_divisibility = false;
};

struct PeriodData {
  Int a, b, c, d1, d2;
  GramLattice h2_model;  // v^perp / Zv
  LatVec picard_gen;     // h, generator of the orthogonal complement of T
  LatVec transc_gen;     // t~ = t-bar / c
  LatVec alpha_class;    // alpha-bar / d2
  LatVec beta_class;     // beta-bar / d1
  DivisorChecks divisor_checks;
};

// Thrown when a step of the period computation fails; the computation is
// supposed to succeed for every admissible input.
class PeriodCheckFailure : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

inline const Int kDefaultPeriodIsometryBound = 1000;

PeriodData compute_period_data(const MukaiModel& model, const LatVec& v, const Int& a,
                               const Int& b, const Int& c,
                               const Int& isometry_bound = kDefaultPeriodIsometryBound);

// Isometry of the H^2 models carrying transc_gen to +-transc_gen and
// picard_gen to +-picard_gen, found by bounded search.
std::optional<IntMatrix> periods_isomorphic(const PeriodData& pd1, const PeriodData& pd2,
                                            const Int& bound = kDefaultPeriodIsometryBound);

// The hand-written identification alpha~ -> alpha~_1, beta~ -> beta~_1, if it
// is an isometry matching both generators exactly.
std::optional<IntMatrix> explicit_identification(const PeriodData& pd1, const PeriodData& pd2);

struct PeriodSweepRecord {
  Int a, b, c, d1, d2;
  bool quotient_is_u = false;
  Int h_square = 0;
  bool isometry_found = false;
  bool explicit_identification = false;
  // pd(v) ~ pd(nu(1, d2) v) ~ pd(nu(d1, 1) nu(1, d2) v), with the composite
  // equal to the direct embedding.
  bool composed_route = false;
  std::string error;

  bool ok() const {
    return quotient_is_u && isometry_found && explicit_identification && composed_route &&
           error.empty();
  }
};

struct PeriodSweepRange {
  Int max_abc = 4;
  Int max_d = 4;
};

PeriodSweepRecord check_period_instance(const Int& a, const Int& b, const Int& c, const Int& d1,
                                        const Int& d2);

// Every a, b, c <= max_abc with gcd(a, b) = 1 and every admissible
// d1, d2 <= max_d, in lexicographic order.
std::vector<PeriodSweepRecord> period_sweep(const PeriodSweepRange& range, unsigned threads = 0);

}  // namespace k3iso
