#pragma once

// Deciding the a-series / b-series conditions through the
// congruence-constrained Pell equations
//
//   a-series:  p^2 - d q^2 = +-4ac,  p = mu q (mod 2ac),  h1 = (p bc, q bc)
//   b-series:  p^2 - d q^2 = +-4bc,  p = mu q (mod 2bc),  h1 = (p ac, q ac)

#include <cstddef>
#include <string>
#include <vector>

#include "k3iso/integer.hpp"
#include "k3iso/mukai.hpp"
#include "k3iso/picard.hpp"

namespace k3iso {

enum class Series { kA, kB };

inline char series_char(Series s) { return s == Series::kA ? 'A' : 'B'; }

struct PellPoint {
  Int p;
  Int q;

  bool operator==(const PellPoint& other) const = default;
};

// Order used everywhere: |q|, then |p|, then non-negative q before negative,
// then non-negative p before negative.
bool solution_order(const PellPoint& lhs, const PellPoint& rhs);

struct PellUnit {
  Int x;
  Int y;
};

// Least solution x > 1 of x^2 - d y^2 = 1 for a positive non-square d.
PellUnit fundamental_unit(const Int& d);

// Every (p, q) with p^2 - d q^2 = rhs and |p|, |q| <= bound, in solution_order.
std::vector<PellPoint> pell_solutions(const Int& d, const Int& rhs, const Int& bound);

// Same class under multiplication by norm-one units of Z[sqrt d].
bool same_pell_class(const Int& d, const Int& rhs, const PellPoint& u, const PellPoint& v);

struct SeriesSolution {
  Series series;
  Sign sign;
  Int p;
  Int q;
  NVector h1;
  Int d2;

  bool operator==(const SeriesSolution& other) const = default;
};

// 2ac for the a-series, 2bc for the b-series.
Int series_modulus(const PicardParams& params, Series series);

// bc for the a-series, ac for the b-series: h1 = d2 H + cofactor D.
Int series_cofactor(const PicardParams& params, Series series);

// Right-hand side sign * 4ac (a-series) or sign * 4bc (b-series).
Int series_rhs(const PicardParams& params, Series series, Sign sign);

// Smallest positive d2 = (p - mu q) / modulus (mod cofactor) with
// gcd(d2, cofactor) = 1. Throws InvariantError if no such residue exists.
Int canonical_d2(const PicardParams& params, Series series, const Int& p, const Int& q);

// Checks the defining equation, congruence and h1 of a solution through the
// lattice model; returns the first failure or an empty string.
std::string solution_defect(const PicardParams& params, const SeriesSolution& sol);

std::vector<SeriesSolution> solve_series(const PicardParams& params, Series series, Sign sign,
                                         const Int& bound);

// Readings of the refined (primitivity) conditions.
//   kDerived:        gcd(a, p, q) = 1 and p != mu q (mod 2ac l) for primes l | b
//   kPrintedModulus: gcd(a, p, q) = 1 and p != mu q (mod 2a s l), s = bc, l | b
//   kLatticeForm:    H.h1 != 0 (mod bc l1) for l1^2 | a and h1 / l2 not in N
//                    for l2^2 | b
// (a <-> b exchanged for the b-series.)
enum class RefinedReading { kDerived, kPrintedModulus, kLatticeForm };

const char* reading_name(RefinedReading reading);

bool check_refined(const PicardParams& params, const SeriesSolution& sol,
                   RefinedReading reading = RefinedReading::kDerived);

// Inclusive ranges; an empty range (min > max) yields a vacuous sweep.
struct SweepRange {
  Int a_min = 1, a_max = 3;
  Int b_min = 1, b_max = 3;
  Int c_min = 1, c_max = 3;
  Int d_min = 1, d_max = 50;
  Int bound = 500;
};

// All valid parameter tuples in range (gcd(a, b) = 1, every admissible mu in
// [0, 2abc^2)), in lexicographic (a, b, c, d, mu) order.
std::vector<PicardParams> enumerate_params(const SweepRange& range);

struct Counterexample {
  PicardParams params;
  SeriesSolution solution;
  RefinedReading reading;
};

struct ReadingTally {
  RefinedReading reading;
  std::size_t checked = 0;
  std::size_t passed = 0;
};

struct SolutionRecord {
  PicardParams params;
  SeriesSolution solution;
  bool derived = false;
  bool printed = false;
  bool lattice = false;
};

struct EquivalenceReport {
  SweepRange range;
  std::size_t tuples = 0;
  std::size_t solutions = 0;
  std::vector<ReadingTally> tallies;  // one per reading, in enum order
  std::vector<Counterexample> counterexamples;
  std::vector<SolutionRecord> records;  // filled only when requested

  bool verdict() const { return counterexamples.empty(); }
};

EquivalenceReport equivalence_sweep(const SweepRange& range, bool keep_records = false,
                                    unsigned threads = 0);

}  // namespace k3iso
