#pragma once

// Slow, independent references. Nothing here shares code with the solvers
// it checks: Pell points come from exhaustive loops in machine integers and
// Mukai moves are evaluated in the (H, w) basis with the Gram matrix, not in
// the (x, y) model.

#include <cstdint>
#include <vector>

#include "k3iso/mukai.hpp"
#include "k3iso/picard.hpp"
#include "k3iso/series.hpp"

namespace k3iso::oracle {

inline constexpr std::int64_t kMaxBruteForceBound = 10000;

// Literal double loop over |p|, |q| <= bound.
std::vector<PellPoint> pell_double_loop(std::int64_t d, std::int64_t rhs, std::int64_t bound);

// One perfect-square test per q; same output as the double loop.
std::vector<PellPoint> pell_scan(std::int64_t d, std::int64_t rhs, std::int64_t bound);

// Series solutions by exhaustive scan, checked through the Gram matrix.
std::vector<SeriesSolution> series_scan(const PicardParams& params, Series series, Sign sign,
                                        std::int64_t bound);

// Element alpha H + beta w of N together with a Mukai vector in that basis.
struct BasisVector {
  Int r;
  Int alpha;
  Int beta;
  Int s;

  bool operator==(const BasisVector& other) const = default;
};

BasisVector to_basis(const MukaiVector& v);
MukaiVector from_basis(const PicardParams& params, const BasisVector& v);

Int gram_pair(const PicardParams& params, const Int& a1, const Int& b1, const Int& a2,
              const Int& b2);
Int square(const PicardParams& params, const BasisVector& v);
Int divisor(const BasisVector& v);

BasisVector reflect(const BasisVector& v);
BasisVector twist(const PicardParams& params, const BasisVector& v, const Int& d_alpha,
                  const Int& d_beta);
BasisVector nu(const BasisVector& v, const Int& d1, const Int& d2);

}  // namespace k3iso::oracle
