#include "k3iso/series.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "k3iso/parallel.hpp"

namespace k3iso {

bool solution_order(const PellPoint& lhs, const PellPoint& rhs) {
  const Int lq = abs(lhs.q), rq = abs(rhs.q);
  if (lq != rq) return lq < rq;
  const Int lp = abs(lhs.p), rp = abs(rhs.p);
  if (lp != rp) return lp < rp;
  if ((lhs.q < 0) != (rhs.q < 0)) return lhs.q >= 0;
  if ((lhs.p < 0) != (rhs.p < 0)) return lhs.p >= 0;
  return false;
}

PellUnit fundamental_unit(const Int& d) {
  if (d < 1 || is_square(d)) {
    throw PreconditionError("fundamental_unit: d must be a positive non-square");
  }
  // Convergents h/k of the continued fraction of sqrt(d).
  const Int a0 = isqrt(d);
  Int m = 0, den = 1, a = a0;
  Int h_prev = 1, h = a0;
  Int k_prev = 0, k = 1;
  while (h * h - d * k * k != 1) {
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
  }
  return {h, k};
}

namespace {

constexpr std::size_t kMaxOrbitSteps = 100000;

using PointSet = std::set<std::pair<Int, Int>>;

void add_with_signs(PointSet& out, const Int& p, const Int& q, const Int& bound) {
  if (abs(p) > bound || abs(q) > bound) return;
  out.emplace(p, q);
  out.emplace(-p, q);
  out.emplace(p, -q);
  out.emplace(-p, -q);
}

// Walks x + y sqrt(d) times (ux + uy sqrt(d))^k, k = 1, 2, ... . |y| along an
// orbit is unimodal in k, so the walk stops once |y| exceeds the bound and is
// no longer decreasing.
void walk_orbit(PointSet& out, Int x, Int y, const Int& d, const Int& ux, const Int& uy,
                const Int& bound) {
  Int prev = abs(y);
  for (std::size_t step = 0; step < kMaxOrbitSteps; ++step) {
    Int nx = x * ux + d * y * uy;
    Int ny = x * uy + y * ux;
    x = std::move(nx);
    y = std::move(ny);
    add_with_signs(out, x, y, bound);
    Int ay = abs(y);
    if (ay > bound && ay >= prev) return;
    prev = std::move(ay);
  }
  throw InvariantError("pell orbit walk did not terminate");
}

}  // namespace

std::vector<PellPoint> pell_solutions(const Int& d, const Int& rhs, const Int& bound) {
  if (d < 1) {
    throw PreconditionError("pell_solutions: d must be positive");
  }
  PointSet found;
  if (bound >= 0) {
    Int root;
    if (is_square(d, &root)) {
      if (rhs == 0) {
        for (Int q = -bound; q <= bound; ++q) add_with_signs(found, root * q, q, bound);
      } else {
        // (p - root q)(p + root q) = rhs
        for (const Int& divisor : positive_divisors(rhs)) {
          for (const Int& u : {divisor, Int(-divisor)}) {
            const Int v = rhs / u;
            if (!divides(2, u + v) || !divides(2 * root, v - u)) continue;
            add_with_signs(found, (u + v) / 2, (v - u) / (2 * root), bound);
          }
        }
      }
    } else if (rhs == 0) {
      found.emplace(0, 0);
    } else {
      // Every class has a representative with 0 <= y and
      //   2 (x1 + 1) y^2 <= y1^2 rhs     (rhs > 0)
      //   2 (x1 - 1) y^2 <= y1^2 |rhs|   (rhs < 0),
      // and |y| is minimal there, so seeds beyond the bound are useless.
      const PellUnit unit = fundamental_unit(d);
      const Int scale = rhs > 0 ? Int(2 * (unit.x + 1)) : Int(2 * (unit.x - 1));
      const Int limit = unit.y * unit.y * abs(rhs);
      for (Int y = 0; y <= bound && scale * y * y <= limit; ++y) {
        Int x;
        if (!is_square(rhs + d * y * y, &x)) continue;
        for (const Int& sx : {x, Int(-x)}) {
          add_with_signs(found, sx, y, bound);
          walk_orbit(found, sx, y, d, unit.x, unit.y, bound);
          walk_orbit(found, sx, y, d, unit.x, Int(-unit.y), bound);
        }
      }
    }
  }
  std::vector<PellPoint> out;
  out.reserve(found.size());
  for (const auto& [p, q] : found) out.push_back({p, q});
  std::sort(out.begin(), out.end(), solution_order);
  return out;
}

bool same_pell_class(const Int& d, const Int& rhs, const PellPoint& u, const PellPoint& v) {
  if (rhs == 0) {
    throw PreconditionError("same_pell_class: rhs must be nonzero");
  }
  return divides(rhs, u.p * v.p - d * u.q * v.q) && divides(rhs, u.q * v.p - u.p * v.q);
}

Int series_modulus(const PicardParams& params, Series series) {
  return series == Series::kA ? Int(2 * params.a * params.c) : Int(2 * params.b * params.c);
}

Int series_cofactor(const PicardParams& params, Series series) {
  return series == Series::kA ? params.s() : params.r();
}

Int series_rhs(const PicardParams& params, Series series, Sign sign) {
  return sign_value(sign) * 2 * series_modulus(params, series);
}

Int canonical_d2(const PicardParams& params, Series series, const Int& p, const Int& q) {
  const Int ratio = exact_div(p - params.mu * q, series_modulus(params, series),
                              "(p - mu q) / 2ac");
  const Int cofactor = series_cofactor(params, series);
  Int d2 = mod(ratio, cofactor);
  if (d2 == 0) d2 = cofactor;
  // gcd(d2 + j * cofactor, cofactor) does not depend on j, so the residue
  // class itself has to be a unit.
  if (gcd_all({d2, cofactor}) != 1) {
    throw InvariantError("canonical_d2: (p - mu q) / 2ac is not a unit modulo the cofactor");
  }
  return d2;
}

std::string solution_defect(const PicardParams& params, const SeriesSolution& sol) {
  const Int modulus = series_modulus(params, sol.series);
  const Int cofactor = series_cofactor(params, sol.series);
  if (sol.p * sol.p - params.d * sol.q * sol.q != series_rhs(params, sol.series, sol.sign)) {
    return "solution equation p^2 - d q^2 does not match";
  }
  if (!divides(modulus, sol.p - params.mu * sol.q)) {
    return "solution congruence p = mu q fails";
  }
  if (sol.h1 != NVector{sol.p * cofactor, sol.q * cofactor}) {
    return "h1 does not match (p, q)";
  }
  if (!in_lattice(params, sol.h1)) {
    return "h1 is not in N";
  }
  if (norm(params, sol.h1) != sign_value(sol.sign) * 2 * cofactor) {
    return "h1^2 does not match the series";
  }
  if (!divides(cofactor, pair(params, polarization(params), sol.h1))) {
    return "H.h1 is not divisible by the cofactor";
  }
  return {};
}

std::vector<SeriesSolution> solve_series(const PicardParams& params, Series series, Sign sign,
                                         const Int& bound) {
  require_valid(params);
  if (bound < 1) return {};
  const Int modulus = series_modulus(params, series);
  const Int cofactor = series_cofactor(params, series);
  std::vector<SeriesSolution> out;
  for (const PellPoint& pt : pell_solutions(params.d, series_rhs(params, series, sign), bound)) {
    if (!divides(modulus, pt.p - params.mu * pt.q)) continue;
    SeriesSolution sol{series, sign, pt.p, pt.q, NVector{pt.p * cofactor, pt.q * cofactor},
                       canonical_d2(params, series, pt.p, pt.q)};
    if (std::string defect = solution_defect(params, sol); !defect.empty()) {
      throw InvariantError("solve_series: " + defect);
    }
    out.push_back(std::move(sol));
  }
  return out;
}

const char* reading_name(RefinedReading reading) {
  switch (reading) {
    case RefinedReading::kDerived:
      return "derived-modulus-2acl";
    case RefinedReading::kPrintedModulus:
      return "printed-modulus-2asl";
    case RefinedReading::kLatticeForm:
      return "lattice-form";
  }
  return "?";
}

namespace {

std::vector<Int> primes_with_square_dividing(const Int& n) {
  std::vector<Int> out;
  for (const Int& l : prime_divisors(n)) {
    if (divides(l * l, n)) out.push_back(l);
  }
  return out;
}

}  // namespace

bool check_refined(const PicardParams& params, const SeriesSolution& sol,
                   RefinedReading reading) {
  const bool a_series = sol.series == Series::kA;
  const Int& own = a_series ? params.a : params.b;
  const Int& other = a_series ? params.b : params.a;
  const Int diff = sol.p - params.mu * sol.q;

  switch (reading) {
    case RefinedReading::kDerived:
    case RefinedReading::kPrintedModulus: {
      if (gcd_all({own, sol.p, sol.q}) != 1) return false;
      // 2ac l, or 2a s l with s = bc as printed.
      const Int base = reading == RefinedReading::kDerived
                           ? series_modulus(params, sol.series)
                           : Int(2 * own * other * params.c);
      for (const Int& l : prime_divisors(other)) {
        if (divides(base * l, diff)) return false;
      }
      return true;
    }
    case RefinedReading::kLatticeForm: {
      const Int cofactor = series_cofactor(params, sol.series);
      const Int h_dot_h1 = pair(params, polarization(params), sol.h1);
      for (const Int& l1 : primes_with_square_dividing(own)) {
        if (divides(cofactor * l1, h_dot_h1)) return false;
      }
      const Int divisor = element_divisor(params, sol.h1);
      for (const Int& l2 : primes_with_square_dividing(other)) {
        if (divides(l2, divisor)) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<PicardParams> enumerate_params(const SweepRange& range) {
  std::vector<PicardParams> out;
  for (Int a = std::max(Int(1), range.a_min); a <= range.a_max; ++a) {
    for (Int b = std::max(Int(1), range.b_min); b <= range.b_max; ++b) {
      if (gcd_all({a, b}) != 1) continue;
      for (Int c = std::max(Int(1), range.c_min); c <= range.c_max; ++c) {
        for (Int d = std::max(Int(1), range.d_min); d <= range.d_max; ++d) {
          const Int h2 = 2 * a * b * c * c;
          for (Int mu = 0; mu < h2; ++mu) {
            PicardParams params{a, b, c, d, mu};
            if (validate(params)) out.push_back(params);
          }
        }
      }
    }
  }
  return out;
}

EquivalenceReport equivalence_sweep(const SweepRange& range, bool keep_records,
                                    unsigned threads) {
  constexpr RefinedReading kReadings[] = {RefinedReading::kDerived,
                                          RefinedReading::kPrintedModulus,
                                          RefinedReading::kLatticeForm};
  EquivalenceReport report;
  report.range = range;
  for (RefinedReading r : kReadings) report.tallies.push_back({r});

  const std::vector<PicardParams> tuples = enumerate_params(range);
  report.tuples = tuples.size();

  auto per_tuple = parallel_map(
      tuples.size(),
      [&](std::size_t i) {
        std::vector<SolutionRecord> records;
        for (Series series : {Series::kA, Series::kB}) {
          for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
            for (SeriesSolution& sol : solve_series(tuples[i], series, sign, range.bound)) {
              SolutionRecord rec{tuples[i], std::move(sol)};
              rec.derived = check_refined(rec.params, rec.solution, RefinedReading::kDerived);
              rec.printed =
                  check_refined(rec.params, rec.solution, RefinedReading::kPrintedModulus);
              rec.lattice = check_refined(rec.params, rec.solution, RefinedReading::kLatticeForm);
              records.push_back(std::move(rec));
            }
          }
        }
        return records;
      },
      threads);

  for (auto& records : per_tuple) {
    for (SolutionRecord& rec : records) {
      ++report.solutions;
      const bool outcomes[] = {rec.derived, rec.printed, rec.lattice};
      for (std::size_t k = 0; k < 3; ++k) {
        ++report.tallies[k].checked;
        if (outcomes[k]) {
          ++report.tallies[k].passed;
        } else {
          report.counterexamples.push_back({rec.params, rec.solution, kReadings[k]});
        }
      }
      if (keep_records) report.records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace k3iso
