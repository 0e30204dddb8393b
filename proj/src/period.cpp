#include "k3iso/period.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <tuple>

#include "k3iso/parallel.hpp"

namespace k3iso {

MukaiModel::MukaiModel()
    : lattice(IntMatrix{{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}) {}

namespace {

void require_admissible(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2) {
  if (a < 1 || b < 1 || c < 1 || d1 < 1 || d2 < 1) {
    throw PreconditionError("period model: a, b, c, d1, d2 must be positive");
  }
  if (gcd_all({a, b}) != 1) throw PreconditionError("period model: gcd(a, b) != 1");
  if (gcd_all({d1, b * c}) != 1 || gcd_all({d2, a * c}) != 1 || gcd_all({d1, d2}) != 1) {
    throw PreconditionError("period model: need gcd(d1, bc) = gcd(d2, ac) = gcd(d1, d2) = 1");
  }
}

LatVec polarization_model(const Int& a, const Int& b, const Int& c) {
  return {0, 0, a * b * c * c, 1};
}

void check(bool condition, const std::string& what) {
  if (!condition) throw PeriodCheckFailure("period check failed: " + what);
}

LatVec divide_exactly(const LatVec& v, const Int& k, const char* what) {
  LatVec out;
  out.reserve(v.size());
  for (const Int& x : v) out.push_back(exact_div(x, k, what));
  return out;
}

}  // namespace

LatVec embed_vector(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2) {
  require_admissible(a, b, c, d1, d2);
  LatVec v = (d1 * d2) * polarization_model(a, b, c);
  v[0] = d1 * d1 * a * c;
  v[1] = d2 * d2 * b * c;
  return v;
}

LatVec scale_nu_model(const LatVec& v, const Int& d1, const Int& d2) {
  if (v.size() != 4) throw PreconditionError("scale_nu_model: expected 4 coordinates");
  if (d1 < 1 || d2 < 1) throw PreconditionError("scale_nu_model: d1, d2 must be positive");
  return {d1 * d1 * v[0], d2 * d2 * v[1], d1 * d2 * v[2], d1 * d2 * v[3]};
}

ExplicitPerpBasis explicit_perp_basis(const Int& a, const Int& b, const Int& c, const Int& d1,
                                      const Int& d2) {
  ExplicitPerpBasis basis;
  basis.alpha = {d1, 0, d2 * b * c, 0};
  basis.beta = {0, d2, d1 * a * c, 0};
  basis.t = {0, 0, -a * b * c * c, 1};
  return basis;
}

PeriodData compute_period_data(const MukaiModel& model, const LatVec& v, const Int& a,
                               const Int& b, const Int& c, const Int& isometry_bound) {
  if (v.size() != 4) throw PreconditionError("compute_period_data: expected 4 coordinates");
  if (a < 1 || b < 1 || c < 1) throw PreconditionError("compute_period_data: a, b, c must be positive");

  // Read d1, d2 off v = (d1^2 ac, d2^2 bc, d1 d2 abc^2, d1 d2).
  Int d1, d2;
  if (!divides(a * c, v[0]) || !divides(b * c, v[1]) ||
      !is_square(v[0] / (a * c), &d1) || !is_square(v[1] / (b * c), &d2) || d1 < 1 || d2 < 1 ||
      v[3] != d1 * d2 || v[2] != d1 * d2 * a * b * c * c) {
    throw PreconditionError("compute_period_data: v is not of the form nu(d1, d2)(ac, H, bc)");
  }
  require_admissible(a, b, c, d1, d2);
  check(square(model.lattice, v) == 0, "v is isotropic");

  PeriodData pd;
  pd.a = a;
  pd.b = b;
  pd.c = c;
  pd.d1 = d1;
  pd.d2 = d2;

  const std::array<LatVec, 1> gens{v};
  const std::vector<LatVec> perp = orthogonal_complement(model.lattice, gens);
  check(perp.size() == 3, "v^perp has rank 3");
  pd.divisor_checks.coordinate_divisibility =
      std::all_of(perp.begin(), perp.end(),
                  [&](const LatVec& x) { return divides(d1, x[0]) && divides(d2, x[1]); });
  check(pd.divisor_checks.coordinate_divisibility, "d1 | e1-coordinates, d2 | e2-coordinates");
  const IsotropicQuotient quotient = quotient_by_isotropic(model.lattice, perp, v);
  pd.h2_model = quotient.lattice();
  check(pd.h2_model.rank() == 2 && pd.h2_model.even() && determinant(pd.h2_model.gram()) == -1,
        "v^perp / Zv is even unimodular of rank 2");

  const ExplicitPerpBasis e = explicit_perp_basis(a, b, c, d1, d2);
  const std::array<LatVec, 3> explicit_basis{e.alpha, e.beta, e.t};
  for (const LatVec& x : explicit_basis) check(inner(model.lattice, x, v) == 0, "basis in v^perp");
  pd.divisor_checks.explicit_basis = is_saturated(explicit_basis, 4);
  check(pd.divisor_checks.explicit_basis, "alpha, beta, t generate v^perp");
  pd.divisor_checks.relation =
      (d1 * a * c) * e.alpha + (d2 * b * c) * e.beta + (d1 * d2) * e.t == v;
  check(pd.divisor_checks.relation, "d1 ac alpha + d2 bc beta + d1 d2 t = v");

  const LatVec alpha_bar = quotient.project(e.alpha);
  const LatVec beta_bar = quotient.project(e.beta);
  const LatVec t_bar = quotient.project(e.t);
  pd.divisor_checks.alpha = content(alpha_bar);
  pd.divisor_checks.beta = content(beta_bar);
  pd.divisor_checks.t = content(t_bar);
  check(pd.divisor_checks.alpha == d2, "div(alpha-bar) = d2");
  check(pd.divisor_checks.beta == d1, "div(beta-bar) = d1");
  check(pd.divisor_checks.t == c, "div(t-bar) = c");

  pd.alpha_class = divide_exactly(alpha_bar, d2, "alpha-bar / d2");
  pd.beta_class = divide_exactly(beta_bar, d1, "beta-bar / d1");
  pd.transc_gen = divide_exactly(t_bar, c, "t-bar / c");

  const GramLattice& q = pd.h2_model;
  check(a * pd.alpha_class + b * pd.beta_class + pd.transc_gen == LatVec(2, 0),
        "a alpha~ + b beta~ + t~ = 0");
  check(square(q, pd.alpha_class) == 0 && square(q, pd.beta_class) == 0 &&
            inner(q, pd.alpha_class, pd.beta_class) == -1,
        "alpha~, beta~ is a hyperbolic basis");
  check(square(q, pd.transc_gen) == -2 * a * b, "t~^2 = -2ab");

  const LatVec h = a * pd.alpha_class - b * pd.beta_class;
  const std::array<LatVec, 1> transc{pd.transc_gen};
  const std::vector<LatVec> ns = orthogonal_complement(q, transc);
  check(ns.size() == 1 && (ns[0] == h || ns[0] == -h), "h generates the complement of t~");
  check(square(q, h) == 2 * a * b, "h^2 = 2ab");
  pd.picard_gen = h;

  // Independent confirmation that the quotient is U, by search.
  const GramLattice u = GramLattice::hyperbolic_plane();
  check(find_marked_isometry(u, {}, q, {}, isometry_bound).has_value(), "v^perp / Zv = U");
  return pd;
}

std::optional<IntMatrix> periods_isomorphic(const PeriodData& pd1, const PeriodData& pd2,
                                            const Int& bound) {
  const std::array<LatVec, 2> marks1{pd1.transc_gen, pd1.picard_gen};
  const std::array<LatVec, 2> marks2{pd2.transc_gen, pd2.picard_gen};
  return find_marked_isometry(pd1.h2_model, marks1, pd2.h2_model, marks2, bound);
}

std::optional<IntMatrix> explicit_identification(const PeriodData& pd1, const PeriodData& pd2) {
  const std::array<LatVec, 2> src{pd1.alpha_class, pd1.beta_class};
  const std::array<LatVec, 2> dst{pd2.alpha_class, pd2.beta_class};
  const auto src_inv = unimodular_inverse(IntMatrix::from_columns(src, 2));
  if (!src_inv) return std::nullopt;
  IntMatrix map = IntMatrix::from_columns(dst, 2) * *src_inv;
  if (!is_isometry(map, pd1.h2_model, pd2.h2_model)) return std::nullopt;
  if (map * pd1.transc_gen != pd2.transc_gen || map * pd1.picard_gen != pd2.picard_gen) {
    return std::nullopt;
  }
  return map;
}

PeriodSweepRecord check_period_instance(const Int& a, const Int& b, const Int& c, const Int& d1,
                                        const Int& d2) {
  PeriodSweepRecord rec;
  rec.a = a;
  rec.b = b;
  rec.c = c;
  rec.d1 = d1;
  rec.d2 = d2;
  try {
    const MukaiModel model;
    const LatVec v0 = embed_vector(a, b, c, 1, 1);
    const LatVec v = embed_vector(a, b, c, d1, d2);
    const PeriodData base = compute_period_data(model, v0, a, b, c);
    const PeriodData target = compute_period_data(model, v, a, b, c);
    rec.quotient_is_u = true;
    rec.h_square = square(target.h2_model, target.picard_gen);
    rec.isometry_found = periods_isomorphic(base, target).has_value();
    rec.explicit_identification = explicit_identification(base, target).has_value();

    const LatVec mid = scale_nu_model(v0, 1, d2);
    const LatVec full = scale_nu_model(mid, d1, 1);
    const PeriodData pd_mid = compute_period_data(model, mid, a, b, c);
    const PeriodData pd_full = compute_period_data(model, full, a, b, c);
    rec.composed_route = full == v && periods_isomorphic(base, pd_mid).has_value() &&
                         periods_isomorphic(pd_mid, pd_full).has_value();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

std::vector<PeriodSweepRecord> period_sweep(const PeriodSweepRange& range, unsigned threads) {
  std::vector<std::array<Int, 5>> tuples;
  for (Int a = 1; a <= range.max_abc; ++a) {
    for (Int b = 1; b <= range.max_abc; ++b) {
      if (gcd_all({a, b}) != 1) continue;
      for (Int c = 1; c <= range.max_abc; ++c) {
        for (Int d1 = 1; d1 <= range.max_d; ++d1) {
          for (Int d2 = 1; d2 <= range.max_d; ++d2) {
            if (gcd_all({d1, b * c}) != 1 || gcd_all({d2, a * c}) != 1 ||
                gcd_all({d1, d2}) != 1) {
              continue;
            }
            tuples.push_back({a, b, c, d1, d2});
          }
        }
      }
    }
  }
  return parallel_map(
      tuples.size(),
      [&](std::size_t i) {
        const auto& t = tuples[i];
        return check_period_instance(t[0], t[1], t[2], t[3], t[4]);
      },
      threads);
}

}  // namespace k3iso
