#include "k3iso/lattice.hpp"

#include <algorithm>
#include <utility>

namespace k3iso {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw PreconditionError("IntMatrix: ragged initializer");
    }
    for (long entry : row) {
      data_.emplace_back(entry);
    }
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const LatVec> columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw PreconditionError("IntMatrix::from_columns: dimension mismatch");
    }
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = columns[j][i];
    }
  }
  return m;
}

LatVec IntMatrix::row(std::size_t i) const {
  return LatVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

LatVec IntMatrix::column(std::size_t j) const {
  LatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    c[i] = (*this)(i, j);
  }
  return c;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    std::swap((*this)(i, j), (*this)(k, j));
  }
}

void IntMatrix::swap_cols(std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    std::swap((*this)(i, j), (*this)(i, k));
  }
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t k, const Int& factor) {
  for (std::size_t j = 0; j < cols_; ++j) {
    (*this)(i, j) += factor * (*this)(k, j);
  }
}

void IntMatrix::add_col_multiple(std::size_t j, std::size_t k, const Int& factor) {
  for (std::size_t i = 0; i < rows_; ++i) {
    (*this)(i, j) += factor * (*this)(i, k);
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) {
    (*this)(i, j) = -(*this)(i, j);
  }
}

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw PreconditionError("matrix product: dimension mismatch");
  }
  IntMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      if (lhs(i, k) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        out(i, j) += lhs(i, k) * rhs(k, j);
      }
    }
  }
  return out;
}

LatVec operator*(const IntMatrix& m, const LatVec& v) {
  if (m.cols() != v.size()) {
    throw PreconditionError("matrix-vector product: dimension mismatch");
  }
  LatVec out(m.rows(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i] += m(i, j) * v[j];
    }
  }
  return out;
}

LatVec operator+(const LatVec& u, const LatVec& v) {
  if (u.size() != v.size()) throw PreconditionError("vector sum: dimension mismatch");
  LatVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

LatVec operator-(const LatVec& u, const LatVec& v) {
  if (u.size() != v.size()) throw PreconditionError("vector difference: dimension mismatch");
  LatVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

LatVec operator*(const Int& k, const LatVec& v) {
  LatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

LatVec operator-(const LatVec& v) {
  LatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw PreconditionError("determinant of a non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = exact_div(num, prev, "Bareiss elimination");
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(diagonal.rows(), diagonal.cols());
  while (r < n && diagonal(r, r) != 0) ++r;
  return r;
}

std::vector<Int> SmithForm::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(diagonal(i, i));
  return out;
}

namespace {

// Position of the nonzero entry of least absolute value in the block d[t.., t..].
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& d,
                                                                  std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t i = t; i < d.rows(); ++i) {
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int value = abs(d(i, j));
      if (!best || value < best_abs) {
        best = {i, j};
        best_abs = value;
      }
    }
  }
  return best;
}

Int floor_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& d = s.diagonal;
  const std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      auto pivot = smallest_entry(d, t);
      if (!pivot) return s;
      d.swap_rows(t, pivot->first);
      s.left.swap_rows(t, pivot->first);
      d.swap_cols(t, pivot->second);
      s.right.swap_cols(t, pivot->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Int q = -floor_quotient(d(i, t), d(t, t));
        d.add_row_multiple(i, t, q);
        s.left.add_row_multiple(i, t, q);
        if (d(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Int q = -floor_quotient(d(t, j), d(t, t));
        d.add_col_multiple(j, t, q);
        s.right.add_col_multiple(j, t, q);
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < d.rows() && divisible; ++i) {
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (!divides(d(t, t), d(i, j))) {
            d.add_row_multiple(t, i, 1);
            s.left.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.left.negate_row(t);
    }
  }
  return s;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  SmithForm s = smith_normal_form(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (s.diagonal(i, i) != 1) return std::nullopt;
  }
  // left * m * right = I  =>  m^{-1} = right * left
  return s.right * s.left;
}

std::optional<LatVec> solve_integral(const SmithForm& s, const LatVec& b) {
  const IntMatrix& d = s.diagonal;
  if (b.size() != d.rows()) {
    throw PreconditionError("solve_integral: dimension mismatch");
  }
  LatVec c = s.left * b;
  const std::size_t r = s.rank();
  LatVec z(d.cols(), Int(0));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (i < r) {
      if (!divides(d(i, i), c[i])) return std::nullopt;
      z[i] = c[i] / d(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * z;
}

std::optional<LatVec> solve_integral(const IntMatrix& a, const LatVec& b) {
  return solve_integral(smith_normal_form(a), b);
}

std::vector<LatVec> integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<LatVec> basis;
  for (std::size_t j = s.rank(); j < a.cols(); ++j) {
    basis.push_back(s.right.column(j));
  }
  return basis;
}

Int content(const LatVec& v) { return gcd_all(v); }

bool is_saturated(std::span<const LatVec> basis, std::size_t dim) {
  if (basis.empty()) return true;
  SmithForm s = smith_normal_form(IntMatrix::from_columns(basis, dim));
  if (s.rank() != basis.size()) return false;
  for (const Int& f : s.invariant_factors()) {
    if (f != 1) return false;
  }
  return true;
}

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) {
    throw PreconditionError("Gram matrix must be square");
  }
  for (std::size_t i = 0; i < gram_.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_(i, j) != gram_(j, i)) {
        throw PreconditionError("Gram matrix must be symmetric");
      }
    }
    if (!divides(2, gram_(i, i))) even_ = false;
  }
}

GramLattice GramLattice::hyperbolic_plane(long pairing) {
  return GramLattice(IntMatrix{{0, pairing}, {pairing, 0}});
}

Int inner(const GramLattice& lattice, const LatVec& u, const LatVec& v) {
  const std::size_t n = lattice.rank();
  if (u.size() != n || v.size() != n) {
    throw PreconditionError("inner: vector length does not match lattice rank");
  }
  const IntMatrix& g = lattice.gram();
  Int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g(i, j) * v[j];
    total += u[i] * row;
  }
  return total;
}

Int square(const GramLattice& lattice, const LatVec& v) { return inner(lattice, v, v); }

GramLattice sublattice(const GramLattice& lattice, std::span<const LatVec> basis) {
  IntMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      g(i, j) = inner(lattice, basis[i], basis[j]);
    }
  }
  return GramLattice(std::move(g));
}

std::vector<LatVec> orthogonal_complement(const GramLattice& lattice,
                                          std::span<const LatVec> gens) {
  const std::size_t n = lattice.rank();
  IntMatrix constraints(gens.size(), n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].size() != n) {
      throw PreconditionError("orthogonal_complement: generator length mismatch");
    }
    LatVec row = lattice.gram() * gens[k];
    for (std::size_t j = 0; j < n; ++j) constraints(k, j) = row[j];
  }
  return integer_kernel(constraints);
}

bool is_primitive(const GramLattice& lattice, const LatVec& v) {
  if (v.size() != lattice.rank()) {
    throw PreconditionError("is_primitive: vector length does not match lattice rank");
  }
  // The single invariant factor of the 1 x n coordinate row is the content.
  IntMatrix row(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
  SmithForm s = smith_normal_form(row);
  if (s.rank() == 0) {
    throw PreconditionError("is_primitive: zero vector");
  }
  return s.diagonal(0, 0) == 1;
}

IsotropicQuotient quotient_by_isotropic(const GramLattice& lattice,
                                        std::span<const LatVec> vperp_basis,
                                        const LatVec& v) {
  const std::size_t n = lattice.rank();
  if (v.size() != n) {
    throw PreconditionError("quotient_by_isotropic: vector length mismatch");
  }
  if (square(lattice, v) != 0) {
    throw PreconditionError("quotient_by_isotropic: v is not isotropic");
  }
  if (!is_primitive(lattice, v)) {
    throw PreconditionError("quotient_by_isotropic: v is not primitive");
  }
  for (const LatVec& b : vperp_basis) {
    if (inner(lattice, b, v) != 0) {
      throw PreconditionError("quotient_by_isotropic: basis vector not orthogonal to v");
    }
  }

  IsotropicQuotient q;
  q.v_ = v;
  q.perp_basis_ = IntMatrix::from_columns(vperp_basis, n);
  q.perp_snf_ = smith_normal_form(q.perp_basis_);
  auto coords = solve_integral(q.perp_snf_, v);
  if (!coords) {
    throw PreconditionError("quotient_by_isotropic: v does not lie in v^perp");
  }
  if (content(*coords) != 1) {
    throw PreconditionError("quotient_by_isotropic: v is not primitive in v^perp");
  }

  // Complete the coordinate vector of v to a basis: left * c = e_1.
  const std::size_t m = vperp_basis.size();
  SmithForm column = smith_normal_form(IntMatrix::from_columns(std::span(&*coords, 1), m));
  q.to_adapted_ = column.left;
  auto adapted_basis = unimodular_inverse(column.left);
  if (!adapted_basis) {
    throw InvariantError("quotient_by_isotropic: Smith transform is not unimodular");
  }
  for (std::size_t j = 1; j < m; ++j) {
    q.lifts_.push_back(q.perp_basis_ * adapted_basis->column(j));
  }
  q.lattice_ = sublattice(lattice, q.lifts_);
  return q;
}

LatVec IsotropicQuotient::project(const LatVec& x) const {
  auto coords = solve_integral(perp_snf_, x);
  if (!coords) {
    throw PreconditionError("project: element does not lie in v^perp");
  }
  LatVec adapted = to_adapted_ * *coords;
  return LatVec(adapted.begin() + 1, adapted.end());
}

LatVec IsotropicQuotient::lift(const LatVec& q) const {
  if (q.size() != lifts_.size()) {
    throw PreconditionError("lift: quotient coordinate length mismatch");
  }
  LatVec out(v_.size(), Int(0));
  for (std::size_t j = 0; j < q.size(); ++j) out = out + q[j] * lifts_[j];
  return out;
}

namespace {

void sort_by_size(std::vector<LatVec>& vs) {
  auto key = [](const LatVec& v) {
    Int m = 0;
    for (const Int& x : v) m = std::max(m, Int(abs(x)));
    return m;
  };
  std::sort(vs.begin(), vs.end(), [&](const LatVec& u, const LatVec& v) {
    Int ku = key(u), kv = key(v);
    if (ku != kv) return ku < kv;
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  });
}

bool marks_match(const IntMatrix& map, std::span<const LatVec> marks1,
                 std::span<const LatVec> marks2) {
  for (std::size_t i = 0; i < marks1.size(); ++i) {
    LatVec image = map * marks1[i];
    if (image != marks2[i] && image != -marks2[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<LatVec> vectors_of_square(const GramLattice& lattice, const Int& target,
                                      const Int& bound) {
  std::vector<LatVec> out;
  const IntMatrix& g = lattice.gram();
  if (lattice.rank() == 0) {
    if (target == 0) out.push_back({});
    return out;
  }
  if (lattice.rank() == 1) {
    for (Int x = -bound; x <= bound; ++x) {
      if (g(0, 0) * x * x == target) out.push_back({x});
    }
    sort_by_size(out);
    return out;
  }
  if (lattice.rank() != 2) {
    throw PreconditionError("vectors_of_square: rank > 2 unsupported");
  }
  // A x^2 + 2 B x y + C y^2 = target, solved for x along each line y = const.
  const Int& A = g(0, 0);
  const Int& B = g(0, 1);
  const Int& C = g(1, 1);
  auto keep = [&](const Int& x, const Int& y) {
    if (abs(x) <= bound) out.push_back({x, y});
  };
  for (Int y = -bound; y <= bound; ++y) {
    if (A != 0) {
      Int disc = B * B * y * y - A * (C * y * y - target);
      Int root;
      if (!is_square(disc, &root)) continue;
      for (const Int& numer : {Int(-B * y + root), Int(-B * y - root)}) {
        if (divides(A, numer)) keep(numer / A, y);
        if (root == 0) break;
      }
    } else {
      Int coeff = 2 * B * y;
      Int rest = target - C * y * y;
      if (coeff != 0) {
        if (divides(coeff, rest)) keep(rest / coeff, y);
      } else if (rest == 0) {
        for (Int x = -bound; x <= bound; ++x) out.push_back({x, y});
      }
    }
  }
  sort_by_size(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_isometry(const IntMatrix& map, const GramLattice& from, const GramLattice& to) {
  if (map.rows() != to.rank() || map.cols() != from.rank()) return false;
  if (map.rows() != map.cols()) return false;
  if (map.rows() > 0 && abs(determinant(map)) != 1) return false;
  return map.transposed() * to.gram() * map == from.gram();
}

std::optional<IntMatrix> find_marked_isometry(const GramLattice& l1,
                                              std::span<const LatVec> marks1,
                                              const GramLattice& l2,
                                              std::span<const LatVec> marks2,
                                              const Int& bound) {
  if (marks1.size() != marks2.size()) {
    throw PreconditionError("find_marked_isometry: mark lists differ in length");
  }
  if (l1.rank() > 2 || l2.rank() > 2) {
    throw PreconditionError("find_marked_isometry: rank > 2 unsupported");
  }
  for (const LatVec& m : marks1) {
    if (m.size() != l1.rank()) throw PreconditionError("find_marked_isometry: mark length");
  }
  for (const LatVec& m : marks2) {
    if (m.size() != l2.rank()) throw PreconditionError("find_marked_isometry: mark length");
  }
  if (l1.rank() != l2.rank()) return std::nullopt;

  auto accept = [&](const IntMatrix& map) {
    return is_isometry(map, l1, l2) && marks_match(map, marks1, marks2);
  };
  const std::size_t n = l1.rank();
  if (n == 0) {
    IntMatrix empty;
    return accept(empty) ? std::optional(empty) : std::nullopt;
  }
  if (n == 1) {
    for (long sign : {1L, -1L}) {
      IntMatrix map{{sign}};
      if (accept(map)) return map;
    }
    return std::nullopt;
  }

  const IntMatrix& g1 = l1.gram();
  const IntMatrix& g2 = l2.gram();
  const Int det1 = determinant(g1);
  if (det1 == 0 || determinant(g2) == 0) {
    throw PreconditionError("find_marked_isometry: degenerate form");
  }
  if (det1 != determinant(g2)) return std::nullopt;
  if (accept(IntMatrix::identity(2))) return IntMatrix::identity(2);

  // Basis f1, f2 of l1 with f1^2 != 0 (columns of `change`).
  IntMatrix change = IntMatrix::identity(2);
  if (g1(0, 0) == 0) {
    change = g1(1, 1) != 0 ? IntMatrix{{0, 1}, {1, 0}} : IntMatrix{{1, 0}, {1, 1}};
  }
  const IntMatrix f = change.transposed() * g1 * change;
  const IntMatrix change_inv = *unimodular_inverse(change);

  // Given the image X of f1, the image Y of f2 is fixed by det[X Y] = eps and
  // X.Y = f1.f2; the system has determinant -f1^2 != 0.
  for (const LatVec& x : vectors_of_square(l2, f(0, 0), bound)) {
    const LatVec gx = g2 * x;
    const Int denom = -f(0, 0);
    for (long eps : {1L, -1L}) {
      Int num0 = eps * gx[1] - x[0] * f(0, 1);
      Int num1 = -x[1] * f(0, 1) - eps * gx[0];
      if (!divides(denom, num0) || !divides(denom, num1)) continue;
      LatVec y{num0 / denom, num1 / denom};
      if (square(l2, y) != f(1, 1)) continue;
      IntMatrix image = IntMatrix::from_columns(std::vector<LatVec>{x, y}, 2);
      IntMatrix map = image * change_inv;
      if (accept(map)) return map;
    }
  }
  return std::nullopt;
}

}  // namespace k3iso
