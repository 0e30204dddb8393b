#pragma once

// Exact integer linear algebra over lattices with a symmetric bilinear form.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "k3iso/integer.hpp"

namespace k3iso {

// Coordinates of a lattice element in the lattice's chosen basis.
using LatVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::span<const LatVec> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  LatVec row(std::size_t i) const;
  LatVec column(std::size_t j) const;
  IntMatrix transposed() const;

  void swap_rows(std::size_t i, std::size_t k);
  void swap_cols(std::size_t j, std::size_t k);
  // row_i += factor * row_k
  void add_row_multiple(std::size_t i, std::size_t k, const Int& factor);
  // col_j += factor * col_k
  void add_col_multiple(std::size_t j, std::size_t k, const Int& factor);
  void negate_row(std::size_t i);

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);
LatVec operator*(const IntMatrix& m, const LatVec& v);

LatVec operator+(const LatVec& u, const LatVec& v);
LatVec operator-(const LatVec& u, const LatVec& v);
LatVec operator*(const Int& k, const LatVec& v);
LatVec operator-(const LatVec& v);

// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& m);

// left * m * right == diagonal, left and right unimodular, diagonal entries
// non-negative with d_i | d_{i+1}; zero entries trail the nonzero ones.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;

  std::size_t rank() const;
  std::vector<Int> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Inverse of a unimodular matrix; nullopt if m is not unimodular.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m);

// Some integer x with a * x == b, or nullopt.
std::optional<LatVec> solve_integral(const IntMatrix& a, const LatVec& b);
std::optional<LatVec> solve_integral(const SmithForm& snf_of_a, const LatVec& b);

// Basis of {x in Z^n : a * x == 0}; always saturated.
std::vector<LatVec> integer_kernel(const IntMatrix& a);

// gcd of the coordinates.
Int content(const LatVec& v);

// True iff the vectors are independent and span a saturated sublattice of Z^dim.
bool is_saturated(std::span<const LatVec> basis, std::size_t dim);

class GramLattice {
 public:
  GramLattice() = default;
  explicit GramLattice(IntMatrix gram);

  // Hyperbolic plane with e1.e2 = pairing and e1^2 = e2^2 = 0.
  static GramLattice hyperbolic_plane(long pairing = -1);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  bool even() const { return even_; }

  bool operator==(const GramLattice& other) const { return gram_ == other.gram_; }

 private:
  IntMatrix gram_;
  bool even_ = true;
};

Int inner(const GramLattice& lattice, const LatVec& u, const LatVec& v);
Int square(const GramLattice& lattice, const LatVec& v);

// Lattice spanned by `basis`, with the induced form.
GramLattice sublattice(const GramLattice& lattice, std::span<const LatVec> basis);

// Basis of {x : inner(x, g) = 0 for all g in gens}.
std::vector<LatVec> orthogonal_complement(const GramLattice& lattice,
                                          std::span<const LatVec> gens);

// Throws PreconditionError for the zero vector.
bool is_primitive(const GramLattice& lattice, const LatVec& v);

// v^perp / Zv for a primitive isotropic v, with a coordinate projection.
class IsotropicQuotient {
 public:
  const GramLattice& lattice() const { return lattice_; }

  // Representatives in ambient coordinates of the quotient basis.
  const std::vector<LatVec>& lifts() const { return lifts_; }

  const LatVec& isotropic_vector() const { return v_; }

  // Quotient coordinates of x; throws PreconditionError if x is not in v^perp.
  LatVec project(const LatVec& x) const;

  // Ambient representative of a quotient element.
  LatVec lift(const LatVec& q) const;

 private:
  friend IsotropicQuotient quotient_by_isotropic(const GramLattice&,
                                                 std::span<const LatVec>,
                                                 const LatVec&);
  GramLattice lattice_;
  std::vector<LatVec> lifts_;
  LatVec v_;
  IntMatrix perp_basis_;  // columns span v^perp
  SmithForm perp_snf_;
  IntMatrix to_adapted_;  // perp coords -> (multiple of v, quotient coords)
};

IsotropicQuotient quotient_by_isotropic(const GramLattice& lattice,
                                        std::span<const LatVec> vperp_basis,
                                        const LatVec& v);

// Vectors of a rank <= 2 lattice with the given square and every coordinate
// bounded by `bound` in absolute value, ordered by max-norm then lexicographically.
std::vector<LatVec> vectors_of_square(const GramLattice& lattice, const Int& square,
                                      const Int& bound);

// True iff map (columns = images of the basis of `from`) is unimodular and
// preserves the forms.
bool is_isometry(const IntMatrix& map, const GramLattice& from, const GramLattice& to);

inline const Int kDefaultIsometryBound = 10000;

// Searches a form-preserving unimodular map sending marks1[i] to +-marks2[i].
// Rank <= 2 only; exhaustive over images of generators with coordinates
// bounded by `bound`.
std::optional<IntMatrix> find_marked_isometry(const GramLattice& l1,
                                              std::span<const LatVec> marks1,
                                              const GramLattice& l2,
                                              std::span<const LatVec> marks2,
                                              const Int& bound = kDefaultIsometryBound);

}  // namespace k3iso
