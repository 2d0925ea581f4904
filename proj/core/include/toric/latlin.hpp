#pragma once

// Exact integer and rational linear algebra: dense matrices over GMP
// integers/rationals, Smith normal form, lattice-basis completion and
// cokernel orders.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toric::latlin {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix over an exact ring.
template <class Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const std::vector<Scalar>> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Scalar> row(std::size_t i) const;
  std::vector<Scalar> col(std::size_t j) const;

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class Scalar>
Matrix<Scalar> operator*(const Matrix<Scalar>& a, const Matrix<Scalar>& b);
template <class Scalar>
std::vector<Scalar> operator*(const Matrix<Scalar>& a, std::span<const Scalar> x);
template <class Scalar>
std::vector<Scalar> operator*(const Matrix<Scalar>& a, const std::vector<Scalar>& x) {
  return a * std::span<const Scalar>(x);
}

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(std::span<const Integer> v);
/// Entry-wise conversion; throws PreconditionError if an entry is not integral.
IntMatrix to_integer(const RatMatrix& m);

/// U·M·V = D with U, V unimodular and D diagonal with d_i | d_{i+1}, d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal of D (length min(rows, cols)), zeros included.
  IntVector diagonal() const;
  /// Nonzero entries of the diagonal.
  IntVector invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

/// Pivots on the smallest nonzero absolute value remaining in the active block.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// True iff the vectors (rows of a k x N matrix, k <= N) extend to a
/// Z-basis of Z^N, i.e. all k invariant factors equal 1.
/// Throws PreconditionError on zero vectors, ragged input or k > N.
bool completes_to_lattice_basis(std::span<const IntVector> vectors);

/// Exact inverse via Gauss-Jordan; throws SingularMatrixError.
RatMatrix rat_inverse(const RatMatrix& m);

Rational determinant(const RatMatrix& m);
/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : M x = 0}, one vector per free column of the reduced row
/// echelon form.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Order of Z^cols / (row span of M): product of invariant factors when the
/// rows have full column rank, nullopt ("infinite") otherwise.
std::optional<Integer> cokernel_order(const IntMatrix& m);

Integer gcd(std::span<const Integer> v);
Integer lcm_of_denominators(std::span<const Rational> v);

/// Smallest positive multiple of v that is an integer vector with gcd 1.
/// Throws PreconditionError for the zero vector.
IntVector primitive(std::span<const Rational> v);
IntVector primitive(std::span<const Integer> v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

/// Parses "p/q", "p" or a decimal-free integer string into a normalized rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace toric::latlin
