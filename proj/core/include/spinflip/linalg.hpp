#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spinflip {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Entrywise tolerance used by the Hermiticity pre-check.
inline constexpr double kHermitianTol = 1e-12;
// Singular values below this fraction of the largest one do not count toward rank.
inline constexpr double kDefaultRankTol = 1e-8;

/// Dense row-major complex matrix. Small by intent (dimension <= 8).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given shape.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionMismatch if entries.size() != rows*cols and
  /// std::domain_error on NaN/Inf entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Kronecker product; kron(I, U) acts as U on the second tensor factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|v>, conjugate-linear in the left argument.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

/// Eigenvalues of a Hermitian matrix in ascending order.
/// Throws NotSquare, or NotHermitian when max |m - m^dagger| exceeds 1e-12.
/// The input is never symmetrized.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double smallest_eigenvalue(const ComplexMatrix& m);

/// Singular values of the matrix whose rows are `vectors`, descending.
std::vector<double> singular_values(std::span<const ComplexVector> vectors);

/// Number of singular values of the stacked vectors above tol * sigma_max.
/// An empty list has rank 0. Throws DimensionMismatch on ragged input.
std::size_t numerical_rank(std::span<const ComplexVector> vectors,
                           double tol = kDefaultRankTol);

/// Smallest eigenvalue >= -tol. Same preconditions as hermitian_eigenvalues.
bool is_psd(const ComplexMatrix& m, double tol);

/// max |m^dagger m - I| <= tol. Throws NotSquare.
bool is_unitary(const ComplexMatrix& m, double tol);

double hermiticity_defect(const ComplexMatrix& m);

}  // namespace spinflip
