#pragma once

// Dense operator algebra on a truncated single-mode Fock space |0>..|D-1>.
//
// The matrices involved are tiny (D <= 5 in every experiment), so storage is a
// plain row-major vector and all products are naive triple loops.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace photonfilter {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  /// Zero matrix of dimension `dim`. Throws DimensionError for dim == 0.
  explicit ComplexMatrix(std::size_t dim);

  /// Row-major construction; `rows` must be square and non-empty.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  /// The matrix unit |row><col|.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// Largest entrywise modulus.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  /// this += scale * other, without a temporary.
  ComplexMatrix& add_scaled(Complex scale, const ComplexMatrix& other);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

class FockKet {
 public:
  /// Zero vector; not a valid state until amplitudes are set.
  explicit FockKet(std::size_t dim);
  FockKet(std::initializer_list<Complex> amplitudes);

  /// The number state |level>.
  static FockKet basis(std::size_t dim, std::size_t level);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  double norm_squared() const;
  /// |psi><psi|
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amplitudes_;
};

FockKet operator*(const ComplexMatrix& op, const FockKet& ket);

/// Ladder operator a with a|n> = sqrt(n)|n-1>.
ComplexMatrix annihilation(std::size_t dim);
/// a^dagger, the adjoint of annihilation(dim).
ComplexMatrix creation(std::size_t dim);
/// diag(0, 1, ..., dim-1).
ComplexMatrix number_op(std::size_t dim);

/// AB - BA. Throws ShapeError on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr(AB) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// <psi|X|psi>. Throws ShapeError on mismatch, NormalizationError if psi is
/// not normalized to 1e-12.
Complex expectation(const FockKet& psi, const ComplexMatrix& op);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

}  // namespace photonfilter
