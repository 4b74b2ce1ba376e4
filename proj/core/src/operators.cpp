#include "photonfilter/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "photonfilter/errors.hpp"

namespace photonfilter {

namespace {

std::size_t checked_dim(std::size_t dim) {
  if (dim == 0) throw DimensionError("Fock truncation must keep at least one level");
  return dim;
}

void require_same_dim(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs) {
    throw ShapeError(std::string(what) + ": dimension " + std::to_string(lhs) + " vs " +
                     std::to_string(rhs));
  }
}

constexpr double kNormTolerance = 1e-12;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(checked_dim(dim)), data_(dim * dim, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    require_same_dim(row.size(), dim_, "ComplexMatrix row");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t row, std::size_t col) {
  ComplexMatrix m(dim);
  if (row >= dim || col >= dim) throw ShapeError("matrix unit index outside truncation");
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(Complex scale, const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "scaled sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += scale * other.data_[k];
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs.dim_, rhs.dim_, "matrix product");
  const std::size_t d = lhs.dim_;
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

FockKet::FockKet(std::size_t dim) : amplitudes_(checked_dim(dim), Complex{}) {}

FockKet::FockKet(std::initializer_list<Complex> amplitudes)
    : amplitudes_(amplitudes) {
  checked_dim(amplitudes_.size());
}

FockKet FockKet::basis(std::size_t dim, std::size_t level) {
  FockKet ket(dim);
  if (level >= dim) throw ShapeError("number state outside truncation");
  ket[level] = 1.0;
  return ket;
}

double FockKet::norm_squared() const {
  double sum = 0.0;
  for (const auto& z : amplitudes_) sum += std::norm(z);
  return sum;
}

ComplexMatrix FockKet::projector() const {
  const std::size_t d = dim();
  ComplexMatrix p(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
  return p;
}

FockKet operator*(const ComplexMatrix& op, const FockKet& ket) {
  require_same_dim(op.dim(), ket.dim(), "operator on ket");
  FockKet out(ket.dim());
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j) out[i] += op(i, j) * ket[j];
  return out;
}

ComplexMatrix annihilation(std::size_t dim) {
  ComplexMatrix a(dim);
  for (std::size_t i = 0; i + 1 < dim; ++i) a(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  return a;
}

ComplexMatrix creation(std::size_t dim) { return annihilation(dim).adjoint(); }

ComplexMatrix number_op(std::size_t dim) {
  ComplexMatrix n(dim);
  for (std::size_t i = 0; i < dim; ++i) n(i, i) = static_cast<double>(i);
  return n;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  return a * b - b * a;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "trace of product");
  Complex sum{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) sum += a(i, k) * b(k, i);
  return sum;
}

Complex expectation(const FockKet& psi, const ComplexMatrix& op) {
  require_same_dim(psi.dim(), op.dim(), "expectation");
  if (std::abs(psi.norm_squared() - 1.0) > kNormTolerance)
    throw NormalizationError("expectation requires a normalized ket");
  const FockKet image = op * psi;
  Complex sum{};
  for (std::size_t i = 0; i < psi.dim(); ++i) sum += std::conj(psi[i]) * image[i];
  return sum;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return (m - m.adjoint()).max_abs() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return (m.adjoint() * m - ComplexMatrix::identity(m.dim())).max_abs() <= tol;
}

}  // namespace photonfilter
