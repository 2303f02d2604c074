#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace medent {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  std::complex<double>& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<std::complex<double>> data_;
};

/// Eigenvalues of a Hermitian matrix in ascending order, via cyclic Jacobi on
/// the equivalent real symmetric embedding [[Re, -Im], [Im, Re]]. Absolute
/// accuracy ~1e-13 times the Frobenius norm. Only the Hermitian part is used.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigenvalues of a real symmetric matrix (row-major, n x n), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

}  // namespace medent
