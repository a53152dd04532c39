// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qsearch/errors.hpp"

namespace qsearch {

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
///
/// Used for gate matrices, injected oracle operators and the brute-force
/// reference unitary of a whole circuit. Nothing here enforces unitarity;
/// products and projector sums built along the way need not be unitary.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  DenseMatrix(std::size_t dim, std::initializer_list<Complex> row_major)
      : dim_(dim), data_(row_major) {
    if (data_.size() != dim * dim) {
      throw DomainError("DenseMatrix: expected " + std::to_string(dim * dim) +
                        " entries, got " + std::to_string(data_.size()));
    }
  }

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static DenseMatrix diagonal(const std::vector<Complex>& diag) {
    DenseMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  const std::vector<Complex>& data() const noexcept { return data_; }

  DenseMatrix adjoint() const {
    DenseMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  DenseMatrix& operator+=(const DenseMatrix& other) {
    check_same_dim(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  DenseMatrix& operator*=(Complex scale) {
    for (auto& v : data_) v *= scale;
    return *this;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    a.check_same_dim(b);
    const std::size_t n = a.dim_;
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }

  friend DenseMatrix operator*(Complex s, DenseMatrix m) { return m *= s; }

  friend std::vector<Complex> operator*(const DenseMatrix& m, const std::vector<Complex>& v) {
    if (v.size() != m.dim_) throw DomainError("DenseMatrix: vector length mismatch");
    std::vector<Complex> out(m.dim_);
    for (std::size_t r = 0; r < m.dim_; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < m.dim_; ++c) acc += m(r, c) * v[c];
      out[r] = acc;
    }
    return out;
  }

  /// Exact element-wise equality (used for IR equality, not numerics).
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  void check_same_dim(const DenseMatrix& other) const {
    if (other.dim_ != dim_) {
      throw DomainError("DenseMatrix: dimension mismatch (" + std::to_string(dim_) +
                        " vs " + std::to_string(other.dim_) + ")");
    }
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Used where the brute-force oracle operates on whole-register unitaries.
using DenseUnitary = DenseMatrix;

/// Kronecker product a ⊗ b; a occupies the high-order index bits.
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  DenseMatrix out(na * nb);
  for (std::size_t ar = 0; ar < na; ++ar)
    for (std::size_t ac = 0; ac < na; ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < nb; ++br)
        for (std::size_t bc = 0; bc < nb; ++bc)
          out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
    }
  return out;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

/// Largest element-wise deviation of U†U from the identity.
inline double unitarity_error(const DenseMatrix& u) {
  return max_abs_diff(u.adjoint() * u, DenseMatrix::identity(u.dim()));
}

inline bool is_unitary(const DenseMatrix& u, double tol = 1e-10) {
  return unitarity_error(u) <= tol;
}

/// Smallest max |a - e^{iφ} b| over global phases, with φ fixed by the
/// largest-magnitude entry of b. Returns +inf when the magnitudes cannot
/// agree (|a_k| vs |b_k| at that entry differ by more than rounding).
inline double phase_insensitive_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("phase_insensitive_diff: dimension mismatch");
  const auto& bd = b.data();
  if (bd.empty()) return 0.0;
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < bd.size(); ++i)
    if (std::abs(bd[i]) > std::abs(bd[pivot])) pivot = i;
  if (std::abs(bd[pivot]) == 0.0) return max_abs_diff(a, b);
  const Complex ratio = a.data()[pivot] / bd[pivot];
  if (std::abs(ratio) == 0.0) return max_abs_diff(a, b);
  const Complex phase = ratio / std::abs(ratio);
  double worst = 0.0;
  for (std::size_t i = 0; i < bd.size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - phase * bd[i]));
  return worst;
}

inline bool equal_up_to_global_phase(const DenseMatrix& a, const DenseMatrix& b,
                                     double tol = 1e-10) {
  return phase_insensitive_diff(a, b) <= tol;
}

}  // namespace qsearch
