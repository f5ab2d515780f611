#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sidlab/error.hpp"

namespace sidlab {

/// Dense square matrix, row-major.
template <typename T> class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n, const T &fill = T(0))
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  const std::vector<T> &data() const noexcept { return data_; }

  bool operator==(const Matrix &other) const = default;

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!((*this)(i, j) == (*this)(j, i)))
          return false;
    return true;
  }

  template <typename F> auto map(F &&f) const {
    using U = decltype(f(std::declval<const T &>()));
    Matrix<U> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        out(i, j) = f((*this)(i, j));
    return out;
  }

private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> multiply(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::ShapeMismatch, "matrix sizes differ");
  const std::size_t n = a.size();
  Matrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += aik * b(k, j);
    }
  return out;
}

} // namespace sidlab
