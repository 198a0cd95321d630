#ifndef SISNET_MATRIX_HPP
#define SISNET_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sisnet/errors.hpp"

namespace sisnet {

/// Dense square matrix, row-major.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto &r : rows) {
      if (r.size() != n_) throw DimensionError("Matrix: rows must form a square");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n, double scale = 1.0) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  double &operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  bool is_symmetric(double tol = 0.0) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  bool is_nonnegative() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
  }

  Matrix transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix &operator*=(double s) noexcept {
    for (auto &v : data_) v *= s;
    return *this;
  }

  friend Matrix operator*(Matrix m, double s) noexcept { return m *= s; }
  friend Matrix operator*(double s, Matrix m) noexcept { return m *= s; }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.n_ != b.n_) throw DimensionError("Matrix product: dimension mismatch");
    const std::size_t n = a.n_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

inline std::vector<double> multiply(const Matrix &m, std::span<const double> x) {
  if (x.size() != m.size()) throw DimensionError("matrix-vector product: dimension mismatch");
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline double max_abs(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double norm2(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

/// Operator norms induced by the vector 1-, 2- and inf-norms.
enum class NormId { Induced1, Induced2, InducedInf };

inline std::string_view to_string(NormId id) noexcept {
  switch (id) {
  case NormId::Induced1: return "induced-1";
  case NormId::Induced2: return "induced-2";
  case NormId::InducedInf: return "induced-inf";
  }
  return "?";
}

inline NormId parse_norm_id(std::string_view s) {
  if (s == "induced-1" || s == "1") return NormId::Induced1;
  if (s == "induced-2" || s == "2") return NormId::Induced2;
  if (s == "induced-inf" || s == "inf") return NormId::InducedInf;
  throw ParameterError("unknown norm '" + std::string(s) + "'");
}

/// Max absolute column sum.
inline double norm_induced_1(const Matrix &m) noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Max absolute row sum.
inline double norm_induced_inf(const Matrix &m) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

} // namespace sisnet

#endif // SISNET_MATRIX_HPP
