#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace brodylab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

/// Largest supported number of homogeneous coordinates (N + 1).
inline constexpr int kMaxComponents = 8;

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical procedure cannot produce a trustworthy value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-capacity vector in C^(N+1). Homogeneous coordinates are small,
/// so these live on the stack and are copied freely.
class HomogVec {
 public:
  HomogVec() = default;
  explicit HomogVec(int size) : size_(checked(size)) {}
  HomogVec(std::initializer_list<Complex> values) : size_(checked(static_cast<int>(values.size()))) {
    int i = 0;
    for (const Complex& v : values) data_[i++] = v;
  }
  explicit HomogVec(std::span<const Complex> values) : size_(checked(static_cast<int>(values.size()))) {
    for (int i = 0; i < size_; ++i) data_[i] = values[i];
  }

  int size() const { return size_; }
  Complex& operator[](int i) { return data_[i]; }
  const Complex& operator[](int i) const { return data_[i]; }
  std::span<const Complex> view() const { return {data_.data(), static_cast<std::size_t>(size_)}; }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < size_; ++i) s += std::norm(data_[i]);
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
  int argmax_modulus() const {
    int k = 0;
    double best = -1.0;
    for (int i = 0; i < size_; ++i) {
      const double m = std::norm(data_[i]);
      if (m > best) {
        best = m;
        k = i;
      }
    }
    return k;
  }
  HomogVec& operator*=(Complex s) {
    for (int i = 0; i < size_; ++i) data_[i] *= s;
    return *this;
  }

 private:
  static int checked(int size) {
    if (size < 0 || size > kMaxComponents) {
      throw std::invalid_argument("HomogVec: size " + std::to_string(size) + " outside [0, " +
                                  std::to_string(kMaxComponents) + "]");
    }
    return size;
  }

  std::array<Complex, kMaxComponents> data_{};
  int size_ = 0;
};

/// Hermitian inner product <u, v> = sum u_i conj(v_i).
inline Complex inner(const HomogVec& u, const HomogVec& v) {
  Complex s = 0.0;
  for (int i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

/// |u ^ v|^2 as the sum over i < j of |u_i v_j - u_j v_i|^2.
inline double wedge_norm2(const HomogVec& u, const HomogVec& v) {
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    for (int j = i + 1; j < u.size(); ++j) s += std::norm(u[i] * v[j] - u[j] * v[i]);
  }
  return s;
}

}  // namespace brodylab
