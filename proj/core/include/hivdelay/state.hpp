#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace hivdelay {

/// Densities (per mm^3) of uninfected cells x, single-infected cells y,
/// double-infected cells z, pathogen virions v and recombinant virions w.
/// Also used for the time derivative of the same quantities.
class StateVector {
 public:
  static constexpr std::size_t kSize = 5;
  static constexpr std::array<std::string_view, kSize> kNames{"x", "y", "z", "v", "w"};

  constexpr StateVector() = default;
  constexpr StateVector(double x, double y, double z, double v, double w) : c_{x, y, z, v, w} {}

  constexpr double x() const { return c_[0]; }
  constexpr double y() const { return c_[1]; }
  constexpr double z() const { return c_[2]; }
  constexpr double v() const { return c_[3]; }
  constexpr double w() const { return c_[4]; }

  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr double operator[](std::size_t i) const { return c_[i]; }

  constexpr auto begin() const { return c_.begin(); }
  constexpr auto end() const { return c_.end(); }
  constexpr auto begin() { return c_.begin(); }
  constexpr auto end() { return c_.end(); }

  constexpr StateVector& operator+=(const StateVector& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr StateVector& operator-=(const StateVector& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr StateVector& operator*=(double s) {
    for (auto& e : c_) e *= s;
    return *this;
  }

  friend constexpr StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend constexpr StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend constexpr StateVector operator*(double s, StateVector a) { return a *= s; }
  friend constexpr StateVector operator*(StateVector a, double s) { return a *= s; }
  friend constexpr bool operator==(const StateVector&, const StateVector&) = default;

  /// Largest absolute component.
  constexpr double max_abs() const {
    double m = 0.0;
    for (double e : c_) m = e < 0 ? (-e > m ? -e : m) : (e > m ? e : m);
    return m;
  }

 private:
  std::array<double, kSize> c_{};
};

}  // namespace hivdelay
