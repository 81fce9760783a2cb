#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <numbers>
#include <ostream>

#include "dimerlab/errors.hpp"

namespace dimerlab {

// Element r*tau + s of H_1(torus, Z), i.e. s[A] + r[B] where A: t -> t and
// B: t -> t*tau.  Per-edge crossing annotations use the same type: an edge with
// crossing h connects the tail representative to the lift head + s + r*tau.
struct HomologyClass {
  int r = 0;
  int s = 0;

  static constexpr HomologyClass from_cuts(int a, int b) { return {b, a}; }
  constexpr int a() const { return s; }
  constexpr int b() const { return r; }

  constexpr bool is_zero() const { return r == 0 && s == 0; }
  constexpr bool is_even() const { return r % 2 == 0 && s % 2 == 0; }

  constexpr HomologyClass operator+(HomologyClass o) const { return {r + o.r, s + o.s}; }
  constexpr HomologyClass operator-(HomologyClass o) const { return {r - o.r, s - o.s}; }
  constexpr HomologyClass operator-() const { return {-r, -s}; }
  constexpr HomologyClass& operator+=(HomologyClass o) {
    r += o.r;
    s += o.s;
    return *this;
  }
  constexpr HomologyClass& operator-=(HomologyClass o) {
    r -= o.r;
    s -= o.s;
    return *this;
  }
  friend constexpr HomologyClass operator*(int k, HomologyClass h) { return {k * h.r, k * h.s}; }
  constexpr auto operator<=>(const HomologyClass&) const = default;
};

// Intersection pairing with [A].[B] = 1.
constexpr int intersection(HomologyClass x, HomologyClass y) { return x.s * y.r - x.r * y.s; }

inline std::ostream& operator<<(std::ostream& os, HomologyClass h) {
  return os << h.r << "tau" << (h.s < 0 ? "-" : "+") << (h.s < 0 ? -h.s : h.s);
}

inline constexpr HomologyClass kClassA{0, 1};
inline constexpr HomologyClass kClassB{1, 0};

// Torus modulus, Im(tau) > 0.
class Modulus {
 public:
  explicit Modulus(std::complex<double> tau) : tau_(tau) {
    if (!(tau.imag() > 0.0)) throw PreconditionError("modulus must have Im(tau) > 0");
  }
  std::complex<double> tau() const { return tau_; }
  // Lattice vector s + r*tau of a homology class.
  std::complex<double> lift(HomologyClass h) const { return double(h.s) + double(h.r) * tau_; }
  bool operator==(const Modulus&) const = default;

 private:
  std::complex<double> tau_;
};

// Unitary character chi(r*tau + s) = exp(2 pi i (r u + s v)), (u, v) in [0,1)^2.
class Character {
 public:
  Character() = default;
  Character(double u, double v) : u_(wrap(u)), v_(wrap(v)) {}

  double u() const { return u_; }
  double v() const { return v_; }
  bool is_trivial() const { return u_ == 0.0 && v_ == 0.0; }

  std::complex<double> operator()(HomologyClass h) const {
    // Reduce the phase mod 1 before scaling so large windings keep full precision.
    const double t = wrap(double(h.r) * u_ + double(h.s) * v_);
    return std::polar(1.0, 2.0 * std::numbers::pi * t);
  }
  std::complex<double> on_A() const { return (*this)(kClassA); }
  std::complex<double> on_B() const { return (*this)(kClassB); }

  // Product with the sign character eps, eps(A) = (-1)^ea, eps(B) = (-1)^eb.
  Character shifted_by_sign(int eb, int ea) const { return {u_ + 0.5 * eb, v_ + 0.5 * ea}; }
  Character conjugate() const { return {-u_, -v_}; }

  bool operator==(const Character&) const = default;

 private:
  static double wrap(double x) {
    double y = x - std::floor(x);
    return y >= 1.0 ? 0.0 : y;
  }
  double u_ = 0.0;
  double v_ = 0.0;
};

}  // namespace dimerlab
