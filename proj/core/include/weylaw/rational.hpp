#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace weylaw {

using Rational = mpq_class;

/// Canonical "p/q" (or "p" when q = 1) rendering.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Point of the ambient coordinate space. Arithmetic is exact; equality is
/// coordinate-wise.
class AmbientVector {
 public:
  AmbientVector() = default;
  explicit AmbientVector(std::size_t dim) : coords_(dim, Rational(0)) {}
  explicit AmbientVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  AmbientVector(std::initializer_list<Rational> coords) : coords_(coords) {}
  static AmbientVector from_ints(std::initializer_list<long> values);

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  std::vector<double> to_doubles() const;

  AmbientVector& operator+=(const AmbientVector& other);
  AmbientVector& operator-=(const AmbientVector& other);
  AmbientVector& operator*=(const Rational& s);

  friend AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
  friend AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
  friend AmbientVector operator*(const Rational& s, AmbientVector a) { return a *= s; }
  friend AmbientVector operator-(AmbientVector a) { return a *= Rational(-1); }
  friend bool operator==(const AmbientVector& a, const AmbientVector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const AmbientVector& a, const AmbientVector& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Rational> coords_;
};

Rational dot(const AmbientVector& a, const AmbientVector& b);
std::string to_string(const AmbientVector& v);

/// Dense exact matrix inverse (Gauss-Jordan). Throws std::domain_error when singular.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m);

/// Rank of a set of vectors over the rationals.
std::size_t rank_of(const std::vector<AmbientVector>& vectors);

}  // namespace weylaw
