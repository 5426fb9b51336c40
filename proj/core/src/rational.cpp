#include "weylaw/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace weylaw {

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    // Accept decimal literals such as "0.25" as exact decimals.
    const auto dot_pos = text.find('.');
    if (dot_pos == std::string::npos) throw std::invalid_argument("not a rational: " + text);
    std::string digits = text.substr(0, dot_pos) + text.substr(dot_pos + 1);
    const std::size_t scale = text.size() - dot_pos - 1;
    Rational num;
    if (digits.empty() || num.set_str(digits, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    q = num / Rational(den);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

AmbientVector AmbientVector::from_ints(std::initializer_list<long> values) {
  std::vector<Rational> c;
  c.reserve(values.size());
  for (long v : values) c.emplace_back(v);
  return AmbientVector(std::move(c));
}

bool AmbientVector::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

std::vector<double> AmbientVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.get_d());
  return out;
}

AmbientVector& AmbientVector::operator+=(const AmbientVector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

AmbientVector& AmbientVector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

Rational dot(const AmbientVector& a, const AmbientVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const AmbientVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << to_string(v[i]);
  }
  os << ')';
  return os.str();
}

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::size_t rank_of(const std::vector<AmbientVector>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<std::vector<Rational>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(v.coords());
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t j = col; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace weylaw
