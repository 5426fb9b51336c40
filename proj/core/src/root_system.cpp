#include "weylaw/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace weylaw {

namespace {

AmbientVector unit(std::size_t dim, std::size_t i, long scale = 1) {
  AmbientVector v(dim);
  v[i] = scale;
  return v;
}

AmbientVector e_diff(std::size_t dim, std::size_t i, std::size_t j) {
  AmbientVector v(dim);
  v[i] = 1;
  v[j] = -1;
  return v;
}

std::vector<AmbientVector> e8_simple_roots() {
  constexpr std::size_t dim = 8;
  std::vector<AmbientVector> s;
  AmbientVector a1(dim);
  const Rational half(1, 2);
  a1[0] = half;
  a1[7] = half;
  for (std::size_t i = 1; i <= 6; ++i) a1[i] = -half;
  s.push_back(a1);
  AmbientVector a2(dim);
  a2[0] = 1;
  a2[1] = 1;
  s.push_back(a2);
  s.push_back(e_diff(dim, 1, 0));
  for (std::size_t i = 2; i <= 6; ++i) s.push_back(e_diff(dim, i, i - 1));
  return s;
}

std::vector<AmbientVector> standard_simple_roots(Family family, int rank) {
  const auto n = static_cast<std::size_t>(rank);
  std::vector<AmbientVector> s;
  switch (family) {
    case Family::A:
      for (std::size_t i = 0; i < n; ++i) s.push_back(e_diff(n + 1, i, i + 1));
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(e_diff(n, i, i + 1));
      if (family == Family::B) {
        s.push_back(unit(n, n - 1));
      } else if (family == Family::C) {
        s.push_back(unit(n, n - 1, 2));
      } else {
        AmbientVector last(n);
        last[n - 2] = 1;
        last[n - 1] = 1;
        s.push_back(last);
      }
      break;
    case Family::E: {
      auto e8 = e8_simple_roots();
      s.assign(e8.begin(), e8.begin() + rank);
      break;
    }
    case Family::F: {
      const Rational half(1, 2);
      s.push_back(e_diff(4, 1, 2));
      s.push_back(e_diff(4, 2, 3));
      s.push_back(unit(4, 3));
      s.push_back(AmbientVector{half, -half, -half, -half});
      break;
    }
    case Family::G:
      s.push_back(AmbientVector::from_ints({1, -1, 0}));
      s.push_back(AmbientVector::from_ints({-2, 1, 1}));
      break;
  }
  return s;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

Family parse_family(const std::string& text) {
  if (text.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (c >= 'A' && c <= 'G') return static_cast<Family>(c - 'A');
  }
  throw std::invalid_argument("unknown root system family '" + text + "' (expected one of A,B,C,D,E,F,G)");
}

bool is_classical(Family f) { return f == Family::A || f == Family::B || f == Family::C || f == Family::D; }

void validate_type(Family family, int rank) {
  const std::string label = std::string(1, family_letter(family)) + std::to_string(rank);
  auto reject = [&](const char* why) {
    throw std::invalid_argument("invalid root system type " + label + ": " + why);
  };
  constexpr int max_classical_rank = 32;
  switch (family) {
    case Family::A:
      if (rank < 1) reject("type A requires rank >= 1");
      break;
    case Family::B:
    case Family::C:
      if (rank < 2) reject("types B and C require rank >= 2");
      break;
    case Family::D:
      if (rank < 4) reject("type D requires rank >= 4");
      break;
    case Family::E:
      if (rank < 6 || rank > 8) reject("type E exists only in ranks 6, 7, 8");
      return;
    case Family::F:
      if (rank != 4) reject("type F exists only in rank 4");
      return;
    case Family::G:
      if (rank != 2) reject("type G exists only in rank 2");
      return;
  }
  if (rank > max_classical_rank) reject("rank exceeds the supported maximum of 32");
}

SpectralParam SpectralParam::real(AmbientVector v) {
  AmbientVector zero(v.dim());
  return {std::move(v), std::move(zero)};
}

SpectralParam SpectralParam::imaginary(AmbientVector v) {
  AmbientVector zero(v.dim());
  return {std::move(zero), std::move(v)};
}

double ComplexRational::abs() const { return std::hypot(re.get_d(), im.get_d()); }

RootSystem RootSystem::build(Family family, int rank) {
  validate_type(family, rank);
  if (family == Family::C && rank == 2) family = Family::B;
  return from_simple_roots(family, standard_simple_roots(family, rank));
}

RootSystem RootSystem::from_simple_roots(Family family, std::vector<AmbientVector> simple) {
  if (simple.empty()) throw std::invalid_argument("empty simple system");
  if (rank_of(simple) != simple.size()) throw std::invalid_argument("simple roots are linearly dependent");
  RootSystem rs;
  rs.family_ = family;
  rs.simple_ = std::move(simple);
  rs.complete();
  return rs;
}

void RootSystem::complete() {
  const std::size_t r = simple_.size();

  cartan_.assign(r, std::vector<long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Rational v = 2 * dot(simple_[i], simple_[j]) / dot(simple_[j], simple_[j]);
      if (v.get_den() != 1) throw std::invalid_argument("simple roots do not form a crystallographic system");
      cartan_[i][j] = v.get_num().get_si();  // ⟨α_i, α_j∨⟩
    }
  }

  // Reflection closure in simple-root coordinates.
  std::set<std::vector<long>> seen;
  std::deque<std::vector<long>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> c(r, 0);
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < r; ++j) {
      long pair = 0;
      for (std::size_t i = 0; i < r; ++i) pair += c[i] * cartan_[i][j];
      if (pair == 0) continue;
      auto image = c;
      image[j] -= pair;
      if (std::any_of(image.begin(), image.end(), [](long x) { return x < 0; })) continue;
      if (seen.insert(image).second) queue.push_back(image);
    }
  }

  std::vector<std::vector<long>> coords(seen.begin(), seen.end());
  std::stable_sort(coords.begin(), coords.end(), [](const auto& a, const auto& b) {
    const long ha = std::accumulate(a.begin(), a.end(), 0L);
    const long hb = std::accumulate(b.begin(), b.end(), 0L);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  positive_coords_ = coords;
  positive_.clear();
  for (const auto& c : coords) {
    AmbientVector v(simple_.front().dim());
    for (std::size_t i = 0; i < r; ++i)
      if (c[i] != 0) v += Rational(c[i]) * simple_[i];
    positive_.push_back(std::move(v));
  }

  root_index_.clear();
  positive_coroots_.clear();
  root_norm2_.clear();
  for (std::size_t k = 0; k < positive_.size(); ++k) {
    root_index_.emplace(positive_[k], k);
    root_norm2_.push_back(dot(positive_[k], positive_[k]));
    positive_coroots_.push_back((2 / root_norm2_.back()) * positive_[k]);
  }

  rho_ = AmbientVector(simple_.front().dim());
  for (const auto& a : positive_) rho_ += a;
  rho_ *= Rational(1, 2);

  // The last root in height order is the unique root of maximal height.
  highest_index_ = positive_.size() - 1;

  std::vector<std::vector<Rational>> gram(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(simple_[i], simple_[j]);
  gram_inverse_ = invert(gram);

  // ϖ_i = Σ_k (A⁻¹)_{ik} α_k with A_{kj} = ⟨α_k, α_j∨⟩.
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = cartan_[i][j];
  const auto a_inv = invert(a);
  fundamental_.clear();
  for (std::size_t i = 0; i < r; ++i) {
    AmbientVector w(simple_.front().dim());
    for (std::size_t k = 0; k < r; ++k) w += a_inv[i][k] * simple_[k];
    fundamental_.push_back(std::move(w));
  }
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank()); }

std::uint64_t RootSystem::weyl_group_order() const {
  const int n = rank();
  switch (family_) {
    case Family::A:
      return factorial(n + 1);
    case Family::B:
    case Family::C:
      return (std::uint64_t{1} << n) * factorial(n);
    case Family::D:
      return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::E:
      return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
    case Family::F:
      return 1152;
    case Family::G:
      return 12;
  }
  return 0;
}

std::optional<std::pair<std::size_t, int>> RootSystem::find_root(const AmbientVector& alpha) const {
  if (alpha.dim() != ambient_dim()) return std::nullopt;
  if (auto it = root_index_.find(alpha); it != root_index_.end()) return std::make_pair(it->second, 1);
  if (auto it = root_index_.find(-alpha); it != root_index_.end()) return std::make_pair(it->second, -1);
  return std::nullopt;
}

AmbientVector RootSystem::coroot(const AmbientVector& alpha) const {
  if (!is_root(alpha)) throw std::invalid_argument("not a root of " + name() + ": " + to_string(alpha));
  return (2 / dot(alpha, alpha)) * alpha;
}

Rational RootSystem::pairing(const AmbientVector& lambda, const AmbientVector& alpha) const {
  const auto found = find_root(alpha);
  if (!found) throw std::invalid_argument("not a root of " + name() + ": " + to_string(alpha));
  const Rational p = pairing_positive(lambda, found->first);
  return found->second > 0 ? p : Rational(-p);
}

ComplexRational RootSystem::pairing(const SpectralParam& lambda, const AmbientVector& alpha) const {
  return {pairing(lambda.real_part, alpha), pairing(lambda.imag_part, alpha)};
}

Rational RootSystem::pairing_positive(const AmbientVector& lambda, std::size_t k) const {
  return dot(lambda, positive_coroots_[k]);
}

AmbientVector RootSystem::reflect_by(const AmbientVector& v, const AmbientVector& alpha) const {
  const Rational p = 2 * dot(v, alpha) / dot(alpha, alpha);
  return v - p * alpha;
}

AmbientVector RootSystem::reflect(const AmbientVector& v, int bourbaki_index) const {
  return reflect_by(v, simple_.at(bourbaki_index - 1));
}

std::optional<std::vector<Rational>> RootSystem::simple_coordinates(const AmbientVector& v) const {
  const std::size_t r = simple_.size();
  std::vector<Rational> b(r);
  for (std::size_t i = 0; i < r; ++i) b[i] = dot(simple_[i], v);
  std::vector<Rational> c(r, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) c[i] += gram_inverse_[i][j] * b[j];
  if (from_simple_coords(c) != v) return std::nullopt;
  return c;
}

ConeWitness RootSystem::cone_membership(const AmbientVector& v) const {
  ConeWitness w;
  auto c = simple_coordinates(v);
  if (!c) return w;
  w.in_span = true;
  w.member = std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; });
  w.coefficients = std::move(*c);
  return w;
}

bool RootSystem::dominance_leq(const AmbientVector& alpha, const AmbientVector& beta) const {
  return cone_membership(beta - alpha).member;
}

bool RootSystem::is_dominant(const AmbientVector& v) const {
  for (const auto& a : simple_)
    if (dot(v, a) < 0) return false;
  return true;
}

AmbientVector RootSystem::dominant_translate(const AmbientVector& v) const {
  AmbientVector x = v;
  for (;;) {
    bool changed = false;
    for (const auto& a : simple_) {
      if (dot(x, a) < 0) {
        x = reflect_by(x, a);
        changed = true;
      }
    }
    if (!changed) return x;
  }
}

std::vector<AmbientVector> RootSystem::weyl_orbit(const AmbientVector& lambda, std::size_t cap) const {
  std::set<AmbientVector> seen{lambda};
  std::deque<AmbientVector> queue{lambda};
  while (!queue.empty()) {
    const AmbientVector x = queue.front();
    queue.pop_front();
    for (const auto& a : simple_) {
      auto y = reflect_by(x, a);
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw CapacityError("Weyl orbit in " + name() + " exceeds the cap of " + std::to_string(cap) +
                              " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool RootSystem::in_conv_hull_of_orbit(const AmbientVector& mu, const AmbientVector& lambda) const {
  if (!is_dominant(mu) || !is_dominant(lambda))
    throw std::invalid_argument(
        "in_conv_hull_of_orbit expects dominant arguments; translate with dominant_translate/weyl_orbit first");
  return cone_membership(lambda - mu).member;
}

RootSystem RootSystem::dual() const {
  Family f = family_;
  if (f == Family::B) f = Family::C;
  else if (f == Family::C) f = Family::B;
  std::vector<AmbientVector> simple;
  for (const auto& a : simple_) simple.push_back((2 / dot(a, a)) * a);
  RootSystem d = from_simple_roots(f, std::move(simple));
  // Reorder positive coroots to match positive_roots().
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < positive_.size(); ++k) {
    const auto found = d.find_root(positive_coroots_[k]);
    order.push_back(found->first);
  }
  RootSystem out = d;
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.positive_[k] = d.positive_[order[k]];
    out.positive_coords_[k] = d.positive_coords_[order[k]];
    out.positive_coroots_[k] = d.positive_coroots_[order[k]];
    out.root_norm2_[k] = d.root_norm2_[order[k]];
  }
  out.root_index_.clear();
  for (std::size_t k = 0; k < out.positive_.size(); ++k) out.root_index_.emplace(out.positive_[k], k);
  out.highest_index_ = order.size();
  std::size_t best_height = 0;
  for (std::size_t k = 0; k < out.positive_coords_.size(); ++k) {
    const auto h = static_cast<std::size_t>(
        std::accumulate(out.positive_coords_[k].begin(), out.positive_coords_[k].end(), 0L));
    if (out.highest_index_ == order.size() || h > best_height) {
      best_height = h;
      out.highest_index_ = k;
    }
  }
  return out;
}

AmbientVector RootSystem::from_fundamental_coords(const std::vector<Rational>& coords) const {
  if (coords.size() != fundamental_.size()) throw std::invalid_argument("wrong number of coordinates");
  AmbientVector v(ambient_dim());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) v += coords[i] * fundamental_[i];
  return v;
}

AmbientVector RootSystem::from_simple_coords(const std::vector<Rational>& coords) const {
  if (coords.size() != simple_.size()) throw std::invalid_argument("wrong number of coordinates");
  AmbientVector v(ambient_dim());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) v += coords[i] * simple_[i];
  return v;
}

}  // namespace weylaw
