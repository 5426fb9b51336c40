#include "weylaw/density.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "weylaw/dominance.hpp"
#include "weylaw/quadrature.hpp"
#include "weylaw/rng.hpp"

namespace weylaw {

namespace {

std::vector<double> ambient_doubles(const AmbientVector& v) { return v.to_doubles(); }

double dotd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
const T& cached(std::map<std::string, std::unique_ptr<T>>& cache, std::mutex& mutex, const std::string& key,
                const std::function<T()>& build) {
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<T>(build());
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(value));
  return *it->second;
}

struct DualData {
  RootSystem dual;
  std::vector<LeviDescriptor> minimal;
};

const DualData& cached_dual(const RootSystem& rs) {
  static std::map<std::string, std::unique_ptr<DualData>> cache;
  static std::mutex mutex;
  return cached<DualData>(cache, mutex, rs.name(), [&] {
    auto d = rs.dual();
    auto fam = minimal_levi_family(d);
    return DualData{std::move(d), std::move(fam)};
  });
}

/// |⟨λ, α∨⟩| for every positive root, exact when λ is real or purely imaginary.
struct Pairings {
  std::vector<double> abs;
  std::vector<Rational> exact;
  bool is_exact = false;
};

Pairings pairings_of(const RootSystem& rs, const SpectralParam& lambda) {
  Pairings p;
  const std::size_t n = rs.num_positive_roots();
  p.abs.resize(n);
  if (lambda.is_real() || lambda.is_purely_imaginary()) {
    const auto& v = lambda.is_real() ? lambda.real_part : lambda.imag_part;
    p.is_exact = true;
    p.exact.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.exact[k] = abs(rs.pairing_positive(v, k));
      p.abs[k] = p.exact[k].get_d();
    }
  } else {
    for (std::size_t k = 0; k < n; ++k)
      p.abs[k] = std::hypot(rs.pairing_positive(lambda.real_part, k).get_d(), rs.pairing_positive(lambda.imag_part, k).get_d());
  }
  return p;
}

/// Per-Levi score: ∏ (1+|·|) over the complement, or over its `top_k` largest factors.
struct Scored {
  std::size_t index = 0;
  double value = 0.0;
  std::optional<Rational> exact;
};

Scored score_levi(const LeviDescriptor& m, const Pairings& p, std::size_t top_k) {
  Scored s;
  if (p.is_exact) {
    std::vector<Rational> f;
    for (auto k : m.complement) f.push_back(1 + p.exact[k]);
    if (top_k && f.size() > top_k) {
      std::partial_sort(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(top_k), f.end(), std::greater<>());
      f.resize(top_k);
    }
    Rational prod = 1;
    for (const auto& x : f) prod *= x;
    s.value = prod.get_d();
    s.exact = prod;
  } else {
    std::vector<double> f;
    for (auto k : m.complement) f.push_back(1.0 + p.abs[k]);
    if (top_k && f.size() > top_k) {
      std::partial_sort(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(top_k), f.end(), std::greater<>());
      f.resize(top_k);
    }
    s.value = std::accumulate(f.begin(), f.end(), 1.0, std::multiplies<>());
  }
  return s;
}

bool better(const Scored& a, const Scored& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.value < b.value;
}

DTildeResult finish(const RootSystem& rs, const LeviDescriptor& m, const Pairings& p, const Scored& best,
                    std::string path) {
  (void)rs;
  DTildeResult r;
  r.minimizer = m;
  r.path = std::move(path);
  r.squared_exact = best.exact;
  r.value = std::sqrt(best.exact ? best.exact->get_d() : best.value);
  for (auto k : m.complement) {
    r.factors.push_back(p.abs[k]);
    if (p.is_exact) r.factors_exact.push_back(p.exact[k]);
  }
  return r;
}

DTildeResult minimize_over(const RootSystem& rs, const std::vector<LeviDescriptor>& levis, const Pairings& p,
                           std::size_t top_k, const std::string& path) {
  if (levis.empty()) throw std::logic_error("empty Levi family");
  Scored best = score_levi(levis.front(), p, top_k);
  for (std::size_t i = 1; i < levis.size(); ++i) {
    Scored s = score_levi(levis[i], p, top_k);
    s.index = i;
    if (better(s, best)) best = s;
  }
  return finish(rs, levis[best.index], p, best, path);
}

/// Dominant translate of v together with the word w = s_{i_k}⋯s_{i_1}, w·v dominant.
AmbientVector dominant_with_word(const RootSystem& rs, AmbientVector v, std::vector<int>& word) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= rs.rank(); ++i) {
      if (dot(v, rs.simple_root(i)) < 0) {
        v = rs.reflect(v, i);
        word.push_back(i);
        changed = true;
        break;
      }
    }
  }
  return v;
}

AmbientVector classical_line(const RootSystem& rs, const LeviDescriptor& m) {
  const auto n = rs.ambient_dim();
  AmbientVector line(n);
  if (rs.family() == Family::A) {
    const long in = static_cast<long>(m.index_set.size());
    for (std::size_t i = 0; i < n; ++i) line[i] = -in;
    for (int i : m.index_set) line[static_cast<std::size_t>(i - 1)] = static_cast<long>(n) - in;
  } else {
    for (std::size_t k = 0; k < m.index_set.size(); ++k) line[static_cast<std::size_t>(m.index_set[k] - 1)] = m.signs[k];
  }
  return line;
}

DTildeResult classical_fast(const RootSystem& rs, const SpectralParam& lambda) {
  if (!is_classical(rs.family())) throw std::invalid_argument("the classical fast path needs a classical root system");
  if (!(lambda.is_real() || lambda.is_purely_imaginary()))
    throw std::invalid_argument("the classical fast path needs a real or purely imaginary parameter");
  const auto& v = lambda.is_real() ? lambda.real_part : lambda.imag_part;
  std::vector<int> word;
  const auto dominant = dominant_with_word(rs, v, word);
  const auto& dd = cached_dual(rs);
  const auto dominant_p = pairings_of(rs, SpectralParam::real(dominant));
  auto r = minimize_over(rs, dd.minimal, dominant_p, 0, "classical-fast");
  // Transport the minimizer back to the original parameter: M = w⁻¹·M'.
  auto line = classical_line(rs, r.minimizer);
  for (auto it = word.rbegin(); it != word.rend(); ++it) line = rs.reflect(line, *it);
  std::vector<int> index_set, signs;
  for (std::size_t i = 0; i < line.dim(); ++i) {
    if (rs.family() == Family::A) {
      if (line[i] > 0) index_set.push_back(static_cast<int>(i + 1));
    } else if (line[i] != 0) {
      index_set.push_back(static_cast<int>(i + 1));
      signs.push_back(line[i] > 0 ? 1 : -1);
    }
  }
  const auto m = classical_levi(rs, index_set, signs);
  const auto p = pairings_of(rs, lambda);
  Scored s = score_levi(m, p, 0);
  return finish(rs, m, p, s, "classical-fast");
}

DTildeResult heuristic(const RootSystem& rs, const SpectralParam& lambda, int max_len, std::size_t top_k) {
  const auto n = rs.num_positive_roots();
  std::vector<std::vector<double>> coroots;
  for (const auto& c : rs.positive_coroots()) coroots.push_back(ambient_doubles(c));
  std::vector<std::vector<double>> simple;
  for (const auto& a : rs.simple_roots()) simple.push_back(ambient_doubles(a));
  std::vector<LeviDescriptor> levis;
  for (int k = 1; k <= rs.rank(); ++k) levis.push_back(standard_maximal_levi(rs, k));

  struct Node {
    std::vector<double> re, im;
    std::vector<int> word;
  };
  auto key_of = [](const Node& x) {
    std::vector<long long> key;
    for (double c : x.re) key.push_back(std::llround(c * 1e9));
    for (double c : x.im) key.push_back(std::llround(c * 1e9));
    return key;
  };
  auto reflect = [&](const std::vector<double>& v, int i) {
    const auto& a = simple[static_cast<std::size_t>(i - 1)];
    const double c = 2.0 * dotd(v, a) / dotd(a, a);
    auto out = v;
    for (std::size_t j = 0; j < v.size(); ++j) out[j] -= c * a[j];
    return out;
  };

  std::vector<Node> frontier{{ambient_doubles(lambda.real_part), ambient_doubles(lambda.imag_part), {}}};
  std::map<std::vector<long long>, bool> seen{{key_of(frontier.front()), true}};
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_levi = 0;
  Node best_node = frontier.front();
  for (int depth = 0;; ++depth) {
    for (const auto& node : frontier) {
      Pairings p;
      p.abs.resize(n);
      for (std::size_t k = 0; k < n; ++k) p.abs[k] = std::hypot(dotd(node.re, coroots[k]), dotd(node.im, coroots[k]));
      for (std::size_t m = 0; m < levis.size(); ++m) {
        const double v = score_levi(levis[m], p, top_k).value;
        if (v < best) {
          best = v;
          best_levi = m;
          best_node = node;
        }
      }
    }
    if (depth == max_len) break;
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (int i = 1; i <= rs.rank(); ++i) {
        Node child{reflect(node.re, i), reflect(node.im, i), node.word};
        child.word.push_back(i);
        if (seen.emplace(key_of(child), true).second) next.push_back(std::move(child));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  DTildeResult r;
  r.minimizer = levis[best_levi];
  r.path = "heuristic";
  r.upper_bound_only = true;
  r.value = std::sqrt(best);
  r.weyl_word = best_node.word;
  for (auto k : r.minimizer.complement) r.factors.push_back(std::hypot(dotd(best_node.re, coroots[k]), dotd(best_node.im, coroots[k])));
  return r;
}

bool exact_cap_exceeded(const RootSystem& rs) { return rs.family() == Family::E && rs.rank() >= 7; }

DTildeResult dispatch(const RootSystem& rs, const SpectralParam& lambda, const DTildeOptions& opts, std::size_t top_k) {
  DTildePath path = opts.path;
  if (path == DTildePath::Auto) {
    if (is_classical(rs.family()) && top_k == 0 && (lambda.is_real() || lambda.is_purely_imaginary()))
      path = DTildePath::ClassicalFast;
    else
      path = DTildePath::Exhaustive;
  }
  switch (path) {
    case DTildePath::ClassicalFast:
      return classical_fast(rs, lambda);
    case DTildePath::Heuristic:
      return heuristic(rs, lambda, opts.heuristic_word_length, top_k);
    case DTildePath::Exhaustive:
    case DTildePath::Auto:
      break;
  }
  if (exact_cap_exceeded(rs))
    throw CapacityError("exact enumeration of maximal semistandard Levis for " + rs.name() +
                        " exceeds the rank-6 cap; use the heuristic path (upper bound only)");
  return minimize_over(rs, cached_maximal_levis(rs), pairings_of(rs, lambda), top_k, "exhaustive");
}

}  // namespace

double gamma_constant(long k) {
  if (k <= 0) throw std::invalid_argument("gamma constant needs a positive coheight");
  const double x = static_cast<double>(k);
  return std::exp(2.0 * (std::lgamma(x / 2.0) - std::lgamma((x + 1.0) / 2.0)));
}

DensityContext DensityContext::make(const RootSystem& rs, double volume_factor) {
  if (!(volume_factor >= 0.0) || !std::isfinite(volume_factor)) throw std::invalid_argument("volume factor must be finite and nonnegative");
  DensityContext ctx{rs, volume_factor, {}, 1.0, {}, {}};
  ctx.volume_factor = volume_factor;
  for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
    const Rational h = rs.pairing_positive(rs.rho(), k);
    ctx.gamma_constants.push_back(gamma_constant(h.get_num().get_si()));
    ctx.gamma_block *= ctx.gamma_constants.back();
  }
  for (const auto& a : rs.simple_roots()) {
    auto v = ambient_doubles(a);
    for (const auto& u : ctx.basis) {
      const double c = dotd(v, u);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * u[j];
    }
    const double len = std::sqrt(dotd(v, v));
    for (auto& x : v) x /= len;
    ctx.basis.push_back(std::move(v));
  }
  for (const auto& c : rs.positive_coroots()) {
    const auto cd = ambient_doubles(c);
    std::vector<double> row;
    for (const auto& u : ctx.basis) row.push_back(dotd(u, cd));
    ctx.coroot_coords.push_back(std::move(row));
  }
  return ctx;
}

double beta0(double t) {
  const double a = std::fabs(t);
  return 0.5 * a * std::tanh(std::numbers::pi * a / 2.0);
}

double plancherel_density(const DensityContext& ctx, const SpectralParam& mu) {
  if (!mu.is_purely_imaginary()) throw std::invalid_argument("the Plancherel density is evaluated on purely imaginary parameters");
  double prod = ctx.gamma_block;
  for (std::size_t k = 0; k < ctx.rs.num_positive_roots(); ++k) prod *= beta0(ctx.rs.pairing_positive(mu.imag_part, k).get_d());
  return prod;
}

double plancherel_density_orthonormal(const DensityContext& ctx, const std::vector<double>& x) {
  double prod = ctx.gamma_block;
  for (const auto& row : ctx.coroot_coords) prod *= beta0(dotd(row, x));
  return prod;
}

double beta_tilde(const RootSystem& rs, double t, const SpectralParam& mu) {
  if (!(t >= 1.0)) throw std::invalid_argument("beta_tilde needs t >= 1");
  const auto p = pairings_of(rs, mu);
  double prod = 1.0;
  for (double a : p.abs) prod *= t + a;
  return prod;
}

Rational delta_over(const RootSystem& rs, const std::vector<std::size_t>& roots, const AmbientVector& lambda) {
  Rational prod = 1;
  for (auto k : roots) prod *= 1 + abs(dot(rs.positive_roots().at(k), lambda));
  return prod;
}

Rational delta_m(const RootSystem& rs, const LeviDescriptor& m, const AmbientVector& lambda) {
  return delta_over(rs, m.complement, lambda);
}

double norm(const SpectralParam& lambda) {
  return std::sqrt(Rational(dot(lambda.real_part, lambda.real_part) + dot(lambda.imag_part, lambda.imag_part)).get_d());
}

const std::vector<LeviDescriptor>& cached_maximal_levis(const RootSystem& rs) {
  static std::map<std::string, std::unique_ptr<std::vector<LeviDescriptor>>> cache;
  static std::mutex mutex;
  return cached<std::vector<LeviDescriptor>>(cache, mutex, rs.name(), [&] {
    if (is_classical(rs.family()) && rs.rank() > 6) return classical_maximal_levis(rs);
    return hyperplane_maximal_levis(rs);
  });
}

Json DTildeResult::to_json(const RootSystem& rs) const {
  Json out = Json::object();
  out["value"] = value;
  if (squared_exact) out["squared_exact"] = to_string(*squared_exact);
  out["path"] = path;
  out["upper_bound_only"] = upper_bound_only;
  out["minimizer"] = minimizer.to_json(rs);
  if (!weyl_word.empty()) out["weyl_word"] = weyl_word;
  out["factors"] = factors;
  if (!factors_exact.empty()) out["factors_exact"] = weylaw::to_json(factors_exact);
  return out;
}

DTildeResult d_tilde(const RootSystem& rs, const SpectralParam& lambda, const DTildeOptions& opts) {
  return dispatch(rs, lambda, opts, 0);
}

DTildeResult big_d(const RootSystem& rs, const SpectralParam& lambda, const DTildeOptions& opts) {
  if (is_classical(rs.family())) return d_tilde(rs, lambda, opts);
  auto r = dispatch(rs, lambda, opts, static_cast<std::size_t>(2 * rs.rank()));
  r.value /= std::log(2.0 + norm(lambda));
  r.squared_exact.reset();
  r.path += "+log";
  return r;
}

std::string to_string(DomainShape s) {
  switch (s) {
    case DomainShape::Box:
      return "box";
    case DomainShape::Ball:
      return "ball";
    case DomainShape::HalfBall:
      return "half-ball";
  }
  return {};
}

DomainShape parse_domain_shape(const std::string& text) {
  for (auto s : {DomainShape::Box, DomainShape::Ball, DomainShape::HalfBall})
    if (to_string(s) == text) return s;
  throw std::invalid_argument("unsupported domain shape '" + text + "' (box, ball, half-ball)");
}

namespace {

void validate_domain(const DomainSpec& d, std::size_t r) {
  if (!d.center.empty() && d.center.size() != r) throw std::invalid_argument("domain center must have one coordinate per rank");
  if (d.shape == DomainShape::Box) {
    if (d.extents.size() != r) throw std::invalid_argument("box domain needs one half-width per rank");
    for (double e : d.extents)
      if (!(e > 0.0)) throw std::invalid_argument("box half-widths must be positive");
  } else if (!(d.radius > 0.0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
}

double domain_volume(const DomainSpec& d, std::size_t r) {
  if (d.shape == DomainShape::Box) {
    double v = 1.0;
    for (double e : d.extents) v *= 2.0 * e;
    return v;
  }
  const double rd = static_cast<double>(r);
  const double ball = std::pow(std::numbers::pi, rd / 2.0) / std::tgamma(rd / 2.0 + 1.0) * std::pow(d.radius, rd);
  return d.shape == DomainShape::HalfBall ? ball / 2.0 : ball;
}

constexpr std::size_t kBlock = 4096;

/// Uniform point of Ω for sample index i; consumes counters [i·stride, (i+1)·stride).
void sample_domain(const CounterRng& rng, std::size_t i, const DomainSpec& d, std::size_t r, std::vector<double>& x) {
  const std::uint64_t stride = 2 * (r + 2);
  const std::uint64_t base = static_cast<std::uint64_t>(i) * stride;
  x.assign(r, 0.0);
  if (d.shape == DomainShape::Box) {
    for (std::size_t j = 0; j < r; ++j) x[j] = (2.0 * rng.uniform(base + j) - 1.0) * d.extents[j];
  } else {
    double len2 = 0.0;
    for (std::size_t j = 0; j < r; j += 2) {
      const auto [g1, g2] = rng.normal_pair(base + 2 * (j / 2));
      x[j] = g1;
      if (j + 1 < r) x[j + 1] = g2;
    }
    for (double c : x) len2 += c * c;
    const double rad = d.radius * std::pow(rng.uniform(base + stride - 1), 1.0 / static_cast<double>(r));
    const double scale = len2 > 0.0 ? rad / std::sqrt(len2) : 0.0;
    for (auto& c : x) c *= scale;
    if (d.shape == DomainShape::HalfBall) x[0] = std::fabs(x[0]);
  }
  if (!d.center.empty())
    for (std::size_t j = 0; j < r; ++j) x[j] += d.center[j];
}

Estimate monte_carlo(const DensityContext& ctx, const DomainSpec& d, double t, const Sampler& s) {
  const std::size_t r = static_cast<std::size_t>(ctx.rs.rank());
  if (s.samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  const CounterRng rng(s.seed, 0x57e1);
  const std::size_t blocks = (s.samples + kBlock - 1) / kBlock;
  std::vector<double> sums(blocks), sq(blocks);
  detail::for_each_block(blocks, s.threads, [&](std::size_t b) {
    std::vector<double> x, tx(r);
    double acc = 0.0, acc2 = 0.0;
    const std::size_t end = std::min(s.samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      sample_domain(rng, i, d, r, x);
      for (std::size_t j = 0; j < r; ++j) tx[j] = t * x[j];
      const double f = plancherel_density_orthonormal(ctx, tx);
      acc += f;
      acc2 += f * f;
    }
    sums[b] = acc;
    sq[b] = acc2;
  });
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += sums[b];
    sum2 += sq[b];
  }
  const double n = static_cast<double>(s.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
  const double scale = ctx.volume_factor / static_cast<double>(ctx.rs.weyl_group_order()) * std::pow(t, static_cast<double>(r)) *
                       domain_volume(d, r);
  return {scale * mean, scale * std::sqrt(var / n), s.samples, "monte-carlo"};
}

Estimate grid(const DensityContext& ctx, const DomainSpec& d, double t, const Sampler& s) {
  const std::size_t r = static_cast<std::size_t>(ctx.rs.rank());
  std::vector<double> c = d.center.empty() ? std::vector<double>(r, 0.0) : d.center;
  std::size_t m = s.grid_points;
  if (m == 0) {
    // β varies on the scale 1/(t·|α∨|) across each root hyperplane.
    double reach = d.shape == DomainShape::Box ? *std::max_element(d.extents.begin(), d.extents.end()) : d.radius;
    reach += std::sqrt(dotd(c, c));
    double kappa = 0.0;
    for (const auto& row : ctx.coroot_coords) kappa = std::max(kappa, std::sqrt(dotd(row, row)));
    m = static_cast<std::size_t>(std::clamp(std::ceil(12.0 * t * reach * kappa), 64.0, 4096.0));
  }
  if (m < 2) throw std::invalid_argument("grid needs at least two points per dimension");
  if (std::pow(static_cast<double>(m), static_cast<double>(r)) > 5e7) throw CapacityError("grid exceeds 5e7 nodes; use Monte Carlo");
  double integral = 0.0;
  std::size_t evals = 0;
  auto f = [&](std::vector<double> x) {
    for (auto& v : x) v *= t;
    ++evals;
    return plancherel_density_orthonormal(ctx, x);
  };

  if (d.shape == DomainShape::Box || r == 1) {
    std::vector<QuadratureRule> rules;
    for (std::size_t j = 0; j < r; ++j) {
      double lo, hi;
      if (d.shape == DomainShape::Box) {
        lo = c[j] - d.extents[j];
        hi = c[j] + d.extents[j];
      } else {
        lo = d.shape == DomainShape::HalfBall ? c[j] : c[j] - d.radius;
        hi = c[j] + d.radius;
      }
      rules.push_back(gauss_legendre(m, lo, hi));
    }
    std::vector<std::size_t> idx(r, 0);
    std::vector<double> x(r);
    for (bool done = false; !done;) {
      double w = 1.0;
      for (std::size_t j = 0; j < r; ++j) {
        x[j] = rules[j].nodes[idx[j]];
        w *= rules[j].weights[idx[j]];
      }
      integral += w * f(x);
      done = true;
      for (std::size_t j = 0; j < r; ++j) {
        if (++idx[j] < m) {
          done = false;
          break;
        }
        idx[j] = 0;
      }
    }
  } else if (r == 2) {
    const auto radial = gauss_legendre(m, 0.0, d.radius);
    const auto angular = d.shape == DomainShape::HalfBall ? gauss_legendre(m, -std::numbers::pi / 2, std::numbers::pi / 2)
                                                          : periodic_trapezoid(m, -std::numbers::pi, 2 * std::numbers::pi);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const double rho = radial.nodes[a], th = angular.nodes[b];
        integral += radial.weights[a] * angular.weights[b] * rho * f({c[0] + rho * std::cos(th), c[1] + rho * std::sin(th)});
      }
  } else {
    throw std::invalid_argument("grid integration over a ball is available for rank <= 2; use Monte Carlo");
  }
  const double scale = ctx.volume_factor / static_cast<double>(ctx.rs.weyl_group_order()) * std::pow(t, static_cast<double>(r));
  return {scale * integral, 0.0, evals, "grid"};
}

}  // namespace

Estimate weyl_law_main_term(const DensityContext& ctx, const DomainSpec& omega, double t, const Sampler& sampler) {
  if (!(t >= 1.0)) throw std::invalid_argument("weyl_law_main_term needs t >= 1");
  const std::size_t r = static_cast<std::size_t>(ctx.rs.rank());
  validate_domain(omega, r);
  auto method = sampler.method;
  if (method == Sampler::Method::Auto) method = r <= 2 ? Sampler::Method::Grid : Sampler::Method::MonteCarlo;
  return method == Sampler::Method::Grid ? grid(ctx, omega, t, sampler) : monte_carlo(ctx, omega, t, sampler);
}

GrowthFit fit_growth_exponent(const DensityContext& ctx, const DomainSpec& omega, const std::vector<double>& t_grid,
                              const Sampler& sampler) {
  if (t_grid.size() < 3) throw std::invalid_argument("growth fit needs at least three t values");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 1.0)) throw std::invalid_argument("growth fit needs t >= 1");
    if (i && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("growth fit needs strictly increasing t values");
  }
  GrowthFit fit;
  fit.t_values = t_grid;
  std::vector<double> xs, ys;
  for (double t : t_grid) {
    auto e = weyl_law_main_term(ctx, omega, t, sampler);
    if (!(e.value > 0.0)) throw std::domain_error("main term vanished; cannot fit a log-log slope");
    xs.push_back(std::log(t));
    ys.push_back(std::log(e.value));
    fit.estimates.push_back(e);
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

double d_tilde_numeric(const RootSystem& rs, const std::vector<double>& real_part, const std::vector<double>& imag_part) {
  const auto n = rs.num_positive_roots();
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto c = ambient_doubles(rs.positive_coroots()[k]);
    a[k] = std::hypot(real_part.empty() ? 0.0 : dotd(real_part, c), imag_part.empty() ? 0.0 : dotd(imag_part, c));
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : cached_maximal_levis(rs)) {
    double prod = 1.0;
    for (auto k : m.complement) prod *= 1.0 + a[k];
    best = std::min(best, prod);
  }
  return std::sqrt(best);
}

namespace {

struct RatioPoint {
  double ratio = -1.0;
  std::size_t index = 0;
  std::vector<double> mu, nu;
  double t = 0.0;
};

double ratio_at(const DensityContext& ctx, const std::vector<double>& mu, const std::vector<double>& nu, double t) {
  double ratio = ctx.gamma_block;
  for (const auto& c : ctx.coroot_coords) {
    const double pm = dotd(c, mu), pn = dotd(c, nu);
    ratio *= beta0(pm + t * pn) / ((t + std::fabs(pm)) * (1.0 + std::fabs(pn)));
  }
  return ratio;
}

bool ratio_first(const RatioPoint& a, const RatioPoint& b) {
  return a.ratio > b.ratio || (a.ratio == b.ratio && a.index < b.index);
}

// Compass search over (μ, ν, log t), projected back into the sampling domain.
void compass_refine(const DensityContext& ctx, double radius, RatioPoint& p) {
  const std::size_t r = p.mu.size();
  auto project = [&](std::vector<double>& v) {
    const double n = std::sqrt(dotd(v, v));
    if (n > radius)
      for (auto& c : v) c *= radius / n;
  };
  double step = radius / 8.0;
  for (int iter = 0; iter < 4000 && step > 1e-9 * radius; ++iter) {
    bool moved = false;
    for (std::size_t k = 0; k < 2 * r + 1 && !moved; ++k) {
      for (double sgn : {1.0, -1.0}) {
        RatioPoint q = p;
        if (k < r) {
          q.mu[k] += sgn * step;
          project(q.mu);
        } else if (k < 2 * r) {
          q.nu[k - r] += sgn * step;
          project(q.nu);
        } else {
          q.t = std::clamp(q.t * std::exp(sgn * step / radius), 1.0, 100.0);
        }
        q.ratio = ratio_at(ctx, q.mu, q.nu, q.t);
        if (q.ratio > p.ratio) {
          p = std::move(q);
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
}

}  // namespace

RatioBoundScan scan_ratio_bound(const DensityContext& ctx, std::size_t samples, std::uint64_t seed, double radius,
                                unsigned threads, std::size_t refine_starts) {
  const std::size_t r = static_cast<std::size_t>(ctx.rs.rank());
  const std::size_t n_roots = ctx.coroot_coords.size();
  RatioBoundScan out;
  out.samples = samples;
  out.ceiling = ctx.gamma_block / std::pow(2.0, static_cast<double>(n_roots));
  if (samples == 0) return out;
  const CounterRng rng(seed, 0x7a710);
  DomainSpec ball{DomainShape::Ball, {}, radius, {}};
  const std::size_t keep = std::max<std::size_t>(1, refine_starts);
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::vector<RatioPoint>> best(blocks);
  const std::uint64_t stride = 2 * (r + 2);
  detail::for_each_block(blocks, threads, [&](std::size_t b) {
    auto& top = best[b];
    const std::size_t end = std::min(samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      // Three draws per sample: μ, ν, then t.
      RatioPoint p;
      p.index = i;
      sample_domain(rng, 3 * i, ball, r, p.mu);
      sample_domain(rng, 3 * i + 1, ball, r, p.nu);
      p.t = std::exp(rng.uniform((3 * i + 2) * stride) * std::log(100.0));
      p.ratio = ratio_at(ctx, p.mu, p.nu, p.t);
      if (top.size() < keep || ratio_first(p, top.back())) {
        top.insert(std::upper_bound(top.begin(), top.end(), p, ratio_first), std::move(p));
        if (top.size() > keep) top.pop_back();
      }
    }
  });
  std::vector<RatioPoint> all;
  for (auto& b : best) std::move(b.begin(), b.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), ratio_first);
  all.resize(std::min(all.size(), keep));
  out.sampled_max = all.front().ratio;
  if (refine_starts > 0)
    for (auto& p : all) compass_refine(ctx, radius, p);
  const auto& top = *std::min_element(all.begin(), all.end(), ratio_first);
  out.max_ratio = top.ratio;
  out.argmax_mu = top.mu;
  out.argmax_nu = top.nu;
  out.argmax_t = top.t;
  return out;
}

}  // namespace weylaw
