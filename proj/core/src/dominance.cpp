#include "weylaw/dominance.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "weylaw/density.hpp"
#include "weylaw/rng.hpp"

namespace weylaw {

namespace {

bool coords_leq(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] < a[i]) return false;
  return true;
}

void normalize(std::vector<std::size_t>& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

Json root_list(const RootSystem& rs, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto k : idx) out.push_back(to_json(rs.positive_roots()[k]));
  return out;
}

Json lambda_json(const RootSystem& rs, const AmbientVector& lambda) {
  Json out = Json::object();
  out["ambient"] = to_json(lambda);
  Json simple = Json::array();
  for (const auto& a : rs.simple_roots()) simple.push_back(to_string(dot(a, lambda)));
  out["simple_root_pairings"] = simple;
  return out;
}

void require_classical(const RootSystem& rs, const char* what) {
  if (!is_classical(rs.family()))
    throw std::invalid_argument(std::string(what) + " is defined for classical root systems only, not " + rs.name());
}

std::vector<LeviDescriptor> singleton_family(const RootSystem& rs) {
  std::vector<LeviDescriptor> out;
  const int n = static_cast<int>(rs.ambient_dim());
  for (int i = 1; i <= n; ++i) out.push_back(singleton_levi(rs, i));
  return out;
}

Report make_report(const RootSystem& rs, const std::string& kind) {
  Report rep;
  rep.kind = kind;
  rep.fields["family"] = rs.name();
  rep.fields["instances"] = 0;
  rep.fields["violations"] = Json::array();
  rep.fields["witness_samples"] = Json::array();
  return rep;
}

void add_violation(Report& rep, Json v) {
  rep.pass = false;
  rep.fields["violations"].push_back(std::move(v));
}

constexpr std::size_t kWitnessSamples = 5;

}  // namespace

Json InjectionWitness::to_json(const RootSystem& rs) const {
  Json out = Json::object();
  out["valid"] = valid;
  Json p = Json::array();
  for (const auto& [a, b] : pairs) p.push_back(Json::array({weylaw::to_json(rs.positive_roots()[a]), weylaw::to_json(rs.positive_roots()[b])}));
  out["pairs"] = p;
  if (!valid) {
    out["hall_violator"] = root_list(rs, hall_violator);
    out["hall_neighbourhood"] = root_list(rs, hall_neighbourhood);
  }
  return out;
}

InjectionWitness subset_dominance_leq(const RootSystem& rs, std::vector<std::size_t> s1, std::vector<std::size_t> s2) {
  normalize(s1);
  normalize(s2);
  const auto& coords = rs.positive_root_coords();
  for (auto k : s1)
    if (k >= coords.size()) throw std::invalid_argument("S1 contains a non-root index");
  for (auto k : s2)
    if (k >= coords.size()) throw std::invalid_argument("S2 contains a non-root index");

  std::vector<std::vector<std::size_t>> adj(s1.size());
  for (std::size_t a = 0; a < s1.size(); ++a)
    for (std::size_t b = 0; b < s2.size(); ++b)
      if (coords_leq(coords[s1[a]], coords[s2[b]])) adj[a].push_back(b);

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_left(s1.size(), none);
  std::vector<std::size_t> match_right(s2.size(), none);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t a) {
    for (auto b : adj[a]) {
      if (visited[b]) continue;
      visited[b] = 1;
      if (match_right[b] == none || augment(match_right[b])) {
        match_left[a] = b;
        match_right[b] = a;
        return true;
      }
    }
    return false;
  };
  std::size_t matched = 0;
  for (std::size_t a = 0; a < s1.size(); ++a) {
    visited.assign(s2.size(), 0);
    if (augment(a)) ++matched;
  }

  InjectionWitness w;
  w.valid = matched == s1.size();
  for (std::size_t a = 0; a < s1.size(); ++a)
    if (match_left[a] != none) w.pairs.emplace_back(s1[a], s2[match_left[a]]);
  if (!w.valid) {
    // König: alternating reachability from the first unmatched left vertex.
    std::size_t start = 0;
    while (match_left[start] != none) ++start;
    std::vector<char> seen_left(s1.size(), 0), seen_right(s2.size(), 0);
    std::deque<std::size_t> queue{start};
    seen_left[start] = 1;
    while (!queue.empty()) {
      const auto a = queue.front();
      queue.pop_front();
      for (auto b : adj[a]) {
        if (seen_right[b]) continue;
        seen_right[b] = 1;
        const auto next = match_right[b];
        if (next != none && !seen_left[next]) {
          seen_left[next] = 1;
          queue.push_back(next);
        }
      }
    }
    for (std::size_t a = 0; a < s1.size(); ++a)
      if (seen_left[a]) w.hall_violator.push_back(s1[a]);
    for (std::size_t b = 0; b < s2.size(); ++b)
      if (seen_right[b]) w.hall_neighbourhood.push_back(s2[b]);
  }
  return w;
}

LeviDescriptor singleton_levi(const RootSystem& rs, int i) {
  require_classical(rs, "M_i");
  return classical_levi(rs, {i});
}

std::vector<LeviDescriptor> minimal_levi_family(const RootSystem& rs) {
  require_classical(rs, "minimal_levi_family");
  auto all = classical_maximal_levis(rs);
  std::size_t min_size = all.front().complement.size();
  for (const auto& m : all) min_size = std::min(min_size, m.complement.size());
  std::vector<LeviDescriptor> out;
  // Singletons first, in index order, then the remaining minimizers.
  for (auto& m : singleton_family(rs))
    if (m.complement.size() == min_size) out.push_back(std::move(m));
  for (auto& m : all) {
    if (m.complement.size() != min_size) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& x) { return x.levi_roots == m.levi_roots; });
    if (!dup) out.push_back(std::move(m));
  }
  return out;
}

AmbientVector random_dominant(const RootSystem& rs, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed, index);
  std::vector<Rational> c;
  for (int j = 0; j < rs.rank(); ++j) {
    const auto u = static_cast<std::uint64_t>(2 * j);
    Rational q(rng.uniform_int(u, 0, 20), rng.uniform_int(u + 1, 1, 5));
    q.canonicalize();
    c.push_back(q);
  }
  return rs.from_fundamental_coords(c);
}

Report verify_minimal_family(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  require_classical(rs, "minimal-family verification");
  Report rep = make_report(rs, "minimal-family");
  rep.fields["trials"] = trials;
  rep.fields["seed"] = seed;
  const auto levis = classical_maximal_levis(rs);
  const auto minimal = minimal_levi_family(rs);
  rep.fields["num_maximal_levis"] = levis.size();
  rep.fields["minimal_family"] = Json::array();
  for (const auto& m : minimal) rep.fields["minimal_family"].push_back(m.label());

  std::size_t instances = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto lambda = random_dominant(rs, seed, trial);
    Rational best_min;
    std::string best_label;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      const auto d = delta_m(rs, minimal[k], lambda);
      if (k == 0 || d < best_min) {
        best_min = d;
        best_label = minimal[k].label();
      }
    }
    for (const auto& m : levis) {
      ++instances;
      const auto d = delta_m(rs, m, lambda);
      if (d < best_min) {
        Json v = Json::object();
        v["trial"] = trial;
        v["lambda"] = lambda_json(rs, lambda);
        v["M"] = m.label();
        v["delta_M"] = to_string(d);
        v["min_over_minimal_family"] = to_string(best_min);
        add_violation(rep, std::move(v));
      }
    }
    if (trial < kWitnessSamples) {
      Json s = Json::object();
      s["trial"] = trial;
      s["lambda"] = lambda_json(rs, lambda);
      s["minimizer"] = best_label;
      s["delta_min"] = to_string(best_min);
      rep.fields["witness_samples"].push_back(std::move(s));
    }
  }
  rep.fields["instances"] = instances;
  return rep;
}

std::string to_string(InjectionCase c) {
  switch (c) {
    case InjectionCase::Part1:
      return "part1";
    case InjectionCase::Part2:
      return "part2";
    case InjectionCase::Siegel:
      return "siegel";
    case InjectionCase::B3RatioIdentities:
      return "b3-ratio";
  }
  return {};
}

InjectionCase parse_injection_case(const std::string& text) {
  for (auto c : {InjectionCase::Part1, InjectionCase::Part2, InjectionCase::Siegel, InjectionCase::B3RatioIdentities})
    if (to_string(c) == text) return c;
  throw std::invalid_argument("unknown injection case '" + text + "' (part1, part2, siegel, b3-ratio)");
}

namespace {

Report b2_part1(const RootSystem& rs) {
  Report rep = make_report(rs, "injection-part1");
  const auto singles = singleton_family(rs);
  std::size_t checked = 0;
  for (const auto& m : classical_maximal_levis(rs)) {
    const bool excluded = m.siegel && (rs.family() == Family::B || rs.family() == Family::D);
    if (excluded) continue;
    ++checked;
    bool found = false;
    for (std::size_t i = 0; i < singles.size() && !found; ++i) {
      const auto w = subset_dominance_leq(rs, singles[i].complement, m.complement);
      if (!w.valid) continue;
      found = true;
      Json s = Json::object();
      s["M"] = m.label();
      s["i"] = i + 1;
      s["injection"] = w.to_json(rs);
      rep.fields["witness_samples"].push_back(std::move(s));
    }
    if (!found) {
      Json v = Json::object();
      v["M"] = m.label();
      v["reason"] = "no index i with Phi_i <= Phi_notM";
      add_violation(rep, std::move(v));
    }
  }
  rep.fields["structural_checks"] = checked;
  return rep;
}

Report b2_part2(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  Report rep = make_report(rs, "comparison-part2");
  rep.fields["trials"] = trials;
  rep.fields["seed"] = seed;
  const auto singles = singleton_family(rs);
  const bool is_b2 = rs.family() == Family::B && rs.rank() == 2;
  std::vector<LeviDescriptor> targets;
  if (!is_b2) {
    std::size_t min_size = static_cast<std::size_t>(-1);
    const auto all = classical_maximal_levis(rs);
    for (const auto& m : all) min_size = std::min(min_size, m.complement.size());
    for (const auto& m : all) {
      const bool d4_max = rs.family() == Family::D && rs.rank() == 4 && m.siegel && m.complement.size() == min_size;
      if (!d4_max) targets.push_back(m);
    }
  }
  rep.fields["levis_checked"] = targets.size();
  std::size_t instances = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto lambda = random_dominant(rs, seed, trial);
    std::vector<Rational> single_values;
    for (const auto& s : singles) single_values.push_back(delta_m(rs, s, lambda));
    const auto min_single = *std::min_element(single_values.begin(), single_values.end());
    for (const auto& m : targets) {
      ++instances;
      const auto d = delta_m(rs, m, lambda);
      if (d < min_single) {
        Json v = Json::object();
        v["trial"] = trial;
        v["lambda"] = lambda_json(rs, lambda);
        v["M"] = m.label();
        v["delta_M"] = to_string(d);
        v["min_delta_M_i"] = to_string(min_single);
        add_violation(rep, std::move(v));
      }
    }
    if (trial < kWitnessSamples) {
      Json s = Json::object();
      s["trial"] = trial;
      s["lambda"] = lambda_json(rs, lambda);
      s["min_delta_M_i"] = to_string(min_single);
      rep.fields["witness_samples"].push_back(std::move(s));
    }
  }
  rep.fields["instances"] = instances;
  return rep;
}

Report siegel_checks(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  Report rep = make_report(rs, "siegel");
  const int n = rs.rank();
  std::vector<LeviDescriptor> siegel;
  for (const auto& m : classical_maximal_levis(rs))
    if (m.siegel) siegel.push_back(m);

  if (rs.family() == Family::C && n >= 3) {
    rep.fields["statement"] = "C_n Siegel: Phi_n <= Phi_notM";
    const auto target = singleton_levi(rs, n);
    for (const auto& m : siegel) {
      const auto w = subset_dominance_leq(rs, target.complement, m.complement);
      Json s = Json::object();
      s["M"] = m.label();
      s["injection"] = w.to_json(rs);
      rep.fields["witness_samples"].push_back(s);
      if (!w.valid) add_violation(rep, {{"M", m.label()}, {"reason", "no injection Phi_n <= Phi_notM"}});
    }
    rep.fields["structural_checks"] = siegel.size();
    return rep;
  }

  int comparison_index = 0;
  if (rs.family() == Family::B && n >= 3) {
    comparison_index = n;
    rep.fields["statement"] = "B_n Siegel: Delta_M >= Delta_{M_n}";
  } else if (rs.family() == Family::D && n >= 5) {
    comparison_index = n - 1;
    rep.fields["statement"] = "D_n Siegel: Delta_M >= Delta_{M_{n-1}}";
  } else {
    rep.fields["statement"] = "not applicable";
    return rep;
  }
  const auto target = singleton_levi(rs, comparison_index);
  rep.fields["trials"] = trials;
  rep.fields["seed"] = seed;
  std::size_t instances = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto lambda = random_dominant(rs, seed, trial);
    const auto base = delta_m(rs, target, lambda);
    for (const auto& m : siegel) {
      ++instances;
      const auto d = delta_m(rs, m, lambda);
      if (d < base) {
        add_violation(rep, {{"trial", trial},
                            {"lambda", lambda_json(rs, lambda)},
                            {"M", m.label()},
                            {"delta_M", to_string(d)},
                            {"delta_target", to_string(base)}});
      }
    }
    if (trial < kWitnessSamples)
      rep.fields["witness_samples"].push_back({{"trial", trial}, {"lambda", lambda_json(rs, lambda)}, {"delta_target", to_string(base)}});
  }
  rep.fields["instances"] = instances;
  return rep;
}

Report b3_ratio_identities(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  if (!(rs.family() == Family::B && rs.rank() == 3))
    throw std::invalid_argument("the displayed B3 ratio identities apply to B3 only, not " + rs.name());
  Report rep = make_report(rs, "b3-ratio-identities");
  rep.fields["trials"] = trials;
  rep.fields["seed"] = seed;
  const auto m3 = singleton_levi(rs, 3);
  const auto first = classical_levi(rs, {1, 2, 3}, {-1, 1, 1});
  const auto second = classical_levi(rs, {1, 2, 3}, {1, -1, 1});
  std::size_t instances = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto lambda = random_dominant(rs, seed, trial);
    const Rational a1 = dot(rs.simple_root(1), lambda);
    const Rational a2 = dot(rs.simple_root(2), lambda);
    const Rational a3 = dot(rs.simple_root(3), lambda);
    const Rational numer = (1 + a1) * (1 + a1 + a2 + a3) * (1 + a2 + a3);
    const Rational expect_first = numer / ((1 + a1 + a2 + 2 * a3) * (1 + a2));
    const Rational expect_second = numer / ((1 + a1 + a2) * (1 + a2 + 2 * a3));
    const Rational base = delta_m(rs, m3, lambda);
    const Rational got_first = delta_m(rs, first, lambda) / base;
    const Rational got_second = delta_m(rs, second, lambda) / base;
    instances += 2;
    auto check = [&](const char* which, const Rational& got, const Rational& expect) {
      if (got != expect || got < 1)
        add_violation(rep, {{"trial", trial},
                            {"case", which},
                            {"lambda", lambda_json(rs, lambda)},
                            {"ratio", to_string(got)},
                            {"displayed", to_string(expect)}});
    };
    check("eps=(-1,1,1)", got_first, expect_first);
    check("eps=(1,-1,1)", got_second, expect_second);
    if (trial < kWitnessSamples)
      rep.fields["witness_samples"].push_back(
          {{"trial", trial}, {"ratio_first", to_string(got_first)}, {"ratio_second", to_string(got_second)}});
  }
  rep.fields["instances"] = instances;
  return rep;
}

}  // namespace

Report verify_injection_cases(const RootSystem& rs, InjectionCase which, std::size_t trials, std::uint64_t seed) {
  require_classical(rs, "injection-case verification");
  switch (which) {
    case InjectionCase::Part1:
      return b2_part1(rs);
    case InjectionCase::Part2:
      return b2_part2(rs, trials, seed);
    case InjectionCase::Siegel:
      return siegel_checks(rs, trials, seed);
    case InjectionCase::B3RatioIdentities:
      return b3_ratio_identities(rs, trials, seed);
  }
  throw std::invalid_argument("unknown case");
}

Report verify_dominance_suite(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  require_classical(rs, "dominance verification");
  std::vector<Report> parts;
  parts.push_back(verify_minimal_family(rs, trials, seed));
  parts.push_back(verify_injection_cases(rs, InjectionCase::Part1));
  parts.push_back(verify_injection_cases(rs, InjectionCase::Part2, trials, seed));
  parts.push_back(verify_injection_cases(rs, InjectionCase::Siegel, trials, seed));
  if (rs.family() == Family::B && rs.rank() == 3)
    parts.push_back(verify_injection_cases(rs, InjectionCase::B3RatioIdentities, std::min<std::size_t>(trials, 100), seed));

  Report rep = make_report(rs, "dominance-suite");
  rep.fields["trials"] = trials;
  rep.fields["seed"] = seed;
  std::size_t instances = 0;
  Json sub = Json::array();
  for (const auto& p : parts) {
    rep.pass = rep.pass && p.pass;
    instances += p.fields["instances"].get<std::size_t>();
    for (const auto& v : p.fields["violations"]) {
      Json tagged = v;
      tagged["check"] = p.kind;
      rep.fields["violations"].push_back(tagged);
    }
    for (const auto& w : p.fields["witness_samples"]) {
      Json tagged = Json::object();
      tagged["check"] = p.kind;
      for (const auto& [k, val] : w.items()) tagged[k] = val;
      rep.fields["witness_samples"].push_back(std::move(tagged));
    }
    Json summary = Json::object();
    summary["check"] = p.kind;
    summary["pass"] = p.pass;
    summary["instances"] = p.fields["instances"];
    summary["violations"] = p.fields["violations"].size();
    if (p.fields.contains("structural_checks")) summary["structural_checks"] = p.fields["structural_checks"];
    if (p.fields.contains("statement")) summary["statement"] = p.fields["statement"];
    sub.push_back(std::move(summary));
  }
  rep.fields["instances"] = instances;
  rep.fields["checks"] = sub;
  return rep;
}

Report explore_exceptional_minimum(const RootSystem& rs, std::size_t trials, std::uint64_t seed) {
  Report rep = make_report(rs, "explore-exceptional-minimum");
  rep.fields["informational"] = true;
  const auto& levis = cached_maximal_levis(rs);
  std::size_t min_size = static_cast<std::size_t>(-1);
  for (const auto& m : levis) min_size = std::min(min_size, m.complement.size());
  std::vector<const LeviDescriptor*> minimal;
  for (const auto& m : levis)
    if (m.complement.size() == min_size) minimal.push_back(&m);
  rep.fields["num_maximal_levis"] = levis.size();
  rep.fields["minimal_family_size"] = minimal.size();
  std::size_t counterexamples = 0;
  Json samples = Json::array();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto lambda = random_dominant(rs, seed, trial);
    Rational best = delta_m(rs, *minimal.front(), lambda);
    for (const auto* m : minimal) best = std::min(best, delta_m(rs, *m, lambda));
    for (const auto& m : levis) {
      const auto d = delta_m(rs, m, lambda);
      if (d < best) {
        ++counterexamples;
        if (samples.size() < kWitnessSamples)
          samples.push_back({{"trial", trial}, {"lambda", lambda_json(rs, lambda)}, {"M", m.label()}, {"delta_M", to_string(d)},
                             {"min_over_minimal_family", to_string(best)}});
      }
    }
  }
  rep.fields["instances"] = trials * levis.size();
  rep.fields["counterexamples"] = counterexamples;
  rep.fields["witness_samples"] = samples;
  rep.pass = true;
  return rep;
}

}  // namespace weylaw
