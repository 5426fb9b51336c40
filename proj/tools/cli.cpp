#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylaw/density.hpp"
#include "weylaw/dominance.hpp"
#include "weylaw/levi.hpp"
#include "weylaw/root_system.hpp"
#include "weylaw/spherical.hpp"

namespace weylaw::cli {
namespace {

struct Common {
  std::string family;
  int rank = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool json = false;
  bool csv = false;
  double tol = 1e-6;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto& s : split(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

AmbientVector parse_ambient(const std::string& text, std::size_t dim) {
  if (text.empty()) return AmbientVector(dim);
  std::vector<Rational> c;
  for (const auto& s : split(text)) {
    try {
      c.push_back(parse_rational(s));
    } catch (const std::exception&) {
      throw UsageError("not a rational: '" + s + "'");
    }
  }
  if (c.size() != dim) throw UsageError("expected " + std::to_string(dim) + " ambient coordinates, got " + std::to_string(c.size()));
  return AmbientVector(std::move(c));
}

RootSystem root_system(const Common& c) {
  if (c.family.empty() || c.rank == 0) throw UsageError("--family and --rank are required");
  return RootSystem::build(parse_family(c.family), c.rank);
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void collect_flags(const CLI::App* app, Json& flags) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "version") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      std::string joined;
      for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? "," : "") + res[i];
      flags[name] = opt->get_expected_max() == 0 ? Json(true) : Json(joined);
    } else {
      flags[name] = opt->get_expected_max() == 0 ? Json(false) : Json(opt->get_default_str());
    }
  }
}

Json manifest(const CLI::App& root, const std::vector<const CLI::App*>& chain, const Common& c) {
  Json flags = Json::object();
  collect_flags(&root, flags);
  std::string sub;
  for (const CLI::App* a : chain) {
    sub += (sub.empty() ? "" : " ") + a->get_name();
    collect_flags(a, flags);
  }
  Json m = Json::object();
  m["subcommand"] = sub;
  m["flags"] = flags;
  m["seed"] = c.seed;
  m["library_version"] = WEYLAW_VERSION;
  m["timestamp"] = timestamp();
  std::ostringstream digest;
  digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(sub + "\n" + dump_json(flags, -1));
  m["input_digest"] = digest.str();
  return m;
}

std::string text_table(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& [k, _] : rows.front().items()) cols.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& v = row[cols[i]];
      line.push_back(v.is_string() ? v.get<std::string>() : dump_json(v, -1));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) os << std::left << std::setw(static_cast<int>(width[i] + 2)) << line[i];
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return os.str();
}

void write(std::ostream& out, const Report& rep, const Json& man, const Common& c) {
  if (c.json) {
    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    doc["manifest"] = man;
    const Json body = rep.to_json();
    for (const auto& [k, v] : body.items()) doc[k] = v;
    out << dump_json(doc) << '\n';
  } else if (c.csv) {
    out << emit_report(rep, ReportFormat::Csv);
  } else {
    Report head = rep;
    const bool table = rep.fields.contains("rows") && rep.fields["rows"].is_array() && !rep.fields["rows"].empty();
    if (table) head.fields.erase("rows");
    out << emit_report(head, ReportFormat::Text);
    if (table) out << text_table(rep.fields["rows"]);
  }
}

// ---- subcommands -----------------------------------------------------------

Report cmd_info(const Common& c) {
  const auto rs = root_system(c);
  Report rep;
  rep.kind = "info";
  rep.fields["family"] = rs.name();
  rep.fields["root_system"] = to_json(rs);
  rep.fields["positive_roots"] = rs.num_positive_roots();
  rep.fields["weyl_group_order"] = rs.weyl_group_order();
  rep.fields["symmetric_space_dim"] = rs.symmetric_space_dim();
  rep.fields["d_min"] = d_min(rs);
  rep.fields["rho"] = to_json(rs.rho());
  rep.fields["highest_root"] = to_json(rs.highest_root());
  Json cartan = Json::array();
  for (const auto& row : rs.cartan_matrix()) cartan.push_back(row);
  rep.fields["cartan_matrix"] = cartan;
  return rep;
}

Report cmd_table1(const Common& c, bool all) {
  Report rep;
  rep.kind = "table1";
  if (!all) {
    const auto row = parabolic_table(root_system(c)).to_json();
    for (const auto& [k, v] : row.items()) rep.fields[k] = v;
    return rep;
  }
  Json rows = Json::array();
  const std::vector<std::pair<Family, int>> types{{Family::A, 3}, {Family::B, 3}, {Family::C, 3}, {Family::D, 4},
                                                  {Family::D, 5},                   {Family::E, 6}, {Family::E, 7}, {Family::E, 8},
                                                  {Family::F, 4},                   {Family::G, 2}};
  for (auto [f, r] : types) {
    auto row = parabolic_table(RootSystem::build(f, r)).to_json();
    row.erase("note");
    rows.push_back(row);
  }
  rep.fields["rows"] = rows;
  return rep;
}

Report cmd_dominance(const Common& c, std::size_t trials, const std::string& which) {
  const auto rs = root_system(c);
  if (!is_classical(rs.family())) return explore_exceptional_minimum(rs, trials, c.seed);
  if (which == "all") return verify_dominance_suite(rs, trials, c.seed);
  if (which == "minimal-family") return verify_minimal_family(rs, trials, c.seed);
  return verify_injection_cases(rs, parse_injection_case(which), trials, c.seed);
}

Report cmd_plancherel(const Common& c, const std::string& mu, bool scan, std::size_t samples, double radius, std::size_t refine) {
  const auto ctx = DensityContext::make(root_system(c));
  Report rep;
  rep.kind = "plancherel";
  rep.fields["family"] = ctx.rs.name();
  rep.fields["gamma_constants"] = ctx.gamma_constants;
  rep.fields["gamma_block"] = ctx.gamma_block;
  if (!mu.empty()) {
    const auto x = parse_doubles(mu);
    if (x.size() != static_cast<std::size_t>(ctx.rs.rank())) throw UsageError("--mu needs rank many orthonormal coordinates");
    rep.fields["mu"] = x;
    rep.fields["beta"] = plancherel_density_orthonormal(ctx, x);
  }
  if (scan) {
    const auto s = scan_ratio_bound(ctx, samples, c.seed, radius, c.threads, refine);
    rep.fields["ratio_scan"] = {{"samples", s.samples},     {"seed", c.seed},           {"radius", radius},
                                {"refine_starts", refine},  {"sampled_max", s.sampled_max}, {"max_ratio", s.max_ratio},
                                {"ceiling", s.ceiling},     {"argmax_mu", s.argmax_mu}, {"argmax_nu", s.argmax_nu},
                                {"argmax_t", s.argmax_t}};
    rep.pass = std::isfinite(s.max_ratio) && s.max_ratio <= s.ceiling;
  }
  return rep;
}

struct WeylLawArgs {
  std::string t = "10";
  std::string fit;
  std::string shape = "ball";
  double radius = 1.0;
  std::string center, extents;
  std::size_t samples = 200'000;
  std::string method = "auto";
  std::size_t grid_points = 0;
};

Report cmd_weyl_law(const Common& c, const WeylLawArgs& a) {
  const auto ctx = DensityContext::make(root_system(c));
  DomainSpec omega;
  omega.shape = parse_domain_shape(a.shape);
  omega.radius = a.radius;
  omega.center = parse_doubles(a.center);
  omega.extents = parse_doubles(a.extents);
  if (omega.shape == DomainShape::Box && omega.extents.empty()) omega.extents.assign(static_cast<std::size_t>(ctx.rs.rank()), 1.0);
  Sampler s;
  s.seed = c.seed;
  s.samples = a.samples;
  s.grid_points = a.grid_points;
  s.threads = c.threads;
  if (a.method == "mc") s.method = Sampler::Method::MonteCarlo;
  else if (a.method == "grid") s.method = Sampler::Method::Grid;
  else if (a.method != "auto") throw UsageError("--method must be auto, mc or grid");

  Report rep;
  rep.kind = "weyl-law";
  rep.fields["family"] = ctx.rs.name();
  rep.fields["shape"] = to_string(omega.shape);
  rep.fields["expected_exponent"] = ctx.rs.symmetric_space_dim();
  auto estimate_json = [](double t, const Estimate& e) {
    return Json{{"t", t}, {"estimate", e.value}, {"stderr", e.standard_error}, {"evaluations", e.evaluations}, {"method", e.method}};
  };
  if (!a.fit.empty()) {
    const auto fit = fit_growth_exponent(ctx, omega, parse_doubles(a.fit), s);
    rep.fields["slope"] = fit.slope;
    rep.fields["intercept"] = fit.intercept;
    rep.fields["residual"] = fit.residual;
    Json rows = Json::array();
    for (std::size_t i = 0; i < fit.t_values.size(); ++i) rows.push_back(estimate_json(fit.t_values[i], fit.estimates[i]));
    rep.fields["rows"] = rows;
    rep.pass = std::fabs(fit.slope - ctx.rs.symmetric_space_dim()) <= std::max(c.tol, 0.1);
    return rep;
  }
  const auto ts = parse_doubles(a.t);
  Json rows = Json::array();
  for (double t : ts) rows.push_back(estimate_json(t, weyl_law_main_term(ctx, omega, t, s)));
  if (rows.size() == 1) {
    for (const auto& [k, v] : rows.front().items()) rep.fields[k] = v;
  } else {
    rep.fields["rows"] = rows;
  }
  return rep;
}

Report cmd_dtilde(const Common& c, const std::string& re, const std::string& im, const std::string& path, int word_length, bool big) {
  const auto rs = root_system(c);
  SpectralParam lambda{parse_ambient(re, rs.ambient_dim()), parse_ambient(im, rs.ambient_dim())};
  DTildeOptions opts;
  opts.heuristic_word_length = word_length;
  if (path == "fast") opts.path = DTildePath::ClassicalFast;
  else if (path == "exhaustive") opts.path = DTildePath::Exhaustive;
  else if (path == "heuristic") opts.path = DTildePath::Heuristic;
  else if (path != "auto") throw UsageError("--path must be auto, fast, exhaustive or heuristic");
  const auto res = big ? big_d(rs, lambda, opts) : d_tilde(rs, lambda, opts);
  Report rep;
  rep.kind = big ? "big-d" : "dtilde";
  rep.fields["family"] = rs.name();
  rep.fields["lambda"] = {{"re", to_json(lambda.real_part)}, {"im", to_json(lambda.imag_part)}};
  const Json body = res.to_json(rs);
  for (const auto& [k, v] : body.items()) rep.fields[k] = v;
  return rep;
}

struct SphericalArgs {
  int n = 2;
  std::size_t points = 0;
  std::string method = "gauss";
  std::size_t samples = 200'000;
  double guard = 40.0;
  std::string nu = "1";
  std::string direction;
  std::string lambda_re, lambda_im;
  std::string X = "0.5,-0.5";
  std::string x_norms = "0.001,0.01,0.1,0.5,1";
  bool no_refinement = false;
};

QuadratureSpec quad_of(const Common& c, const SphericalArgs& a) {
  QuadratureSpec q;
  q.points = a.points;
  q.seed = c.seed;
  q.samples = a.samples;
  q.guard_constant = a.guard;
  if (a.method == "mc") q.method = QuadratureSpec::Method::MonteCarlo;
  else if (a.method != "gauss") throw UsageError("--method must be gauss or mc");
  return q;
}

std::vector<double> direction_of(const SphericalArgs& a) {
  auto dir = parse_doubles(a.direction);
  if (dir.empty()) dir = rho_sl(a.n);
  if (dir.size() != static_cast<std::size_t>(a.n)) throw UsageError("--direction needs n coordinates");
  return dir;
}

Report cmd_spherical_eval(const Common& c, const SphericalArgs& a) {
  ComplexVector lambda(static_cast<std::size_t>(a.n));
  if (!a.lambda_re.empty() || !a.lambda_im.empty()) {
    auto re = parse_doubles(a.lambda_re), im = parse_doubles(a.lambda_im);
    re.resize(lambda.size(), 0.0);
    im.resize(lambda.size(), 0.0);
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = {re[i], im[i]};
  } else {
    const auto nu = parse_doubles(a.nu);
    if (nu.size() != 1) throw UsageError("--nu takes one value for eval");
    const auto dir = direction_of(a);
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = {0.0, nu[0] * dir[i]};
  }
  const auto X = CartanCoordinate::from(parse_doubles(a.X));
  if (X.X.size() != lambda.size()) throw UsageError("--X needs n coordinates");
  const auto quad = quad_of(c, a);
  const auto phi = spherical_function(a.n, lambda, X, quad);
  Report rep;
  rep.kind = "spherical-eval";
  rep.fields["n"] = a.n;
  Json lre = Json::array(), lim = Json::array();
  for (const auto& z : lambda) {
    lre.push_back(z.real());
    lim.push_back(z.imag());
  }
  rep.fields["lambda_re"] = lre;
  rep.fields["lambda_im"] = lim;
  rep.fields["X"] = X.X;
  rep.fields["method"] = a.method;
  rep.fields["points"] = quad.method == QuadratureSpec::Method::Gauss ? resolved_points(lambda, X, quad) : 0;
  if (quad.method == QuadratureSpec::Method::MonteCarlo) {
    rep.fields["samples"] = quad.samples;
    rep.fields["seed"] = quad.seed;
  }
  rep.fields["phi_re"] = phi.real();
  rep.fields["phi_im"] = phi.imag();
  rep.fields["abs_phi"] = std::abs(phi);
  return rep;
}

Report cmd_spherical_decay(const Common& c, const SphericalArgs& a) {
  const auto dir = direction_of(a);
  double len = 0;
  for (double d : dir) len += d * d;
  len = std::sqrt(len);
  // ‖X‖ runs along ρ's direction.
  const auto rho = rho_sl(a.n);
  double rl = 0;
  for (double v : rho) rl += v * v;
  rl = std::sqrt(rl);
  std::vector<CartanCoordinate> xs;
  for (double s : parse_doubles(a.x_norms)) {
    std::vector<double> x(rho.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = s * rho[i] / rl;
    xs.push_back(CartanCoordinate::from(x));
  }
  DecayOptions opts;
  opts.direction = dir;
  opts.threads = c.threads;
  opts.refinement_check = !a.no_refinement;
  opts.tolerance = c.tol;
  auto rep = decay_report(a.n, parse_doubles(a.nu), xs, quad_of(c, a), opts);
  rep.fields["direction_norm"] = len;
  return rep;
}

struct RoundtripArgs {
  std::string profile = "gaussian";
  double width = 8.0;
  RoundtripOptions opts;
};

Report cmd_roundtrip(const Common& c, RoundtripArgs a) {
  a.opts.threads = c.threads;
  a.opts.tolerance = std::max(c.tol, 1e-12);
  const double w = a.width;
  std::function<double(double)> h;
  if (a.profile == "gaussian") h = [w](double v) { return std::exp(-v * v / w); };
  else if (a.profile == "odd") h = [w](double v) { return std::exp(-v * v / w) * (1.0 + 0.3 * v); };
  else if (a.profile == "zero") h = [](double) { return 0.0; };
  else throw UsageError("--profile must be gaussian, odd or zero");
  auto rep = rank1_inversion_roundtrip(h, a.opts);
  rep.fields["profile"] = a.profile;
  return rep;
}

void add_roundtrip_options(CLI::App* app, RoundtripArgs& a) {
  app->add_option("--profile", a.profile, "Test function ĥ: gaussian, odd or zero")->capture_default_str();
  app->add_option("--width", a.width, "Gaussian ĥ(ν) = exp(−ν²/width)")->capture_default_str();
  app->add_option("--nu-max", a.opts.nu_max, "Output grid |ν| bound")->capture_default_str();
  app->add_option("--nu-points", a.opts.nu_out_points, "Output grid size")->capture_default_str();
  app->add_option("--nu-cutoff", a.opts.nu_cutoff, "Spectral truncation")->capture_default_str();
  app->add_option("--nu-nodes", a.opts.nu_nodes, "Spectral Gauss nodes")->capture_default_str();
  app->add_option("--t-max", a.opts.t_max, "Radial truncation")->capture_default_str();
  app->add_option("--t-nodes", a.opts.t_nodes, "Radial Gauss nodes")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parabolic, Plancherel and spherical-function verification toolkit", "weylaw"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", WEYLAW_VERSION);

  Common c;
  app.add_option("--family", c.family, "Root system family A-G")->envname("WS_FAMILY");
  app.add_option("--rank", c.rank, "Rank")->envname("WS_RANK");
  app.add_option("--seed", c.seed, "Seed for every random draw")->envname("WS_SEED")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (output does not depend on it)")
      ->envname("WS_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", c.tol, "Tolerance")->envname("WS_TOL")->capture_default_str();
  auto* json_flag = app.add_flag("--json", c.json, "JSON output");
  app.add_flag("--csv", c.csv, "CSV output")->excludes(json_flag);

  auto* info = app.add_subcommand("info", "Root system data");

  bool table_all = false;
  auto* table1 = app.add_subcommand("table1", "Parabolic table row: d_min, R, defining root, abelian radical");
  table1->add_flag("--all", table_all, "All families at representative ranks");

  std::size_t trials = 500;
  std::string which = "all";
  auto* appb = app.add_subcommand("verify-appendix-b", "Minimal Levi family, injections and Siegel cases");
  appb->add_option("--trials", trials, "Random dominant λ per check")->envname("WS_TRIALS")->capture_default_str();
  appb->add_option("--case", which, "all, minimal-family, part1, part2, siegel or b3-ratio")->capture_default_str();

  std::size_t samples = 10'000;
  std::size_t exhaustive_limit = 9;
  auto* lemma = app.add_subcommand("verify-root-lemma", "Cone membership of Σ_{Φ⁺∖S} α − (d_min − |S|)β");
  lemma->add_option("--samples", samples, "Random (β, S) pairs when not exhaustive")->envname("WS_SAMPLES")->capture_default_str();
  lemma->add_option("--exhaustive-limit", exhaustive_limit, "Exhaustive when |Φ⁺| is at most this")->capture_default_str();

  auto* cone = app.add_subcommand("verify-cone-ids", "Cone identities with rational witnesses");

  std::string mu;
  bool scan = false;
  std::size_t scan_samples = 10'000, refine = 16;
  double scan_radius = 20.0;
  auto* planch = app.add_subcommand("plancherel", "Plancherel density and the lower-order ratio bound");
  planch->add_option("--mu", mu, "Orthonormal coordinates of Im μ");
  planch->add_flag("--ratio-scan", scan, "Scan β(μ+tν)/(β̃(t,μ)β̃(ν))");
  planch->add_option("--samples", scan_samples, "Ratio-scan samples")->envname("WS_SAMPLES")->capture_default_str();
  planch->add_option("--radius", scan_radius, "Ratio-scan ball radius")->capture_default_str();
  planch->add_option("--refine", refine, "Local refinement starts (0 = raw sample maximum)")->capture_default_str();

  WeylLawArgs wl;
  auto* weyl = app.add_subcommand("weyl-law", "Main term Λ_Ω(t) and its growth exponent");
  weyl->add_option("--t", wl.t, "Scale(s) t ≥ 1")->capture_default_str();
  weyl->add_option("--fit", wl.fit, "Fit log Λ against log t over these scales");
  weyl->add_option("--shape", wl.shape, "ball, half-ball or box")->capture_default_str();
  weyl->add_option("--radius", wl.radius, "Ball radius")->capture_default_str();
  weyl->add_option("--center", wl.center, "Domain center");
  weyl->add_option("--extents", wl.extents, "Box half-widths");
  weyl->add_option("--samples", wl.samples, "Monte Carlo samples")->envname("WS_SAMPLES")->capture_default_str();
  weyl->add_option("--method", wl.method, "auto, mc or grid")->capture_default_str();
  weyl->add_option("--grid-points", wl.grid_points, "Nodes per dimension (0 = scale with t)")->capture_default_str();

  std::string re, im, path = "auto";
  int word_length = 8;
  bool big = false;
  auto* dt = app.add_subcommand("dtilde", "D̃(λ) with its minimizing Levi");
  dt->add_option("--re", re, "Re λ, ambient rationals");
  dt->add_option("--im", im, "Im λ, ambient rationals");
  dt->add_option("--path", path, "auto, fast, exhaustive or heuristic")->capture_default_str();
  dt->add_option("--word-length", word_length, "Heuristic Weyl word bound")->capture_default_str();
  dt->add_flag("--big", big, "D(λ) instead of D̃(λ)");

  SphericalArgs sa;
  auto* sph = app.add_subcommand("spherical", "Spherical functions on SL(2) and SL(3)");
  sph->require_subcommand(1);
  sph->fallthrough();
  sph->add_option("--n", sa.n, "Matrix size 2 or 3")->capture_default_str();
  sph->add_option("--points", sa.points, "Nodes per angle (0 = automatic)")->capture_default_str();
  sph->add_option("--method", sa.method, "gauss or mc")->capture_default_str();
  sph->add_option("--samples", sa.samples, "Monte Carlo samples")->envname("WS_SAMPLES")->capture_default_str();
  sph->add_option("--guard", sa.guard, "Minimum nodes per unit of 1 + ‖Im λ‖‖X‖")->capture_default_str();
  sph->add_option("--direction", sa.direction, "λ = iν·direction (default ρ)");
  auto* eval = sph->add_subcommand("eval", "φ_λ(e^X)");
  eval->add_option("--nu", sa.nu, "ν")->capture_default_str();
  eval->add_option("--lambda-re", sa.lambda_re, "Re λ (overrides --nu)");
  eval->add_option("--lambda-im", sa.lambda_im, "Im λ (overrides --nu)");
  eval->add_option("--X", sa.X, "Trace-zero X")->capture_default_str();
  auto* decay = sph->add_subcommand("decay", "Decay ratios over a (ν, ‖X‖) grid");
  decay->add_option("--nu", sa.nu, "ν grid")->capture_default_str();
  decay->add_option("--X-norms", sa.x_norms, "‖X‖ grid along ρ")->capture_default_str();
  decay->add_flag("--no-refinement", sa.no_refinement, "Skip the doubled-resolution check");
  RoundtripArgs rt;
  auto* sph_rt = sph->add_subcommand("roundtrip", "Rank-one inversion roundtrip");
  add_roundtrip_options(sph_rt, rt);

  auto* roundtrip = app.add_subcommand("roundtrip", "Rank-one inversion roundtrip");
  add_roundtrip_options(roundtrip, rt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForVersion&) {
    out << WEYLAW_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  std::vector<const CLI::App*> chain;
  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    chain.push_back(a);
  }
  const CLI::App* leaf = chain.back();

  try {
    Report rep;
    if (leaf == info) rep = cmd_info(c);
    else if (leaf == table1) rep = cmd_table1(c, table_all);
    else if (leaf == appb) rep = cmd_dominance(c, trials, which);
    else if (leaf == lemma) rep = verify_root_lemma(root_system(c), samples, c.seed, exhaustive_limit);
    else if (leaf == cone) rep = check_cone_identities(root_system(c));
    else if (leaf == planch) rep = cmd_plancherel(c, mu, scan, scan_samples, scan_radius, refine);
    else if (leaf == weyl) rep = cmd_weyl_law(c, wl);
    else if (leaf == dt) rep = cmd_dtilde(c, re, im, path, word_length, big);
    else if (leaf == eval) rep = cmd_spherical_eval(c, sa);
    else if (leaf == decay) rep = cmd_spherical_decay(c, sa);
    else if (leaf == sph_rt || leaf == roundtrip) rep = cmd_roundtrip(c, rt);
    write(out, rep, manifest(app, chain, c), c);
    return rep.pass ? kSuccess : kVerificationFailure;
  } catch (const QuadratureError& e) {
    err << "weylaw: " << e.what() << " (required points: " << e.required_points << ")\n";
  } catch (const std::exception& e) {
    err << "weylaw: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace weylaw::cli
