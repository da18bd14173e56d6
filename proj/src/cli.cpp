#include "ahm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ahm/energy.hpp"
#include "ahm/errors.hpp"
#include "ahm/format.hpp"
#include "ahm/map_model.hpp"
#include "ahm/radial.hpp"
#include "ahm/verify.hpp"

namespace ahm::cli {
namespace {

constexpr double kPi = std::numbers::pi;

// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_field(v); }
  } visitor;
  return std::visit(visitor, c);
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

Cell maybe(const std::optional<double>& v) { return v ? Cell{*v} : Cell{std::nan("")}; }

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Accepts 2, -0.5, 1e-3, 3i, -i, 1+2i, 0.5-1e-2i.
Complex parse_complex(std::string_view raw) {
  std::string s = strip(raw);
  if (s.empty()) throw ConfigError("empty complex entry");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im.front() == '+') im.erase(0, 1);
  return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
}

MobiusElement parse_mobius(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("--mobius expects four entries a,b,c,d");
  try {
    return MobiusElement::normalized(parse_complex(parts[0]), parse_complex(parts[1]),
                                     parse_complex(parts[2]), parse_complex(parts[3]));
  } catch (const DegenerateMatrixError& e) {
    throw ConfigError(e.what());
  }
}

RadialProfile read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read profile file '" + path + "'");
  std::vector<double> r, f;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    double a = 0.0, b = 0.0;
    if (!(ls >> a >> b)) throw ConfigError("malformed profile line: '" + line + "'");
    r.push_back(a);
    f.push_back(b);
  }
  if (r.size() < 2) throw ConfigError("profile file has fewer than two samples");
  const int cells = static_cast<int>(r.size()) - 1;
  for (int i = 0; i <= cells; ++i)
    if (std::abs(r[i] - i * kPi / cells) > 1e-9)
      throw ConfigError("profile radii must be the uniform grid i pi / N");
  const long winding = std::lround(f.back() / kPi);
  if (std::abs(f.front()) > 1e-9 || std::abs(f.back() - winding * kPi) > 1e-9 || winding < 1)
    throw ConfigError("profile must satisfy f(0) = 0 and f(pi) = n pi with n >= 1");
  try {
    return RadialProfile(static_cast<int>(winding), std::move(f));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void write_profile(const RadialProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write profile file '" + path + "'");
  out << "# r f\n";
  for (int i = 0; i <= p.cells(); ++i)
    out << format_number(p.node(i)) << ' ' << format_number(p[i]) << '\n';
}

Descent parse_method(const std::string& m) {
  if (m == "newton") return Descent::newton;
  if (m == "gradient") return Descent::gradient;
  if (m == "cg" || m == "conjugate_gradient") return Descent::conjugate_gradient;
  throw ConfigError("unknown method '" + m + "'");
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
}

std::string extension(Format f) { return f == Format::json ? ".json" : ".csv"; }

// --- dilation-table --------------------------------------------------------

Table dilation_table(const RunConfig& cfg, bool& ok) {
  Table t{{"alpha", "lambda", "tau", "sigma", "E_alpha", "xi", "G", "G_prime", "dE_dloglambda",
           "bound_checks", "bound_failures", "bounds"},
          {}};
  for (double alpha : or_default(cfg.alpha, {1.2})) {
    for (double lambda : or_default(cfg.lambda, {1.0, 2.0, 10.0})) {
      if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
      if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
      const DilationEnergyResult d = dilation_energy(alpha, lambda);
      const double g_prime = alpha > 1.0 ? growth_function(alpha, d.sigma).G_prime : 0.0;
      const double slope = dilation_energy_log_derivative(alpha, std::max(lambda, 1.0 / lambda));
      long long checks = 0, failures = 0;
      if (alpha > 1.0 && alpha <= 2.0) {
        const double l = std::max(lambda, 1.0 / lambda);
        std::vector<BoundCheck> all = check_xi_lower_bounds(alpha, l);
        if (d.sigma <= 2.0) all.push_back(check_growth(alpha, l));
        for (const BoundCheck& b : all) {
          ++checks;
          if (!b.passed) ++failures;
        }
      }
      const std::string verdict = checks == 0 ? "n/a" : failures == 0 ? "pass" : "fail";
      if (failures) ok = false;
      t.rows.push_back({alpha, lambda, d.tau, d.sigma, d.value, d.xi, d.G, g_prime, slope, checks,
                        failures, verdict});
    }
  }
  return t;
}

// --- radial-solve / sweep --------------------------------------------------

struct RadialRun {
  double alpha;
  int n;
  int cells;
  SolveResult result;
  std::optional<AnnulusSplit> split;
  bool checks_ok;
};

const std::vector<std::string> kRadialColumns{
    "alpha", "n", "N", "method", "converged", "status", "energy", "residual_sup", "grad_norm",
    "degree", "degree_int", "r1", "r2", "iterations", "disc_energy", "annulus_energy",
    "cap_energy", "floor_rotation", "floor_3alpha", "checks"};

SolveOptions solve_options(const RunConfig& cfg) {
  require_positive(cfg.grad_tol, "grad-tol");
  require_positive(cfg.residual_tol, "residual-tol");
  if (cfg.max_iters < 1) throw ConfigError("max-iters must be >= 1");
  SolveOptions o;
  o.method = parse_method(cfg.method);
  o.max_iters = cfg.max_iters;
  o.grad_tol = cfg.grad_tol;
  o.residual_tol = cfg.residual_tol;
  o.continuation = cfg.continuation;
  o.keep_trace = false;
  return o;
}

void validate_radial(double alpha, int n, int cells) {
  if (!(alpha > 1.0)) throw ConfigError("radial solves need alpha > 1");
  if (n < 1) throw ConfigError("n must be >= 1");
  if (cells < RadialProfile::kMinCells)
    throw ConfigError("N must be >= " + std::to_string(RadialProfile::kMinCells));
}

RadialRun radial_run(double alpha, int n, int cells, const SolveOptions& options) {
  RadialRun run{alpha, n, cells, minimize_radial(alpha, n, cells, std::nullopt, options), {}, true};
  const SolveResult& r = run.result;
  const int parity = n % 2;
  run.checks_ok = r.converged && r.degree_int == parity;
  if (parity == 1) run.checks_ok = run.checks_ok && r.energy >= rotation_energy(alpha) - 1e-8;
  if (n == 3) {
    run.checks_ok = run.checks_ok && r.energy > std::pow(2.0, 3.0 * alpha + 1.0) * kPi;
    if (r.converged && r.r1 && r.r2) run.split = annulus_split(r);
  }
  return run;
}

std::vector<Cell> radial_row(const RadialRun& run, const SolveOptions& options) {
  const SolveResult& r = run.result;
  const auto part = [&](double AnnulusSplit::*member) {
    return run.split ? Cell{(*run.split).*member} : Cell{std::nan("")};
  };
  return {run.alpha,
          static_cast<long long>(run.n),
          static_cast<long long>(run.cells),
          to_string(options.method),
          r.converged,
          r.status,
          r.energy,
          r.residual_sup,
          r.grad_norm,
          radial_degree(r.profile),
          static_cast<long long>(r.degree_int),
          maybe(r.r1),
          maybe(r.r2),
          static_cast<long long>(r.iterations),
          part(&AnnulusSplit::disc_energy),
          part(&AnnulusSplit::annulus_energy),
          part(&AnnulusSplit::cap_energy),
          rotation_energy(run.alpha),
          std::pow(2.0, 3.0 * run.alpha + 1.0) * kPi,
          std::string(run.checks_ok ? "pass" : "fail")};
}

Table radial_solve(const RunConfig& cfg, bool& ok) {
  const auto alphas = or_default(cfg.alpha, {1.2});
  const auto ns = or_default(cfg.n, {3});
  const auto cells = or_default(cfg.cells, {4000});
  if (alphas.size() != 1 || ns.size() != 1 || cells.size() != 1)
    throw ConfigError("radial-solve takes a single alpha, n and N; use sweep for lists");
  validate_radial(alphas[0], ns[0], cells[0]);
  const SolveOptions options = solve_options(cfg);
  const RadialRun run = radial_run(alphas[0], ns[0], cells[0], options);
  ok = run.checks_ok;

  std::string path = cfg.profile_out;
  if (path.empty() && !cfg.output_dir.empty())
    path = (std::filesystem::path(cfg.output_dir) /
            ("profile_n" + std::to_string(ns[0]) + "_N" + std::to_string(cells[0]) + ".txt"))
               .string();
  Table t{kRadialColumns, {radial_row(run, options)}};
  t.columns.push_back("profile_file");
  t.rows[0].push_back(path);
  if (!path.empty()) write_profile(run.result.profile, path);
  return t;
}

Table sweep(const RunConfig& cfg, bool& ok) {
  auto alphas = or_default(cfg.alpha, {1.1, 1.2, 1.3, 1.5});
  auto ns = or_default(cfg.n, {1, 2, 3});
  auto cells = or_default(cfg.cells, {1000});
  std::sort(alphas.begin(), alphas.end());
  std::sort(ns.begin(), ns.end());
  std::sort(cells.begin(), cells.end());
  std::vector<std::tuple<double, int, int>> tuples;
  for (double a : alphas)
    for (int n : ns)
      for (int c : cells) {
        validate_radial(a, n, c);
        tuples.emplace_back(a, n, c);
      }
  const SolveOptions options = solve_options(cfg);
  std::vector<std::optional<RadialRun>> runs(tuples.size());
  std::vector<std::string> errors(tuples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tuples.size();) {
      const auto [a, n, c] = tuples[i];
      try {
        runs[i] = radial_run(a, n, c, options);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count =
      std::min<std::size_t>(tuples.size(), cfg.threads > 0 ? cfg.threads : hw);
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Table t{kRadialColumns, {}};
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!runs[i]) throw Error("sweep: " + errors[i]);
    if (!runs[i]->checks_ok) ok = false;
    t.rows.push_back(radial_row(*runs[i], options));
  }
  return t;
}

// --- energy ----------------------------------------------------------------

MapHandle named_map(const RunConfig& cfg) {
  if (cfg.map == "identity") return identity_map();
  if (cfg.map == "constant") return constant_map();
  if (cfg.map == "conjugation") return conjugation_map();
  if (cfg.map == "mobius") {
    if (cfg.mobius.empty()) throw ConfigError("--map mobius needs --mobius a,b,c,d");
    return mobius_map(parse_mobius(cfg.mobius));
  }
  if (cfg.map == "radial") {
    if (cfg.profile_in.empty()) throw ConfigError("--map radial needs --profile-in FILE");
    return radial_map(read_profile(cfg.profile_in));
  }
  throw ConfigError("unknown map '" + cfg.map + "'");
}

Table energy(const RunConfig& cfg, bool& ok) {
  if (cfg.grid_nodes < 4) throw ConfigError("grid must be >= 4");
  const MapHandle u = named_map(cfg);
  const QuadratureGrid grid = make_grid(cfg.grid_nodes, cfg.grid_nodes);
  Table t{{"map", "alpha", "e_alpha", "e_dirichlet_plus_area", "degree", "degree_int",
           "degree_near_integer", "floor_2_2a1_pi", "passes_floor"},
          {}};
  for (double alpha : or_default(cfg.alpha, {1.5})) {
    if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
    const EnergyReport r = energy_report(*u, alpha, grid);
    if (!r.passes_floor || !r.degree_near_integer) ok = false;
    t.rows.push_back({u->describe(), alpha, r.e_alpha, r.e_dirichlet_plus_area, r.degree,
                      static_cast<long long>(r.degree_int), r.degree_near_integer,
                      r.floor_2_2a1_pi, r.passes_floor});
  }
  return t;
}

// --- verify ----------------------------------------------------------------

Table verify(const RunConfig& cfg, bool& ok, std::ostream& err) {
  VerifyOptions options;
  options.seed = cfg.seed;
  for (int id : cfg.criteria)
    if (id < 1 || id > kCriterionCount) throw ConfigError("criteria are numbered 1.." + std::to_string(kCriterionCount));
  options.only = cfg.criteria;
  VerifyReport report = run_verify(options);
  const bool all = cfg.criteria.empty() ||
                   std::find(cfg.criteria.begin(), cfg.criteria.end(), kCriterionCount) != cfg.criteria.end();
  if (all) verify_determinism(options, report);
  ok = report.all_passed();
  for (const CriterionResult& c : report.criteria)
    err << (c.passed ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << "  (" << c.checks
        << " checks, " << c.failures << " failed)\n";
  err << report.passed() << " passed, " << report.failed() << " failed\n";

  Table t{{"criterion", "check", "lhs", "rhs", "margin", "passed", "regime", "note"}, {}};
  for (const VerifyRow& row : report.rows)
    t.rows.push_back({static_cast<long long>(row.criterion), row.check, row.lhs, row.rhs, row.margin,
                      std::string(row.passed ? "pass" : "fail"), row.regime, row.note});
  return t;
}

const char* kFooter = R"(Commands and report columns:
  dilation-table  alpha,lambda,tau,sigma,E_alpha,xi,G,G_prime,dE_dloglambda,
                  bound_checks,bound_failures,bounds
                  one row per (alpha, lambda); G_prime is 0 for alpha = 1; bounds is
                  pass/fail/n/a for the xi and growth lower bounds (1 < alpha <= 2)
  radial-solve    alpha,n,N,method,converged,status,energy,residual_sup,grad_norm,
                  degree,degree_int,r1,r2,iterations,disc_energy,annulus_energy,
                  cap_energy,floor_rotation,floor_3alpha,checks,profile_file
                  the profile is written as two columns "r f" when --profile-out or
                  an output directory is given
  energy          map,alpha,e_alpha,e_dirichlet_plus_area,degree,degree_int,
                  degree_near_integer,floor_2_2a1_pi,passes_floor
                  maps: identity | constant | conjugation | mobius (--mobius a,b,c,d)
                  | radial (--profile-in FILE)
  verify          criterion,check,lhs,rhs,margin,passed,regime,note
                  per-criterion verdicts go to stderr
  sweep           radial-solve columns without profile_file, one row per
                  (alpha, n, N) in sorted order

Numbers carry 17 significant digits with '.' as decimal separator. JSON output
is an array of objects with the same keys as the CSV columns.
Config files hold "key = value" lines using the long option names
(e.g. "alpha = 1.2,1.5"); flags override the file.
Exit codes: 0 all checks passed, 1 a check failed, 2 configuration error.
)";

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    bool ok = true;
    Table table;
    if (cfg.command == "dilation-table") table = dilation_table(cfg, ok);
    else if (cfg.command == "radial-solve") table = radial_solve(cfg, ok);
    else if (cfg.command == "energy") table = energy(cfg, ok);
    else if (cfg.command == "verify") table = verify(cfg, ok, err);
    else if (cfg.command == "sweep") table = sweep(cfg, ok);
    else throw ConfigError("unknown command '" + cfg.command + "'");

    std::string path = cfg.output;
    if (path.empty() && !cfg.output_dir.empty())
      path = (std::filesystem::path(cfg.output_dir) / (cfg.command + extension(cfg.format))).string();
    std::ofstream file;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ConfigError("cannot write '" + path + "'");
    }
    std::ostream& sink = path.empty() ? out : file;
    if (cfg.format == Format::json) write_json(table, sink);
    else write_csv(table, sink);
    if (!ok) {
      for (const auto& row : table.rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
          const auto* s = std::get_if<std::string>(&row[i]);
          if (s && *s == "fail") {
            err << "failed:";
            for (std::size_t k = 0; k < row.size(); ++k) err << (k ? "," : " ") << cell_text(row[k]);
            err << '\n';
            break;
          }
        }
    }
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Alpha-energy computations for maps between 2-spheres"};
  app.footer(kFooter);
  app.set_config("--config", "", "key = value configuration file");
  app.add_option("command", cfg.command, "dilation-table | radial-solve | energy | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"dilation-table", "radial-solve", "energy", "verify", "sweep"}));
  app.add_option("--alpha", cfg.alpha, "alpha values")->delimiter(',');
  app.add_option("--lambda", cfg.lambda, "lambda values")->delimiter(',');
  app.add_option("--n", cfg.n, "winding numbers")->delimiter(',');
  app.add_option("--N", cfg.cells, "radial cells")->delimiter(',');
  app.add_option("--grid", cfg.grid_nodes, "sphere quadrature nodes per direction")->capture_default_str();
  app.add_option("--map", cfg.map, "identity | constant | conjugation | mobius | radial")
      ->capture_default_str();
  app.add_option("--mobius", cfg.mobius, "Mobius entries a,b,c,d (complex, e.g. 1+2i)");
  app.add_option("--profile-in", cfg.profile_in, "two-column (r, f) profile for --map radial");
  app.add_option("--method", cfg.method, "newton | gradient | cg")->capture_default_str();
  app.add_option("--max-iters", cfg.max_iters)->capture_default_str();
  app.add_option("--grad-tol", cfg.grad_tol)->capture_default_str();
  app.add_option("--residual-tol", cfg.residual_tol)->capture_default_str();
  app.add_option("--continuation", cfg.continuation, "alpha values solved first")->delimiter(',');
  app.add_option("--seed", cfg.seed, "seed of the randomized checks")->capture_default_str();
  app.add_option("--criteria", cfg.criteria, "verify: criteria to run")->delimiter(',');
  std::string format = "csv";
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "report file (default: stdout)");
  app.add_option("--output-dir", cfg.output_dir, "directory for reports and profiles")
      ->envname("AHM_OUTPUT_DIR");
  app.add_option("--profile-out", cfg.profile_out, "radial-solve: profile file");
  app.add_option("--threads", cfg.threads, "sweep workers (0 = hardware)")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  cfg.format = format == "json" ? Format::json : Format::csv;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace ahm::cli
