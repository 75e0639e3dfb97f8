// Command-line surface for the coalescence toolkit: triangle/coalesce
// subcommands for the arithmetic criterion and its exact-search referee,
// lseries/buchstab/distribution/envelope for the analytic side, spectrum
// for the quantum-cohomology operators.
//
// Exit codes: 0 success, 1 usage, 2 oracle disagreement, 3 resource guard,
// 4 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "clab/coalescence.hpp"
#include "clab/cyclotomic.hpp"
#include "clab/distribution.hpp"
#include "clab/errors.hpp"
#include "clab/primes.hpp"
#include "clab/qh_satake.hpp"
#include "clab/series.hpp"

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::int64_t sieve_limit = 1'000'000;
  std::int64_t oracle_guard = 20'000'000;
  std::int64_t eigen_guard = 3000;
  double tol_spectrum = 1e-8;
  double tol_ties = 1e-6;
  double tol_series = 1e-12;
  std::string output_format = "csv";
  std::string output_path;

  void validate() const {
    if (sieve_limit < 2 || oracle_guard <= 0 || eigen_guard <= 0)
      throw CLI::ValidationError("config", "guards must be positive");
    for (double tol : {tol_spectrum, tol_ties, tol_series})
      if (!(tol > 0.0 && tol < 1.0))
        throw CLI::ValidationError("config", "tolerances must lie in (0, 1)");
    if (output_format != "csv" && output_format != "json")
      throw CLI::ValidationError("config", "output_format must be csv or json");
  }
};

// Flat key=value file named by CLAB_CONFIG; flags parsed later win.
void apply_config_file(RunConfig& cfg) {
  const char* path = std::getenv("CLAB_CONFIG");
  if (path == nullptr || *path == '\0') return;
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("config", std::string("cannot open CLAB_CONFIG file ") + path);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "sieve_limit") cfg.sieve_limit = std::stoll(val);
    else if (key == "oracle_guard") cfg.oracle_guard = std::stoll(val);
    else if (key == "eigen_guard") cfg.eigen_guard = std::stoll(val);
    else if (key == "tol_spectrum") cfg.tol_spectrum = std::stod(val);
    else if (key == "tol_ties") cfg.tol_ties = std::stod(val);
    else if (key == "tol_series") cfg.tol_series = std::stod(val);
    else if (key == "output_format") cfg.output_format = val;
    else if (key == "output_path") cfg.output_path = val;
    else throw CLI::ValidationError("config", "unknown key " + key);
  }
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json series_json(std::complex<double> s, const clab::SeriesValue& sv) {
  return json{{"s", {s.real(), s.imag()}},
              {"value", {sv.value.real(), sv.value.imag()}},
              {"tail_bound", sv.tail_bound},
              {"terms_used", sv.terms_used}};
}

int cmd_triangle(const RunConfig& cfg, std::int64_t n_max) {
  clab::PrimeTable table(std::max<std::int64_t>(n_max, 2));
  const auto rows = clab::triangle_map(table, n_max);
  Output out(cfg.output_path);
  out.stream() << "n,k,coalescing\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::int64_t n = static_cast<std::int64_t>(i) + 2;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      out.stream() << n << ',' << (j + 1) << ',' << (rows[i][j] ? 1 : 0) << '\n';
  }
  return 0;
}

int cmd_coalesce(const RunConfig& cfg, std::int64_t n, std::optional<std::int64_t> k,
                 bool with_oracle) {
  clab::PrimeTable table(std::max<std::int64_t>(n, 2));
  Output out(cfg.output_path);

  const auto report_one = [&](std::int64_t kk) -> int {
    const bool closed = clab::is_coalescing(table, kk, n);
    if (!with_oracle) {
      out.stream() << "n=" << n << " k=" << kk << " coalescing=" << (closed ? "true" : "false")
                   << '\n';
      return 0;
    }
    clab::CyclotomicReducer reducer(static_cast<int>(n));
    const bool oracle =
        clab::is_coalescing_oracle(reducer, static_cast<int>(kk), cfg.oracle_guard);
    const bool agree = closed == oracle;
    out.stream() << "n=" << n << " k=" << kk << " coalescing=" << (closed ? "true" : "false")
                 << " oracle=" << (oracle ? "true" : "false")
                 << " agree=" << (agree ? "true" : "false") << '\n';
    return agree ? 0 : 2;
  };

  if (k) return report_one(*k);

  const auto rec = clab::coalescence_record(table, n);
  int rc = 0;
  for (std::int64_t kk = 1; kk <= n - 1; ++kk) rc = std::max(rc, report_one(kk));
  out.stream() << "l_tilde=" << rec.l_tilde;
  if (rec.interval_empty()) out.stream() << " coalescing_interval=empty";
  else out.stream() << " coalescing_interval=[" << rec.interval_lo << ',' << rec.interval_hi << "]";
  out.stream() << '\n';
  return rc;
}

int cmd_lseries(const RunConfig& cfg, double s_re, double s_im, std::int64_t ncut, double pcut) {
  const std::complex<double> s{s_re, s_im};
  clab::PrimeTable table(cfg.sieve_limit);
  const auto direct = clab::l_tilde_direct(s, std::min(ncut, cfg.sieve_limit), table);
  const auto prime = clab::l_tilde_prime_series(
      s, std::min(pcut, static_cast<double>(cfg.sieve_limit)), table);
  const double difference = std::abs(direct.value - prime.value);

  json doc{{"s", {s_re, s_im}},
           {"direct", series_json(s, direct)},
           {"prime_series", series_json(s, prime)},
           {"difference", difference},
           {"within_tails", difference <= direct.tail_bound + prime.tail_bound}};
  Output out(cfg.output_path);
  out.stream() << doc.dump(2) << '\n';
  return 0;
}

int cmd_distribution(const RunConfig& cfg, double x, std::optional<double> y) {
  clab::PrimeTable table(cfg.sieve_limit);
  const double yy = y ? *y : 2.0 * std::sqrt(x);
  const std::int64_t direct = clab::h_count_direct(table, x, yy);
  const std::int64_t identity = clab::h_count_identity(table, x, yy);
  Output out(cfg.output_path);
  out.stream() << "x,y,H_direct,H_identity\n"
               << fmt(x) << ',' << fmt(yy) << ',' << direct << ',' << identity << '\n';
  return 0;
}

int cmd_buchstab(const RunConfig& cfg, double u) {
  clab::BuchstabTable tbl(std::max(32.0, u + 1.0));
  const double w = tbl.omega(u);
  Output out(cfg.output_path);
  if (cfg.output_format == "json")
    out.stream() << json{{"u", u}, {"omega", w}}.dump() << '\n';
  else
    out.stream() << fmt(w) << '\n';
  return 0;
}

int cmd_envelope(const RunConfig& cfg, double x, double theta) {
  clab::PrimeTable table(cfg.sieve_limit);
  const auto env = clab::rh_envelope(table, x, theta);
  Output out(cfg.output_path);
  out.stream() << "x,H_hat,li,diff,normalized\n"
               << fmt(x) << ',' << env.h_hat << ',' << fmt(env.li_value) << ','
               << fmt(env.diff) << ',' << fmt(env.normalized) << '\n';
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, int n, int k, double q_re, double q_im) {
  clab::WedgeBasis basis(n, k);
  const auto spec = clab::c1_spectrum(basis, {q_re, q_im}, cfg.tol_spectrum,
                                      static_cast<std::size_t>(cfg.eigen_guard));
  json eigs = json::array();
  for (const auto& ev : spec.eigenvalues) eigs.push_back({ev.real(), ev.imag()});
  json doc{{"n", n},       {"k", k},
           {"q_re", q_re}, {"q_im", q_im},
           {"eigenvalues", eigs}, {"max_residual", spec.max_residual}};
  Output out(cfg.output_path);
  out.stream() << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  CLI::App app{"coalescence of canonical coordinates in small quantum cohomology "
               "of Grassmannians: arithmetic criterion, exact enumeration, spectra "
               "and prime-distribution diagnostics"};
  app.require_subcommand(1);

  try {
    apply_config_file(cfg);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  app.add_option("--sieve-limit", cfg.sieve_limit, "sieve size for prime tables");
  app.add_option("--oracle-guard", cfg.oracle_guard, "max subsets for exact enumeration");
  app.add_option("--eigen-guard", cfg.eigen_guard, "max dimension for dense spectra");
  app.add_option("--tol-spectrum", cfg.tol_spectrum, "eigenvalue matching tolerance");
  app.add_option("--tol-ties", cfg.tol_ties, "repeated-eigenvalue detection tolerance");
  app.add_option("--tol-series", cfg.tol_series, "series evaluation target");
  app.add_option("--format", cfg.output_format, "csv or json");
  app.add_option("--output", cfg.output_path, "write to file instead of stdout");

  // triangle
  std::int64_t n_max = 0;
  auto* triangle = app.add_subcommand("triangle", "coalescence triangle as CSV");
  triangle->fallthrough();
  triangle->add_option("--n-max", n_max, "largest ambient dimension")
      ->required()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}));

  // coalesce
  std::int64_t co_n = 0;
  std::optional<std::int64_t> co_k;
  bool with_oracle = false;
  auto* coalesce = app.add_subcommand("coalesce", "closed-form verdict, optionally refereed");
  coalesce->fallthrough();
  coalesce->add_option("n", co_n, "ambient dimension")->required();
  coalesce->add_option("k", co_k, "subspace dimension (all k when omitted)");
  coalesce->add_flag("--oracle", with_oracle, "run the exact-search referee");

  // lseries
  double s_re = 0.0, s_im = 0.0, pcut = 1'000'000.0;
  std::int64_t ncut = 1'000'000;
  auto* lseries = app.add_subcommand("lseries", "Dirichlet series both ways with tails");
  lseries->fallthrough();
  lseries->add_option("s_re", s_re)->required();
  lseries->add_option("s_im", s_im)->required();
  lseries->add_option("--ncut", ncut, "direct-sum cut");
  lseries->add_option("--pcut", pcut, "prime-series cut");

  // distribution
  double dist_x = 0.0;
  std::optional<double> dist_y;
  auto* distribution = app.add_subcommand("distribution", "H counts, direct and identity");
  distribution->fallthrough();
  distribution->add_option("x", dist_x)->required();
  distribution->add_option("y", dist_y, "threshold (default 2 sqrt(x))");

  // buchstab
  double bu_u = 0.0;
  auto* buchstab = app.add_subcommand("buchstab", "Buchstab omega(u)");
  buchstab->fallthrough();
  buchstab->add_option("u", bu_u)->required();

  // envelope
  double env_x = 0.0, env_theta = 0.5;
  auto* envelope = app.add_subcommand("envelope", "deviation from li(x), normalized");
  envelope->fallthrough();
  envelope->add_option("x", env_x)->required();
  envelope->add_option("--theta", env_theta, "envelope exponent in [0.5, 1]");

  // spectrum
  int sp_n = 0, sp_k = 0;
  double sp_qre = 1.0, sp_qim = 0.0;
  auto* spectrum = app.add_subcommand("spectrum", "c1 spectrum on the wedge basis");
  spectrum->fallthrough();
  spectrum->add_option("n", sp_n)->required();
  spectrum->add_option("k", sp_k)->required();
  spectrum->add_option("q", sp_qre, "quantum parameter (real part)");
  spectrum->add_option("--q-im", sp_qim, "quantum parameter (imaginary part)");

  try {
    app.parse(argc, argv);
    cfg.validate();

    if (triangle->parsed()) return cmd_triangle(cfg, n_max);
    if (coalesce->parsed()) return cmd_coalesce(cfg, co_n, co_k, with_oracle);
    if (lseries->parsed()) return cmd_lseries(cfg, s_re, s_im, ncut, pcut);
    if (distribution->parsed()) return cmd_distribution(cfg, dist_x, dist_y);
    if (buchstab->parsed()) return cmd_buchstab(cfg, bu_u);
    if (envelope->parsed()) return cmd_envelope(cfg, env_x, env_theta);
    if (spectrum->parsed()) return cmd_spectrum(cfg, sp_n, sp_k, sp_qre, sp_qim);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const clab::resource_limit_error& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return 3;
  } catch (const clab::insufficient_cut_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
