// xitool: command-line front end for the xim toolkit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xim/airy.hpp"
#include "xim/arith.hpp"
#include "xim/brane.hpp"
#include "xim/ensemble.hpp"
#include "xim/errors.hpp"
#include "xim/pq.hpp"
#include "xim/recgamma.hpp"
#include "xim/theta.hpp"
#include "xim/xi.hpp"
#include "xim/zero_cache.hpp"

using json = nlohmann::json;
using namespace xim;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  unsigned precision_digits = 50;
  std::string quadrature_tol = "1e-30";
  double theta_window = 3.5;
  int theta_tail_margin = 6;
  double scan_T = 100.0;
  double scan_step = 0.05;
  std::string format = "csv";  // csv | json
  std::string output;          // empty: stdout
  std::uint64_t seed = 12345;
  std::string cache_path = "zeros_cache.json";
};

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::unknown_key:
    case Errc::type_error:
    case Errc::missing_file:
      return 2;
    case Errc::non_convergence:
    case Errc::integrand_evaluation_failure:
    case Errc::window_too_small:
    case Errc::series_truncation_error:
    case Errc::tail_budget_too_loose:
    case Errc::confluence_unstable:
    case Errc::contour_divergence:
    case Errc::insufficient_samples:
      return 3;
    default:
      return 4;
  }
}

// ---------------------------------------------------------------------------
// Config file parsing: flat key=value lines or a JSON object.

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  auto as_double = [&](const std::string& v) {
    try {
      size_t pos = 0;
      double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw Error(Errc::type_error, "value for '" + key + "' is not a number: " + value);
    }
  };
  if (key == "precision_digits") {
    c.precision_digits = static_cast<unsigned>(as_double(value));
  } else if (key == "quadrature_tol") {
    (void)as_double(value);
    c.quadrature_tol = value;
  } else if (key == "theta_window") {
    c.theta_window = as_double(value);
  } else if (key == "theta_tail_margin") {
    c.theta_tail_margin = static_cast<int>(as_double(value));
  } else if (key == "zero_scan.T") {
    c.scan_T = as_double(value);
  } else if (key == "zero_scan.step") {
    c.scan_step = as_double(value);
  } else if (key == "output.format") {
    c.format = value;
  } else if (key == "output.path") {
    c.output = value;
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(as_double(value));
  } else if (key == "cache_path") {
    c.cache_path = value;
  } else {
    throw Error(Errc::unknown_key, "unknown configuration key '" + key + "'");
  }
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::missing_file, "config file not found: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(Errc::type_error, std::string("malformed JSON config: ") + e.what());
    }
    std::function<void(const std::string&, const json&)> walk =
        [&](const std::string& prefix, const json& node) {
          for (auto it = node.begin(); it != node.end(); ++it) {
            std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it->is_object()) {
              walk(key, *it);
            } else if (it->is_string()) {
              apply_key(c, key, it->get<std::string>());
            } else {
              apply_key(c, key, it->dump());
            }
          }
        };
    walk("", j);
    return;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::type_error, "config line is not key=value: " + line);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const RunConfig& c) {
  if (c.precision_digits < 30)
    throw Error(Errc::type_error, "precision_digits must be >= 30");
  if (c.scan_step <= 0 || c.scan_T <= 0 || c.theta_window <= 0)
    throw Error(Errc::type_error, "tolerances and scan parameters must be positive");
  if (c.format != "csv" && c.format != "json")
    throw Error(Errc::type_error, "output format must be csv or json");
}

// ---------------------------------------------------------------------------
// Output: a header + string rows, emitted as RFC-4180 CSV or a JSON array.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (size_t i = 0; i < t.header.size() && i < row.size(); ++i) obj[t.header[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    out << arr.dump(1) << "\n";
  } else {
    for (size_t i = 0; i < t.header.size(); ++i)
      out << (i ? "," : "") << csv_field(t.header[i]);
    out << "\r\n";
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\r\n";
    }
  }
  return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw Error(Errc::missing_file, "cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::missing_file, "cannot rename " + tmp + " to " + path);
}

json config_json(const RunConfig& c) {
  return json{{"precision_digits", c.precision_digits},
              {"quadrature_tol", c.quadrature_tol},
              {"theta_window", c.theta_window},
              {"theta_tail_margin", c.theta_tail_margin},
              {"zero_scan", {{"T", c.scan_T}, {"step", c.scan_step}}},
              {"output", {{"format", c.format}, {"path", c.output}}},
              {"seed", c.seed},
              {"cache_path", c.cache_path}};
}

void emit(const RunConfig& c, const std::string& command, const Table& t, double wall_ms) {
  std::string body = render(t, c.format);
  json manifest{{"command", command},
                {"version", kVersion},
                {"config", config_json(c)},
                {"wall_ms", wall_ms}};
  if (c.output.empty()) {
    std::cout << body;
    std::cerr << manifest.dump() << "\n";
  } else {
    atomic_write(c.output, body);
    atomic_write(c.output + ".manifest.json", manifest.dump(1) + "\n");
  }
}

// ---------------------------------------------------------------------------
// Argument helpers.

Complex parse_complex(const std::string& s, unsigned d) {
  size_t comma = s.find(',');
  if (comma == std::string::npos) return Complex(Scalar::parse(s, d));
  return {Scalar::parse(s.substr(0, comma), d), Scalar::parse(s.substr(comma + 1), d)};
}

std::vector<Complex> parse_complex_list(const std::string& s, unsigned d) {
  std::vector<Complex> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_complex(item, d));
  return out;
}

std::string fmt(const Scalar& x) { return x.str(); }
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

KernelSpec kernel_by_name(const std::string& name, unsigned d) {
  if (name == "airy") return theta::make_airy_kernel(d);
  if (name == "xi") return theta::make_xi_kernel(d);
  if (name == "xi-literal") return theta::make_xi_paper_literal_kernel(d);
  if (name == "gaussian") return theta::make_gaussian_kernel(d);
  if (name == "liouville") return theta::make_liouville_kernel(d);
  throw Error(Errc::type_error, "unknown kernel '" + name + "'");
}

/// Zeros for consuming commands: reuse the cache when its precision and scan
/// height cover the request, otherwise recompute and rewrite it.
xi::ZeroList cached_zeros(const RunConfig& c, double T) {
  xi::ZeroList zl;
  unsigned cached_digits = 0;
  if (zero_cache::load(c.cache_path, zl, cached_digits) &&
      cached_digits >= c.precision_digits && zl.scan_height >= Scalar(T, 30)) {
    return zl;
  }
  zl = xi::find_zeros(Scalar(T, c.precision_digits), Scalar(c.scan_step, c.precision_digits),
                      c.precision_digits);
  zero_cache::save(c.cache_path, zl, c.precision_digits);
  return zl;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_file;
  // Flag staging: only explicitly passed flags may override file values.
  unsigned f_digits = 0;
  std::string f_tol, f_format, f_output, f_cache;
  double f_window = 0, f_scan_T = 0, f_scan_step = 0;
  int f_margin = -1;
  std::uint64_t f_seed = 0;

  CLI::App app{"high-precision toolkit for the completed zeta function and its matrix-model reading"};
  app.require_subcommand(0);
  app.add_option("--config", config_file, "configuration file (key=value lines or JSON)");
  auto* o_digits = app.add_option("--digits", f_digits, "working precision in decimal digits");
  auto* o_tol = app.add_option("--tol", f_tol, "quadrature tolerance");
  auto* o_window = app.add_option("--window", f_window, "theta kernel window");
  auto* o_margin = app.add_option("--tail-margin", f_margin, "theta tail margin digits");
  auto* o_scan_T = app.add_option("--scan-T", f_scan_T, "zero scan height");
  auto* o_scan_step = app.add_option("--scan-step", f_scan_step, "zero scan step");
  auto* o_format = app.add_option("--format", f_format, "output format: csv or json");
  auto* o_output = app.add_option("--output", f_output, "output artifact path (default stdout)");
  auto* o_seed = app.add_option("--seed", f_seed, "RNG seed");
  auto* o_cache = app.add_option("--cache", f_cache, "zero cache path");

  // --- xi ---
  auto* xi_cmd = app.add_subcommand("xi", "completed zeta function");
  std::string xi_z = "0", xi_route = "reference";
  double g_from = -30, g_to = 30;
  long g_points = 601;
  double prod_T = 100;
  long coeff_n = 8;
  auto* xi_eval = xi_cmd->add_subcommand("eval", "evaluate at a point");
  xi_eval->add_option("--z", xi_z);
  xi_eval->add_option("--route", xi_route)->check(CLI::IsMember({"reference", "fourier", "series"}));
  auto* xi_grid = xi_cmd->add_subcommand("grid", "magnitude on a real grid");
  xi_grid->add_option("--from", g_from);
  xi_grid->add_option("--to", g_to);
  xi_grid->add_option("--points", g_points);
  auto* xi_zeros = xi_cmd->add_subcommand("zeros", "scan and refine real zeros");
  auto* xi_coeffs = xi_cmd->add_subcommand("coeffs", "series coefficients");
  xi_coeffs->add_option("--n", coeff_n);
  auto* xi_product = xi_cmd->add_subcommand("product", "product reconstruction from zeros");
  xi_product->add_option("--z", xi_z);
  xi_product->add_option("--T", prod_T);

  // --- airy ---
  auto* airy_cmd = app.add_subcommand("airy", "Airy function");
  std::string airy_z = "0", airy_route = "reference";
  long airy_n = 10;
  auto* airy_eval = airy_cmd->add_subcommand("eval", "evaluate at a point");
  airy_eval->add_option("--z", airy_z);
  airy_eval->add_option("--route", airy_route)->check(CLI::IsMember({"reference", "kontsevich"}));
  auto* airy_grid = airy_cmd->add_subcommand("grid", "magnitude on a real grid");
  airy_grid->add_option("--from", g_from);
  airy_grid->add_option("--to", g_to);
  airy_grid->add_option("--points", g_points);
  auto* airy_zeros = airy_cmd->add_subcommand("zeros", "negative-axis zeros");
  airy_zeros->add_option("--count", airy_n);

  // --- brane ---
  auto* brane_cmd = app.add_subcommand("brane", "determinantal n-brane reduction");
  std::string br_kernel = "airy", br_zs = "0";
  auto* brane_eval = brane_cmd->add_subcommand("eval", "partition value");
  brane_eval->add_option("--kernel", br_kernel);
  brane_eval->add_option("--z", br_zs, "semicolon-separated eigenvalues re[,im];...");
  auto* brane_check = brane_cmd->add_subcommand("check", "n = 2 brute-force comparison");
  brane_check->add_option("--kernel", br_kernel);
  brane_check->add_option("--z", br_zs);

  // --- pq ---
  auto* pq_cmd = app.add_subcommand("pq", "truncated (p,1) models");
  int pq_p = 3, pq_n = 4, pq_perturb_k = -1;
  std::string pq_z = "0", pq_perturb = "0";
  auto* pq_sk = pq_cmd->add_subcommand("sk", "couplings");
  pq_sk->add_option("--p", pq_p);
  auto* pq_xip = pq_cmd->add_subcommand("xi-p", "truncated transform value");
  pq_xip->add_option("--p", pq_p);
  pq_xip->add_option("--z", pq_z);
  auto* pq_res = pq_cmd->add_subcommand("residual", "generalized Airy relation residual");
  pq_res->add_option("--p", pq_p);
  pq_res->add_option("--z", pq_z);
  pq_res->add_option("--perturb-k", pq_perturb_k);
  pq_res->add_option("--perturb", pq_perturb);
  auto* pq_orth = pq_cmd->add_subcommand("orthpoly", "orthogonal polynomial B_n");
  pq_orth->add_option("--p", pq_p);
  pq_orth->add_option("--n", pq_n);

  // --- primes ---
  auto* primes_cmd = app.add_subcommand("primes", "arithmetic side");
  double pr_l = 30;
  std::string pr_z = "0,-2.5";
  long pr_pmax = 100000;
  auto* pr_count = primes_cmd->add_subcommand("count", "prime-power counts");
  pr_count->add_option("--l", pr_l);
  auto* pr_explicit = primes_cmd->add_subcommand("explicit", "explicit-formula comparison");
  pr_explicit->add_option("--l", pr_l);
  auto* pr_euler = primes_cmd->add_subcommand("euler", "Euler product for log zeta");
  pr_euler->add_option("--z", pr_z);
  pr_euler->add_option("--pmax", pr_pmax);

  // --- gamma ---
  auto* gamma_cmd = app.add_subcommand("gamma", "reciprocal factorial block");
  std::string gm_z = "3", gm_route = "product";
  long gm_terms = 100000;
  auto* gm_recfact = gamma_cmd->add_subcommand("recfact", "reciprocal factorial");
  gm_recfact->add_option("--z", gm_z);
  gm_recfact->add_option("--route", gm_route)->check(CLI::IsMember({"product", "reference"}));
  gm_recfact->add_option("--terms", gm_terms);
  auto* gm_liouville = gamma_cmd->add_subcommand("liouville", "Liouville kernel transform");
  gm_liouville->add_option("--z", gm_z);

  // --- mc ---
  auto* mc_cmd = app.add_subcommand("mc", "Gaussian ensemble Monte Carlo");
  int mc_N = 8, mc_k = 2;
  long mc_samples = 10000, mc_points = 15;
  std::string mc_obs = "trace_power", mc_z = "0", mc_nlist = "4,8,16,32";
  double mc_from = 2.5, mc_to = 6.0;
  std::uint64_t mc_index = 0;
  auto* mc_sample = mc_cmd->add_subcommand("sample", "one ensemble draw");
  mc_sample->add_option("--N", mc_N);
  mc_sample->add_option("--index", mc_index);
  auto* mc_expect = mc_cmd->add_subcommand("expect", "observable expectation");
  mc_expect->add_option("--N", mc_N);
  mc_expect->add_option("--obs", mc_obs)
      ->check(CLI::IsMember({"det_shift", "trace_power", "resolvent"}));
  mc_expect->add_option("--z", mc_z);
  mc_expect->add_option("--k", mc_k);
  mc_expect->add_option("--samples", mc_samples);
  auto* mc_variance = mc_cmd->add_subcommand("variance", "variance scaling in N");
  mc_variance->add_option("--N-list", mc_nlist);
  mc_variance->add_option("--samples", mc_samples);
  auto* mc_resolvent = mc_cmd->add_subcommand("resolvent", "functional-inverse round trip");
  mc_resolvent->add_option("--N", mc_N);
  mc_resolvent->add_option("--from", mc_from);
  mc_resolvent->add_option("--to", mc_to);
  mc_resolvent->add_option("--points", mc_points);
  mc_resolvent->add_option("--samples", mc_samples);

  // --- compare ---
  auto* compare_cmd = app.add_subcommand("compare", "cross-variant reports");
  auto* cmp_kernels = compare_cmd->add_subcommand("kernels", "derived vs literal theta kernel");
  double cmp_from = -2.0, cmp_to = 2.0;
  long cmp_points = 81;
  cmp_kernels->add_option("--from", cmp_from);
  cmp_kernels->add_option("--to", cmp_to);
  cmp_kernels->add_option("--points", cmp_points);

  // Allow the global configuration flags to appear after any subcommand.
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; }))
      allow_fallthrough(sub);
  };
  allow_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  try {
    if (!config_file.empty()) load_config_file(cfg, config_file);
    if (o_digits->count()) cfg.precision_digits = f_digits;
    if (o_tol->count()) cfg.quadrature_tol = f_tol;
    if (o_window->count()) cfg.theta_window = f_window;
    if (o_margin->count()) cfg.theta_tail_margin = f_margin;
    if (o_scan_T->count()) cfg.scan_T = f_scan_T;
    if (o_scan_step->count()) cfg.scan_step = f_scan_step;
    if (o_format->count()) cfg.format = f_format;
    if (o_output->count()) cfg.output = f_output;
    if (o_seed->count()) cfg.seed = f_seed;
    if (o_cache->count()) cfg.cache_path = f_cache;
    validate(cfg);
    unsigned d = cfg.precision_digits;

    Table t;
    std::string command = "none";
    if (app.get_subcommands().empty()) {
      std::cerr << app.help() << "\n";
      return 0;
    }

    if (*xi_eval) {
      command = "xi eval";
      xi::Route route = xi_route == "fourier"  ? xi::Route::fourier
                        : xi_route == "series" ? xi::Route::series
                                               : xi::Route::reference;
      xi::XiValue v = xi::xi_eval(parse_complex(xi_z, d), route, -1, d);
      t.header = {"z", "route", "value_re", "value_im", "digits"};
      t.rows.push_back({xi_z, xi_route, fmt(v.value.re), fmt(v.value.im), std::to_string(d)});
    } else if (*xi_grid) {
      command = "xi grid";
      t.header = {"z", "abs_xi"};
      for (long i = 0; i < g_points; ++i) {
        double z = g_from + (g_to - g_from) * static_cast<double>(i) /
                                static_cast<double>(g_points - 1);
        Complex v = xi::xi_eval(Complex(Scalar(z, d)), xi::Route::reference, -1, d).value;
        t.rows.push_back({fmt(z), fmt(abs(v))});
      }
    } else if (*xi_zeros) {
      command = "xi zeros";
      xi::ZeroList zl = cached_zeros(cfg, cfg.scan_T);
      t.header = {"index", "zero", "bracket_lo", "bracket_hi", "residual"};
      for (size_t i = 0; i < zl.zeros.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), fmt(zl.zeros[i]), fmt(zl.brackets[i].lo),
                          fmt(zl.brackets[i].hi), fmt(zl.residuals[i])});
    } else if (*xi_coeffs) {
      command = "xi coeffs";
      t.header = {"n", "a_2n"};
      for (long n = 0; n <= coeff_n; ++n)
        t.rows.push_back({std::to_string(n), fmt(xi::a2n(static_cast<int>(n), d))});
    } else if (*xi_product) {
      command = "xi product";
      xi::ZeroList zl = cached_zeros(cfg, prod_T);
      Complex z = parse_complex(xi_z, d);
      Complex rec = xi::product_reconstruct(z, zl, d);
      Complex ref = xi::xi_eval(z, xi::Route::reference, -1, d).value;
      t.header = {"z", "product_re", "reference_re", "abs_error"};
      t.rows.push_back({xi_z, fmt(rec.re), fmt(ref.re), fmt(abs(rec - ref))});
    } else if (*airy_eval) {
      command = "airy eval";
      airy::Route route =
          airy_route == "kontsevich" ? airy::Route::kontsevich : airy::Route::reference;
      airy::AiryValue v = airy::airy_eval(parse_complex(airy_z, d), route, d);
      t.header = {"z", "route", "value_re", "value_im", "digits"};
      t.rows.push_back({airy_z, airy_route, fmt(v.value.re), fmt(v.value.im), std::to_string(d)});
    } else if (*airy_grid) {
      command = "airy grid";
      t.header = {"z", "abs_ai"};
      for (long i = 0; i < g_points; ++i) {
        double z = g_from + (g_to - g_from) * static_cast<double>(i) /
                                static_cast<double>(g_points - 1);
        Complex v = airy::airy_eval(Complex(Scalar(z, d)), airy::Route::reference, d).value;
        t.rows.push_back({fmt(z), fmt(abs(v))});
      }
    } else if (*airy_zeros) {
      command = "airy zeros";
      xi::ZeroList zl = airy::airy_zeros(static_cast<int>(airy_n), d);
      t.header = {"index", "zero", "residual"};
      for (size_t i = 0; i < zl.zeros.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), fmt(zl.zeros[i]), fmt(zl.residuals[i])});
    } else if (*brane_eval) {
      command = "brane eval";
      KernelSpec k = kernel_by_name(br_kernel, d);
      Complex v = brane::brane_partition(k, brane::BraneConfig(parse_complex_list(br_zs, d)), d);
      t.header = {"kernel", "eigenvalues", "value_re", "value_im"};
      t.rows.push_back({br_kernel, br_zs, fmt(v.re), fmt(v.im)});
    } else if (*brane_check) {
      command = "brane check";
      KernelSpec k = kernel_by_name(br_kernel, d);
      brane::BruteCheck bc =
          brane::brane_brute_check(k, brane::BraneConfig(parse_complex_list(br_zs, d)), d);
      t.header = {"kernel", "eigenvalues", "reduced_re", "reduced_im", "direct_re", "direct_im",
                  "discrepancy"};
      t.rows.push_back({br_kernel, br_zs, fmt(bc.reduced.re), fmt(bc.reduced.im),
                        fmt(bc.direct.re), fmt(bc.direct.im), fmt(bc.discrepancy)});
    } else if (*pq_sk) {
      command = "pq sk";
      pq::CouplingSet cs = pq::extract_sk(pq_p, d);
      t.header = {"k", "s_k_re", "s_k_im"};
      for (const auto& [k, v] : cs.s)
        t.rows.push_back({std::to_string(k), fmt(v.re), fmt(v.im)});
      t.rows.push_back({"leading", fmt(cs.leading_coeff), "0"});
    } else if (*pq_xip) {
      command = "pq xi-p";
      Complex z = parse_complex(pq_z, d);
      Complex v = pq::xi_p_eval(z, pq_p, d);
      Complex ref = xi::xi_eval(z, xi::Route::reference, -1, d).value;
      t.header = {"z", "p", "xi_p_re", "xi_p_im", "xi_re", "abs_gap"};
      t.rows.push_back(
          {pq_z, std::to_string(pq_p), fmt(v.re), fmt(v.im), fmt(ref.re), fmt(abs(v - ref))});
    } else if (*pq_res) {
      command = "pq residual";
      Scalar r = pq::gen_airy_residual(parse_complex(pq_z, d), pq_p, d, nullptr, pq_perturb_k,
                                       Scalar::parse(pq_perturb, d));
      t.header = {"z", "p", "residual"};
      t.rows.push_back({pq_z, std::to_string(pq_p), fmt(r)});
    } else if (*pq_orth) {
      command = "pq orthpoly";
      pq::CouplingSet cs = pq::extract_sk(pq_p, d);
      PowerSeries v = pq::limit_potential(cs, std::max(pq_p, pq_n + 1), d);
      PowerSeries b = pq::orth_poly(pq_n, v);
      t.header = {"m", "coeff_re", "coeff_im"};
      for (int m = 0; m <= b.order(); ++m)
        t.rows.push_back({std::to_string(m), fmt(b[m].re), fmt(b[m].im)});
    } else if (*pr_count) {
      command = "primes count";
      arith::PrimePowerCount c = arith::prime_side(Scalar(pr_l, d), d);
      t.header = {"l", "strict", "weak", "average"};
      t.rows.push_back({fmt(pr_l), fmt(c.strict_count), fmt(c.weak_count), fmt(c.average)});
    } else if (*pr_explicit) {
      command = "primes explicit";
      xi::ZeroList zl = cached_zeros(cfg, cfg.scan_T);
      arith::ExplicitCheck ec = arith::explicit_check(Scalar(pr_l, d), zl, d);
      t.header = {"l", "loop_integral", "prime_average", "gap", "zeros_used"};
      t.rows.push_back({fmt(pr_l), fmt(ec.loop_integral), fmt(ec.prime_average), fmt(ec.gap),
                        std::to_string(zl.zeros.size())});
    } else if (*pr_euler) {
      command = "primes euler";
      arith::EulerLogZeta e = arith::euler_log_zeta(parse_complex(pr_z, d), pr_pmax, d);
      t.header = {"z", "value_re", "value_im", "tail_bound", "p_max"};
      t.rows.push_back(
          {pr_z, fmt(e.value.re), fmt(e.value.im), fmt(e.tail_bound), std::to_string(e.p_max)});
    } else if (*gm_recfact) {
      command = "gamma recfact";
      recgamma::Route route =
          gm_route == "reference" ? recgamma::Route::reference : recgamma::Route::product;
      recgamma::RecFactValue v = recgamma::recfact_eval(parse_complex(gm_z, d), route, gm_terms, d);
      t.header = {"z", "route", "value_re", "value_im", "tail_bound"};
      t.rows.push_back({gm_z, gm_route, fmt(v.value.re), fmt(v.value.im), fmt(v.tail_bound)});
    } else if (*gm_liouville) {
      command = "gamma liouville";
      Complex z = parse_complex(gm_z, d);
      recgamma::LiouvilleValue v = recgamma::liouville_fourier(z, d);
      // The real-line transform is Gamma(iz), not the reciprocal factorial;
      // both comparisons are reported side by side rather than reconciled.
      Complex recip = recgamma::recfact_eval(z, recgamma::Route::reference, 0, d).value;
      t.header = {"z", "value_re", "value_im", "gamma_iz_re", "gamma_iz_im", "gap_vs_gamma",
                  "recip_fact_re", "recip_fact_im", "gap_vs_recip_fact"};
      t.rows.push_back({gm_z, fmt(v.value.re), fmt(v.value.im), fmt(v.reference.re),
                        fmt(v.reference.im), fmt(v.gap), fmt(recip.re), fmt(recip.im),
                        fmt(abs(v.value - recip))});
    } else if (*mc_sample) {
      command = "mc sample";
      ensemble::EnsembleSample s = ensemble::sample_ensemble(mc_N, cfg.seed, mc_index);
      t.header = {"i", "j", "re", "im"};
      for (int i = 0; i < s.N; ++i)
        for (int j = 0; j < s.N; ++j) {
          std::complex<double> e = s.matrix[static_cast<size_t>(i) * s.N + j];
          t.rows.push_back(
              {std::to_string(i), std::to_string(j), fmt(e.real()), fmt(e.imag())});
        }
    } else if (*mc_expect) {
      command = "mc expect";
      std::complex<double> z;
      {
        Complex zz = parse_complex(mc_z, 30);
        z = {zz.re.to_double(), zz.im.to_double()};
      }
      ensemble::Observable obs = mc_obs == "det_shift"   ? ensemble::Observable::det_shift(z)
                                 : mc_obs == "resolvent" ? ensemble::Observable::resolvent(z)
                                                         : ensemble::Observable::trace_power(mc_k);
      ensemble::McEstimate e = ensemble::expect_observable(mc_N, obs, mc_samples, cfg.seed);
      t.header = {"N", "observable", "mean_re", "mean_im", "std_error", "samples", "seed"};
      t.rows.push_back({std::to_string(mc_N), mc_obs, fmt(e.mean.real()), fmt(e.mean.imag()),
                        fmt(e.std_error), std::to_string(e.samples), std::to_string(e.seed)});
    } else if (*mc_variance) {
      command = "mc variance";
      std::vector<int> ns;
      std::istringstream in(mc_nlist);
      std::string item;
      while (std::getline(in, item, ',')) ns.push_back(std::stoi(item));
      ensemble::VarianceScaling v = ensemble::variance_scaling(ns, mc_samples, cfg.seed);
      t.header = {"N", "variance", "slope", "ci_low", "ci_high"};
      for (const auto& [n, var] : v.variances)
        t.rows.push_back(
            {std::to_string(n), fmt(var), fmt(v.slope), fmt(v.ci_low), fmt(v.ci_high)});
    } else if (*mc_resolvent) {
      command = "mc resolvent";
      std::vector<double> grid;
      for (long i = 0; i < mc_points; ++i)
        grid.push_back(mc_from + (mc_to - mc_from) * static_cast<double>(i) /
                                     static_cast<double>(mc_points - 1));
      ensemble::ResolventInverse r =
          ensemble::empirical_resolvent_inverse(mc_N, grid, mc_samples, cfg.seed);
      t.header = {"z", "r", "max_inversion_gap"};
      for (size_t i = 0; i < r.grid.size(); ++i)
        t.rows.push_back({fmt(r.grid[i]), fmt(r.r_values[i]), fmt(r.max_inversion_gap)});
    } else if (*cmp_kernels) {
      command = "compare kernels";
      double a = cmp_from, b = cmp_to;
      long pts = cmp_points;
      ThetaTailBudget bd =
          theta::make_budget(theta::Variant::phi_derived, Scalar(a, d), d, cfg.theta_tail_margin);
      ThetaTailBudget bl = theta::make_budget(theta::Variant::phi_paper_literal, Scalar(a, d), d,
                                              cfg.theta_tail_margin);
      t.header = {"u", "phi_derived", "phi_paper_literal", "gap"};
      Scalar max_gap(0L, d);
      for (long i = 0; i < pts; ++i) {
        double u = a + (b - a) * static_cast<double>(i) / static_cast<double>(pts - 1);
        Scalar vd = theta::kernel_eval(theta::Variant::phi_derived, Scalar(u, d), bd);
        Scalar vl = theta::kernel_eval(theta::Variant::phi_paper_literal, Scalar(u, d), bl);
        Scalar gap = abs(vd - vl);
        max_gap = max(max_gap, gap);
        t.rows.push_back({fmt(u), fmt(vd), fmt(vl), fmt(gap)});
      }
      t.rows.push_back({"max", "", "", fmt(max_gap)});
    } else {
      std::cerr << app.help() << "\n";
      return 0;
    }

    double wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    emit(cfg, command, t, wall_ms);
    return 0;
  } catch (const Error& e) {
    json err{{"error", true}, {"code", std::string(e.what()).substr(0, std::string(e.what()).find(':'))},
             {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err{{"error", true}, {"code", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
