// maass_kit: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid parameters or usage,
// 3 certification failure (a truncation, quadrature or step could not be
// certified), 4 file I/O error, 5 internal consistency error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "maass/asymptotics.hpp"
#include "maass/characters.hpp"
#include "maass/decomposition.hpp"
#include "maass/series_json.hpp"
#include "maass/special.hpp"
#include "maass/transformations.hpp"

using namespace maass;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "maass-kit/1";

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kUncertified = 3, kIo = 4, kInternal = 5 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  long m = 4;
  long n = 2;
  long ell = 0;
  long order = 40;
  int N = 3;
  std::vector<std::string> t_grid = {"0.2", "0.1", "0.05"};
  long j = 0;  // 0: every j
  std::string tau = "0.3,0.8";
  int digits = 30;
  double tol = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  int points = 20;
  std::string suite = "all";
  std::string output;
  std::string format = "json";
};

Json config_json(const RunConfig& c) {
  Json t = Json::array();
  for (const auto& s : c.t_grid) t.push_back(s);
  return Json{{"command", c.command}, {"m", c.m},          {"n", c.n},         {"ell", c.ell},
              {"order", c.order},     {"N", c.N},          {"t", t},           {"j", c.j},
              {"tau", c.tau},         {"digits", c.digits}, {"tol", c.tol},    {"seed", c.seed},
              {"points", c.points},   {"suite", c.suite},  {"format", c.format}};
}

std::string rs(const Real& x, int digits) { return format_real(x, digits); }

Json cjson(const Complex& z, int digits) { return Json{{"re", rs(z.real(), digits)}, {"im", rs(z.imag(), digits)}}; }

Complex parse_tau(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidArgument("tau must be given as 're,im'");
  try {
    return Complex(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse tau '" + s + "'");
  }
}

Real parse_t(const std::string& s) {
  try {
    return parse_real(s);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse t value '" + s + "'");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(cells[i]);
  }
  return line + "\n";
}

// Exponent k/den as an exact string.
std::string exponent_string(long k, long den) {
  mpq_class e(k, den);
  e.canonicalize();
  return e.get_str();
}

void series_csv_rows(std::ostringstream& os, const std::string& label, const QSeries& s, int digits) {
  for (const auto& [k, c] : s.terms()) {
    const Complex v = c.to_complex();
    os << csv_row({label, exponent_string(k, s.den()), c.re().get_str(), c.im().get_str(), std::to_string(c.pi_exp()),
                   rs(v.real(), digits), rs(v.imag(), digits)});
  }
}

// ---------------------------------------------------------------- commands

std::string cmd_characters(const RunConfig& c) {
  CharacterParams{c.m, c.n, c.ell, c.order}.validate();
  const QSeries chf = chF_coefficient(c.m, c.n, c.ell, c.order);
  const QSeries tr = tr_character(c.m, c.n, c.ell, c.order);
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_row({"series", "q_exponent", "re", "im", "pi_exp", "re_float", "im_float"});
    series_csv_rows(os, "chF", chf, c.digits);
    series_csv_rows(os, "tr", tr, c.digits);
    return os.str();
  }
  Json j{{"schema", kSchema}, {"config", config_json(c)}};
  j["params"] = Json{{"m", c.m}, {"n", c.n}, {"ell", c.ell}, {"T", c.order}};
  j["series"] = Json{{"chF", Json::parse(to_json(chf).dump())}, {"tr", Json::parse(to_json(tr).dump())}};
  return j.dump(2) + "\n";
}

std::string cmd_asymptotics(const RunConfig& c) {
  CharacterParams{c.m, c.n, c.ell, 1}.validate();
  if (c.N < 0) throw InvalidArgument("requires N >= 0");
  if (c.t_grid.empty()) throw InvalidArgument("requires a nonempty t grid");
  std::vector<Real> ts;
  for (const auto& s : c.t_grid) {
    ts.push_back(parse_t(s));
    if (!(ts.back() > 0)) throw InvalidArgument("requires t > 0");
  }
  const auto ex = AsymptoticExpansion::build(c.m, c.n, c.ell, c.N);
  struct Row {
    std::string t;
    Real asym, truth, err_bound, ratio, relerr;
    std::string err_ratio;
  };
  std::vector<Row> rows;
  for (size_t i = 0; i < ts.size(); ++i) {
    const Real a = ex.evaluate(ts[i]);
    const CertifiedReal tr = tr_character_numeric(c.m, c.n, c.ell, ts[i], c.digits);
    Row r{c.t_grid[i], a, tr.value, tr.abs_error, a / tr.value, abs(a / tr.value - 1), ""};
    if (!rows.empty()) r.err_ratio = rs(rows.back().relerr / r.relerr, 12);
    rows.push_back(r);
  }
  const int fd = std::min(c.digits, 30);
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_row({"table", "r_or_t", "exact", "float", "character", "ratio", "relative_error", "error_ratio"});
    for (int r = 0; r <= c.N; ++r) {
      const auto& a = ex.coeffs[static_cast<size_t>(r)];
      os << csv_row({"a_r", std::to_string(r), a.to_string(), rs(a.evaluate().real(), fd), "", "", "", ""});
    }
    for (const auto& r : rows) {
      os << csv_row({"compare", r.t, "", rs(r.asym, fd), rs(r.truth, fd), rs(r.ratio, fd), rs(r.relerr, 6), r.err_ratio});
    }
    return os.str();
  }
  Json j{{"schema", kSchema}, {"config", config_json(c)}};
  j["euler_base_case"] = "classical Euler numbers 2^k E_k(1/2)";
  j["expected_error_ratio"] = 1L << (c.N + 1);
  Json coeffs = Json::array();
  for (int r = 0; r <= c.N; ++r) {
    const auto& a = ex.coeffs[static_cast<size_t>(r)];
    coeffs.push_back(Json{{"r", r}, {"exact", a.to_string()}, {"float", rs(a.evaluate().real(), fd)}});
  }
  j["a"] = coeffs;
  Json cmp = Json::array();
  for (const auto& r : rows) {
    Json e{{"t", r.t}, {"asymptotic", rs(r.asym, fd)}, {"character", rs(r.truth, fd)},
           {"character_error_bound", rs(r.err_bound, 6)}, {"ratio", rs(r.ratio, fd)}, {"relative_error", rs(r.relerr, 6)}};
    e["error_ratio"] = r.err_ratio.empty() ? Json(nullptr) : Json(r.err_ratio);
    cmp.push_back(e);
  }
  j["comparison"] = cmp;
  return j.dump(2) + "\n";
}

std::string cmd_dtilde(const RunConfig& c) {
  CharacterParams{c.m, c.n, 0, c.order}.validate(true);
  const auto all = dtilde_all(c.m, c.n, c.order);
  std::vector<long> js;
  if (c.j == 0) {
    for (long k = 1; k <= c.n / 2; ++k) js.push_back(k);
  } else {
    if (c.j < 1 || 2 * c.j > c.n) throw InvalidArgument("requires 1 <= j <= n/2");
    js.push_back(c.j);
  }
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_row({"series", "q_exponent", "re", "im", "pi_exp", "re_float", "im_float"});
    for (long k : js) series_csv_rows(os, "Dtilde_" + std::to_string(2 * k), all[static_cast<size_t>(k - 1)], c.digits);
    for (long k : js) {
      const auto d = d_from_dtilde(c.m, c.n, 2 * k, all);
      for (size_t p = 0; p < d.coeffs.size(); ++p) {
        series_csv_rows(os, "D_" + std::to_string(2 * k) + "_w^" + std::to_string(p), d.coeffs[p], c.digits);
      }
    }
    return os.str();
  }
  Json j{{"schema", kSchema}, {"config", config_json(c)}};
  j["params"] = Json{{"m", c.m}, {"n", c.n}, {"T", c.order}};
  Json dt = Json::array(), dd = Json::array();
  for (long k : js) {
    dt.push_back(Json{{"j", k}, {"index", 2 * k}, {"series", Json::parse(to_json(all[static_cast<size_t>(k - 1)]).dump())}});
    const auto d = d_from_dtilde(c.m, c.n, 2 * k, all);
    Json w = Json::array();
    for (const auto& s : d.coeffs) w.push_back(Json::parse(to_json(s).dump()));
    dd.push_back(Json{{"r", 2 * k}, {"w", "(m-n)/(8 pi v)"}, {"coefficients_of_w_powers", w}});
  }
  j["dtilde"] = dt;
  j["d"] = dd;
  return j.dump(2) + "\n";
}

std::string cmd_decompose(const RunConfig& c) {
  const Complex tau = parse_tau(c.tau);
  const auto ctx = DecompositionContext::make(c.m, c.n, tau, c.digits);
  const Decomposer dec(ctx);
  const int fd = std::min(c.digits, 30);
  SampleRng rng(c.seed);

  Real decomp = 0;
  for (int i = 0; i < c.points; ++i) {
    Complex z;
    do {
      z = Real(rng.uniform(-0.5, 0.5)) + Real(rng.uniform(-0.5, 0.5)) * tau;
    } while (lattice_distance(z, tau) < Real("0.05"));
    const Complex phi = dec.phi(z);
    decomp = std::max(decomp, abs(phi - dec.phi_F(z) - dec.phi_P(z)) / std::max(Real(1), abs(phi)));
  }
  Real period = 0;
  for (long l = 0; l < ctx.period(); ++l) {
    const Complex h = dec.h()[static_cast<size_t>(l)];
    period = std::max(period, abs(h - h_ell(ctx, l + ctx.period())) / std::max(Real(1), abs(h)));
  }
  // Modulus law of D_r under (1,0;2,1).
  const ModularMatrix g(1, 0, 2, 1);
  const Complex J = g.j_factor(tau);
  Real nearly = 0;
  for (long r = 2; r <= c.n; r += 2) {
    const Complex lhs = d_num(c.m, c.n, r, g.act(tau), c.digits);
    const Complex rhs = boost::multiprecision::pow(J, static_cast<int>(ctx.index() - r)) * dec.d()[static_cast<size_t>(r / 2 - 1)];
    nearly = std::max(nearly, abs(abs(lhs) - abs(rhs)) / std::max(abs(lhs), abs(rhs)));
  }
  Real rewrite = 0;
  for (long l = 0; l < ctx.period(); ++l) {
    const Complex a = dop_apply(ctx, 1, l);
    rewrite = std::max(rewrite, abs(a - rewrite_dop_rhs(ctx, 1, l, 1e-3)) / std::max(Real(1), abs(a)));
  }
  Real completion = 0;
  for (const Complex& z : {Complex(Real("0.17"), Real("0.05")), Complex(Real("-0.31"), Real("0.12"))}) {
    const Complex phi = dec.phi(z);
    completion = std::max(completion, abs(dec.phi_F_hat(z) + dec.phi_P_hat(z) - phi) / std::max(Real(1), abs(phi)));
  }

  const auto [lo, hi] = gaussian_window(pi() * tau.imag() / Real(ctx.period()), Real(0), c.digits);
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_row({"quantity", "index", "re", "im"});
    auto put = [&](const std::string& q, long i, const Complex& v) {
      os << csv_row({q, std::to_string(i), rs(v.real(), fd), rs(v.imag(), fd)});
    };
    for (long l = 0; l < ctx.period(); ++l) put("h", l, dec.h()[static_cast<size_t>(l)]);
    for (long l = 0; l < ctx.period(); ++l) put("h_hat", l, dec.h_hat(l));
    for (size_t k = 0; k < dec.dtilde().size(); ++k) put("Dtilde", static_cast<long>(2 * k + 2), dec.dtilde()[k]);
    for (size_t k = 0; k < dec.d().size(); ++k) put("D", static_cast<long>(2 * k + 2), dec.d()[k]);
    return os.str();
  }
  Json j{{"schema", kSchema}, {"config", config_json(c)}};
  j["m"] = c.m;
  j["n"] = c.n;
  j["tau"] = cjson(tau, fd);
  Json h = Json::array(), hh = Json::array(), dt = Json::array(), d = Json::array();
  for (long l = 0; l < ctx.period(); ++l) {
    h.push_back(cjson(dec.h()[static_cast<size_t>(l)], fd));
    hh.push_back(cjson(dec.h_hat(l), fd));
  }
  for (const auto& x : dec.dtilde()) dt.push_back(cjson(x, fd));
  for (const auto& x : dec.d()) d.push_back(cjson(x, fd));
  j["h"] = h;
  j["h_hat"] = hh;
  j["dtilde"] = dt;
  j["d"] = d;
  j["residuals"] = Json{{"decomposition", rs(decomp, 6)},
                        {"periodicity", rs(period, 6)},
                        {"nearlyhol", rs(nearly, 6)},
                        {"rewriteDop", rs(rewrite, 6)},
                        {"completion", rs(completion, 6)}};
  j["truncations"] = Json{{"theta_lambda_window", Json::array({lo * ctx.period(), hi * ctx.period()})},
                          {"cauchy_radius", rs(nonzero_lattice_min(tau) / 2, 12)},
                          {"random_points", c.points}};
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

std::string cmd_verify(const RunConfig& c, bool& all_pass) {
  if (!suite_exists(c.suite)) throw InvalidArgument("unknown suite '" + c.suite + "'");
  SuiteParams p;
  p.seed = c.seed;
  p.digits = c.digits;
  p.tolerance = c.tol;
  p.points = c.points;
  p.m = c.m;
  p.n = c.n;
  p.ell = c.ell;
  const auto reports = run_suites(c.suite, p);
  all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (c.format == "csv") {
    std::ostringstream os;
    os << csv_row({"suite", "pass", "max_residual", "tolerance", "points", "seed", "witness"});
    for (const auto& r : reports) {
      std::ostringstream mr, tl;
      mr << r.max_residual;
      tl << r.tolerance;
      os << csv_row({r.suite, r.pass ? "true" : "false", mr.str(), tl.str(), std::to_string(r.points), std::to_string(r.seed), r.witness});
    }
    return os.str();
  }
  Json j{{"schema", kSchema}, {"config", config_json(c)}};
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  j["suites"] = arr;
  j["pass"] = all_pass;
  return j.dump(2) + "\n";
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + c.output + "'");
  f << text;
  if (!f) throw IoError("cannot write output file '" + c.output + "'");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Kac-Wakimoto character, decomposition and verification toolkit"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.add_option("--m", cfg.m, "m")->capture_default_str();
  app.add_option("--n", cfg.n, "n")->capture_default_str();
  app.add_option("--ell", cfg.ell, "zeta exponent / theta index l")->capture_default_str();
  app.add_option("--order,-T", cfg.order, "q-truncation order T")->capture_default_str();
  app.add_option("--N", cfg.N, "asymptotic order N")->capture_default_str();
  app.add_option("--t", cfg.t_grid, "t grid for asymptotics")->delimiter(',')->capture_default_str();
  app.add_option("--j", cfg.j, "Dtilde_{2j} index, 0 for all")->capture_default_str();
  app.add_option("--tau", cfg.tau, "tau as 're,im'")->capture_default_str();
  app.add_option("--digits", cfg.digits, "working digits (<= 33)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "pass/fail tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "sample-point seed")->capture_default_str();
  app.add_option("--points", cfg.points, "random points per suite")->capture_default_str();
  app.add_option("--suite", cfg.suite, "suite name or 'all'")->capture_default_str();
  app.add_option("--output,-o", cfg.output, "output file (stdout if omitted)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"characters", "chF_l and tr_l q-expansions"},
      {"asymptotics", "a_r table and expansion versus character values"},
      {"dtilde", "exact Dtilde_{2j} and D_{2j} series"},
      {"decompose", "finite/polar decomposition data at one tau"},
      {"verify", "run transformation suites"}};
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << e.what() << "\n";
    return kIo;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    bool pass = true;
    std::string out;
    if (cfg.points < 1) throw InvalidArgument("points must be positive");
    Precision{cfg.digits, cfg.tol}.validate();
    if (cfg.command == "characters") {
      out = cmd_characters(cfg);
    } else if (cfg.command == "asymptotics") {
      out = cmd_asymptotics(cfg);
    } else if (cfg.command == "dtilde") {
      out = cmd_dtilde(cfg);
    } else if (cfg.command == "decompose") {
      out = cmd_decompose(cfg);
    } else {
      out = cmd_verify(cfg, pass);
    }
    emit(cfg, out);
    return pass ? kOk : kVerifyFailed;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const PoleOnLattice& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const PrecisionUnreachable& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kUncertified;
  } catch (const QuadratureNotConverged& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kUncertified;
  } catch (const PoleTooClose& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kUncertified;
  } catch (const StepUnderflow& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kUncertified;
  } catch (const InconsistentMultiplier& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return kUncertified;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
