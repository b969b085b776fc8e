#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperbasis/diffops.hpp"
#include "hyperbasis/fourier.hpp"

using namespace hyperbasis;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

constexpr double kOrthoTol = 1e-10;
constexpr double kEigenTol = 1e-5;
constexpr double kKernelTol = 1e-8;
constexpr double kUnitTol = 1e-10;
constexpr double kSeriesSlack = 1e-10;
constexpr double kParsevalTol = 1e-10;

struct RunConfig {
  std::string command;
  std::string domain = "surface-cone";
  std::string family;  // empty: gegenbauer on double domains, jacobi on the upper cone
  int d = 2;
  double rho = 0.0;
  double beta = 0.0;
  double gamma = 0.5;
  double mu = 0.5;
  int nmax = -1;  // -1: command default
  std::vector<double> delta = {0.0};
  std::vector<int> n_list = {8, 16, 32};
  double r = 0.5;
  std::uint64_t seed = 20240611;
  std::string out;
  std::string format = "json";
  std::string op;
  std::string parity = "auto";
  std::string probe = "brink";
  std::string function = "bump";
  int samples = 30;
  int pairs = 0;  // 0: command default
  std::optional<int> quad_points;
};

json to_json(const RunConfig& c, const WeightParams& p) {
  json j;
  j["command"] = c.command;
  j["domain"] = c.domain;
  j["params"] = describe(p);
  j["d"] = p.d;
  j["rho"] = p.rho;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["mu"] = p.mu;
  j["nmax"] = c.nmax;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["parity"] = c.parity;
  if (!c.op.empty()) j["op"] = c.op;
  if (c.command == "cesaro") {
    j["n"] = c.n_list;
    j["delta"] = c.delta;
    j["probe"] = c.probe;
    j["function"] = c.function;
  }
  if (c.command == "mehler") j["r"] = c.r;
  if (c.command == "expand") j["function"] = c.function;
  if (c.command == "eigencheck") j["samples"] = c.samples;
  if (c.pairs > 0) j["pairs"] = c.pairs;
  j["quad_points"] = c.quad_points ? json(*c.quad_points) : json(nullptr);
  return j;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Report {
  json tolerances = json::object();
  json result = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
};

bool is_upper(const std::string& domain) { return domain.rfind("upper-cone", 0) == 0; }

WeightParams resolve_params(RunConfig& c) {
  static const std::vector<std::string> domains = {"surface-cone", "surface-hyp", "solid-cone",
                                                   "solid-hyp",    "upper-cone-surface",
                                                   "upper-cone-solid"};
  if (std::find(domains.begin(), domains.end(), c.domain) == domains.end())
    throw ArgumentError("unknown domain '" + c.domain + "'");
  bool upper = is_upper(c.domain);
  if (c.family.empty()) c.family = upper ? "jacobi" : "gegenbauer";
  WeightParams p;
  if (c.family == "gegenbauer") p.family = WeightFamily::Gegenbauer;
  else if (c.family == "hermite") p.family = WeightFamily::Hermite;
  else if (c.family == "jacobi") p.family = WeightFamily::JacobiUpper;
  else if (c.family == "laguerre") p.family = WeightFamily::LaguerreUpper;
  else throw ArgumentError("unknown family '" + c.family + "'");
  if (p.upper() != upper)
    throw ArgumentError("family '" + c.family + "' does not live on domain '" + c.domain +
                        "'");
  p.kind = c.domain.find("solid") != std::string::npos ? DomainKind::Solid : DomainKind::Surface;
  bool hyp = c.domain.find("hyp") != std::string::npos;
  if (hyp && c.rho == 0.0) c.rho = 1.0;
  if (!hyp && c.rho != 0.0)
    throw ParameterError("domain '" + c.domain + "' requires rho = 0");
  if (hyp && !(c.rho > 0.0)) throw ParameterError("hyperboloid domains require rho > 0");
  p.d = c.d;
  p.rho = c.rho;
  p.beta = c.beta;
  p.gamma = p.family == WeightFamily::Gegenbauer || p.family == WeightFamily::JacobiUpper
                ? c.gamma
                : 0.0;
  p.mu = p.solid() ? c.mu : 0.0;
  return p;
}

Parity parse_parity(const std::string& s) {
  if (s == "full") return Parity::Full;
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ArgumentError("unknown parity '" + s + "' (expected full, even or odd)");
}

std::string parity_name(Parity p) {
  return p == Parity::Full ? "full" : p == Parity::Even ? "even" : "odd";
}

Report ortho_check(const RunConfig& c, const WeightParams& p) {
  Parity parity = c.parity == "auto" ? Parity::Full : parse_parity(c.parity);
  validate_params(p, parity == Parity::Odd);
  if (!normalizable(p)) throw CapabilityError("Gram check needs a normalizable weight");
  auto bases = basis_upto(p, c.nmax, parity);
  int total = 0;
  for (const auto& b : bases) total += b.size();
  DomainRule rule = domain_rule(p, 2 * c.nmax + 2);
  MatrixXd G = MatrixXd::Zero(total, total);
  for (int i = 0; i < rule.size(); ++i) {
    VectorXd v(total);
    int off = 0;
    for (const auto& b : bases) {
      v.segment(off, b.size()) = b.eval(rule.points[i]).cwiseQuotient(b.norms().cwiseSqrt());
      off += b.size();
    }
    G.noalias() += rule.weights[i] * v * v.transpose();
  }
  Report r;
  r.tolerances["max_offdiag"] = kOrthoTol;
  r.tolerances["max_diag_deviation"] = kOrthoTol;
  r.header = {"n", "dim", "max_offdiag", "max_diag_deviation"};
  double off_max = 0.0, diag_max = 0.0;
  json degrees = json::array();
  int off = 0;
  for (const auto& b : bases) {
    double o = 0.0, g = 0.0;
    for (int i = off; i < off + b.size(); ++i) {
      for (int j = 0; j < off + b.size(); ++j)
        if (j != i) o = std::max(o, std::abs(G(i, j)));
      g = std::max(g, std::abs(G(i, i) - 1.0));
    }
    off += b.size();
    off_max = std::max(off_max, o);
    diag_max = std::max(diag_max, g);
    degrees.push_back({{"n", b.degree()}, {"dim", b.size()}, {"max_offdiag", o},
                       {"max_diag_deviation", g}});
    r.rows.push_back({std::to_string(b.degree()), std::to_string(b.size()), num(o), num(g)});
  }
  r.result["parity"] = parity_name(parity);
  r.result["dimension"] = total;
  r.result["quadrature_points"] = rule.size();
  r.result["max_offdiag"] = off_max;
  r.result["max_diag_deviation"] = diag_max;
  r.result["degrees"] = degrees;
  r.pass = off_max < kOrthoTol && diag_max < kOrthoTol;
  return r;
}

Report eigencheck_cmd(const RunConfig& c, const WeightParams& p) {
  const OperatorSpec& op = registry(c.op);
  EigencheckOptions o;
  o.n_max = c.nmax;
  o.samples = c.samples;
  o.seed = c.seed;
  if (c.parity != "auto") o.parity = parse_parity(c.parity);
  EigenReport e = eigencheck(op, p, o);
  Report r;
  r.tolerances["relative_residual"] = kEigenTol;
  r.tolerances["fd_step"] = o.fd.step;
  r.tolerances["fd_order"] = o.fd.order;
  r.tolerances["margin"] = o.margin;
  r.header = {"n", "m", "eigenvalue", "max_residual"};
  json rows = json::array();
  for (const auto& row : e.rows) {
    double lam = op.eigenvalue(row.n, p) + 0.0;
    rows.push_back({{"n", row.n}, {"m", row.m}, {"eigenvalue", lam},
                    {"max_residual", row.max_residual}});
    r.rows.push_back({std::to_string(row.n), std::to_string(row.m), num(lam),
                      num(row.max_residual)});
  }
  r.result["op"] = e.op;
  r.result["requirement"] = op.requirement();
  r.result["parity"] = parity_name(e.parity);
  r.result["samples"] = e.samples;
  r.result["max_residual"] = e.max_residual;
  r.result["rows"] = rows;
  r.pass = e.max_residual < kEigenTol;
  return r;
}

Report kernel_compare(const RunConfig& c, const WeightParams& p) {
  Parity parity = c.parity == "auto" ? (p.rho > 0.0 ? Parity::Even : Parity::Full)
                                     : parse_parity(c.parity);
  validate_params(p);
  if (!has_addition_formula(p))
    throw CapabilityError("no addition formula for " + describe(p) +
                          ": requires a Gegenbauer weight with surface beta, gamma >= 0 or "
                          "solid beta >= 1/2, gamma, mu >= 0");
  if (p.rho > 0.0 && parity != Parity::Even)
    throw CapabilityError("the addition formula on the hyperboloid (rho > 0) covers the even "
                          "parity space only");
  int pairs = c.pairs > 0 ? c.pairs : 50;
  auto pts = sample_points(p, 2 * pairs, c.seed);
  KernelSpec sum{p, parity, Route::Sum}, integral{p, parity, Route::Integral};
  Report r;
  r.tolerances["max_discrepancy"] = kKernelTol;
  r.tolerances["degree_zero"] = kUnitTol;
  r.header = {"n", "max_discrepancy", "max_abs_kernel"};
  json rows = json::array();
  double worst = 0.0, unit = 0.0;
  for (int n = 0; n <= c.nmax; ++n) {
    double disc = 0.0, mag = 0.0;
    for (int i = 0; i < pairs; ++i) {
      double s = kernel(sum, n, pts[2 * i], pts[2 * i + 1]);
      double a = kernel(integral, n, pts[2 * i], pts[2 * i + 1]);
      disc = std::max(disc, std::abs(s - a));
      mag = std::max(mag, std::abs(s));
      if (n == 0 && parity != Parity::Odd)
        unit = std::max({unit, std::abs(s - 1.0), std::abs(a - 1.0)});
    }
    worst = std::max(worst, disc);
    rows.push_back({{"n", n}, {"max_discrepancy", disc}, {"max_abs_kernel", mag}});
    r.rows.push_back({std::to_string(n), num(disc), num(mag)});
  }
  r.result["parity"] = parity_name(parity);
  r.result["pairs"] = pairs;
  r.result["max_discrepancy"] = worst;
  r.result["degree_zero_deviation"] = unit;
  r.result["rows"] = rows;
  r.pass = worst < kKernelTol && unit < kUnitTol;
  return r;
}

Report cesaro_cmd(const RunConfig& c, const WeightParams& p) {
  validate_params(p);
  SummabilityTable t = summability_table(p, parse_test_function(c.function), c.n_list, c.delta,
                                         parse_probe(c.probe));
  Report r;
  r.header = {"n", "delta", "probe", "lebesgue_value"};
  json rows = json::array();
  for (const auto& row : t.rows) {
    rows.push_back({{"n", row.n}, {"delta", row.delta}, {"probe", row.probe},
                    {"lebesgue_value", row.lebesgue_value}, {"error", row.error}});
    r.rows.push_back({std::to_string(row.n), num(row.delta), row.probe,
                      num(row.lebesgue_value)});
    r.pass = r.pass && std::isfinite(row.lebesgue_value) && std::isfinite(row.error);
  }
  r.result["test_function"] = t.test_function;
  r.result["rows"] = rows;
  return r;
}

Report mehler_cmd(const RunConfig& c, const WeightParams& p) {
  validate_params(p);
  bool hermite = p.family == WeightFamily::Hermite;
  if (!hermite && !has_addition_formula(p))
    throw CapabilityError("no closed Poisson kernel for " + describe(p) +
                          ": requires a Hermite weight (Mehler form) or a Gegenbauer weight "
                          "with an addition formula");
  int pairs = c.pairs > 0 ? c.pairs : 5;
  auto pts = sample_points(p, 2 * pairs, c.seed);
  Report r;
  r.tolerances["slack_beyond_tail_bound"] = kSeriesSlack;
  r.header = {"pair", "value", "series", "tail_bound", "difference"};
  json rows = json::array();
  for (int i = 0; i < pairs; ++i) {
    const PointCH& a = pts[2 * i];
    const PointCH& b = pts[2 * i + 1];
    double v = hermite ? mehler(p, c.r, a, b) : poisson_gegenbauer(p, c.r, a, b);
    TruncatedSeries s = poisson_series(p, c.r, c.nmax, a, b);
    double diff = std::abs(v - s.sum);
    bool ok = std::isfinite(s.tail_bound) &&
              diff <= s.tail_bound + kSeriesSlack * std::max(1.0, std::abs(v));
    r.pass = r.pass && ok;
    rows.push_back({{"pair", i}, {"value", v}, {"series", s.sum}, {"tail_bound", s.tail_bound},
                    {"difference", diff}, {"within_bound", ok}});
    r.rows.push_back({std::to_string(i), num(v), num(s.sum), num(s.tail_bound), num(diff)});
  }
  r.result["form"] = hermite ? "mehler" : "poisson";
  r.result["r"] = c.r;
  r.result["series_terms"] = c.nmax;
  r.result["rows"] = rows;
  return r;
}

Report expand_cmd(const RunConfig& c, const WeightParams& p) {
  Parity parity = c.parity == "auto" ? Parity::Full : parse_parity(c.parity);
  validate_params(p);
  if (!normalizable(p)) throw CapabilityError("expansions need a normalizable weight");
  TestFunction tf = parse_test_function(c.function);
  DomainFunction f = test_function(tf);
  ExpansionCoefficients e = expand(f, p, c.nmax, parity);
  DomainRule rule = domain_rule(p, fourier_quad_degree(2 * c.nmax, 0));
  double norm_sq = integrate(rule, [&](const PointCH& q) { double v = f(q); return v * v; });
  Report r;
  r.header = {"n", "m", "l", "coefficient"};
  json coeffs = json::array(), energy = json::array();
  for (int n = 0; n <= c.nmax; ++n) {
    const DegreeBasis& B = e.bases[n];
    for (int i = 0; i < B.size(); ++i) {
      const BasisIndex& k = B.indices()[i];
      double v = e.coefficients[n](i);
      coeffs.push_back({{"n", k.n}, {"m", k.m}, {"l", k.l}, {"coefficient", v}});
      r.rows.push_back({std::to_string(k.n), std::to_string(k.m), std::to_string(k.l), num(v)});
    }
    energy.push_back(e.parseval_sum(n));
  }
  double total = e.parseval_sum(c.nmax);
  // Polynomial test functions of degree <= nmax satisfy Parseval; others Bessel.
  int poly_degree = tf == TestFunction::One ? 0 : tf == TestFunction::Bump ? -1 : 2;
  bool exact = poly_degree >= 0 && poly_degree <= c.nmax && parity == Parity::Full;
  double scale = std::max(1.0, norm_sq);
  r.tolerances["parseval"] = kParsevalTol;
  r.pass = exact ? std::abs(total - norm_sq) <= kParsevalTol * scale
                 : total <= norm_sq + kParsevalTol * scale;
  r.result["parity"] = parity_name(parity);
  r.result["function"] = to_string(tf);
  r.result["norm_sq"] = norm_sq;
  r.result["parseval_cumulative"] = energy;
  r.result["check"] = exact ? "parseval" : "bessel";
  r.result["odd_max"] = e.odd_max();
  r.result["coefficients"] = coeffs;
  return r;
}

void write(const RunConfig& c, const WeightParams& p, const Report& r, std::ostream& os) {
  if (c.format == "json") {
    json j;
    j["version"] = kVersion;
    j["config"] = to_json(c, p);
    j["tolerances"] = r.tolerances;
    j["pass"] = r.pass;
    j["result"] = r.result;
    os << j.dump(2) << "\n";
    return;
  }
  os << "# version: " << kVersion << "\n";
  os << "# config: " << to_json(c, p).dump() << "\n";
  os << "# tolerances: " << r.tolerances.dump() << "\n";
  os << "# pass: " << (r.pass ? "true" : "false") << "\n";
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "\n";
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

int run(RunConfig& c, const std::set<std::string>& given) {
  WeightParams p;
  if (c.command == "eigencheck") {
    if (c.op.empty()) throw ArgumentError("eigencheck requires --op");
    const OperatorSpec& op = registry(c.op);
    p = default_params(op, c.d);
    if (given.count("--beta")) p.beta = c.beta;
    if (given.count("--gamma")) p.gamma = c.gamma;
    if (given.count("--mu")) p.mu = c.mu;
    if (given.count("--rho")) p.rho = c.rho;
    RunConfig probe = c;
    probe.rho = p.rho;
    if (given.count("--domain") || given.count("--family")) {
      WeightParams q = resolve_params(probe);
      if (q.family != p.family || q.kind != p.kind)
        throw CapabilityError(op.requirement());
    }
    c.domain = std::string(p.upper() ? "upper-cone-" : "") +
               (p.upper() ? (p.solid() ? "solid" : "surface")
                          : std::string(p.solid() ? "solid" : "surface") +
                                (p.rho > 0.0 ? "-hyp" : "-cone"));
  } else {
    p = resolve_params(c);
  }
  Report r;
  if (c.command == "ortho-check") r = ortho_check(c, p);
  else if (c.command == "eigencheck") r = eigencheck_cmd(c, p);
  else if (c.command == "kernel-compare") r = kernel_compare(c, p);
  else if (c.command == "cesaro") r = cesaro_cmd(c, p);
  else if (c.command == "mehler") r = mehler_cmd(c, p);
  else r = expand_cmd(c, p);
  if (c.out.empty()) {
    write(c, p, r, std::cout);
  } else {
    std::ofstream os(c.out);
    if (!os) throw ArgumentError("cannot open output file '" + c.out + "'");
    write(c, p, r, os);
  }
  if (!r.pass) std::cerr << c.command << ": tolerance check failed\n";
  return r.pass ? kExitPass : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomial bases on cones and hyperboloids"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);
  RunConfig c;
  if (const char* env = std::getenv("HYPERBASIS_QUAD_POINTS")) {
    int v = std::atoi(env);
    if (v > 0) c.quad_points = v;
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ortho-check", "Gram matrix of the orthonormalized basis"},
      {"eigencheck", "finite-difference eigenfunction residuals of an operator"},
      {"kernel-compare", "summation vs addition-formula reproducing kernels"},
      {"cesaro", "Cesaro summability table"},
      {"mehler", "closed Poisson kernel vs truncated series"},
      {"expand", "Fourier coefficients of a test function"}};
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--domain", c.domain, "surface-cone|surface-hyp|solid-cone|solid-hyp|"
                                        "upper-cone-surface|upper-cone-solid");
    s->add_option("--d", c.d, "space dimension d (2 or more)");
    s->add_option("--rho", c.rho, "hyperboloid waist rho (default 1 on -hyp domains)");
    s->add_option("--beta", c.beta);
    s->add_option("--gamma", c.gamma);
    s->add_option("--mu", c.mu);
    s->add_option("--family", c.family, "gegenbauer|hermite|jacobi|laguerre");
    s->add_option("--nmax", c.nmax, "largest degree");
    s->add_option("--seed", c.seed);
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--parity", c.parity)->check(CLI::IsMember({"auto", "full", "even", "odd"}));
    if (name == "eigencheck") {
      s->add_option("--op", c.op, "registered operator name")->required();
      s->add_option("--samples", c.samples)->check(CLI::PositiveNumber);
    }
    if (name == "kernel-compare" || name == "mehler") s->add_option("--pairs", c.pairs);
    if (name == "cesaro") {
      s->add_option("--delta", c.delta, "Cesaro orders")->expected(1, -1);
      s->add_option("--n", c.n_list, "degrees")->expected(1, -1);
      s->add_option("--probe", c.probe)->check(CLI::IsMember({"brink", "apex", "grid"}));
    }
    if (name == "mehler") s->add_option("--r", c.r, "Poisson radius in [0, 1)");
    if (name == "cesaro" || name == "expand")
      s->add_option("--function", c.function)
          ->check(CLI::IsMember({"one", "t2", "x1sq", "bump"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  std::set<std::string> given;
  for (const CLI::Option* o : sub->get_options())
    if (o->count() > 0) given.insert(o->get_name());
  if (c.nmax < 0) c.nmax = c.command == "mehler" ? 24 : c.command == "expand" ? 6 : 4;

  try {
    return run(c, given);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
