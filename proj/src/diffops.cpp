#include "hyperbasis/diffops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperbasis/errors.hpp"

namespace hyperbasis {

namespace {

using P = const WeightParams&;

double r2(P p) { return p.rho * p.rho; }

OperatorSpec spec(std::string name, WeightFamily family, DomainKind kind, bool hyperboloid,
                  double beta, Parity parity) {
  OperatorSpec o;
  o.name = std::move(name);
  o.family = family;
  o.kind = kind;
  o.hyperboloid = hyperboloid;
  o.beta = beta;
  o.parity = parity;
  return o;
}

std::vector<OperatorSpec> build() {
  std::vector<OperatorSpec> ops;
  auto add = [&](OperatorSpec s) { ops.push_back(std::move(s)); };
  const auto G = WeightFamily::Gegenbauer, H = WeightFamily::Hermite,
             J = WeightFamily::JacobiUpper, L = WeightFamily::LaguerreUpper;
  const auto S = DomainKind::Surface, V = DomainKind::Solid;
  auto one = [](double, P) { return 1.0; };
  auto minus_one = [](double, P) { return -1.0; };

  {
    OperatorSpec o = spec("sfConeGdiff", G, S, false, 0.0, Parity::Even);
    o.dtt = [](double t, P) { return 1.0 - t * t; };
    o.dt = [](double t, P p) { return -(2.0 * p.gamma + p.d) * t + (p.d - 1.0) / t; };
    o.lap0 = [](double t, P) { return 1.0 / (t * t); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.gamma + p.d - 1.0); };
    add(o);
  }
  {
    OperatorSpec o = spec("sfConeGdiffO", G, S, false, -1.0, Parity::Odd);
    o.dtt = [](double t, P) { return 1.0 - t * t; };
    o.dt = [](double t, P p) { return -(2.0 * p.gamma + p.d - 2.0) * t + (p.d - 3.0) / t; };
    o.zeroth = [](double t, P p) { return -(p.d - 3.0) / (t * t); };
    o.lap0 = [](double t, P) { return 1.0 / (t * t); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.gamma + p.d - 3.0); };
    add(o);
  }
  {
    OperatorSpec o = spec("sfHypGdiff", G, S, true, 0.0, Parity::Even);
    o.dtt = [](double t, P p) { return (1.0 + r2(p) - t * t) * (1.0 - r2(p) / (t * t)); };
    o.dt = [](double t, P p) {
      double A = 1.0 + r2(p) - t * t;
      return (A * r2(p) / (t * t) - (2.0 * p.gamma + p.d) * (t * t - r2(p))) / t +
             (p.d - 1.0) / t;
    };
    o.lap0 = [](double t, P p) { return 1.0 / (t * t - r2(p)); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.gamma + p.d - 1.0); };
    add(o);
  }
  {
    OperatorSpec o = spec("solidConeGdiff", G, V, false, 0.5, Parity::Even);
    o.dtt = [](double t, P) { return 1.0 - t * t; };
    o.lap_x = one;
    o.euler2 = minus_one;
    o.mixed = [](double t, P) { return 2.0 / t * (1.0 - t * t); };
    o.dt = [](double t, P p) {
      return (2.0 * p.mu + p.d) / t - t - (2.0 * p.gamma + 2.0 * p.mu + p.d) * t;
    };
    o.euler = [](double, P p) { return -(2.0 * p.gamma + 2.0 * p.mu + p.d); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.gamma + 2.0 * p.mu + p.d); };
    add(o);
  }
  {
    // Mixed term (2/t)(1-t^2) E (d_t - 1/t).
    OperatorSpec o = spec("solidConeGdiffO", G, V, false, -0.5, Parity::Odd);
    o.dtt = [](double t, P) { return 1.0 - t * t; };
    o.lap_x = one;
    o.euler2 = minus_one;
    o.mixed = [](double t, P) { return 2.0 / t * (1.0 - t * t); };
    o.euler = [](double t, P p) {
      return -1.0 - 2.0 / (t * t) * (1.0 - t * t) - (2.0 * p.gamma + 2.0 * p.mu + p.d - 1.0);
    };
    o.dt = [](double t, P p) {
      return (2.0 * p.mu + p.d - 2.0) / t - (2.0 * p.gamma + 2.0 * p.mu + p.d - 1.0) * t;
    };
    o.zeroth = [](double t, P p) { return -(2.0 * p.mu + p.d - 2.0) / (t * t); };
    o.eigenvalue = [](int n, P p) {
      return -n * (n + 2.0 * p.gamma + 2.0 * p.mu + p.d - 2.0);
    };
    add(o);
  }
  {
    OperatorSpec o = spec("solidHypGdiff", G, V, true, 0.5, Parity::Even);
    o.dtt = [](double t, P p) { return (1.0 + r2(p) - t * t) * (1.0 - r2(p) / (t * t)); };
    o.lap_x = one;
    o.euler2 = minus_one;
    o.mixed = [](double t, P p) { return 2.0 / t * (1.0 + r2(p) - t * t); };
    o.dt = [](double t, P p) {
      double A = 1.0 + r2(p) - t * t;
      return (A * r2(p) / (t * t) + 2.0 * p.mu + p.d) / t -
             (2.0 * p.gamma + 2.0 * p.mu + p.d + 1.0) * (1.0 - r2(p) / (t * t)) * t;
    };
    o.euler = [](double, P p) { return 1.0 - (2.0 * p.gamma + 2.0 * p.mu + p.d + 1.0); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.gamma + 2.0 * p.mu + p.d); };
    add(o);
  }
  auto hermite_ev = [](int n, P) { return -2.0 * n; };
  {
    OperatorSpec o = spec("sfconeHdiff", H, S, false, 0.0, Parity::Even);
    o.dtt = one;
    o.dt = [](double t, P p) { return -2.0 * t + (p.d - 1.0) / t; };
    o.lap0 = [](double t, P) { return 1.0 / (t * t); };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    OperatorSpec o = spec("sfconeHdiffO", H, S, false, -1.0, Parity::Odd);
    o.dtt = one;
    o.dt = [](double t, P p) { return -2.0 * t + (p.d - 3.0) / t; };
    o.zeroth = [](double t, P p) { return -(p.d - 3.0) / (t * t); };
    o.lap0 = [](double t, P) { return 1.0 / (t * t); };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    OperatorSpec o = spec("sfHypHdiff", H, S, true, 0.0, Parity::Even);
    o.dtt = [](double t, P p) { return 1.0 - r2(p) / (t * t); };
    o.dt = [](double t, P p) {
      return (r2(p) / (t * t) - 2.0 * (t * t - r2(p))) / t + (p.d - 1.0) / t;
    };
    o.lap0 = [](double t, P p) { return 1.0 / (t * t - r2(p)); };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    // Mixed term (2/t) E d_t.
    OperatorSpec o = spec("solidConeHdiff", H, V, false, 0.5, Parity::Even);
    o.dtt = one;
    o.lap_x = one;
    o.mixed = [](double t, P) { return 2.0 / t; };
    o.dt = [](double t, P p) { return -2.0 * t + (2.0 * p.mu + p.d) / t; };
    o.euler = [](double, P) { return -2.0; };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    OperatorSpec o = spec("solidConeHdiffO", H, V, false, -0.5, Parity::Odd);
    o.dtt = one;
    o.lap_x = one;
    o.mixed = [](double t, P) { return 2.0 / t; };
    o.euler = [](double t, P) { return -2.0 / (t * t) - 2.0; };
    o.dt = [](double t, P p) { return -2.0 * t + (2.0 * p.mu + p.d - 2.0) / t; };
    o.zeroth = [](double t, P p) { return -(2.0 * p.mu + p.d - 2.0) / (t * t); };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    // Mixed term (2/t) E d_t.
    OperatorSpec o = spec("solidHypHdiff", H, V, true, 0.5, Parity::Even);
    o.dtt = [](double t, P p) { return 1.0 - r2(p) / (t * t); };
    o.lap_x = one;
    o.mixed = [](double t, P) { return 2.0 / t; };
    o.dt = [](double t, P p) {
      return -2.0 / t * (t * t - r2(p)) + (r2(p) / (t * t) + 2.0 * p.mu + p.d) / t;
    };
    o.euler = [](double, P) { return -2.0; };
    o.eigenvalue = hermite_ev;
    add(o);
  }
  {
    OperatorSpec o = spec("diffJsf", J, S, false, -1.0, Parity::Full);
    o.dtt = [](double t, P) { return t * (1.0 - t); };
    o.dt = [](double t, P p) { return p.d - 1.0 - (p.d + p.gamma) * t; };
    o.lap0 = [](double t, P) { return 1.0 / t; };
    o.eigenvalue = [](int n, P p) { return -n * (n + p.gamma + p.d - 1.0); };
    add(o);
  }
  {
    OperatorSpec o = spec("diffJ", J, V, false, 0.0, Parity::Full);
    o.dtt = [](double t, P) { return t * (1.0 - t); };
    o.mixed = [](double t, P) { return 2.0 * (1.0 - t); };
    o.lap_x = [](double t, P) { return t; };
    o.euler2 = minus_one;
    o.dt = [](double t, P p) {
      return 2.0 * p.mu + p.d - (2.0 * p.mu + p.gamma + p.d + 1.0) * t;
    };
    o.euler = [](double, P p) { return 1.0 - (2.0 * p.mu + p.gamma + p.d + 1.0); };
    o.eigenvalue = [](int n, P p) { return -n * (n + 2.0 * p.mu + p.gamma + p.d); };
    add(o);
  }
  {
    OperatorSpec o = spec("sfConeLaguerrediff", L, S, false, -1.0, Parity::Full);
    o.dtt = [](double t, P) { return t; };
    o.dt = [](double t, P p) { return p.d - 1.0 - t; };
    o.lap0 = [](double t, P) { return 1.0 / t; };
    o.eigenvalue = [](int n, P) { return -static_cast<double>(n); };
    add(o);
  }
  {
    OperatorSpec o = spec("ConeLaguerrediff", L, V, false, 0.0, Parity::Full);
    o.dtt = [](double t, P) { return t; };
    o.lap_x = [](double t, P) { return t; };
    o.mixed = [](double, P) { return 2.0; };
    o.euler = minus_one;
    o.dt = [](double t, P p) { return 2.0 * p.mu + p.d - t; };
    o.eigenvalue = [](int n, P) { return -static_cast<double>(n); };
    add(o);
  }
  return ops;
}

const std::vector<OperatorSpec>& all_ops() {
  static const std::vector<OperatorSpec> ops = build();
  return ops;
}

std::string family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::Gegenbauer: return "Gegenbauer";
    case WeightFamily::Hermite: return "Hermite";
    case WeightFamily::JacobiUpper: return "Jacobi upper-cone";
    case WeightFamily::LaguerreUpper: return "Laguerre upper-cone";
  }
  return {};
}

std::string parity_name(Parity p) {
  switch (p) {
    case Parity::Full: return "full";
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
  }
  return {};
}

double term(const Coefficient& c, double t, P p, const std::function<double()>& deriv) {
  if (!c) return 0.0;
  double a = c(t, p);
  return a == 0.0 ? 0.0 : a * deriv();
}

}  // namespace

std::string OperatorSpec::requirement() const {
  std::ostringstream os;
  os << name << " needs a " << family_name(family) << " "
     << (kind == DomainKind::Surface ? "surface" : "solid") << " weight";
  if (family == WeightFamily::Gegenbauer || family == WeightFamily::Hermite)
    os << (hyperboloid ? " on the hyperboloid (rho > 0)" : " on the cone (rho = 0)");
  os << " with beta = " << beta << ", on the " << parity_name(parity) << " space";
  return os.str();
}

std::optional<std::string> OperatorSpec::mismatch(const WeightParams& p, Parity par) const {
  bool ok = p.family == family && p.kind == kind && std::abs(p.beta - beta) < 1e-12 &&
            par == parity && (p.upper() || (p.rho > 0.0) == hyperboloid);
  if (ok) return std::nullopt;
  return requirement() + "; got " + describe(p) + ", " + parity_name(par) + " space";
}

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& o : all_ops()) out.push_back(o.name);
    return out;
  }();
  return names;
}

const OperatorSpec& registry(const std::string& name) {
  for (const auto& o : all_ops())
    if (o.name == name) return o;
  std::string known;
  for (const auto& n : operator_names()) known += (known.empty() ? "" : ", ") + n;
  throw ArgumentError("unknown operator '" + name + "' (known: " + known + ")");
}

double eigenvalue(const std::string& name, int n, const WeightParams& p) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  return registry(name).eigenvalue(n, p);
}

double apply(const OperatorSpec& op, const WeightParams& p,
             const std::function<double(const PointCH&)>& u, const PointCH& q,
             const FdOptions& fd, double margin) {
  if (p.kind != op.kind) throw ArgumentError(op.name + " acts on the other domain kind");
  if (p.d != 2 && p.d != 3) throw CapabilityError("operators are implemented for d = 2 and d = 3");
  if (auto bad = validate(p, q, 1e-9)) throw ArgumentError("point is off the domain: " + *bad);
  double rho = p.upper() ? 0.0 : p.rho;
  double t = q.t;
  if (std::abs(t) < margin || std::abs(std::abs(t) - rho) < margin)
    throw ArgumentError("point violates the singular margin " + std::to_string(margin) +
                        " around t = 0 and |t| = rho");
  double u0 = u(q);
  double total = 0.0;
  if (op.kind == DomainKind::Surface) {
    auto radius = [&](double s) { return p.upper() ? s : std::sqrt(s * s - rho * rho); };
    VectorXd xi = q.x / q.x.norm();
    auto U = [&](double s, const VectorXd& e) { return u(PointCH{radius(s) * e, s}); };
    auto along_t = [&](double h) { return U(t + h, xi); };
    total += term(op.dtt, t, p, [&] { return fd::d2(along_t, u0, fd); });
    total += term(op.dt, t, p, [&] { return fd::d1(along_t, fd); });
    total += term(op.lap0, t, p, [&] {
      return laplace_beltrami([&](const VectorXd& e) { return U(t, e); }, xi, fd);
    });
  } else {
    const VectorXd& x = q.x;
    auto along_t = [&](double h) { return u(PointCH{x, t + h}); };
    auto dilate = [&](double a) { return u(PointCH{std::exp(a) * x, t}); };
    total += term(op.dtt, t, p, [&] { return fd::d2(along_t, u0, fd); });
    total += term(op.dt, t, p, [&] { return fd::d1(along_t, fd); });
    total += term(op.lap_x, t, p, [&] {
      return fd::laplacian([&](const VectorXd& y) { return u(PointCH{y, t}); }, x, fd);
    });
    total += term(op.euler2, t, p, [&] { return fd::d2(dilate, u0, fd); });
    total += term(op.euler, t, p, [&] { return fd::d1(dilate, fd); });
    total += term(op.mixed, t, p, [&] {
      return fd::mixed([&](double a, double b) { return u(PointCH{std::exp(a) * x, t + b}); },
                       fd);
    });
  }
  if (op.zeroth) total += op.zeroth(t, p) * u0;
  return total;
}

EigenReport eigencheck(const OperatorSpec& op, const WeightParams& p, const EigencheckOptions& o) {
  Parity par = o.parity.value_or(op.parity);
  if (o.check_space)
    if (auto bad = op.mismatch(p, par)) throw CapabilityError(*bad);
  if (o.n_max < 0 || o.samples <= 0) throw ArgumentError("n_max >= 0 and samples > 0 required");
  EigenReport rep{op.name, p, par, o.samples, {}, 0.0};
  std::vector<PointCH> pts = sample_points(p, o.samples, o.seed, o.margin);
  for (int n = 0; n <= o.n_max; ++n) {
    DegreeBasis B(p, n, par);
    bool orthonormal = B.norms().allFinite();
    double lam = op.eigenvalue(n, p);
    for (const auto& blk : B.blocks()) {
      EigenRow row{n, blk.m, 0.0};
      for (int i = blk.offset; i < blk.offset + blk.size; ++i) {
        double scale = orthonormal ? 1.0 / std::sqrt(B.norms()(i)) : 1.0;
        auto u = [&](const PointCH& q) { return scale * B.eval(i, q); };
        for (const auto& q : pts) {
          double v = u(q);
          double res = std::abs(apply(op, p, u, q, o.fd, o.margin) - lam * v) / (1.0 + std::abs(v));
          row.max_residual = std::max(row.max_residual, res);
        }
      }
      rep.max_residual = std::max(rep.max_residual, row.max_residual);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

WeightParams default_params(const OperatorSpec& op, int d) {
  double rho = op.hyperboloid ? 1.0 : 0.0;
  switch (op.family) {
    case WeightFamily::Gegenbauer:
      return op.kind == DomainKind::Surface
                 ? WeightParams::gegenbauer_surface(d, op.beta, 0.5, rho)
                 : WeightParams::gegenbauer_solid(d, op.beta, 0.5, 0.5, rho);
    case WeightFamily::Hermite:
      return op.kind == DomainKind::Surface ? WeightParams::hermite_surface(d, op.beta, rho)
                                            : WeightParams::hermite_solid(d, op.beta, 0.5, rho);
    case WeightFamily::JacobiUpper:
      return op.kind == DomainKind::Surface
                 ? WeightParams::jacobi_upper_surface(d, op.beta, 0.5)
                 : WeightParams::jacobi_upper_solid(d, op.beta, 0.5, 0.5);
    case WeightFamily::LaguerreUpper:
      return op.kind == DomainKind::Surface ? WeightParams::laguerre_upper_surface(d, op.beta)
                                            : WeightParams::laguerre_upper_solid(d, op.beta, 0.5);
  }
  return {};
}

}  // namespace hyperbasis
