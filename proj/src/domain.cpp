#include "hyperbasis/domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace hyperbasis {

namespace {

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

// Reciprocal of the mass of (1-|x|^2)^{mu-1/2} on the unit ball.
double ball_constant(int d, double mu) {
  return std::exp(std::lgamma(mu + (d + 1) / 2.0) - std::lgamma(mu + 0.5)) /
         std::pow(std::numbers::pi, d / 2.0);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

const char* family_name(WeightFamily f) {
  switch (f) {
    case WeightFamily::Gegenbauer: return "gegenbauer";
    case WeightFamily::Hermite: return "hermite";
    case WeightFamily::JacobiUpper: return "jacobi";
    case WeightFamily::LaguerreUpper: return "laguerre";
  }
  return "?";
}

// Uniform double in [0,1) from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double gaussian(std::mt19937_64& g) {
  double u = 1.0 - uniform01(g), v = uniform01(g);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

VectorXd unit_vector(int d, std::mt19937_64& g) {
  VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = gaussian(g);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

}  // namespace

double WeightParams::brink() const {
  switch (family) {
    case WeightFamily::Gegenbauer: return std::sqrt(rho * rho + 1.0);
    case WeightFamily::JacobiUpper: return 1.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

std::string describe(const WeightParams& p) {
  std::ostringstream os;
  os << family_name(p.family) << (p.solid() ? "-solid" : "-surface") << "(d=" << p.d
     << ", beta=" << p.beta;
  if (p.compact()) os << ", gamma=" << p.gamma;
  if (p.solid()) os << ", mu=" << p.mu;
  if (!p.upper()) os << ", rho=" << p.rho;
  os << ")";
  return os.str();
}

double radial_exponent(const WeightParams& p) {
  double mu = p.solid() ? p.mu : 0.0;
  if (p.upper()) return p.solid() ? p.beta + 2.0 * mu + p.d - 1.0 : p.beta + p.d - 1.0;
  return p.beta + mu + (p.d - 2) / 2.0;
}

void validate_params(const WeightParams& p, bool odd_extension) {
  if (p.d < 2) throw ParameterError("dimension d must be at least 2");
  if (!(p.rho >= 0.0) || !std::isfinite(p.rho)) throw ParameterError("rho must be finite and >= 0");
  if (p.upper() && p.rho != 0.0) throw ParameterError("upper-cone weights require rho = 0");
  if (p.solid() && !(p.mu > -0.5)) throw ParameterError("solid weights require mu > -1/2");
  if (p.family == WeightFamily::Gegenbauer && !(p.gamma > -0.5))
    throw ParameterError("Gegenbauer weights require gamma > -1/2");
  if (p.family == WeightFamily::JacobiUpper && !(p.gamma > -1.0))
    throw ParameterError("Jacobi upper-cone weights require gamma > -1");
  if (!std::isfinite(p.beta)) throw ParameterError("beta must be finite");
  double a = radial_exponent(p);
  if (!p.upper() && p.rho > 0.0) {
    if (!(p.beta > -0.5)) throw ParameterError("hyperboloid weights require beta > -1/2");
    return;
  }
  if (odd_extension && !p.upper()) {
    double b = p.beta + (p.solid() ? p.mu : 0.0);
    bool herm = p.family == WeightFamily::Hermite;
    double bound = herm ? -(p.d + 2) / 2.0 : -(p.d + 1) / 2.0;
    if (!(b > bound))
      throw ParameterError(std::string("odd-parity cone spaces require ") +
                           (p.solid() ? "beta + mu" : "beta") + " > " +
                           (herm ? "-(d+2)/2" : "-(d+1)/2"));
    return;
  }
  if (!(a > -1.0)) {
    if (p.upper())
      throw ParameterError(p.solid() ? "upper-cone solid weights require beta + 2mu > -d"
                                     : "upper-cone weights require beta > -d");
    throw ParameterError(p.solid() ? "cone solid weights require beta + mu > -d/2"
                                   : "cone weights require beta > -d/2");
  }
}

bool normalizable(const WeightParams& p) {
  try {
    validate_params(p);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

std::optional<std::string> validate(const WeightParams& p, const PointCH& q, double tol) {
  if (q.x.size() != p.d) return "x has dimension " + std::to_string(q.x.size()) +
                                 ", expected " + std::to_string(p.d);
  double at = std::abs(q.t);
  if (p.upper() && q.t < -tol) return std::string("upper cone requires t >= 0");
  if (at < p.rho - tol) return std::string("|t| < rho");
  if (at > p.brink() + tol) return std::string("|t| exceeds the brink b");
  double s = q.t * q.t - p.rho * p.rho;
  double r2 = q.x.squaredNorm();
  if (p.solid()) {
    if (r2 > s + tol) return std::string("|x|^2 > t^2 - rho^2");
  } else if (std::abs(r2 - s) > tol * std::max(1.0, s)) {
    return std::string("|x|^2 != t^2 - rho^2");
  }
  return std::nullopt;
}

double weight(const WeightParams& p, const PointCH& q) {
  double at = std::abs(q.t);
  double s = q.t * q.t - p.rho * p.rho;
  double w = 0.0;
  switch (p.family) {
    case WeightFamily::Gegenbauer:
      w = at * std::pow(s, p.beta - 0.5) * std::pow(1.0 - s, p.gamma - 0.5);
      break;
    case WeightFamily::Hermite:
      w = at * std::pow(s, p.beta - 0.5) * std::exp(-q.t * q.t);
      break;
    case WeightFamily::JacobiUpper:
      w = std::pow(q.t, p.beta) * std::pow(1.0 - q.t, p.gamma);
      break;
    case WeightFamily::LaguerreUpper:
      w = std::pow(q.t, p.beta) * std::exp(-q.t);
      break;
  }
  if (p.solid()) w *= std::pow(s - q.x.squaredNorm(), p.mu - 0.5);
  return w;
}

double normalization_constant(const WeightParams& p) {
  validate_params(p);
  double a = radial_exponent(p);
  double log_mass = 0.0;
  switch (p.family) {
    case WeightFamily::Gegenbauer: log_mass = log_beta(a + 1.0, p.gamma + 0.5); break;
    case WeightFamily::Hermite: log_mass = std::lgamma(a + 1.0) - p.rho * p.rho; break;
    case WeightFamily::JacobiUpper: log_mass = log_beta(a + 1.0, p.gamma + 1.0); break;
    case WeightFamily::LaguerreUpper: log_mass = std::lgamma(a + 1.0); break;
  }
  double angular = p.solid() ? 1.0 / ball_constant(p.d, p.mu) : sphere_area(p.d);
  return std::exp(-log_mass) / angular;
}

QuadratureRule radial_rule(const WeightParams& p, int degree) {
  validate_params(p);
  if (degree < 0) throw ArgumentError("quadrature degree must be nonnegative");
  double a = radial_exponent(p);
  // Double domains: an even polynomial of degree <= 2 degree' in t has degree <= degree' in s.
  int nr = p.upper() ? degree / 2 + 2 : degree / 4 + 2;
  WeightSpec ws;
  switch (p.family) {
    case WeightFamily::Gegenbauer: ws = WeightSpec::jacobi_unit(a, p.gamma - 0.5); break;
    case WeightFamily::Hermite: ws = WeightSpec::laguerre(a); break;
    case WeightFamily::JacobiUpper: ws = WeightSpec::jacobi_unit(a, p.gamma); break;
    case WeightFamily::LaguerreUpper: ws = WeightSpec::laguerre(a); break;
  }
  QuadratureRule g = gauss_rule(ws, nr);
  if (p.upper()) return g;
  QuadratureRule r;
  r.weight_spec = describe(p) + " radial";
  r.exactness_degree = 2 * g.exactness_degree;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double t = std::sqrt(g.nodes[i] + p.rho * p.rho);
    r.nodes.push_back(t);
    r.weights.push_back(g.weights[i] / 2.0);
    r.nodes.push_back(-t);
    r.weights.push_back(g.weights[i] / 2.0);
  }
  return r;
}

DomainRule domain_rule(const WeightParams& p, int degree) {
  QuadratureRule radial = radial_rule(p, degree);
  PointRule inner = p.solid() ? ball_rule(p.d, p.mu, degree) : sphere_rule(p.d, degree);
  DomainRule r;
  r.points.reserve(radial.size() * inner.size());
  r.weights.reserve(radial.size() * inner.size());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    double t = radial.nodes[i];
    double radius = p.upper() ? t : std::sqrt(std::max(0.0, t * t - p.rho * p.rho));
    for (int j = 0; j < inner.size(); ++j) {
      r.points.push_back({radius * inner.points.col(j), t});
      r.weights.push_back(radial.weights[i] * inner.weights(j));
    }
  }
  return r;
}

double integrate(const DomainRule& r, const std::function<double(const PointCH&)>& f) {
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.points[i]);
  return s;
}

double integrate_surface(const WeightParams& p, const std::function<double(const PointCH&)>& f,
                         int degree) {
  if (p.solid()) throw ArgumentError("integrate_surface needs surface parameters");
  return integrate(domain_rule(p, degree), f);
}

double integrate_solid(const WeightParams& p, const std::function<double(const PointCH&)>& f,
                       int degree) {
  if (!p.solid()) throw ArgumentError("integrate_solid needs solid parameters");
  return integrate(domain_rule(p, degree), f);
}

std::vector<PointCH> sample_points(const WeightParams& p, int count, std::uint64_t seed,
                                   double margin) {
  if (count <= 0) throw ArgumentError("sample count must be positive");
  if (p.d < 2) throw ParameterError("dimension d must be at least 2");
  std::mt19937_64 g(seed);
  double lo = std::max(margin, p.rho + margin);
  double hi = p.compact() ? p.brink() - margin : p.rho + 2.5;
  if (!(hi > lo)) throw ArgumentError("margin leaves no admissible t");
  std::vector<PointCH> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double t = lo + (hi - lo) * uniform01(g);
    if (!p.upper() && uniform01(g) < 0.5) t = -t;
    double radius = std::sqrt(t * t - p.rho * p.rho);
    VectorXd xi = unit_vector(p.d, g);
    if (p.solid()) {
      double r = (1.0 - margin) * std::pow(uniform01(g), 1.0 / p.d);
      xi *= r;
    }
    out.push_back({radius * xi, t});
  }
  return out;
}

}  // namespace hyperbasis
