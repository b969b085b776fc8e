#ifndef HYPERBASIS_DOMAIN_HPP
#define HYPERBASIS_DOMAIN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperbasis/blocks.hpp"

namespace hyperbasis {

// Weight families on the double cone / hyperboloid (rho >= 0) and the upper cone.
//   Gegenbauer:    |t| (t^2-rho^2)^{beta-1/2} (rho^2+1-t^2)^{gamma-1/2},  rho <= |t| <= sqrt(rho^2+1)
//   Hermite:       |t| (t^2-rho^2)^{beta-1/2} e^{-t^2},                   |t| >= rho
//   JacobiUpper:   t^beta (1-t)^gamma,                                    0 <= t <= 1, rho = 0
//   LaguerreUpper: t^beta e^{-t},                                         t >= 0, rho = 0
// Solid domains multiply by (t^2 - rho^2 - |x|^2)^{mu-1/2}.
enum class WeightFamily { Gegenbauer, Hermite, JacobiUpper, LaguerreUpper };
enum class DomainKind { Surface, Solid };
enum class Parity { Full, Even, Odd };

struct WeightParams {
  WeightFamily family = WeightFamily::Gegenbauer;
  DomainKind kind = DomainKind::Surface;
  int d = 2;
  double beta = 0.0;
  double gamma = 0.5;
  double mu = 0.5;
  double rho = 0.0;

  static WeightParams gegenbauer_surface(int d, double beta, double gamma, double rho = 0.0) {
    return {WeightFamily::Gegenbauer, DomainKind::Surface, d, beta, gamma, 0.0, rho};
  }
  static WeightParams gegenbauer_solid(int d, double beta, double gamma, double mu,
                                       double rho = 0.0) {
    return {WeightFamily::Gegenbauer, DomainKind::Solid, d, beta, gamma, mu, rho};
  }
  static WeightParams hermite_surface(int d, double beta, double rho = 0.0) {
    return {WeightFamily::Hermite, DomainKind::Surface, d, beta, 0.0, 0.0, rho};
  }
  static WeightParams hermite_solid(int d, double beta, double mu, double rho = 0.0) {
    return {WeightFamily::Hermite, DomainKind::Solid, d, beta, 0.0, mu, rho};
  }
  static WeightParams jacobi_upper_surface(int d, double beta, double gamma) {
    return {WeightFamily::JacobiUpper, DomainKind::Surface, d, beta, gamma, 0.0, 0.0};
  }
  static WeightParams jacobi_upper_solid(int d, double beta, double gamma, double mu) {
    return {WeightFamily::JacobiUpper, DomainKind::Solid, d, beta, gamma, mu, 0.0};
  }
  static WeightParams laguerre_upper_surface(int d, double beta) {
    return {WeightFamily::LaguerreUpper, DomainKind::Surface, d, beta, 0.0, 0.0, 0.0};
  }
  static WeightParams laguerre_upper_solid(int d, double beta, double mu) {
    return {WeightFamily::LaguerreUpper, DomainKind::Solid, d, beta, 0.0, mu, 0.0};
  }

  bool solid() const { return kind == DomainKind::Solid; }
  bool upper() const {
    return family == WeightFamily::JacobiUpper || family == WeightFamily::LaguerreUpper;
  }
  bool compact() const {
    return family == WeightFamily::Gegenbauer || family == WeightFamily::JacobiUpper;
  }
  // Outer rim |t| = b; infinity for the exponential families.
  double brink() const;
};

std::string describe(const WeightParams& p);

// Throws ParameterError unless the weight is integrable. With odd_extension, the wider
// cone range for odd-parity spaces is accepted: beta' > -(d+1)/2 (Gegenbauer) or
// beta' > -(d+2)/2 (Hermite), beta' = beta (+mu on solids). Such weights may have no
// normalized measure.
void validate_params(const WeightParams& p, bool odd_extension = false);
bool normalizable(const WeightParams& p);

struct PointCH {
  VectorXd x;
  double t = 0.0;
};

// Empty when the point lies on (surface) or in (solid) the domain, else a description.
std::optional<std::string> validate(const WeightParams& p, const PointCH& q,
                                    double tol = 1e-12);

// Unnormalized weight value at a point of the domain.
double weight(const WeightParams& p, const PointCH& q);

// Reciprocal of the weight's total mass against dsigma (surface, with
// dsigma = (t^2-rho^2)^{(d-1)/2} dt dxi) or dx dt (solid).
double normalization_constant(const WeightParams& p);

// Exponent a of the radial reduction: the normalized measure pushed to
// s = t^2 - rho^2 (double domains) or t (upper cone) is proportional to
// s^a (1-s)^{gamma-1/2}, s^a e^{-s}, t^a (1-t)^gamma or t^a e^{-t}.
double radial_exponent(const WeightParams& p);

// One-variable rule in t for the radial part of the normalized measure: nodes +-sqrt(s+rho^2)
// with halved weights on double domains, t itself on the upper cone. Exact for
// polynomials in t of degree <= degree (even polynomials of degree <= 2*degree on double
// domains).
QuadratureRule radial_rule(const WeightParams& p, int degree);

struct DomainRule {
  std::vector<PointCH> points;
  std::vector<double> weights;  // sum to 1
  int size() const { return static_cast<int>(weights.size()); }
};

// Exact for polynomials in (x, t) of total degree <= degree against the normalized
// measure. Double domains are symmetric in t.
DomainRule domain_rule(const WeightParams& p, int degree);

double integrate(const DomainRule& r, const std::function<double(const PointCH&)>& f);

inline constexpr int kDefaultIntegrationDegree = 24;

double integrate_surface(const WeightParams& p, const std::function<double(const PointCH&)>& f,
                         int degree = kDefaultIntegrationDegree);
double integrate_solid(const WeightParams& p, const std::function<double(const PointCH&)>& f,
                       int degree = kDefaultIntegrationDegree);

// Deterministic pseudo-random points on / in the domain with |t| >= margin,
// ||t| - rho| >= margin and, on compact domains, |t| <= b - margin. Solid points use
// |x| <= (1 - margin) sqrt(t^2 - rho^2). Exponential families sample |t| <= rho + 2.5.
std::vector<PointCH> sample_points(const WeightParams& p, int count, std::uint64_t seed,
                                   double margin = 0.05);

}  // namespace hyperbasis

#endif
