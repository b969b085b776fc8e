#ifndef HYPERBASIS_DIFFOPS_HPP
#define HYPERBASIS_DIFFOPS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperbasis/bases.hpp"

namespace hyperbasis {

// Coefficient as a function of t for the given parameters.
using Coefficient = std::function<double(double t, const WeightParams& p)>;

// L u = dtt u_tt + dt u_t + mixed E u_t + lap_x Delta_x u + euler2 E^2 u + euler E u
//       + lap0 Delta_0 u + zeroth u,
// with E = <x, grad_x> (E^2 the composition). Surface operators act in (t, xi) coordinates,
// u(r(t) xi, t) with r(t) = sqrt(t^2 - rho^2) (t on the upper cone), and Delta_0 acts on xi.
// Solid operators act in Cartesian (x, t). Empty coefficients are absent terms.
struct OperatorSpec {
  std::string name;
  WeightFamily family = WeightFamily::Gegenbauer;
  DomainKind kind = DomainKind::Surface;
  bool hyperboloid = false;  // rho > 0 required; rho = 0 otherwise
  double beta = 0.0;         // the weight parameter the identity holds for
  Parity parity = Parity::Even;
  Coefficient dtt, dt, mixed, lap_x, euler2, euler, lap0, zeroth;
  std::function<double(int n, const WeightParams& p)> eigenvalue;

  // The parameter combination the operator applies to, in words.
  std::string requirement() const;
  // Empty when p and parity match the operator's space, else the reason.
  std::optional<std::string> mismatch(const WeightParams& p, Parity parity) const;
};

// The 16 registered operator names.
const std::vector<std::string>& operator_names();

// Throws ArgumentError for an unknown name.
const OperatorSpec& registry(const std::string& name);

double eigenvalue(const std::string& name, int n, const WeightParams& p);

// Finite-difference value of L u at q. Requires q on the domain with |t| >= margin and
// ||t| - rho| >= margin.
double apply(const OperatorSpec& op, const WeightParams& p,
             const std::function<double(const PointCH&)>& u, const PointCH& q,
             const FdOptions& fd = {}, double margin = 0.05);

struct EigencheckOptions {
  int n_max = 4;
  int samples = 30;
  std::uint64_t seed = 20240611;
  double margin = 0.05;
  FdOptions fd;
  std::optional<Parity> parity;  // defaults to the operator's space
  bool check_space = true;       // false only for negative controls
};

struct EigenRow {
  int n = 0;
  int m = 0;
  double max_residual = 0.0;
};

struct EigenReport {
  std::string op;
  WeightParams params;
  Parity parity = Parity::Full;
  int samples = 0;
  std::vector<EigenRow> rows;
  double max_residual = 0.0;
};

// For every basis element u of degree n <= n_max in the space, the maximum over samples of
// |L u - eigenvalue(n) u| / (1 + |u|). Elements are orthonormal when the weight is
// normalizable. Throws CapabilityError on a space mismatch when check_space is set.
EigenReport eigencheck(const OperatorSpec& op, const WeightParams& p,
                       const EigencheckOptions& o = {});

// A parameter set in the operator's space: gamma = 1/2, mu = 1/2, rho = 1 where free.
WeightParams default_params(const OperatorSpec& op, int d);

}  // namespace hyperbasis

#endif
