#ifndef HYPERBASIS_POLY1D_HPP
#define HYPERBASIS_POLY1D_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hyperbasis/errors.hpp"

namespace hyperbasis {

// Threshold below which a measure parameter is treated as its degenerate limit.
inline constexpr double kDegenerateThreshold = 1e-12;

enum class FamilyTag { Hermite, Laguerre, Gegenbauer, Jacobi, GenGegenbauer, GenHermite };

// One-variable orthogonal family. Parameter slots:
//   Laguerre(a=alpha), Gegenbauer(a=lambda), Jacobi(a=alpha, b=beta),
//   GenGegenbauer(a=lambda, b=mu), GenHermite(a=mu).
// Gegenbauer with lambda == 0 is the Chebyshev family T_n.
struct Family1D {
  FamilyTag tag = FamilyTag::Hermite;
  double a = 0.0;
  double b = 0.0;

  static Family1D hermite() { return {FamilyTag::Hermite, 0.0, 0.0}; }
  static Family1D laguerre(double alpha) { return {FamilyTag::Laguerre, alpha, 0.0}; }
  static Family1D gegenbauer(double lambda) { return {FamilyTag::Gegenbauer, lambda, 0.0}; }
  static Family1D jacobi(double alpha, double beta) { return {FamilyTag::Jacobi, alpha, beta}; }
  static Family1D gen_gegenbauer(double lambda, double mu) {
    return {FamilyTag::GenGegenbauer, lambda, mu};
  }
  static Family1D gen_hermite(double mu) { return {FamilyTag::GenHermite, mu, 0.0}; }
};

void validate(const Family1D& f);
std::string describe(const Family1D& f);

// Value with first and second derivative.
template <class Scalar>
struct Jet {
  Scalar v{};
  Scalar d1{};
  Scalar d2{};
};

template <class Scalar>
Scalar pochhammer(Scalar a, int n) {
  Scalar r(1);
  for (int i = 0; i < n; ++i) r *= a + Scalar(i);
  return r;
}

double factorial(int n);

namespace detail {

// r = (A x + B) p - C q, propagated through two derivatives.
template <class Scalar>
Jet<Scalar> recur(const Jet<Scalar>& p, const Jet<Scalar>& q, Scalar A, Scalar B, Scalar C,
                  Scalar x) {
  Scalar lin = A * x + B;
  return {lin * p.v - C * q.v, A * p.v + lin * p.d1 - C * q.d1,
          Scalar(2) * A * p.d1 + lin * p.d2 - C * q.d2};
}

template <class Scalar>
Jet<Scalar> hermite_jet(int n, Scalar x) {
  Jet<Scalar> q{Scalar(1), Scalar(0), Scalar(0)};
  if (n == 0) return q;
  Jet<Scalar> p{Scalar(2) * x, Scalar(2), Scalar(0)};
  for (int k = 1; k < n; ++k) {
    Jet<Scalar> r = recur(p, q, Scalar(2), Scalar(0), Scalar(2 * k), x);
    q = p;
    p = r;
  }
  return p;
}

template <class Scalar>
Jet<Scalar> laguerre_jet(int n, Scalar alpha, Scalar x) {
  Jet<Scalar> q{Scalar(1), Scalar(0), Scalar(0)};
  if (n == 0) return q;
  Jet<Scalar> p{Scalar(1) + alpha - x, Scalar(-1), Scalar(0)};
  for (int k = 1; k < n; ++k) {
    Scalar k1 = Scalar(k + 1);
    Jet<Scalar> r = recur(p, q, Scalar(-1) / k1, (Scalar(2 * k + 1) + alpha) / k1,
                          (Scalar(k) + alpha) / k1, x);
    q = p;
    p = r;
  }
  return p;
}

template <class Scalar>
Jet<Scalar> gegenbauer_jet(int n, Scalar lambda, Scalar x) {
  Jet<Scalar> q{Scalar(1), Scalar(0), Scalar(0)};
  if (n == 0) return q;
  if (lambda == Scalar(0)) {
    Jet<Scalar> p{x, Scalar(1), Scalar(0)};
    for (int k = 1; k < n; ++k) {
      Jet<Scalar> r = recur(p, q, Scalar(2), Scalar(0), Scalar(1), x);
      q = p;
      p = r;
    }
    return p;
  }
  Jet<Scalar> p{Scalar(2) * lambda * x, Scalar(2) * lambda, Scalar(0)};
  for (int k = 1; k < n; ++k) {
    Scalar k1 = Scalar(k + 1);
    Jet<Scalar> r = recur(p, q, Scalar(2) * (Scalar(k) + lambda) / k1, Scalar(0),
                          (Scalar(k - 1) + Scalar(2) * lambda) / k1, x);
    q = p;
    p = r;
  }
  return p;
}

template <class Scalar>
Jet<Scalar> jacobi_jet(int n, Scalar a, Scalar b, Scalar x) {
  Jet<Scalar> q{Scalar(1), Scalar(0), Scalar(0)};
  if (n == 0) return q;
  Scalar ab = a + b;
  Jet<Scalar> p{((ab + Scalar(2)) * x + (a - b)) / Scalar(2), (ab + Scalar(2)) / Scalar(2),
                Scalar(0)};
  for (int k = 1; k < n; ++k) {
    Scalar c = Scalar(2 * k) + ab;
    Scalar den = Scalar(2 * (k + 1)) * (Scalar(k + 1) + ab) * c;
    Scalar A = (c + Scalar(1)) * (c + Scalar(2)) * c / den;
    Scalar B = (c + Scalar(1)) * (a * a - b * b) / den;
    Scalar C = Scalar(2) * (Scalar(k) + a) * (Scalar(k) + b) * (c + Scalar(2)) / den;
    Jet<Scalar> r = recur(p, q, A, B, C, x);
    q = p;
    p = r;
  }
  return p;
}

// Jet of c * P(y) with y = 2x^2 - 1 (even) or c * x * P(y) (odd).
template <class Scalar>
Jet<Scalar> quadratic_substitution(const Jet<Scalar>& P, Scalar c, Scalar x, bool odd,
                                   Scalar dy, Scalar d2y) {
  // y' = dy * x, y'' = d2y.
  Scalar yp = dy * x;
  if (!odd) return {c * P.v, c * P.d1 * yp, c * (P.d2 * yp * yp + P.d1 * d2y)};
  return {c * x * P.v, c * (P.v + x * P.d1 * yp),
          c * (Scalar(2) * P.d1 * yp + x * (P.d2 * yp * yp + P.d1 * d2y))};
}

template <class Scalar>
Jet<Scalar> gen_gegenbauer_jet(int n, Scalar lambda, Scalar mu, Scalar x) {
  int m = n / 2;
  bool odd = (n % 2) == 1;
  Scalar half(0.5);
  Scalar c = odd ? pochhammer(lambda + mu, m + 1) / pochhammer(mu + half, m + 1)
                 : pochhammer(lambda + mu, m) / pochhammer(mu + half, m);
  Scalar y = Scalar(2) * x * x - Scalar(1);
  Jet<Scalar> P = jacobi_jet(m, lambda - half, odd ? mu + half : mu - half, y);
  return quadratic_substitution(P, c, x, odd, Scalar(4), Scalar(4));
}

template <class Scalar>
Jet<Scalar> gen_hermite_jet(int n, Scalar mu, Scalar x) {
  int m = n / 2;
  bool odd = (n % 2) == 1;
  Scalar half(0.5);
  Scalar c = Scalar(m % 2 == 0 ? 1 : -1) * std::pow(Scalar(2), Scalar(odd ? 2 * m + 1 : 2 * m)) *
             Scalar(factorial(m));
  Jet<Scalar> L = laguerre_jet(m, odd ? mu + half : mu - half, x * x);
  return quadratic_substitution(L, c, x, odd, Scalar(2), Scalar(2));
}

}  // namespace detail

// Value and exact derivatives of the degree-n polynomial of the family at x.
template <class Scalar>
Jet<Scalar> eval_jet(const Family1D& f, int n, Scalar x) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  validate(f);
  Scalar a(f.a), b(f.b);
  switch (f.tag) {
    case FamilyTag::Hermite: return detail::hermite_jet(n, x);
    case FamilyTag::Laguerre: return detail::laguerre_jet(n, a, x);
    case FamilyTag::Gegenbauer: return detail::gegenbauer_jet(n, a, x);
    case FamilyTag::Jacobi: return detail::jacobi_jet(n, a, b, x);
    case FamilyTag::GenGegenbauer: return detail::gen_gegenbauer_jet(n, a, b, x);
    case FamilyTag::GenHermite: return detail::gen_hermite_jet(n, a, x);
  }
  return {};
}

template <class Scalar>
Scalar eval(const Family1D& f, int n, Scalar x) {
  return eval_jet(f, n, x).v;
}

// h_n under the normalized measure, h_0 = 1.
double norm_sq(const Family1D& f, int n);

// Coefficient of x^n in the degree-n polynomial.
double leading_coeff(const Family1D& f, int n);

// Z_n^lambda(t) = ((n+lambda)/lambda) C_n^lambda(t); lambda = 0 gives 2 T_n (n >= 1).
double zn_eval(double lambda, int n, double t);

namespace detail {
// Z_n^lambda for lambda > -1/2, no range check; the Chebyshev branch below the threshold.
double zn_unchecked(double lambda, int n, double t);
}  // namespace detail

// sum_{k<=n} p_k(x) p_k(y) / h_k.
double kernel_kn(const Family1D& f, int n, double x, double y);

// Christoffel-Darboux closed form of kernel_kn, x != y.
double kernel_kn_cd(const Family1D& f, int n, double x, double y);

// binom(n-k+delta, n-k) / binom(n+delta, n).
double cesaro_weight(int n, int k, double delta);

double cesaro_kernel(const Family1D& f, int n, double delta, double x, double y);

// Measures with Gauss rules. Every rule integrates against the normalized measure.
struct WeightSpec {
  enum class Kind {
    Jacobi,       // (1-x)^a (1+x)^b on [-1,1]
    JacobiUnit,   // s^a (1-s)^b on [0,1]
    Laguerre,     // s^a e^{-s} on [0,inf)
    Hermite,      // e^{-x^2} on R
    EvenJacobi,   // |t|^{2a} (1-t^2)^b on [-1,1]
    EvenHermite,  // |t|^{2a} e^{-t^2} on R
  };
  Kind kind = Kind::Jacobi;
  double a = 0.0;
  double b = 0.0;

  static WeightSpec jacobi(double a, double b) { return {Kind::Jacobi, a, b}; }
  static WeightSpec jacobi_unit(double a, double b) { return {Kind::JacobiUnit, a, b}; }
  static WeightSpec laguerre(double a) { return {Kind::Laguerre, a, 0.0}; }
  static WeightSpec hermite() { return {Kind::Hermite, 0.0, 0.0}; }
  static WeightSpec even_jacobi(double a, double b) { return {Kind::EvenJacobi, a, b}; }
  static WeightSpec even_hermite(double a) { return {Kind::EvenHermite, a, 0.0}; }

  std::string describe() const;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;
  std::string weight_spec;

  std::size_t size() const { return nodes.size(); }
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// Exact for polynomials of degree <= 2*npoints-1. Even measures use the s = t^2
// substitution and return 2*ceil(npoints/2) symmetric nodes.
QuadratureRule gauss_rule(const WeightSpec& w, int npoints);

// Probability measure c (1-v^2)^{kappa-1} dv; the two-point average at v = +-1 when
// kappa is below the degenerate threshold.
QuadratureRule symmetric_beta_rule(double kappa, int npoints);

// Probability measure c (1-z)^a (1+z)^b dz; a point mass at z = -1 when b+1 is below
// the degenerate threshold.
QuadratureRule one_sided_beta_rule(double a, double b, int npoints);

// Nodes per axis for addition-formula integrals: max(24, 2n+8) unless
// HYPERBASIS_QUAD_POINTS is set.
int integral_nodes(int n);

// Monic recurrence p_{k+1}(s) = (s - alpha_k) p_k(s) - beta_k p_{k-1}(s) of a measure.
struct MonicRecurrence {
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[0] unused
};
MonicRecurrence monic_recurrence(const WeightSpec& w, int n);

// Orthogonal polynomials for |t| w0(t^2 - rho^2) on |t| >= rho, built from the monic
// family of w0 on [0, inf): q_{2k}(t) = p_k(t^2-rho^2) and
// q_{2k+1}(t) = t h_k sum_{j<=k} p_j(t^2-rho^2) p_j(-rho^2) / h_j.
class ChristoffelPoly {
 public:
  ChristoffelPoly(const WeightSpec& w0, double rho, int n);
  int degree() const { return n_; }
  double rho() const { return rho_; }
  double operator()(double t) const;

 private:
  int n_;
  double rho_;
  MonicRecurrence rec_;
};

ChristoffelPoly christoffel_pair(const WeightSpec& w0, double rho, int n);

// c_{mu-1/2} int C_n^{lambda+mu}(x t) (1+t) (1-t^2)^{mu-1} dt.
double gen_gegenbauer_by_integral(double lambda, double mu, int n, double x);

// Both sides of the product formula for Z_n^{lambda+mu}.
double addition_gg_lhs(double lambda, double mu, int n, double u, double s, double t);
double addition_gg_rhs(double lambda, double mu, int n, double u, double s, double t);

// Double integral raising the index of Z_n from lambda to lambda+sigma; equals Z_n^lambda(t).
double z_index_raise(double lambda, double sigma, int n, double t);

// kappa_n^mu in lambda^{-n/2} C_n^{(lambda,mu)}(x/sqrt(lambda)) -> kappa_n^mu H_n^mu(x).
double limit_kappa(double mu, int n);

// |lambda^{-n/2} C_n^{(lambda,mu)}(x/sqrt(lambda)) - kappa_n^mu H_n^mu(x)|.
double gen_gegenbauer_limit_error(double mu, int n, double x, double lambda);

// Residual of the differential-difference equation of C_n^{(lambda,mu)} at x != 0,
// |(1-x^2) f'' - (2lambda+2mu+1) x f' + mu (2 f'/x - (f(x)-f(-x))/x^2) + n(n+2lambda+2mu) f|,
// divided by max(1, |n(n+2lambda+2mu) f|).
double gen_gegenbauer_ode_residual(double lambda, double mu, int n, double x);

// Same for H_n^mu: f'' - 2x f' + mu (2 f'/x - (f(x)-f(-x))/x^2) + 2n f.
double gen_hermite_ode_residual(double mu, int n, double x);

}  // namespace hyperbasis

#endif
