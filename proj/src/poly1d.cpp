#include "hyperbasis/poly1d.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hyperbasis {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void validate(const Family1D& f) {
  auto fail = [&](const std::string& msg) { throw ParameterError(describe(f) + ": " + msg); };
  switch (f.tag) {
    case FamilyTag::Hermite: break;
    case FamilyTag::Laguerre:
      if (!(f.a > -1.0)) fail("requires alpha > -1");
      break;
    case FamilyTag::Gegenbauer:
      if (!(f.a > -0.5)) fail("requires lambda > -1/2");
      break;
    case FamilyTag::Jacobi:
      if (!(f.a > -1.0) || !(f.b > -1.0)) fail("requires alpha, beta > -1");
      break;
    case FamilyTag::GenGegenbauer:
      if (!(f.a > -0.5) || !(f.b > -0.5)) fail("requires lambda, mu > -1/2");
      if (std::abs(f.a + f.b) < kDegenerateThreshold) fail("lambda + mu = 0 is degenerate");
      break;
    case FamilyTag::GenHermite:
      if (!(f.a > -0.5)) fail("requires mu > -1/2");
      break;
  }
}

std::string describe(const Family1D& f) {
  std::ostringstream os;
  os.precision(17);
  switch (f.tag) {
    case FamilyTag::Hermite: os << "Hermite"; break;
    case FamilyTag::Laguerre: os << "Laguerre(" << f.a << ")"; break;
    case FamilyTag::Gegenbauer: os << "Gegenbauer(" << f.a << ")"; break;
    case FamilyTag::Jacobi: os << "Jacobi(" << f.a << "," << f.b << ")"; break;
    case FamilyTag::GenGegenbauer: os << "GenGegenbauer(" << f.a << "," << f.b << ")"; break;
    case FamilyTag::GenHermite: os << "GenHermite(" << f.a << ")"; break;
  }
  return os.str();
}

namespace {

double jacobi_norm(double a, double b, int n) {
  if (n == 0) return 1.0;
  return pochhammer(a + 1.0, n) * pochhammer(b + 1.0, n) * (a + b + n + 1.0) /
         (factorial(n) * pochhammer(a + b + 2.0, n) * (a + b + 2.0 * n + 1.0));
}

double jacobi_leading(double a, double b, int n) {
  return pochhammer(n + a + b + 1.0, n) / (std::pow(2.0, n) * factorial(n));
}

double gen_gegenbauer_scale(double lambda, double mu, int n) {
  int m = n / 2;
  return n % 2 == 1 ? pochhammer(lambda + mu, m + 1) / pochhammer(mu + 0.5, m + 1)
                    : pochhammer(lambda + mu, m) / pochhammer(mu + 0.5, m);
}

}  // namespace

double norm_sq(const Family1D& f, int n) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  validate(f);
  if (n == 0) return 1.0;
  switch (f.tag) {
    case FamilyTag::Hermite: return std::pow(2.0, n) * factorial(n);
    case FamilyTag::Laguerre: return pochhammer(f.a + 1.0, n) / factorial(n);
    case FamilyTag::Gegenbauer:
      if (f.a == 0.0) return 0.5;
      return f.a / (n + f.a) * pochhammer(2.0 * f.a, n) / factorial(n);
    case FamilyTag::Jacobi: return jacobi_norm(f.a, f.b, n);
    case FamilyTag::GenGegenbauer: {
      double lm = f.a + f.b;
      int m = n / 2;
      double at_one = gen_gegenbauer_scale(f.a, f.b, n) * pochhammer(f.a + 0.5, m) / factorial(m);
      return lm / (n + lm) * at_one;
    }
    case FamilyTag::GenHermite: {
      int m = n / 2;
      if (n % 2 == 0) return std::pow(2.0, 4 * m) * factorial(m) * pochhammer(f.a + 0.5, m);
      return std::pow(2.0, 4 * m + 2) * factorial(m) * pochhammer(f.a + 0.5, m + 1);
    }
  }
  return 0.0;
}

double leading_coeff(const Family1D& f, int n) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  validate(f);
  if (n == 0) return 1.0;
  switch (f.tag) {
    case FamilyTag::Hermite: return std::pow(2.0, n);
    case FamilyTag::Laguerre: return (n % 2 == 0 ? 1.0 : -1.0) / factorial(n);
    case FamilyTag::Gegenbauer:
      if (f.a == 0.0) return std::pow(2.0, n - 1);
      return std::pow(2.0, n) * pochhammer(f.a, n) / factorial(n);
    case FamilyTag::Jacobi: return jacobi_leading(f.a, f.b, n);
    case FamilyTag::GenGegenbauer: {
      int m = n / 2;
      double b = n % 2 == 1 ? f.b + 0.5 : f.b - 0.5;
      return gen_gegenbauer_scale(f.a, f.b, n) * jacobi_leading(f.a - 0.5, b, m) *
             std::pow(2.0, m);
    }
    case FamilyTag::GenHermite: return std::pow(2.0, n);
  }
  return 0.0;
}

namespace detail {

double zn_unchecked(double lambda, int n, double t) {
  if (n == 0) return 1.0;
  if (std::abs(lambda) < kDegenerateThreshold) {
    double q = 1.0, p = t;
    for (int k = 1; k < n; ++k) {
      double r = 2.0 * t * p - q;
      q = p;
      p = r;
    }
    return 2.0 * p;
  }
  double q = 1.0, p = 2.0 * lambda * t;
  for (int k = 1; k < n; ++k) {
    double r = (2.0 * (k + lambda) * t * p - (k - 1 + 2.0 * lambda) * q) / (k + 1);
    q = p;
    p = r;
  }
  return (n + lambda) / lambda * p;
}

}  // namespace detail

double zn_eval(double lambda, int n, double t) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (lambda < 0.0) throw ParameterError("Z_n^lambda requires lambda >= 0");
  return detail::zn_unchecked(lambda, n, t);
}

double kernel_kn(const Family1D& f, int n, double x, double y) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += eval(f, k, x) * eval(f, k, y) / norm_sq(f, k);
  return s;
}

double kernel_kn_cd(const Family1D& f, int n, double x, double y) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (x == y) throw ArgumentError("Christoffel-Darboux form requires x != y");
  double c = leading_coeff(f, n) / (leading_coeff(f, n + 1) * norm_sq(f, n));
  double num = eval(f, n + 1, x) * eval(f, n, y) - eval(f, n, x) * eval(f, n + 1, y);
  return c * num / (x - y);
}

double cesaro_weight(int n, int k, double delta) {
  if (delta < 0.0) throw ParameterError("Cesaro order delta must be >= 0");
  if (k < 0 || k > n) throw ArgumentError("Cesaro weight index out of range");
  // Gamma(n-k+delta+1) Gamma(n+1) / (Gamma(n-k+1) Gamma(n+delta+1))
  double r = 1.0;
  for (int j = n - k + 1; j <= n; ++j) r *= j / (j + delta);
  return r;
}

double cesaro_kernel(const Family1D& f, int n, double delta, double x, double y) {
  if (delta < 0.0) throw ParameterError("Cesaro order delta must be >= 0");
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  double s = 0.0;
  for (int k = 0; k <= n; ++k)
    s += cesaro_weight(n, k, delta) * eval(f, k, x) * eval(f, k, y) / norm_sq(f, k);
  return s;
}

std::string WeightSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Jacobi: os << "(1-x)^" << a << " (1+x)^" << b << " on [-1,1]"; break;
    case Kind::JacobiUnit: os << "s^" << a << " (1-s)^" << b << " on [0,1]"; break;
    case Kind::Laguerre: os << "s^" << a << " exp(-s) on [0,inf)"; break;
    case Kind::Hermite: os << "exp(-x^2) on R"; break;
    case Kind::EvenJacobi: os << "|t|^" << 2 * a << " (1-t^2)^" << b << " on [-1,1]"; break;
    case Kind::EvenHermite: os << "|t|^" << 2 * a << " exp(-t^2) on R"; break;
  }
  return os.str();
}

namespace {

void check_measure(const WeightSpec& w) {
  using K = WeightSpec::Kind;
  bool ok = true;
  switch (w.kind) {
    case K::Jacobi:
    case K::JacobiUnit: ok = w.a > -1.0 && w.b > -1.0; break;
    case K::Laguerre: ok = w.a > -1.0; break;
    case K::Hermite: break;
    case K::EvenJacobi: ok = w.a > -0.5 && w.b > -1.0; break;
    case K::EvenHermite: ok = w.a > -0.5; break;
  }
  if (!ok) throw ParameterError("measure not normalizable: " + w.describe());
}

// Monic recurrence of the Jacobi measure (1-x)^a (1+x)^b.
void jacobi_recurrence(double a, double b, int n, std::vector<double>& al,
                       std::vector<double>& be) {
  al.assign(n, 0.0);
  be.assign(n, 0.0);
  double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      al[k] = (b - a) / (ab + 2.0);
    } else {
      double c = 2.0 * k + ab;
      al[k] = (b * b - a * a) / (c * (c + 2.0));
    }
    if (k == 1) {
      be[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else if (k >= 2) {
      double c = 2.0 * k + ab;
      be[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
    }
  }
}

}  // namespace

MonicRecurrence monic_recurrence(const WeightSpec& w, int n) {
  using K = WeightSpec::Kind;
  check_measure(w);
  MonicRecurrence r;
  switch (w.kind) {
    case K::Jacobi: jacobi_recurrence(w.a, w.b, n, r.alpha, r.beta); break;
    case K::JacobiUnit:
      // s = (1+x)/2 maps (1-x)^b (1+x)^a to s^a (1-s)^b.
      jacobi_recurrence(w.b, w.a, n, r.alpha, r.beta);
      for (int k = 0; k < n; ++k) {
        r.alpha[k] = (1.0 + r.alpha[k]) / 2.0;
        r.beta[k] /= 4.0;
      }
      break;
    case K::Laguerre:
      r.alpha.resize(n);
      r.beta.resize(n);
      for (int k = 0; k < n; ++k) {
        r.alpha[k] = 2.0 * k + w.a + 1.0;
        r.beta[k] = k * (k + w.a);
      }
      break;
    case K::Hermite:
      r.alpha.assign(n, 0.0);
      r.beta.resize(n);
      for (int k = 0; k < n; ++k) r.beta[k] = k / 2.0;
      break;
    default: throw CapabilityError("no direct recurrence for " + w.describe());
  }
  return r;
}

namespace {

QuadratureRule golub_welsch(const MonicRecurrence& r, int n) {
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = r.alpha[k];
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(r.beta[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    q.nodes[j] = es.eigenvalues()(j);
    double v = es.eigenvectors()(0, j);
    q.weights[j] = v * v;
  }
  q.exactness_degree = 2 * n - 1;
  return q;
}

QuadratureRule build_rule(const WeightSpec& w, int npoints) {
  using K = WeightSpec::Kind;
  if (w.kind == K::EvenJacobi || w.kind == K::EvenHermite) {
    int ns = (npoints + 1) / 2;
    WeightSpec sw = w.kind == K::EvenJacobi ? WeightSpec::jacobi_unit(w.a - 0.5, w.b)
                                            : WeightSpec::laguerre(w.a - 0.5);
    QuadratureRule s = golub_welsch(monic_recurrence(sw, ns), ns);
    QuadratureRule q;
    for (int j = ns - 1; j >= 0; --j) {
      q.nodes.push_back(-std::sqrt(s.nodes[j]));
      q.weights.push_back(s.weights[j] / 2.0);
    }
    for (int j = 0; j < ns; ++j) {
      q.nodes.push_back(std::sqrt(s.nodes[j]));
      q.weights.push_back(s.weights[j] / 2.0);
    }
    q.exactness_degree = 4 * ns - 1;
    q.weight_spec = w.describe();
    return q;
  }
  QuadratureRule q = golub_welsch(monic_recurrence(w, npoints), npoints);
  q.weight_spec = w.describe();
  return q;
}

}  // namespace

QuadratureRule gauss_rule(const WeightSpec& w, int npoints) {
  if (npoints < 1) throw ArgumentError("quadrature needs at least one node");
  check_measure(w);
  using Key = std::tuple<int, double, double, int>;
  static std::mutex mtx;
  static std::map<Key, QuadratureRule> cache;
  Key key{static_cast<int>(w.kind), w.a, w.b, npoints};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QuadratureRule q = build_rule(w, npoints);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, q);
  return q;
}

QuadratureRule symmetric_beta_rule(double kappa, int npoints) {
  if (kappa < 0.0) throw ParameterError("symmetric beta measure requires kappa >= 0");
  if (kappa < kDegenerateThreshold) {
    QuadratureRule q;
    q.nodes = {-1.0, 1.0};
    q.weights = {0.5, 0.5};
    q.exactness_degree = 1;
    q.weight_spec = "two-point average at -1, 1";
    return q;
  }
  return gauss_rule(WeightSpec::jacobi(kappa - 1.0, kappa - 1.0), npoints);
}

QuadratureRule one_sided_beta_rule(double a, double b, int npoints) {
  if (b + 1.0 < 0.0) throw ParameterError("one-sided beta measure requires b >= -1");
  if (b + 1.0 < kDegenerateThreshold) {
    QuadratureRule q;
    q.nodes = {-1.0};
    q.weights = {1.0};
    q.exactness_degree = 0;
    q.weight_spec = "point mass at -1";
    return q;
  }
  return gauss_rule(WeightSpec::jacobi(a, b), npoints);
}

int integral_nodes(int n) {
  if (const char* env = std::getenv("HYPERBASIS_QUAD_POINTS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(24, 2 * n + 8);
}

ChristoffelPoly::ChristoffelPoly(const WeightSpec& w0, double rho, int n) : n_(n), rho_(rho) {
  if (rho < 0.0) throw ParameterError("Christoffel construction requires rho >= 0");
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (w0.kind != WeightSpec::Kind::JacobiUnit && w0.kind != WeightSpec::Kind::Laguerre)
    throw CapabilityError("Christoffel construction needs a measure on [0,inf): " +
                          w0.describe());
  rec_ = monic_recurrence(w0, n / 2 + 2);
}

double ChristoffelPoly::operator()(double t) const {
  double s = t * t - rho_ * rho_;
  double y = -rho_ * rho_;
  int k = n_ / 2;
  if (n_ % 2 == 0) {
    double q = 1.0, p = s - rec_.alpha[0];
    if (k == 0) return 1.0;
    for (int j = 1; j < k; ++j) {
      double r = (s - rec_.alpha[j]) * p - rec_.beta[j] * q;
      q = p;
      p = r;
    }
    return p;
  }
  // t h_k sum_{j<=k} p_j(s) p_j(y) / h_j with monic h_j = beta_1 ... beta_j.
  double ps_prev = 0.0, ps = 1.0, py_prev = 0.0, py = 1.0;
  double h = 1.0, sum = 1.0;
  for (int j = 0; j < k; ++j) {
    double ps_next = (s - rec_.alpha[j]) * ps - (j > 0 ? rec_.beta[j] * ps_prev : 0.0);
    double py_next = (y - rec_.alpha[j]) * py - (j > 0 ? rec_.beta[j] * py_prev : 0.0);
    ps_prev = ps;
    ps = ps_next;
    py_prev = py;
    py = py_next;
    h *= rec_.beta[j + 1];
    sum += ps * py / h;
  }
  return t * h * sum;
}

ChristoffelPoly christoffel_pair(const WeightSpec& w0, double rho, int n) {
  return ChristoffelPoly(w0, rho, n);
}

double gen_gegenbauer_by_integral(double lambda, double mu, int n, double x) {
  if (mu <= 0.0) throw CapabilityError("integral route requires mu > 0; use eval");
  if (lambda <= 0.0) throw ParameterError("integral route requires lambda > 0");
  Family1D g = Family1D::gegenbauer(lambda + mu);
  QuadratureRule r = symmetric_beta_rule(mu, integral_nodes(n));
  return r.integrate([&](double t) { return eval(g, n, x * t) * (1.0 + t); });
}

namespace {

void check_gg(double lambda, double mu, int n) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ParameterError("product formula needs lambda, mu > 0");
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
}

}  // namespace

double addition_gg_lhs(double lambda, double mu, int n, double u, double s, double t) {
  check_gg(lambda, mu, n);
  double root = std::sqrt(std::max(0.0, 1.0 - s * s)) * std::sqrt(std::max(0.0, 1.0 - t * t));
  QuadratureRule r = symmetric_beta_rule(lambda, integral_nodes(n));
  return r.integrate(
      [&](double v) { return detail::zn_unchecked(lambda + mu, n, u * s * t + v * root); });
}

double addition_gg_rhs(double lambda, double mu, int n, double u, double s, double t) {
  check_gg(lambda, mu, n);
  double total = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    int j = n - 2 * k;
    double muj = mu + j;
    Family1D g = Family1D::gen_gegenbauer(lambda, muj);
    double coeff = pochhammer(lambda + mu + 1.0, j) / pochhammer(mu + 0.5, j);
    double cs = eval(g, 2 * k, s), ct = eval(g, 2 * k, t);
    total += coeff * std::pow(s * t, j) * cs * ct / norm_sq(g, 2 * k) *
             detail::zn_unchecked(mu - 0.5, j, u);
  }
  return total;
}

double z_index_raise(double lambda, double sigma, int n, double t) {
  if (sigma <= 0.0) throw CapabilityError("index raising requires sigma > 0");
  if (lambda < 0.0) throw ParameterError("index raising requires lambda >= 0");
  int nodes = integral_nodes(n);
  QuadratureRule r1 = one_sided_beta_rule(lambda, sigma - 1.0, nodes);
  QuadratureRule r2 = symmetric_beta_rule(sigma + 0.5, nodes);
  double total = 0.0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    double z1 = r1.nodes[i];
    double inner = r2.integrate([&](double z2) {
      return detail::zn_unchecked(lambda + sigma, n, (1.0 - z1) / 2.0 * t + (1.0 + z1) / 2.0 * z2);
    });
    total += r1.weights[i] * inner;
  }
  return total;
}

double limit_kappa(double mu, int n) {
  int m = n / 2;
  if (n % 2 == 0) return 1.0 / (std::pow(2.0, 2 * m) * factorial(m) * pochhammer(mu + 0.5, m));
  return 1.0 / (std::pow(2.0, 2 * m + 1) * factorial(m) * pochhammer(mu + 0.5, m + 1));
}

double gen_gegenbauer_limit_error(double mu, int n, double x, double lambda) {
  double lhs = std::pow(lambda, -0.5 * n) *
               eval(Family1D::gen_gegenbauer(lambda, mu), n, x / std::sqrt(lambda));
  double rhs = limit_kappa(mu, n) * eval(Family1D::gen_hermite(mu), n, x);
  return std::abs(lhs - rhs);
}

double gen_gegenbauer_ode_residual(double lambda, double mu, int n, double x) {
  if (x == 0.0) throw ArgumentError("differential-difference equation needs x != 0");
  Family1D g = Family1D::gen_gegenbauer(lambda, mu);
  Jet<double> f = eval_jet(g, n, x);
  double fm = eval(g, n, -x);
  double ev = n * (n + 2.0 * lambda + 2.0 * mu);
  double lhs = (1.0 - x * x) * f.d2 - (2.0 * lambda + 2.0 * mu + 1.0) * x * f.d1 +
               mu * (2.0 * f.d1 / x - (f.v - fm) / (x * x));
  return std::abs(lhs + ev * f.v) / std::max(1.0, std::abs(ev * f.v));
}

double gen_hermite_ode_residual(double mu, int n, double x) {
  if (x == 0.0) throw ArgumentError("differential-difference equation needs x != 0");
  Family1D g = Family1D::gen_hermite(mu);
  Jet<double> f = eval_jet(g, n, x);
  double fm = eval(g, n, -x);
  double ev = 2.0 * n;
  double lhs = f.d2 - 2.0 * x * f.d1 + mu * (2.0 * f.d1 / x - (f.v - fm) / (x * x));
  return std::abs(lhs + ev * f.v) / std::max(1.0, std::abs(ev * f.v));
}

}  // namespace hyperbasis
