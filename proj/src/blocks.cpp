#include "hyperbasis/blocks.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace hyperbasis {

namespace fd {

double laplacian(const std::function<double(const VectorXd&)>& f, const VectorXd& x,
                 const FdOptions& o) {
  double f0 = f(x);
  double total = 0.0;
  VectorXd y = x;
  for (int i = 0; i < x.size(); ++i) {
    auto g = [&](double s) {
      y(i) = x(i) + s;
      double v = f(y);
      y(i) = x(i);
      return v;
    };
    total += d2(g, f0, o);
  }
  return total;
}

}  // namespace fd

namespace {

double binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_dim(int d) {
  if (d != 2 && d != 3)
    throw CapabilityError("spherical harmonics are implemented for d = 2 and d = 3 only");
}

// r^j C_j^lambda(z/r) as a polynomial in (z, r^2).
double gegenbauer_homogeneous(int j, double lambda, double z, double r2) {
  if (j == 0) return 1.0;
  double q = 1.0, p = 2.0 * lambda * z;
  for (int k = 1; k < j; ++k) {
    double next = (2.0 * (k + lambda) * z * p - (k - 1 + 2.0 * lambda) * r2 * q) / (k + 1);
    q = p;
    p = next;
  }
  return p;
}

double double_factorial_odd(int k) {
  // (2k-1)!!
  double r = 1.0;
  for (int i = 1; i <= 2 * k - 1; i += 2) r *= i;
  return r;
}

}  // namespace

int harmonic_dim(int d, int m) {
  if (d < 2) throw ArgumentError("dimension must be at least 2");
  if (m < 0) return 0;
  return static_cast<int>(binom(m + d - 1, m) - binom(m + d - 3, m - 2));
}

HarmonicBasis::HarmonicBasis(int d, int m) : d_(d), m_(m) {
  check_dim(d);
  if (m < 0) throw ArgumentError("harmonic degree must be nonnegative");
  size_ = harmonic_dim(d, m);
}

VectorXd HarmonicBasis::eval(const VectorXd& x) const {
  if (x.size() != d_) throw ArgumentError("point dimension does not match the basis");
  VectorXd out(size_);
  const double sqrt2 = std::numbers::sqrt2;
  if (d_ == 2) {
    if (m_ == 0) {
      out(0) = 1.0;
      return out;
    }
    std::complex<double> w = std::pow(std::complex<double>(x(0), x(1)), m_);
    out(0) = sqrt2 * w.real();
    out(1) = sqrt2 * w.imag();
    return out;
  }
  double r2 = x.squaredNorm();
  std::complex<double> w(1.0, 0.0);
  std::complex<double> base(x(0), x(1));
  int idx = 0;
  for (int k = 0; k <= m_; ++k) {
    double lf = 1.0;
    for (int i = m_ - k + 1; i <= m_ + k; ++i) lf *= i;  // (m+k)!/(m-k)!
    double norm = std::sqrt((2.0 * m_ + 1.0) / lf);
    double radial = double_factorial_odd(k) * gegenbauer_homogeneous(m_ - k, k + 0.5, x(2), r2);
    if (k == 0) {
      out(idx++) = norm * radial;
    } else {
      out(idx++) = sqrt2 * norm * radial * w.real();
      out(idx++) = sqrt2 * norm * radial * w.imag();
    }
    w *= base;
  }
  return out;
}

double HarmonicBasis::eval(int l, const VectorXd& x) const {
  if (l < 0 || l >= size_) throw ArgumentError("harmonic index out of range");
  return eval(x)(l);
}

HarmonicBasis harmonics(int d, int m) { return HarmonicBasis(d, m); }

PointRule sphere_rule(int d, int degree) {
  check_dim(d);
  int nphi = std::max(degree, 0) + 1;
  PointRule r;
  if (d == 2) {
    r.points.resize(2, nphi);
    r.weights = VectorXd::Constant(nphi, 1.0 / nphi);
    for (int j = 0; j < nphi; ++j) {
      double a = 2.0 * std::numbers::pi * j / nphi;
      r.points(0, j) = std::cos(a);
      r.points(1, j) = std::sin(a);
    }
    return r;
  }
  int nz = degree / 2 + 1;
  QuadratureRule g = gauss_rule(WeightSpec::jacobi(0.0, 0.0), nz);
  r.points.resize(3, nz * nphi);
  r.weights.resize(nz * nphi);
  int c = 0;
  for (int i = 0; i < nz; ++i) {
    double z = g.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < nphi; ++j) {
      double a = 2.0 * std::numbers::pi * j / nphi;
      r.points(0, c) = s * std::cos(a);
      r.points(1, c) = s * std::sin(a);
      r.points(2, c) = z;
      r.weights(c) = g.weights[i] / nphi;
      ++c;
    }
  }
  return r;
}

PointRule ball_rule(int d, double mu, int degree) {
  if (!(mu > -0.5)) throw ParameterError("ball weight requires mu > -1/2");
  PointRule s = sphere_rule(d, degree);
  int nu = degree / 4 + 2;
  QuadratureRule u = gauss_rule(WeightSpec::jacobi_unit((d - 2) / 2.0, mu - 0.5), nu);
  PointRule r;
  r.points.resize(d, nu * s.size());
  r.weights.resize(nu * s.size());
  int c = 0;
  for (int i = 0; i < nu; ++i) {
    double rad = std::sqrt(u.nodes[i]);
    for (int j = 0; j < s.size(); ++j) {
      r.points.col(c) = rad * s.points.col(j);
      r.weights(c) = u.weights[i] * s.weights(j);
      ++c;
    }
  }
  return r;
}

double laplace_beltrami(const std::function<double(const VectorXd&)>& f, const VectorXd& xi,
                        const FdOptions& o) {
  auto g = [&](const VectorXd& z) { return f(z / z.norm()); };
  return fd::laplacian(g, xi, o);
}

double harmonic_eigenvalue(int d, int m) { return -static_cast<double>(m) * (m + d - 2); }

double ball_eigenvalue(int d, int n, double mu) {
  return -static_cast<double>(n) * (n + 2.0 * mu + d - 1.0);
}

double laplace_beltrami_eigencheck(const HarmonicBasis& Y, int l,
                                   const std::vector<VectorXd>& points, const FdOptions& o) {
  double ev = harmonic_eigenvalue(Y.dim(), Y.degree());
  double worst = 0.0;
  for (const auto& p : points) {
    if (std::abs(p.norm() - 1.0) > 1e-10) throw ArgumentError("point is not on the unit sphere");
    auto f = [&](const VectorXd& z) { return Y.eval(l, z); };
    double res = laplace_beltrami(f, p, o) - ev * Y.eval(l, p);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double sphere_kernel(int d, int n, const VectorXd& xi, const VectorXd& eta) {
  if (xi.size() != d || eta.size() != d) throw ArgumentError("dimension mismatch");
  if (std::abs(xi.norm() - 1.0) > 1e-10 || std::abs(eta.norm() - 1.0) > 1e-10)
    throw ArgumentError("sphere_kernel needs unit vectors");
  return zn_eval((d - 2) / 2.0, n, std::clamp(xi.dot(eta), -1.0, 1.0));
}

BallBasis::BallBasis(int d, int n, double mu) : d_(d), n_(n), mu_(mu) {
  check_dim(d);
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (!(mu > -0.5)) throw ParameterError("ball weight requires mu > -1/2");
  double a = mu - 0.5;
  for (int j = 0; 2 * j <= n; ++j) {
    int m = n - 2 * j;
    double b = m + (d - 2) / 2.0;
    harm_.emplace_back(d, m);
    for (int l = 0; l < harm_.back().size(); ++l) index_.push_back({j, l});
    // S^j P_j^{(a,b)}(2|x|^2/S - 1) = ((a+1)_j/j!) sum_i c_i S^{j-i} (S - |x|^2)^i.
    std::vector<double> c(j + 1);
    double pre = pochhammer(a + 1.0, j) / factorial(j);
    for (int i = 0; i <= j; ++i)
      c[i] = pre * pochhammer(-static_cast<double>(j), i) * pochhammer(j + a + b + 1.0, i) /
             (pochhammer(a + 1.0, i) * factorial(i));
    coeff_.push_back(c);
    double beta_ratio = std::exp(std::lgamma(m + d / 2.0) + std::lgamma(d / 2.0 + mu + 0.5) -
                                 std::lgamma(d / 2.0) - std::lgamma(m + d / 2.0 + mu + 0.5));
    double h = beta_ratio * norm_sq(Family1D::jacobi(a, b), j);
    inv_norm_.push_back(1.0 / std::sqrt(h));
  }
}

VectorXd BallBasis::eval_homogeneous(const VectorXd& x, double S) const {
  if (x.size() != d_) throw ArgumentError("point dimension does not match the basis");
  VectorXd out(size());
  double r2 = x.squaredNorm();
  double diff = S - r2;
  int c = 0;
  for (std::size_t j = 0; j < harm_.size(); ++j) {
    const auto& co = coeff_[j];
    int jj = static_cast<int>(j);
    double radial = 0.0;
    for (int i = 0; i <= jj; ++i) radial += co[i] * std::pow(S, jj - i) * std::pow(diff, i);
    VectorXd y = harm_[j].eval(x);
    for (int l = 0; l < y.size(); ++l) out(c++) = inv_norm_[j] * radial * y(l);
  }
  return out;
}

VectorXd BallBasis::eval(const VectorXd& x) const { return eval_homogeneous(x, 1.0); }

BallBasis ball_basis(int d, int n, double mu) { return BallBasis(d, n, mu); }

double ball_kernel(int d, int n, double mu, const VectorXd& x, const VectorXd& y,
                   KernelRoute route) {
  if (x.size() != d || y.size() != d) throw ArgumentError("dimension mismatch");
  if (route == KernelRoute::Sum) {
    BallBasis B(d, n, mu);
    return B.eval(x).dot(B.eval(y));
  }
  if (mu < 0.0) throw ParameterError("integral route requires mu >= 0");
  double root = std::sqrt(std::max(0.0, 1.0 - x.squaredNorm())) *
                std::sqrt(std::max(0.0, 1.0 - y.squaredNorm()));
  double xy = x.dot(y);
  double lambda = mu + (d - 1) / 2.0;
  QuadratureRule r = symmetric_beta_rule(mu, integral_nodes(n));
  return r.integrate([&](double t) { return zn_eval(lambda, n, xy + t * root); });
}

double ball_diffop_residual(const BallBasis& B, int k, const std::vector<VectorXd>& points,
                            const FdOptions& o) {
  int n = B.degree(), d = B.dim();
  double mu = B.mu();
  double ev = ball_eigenvalue(d, n, mu);
  auto u = [&](const VectorXd& x) { return B.eval(x)(k); };
  double worst = 0.0;
  for (const auto& p : points) {
    if (p.norm() >= 1.0) throw ArgumentError("ball operator check needs interior points");
    double u0 = u(p);
    auto radial = [&](double lam) {
      VectorXd q = std::exp(lam) * p;
      return u(q);
    };
    double e1 = fd::d1(radial, o);
    double e2 = fd::d2(radial, u0, o);
    double lap = fd::laplacian(u, p, o);
    double res = lap - e2 - (2.0 * mu + d - 1.0) * e1 - ev * u0;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace hyperbasis
