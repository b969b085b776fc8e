#ifndef HYPERBASIS_BLOCKS_HPP
#define HYPERBASIS_BLOCKS_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hyperbasis/poly1d.hpp"

namespace hyperbasis {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Central finite-difference stencils on a scalar function of an offset.
struct FdOptions {
  double step = 1e-3;
  int order = 4;  // 2 or 4
};

namespace fd {

template <class F>
double d1(F&& f, const FdOptions& o) {
  double h = o.step;
  if (o.order == 2) return (f(h) - f(-h)) / (2.0 * h);
  return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

template <class F>
double d2(F&& f, double f0, const FdOptions& o) {
  double h = o.step;
  if (o.order == 2) return (f(h) - 2.0 * f0 + f(-h)) / (h * h);
  return (-f(2 * h) + 16.0 * f(h) - 30.0 * f0 + 16.0 * f(-h) - f(-2 * h)) / (12.0 * h * h);
}

// Mixed derivative d^2/(da db) of f(a, b) at (0, 0).
template <class F>
double mixed(F&& f, const FdOptions& o) {
  return d1([&](double a) { return d1([&](double b) { return f(a, b); }, o); }, o);
}

// Cartesian Laplacian of f at x.
double laplacian(const std::function<double(const VectorXd&)>& f, const VectorXd& x,
                 const FdOptions& o);

}  // namespace fd

int harmonic_dim(int d, int m);

// Real orthonormal spherical harmonics of degree m on S^{d-1} under the normalized
// surface measure, evaluated as homogeneous polynomials on R^d. d = 2 and d = 3.
class HarmonicBasis {
 public:
  HarmonicBasis(int d, int m);
  int dim() const { return d_; }
  int degree() const { return m_; }
  int size() const { return size_; }
  VectorXd eval(const VectorXd& x) const;
  double eval(int l, const VectorXd& x) const;

 private:
  int d_;
  int m_;
  int size_;
};

HarmonicBasis harmonics(int d, int m);

// Nodes (columns) and weights summing to 1.
struct PointRule {
  MatrixXd points;
  VectorXd weights;
  int size() const { return static_cast<int>(weights.size()); }
};

// Exact for polynomials of degree <= degree restricted to the sphere.
PointRule sphere_rule(int d, int degree);

// Exact for polynomials of degree <= degree against the normalized (1-|x|^2)^{mu-1/2}.
PointRule ball_rule(int d, double mu, int degree);

// Laplace-Beltrami operator of f at a unit vector xi, as the Cartesian Laplacian of
// the 0-homogeneous extension f(x/|x|).
double laplace_beltrami(const std::function<double(const VectorXd&)>& f, const VectorXd& xi,
                        const FdOptions& o = {});

// -m(m+d-2).
double harmonic_eigenvalue(int d, int m);

// max over points of |Delta_0 Y_l + m(m+d-2) Y_l|.
double laplace_beltrami_eigencheck(const HarmonicBasis& Y, int l,
                                   const std::vector<VectorXd>& points,
                                   const FdOptions& o = {});

// Z_n^{(d-2)/2}(<xi, eta>) for unit vectors.
double sphere_kernel(int d, int n, const VectorXd& xi, const VectorXd& eta);

// Orthonormal basis of degree-n orthogonal polynomials for (1-|x|^2)^{mu-1/2} on the
// unit ball: P_{j,l}(x) = P_j^{(mu-1/2, n-2j+(d-2)/2)}(2|x|^2-1) Y_l^{n-2j}(x) / sqrt(h).
class BallBasis {
 public:
  struct Index {
    int j;  // radial degree
    int l;  // harmonic index in degree n-2j
  };

  BallBasis(int d, int n, double mu);
  int dim() const { return d_; }
  int degree() const { return n_; }
  double mu() const { return mu_; }
  int size() const { return static_cast<int>(index_.size()); }
  const std::vector<Index>& indices() const { return index_; }

  VectorXd eval(const VectorXd& x) const;
  // S^{n/2} P(x/sqrt(S)) as a polynomial in (x, S); equals eval(x) at S = 1.
  VectorXd eval_homogeneous(const VectorXd& x, double S) const;

 private:
  int d_;
  int n_;
  double mu_;
  std::vector<Index> index_;
  std::vector<HarmonicBasis> harm_;            // by j
  std::vector<std::vector<double>> coeff_;     // by j: S^{j-i} (S-|x|^2)^i coefficients
  std::vector<double> inv_norm_;               // by j
};

BallBasis ball_basis(int d, int n, double mu);

enum class KernelRoute { Sum, Integral };

double ball_kernel(int d, int n, double mu, const VectorXd& x, const VectorXd& y,
                   KernelRoute route);

// -n(n+2mu+d-1).
double ball_eigenvalue(int d, int n, double mu);

// max over interior points of |(Delta - <x,grad>^2 - (2mu+d-1)<x,grad>) u + n(n+2mu+d-1) u|.
double ball_diffop_residual(const BallBasis& B, int k, const std::vector<VectorXd>& points,
                            const FdOptions& o = {});

}  // namespace hyperbasis

#endif
