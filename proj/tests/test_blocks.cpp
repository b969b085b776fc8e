#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperbasis/blocks.hpp"

using namespace hyperbasis;

namespace {

VectorXd random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = N(rng);
  return v / v.norm();
}

VectorXd random_ball(int d, double rmax, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  return rmax * std::pow(U(rng), 1.0 / d) * random_unit(d, rng);
}

// Random orthogonal matrix from QR of a Gaussian matrix.
MatrixXd random_orthogonal(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  MatrixXd A(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = N(rng);
  Eigen::HouseholderQR<MatrixXd> qr(A);
  return qr.householderQ();
}

MatrixXd gram(const PointRule& r, const std::function<VectorXd(const VectorXd&)>& f, int k) {
  MatrixXd G = MatrixXd::Zero(k, k);
  for (int i = 0; i < r.size(); ++i) {
    VectorXd v = f(r.points.col(i));
    G += r.weights(i) * v * v.transpose();
  }
  return G;
}

}  // namespace

TEST_CASE("harmonics: dimensions") {
  CHECK(harmonics(2, 0).size() == 1);
  CHECK(harmonics(2, 0).eval(0, VectorXd::Unit(2, 0)) == 1.0);
  CHECK(harmonics(3, 2).size() == 5);
  CHECK(harmonics(2, 4).size() == 2);
  for (int m = 0; m <= 8; ++m) {
    CHECK(harmonic_dim(3, m) == 2 * m + 1);
    CHECK(harmonic_dim(2, m) == (m == 0 ? 1 : 2));
  }
  CHECK_THROWS_AS(harmonics(4, 2), CapabilityError);
}

TEST_CASE("harmonics: orthonormal under sphere quadrature across degrees") {
  for (int d : {2, 3}) {
    const int M = 6;
    int total = 0;
    for (int m = 0; m <= M; ++m) total += harmonic_dim(d, m);
    PointRule r = sphere_rule(d, 2 * M);
    auto all = [&](const VectorXd& x) {
      VectorXd v(total);
      int c = 0;
      for (int m = 0; m <= M; ++m) {
        VectorXd y = harmonics(d, m).eval(x);
        v.segment(c, y.size()) = y;
        c += y.size();
      }
      return v;
    };
    MatrixXd G = gram(r, all, total);
    CHECK((G - MatrixXd::Identity(total, total)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("harmonics: homogeneity") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3}) {
    for (int m = 0; m <= 6; ++m) {
      HarmonicBasis Y = harmonics(d, m);
      VectorXd xi = random_unit(d, rng);
      double t = 1.7;
      VectorXd a = Y.eval(t * xi), b = std::pow(t, m) * Y.eval(xi);
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * (1 + b.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("harmonics: Laplace-Beltrami eigenfunctions") {
  CHECK(harmonic_eigenvalue(3, 2) == -6.0);
  CHECK(harmonic_eigenvalue(2, 3) == -9.0);
  CHECK(harmonic_eigenvalue(2, 0) == 0.0);
  std::mt19937_64 rng(11);
  std::vector<VectorXd> pts2, pts3;
  for (int i = 0; i < 50; ++i) {
    pts2.push_back(random_unit(2, rng));
    pts3.push_back(random_unit(3, rng));
  }
  CHECK(laplace_beltrami_eigencheck(harmonics(2, 0), 0, pts2) < 1e-12);
  for (int l = 0; l < 2; ++l) CHECK(laplace_beltrami_eigencheck(harmonics(2, 3), l, pts2) < 1e-5);
  for (int m = 0; m <= 4; ++m)
    for (int l = 0; l < harmonic_dim(3, m); ++l)
      CHECK(laplace_beltrami_eigencheck(harmonics(3, m), l, pts3) < 1e-5);
  // Same check at the documented 1e-4 step.
  FdOptions fine{1e-4, 4};
  for (int l = 0; l < 2; ++l)
    CHECK(laplace_beltrami_eigencheck(harmonics(2, 3), l, pts2, fine) < 1e-5);
}

TEST_CASE("sphere_kernel") {
  std::mt19937_64 rng(5);
  VectorXd e = VectorXd::Unit(3, 0);
  CHECK(sphere_kernel(3, 0, e, random_unit(3, rng)) == 1.0);
  CHECK(sphere_kernel(3, 2, e, e) == doctest::Approx(5.0).epsilon(1e-14));
  for (int d : {2, 3}) {
    for (int n = 0; n <= 5; ++n) {
      VectorXd a = random_unit(d, rng), b = random_unit(d, rng);
      HarmonicBasis Y = harmonics(d, n);
      double sum = Y.eval(a).dot(Y.eval(b));
      CHECK(std::abs(sphere_kernel(d, n, a, b) - sum) < 1e-10);
      // Basis independence under an orthogonal mix.
      MatrixXd Q = random_orthogonal(Y.size(), rng);
      double mixed = (Q * Y.eval(a)).dot(Q * Y.eval(b));
      CHECK(std::abs(mixed - sum) < 1e-12);
    }
  }
  CHECK_THROWS_AS(sphere_kernel(2, 1, VectorXd::Constant(2, 1.0), e.head(2)), ArgumentError);
}

TEST_CASE("ball_basis: counts and orthonormality") {
  CHECK(ball_basis(2, 0, 0.5).size() == 1);
  CHECK(ball_basis(2, 0, 0.5).eval(VectorXd::Zero(2))(0) == doctest::Approx(1.0));
  CHECK(ball_basis(2, 3, 0.5).size() == 4);
  CHECK(ball_basis(3, 3, 0.5).size() == 10);
  for (int d : {2, 3}) {
    for (double mu : {0.0, 0.5, 1.5}) {
      const int N = 6;
      int total = 0;
      for (int n = 0; n <= N; ++n) total += ball_basis(d, n, mu).size();
      PointRule r = ball_rule(d, mu, 2 * N);
      auto all = [&](const VectorXd& x) {
        VectorXd v(total);
        int c = 0;
        for (int n = 0; n <= N; ++n) {
          VectorXd y = ball_basis(d, n, mu).eval(x);
          v.segment(c, y.size()) = y;
          c += y.size();
        }
        return v;
      };
      MatrixXd G = gram(r, all, total);
      CHECK((G - MatrixXd::Identity(total, total)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  CHECK_THROWS_AS(ball_basis(2, 2, -0.5), ParameterError);
}

TEST_CASE("ball_basis: homogeneous form is a polynomial in (x, S)") {
  std::mt19937_64 rng(9);
  BallBasis B(3, 4, 0.5);
  VectorXd x = random_ball(3, 0.9, rng);
  for (double S : {0.3, 1.0, 2.5}) {
    VectorXd a = B.eval_homogeneous(x, S);
    VectorXd b = std::pow(S, 2.0) * B.eval(x / std::sqrt(S));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Finite at S = 0 and homogeneous of degree n in (x, sqrt(S)).
  VectorXd z = B.eval_homogeneous(x, 0.0);
  VectorXd z2 = B.eval_homogeneous(2.0 * x, 0.0);
  CHECK((z2 - 16.0 * z).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ball_kernel: routes agree and reproduce") {
  std::mt19937_64 rng(21);
  VectorXd x(2), y(2);
  x << 0.3, 0.1;
  y << -0.2, 0.4;
  CHECK(ball_kernel(2, 0, 0.5, x, y, KernelRoute::Sum) == doctest::Approx(1.0));
  CHECK(ball_kernel(2, 0, 0.5, x, y, KernelRoute::Integral) == doctest::Approx(1.0));
  CHECK(std::abs(ball_kernel(2, 2, 0.5, x, y, KernelRoute::Sum) -
                 ball_kernel(2, 2, 0.5, x, y, KernelRoute::Integral)) < 1e-8);
  VectorXd a = random_unit(2, rng), b = random_unit(2, rng);
  CHECK(ball_kernel(2, 1, 0.0, a, b, KernelRoute::Integral) ==
        doctest::Approx(zn_eval(0.5, 1, a.dot(b))).epsilon(1e-14));
  for (int d : {2, 3}) {
    for (double mu : {0.0, 0.5, 1.25}) {
      for (int n = 0; n <= 4; ++n) {
        VectorXd p = random_ball(d, 0.95, rng), q = random_ball(d, 0.95, rng);
        double s = ball_kernel(d, n, mu, p, q, KernelRoute::Sum);
        double i = ball_kernel(d, n, mu, p, q, KernelRoute::Integral);
        CHECK(std::abs(s - i) < 1e-8);
      }
    }
  }
  // Reproduction against the weight.
  const int n = 3;
  double mu = 0.5;
  BallBasis B(2, n, mu);
  PointRule r = ball_rule(2, mu, 2 * n + 2);
  VectorXd p = random_ball(2, 0.8, rng);
  VectorXd acc = VectorXd::Zero(B.size());
  for (int i = 0; i < r.size(); ++i) {
    VectorXd q = r.points.col(i);
    acc += r.weights(i) * ball_kernel(2, n, mu, p, q, KernelRoute::Integral) * B.eval(q);
  }
  CHECK((acc - B.eval(p)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS(ball_kernel(2, 1, -0.25, x, y, KernelRoute::Integral), ParameterError);
}

TEST_CASE("ball_diffop_residual") {
  std::mt19937_64 rng(17);
  std::vector<VectorXd> pts;
  for (int i = 0; i < 30; ++i) pts.push_back(random_ball(2, 0.95, rng));
  CHECK(ball_diffop_residual(BallBasis(2, 0, 0.5), 0, pts) < 1e-10);
  CHECK(ball_eigenvalue(2, 2, 0.5) == -8.0);
  BallBasis B(2, 2, 0.5);
  for (int k = 0; k < B.size(); ++k) CHECK(ball_diffop_residual(B, k, pts) < 1e-5);
  std::vector<VectorXd> pts3;
  for (int i = 0; i < 30; ++i) pts3.push_back(random_ball(3, 0.95, rng));
  for (int n = 0; n <= 4; ++n) {
    BallBasis C(3, n, 1.0);
    for (int k = 0; k < C.size(); ++k) CHECK(ball_diffop_residual(C, k, pts3) < 1e-5);
  }
  std::vector<VectorXd> bad = {VectorXd::Unit(2, 0)};
  CHECK_THROWS_AS(ball_diffop_residual(B, 0, bad), ArgumentError);
}
