#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/fourier.hpp"

using namespace hyperbasis;

namespace {

const WeightParams kCone = WeightParams::gegenbauer_surface(2, 0.0, 0.5);

std::vector<WeightParams> expansion_cases() {
  return {kCone,
          WeightParams::gegenbauer_surface(3, 1.0, 0.0),
          WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5),
          WeightParams::gegenbauer_surface(2, 0.5, 0.5, 0.7),
          WeightParams::hermite_surface(2, 0.5),
          WeightParams::hermite_solid(3, 0.5, 0.5, 1.0),
          WeightParams::jacobi_upper_surface(2, 0.5, 1.0),
          WeightParams::laguerre_upper_solid(2, 1.0, 0.5)};
}

std::vector<WeightParams> addition_cases() {
  return {kCone, WeightParams::gegenbauer_surface(3, 1.0, 0.0),
          WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.0),
          WeightParams::gegenbauer_solid(3, 1.0, 0.0, 0.5)};
}

// Even in t, bounded, not a polynomial.
double smooth_even(const PointCH& q) {
  return (1.0 + q.x(0)) / (1.0 + q.t * q.t) + std::cos(q.x(q.x.size() - 1));
}

double smooth_full(const PointCH& q) { return smooth_even(q) + q.t * std::sin(1.0 + q.x(0)); }

double zn_profile(double lambda, int n, double x) {
  VectorXd c = VectorXd::Zero(n + 1);
  c(n) = 1.0;
  return ZSeries(lambda, c)(x);
}

}  // namespace

TEST_CASE("expand: constants and single elements") {
  for (const auto& p : expansion_cases()) {
    CAPTURE(describe(p));
    auto c = expand([](const PointCH&) { return 1.0; }, p, 3);
    CHECK(std::abs(c.coefficients[0](0) - 1.0) < 1e-10);
    for (int n = 1; n <= 3; ++n) CHECK(c.coefficients[n].cwiseAbs().maxCoeff() < 1e-10);

    Parity par = (p.rho > 0.0) ? Parity::Even : Parity::Full;
    DegreeBasis B(p, 3, par);
    for (int i = 0; i < B.size(); ++i) {
      auto ci = expand([&](const PointCH& q) { return B.eval(i, q); }, p, 3, par);
      for (int n = 0; n <= 3; ++n)
        for (int j = 0; j < ci.coefficients[n].size(); ++j) {
          double target = (n == 3 && j == i) ? 1.0 : 0.0;
          CHECK(std::abs(ci.coefficients[n](j) - target) < 1e-10);
        }
      CHECK(ci.coefficient(B.indices()[i]) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("expand: even functions have no odd-parity coefficients") {
  auto t2 = [](const PointCH& q) { return q.t * q.t; };
  auto c = expand(t2, kCone, 6);
  CHECK(c.odd_max() < 1e-10);
  CHECK(std::abs(c.coefficients[0](0)) > 0.1);
  for (const auto& p : {WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5),
                        WeightParams::gegenbauer_surface(2, 0.5, 0.5, 0.7),
                        WeightParams::hermite_solid(2, 0.5, 0.5, 0.5)}) {
    CAPTURE(describe(p));
    auto e = expand(smooth_even, p, 5);
    CHECK(e.odd_max() < 1e-10);
    auto o = expand(smooth_full, p, 5);
    CHECK(o.odd_max() > 1e-3);
  }
}

TEST_CASE("Parseval at truncation") {
  for (const auto& p : expansion_cases()) {
    CAPTURE(describe(p));
    auto c = expand(smooth_full, p, 5);
    double f2 = integrate(domain_rule(p, fourier_quad_degree(10, 0)),
                          [](const PointCH& q) { return smooth_full(q) * smooth_full(q); });
    double prev = 0.0;
    for (int n = 0; n <= 5; ++n) {
      double s = c.parseval_sum(n);
      CHECK(s >= prev);
      prev = s;
    }
    CHECK(prev <= f2 * (1.0 + 1e-12));
    auto c2 = expand(smooth_full, p, 3);
    CHECK(c2.parseval_sum(3) <= c.parseval_sum(5) * (1.0 + 1e-12));
  }
}

TEST_CASE("project: coefficient and kernel routes") {
  auto c = expand([](const PointCH&) { return 2.5; }, kCone, 2);
  auto P0 = project(c, 0);
  for (const auto& q : sample_points(kCone, 5, 3)) CHECK(P0(q) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(project(c, 3), ArgumentError);

  for (const auto& p : addition_cases()) {
    CAPTURE(describe(p));
    auto pts = sample_points(p, 6, 11);
    DegreeBasis B(p, 3);
    for (int i : {0, B.size() - 1}) {
      auto f = [&](const PointCH& q) { return B.eval(i, q); };
      auto P = project(f, KernelSpec{p, Parity::Full, Route::Sum}, 3);
      for (const auto& q : pts) CHECK(std::abs(P(q) - f(q)) < 1e-8);
    }
    auto e = expand(smooth_full, p, 3);
    for (int n = 0; n <= 3; ++n) {
      auto Pc = project(e, n);
      auto Ps = project(smooth_full, KernelSpec{p, Parity::Full, Route::Sum}, n,
                        fourier_quad_degree(6, 0));
      for (int j = 0; j < 2; ++j) CHECK(std::abs(Pc(pts[j]) - Ps(pts[j])) < 1e-8);
    }
    // Integral route on a cubic: a rule of degree n + 3 is exact.
    auto cubic = [](const PointCH& q) { return q.t * q.t * q.x(0) - q.t + 2.0 * q.x(0) * q.x(0); };
    auto ec = expand(cubic, p, 3, Parity::Full, 6);
    for (int n = 0; n <= 3; ++n) {
      auto Pce = project(ec, n, Parity::Even);
      auto Pi = project(cubic, KernelSpec{p, Parity::Even, Route::Integral}, n, n + 3);
      CHECK(std::abs(Pce(pts[0]) - Pi(pts[0])) < 1e-8);
    }
  }
}

TEST_CASE("translate") {
  for (const auto& p : addition_cases()) {
    CAPTURE(describe(p));
    double lambda = addition_index(p);
    auto pts = sample_points(p, 8, 5);
    for (int j = 0; j + 1 < 8; j += 2) {
      CHECK(translate([](double) { return 1.0; }, p, pts[j], pts[j + 1]) ==
            doctest::Approx(1.0).epsilon(1e-12));
      for (int n = 0; n <= 4; ++n) {
        double Tz = translate([&](double x) { return zn_profile(lambda, n, x); }, p, pts[j],
                              pts[j + 1]);
        CHECK(std::abs(Tz - kernel_sum(p, n, pts[j], pts[j + 1], Parity::Even)) < 1e-8);
      }
    }
  }
  auto h = WeightParams::hermite_surface(2, 0.0);
  auto hp = sample_points(h, 2, 1);
  CHECK_THROWS_AS(translate([](double) { return 1.0; }, h, hp[0], hp[1]), CapabilityError);
}

TEST_CASE("eigen-action of T on degree 1") {
  for (const auto& p : addition_cases()) {
    CAPTURE(describe(p));
    double lambda = addition_index(p);
    auto g = [](double x) { return x; };
    // Lambda_1(x) = int x^2 d varpi_lambda = 1 / (2 lambda + 2).
    double L1 = lambda_n(g, lambda, 1);
    CHECK(L1 == doctest::Approx(1.0 / (2.0 * lambda + 2.0)).epsilon(1e-12));
    DegreeBasis B(p, 1, Parity::Even);
    DomainRule r = domain_rule(p, 6);
    for (const auto& a : sample_points(p, 3, 9)) {
      VectorXd lhs = VectorXd::Zero(B.size());
      for (int j = 0; j < r.size(); ++j)
        lhs += r.weights[j] * translate(g, p, a, r.points[j]) * B.eval(r.points[j]);
      CHECK((lhs - L1 * B.eval(a)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("Lambda_n normalization") {
  for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.5, 3.25}) {
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(lambda);
      CAPTURE(n);
      CHECK(std::abs(lambda_n([&](double x) { return zn_profile(lambda, n, x); }, lambda, n) -
                     1.0) < 1e-9);
      if (n >= 1)
        CHECK(std::abs(lambda_n([&](double x) { return zn_profile(lambda, n - 1, x); }, lambda,
                                n)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(lambda_n([](double) { return 1.0; }, -0.25, 1), ParameterError);
}

TEST_CASE("T is bounded by the sup norm") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (const auto& p : addition_cases()) {
    CAPTURE(describe(p));
    auto pts = sample_points(p, 20, 23);
    for (int trial = 0; trial < 4; ++trial) {
      double a = U(rng), b = U(rng), c = U(rng);
      auto g = [=](double x) { return std::cos(a * x + b) * std::exp(-c * c * x * x / 4.0); };
      double sup = 0.0;
      for (int i = 0; i <= 4000; ++i) sup = std::max(sup, std::abs(g(-1.0 + i / 2000.0)));
      for (int j = 0; j + 1 < 20; ++j)
        CHECK(std::abs(translate(g, p, pts[j], pts[j + 1])) <= sup * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("convolution") {
  for (const auto& p : addition_cases()) {
    CAPTURE(describe(p));
    double lambda = addition_index(p);
    auto pts = sample_points(p, 3, 31);
    auto one = convolve([](const PointCH&) { return 1.0; }, [](double) { return 1.0; }, p,
                        {8, 2});
    CHECK(one(pts[0]) == doctest::Approx(1.0).epsilon(1e-12));
    auto e = expand(smooth_full, p, 4);
    for (int n = 0; n <= 4; ++n) {
      auto fz = convolve(smooth_full, [&](double x) { return zn_profile(lambda, n, x); }, p,
                         {fourier_quad_degree(n, 0), n / 2 + 2});
      auto pe = project(e, n, Parity::Even);
      for (const auto& q : pts) CHECK(std::abs(fz(q) - pe(q)) < 1e-8);
    }
  }
  // Even f: f * Z_n is the full projection.
  auto e = expand(smooth_even, kCone, 4);
  for (int n = 0; n <= 4; ++n) {
    auto fz = convolve(smooth_even, [&](double x) { return zn_profile(1.0, n, x); }, kCone,
                       {fourier_quad_degree(n, 0), n / 2 + 2});
    auto pf = project(e, n);
    for (const auto& q : sample_points(kCone, 4, 8)) CHECK(std::abs(fz(q) - pf(q)) < 1e-8);
  }
}

TEST_CASE("Young inequality in L1") {
  for (const auto& p : {WeightParams::gegenbauer_surface(2, 1.0, 0.5),
                        WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5)}) {
    CAPTURE(describe(p));
    double lambda = addition_index(p);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 3; ++trial) {
      double a = U(rng), b = U(rng), c = U(rng);
      auto f = [=](const PointCH& q) { return std::sin(3.0 * q.t + a) + b * q.x(0); };
      auto g = [=](double x) { return std::cos(4.0 * x + c) + 0.3 * a * x; };
      auto fg = convolve(f, g, p, {8, 8});
      double lhs = l1_norm(fg, p, 8);
      double rhs = l1_norm(f, p, 8) * l1_norm(g, lambda);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("ZSeries matches the one-variable Cesaro kernel") {
  for (double lambda : {0.0, 0.5, 1.0, 2.5}) {
    Family1D f = Family1D::gegenbauer(lambda);
    for (int n : {0, 3, 7})
      for (double delta : {0.0, 0.5, 2.0}) {
        ZSeries z = cesaro_profile(lambda, n, delta);
        for (double x : {-0.9, -0.2, 0.4, 1.0}) {
          double ref = cesaro_kernel(f, n, delta, 1.0, x);
          CHECK(std::abs(z(x) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
        }
        if (delta == 0.0) CHECK(std::abs(z(0.3) - kernel_kn(f, n, 1.0, 0.3)) < 1e-10);
      }
  }
}

TEST_CASE("partial sums") {
  const auto& p = kCone;
  auto pts = sample_points(p, 12, 77);
  // Route agreement for a generic function, n = 4.
  auto c = expand(smooth_full, p, 4);
  auto Sc = partial_sum(c, 4);
  auto Sk = partial_sum(smooth_full, p, 4);
  for (const auto& q : pts) CHECK(std::abs(Sc(q) - Sk(q)) < 1e-7);
  // S_0 f = f_hat_0.
  auto S0 = partial_sum(smooth_full, p, 0);
  CHECK(S0(pts[0]) == doctest::Approx(c.coefficients[0](0)).epsilon(1e-10));
  // Reproduction of polynomials of degree <= n.
  for (const auto& w : addition_cases()) {
    CAPTURE(describe(w));
    auto poly = [](const PointCH& q) {
      return 1.0 - 2.0 * q.t + q.t * q.t * q.x(0) + 0.5 * q.x(0) * q.x(0) - q.t * q.t * q.t;
    };
    for (int n : {3, 5}) {
      auto Sn = partial_sum(poly, w, n);
      auto cn = expand(poly, w, n);
      auto Snc = partial_sum(cn, n);
      for (const auto& q : sample_points(w, 6, 3)) {
        CHECK(std::abs(Sn(q) - poly(q)) < 1e-8);
        CHECK(std::abs(Snc(q) - poly(q)) < 1e-8);
      }
    }
  }
  // Even parity on the hyperboloid.
  auto hyp = WeightParams::gegenbauer_surface(2, 0.0, 0.5, 0.6);
  auto ev = [](const PointCH& q) { return q.t * q.t + q.x(1) * q.x(0); };
  auto Sh = partial_sum(ev, hyp, 2, Parity::Even);
  for (const auto& q : sample_points(hyp, 4, 2)) CHECK(std::abs(Sh(q) - ev(q)) < 1e-8);
  CHECK_THROWS_AS(partial_sum(ev, hyp, 2), CapabilityError);
}

TEST_CASE("Cesaro means") {
  const auto& p = kCone;
  double lambda = addition_index(p);
  auto pts = sample_points(p, 8, 19);
  auto S = partial_sum(smooth_full, p, 4);
  auto C0 = cesaro_mean(smooth_full, p, 4, 0.0);
  for (const auto& q : pts) CHECK(C0(q) == doctest::Approx(S(q)).epsilon(1e-14));
  CHECK_THROWS_AS(cesaro_mean(smooth_full, p, 4, -0.5), ParameterError);

  // Dual routes, full parity, including the odd part through beta + 1.
  auto c = expand(smooth_full, p, 5);
  auto odd_f = [](const PointCH& q) { return q.t * std::exp(q.x(0)); };
  auto co = expand(odd_f, p, 5);
  for (double delta : {0.5, 1.0, 3.0}) {
    auto Ck = cesaro_mean(smooth_full, p, 5, delta);
    auto Cc = cesaro_mean(c, 5, delta);
    auto Ok = cesaro_mean(odd_f, p, 5, delta, Parity::Odd);
    auto Oc = cesaro_mean(co, 5, delta);
    for (const auto& q : pts) {
      CHECK(std::abs(Ck(q) - Cc(q)) < 1e-8);
      CHECK(std::abs(Ok(q) - Oc(q)) < 1e-8);
    }
  }

  // Positivity for delta = 2 lambda + 1.
  double delta = 2.0 * lambda + 1.0;
  Family1D g = Family1D::gegenbauer(lambda);
  for (int n : {4, 8, 16}) {
    ZSeries z = cesaro_profile(lambda, n, delta);
    for (int i = 0; i <= 400; ++i) CHECK(z(-1.0 + i / 200.0) >= -1e-12);
    CHECK(cesaro_kernel(g, n, delta, 1.0, -1.0) >= -1e-12);
    auto grid = sample_points(p, 16, 101 + n);
    double kmin = 1e300;
    for (const auto& a : grid)
      for (const auto& b : grid) kmin = std::min(kmin, cesaro_kernel_value(p, n, delta, a, b));
    CHECK(kmin >= -1e-12);
  }
  auto bump = test_function(TestFunction::Bump);
  auto Cb = cesaro_mean(bump, p, 8, delta, Parity::Even);
  for (const auto& q : sample_points(p, 30, 4)) CHECK(Cb(q) >= -1e-10);
}

TEST_CASE("Cesaro consistency as delta -> 0") {
  const auto& p = kCone;
  auto S = partial_sum(smooth_full, p, 4);
  for (const auto& q : sample_points(p, 5, 61)) {
    double prev = 1e300;
    for (double delta : {1e-1, 1e-2, 1e-3}) {
      double err = std::abs(cesaro_mean(smooth_full, p, 4, delta)(q) - S(q));
      CHECK(err <= prev);
      prev = err;
    }
    CHECK(prev < 1e-2);
  }
}

TEST_CASE("even functions keep their Cesaro means even") {
  for (const auto& p : {kCone, WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5)}) {
    CAPTURE(describe(p));
    for (double delta : {0.0, 1.0, 2.5}) {
      auto C = cesaro_mean(smooth_even, p, 4, delta, Parity::Full, 10);
      auto e = expand(C, p, 4, Parity::Full, 8);
      CHECK(e.odd_max() < 1e-10);
    }
  }
}

TEST_CASE("summability table") {
  const auto& p = kCone;
  double lambda = addition_index(p);
  CHECK(lambda == doctest::Approx(1.0));
  auto t = summability_table(p, TestFunction::Bump, {0, 8, 16, 32}, {0.0, lambda + 1.0},
                             Probe::Brink);
  REQUIRE(t.rows.size() == 8);
  for (const auto& r : t.rows) {
    CHECK(r.probe == "brink");
    if (r.n == 0) CHECK(r.lebesgue_value == doctest::Approx(1.0).epsilon(1e-10));
  }
  auto value = [&](int n, double delta) {
    for (const auto& r : t.rows)
      if (r.n == n && r.delta == delta) return r.lebesgue_value;
    return -1.0;
  };
  CHECK(value(32, 0.0) >= 1.5 * value(8, 0.0));
  CHECK(value(16, 0.0) > value(8, 0.0));
  CHECK(value(16, lambda + 1.0) <= value(8, lambda + 1.0) * (1.0 + 1e-9));
  CHECK(value(32, lambda + 1.0) <= value(16, lambda + 1.0) * (1.0 + 1e-9));

  // Very large delta stays bounded at every probe.
  for (Probe pr : {Probe::Apex, Probe::Grid}) {
    auto big = summability_table(p, TestFunction::One, {8, 16}, {2.0 * lambda + 2.0}, pr);
    for (const auto& r : big.rows) {
      CHECK(r.lebesgue_value == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(r.error < 1e-10);
    }
  }

  for (const auto& q : probe_points(WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5, 0.4),
                                    Probe::Grid))
    CHECK(!validate(WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5, 0.4), q).has_value());
  CHECK_THROWS_AS(probe_points(WeightParams::hermite_surface(2, 0.0), Probe::Brink),
                  ArgumentError);
  CHECK_THROWS_AS(summability_table(WeightParams::hermite_surface(2, 0.0), TestFunction::One,
                                    {2}, {0.0}, Probe::Apex),
                  CapabilityError);
  CHECK(parse_probe(to_string(Probe::Grid)) == Probe::Grid);
  CHECK(parse_test_function("x1sq") == TestFunction::X1Squared);
  CHECK_THROWS_AS(parse_probe("rim"), ArgumentError);
}
