#include <doctest.h>

#include <cmath>
#include <set>

#include "hyperbasis/diffops.hpp"
#include "hyperbasis/errors.hpp"

using namespace hyperbasis;

namespace {

PointCH surface_point(double t, double rho, int d, double angle = 0.3) {
  VectorXd x = VectorXd::Zero(d);
  double r = std::sqrt(t * t - rho * rho);
  x(0) = r * std::cos(angle);
  x(1) = r * std::sin(angle);
  return {x, t};
}

// A point inside the operator's default domain away from every singular set.
PointCH interior_point(const WeightParams& p) {
  double rho = p.upper() ? 0.0 : p.rho;
  double b = p.brink();
  double t = std::isfinite(b) ? 0.5 * (rho + b) : rho + 0.45;
  if (p.kind == DomainKind::Surface) return surface_point(t, rho, p.d);
  VectorXd x = VectorXd::Zero(p.d);
  x(0) = 0.3 * std::sqrt(t * t - rho * rho);
  x(p.d - 1) += -0.2 * std::sqrt(t * t - rho * rho);
  return {x, t};
}

}  // namespace

TEST_CASE("registry") {
  const auto& names = operator_names();
  CHECK(names.size() == 16);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == 16);
  for (const auto& n : names) {
    const auto& op = registry(n);
    CHECK(op.name == n);
    CHECK(static_cast<bool>(op.eigenvalue));
    for (int d : {2, 3}) CHECK(eigenvalue(n, 0, default_params(op, d)) == 0.0);
    CHECK(!op.mismatch(default_params(op, 2), op.parity).has_value());
  }
  CHECK_THROWS_AS(registry("sfConeGdiffX"), ArgumentError);
  CHECK(eigenvalue("sfConeGdiff", 2, WeightParams::gegenbauer_surface(2, 0.0, 0.5)) == -8.0);
  CHECK(eigenvalue("sfconeHdiff", 5, WeightParams::hermite_surface(2, 0.0)) == -10.0);
  CHECK(eigenvalue("solidConeGdiff", 2, WeightParams::gegenbauer_solid(2, 0.5, 0.5, 0.5)) ==
        -2.0 * (2.0 + 1.0 + 1.0 + 2.0));
  CHECK(eigenvalue("solidConeGdiffO", 3, WeightParams::gegenbauer_solid(3, -0.5, 0.5, 0.5)) ==
        -3.0 * (3.0 + 1.0 + 1.0 + 3.0 - 2.0));
  CHECK(eigenvalue("diffJsf", 2, WeightParams::jacobi_upper_surface(2, -1.0, 0.5)) ==
        -2.0 * (2.0 + 0.5 + 1.0));
  CHECK(eigenvalue("ConeLaguerrediff", 7, WeightParams::laguerre_upper_solid(2, 0.0, 0.5)) == -7.0);
  CHECK_THROWS_AS(eigenvalue("sfConeGdiff", -1, WeightParams{}), ArgumentError);
}

TEST_CASE("apply: constants see only the zeroth-order term") {
  for (const auto& n : operator_names()) {
    const auto& op = registry(n);
    for (int d : {2, 3}) {
      auto p = default_params(op, d);
      PointCH q = interior_point(p);
      double v = apply(op, p, [](const PointCH&) { return 1.0; }, q);
      double z = op.zeroth ? op.zeroth(q.t, p) : 0.0;
      CAPTURE(n);
      CHECK(v == z);
    }
  }
}

TEST_CASE("apply: hand-computed symbols") {
  auto p = WeightParams::gegenbauer_surface(2, 0.0, 0.5);
  const auto& op = registry("sfConeGdiff");
  for (double t : {0.3, -0.6, 0.9}) {
    PointCH q = surface_point(t, 0.0, 2, 1.1);
    double got = apply(op, p, [](const PointCH& r) { return r.t; }, q);
    double want = -(2.0 * p.gamma + p.d) * t + (p.d - 1.0) / t;
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
  // u = x1 t on the solid cone: u_t = x1, E u = E^2 u = x1 t, E u_t = x1.
  auto s = WeightParams::gegenbauer_solid(3, 0.5, 0.5, 0.5);
  const auto& so = registry("solidConeGdiff");
  PointCH q{VectorXd::Zero(3), 0.8};
  q.x << 0.2, -0.3, 0.1;
  double t = q.t, x1 = q.x(0), c = 2.0 * s.gamma + 2.0 * s.mu + s.d;
  double want = -x1 * t + 2.0 / t * (1.0 - t * t) * x1 +
                ((2.0 * s.mu + s.d) / t - t - c * t) * x1 - c * x1 * t;
  CHECK(apply(so, s, [](const PointCH& r) { return r.x(0) * r.t; }, q) ==
        doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("apply: the documented Gegenbauer element") {
  auto p = WeightParams::gegenbauer_surface(2, 0.0, 0.5);
  DegreeBasis B(p, 2, Parity::Even);
  int idx = -1;
  for (int i = 0; i < B.size(); ++i)
    if (B.indices()[i].m == 0) idx = i;
  REQUIRE(idx >= 0);
  auto u = [&](const PointCH& q) { return B.eval(idx, q); };
  PointCH q = surface_point(0.7, 0.0, 2);
  double v = u(q);
  double Lu = apply(registry("sfConeGdiff"), p, u, q);
  CHECK(std::abs(Lu + 8.0 * v) / std::abs(v) < 1e-5);
}

TEST_CASE("apply: margin and domain errors") {
  auto p = WeightParams::gegenbauer_surface(2, 0.0, 0.5);
  const auto& op = registry("sfConeGdiff");
  auto one = [](const PointCH&) { return 1.0; };
  CHECK_THROWS_AS(apply(op, p, one, surface_point(0.01, 0.0, 2)), ArgumentError);
  CHECK_NOTHROW(apply(op, p, one, surface_point(0.01, 0.0, 2), {}, 0.005));
  PointCH off = surface_point(0.5, 0.0, 2);
  off.x *= 1.2;
  CHECK_THROWS_AS(apply(op, p, one, off), ArgumentError);
  auto h = WeightParams::hermite_surface(2, 0.0, 1.0);
  CHECK_THROWS_AS(apply(registry("sfHypHdiff"), h, one, surface_point(1.02, 1.0, 2)),
                  ArgumentError);
  CHECK_THROWS_AS(apply(registry("solidConeGdiff"), p, one, surface_point(0.5, 0.0, 2)),
                  ArgumentError);
}

TEST_CASE("eigencheck: every operator, d = 2 and 3") {
  for (const auto& n : operator_names()) {
    const auto& op = registry(n);
    for (int d : {2, 3}) {
      auto p = default_params(op, d);
      CAPTURE(n);
      CAPTURE(describe(p));
      EigenReport r = eigencheck(op, p);
      CHECK(r.samples == 30);
      CHECK(r.max_residual < 1e-5);
      for (const auto& row : r.rows)
        if (row.n == 0) CHECK(row.max_residual == 0.0);
      for (const auto& row : r.rows) CHECK(row.max_residual < 1e-5);
    }
  }
}

TEST_CASE("eigencheck: other parameter values in the space") {
  struct Case {
    const char* name;
    WeightParams p;
  };
  for (const auto& c : {Case{"sfConeGdiff", WeightParams::gegenbauer_surface(2, 0.0, 0.0)},
                        Case{"sfConeGdiff", WeightParams::gegenbauer_surface(3, 0.0, 2.0)},
                        Case{"sfHypGdiff", WeightParams::gegenbauer_surface(2, 0.0, 1.5, 0.5)},
                        Case{"solidConeGdiff", WeightParams::gegenbauer_solid(2, 0.5, 0.0, 1.0)},
                        Case{"solidHypGdiff", WeightParams::gegenbauer_solid(3, 0.5, 1.0, 0.0, 0.5)},
                        Case{"solidHypHdiff", WeightParams::hermite_solid(2, 0.5, 0.5, 1.0)},
                        Case{"sfHypHdiff", WeightParams::hermite_surface(3, 0.0, 0.5)},
                        Case{"diffJsf", WeightParams::jacobi_upper_surface(3, -1.0, 2.0)},
                        Case{"diffJ", WeightParams::jacobi_upper_solid(2, 0.0, 1.0, 0.0)},
                        Case{"ConeLaguerrediff", WeightParams::laguerre_upper_solid(3, 0.0, 1.5)}}) {
    CAPTURE(c.name);
    CAPTURE(describe(c.p));
    CHECK(eigencheck(registry(c.name), c.p).max_residual < 1e-5);
  }
}

TEST_CASE("eigencheck: space mismatch names the requirement") {
  const auto& op = registry("solidConeGdiff");
  auto wrong = WeightParams::gegenbauer_solid(2, 1.0, 0.5, 0.5);
  CHECK_THROWS_AS(eigencheck(op, wrong), CapabilityError);
  try {
    eigencheck(op, wrong);
  } catch (const CapabilityError& e) {
    std::string msg = e.what();
    CHECK(msg.find("beta = 0.5") != std::string::npos);
    CHECK(msg.find("even") != std::string::npos);
  }
  EigencheckOptions o;
  o.parity = Parity::Odd;
  CHECK_THROWS_AS(eigencheck(op, default_params(op, 2), o), CapabilityError);
  CHECK_THROWS_AS(eigencheck(registry("sfHypGdiff"), WeightParams::gegenbauer_surface(2, 0.0, 0.5)),
                  CapabilityError);
}

TEST_CASE("negative control: the beta = 0 operator on beta = 1 elements") {
  EigencheckOptions o;
  o.check_space = false;
  EigenReport r = eigencheck(registry("sfConeGdiff"), WeightParams::gegenbauer_surface(2, 1.0, 0.5), o);
  int checked = 0;
  for (const auto& row : r.rows) {
    if (row.n >= 2 && row.m < row.n) {
      CHECK(row.max_residual > 1e-2);
      ++checked;
    }
    if (row.m == row.n) CHECK(row.max_residual < 1e-5);
  }
  CHECK(checked >= 4);
}

TEST_CASE("finite-difference convergence") {
  for (const char* n : {"sfConeGdiff", "solidConeGdiff", "sfHypHdiff", "diffJ"}) {
    const auto& op = registry(n);
    auto p = default_params(op, 2);
    EigencheckOptions coarse, fine;
    coarse.samples = fine.samples = 10;
    coarse.fd = {1e-2, 2};
    fine.fd = {5e-3, 2};
    double a = eigencheck(op, p, coarse).max_residual;
    double b = eigencheck(op, p, fine).max_residual;
    CAPTURE(n);
    CHECK(a / b > 3.0);
    CHECK(a / b < 5.0);
  }
}
