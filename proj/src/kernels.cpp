#include "hyperbasis/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperbasis {

namespace {

double alpha_of(const WeightParams& p) {
  return p.beta + (p.solid() ? p.mu : 0.0) + (p.d - 1) / 2.0;
}

bool at_least(double v, double bound) { return v >= bound - kDegenerateThreshold; }

void require_addition(const WeightParams& p) {
  if (!has_addition_formula(p))
    throw CapabilityError(
        "no addition formula for " + describe(p) +
        ": requires a Gegenbauer weight with beta, gamma >= 0 (surface) or beta >= 1/2, "
        "gamma, mu >= 0 (solid)");
}

void require_mehler(const WeightParams& p) {
  bool ok = p.family == WeightFamily::Hermite &&
            (p.solid() ? at_least(p.beta, 0.5) && at_least(p.mu, 0.0) : at_least(p.beta, 0.0));
  if (!ok)
    throw CapabilityError("no Mehler formula for " + describe(p) +
                          ": requires a Hermite weight with beta >= 0 (surface) or beta >= 1/2, "
                          "mu >= 0 (solid)");
}

void require_r(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw ArgumentError("Poisson radius r must satisfy 0 <= r < 1");
}

// Axis rules of the v-free part of the addition measure.
struct EtaRules {
  QuadratureRule z1, z2, u;
};

EtaRules eta_rules(const WeightParams& p, int npts) {
  EtaRules r;
  if (p.solid()) {
    r.z1 = one_sided_beta_rule(p.mu + (p.d - 1) / 2.0, p.beta - 1.5, npts);
    r.z2 = symmetric_beta_rule(p.beta, npts);
    r.u = symmetric_beta_rule(p.mu, npts);
  } else {
    r.z1 = one_sided_beta_rule((p.d - 2) / 2.0, p.beta - 1.0, npts);
    r.z2 = symmetric_beta_rule(p.beta + 0.5, npts);
    r.u.nodes = {0.0};
    r.u.weights = {1.0};
  }
  return r;
}

// Pieces of eta = (1-z1)/2 (X + u R) + (1+z1)/2 z2 st for a transferred pair.
struct PairGeometry {
  double X, R, st;
};

PairGeometry geometry(const WeightParams& p, const PointCH& a, const PointCH& b) {
  PairGeometry g;
  g.X = a.x.dot(b.x);
  g.R = p.solid() ? std::sqrt(std::max(0.0, a.t * a.t - a.x.squaredNorm())) *
                        std::sqrt(std::max(0.0, b.t * b.t - b.x.squaredNorm()))
                  : 0.0;
  g.st = a.t * b.t;
  return g;
}

// E[f(eta)] over the v-free measure.
template <class F>
double eta_average(const EtaRules& r, const PairGeometry& g, F&& f) {
  double total = 0.0;
  for (std::size_t i = 0; i < r.z1.size(); ++i) {
    double A = (1.0 - r.z1.nodes[i]) / 2.0, B = (1.0 + r.z1.nodes[i]) / 2.0;
    for (std::size_t j = 0; j < r.z2.size(); ++j) {
      double base = B * r.z2.nodes[j] * g.st;
      double wij = r.z1.weights[i] * r.z2.weights[j];
      for (std::size_t k = 0; k < r.u.size(); ++k) {
        double eta = A * (g.X + r.u.nodes[k] * g.R) + base;
        total += wij * r.u.weights[k] * f(eta);
      }
    }
  }
  return total;
}

WeightParams shifted_beta(const WeightParams& p) {
  WeightParams q = p;
  q.beta += 1.0;
  return q;
}

}  // namespace

PointCH transfer_point(const WeightParams& p, const PointCH& q) {
  if (p.upper() || p.rho == 0.0) return q;
  return {q.x, std::sqrt(std::max(0.0, q.t * q.t - p.rho * p.rho))};
}

bool has_addition_formula(const WeightParams& p) {
  if (p.family != WeightFamily::Gegenbauer) return false;
  if (!at_least(p.gamma, 0.0)) return false;
  if (p.solid()) return at_least(p.beta, 0.5) && at_least(p.mu, 0.0);
  return at_least(p.beta, 0.0);
}

double addition_index(const WeightParams& p) { return alpha_of(p) + p.gamma; }

double kernel_sum(const WeightParams& p, int n, const PointCH& a, const PointCH& b,
                  Parity parity) {
  Construction c = (!p.upper() && p.rho > 0.0 && parity != Parity::Even) ? Construction::Generic
                                                                          : Construction::Named;
  DegreeBasis B(p, n, parity, c);
  if (!B.norms().allFinite())
    throw CapabilityError("reproducing kernels need a normalizable weight");
  VectorXd u = B.eval(a), v = B.eval(b);
  return (u.cwiseProduct(v).cwiseQuotient(B.norms())).sum();
}

ParityParts parity_split(const WeightParams& p, int n, const PointCH& a, const PointCH& b) {
  if (p.upper()) throw CapabilityError("parity splitting needs a weight even in t");
  double k1 = kernel_sum(p, n, a, b);
  double k2 = kernel_sum(p, n, a, {b.x, -b.t});
  return {(k1 + k2) / 2.0, (k1 - k2) / 2.0};
}

double translate_even(const WeightParams& p, const std::function<double(double)>& g,
                      const PointCH& a, const PointCH& b, int npts) {
  require_addition(p);
  int np = npts > 0 ? npts : integral_nodes(0);
  PointCH pa = transfer_point(p, a), pb = transfer_point(p, b);
  EtaRules r = eta_rules(p, np);
  PairGeometry geo = geometry(p, pa, pb);
  double W = std::sqrt(std::max(0.0, 1.0 - pa.t * pa.t)) *
             std::sqrt(std::max(0.0, 1.0 - pb.t * pb.t));
  if (W == 0.0) return eta_average(r, geo, g);
  QuadratureRule v = symmetric_beta_rule(p.gamma, np);
  return eta_average(r, geo, [&](double eta) {
    double s = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) s += v.weights[l] * g(eta + v.nodes[l] * W);
    return s;
  });
}

double addition_kernel(const WeightParams& p, int n, Parity parity, const PointCH& a,
                       const PointCH& b) {
  if (n < 0) throw ArgumentError("kernel degree must be nonnegative");
  require_addition(p);
  if (p.rho > 0.0 && parity != Parity::Even)
    throw CapabilityError(
        "odd-parity hyperboloid kernels (rho > 0) have no addition formula; use parity=even");
  int np = integral_nodes(n);
  double even = 0.0, odd = 0.0;
  if (parity != Parity::Odd) {
    double lambda = addition_index(p);
    even = translate_even(
        p, [&](double x) { return detail::zn_unchecked(lambda, n, x); }, a, b, np);
  }
  if (parity != Parity::Even && n >= 1) {
    WeightParams q = shifted_beta(p);
    double alpha = alpha_of(p);
    double lambda = addition_index(q);
    double inner = translate_even(
        q, [&](double x) { return detail::zn_unchecked(lambda, n - 1, x); }, a, b, np);
    odd = (alpha + p.gamma + 1.0) / (alpha + 0.5) * a.t * b.t * inner;
  }
  return even + odd;
}

double addition_surface(const WeightParams& p, int n, Parity parity, const PointCH& a,
                        const PointCH& b) {
  if (p.solid()) throw ArgumentError("addition_surface needs surface parameters");
  return addition_kernel(p, n, parity, a, b);
}

double addition_solid(const WeightParams& p, int n, Parity parity, const PointCH& a,
                      const PointCH& b) {
  if (!p.solid()) throw ArgumentError("addition_solid needs solid parameters");
  return addition_kernel(p, n, parity, a, b);
}

double closed_form(const WeightParams& p, int n, const PointCH& a, const PointCH& b) {
  if (n < 0) throw ArgumentError("kernel degree must be nonnegative");
  bool thin = std::abs(p.gamma) < kDegenerateThreshold;
  if (p.family == WeightFamily::Gegenbauer && !p.solid() && std::abs(p.beta) < kDegenerateThreshold &&
      at_least(p.gamma, 0.0)) {
    double lambda = p.gamma + (p.d - 1) / 2.0;
    double X, W;
    if (p.rho > 0.0) {
      // Hyperboloid: sqrt(1-rho^2/t^2) sqrt(1-rho^2/s^2) |t||s| <xi, eta> with xi = x/|x|.
      double r2 = p.rho * p.rho;
      double nx = a.x.norm(), ny = b.x.norm();
      double cosine = (nx > 0.0 && ny > 0.0) ? a.x.dot(b.x) / (nx * ny) : 0.0;
      X = std::sqrt(std::max(0.0, 1.0 - r2 / (a.t * a.t))) *
          std::sqrt(std::max(0.0, 1.0 - r2 / (b.t * b.t))) * std::abs(a.t) * std::abs(b.t) *
          cosine;
      W = std::sqrt(std::max(0.0, 1.0 + r2 - b.t * b.t)) *
          std::sqrt(std::max(0.0, 1.0 + r2 - a.t * a.t));
    } else {
      X = a.x.dot(b.x);
      W = std::sqrt(std::max(0.0, 1.0 - b.t * b.t)) * std::sqrt(std::max(0.0, 1.0 - a.t * a.t));
    }
    if (thin)
      return 0.5 * (detail::zn_unchecked(lambda, n, X + W) + detail::zn_unchecked(lambda, n, X - W));
    QuadratureRule v = symmetric_beta_rule(p.gamma, integral_nodes(n));
    return v.integrate([&](double s) { return detail::zn_unchecked(lambda, n, X + s * W); });
  }
  if (p.family == WeightFamily::Gegenbauer && p.solid() &&
      std::abs(p.beta - 0.5) < kDegenerateThreshold && at_least(p.gamma, 0.0) &&
      at_least(p.mu, 0.0)) {
    PointCH pa = transfer_point(p, a), pb = transfer_point(p, b);
    double lambda = addition_index(p);
    double X = pa.x.dot(pb.x);
    double R = std::sqrt(std::max(0.0, pa.t * pa.t - pa.x.squaredNorm())) *
               std::sqrt(std::max(0.0, pb.t * pb.t - pb.x.squaredNorm()));
    double W = std::sqrt(std::max(0.0, 1.0 - pb.t * pb.t)) *
               std::sqrt(std::max(0.0, 1.0 - pa.t * pa.t));
    if (thin && std::abs(p.mu) < kDegenerateThreshold) {
      double s = 0.0;
      for (double e1 : {-1.0, 1.0})
        for (double e2 : {-1.0, 1.0}) s += detail::zn_unchecked(lambda, n, X + e1 * R + e2 * W);
      return s / 4.0;
    }
    int np = integral_nodes(n);
    QuadratureRule u = symmetric_beta_rule(p.mu, np), v = symmetric_beta_rule(p.gamma, np);
    return u.integrate([&](double uu) {
      return v.integrate(
          [&](double vv) { return detail::zn_unchecked(lambda, n, X + uu * R + vv * W); });
    });
  }
  throw CapabilityError("no closed form for " + describe(p) +
                        ": available for surface beta = 0 and solid beta = 1/2 Gegenbauer weights");
}

double hyperboloid_transfer(const WeightParams& p, int n, const PointCH& a, const PointCH& b,
                            Route inner) {
  if (p.upper() || !(p.rho > 0.0))
    throw ArgumentError("hyperboloid_transfer needs rho > 0 on a double domain");
  WeightParams c = cone_params(p);
  PointCH pa = transfer_point(p, a), pb = transfer_point(p, b);
  switch (inner) {
    case Route::Sum: return kernel_sum(c, n, pa, pb, Parity::Even);
    case Route::Integral: return addition_kernel(c, n, Parity::Even, pa, pb);
    case Route::Closed: return closed_form(c, n, pa, pb);
  }
  return 0.0;
}

double kernel(const KernelSpec& s, int n, const PointCH& a, const PointCH& b) {
  switch (s.route) {
    case Route::Sum: return kernel_sum(s.params, n, a, b, s.parity);
    case Route::Integral: return addition_kernel(s.params, n, s.parity, a, b);
    case Route::Closed:
      if (s.parity != Parity::Even)
        throw CapabilityError("closed forms exist for the even-parity kernel only");
      return closed_form(s.params, n, a, b);
  }
  return 0.0;
}

double poisson_gegenbauer(const WeightParams& p, double r, const PointCH& a, const PointCH& b,
                          int npts) {
  require_r(r);
  if (r == 0.0 && has_addition_formula(p)) return 1.0;
  double lambda = addition_index(p);
  double c = 1.0 - r * r;
  return translate_even(
      p, [&](double x) { return c / std::pow(1.0 - 2.0 * r * x + r * r, lambda + 1.0); }, a, b,
      npts > 0 ? npts : 40);
}

double mehler(const WeightParams& p, double r, const PointCH& a, const PointCH& b, int npts) {
  require_r(r);
  require_mehler(p);
  if (r == 0.0) return 1.0;
  PointCH pa = transfer_point(p, a), pb = transfer_point(p, b);
  double q = 1.0 - r * r;
  double pref = std::pow(q, -(alpha_of(p) + 0.5)) *
                std::exp(-(pa.t * pa.t + pb.t * pb.t) * r * r / q);
  PairGeometry geo = geometry(p, pa, pb);
  if (!p.solid() && std::abs(p.beta) < kDegenerateThreshold)
    return pref * std::exp(2.0 * r * geo.X / q);
  EtaRules rules = eta_rules(p, npts > 0 ? npts : integral_nodes(0));
  return pref * eta_average(rules, geo, [&](double eta) { return std::exp(2.0 * r * eta / q); });
}

KernelTerms kernel_terms(const WeightParams& p, int nmax, Parity parity, const PointCH& a,
                         const PointCH& b) {
  KernelTerms out;
  Construction c = (!p.upper() && p.rho > 0.0 && parity != Parity::Even) ? Construction::Generic
                                                                          : Construction::Named;
  for (int n = 0; n <= nmax; ++n) {
    DegreeBasis B(p, n, parity, c);
    if (!B.norms().allFinite())
      throw CapabilityError("reproducing kernels need a normalizable weight");
    VectorXd u = B.eval(a).cwiseQuotient(B.norms().cwiseSqrt());
    VectorXd v = B.eval(b).cwiseQuotient(B.norms().cwiseSqrt());
    out.ab.push_back(u.dot(v));
    out.aa.push_back(u.squaredNorm());
    out.bb.push_back(v.squaredNorm());
  }
  return out;
}

TruncatedSeries poisson_series(const WeightParams& p, double r, int N, const PointCH& a,
                               const PointCH& b, Parity parity, int extra) {
  require_r(r);
  if (N < 0 || extra < 4) throw ArgumentError("series needs N >= 0 and extra >= 4");
  KernelTerms kt = kernel_terms(p, N + extra, parity, a, b);
  TruncatedSeries out;
  out.terms = N + 1;
  double rn = 1.0;
  std::vector<double> bound;
  for (int n = 0; n <= N + extra; ++n) {
    if (n <= N) out.sum += kt.ab[n] * rn;
    bound.push_back(std::sqrt(std::max(0.0, kt.aa[n]) * std::max(0.0, kt.bb[n])) * rn);
    rn *= r;
  }
  double tail = 0.0;
  for (int n = N + 1; n <= N + extra; ++n) tail += bound[n];
  // Terms may alternate in size between even and odd n, so the decay is measured over pairs.
  int K = N + extra;
  double pair_last = bound[K] + bound[K - 1], pair_prev = bound[K - 2] + bound[K - 3];
  double q2 = std::max(r * r, pair_prev > 0.0 ? pair_last / pair_prev : 0.0);
  if (q2 >= 1.0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = tail + pair_last * q2 / (1.0 - q2);
  }
  return out;
}

}  // namespace hyperbasis
