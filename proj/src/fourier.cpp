#include "hyperbasis/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "hyperbasis/errors.hpp"

namespace hyperbasis {

namespace {

Construction construction_for(const WeightParams& p, Parity parity) {
  return (!p.upper() && p.rho > 0.0 && parity != Parity::Even) ? Construction::Generic
                                                               : Construction::Named;
}

bool matches(const BasisIndex& i, Parity parity) {
  if (parity == Parity::Full) return true;
  return i.odd() == (parity == Parity::Odd);
}

// Nodes per axis that make T exact for polynomial profiles of degree n.
int poly_nodes(int n) { return n / 2 + 2; }

QuadratureRule varpi_rule(double lambda, int npts) {
  return gauss_rule(WeightSpec::jacobi(lambda - 0.5, lambda - 0.5), npts);
}

// Domain rule with f sampled at its points.
struct SampledFunction {
  DomainRule rule;
  VectorXd values;
};

std::shared_ptr<const SampledFunction> sample(const DomainFunction& f, const WeightParams& p,
                                              int degree) {
  auto s = std::make_shared<SampledFunction>();
  s->rule = domain_rule(p, degree);
  s->values.resize(s->rule.size());
  for (int j = 0; j < s->rule.size(); ++j) s->values(j) = f(s->rule.points[j]);
  return s;
}

struct CesaroKernel {
  WeightParams even_p, odd_p;
  ZSeries even{0.0, VectorXd()}, odd{0.0, VectorXd()};
  double c_odd = 0.0;
  bool use_even = false, use_odd = false;
  int npts = 2;

  CesaroKernel(const WeightParams& p, int n, double delta, Parity parity) {
    if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
    if (delta < 0.0) throw ParameterError("Cesaro order delta must be >= 0");
    if (!has_addition_formula(p))
      throw CapabilityError("no addition formula for " + describe(p) +
                            ": needs a Gegenbauer weight with surface beta >= 0 or solid "
                            "beta >= 1/2, gamma, mu >= 0");
    if (p.rho > 0.0 && parity != Parity::Even)
      throw CapabilityError(
          "odd-parity hyperboloid kernels (rho > 0) have no addition formula; use parity=even");
    npts = poly_nodes(n);
    even_p = p;
    use_even = parity != Parity::Odd;
    if (use_even) even = cesaro_profile(addition_index(p), n, delta);
    use_odd = parity != Parity::Even && n >= 1;
    if (use_odd) {
      odd_p = p;
      odd_p.beta += 1.0;
      double alpha = addition_index(p) - p.gamma;
      c_odd = (alpha + p.gamma + 1.0) / (alpha + 0.5);
      VectorXd c(n);
      for (int j = 0; j < n; ++j) c(j) = cesaro_weight(n, j + 1, delta);
      odd = ZSeries(addition_index(odd_p), c);
    }
  }

  double operator()(const PointCH& a, const PointCH& b) const {
    double v = 0.0;
    if (use_even) v += translate_even(even_p, even, a, b, npts);
    if (use_odd) v += c_odd * a.t * b.t * translate_even(odd_p, odd, a, b, npts);
    return v;
  }
};

DomainFunction convolve_kernel(std::shared_ptr<const SampledFunction> s,
                               std::shared_ptr<const CesaroKernel> k) {
  return [s, k](const PointCH& a) {
    double total = 0.0;
    for (int j = 0; j < s->rule.size(); ++j)
      if (s->values(j) != 0.0) total += s->rule.weights[j] * s->values(j) * (*k)(a, s->rule.points[j]);
    return total;
  };
}

}  // namespace

double ExpansionCoefficients::coefficient(const BasisIndex& i) const {
  if (i.n < 0 || i.n > n_max) throw ArgumentError("coefficient degree outside 0..n_max");
  const auto& idx = bases[i.n].indices();
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (idx[j] == i) return coefficients[i.n](static_cast<Eigen::Index>(j));
  throw ArgumentError("no such basis index in the expansion");
}

double ExpansionCoefficients::odd_max() const {
  double m = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const auto& idx = bases[n].indices();
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (idx[j].odd()) m = std::max(m, std::abs(coefficients[n](static_cast<Eigen::Index>(j))));
  }
  return m;
}

double ExpansionCoefficients::parseval_sum(int n) const {
  if (n > n_max) throw ArgumentError("degree exceeds n_max");
  double s = 0.0;
  for (int k = 0; k <= n; ++k)
    s += coefficients[k].cwiseAbs2().cwiseProduct(bases[k].norms()).sum();
  return s;
}

double ExpansionCoefficients::component(int n, const PointCH& q, Parity par) const {
  if (n < 0 || n > n_max) throw ArgumentError("degree outside 0..n_max");
  if (params.upper() && par != Parity::Full)
    throw CapabilityError("upper-cone polynomials have no parity in t; use parity=full");
  VectorXd v = bases[n].eval(q);
  const auto& idx = bases[n].indices();
  double s = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (matches(idx[j], par)) s += coefficients[n](static_cast<Eigen::Index>(j)) * v(static_cast<Eigen::Index>(j));
  return s;
}

int fourier_quad_degree(int n, int quad_degree) {
  return quad_degree > 0 ? quad_degree : n + kDefaultIntegrationDegree;
}

ExpansionCoefficients expand(const DomainFunction& f, const WeightParams& p, int n_max,
                             Parity parity, int quad_degree) {
  if (n_max < 0) throw ArgumentError("n_max must be nonnegative");
  ExpansionCoefficients c;
  c.params = p;
  c.parity = parity;
  c.n_max = n_max;
  Construction con = construction_for(p, parity);
  for (int n = 0; n <= n_max; ++n) {
    c.bases.emplace_back(p, n, parity, con);
    if (!c.bases.back().norms().allFinite())
      throw CapabilityError("Fourier coefficients need a normalizable weight");
    c.coefficients.push_back(VectorXd::Zero(c.bases.back().size()));
  }
  DomainRule rule = domain_rule(p, fourier_quad_degree(2 * n_max, quad_degree));
  for (int j = 0; j < rule.size(); ++j) {
    double wf = rule.weights[j] * f(rule.points[j]);
    if (wf == 0.0) continue;
    for (int n = 0; n <= n_max; ++n) c.coefficients[n] += wf * c.bases[n].eval(rule.points[j]);
  }
  for (int n = 0; n <= n_max; ++n)
    c.coefficients[n] = c.coefficients[n].cwiseQuotient(c.bases[n].norms());
  return c;
}

DomainFunction project(const ExpansionCoefficients& c, int n, Parity parity) {
  if (n < 0 || n > c.n_max) throw ArgumentError("projection degree outside 0..n_max");
  auto cc = std::make_shared<const ExpansionCoefficients>(c);
  return [cc, n, parity](const PointCH& q) { return cc->component(n, q, parity); };
}

DomainFunction project(const DomainFunction& f, const KernelSpec& spec, int n, int quad_degree) {
  if (n < 0) throw ArgumentError("projection degree must be nonnegative");
  auto s = sample(f, spec.params, fourier_quad_degree(n, quad_degree));
  if (spec.route == Route::Sum) {
    // Basis values at the rule points, scaled by w f / h.
    auto B = std::make_shared<DegreeBasis>(spec.params, n, spec.parity,
                                           construction_for(spec.params, spec.parity));
    if (!B->norms().allFinite())
      throw CapabilityError("reproducing kernels need a normalizable weight");
    VectorXd acc = VectorXd::Zero(B->size());
    for (int j = 0; j < s->rule.size(); ++j)
      acc += s->rule.weights[j] * s->values(j) * B->eval(s->rule.points[j]);
    acc = acc.cwiseQuotient(B->norms());
    return [B, acc](const PointCH& q) { return B->eval(q).dot(acc); };
  }
  return [s, spec, n](const PointCH& q) {
    double total = 0.0;
    for (int j = 0; j < s->rule.size(); ++j)
      total += s->rule.weights[j] * s->values(j) * kernel(spec, n, q, s->rule.points[j]);
    return total;
  };
}

double translate(const Profile& g, const WeightParams& p, const PointCH& a, const PointCH& b,
                 int npts) {
  return translate_even(p, g, a, b, npts);
}

double lambda_n(const Profile& g, double lambda, int n, int npts) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
  Family1D f = Family1D::gegenbauer(std::max(lambda, 0.0));
  double c1 = eval(f, n, 1.0);
  QuadratureRule r = varpi_rule(lambda, npts > 0 ? npts : integral_nodes(n));
  return r.integrate([&](double x) { return g(x) * eval(f, n, x) / c1; });
}

DomainFunction convolve(const DomainFunction& f, const Profile& g, const WeightParams& p,
                        const ConvolutionOptions& o) {
  if (!has_addition_formula(p))
    throw CapabilityError("no addition formula for " + describe(p));
  auto s = sample(f, p, o.quad_degree > 0 ? o.quad_degree : kDefaultIntegrationDegree);
  int np = o.npts;
  return [s, g, p, np](const PointCH& a) {
    double total = 0.0;
    for (int j = 0; j < s->rule.size(); ++j)
      if (s->values(j) != 0.0)
        total += s->rule.weights[j] * s->values(j) * translate_even(p, g, a, s->rule.points[j], np);
    return total;
  };
}

double l1_norm(const DomainFunction& f, const WeightParams& p, int quad_degree) {
  DomainRule r = domain_rule(p, quad_degree > 0 ? quad_degree : kDefaultIntegrationDegree);
  return integrate(r, [&](const PointCH& q) { return std::abs(f(q)); });
}

double l1_norm(const Profile& g, double lambda, int npts) {
  return varpi_rule(lambda, npts).integrate([&](double x) { return std::abs(g(x)); });
}

ZSeries::ZSeries(double lambda, VectorXd coeffs) : lambda_(lambda), c_(std::move(coeffs)) {
  if (!(lambda > -0.5)) throw ParameterError("lambda must exceed -1/2");
}

double ZSeries::operator()(double x) const {
  const Eigen::Index n = c_.size();
  if (n == 0) return 0.0;
  double s = c_(0);
  if (lambda_ < kDegenerateThreshold) {
    // Z_k = 2 T_k for k >= 1.
    double tm = 1.0, t = x;
    for (Eigen::Index k = 1; k < n; ++k) {
      s += 2.0 * c_(k) * t;
      double next = 2.0 * x * t - tm;
      tm = t;
      t = next;
    }
    return s;
  }
  double cm = 1.0, c = 2.0 * lambda_ * x;
  for (Eigen::Index k = 1; k < n; ++k) {
    s += c_(k) * (k + lambda_) / lambda_ * c;
    double next = (2.0 * (k + lambda_) * x * c - (k + 2.0 * lambda_ - 1.0) * cm) / (k + 1.0);
    cm = c;
    c = next;
  }
  return s;
}

ZSeries cesaro_profile(double lambda, int n, double delta) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  VectorXd c(n + 1);
  for (int k = 0; k <= n; ++k) c(k) = cesaro_weight(n, k, delta);
  return ZSeries(lambda, c);
}

double cesaro_kernel_value(const WeightParams& p, int n, double delta, const PointCH& a,
                           const PointCH& b, Parity parity) {
  return CesaroKernel(p, n, delta, parity)(a, b);
}

DomainFunction cesaro_mean(const DomainFunction& f, const WeightParams& p, int n, double delta,
                           Parity parity, int quad_degree) {
  auto k = std::make_shared<const CesaroKernel>(p, n, delta, parity);
  return convolve_kernel(sample(f, p, fourier_quad_degree(n, quad_degree)), k);
}

DomainFunction partial_sum(const DomainFunction& f, const WeightParams& p, int n, Parity parity,
                           int quad_degree) {
  return cesaro_mean(f, p, n, 0.0, parity, quad_degree);
}

DomainFunction cesaro_mean(const ExpansionCoefficients& c, int n, double delta) {
  if (n < 0 || n > c.n_max) throw ArgumentError("degree outside 0..n_max");
  if (delta < 0.0) throw ParameterError("Cesaro order delta must be >= 0");
  auto cc = std::make_shared<const ExpansionCoefficients>(c);
  VectorXd w(n + 1);
  for (int k = 0; k <= n; ++k) w(k) = cesaro_weight(n, k, delta);
  return [cc, w, n](const PointCH& q) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += w(k) * cc->component(k, q);
    return s;
  };
}

DomainFunction partial_sum(const ExpansionCoefficients& c, int n) {
  return cesaro_mean(c, n, 0.0);
}

Probe parse_probe(const std::string& s) {
  if (s == "brink") return Probe::Brink;
  if (s == "apex") return Probe::Apex;
  if (s == "grid") return Probe::Grid;
  throw ArgumentError("unknown probe '" + s + "' (brink, apex, grid)");
}

std::string to_string(Probe p) {
  switch (p) {
    case Probe::Brink: return "brink";
    case Probe::Apex: return "apex";
    case Probe::Grid: return "grid";
  }
  return {};
}

TestFunction parse_test_function(const std::string& s) {
  if (s == "one") return TestFunction::One;
  if (s == "t2") return TestFunction::TSquared;
  if (s == "x1sq") return TestFunction::X1Squared;
  if (s == "bump") return TestFunction::Bump;
  throw ArgumentError("unknown test function '" + s + "' (one, t2, x1sq, bump)");
}

std::string to_string(TestFunction f) {
  switch (f) {
    case TestFunction::One: return "one";
    case TestFunction::TSquared: return "t2";
    case TestFunction::X1Squared: return "x1sq";
    case TestFunction::Bump: return "bump";
  }
  return {};
}

DomainFunction test_function(TestFunction f) {
  switch (f) {
    case TestFunction::One: return [](const PointCH&) { return 1.0; };
    case TestFunction::TSquared: return [](const PointCH& q) { return q.t * q.t; };
    case TestFunction::X1Squared: return [](const PointCH& q) { return q.x(0) * q.x(0); };
    case TestFunction::Bump:
      return [](const PointCH& q) { return std::exp(-4.0 * (q.t * q.t + q.x.squaredNorm())); };
  }
  return {};
}

std::vector<PointCH> probe_points(const WeightParams& p, Probe probe) {
  double b = p.brink();
  double rho = p.upper() ? 0.0 : p.rho;
  auto at = [&](double t) {
    VectorXd x = VectorXd::Zero(p.d);
    x(0) = std::sqrt(std::max(0.0, t * t - rho * rho));
    return PointCH{x, t};
  };
  switch (probe) {
    case Probe::Brink:
      if (!std::isfinite(b)) throw ArgumentError("the brink probe needs a compact domain");
      return {at(b)};
    case Probe::Apex: return {PointCH{VectorXd::Zero(p.d), rho}};
    case Probe::Grid: {
      double top = std::isfinite(b) ? b : rho + 2.5;
      std::vector<PointCH> out;
      for (int i = 0; i <= 4; ++i) out.push_back(at(rho + (top - rho) * i / 4.0));
      return out;
    }
  }
  return {};
}

SummabilityTable summability_table(const WeightParams& p, TestFunction tf,
                                   const std::vector<int>& n_list,
                                   const std::vector<double>& delta_list, Probe probe,
                                   int quad_degree) {
  SummabilityTable t;
  t.params = p;
  t.test_function = to_string(tf);
  std::vector<PointCH> probes = probe_points(p, probe);
  DomainFunction f = test_function(tf);
  for (int n : n_list) {
    DomainRule rule = domain_rule(p, quad_degree > 0 ? quad_degree : 4 * n + 16);
    VectorXd fv(rule.size());
    for (int j = 0; j < rule.size(); ++j) fv(j) = f(rule.points[j]);
    for (double delta : delta_list) {
      CesaroKernel k(p, n, delta, Parity::Even);
      SummabilityRow row{n, delta, to_string(probe), 0.0, 0.0};
      for (const PointCH& a : probes) {
        double L = 0.0, S = 0.0;
        for (int j = 0; j < rule.size(); ++j) {
          double kv = k(a, rule.points[j]);
          L += rule.weights[j] * std::abs(kv);
          S += rule.weights[j] * fv(j) * kv;
        }
        row.lebesgue_value = std::max(row.lebesgue_value, L);
        row.error = std::max(row.error, std::abs(S - f(a)));
      }
      t.rows.push_back(row);
    }
  }
  return t;
}

}  // namespace hyperbasis
