#include "hyperbasis/bases.hpp"

#include <cmath>
#include <limits>

namespace hyperbasis {

namespace {

double binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// beta, shifted by mu on solids.
double beta_eff(const WeightParams& p) { return p.beta + (p.solid() ? p.mu : 0.0); }

// Monic orthogonal polynomial of degree k from a recurrence.
double monic_eval(const MonicRecurrence& r, int k, double s) {
  double q = 0.0, p = 1.0;
  for (int j = 0; j < k; ++j) {
    double next = (s - r.alpha[j]) * p - (j > 0 ? r.beta[j] * q : 0.0);
    q = p;
    p = next;
  }
  return p;
}

std::function<double(double)> named_radial(const WeightParams& p, int m, int k) {
  double bp = beta_eff(p);
  int d = p.d;
  double rho2 = p.rho * p.rho;
  int j = k / 2;
  switch (p.family) {
    case WeightFamily::Gegenbauer: {
      double alpha = m + bp + (d - 1) / 2.0;
      double gamma = p.gamma;
      if (p.rho > 0.0) {
        Family1D f = Family1D::jacobi(gamma - 0.5, m + bp + (d - 2) / 2.0);
        return [f, j, rho2](double t) { return eval(f, j, 2.0 * (t * t - rho2) - 1.0); };
      }
      if (alpha > -0.5) {
        Family1D f = Family1D::gen_gegenbauer(gamma, alpha);
        return [f, k](double t) { return eval(f, k, t); };
      }
      // Odd k below the generalized Gegenbauer range: t P_j^{(gamma-1/2, alpha+1/2)}(2t^2-1).
      Family1D f = Family1D::jacobi(gamma - 0.5, alpha + 0.5);
      return [f, j](double t) { return t * eval(f, j, 2.0 * t * t - 1.0); };
    }
    case WeightFamily::Hermite: {
      double alpha = m + bp + (d - 1) / 2.0;
      if (p.rho > 0.0) {
        Family1D f = Family1D::laguerre(m + bp + (d - 2) / 2.0);
        return [f, j, rho2](double t) { return eval(f, j, t * t - rho2); };
      }
      if (alpha > -0.5) {
        Family1D f = Family1D::gen_hermite(alpha);
        return [f, k](double t) { return eval(f, k, t); };
      }
      Family1D f = Family1D::laguerre(alpha + 0.5);
      return [f, j](double t) { return t * eval(f, j, t * t); };
    }
    case WeightFamily::JacobiUpper: {
      Family1D f = Family1D::jacobi(radial_exponent(p) + 2.0 * m, p.gamma);
      return [f, k](double t) { return eval(f, k, 1.0 - 2.0 * t); };
    }
    case WeightFamily::LaguerreUpper: {
      Family1D f = Family1D::laguerre(radial_exponent(p) + 2.0 * m);
      return [f, k](double t) { return eval(f, k, t); };
    }
  }
  return {};
}

std::function<double(double)> generic_radial(const WeightParams& p, int m, int k) {
  double a = radial_exponent(p);
  if (p.upper()) {
    WeightSpec w = p.family == WeightFamily::JacobiUpper
                       ? WeightSpec::jacobi_unit(a + 2.0 * m, p.gamma)
                       : WeightSpec::laguerre(a + 2.0 * m);
    MonicRecurrence rec = monic_recurrence(w, k + 1);
    return [rec, k](double t) { return monic_eval(rec, k, t); };
  }
  WeightSpec w0 = p.family == WeightFamily::Gegenbauer ? WeightSpec::jacobi_unit(a + m, p.gamma - 0.5)
                                                       : WeightSpec::laguerre(a + m);
  ChristoffelPoly q(w0, p.rho, k);
  return [q](double t) { return q(t); };
}

// S = t^2 - rho^2 on double domains, t^2 on the upper cone.
double block_scale(const WeightParams& p, double t) {
  return p.upper() ? t * t : t * t - p.rho * p.rho;
}

}  // namespace

int harmonic_block_dim(const WeightParams& p, int m) {
  if (m < 0) return 0;
  return p.solid() ? static_cast<int>(binom(m + p.d - 1, m)) : harmonic_dim(p.d, m);
}

int space_dim(const WeightParams& p, int n, Parity parity) {
  int total = 0;
  for (int m = 0; m <= n; ++m) {
    bool odd = (n - m) % 2 != 0;
    if ((parity == Parity::Even && odd) || (parity == Parity::Odd && !odd)) continue;
    total += harmonic_block_dim(p, m);
  }
  return total;
}

double named_norm(const WeightParams& p, int n, int m) {
  validate_params(p);
  if (m < 0 || m > n) throw ArgumentError("block degree m must satisfy 0 <= m <= n");
  int k = n - m;
  double a = radial_exponent(p);
  switch (p.family) {
    case WeightFamily::Gegenbauer: {
      double ratio = pochhammer(a + 1.0, m) / pochhammer(a + p.gamma + 1.5, m);
      if (p.rho > 0.0) {
        if (k % 2 != 0)
          throw CapabilityError("odd-parity hyperboloid elements have no closed-form norm");
        return ratio * norm_sq(Family1D::jacobi(p.gamma - 0.5, a + m), k / 2);
      }
      return ratio * norm_sq(Family1D::gen_gegenbauer(p.gamma, a + m + 0.5), k);
    }
    case WeightFamily::Hermite: {
      double ratio = pochhammer(a + 1.0, m);
      if (p.rho > 0.0) {
        if (k % 2 != 0)
          throw CapabilityError("odd-parity hyperboloid elements have no closed-form norm");
        return ratio * norm_sq(Family1D::laguerre(a + m), k / 2);
      }
      return ratio * norm_sq(Family1D::gen_hermite(a + m + 0.5), k);
    }
    case WeightFamily::JacobiUpper:
      return pochhammer(a + 1.0, 2 * m) / pochhammer(a + p.gamma + 2.0, 2 * m) *
             norm_sq(Family1D::jacobi(a + 2.0 * m, p.gamma), k);
    case WeightFamily::LaguerreUpper:
      return pochhammer(a + 1.0, 2 * m) * norm_sq(Family1D::laguerre(a + 2.0 * m), k);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

DegreeBasis::DegreeBasis(const WeightParams& p, int n, Parity parity, Construction c)
    : p_(p), n_(n), parity_(parity), c_(c) {
  if (n < 0) throw ArgumentError("polynomial degree must be nonnegative");
  validate_params(p, parity == Parity::Odd);
  if (p.d != 2 && p.d != 3) throw CapabilityError("bases are implemented for d = 2 and d = 3");
  if (p.upper() && parity != Parity::Full)
    throw CapabilityError("upper-cone polynomials have no parity in t; use parity=full");
  if (!p.upper() && p.rho > 0.0 && c == Construction::Named && parity != Parity::Even)
    throw CapabilityError(
        "odd-in-t hyperboloid polynomials (rho > 0) have no closed family; use parity=even or "
        "the generic Christoffel construction");
  bool norm_ok = normalizable(p);
  if (!norm_ok && c == Construction::Generic)
    throw ParameterError("the generic construction needs a normalizable weight");
  std::vector<int> ms;
  for (int m = n; m >= 0; m -= 2)
    if (parity != Parity::Odd) ms.push_back(m);
  for (int m = n - 1; m >= 0; m -= 2)
    if (parity != Parity::Even) ms.push_back(m);
  QuadratureRule rr;
  if (norm_ok && c == Construction::Generic) rr = radial_rule(p, 2 * n + 2);
  std::vector<double> norms;
  for (int m : ms) {
    int k = n - m;
    Block b{m, k, static_cast<int>(index_.size()), harmonic_block_dim(p, m)};
    blocks_.push_back(b);
    radial_.push_back(c == Construction::Named ? named_radial(p, m, k) : generic_radial(p, m, k));
    if (p.solid()) {
      ball_.emplace_back(p.d, m, p.mu);
    } else {
      harm_.emplace_back(p.d, m);
    }
    double h = std::numeric_limits<double>::quiet_NaN();
    if (norm_ok) {
      if (c == Construction::Named) {
        h = named_norm(p, n, m);
      } else {
        const auto& f = radial_.back();
        h = rr.integrate([&](double t) {
          double v = f(t);
          return v * v * std::pow(block_scale(p, t), m);
        });
      }
    }
    for (int l = 0; l < b.size; ++l) {
      index_.push_back({n, m, l});
      norms.push_back(h);
    }
  }
  norms_ = Eigen::Map<VectorXd>(norms.data(), static_cast<Eigen::Index>(norms.size()));
}

double DegreeBasis::radial(int block, double t) const { return radial_.at(block)(t); }

VectorXd DegreeBasis::eval(const PointCH& q) const {
  if (q.x.size() != p_.d) throw ArgumentError("point dimension does not match the basis");
  VectorXd out(size());
  double S = block_scale(p_, q.t);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    double r = radial_[b](q.t);
    VectorXd v = p_.solid() ? ball_[b].eval_homogeneous(q.x, S) : harm_[b].eval(q.x);
    out.segment(blk.offset, blk.size) = r * v;
  }
  return out;
}

double DegreeBasis::eval(int i, const PointCH& q) const {
  if (i < 0 || i >= size()) throw ArgumentError("basis index out of range");
  return eval(q)(i);
}

VectorXd DegreeBasis::eval_orthonormal(const PointCH& q) const {
  return eval(q).cwiseQuotient(norms_.cwiseSqrt());
}

std::vector<DegreeBasis> basis_upto(const WeightParams& p, int nmax, Parity parity,
                                    Construction c) {
  std::vector<DegreeBasis> out;
  for (int n = 0; n <= nmax; ++n) out.emplace_back(p, n, parity, c);
  return out;
}

double transfer_constant(const WeightParams& p, int n, int m) {
  if ((n - m) % 2 != 0 || m < 0 || m > n)
    throw CapabilityError("hyperboloid transfer is defined for even n - m only");
  int k = (n - m) / 2;
  double bp = beta_eff(p);
  switch (p.family) {
    case WeightFamily::Gegenbauer:
      return pochhammer(m + bp + p.d / 2.0, k) / pochhammer(m + bp + p.gamma + (p.d - 1) / 2.0, k);
    case WeightFamily::Hermite:
      return (k % 2 == 0 ? 1.0 : -1.0) / (std::pow(4.0, k) * factorial(k));
    default: throw CapabilityError("no hyperboloid transfer for upper-cone weights");
  }
}

WeightParams cone_params(const WeightParams& p) {
  WeightParams c = p;
  c.rho = 0.0;
  return c;
}

std::vector<double> limit_g_to_h_check(const WeightParams& p, int n, int i, const PointCH& q,
                                       const std::vector<double>& gammas) {
  if (p.family != WeightFamily::Gegenbauer || p.rho != 0.0)
    throw CapabilityError("the Gegenbauer-to-Hermite limit needs a Gegenbauer cone weight");
  WeightParams hp = p.solid() ? WeightParams::hermite_solid(p.d, p.beta, p.mu)
                              : WeightParams::hermite_surface(p.d, p.beta);
  DegreeBasis H(hp, n);
  double target = H.eval(i, q) / std::sqrt(H.norms()(i));
  std::vector<double> out;
  for (double g : gammas) {
    WeightParams pg = p;
    pg.gamma = g;
    DegreeBasis C(pg, n);
    double s = 1.0 / std::sqrt(g);
    PointCH qs{q.x * s, q.t * s};
    out.push_back(std::abs(C.eval(i, qs) / std::sqrt(C.norms()(i)) - target));
  }
  return out;
}

}  // namespace hyperbasis
