#ifndef HYPERBASIS_FOURIER_HPP
#define HYPERBASIS_FOURIER_HPP

#include <functional>
#include <string>
#include <vector>

#include "hyperbasis/bases.hpp"
#include "hyperbasis/kernels.hpp"

namespace hyperbasis {

using DomainFunction = std::function<double(const PointCH&)>;
using Profile = std::function<double(double)>;

// Fourier coefficients f_hat = <f, Q> / <Q, Q> of a truncated orthogonal series.
struct ExpansionCoefficients {
  WeightParams params;
  Parity parity = Parity::Full;
  int n_max = 0;
  std::vector<DegreeBasis> bases;       // degree 0..n_max
  std::vector<VectorXd> coefficients;   // by degree, in basis order

  double coefficient(const BasisIndex& i) const;
  // Largest |f_hat| over the odd-parity elements (n - m odd); 0 when none are present.
  double odd_max() const;
  // sum over degrees <= n of f_hat^2 h.
  double parseval_sum(int n) const;
  // Degree-n component sum of f_hat Q over the elements of the parity.
  double component(int n, const PointCH& q, Parity parity = Parity::Full) const;
};

// Quadrature degree used when quad_degree <= 0: n + kDefaultIntegrationDegree.
int fourier_quad_degree(int n, int quad_degree);

// Coefficients by quadrature against domain_rule(p, fourier_quad_degree(2 n_max, quad_degree)).
// rho > 0 with odd elements uses the generic construction.
ExpansionCoefficients expand(const DomainFunction& f, const WeightParams& p, int n_max,
                             Parity parity = Parity::Full, int quad_degree = 0);

// proj_n f from coefficients.
DomainFunction project(const ExpansionCoefficients& c, int n, Parity parity = Parity::Full);

// proj_n f as the quadrature of f(y) P_n(q, y) with the kernel of spec (any route).
DomainFunction project(const DomainFunction& f, const KernelSpec& spec, int n,
                       int quad_degree = 0);

// T g(a, b). Requires an addition formula.
double translate(const Profile& g, const WeightParams& p, const PointCH& a, const PointCH& b,
                 int npts = 0);

// Lambda_n(g) = int g(x) C_n^lambda(x) / C_n^lambda(1) d varpi_lambda, the eigenvalue of T g on
// the degree-n even-parity space.
double lambda_n(const Profile& g, double lambda, int n, int npts = 0);

struct ConvolutionOptions {
  int quad_degree = 0;  // domain rule degree; <= 0 selects kDefaultIntegrationDegree
  int npts = 0;         // nodes per axis of T; <= 0 selects integral_nodes(0)
};

// (f * g)(a) = int f(y) T g(a, y) dW(y). f is sampled once on the rule.
DomainFunction convolve(const DomainFunction& f, const Profile& g, const WeightParams& p,
                        const ConvolutionOptions& o = {});

// L1 norms by quadrature: over the domain, and over varpi_lambda on [-1, 1].
double l1_norm(const DomainFunction& f, const WeightParams& p, int quad_degree = 0);
double l1_norm(const Profile& g, double lambda, int npts = 200);

// sum_k c_k Z_k^lambda(x) by the three-term recurrence.
class ZSeries {
 public:
  ZSeries(double lambda, VectorXd coeffs);
  double operator()(double x) const;
  double lambda() const { return lambda_; }
  const VectorXd& coefficients() const { return c_; }

 private:
  double lambda_;
  VectorXd c_;
};

// k_n^delta(varpi_lambda; 1, x) = sum_k w(n, k) Z_k^lambda(x); delta = 0 gives k_n(1, x).
ZSeries cesaro_profile(double lambda, int n, double delta);

// K_n^delta(a, b) = sum_{k <= n} w(n, k) P_k(a, b) of the parity. Even part: T of
// cesaro_profile. Odd part (rho = 0): ((alpha+gamma+1)/(alpha+1/2)) t s times T at beta+1 of
// sum_{k >= 1} w(n, k) Z_{k-1}^{lambda+1}.
double cesaro_kernel_value(const WeightParams& p, int n, double delta, const PointCH& a,
                           const PointCH& b, Parity parity = Parity::Even);

// Kernel route: f convolved with K_n^delta of the parity. quad_degree <= 0 selects
// fourier_quad_degree(n, 0).
DomainFunction cesaro_mean(const DomainFunction& f, const WeightParams& p, int n, double delta,
                           Parity parity = Parity::Full, int quad_degree = 0);
DomainFunction partial_sum(const DomainFunction& f, const WeightParams& p, int n,
                           Parity parity = Parity::Full, int quad_degree = 0);

// Coefficient route.
DomainFunction cesaro_mean(const ExpansionCoefficients& c, int n, double delta);
DomainFunction partial_sum(const ExpansionCoefficients& c, int n);

enum class Probe { Brink, Apex, Grid };
enum class TestFunction { One, TSquared, X1Squared, Bump };

Probe parse_probe(const std::string& s);
std::string to_string(Probe p);
TestFunction parse_test_function(const std::string& s);
std::string to_string(TestFunction f);

// 1, t^2, <x, e1>^2, exp(-4 (t^2 + |x|^2)).
DomainFunction test_function(TestFunction f);

// Probe points: brink (sqrt(b^2-rho^2) e1, b), apex (0, rho), grid of five points along
// (sqrt(t^2-rho^2) e1, t) for t from rho to b.
std::vector<PointCH> probe_points(const WeightParams& p, Probe probe);

struct SummabilityRow {
  int n = 0;
  double delta = 0.0;
  std::string probe;
  double lebesgue_value = 0.0;  // max over probe points of int |K_n^delta(probe, y)| dW(y)
  double error = 0.0;           // max over probe points of |S_n^delta f - f|
};

struct SummabilityTable {
  WeightParams params;
  std::string test_function;
  std::vector<SummabilityRow> rows;
};

// Even-parity Cesaro kernels. quad_degree <= 0 selects 4 n + 16 per cell.
SummabilityTable summability_table(const WeightParams& p, TestFunction f,
                                   const std::vector<int>& n_list,
                                   const std::vector<double>& delta_list, Probe probe,
                                   int quad_degree = 0);

}  // namespace hyperbasis

#endif
