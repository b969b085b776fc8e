#ifndef HYPERBASIS_KERNELS_HPP
#define HYPERBASIS_KERNELS_HPP

#include <functional>
#include <vector>

#include "hyperbasis/bases.hpp"

namespace hyperbasis {

enum class Route { Sum, Integral, Closed };

struct KernelSpec {
  WeightParams params;
  Parity parity = Parity::Full;
  Route route = Route::Sum;
};

// Reproducing kernel of the degree-n space (of the given parity) by the selected route.
double kernel(const KernelSpec& s, int n, const PointCH& a, const PointCH& b);

// sum of Q(a) Q(b) / h over the degree-n elements of the parity. Uses the named basis where
// it exists and the generic construction otherwise (odd parity with rho > 0).
double kernel_sum(const WeightParams& p, int n, const PointCH& a, const PointCH& b,
                  Parity parity = Parity::Full);

struct ParityParts {
  double even = 0.0;
  double odd = 0.0;
};

// Even and odd parts from the full kernel at (y, s) and (y, -s).
ParityParts parity_split(const WeightParams& p, int n, const PointCH& a, const PointCH& b);

// Cone point (x, sqrt(t^2 - rho^2)) carrying the even-parity hyperboloid kernel; the identity
// for rho = 0 and for upper-cone weights.
PointCH transfer_point(const WeightParams& p, const PointCH& q);

// Gegenbauer weights with an even-parity addition formula: surface beta, gamma >= 0, solid
// beta >= 1/2 and gamma, mu >= 0, any rho >= 0.
bool has_addition_formula(const WeightParams& p);

// lambda = alpha + gamma, alpha = beta (+mu on solids) + (d-1)/2: the index of Z_n in the
// addition formula.
double addition_index(const WeightParams& p);

// T g(a, b): g(xi) averaged over the probability measure of the even-parity addition
// formula, xi = (1-z1)/2 (<x,y> + u R) + (1+z1)/2 z2 st + v sqrt(1-s^2) sqrt(1-t^2)
// with R = sqrt(t^2-|x|^2) sqrt(s^2-|y|^2) (solid only), after transfer_point. Axis measures:
//   surface z1 ~ (1-z1)^{(d-2)/2} (1+z1)^{beta-1}, z2 ~ (1-z2^2)^{beta-1/2};
//   solid   z1 ~ (1-z1)^{mu+(d-1)/2} (1+z1)^{beta-3/2}, z2 ~ (1-z2^2)^{beta-1},
//           u ~ (1-u^2)^{mu-1};
//   both    v ~ (1-v^2)^{gamma-1}.
// Boundary parameters use the two-point or point-mass limits. npts <= 0 selects
// integral_nodes(0) per axis.
double translate_even(const WeightParams& p, const std::function<double(double)>& g,
                      const PointCH& a, const PointCH& b, int npts = 0);

// Addition-formula kernel. Even parity: translate_even of Z_n^lambda. Odd parity (rho = 0):
// ((alpha+gamma+1)/(alpha+1/2)) s t times the even kernel of degree n-1 at beta+1.
double addition_kernel(const WeightParams& p, int n, Parity parity, const PointCH& a,
                       const PointCH& b);
double addition_surface(const WeightParams& p, int n, Parity parity, const PointCH& a,
                        const PointCH& b);
double addition_solid(const WeightParams& p, int n, Parity parity, const PointCH& a,
                      const PointCH& b);

// One-integral and finite-sum even kernels: surface beta = 0 (gamma = 0 is the two-term
// Chebyshev sum; rho > 0 uses the hyperboloid argument) and solid beta = 1/2 (gamma = mu = 0
// is the four-term sum).
double closed_form(const WeightParams& p, int n, const PointCH& a, const PointCH& b);

// Even kernel with rho > 0 evaluated as the rho = 0 kernel at transfer_point(a), (b).
double hyperboloid_transfer(const WeightParams& p, int n, const PointCH& a, const PointCH& b,
                            Route inner = Route::Integral);

// sum_{n >= 0} P_n^E r^n for Gegenbauer weights: translate_even of
// (1-r^2) / (1-2 r xi + r^2)^{lambda+1}. npts <= 0 selects 40 nodes per axis.
double poisson_gegenbauer(const WeightParams& p, double r, const PointCH& a, const PointCH& b,
                          int npts = 0);

// Mehler form of sum_{n >= 0} P_n^E r^n for Hermite weights (surface beta >= 0, solid
// beta >= 1/2, mu >= 0, any rho):
// (1-r^2)^{-(alpha+1/2)} e^{-(t^2+s^2) r^2/(1-r^2)} E[e^{2 r eta / (1-r^2)}], eta the
// v-free part of xi. Surface beta = 0 uses the closed exponential.
double mehler(const WeightParams& p, double r, const PointCH& a, const PointCH& b,
              int npts = 0);

struct KernelTerms {
  std::vector<double> ab;  // P_n(a, b)
  std::vector<double> aa;  // P_n(a, a)
  std::vector<double> bb;  // P_n(b, b)
};

// P_n for n = 0..nmax by summation.
KernelTerms kernel_terms(const WeightParams& p, int nmax, Parity parity, const PointCH& a,
                         const PointCH& b);

struct TruncatedSeries {
  double sum = 0.0;         // sum_{n <= N} P_n(a, b) r^n
  double tail_bound = 0.0;  // bound on the remainder
  int terms = 0;
};

// Truncated Poisson series with a geometric tail bound. |P_n(a,b)| <= sqrt(P_n(a,a) P_n(b,b))
// is summed for n = N+1..N+extra (extra >= 4) and closed by a geometric remainder over pairs
// of consecutive terms whose ratio is the larger of r^2 and the last observed pair ratio.
TruncatedSeries poisson_series(const WeightParams& p, double r, int N, const PointCH& a,
                               const PointCH& b, Parity parity = Parity::Even, int extra = 20);

}  // namespace hyperbasis

#endif
