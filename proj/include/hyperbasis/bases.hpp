#ifndef HYPERBASIS_BASES_HPP
#define HYPERBASIS_BASES_HPP

#include <functional>
#include <vector>

#include "hyperbasis/domain.hpp"

namespace hyperbasis {

// Element (n, m, l): t-factor of degree n-m times the l-th element of the degree-m block,
// a spherical harmonic Y_l^m(x) on surfaces or S^{m/2} P_l^m(x/sqrt(S)) on solids, with
// S = t^2 - rho^2 on double domains and S = t^2 on the upper cone.
struct BasisIndex {
  int n = 0;
  int m = 0;
  int l = 0;
  bool odd() const { return (n - m) % 2 != 0; }
  bool operator==(const BasisIndex&) const = default;
};

// Named: the closed families (generalized Gegenbauer / Hermite on the cone, Jacobi /
// Laguerre in t^2 - rho^2 on the hyperboloid, Jacobi / Laguerre on the upper cone).
// Generic: t-factors from the Christoffel construction on the reduced radial weight
// (double domains) or from the monic recurrence (upper cone).
enum class Construction { Named, Generic };

int harmonic_block_dim(const WeightParams& p, int m);
// Number of degree-n elements of the given parity.
int space_dim(const WeightParams& p, int n, Parity parity = Parity::Full);

class DegreeBasis {
 public:
  struct Block {
    int m;
    int k;  // n - m
    int offset;
    int size;
  };

  DegreeBasis(const WeightParams& p, int n, Parity parity = Parity::Full,
              Construction c = Construction::Named);

  const WeightParams& params() const { return p_; }
  int degree() const { return n_; }
  Parity parity() const { return parity_; }
  Construction construction() const { return c_; }
  int size() const { return static_cast<int>(index_.size()); }
  const std::vector<BasisIndex>& indices() const { return index_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  // Squared norms under the normalized weight; NaN when the weight is not normalizable.
  const VectorXd& norms() const { return norms_; }

  VectorXd eval(const PointCH& q) const;
  double eval(int i, const PointCH& q) const;
  VectorXd eval_orthonormal(const PointCH& q) const;
  // t-factor of a block.
  double radial(int block, double t) const;

 private:
  WeightParams p_;
  int n_;
  Parity parity_;
  Construction c_;
  std::vector<BasisIndex> index_;
  std::vector<Block> blocks_;
  std::vector<std::function<double(double)>> radial_;
  std::vector<HarmonicBasis> harm_;
  std::vector<BallBasis> ball_;
  VectorXd norms_;
};

// Degrees 0..nmax of one parity.
std::vector<DegreeBasis> basis_upto(const WeightParams& p, int nmax, Parity parity = Parity::Full,
                                    Construction c = Construction::Named);

// Named element normalization h for index (n, m): closed-form products of Pochhammer
// ratios and one-variable norms.
double named_norm(const WeightParams& p, int n, int m);

// Constant c with Q_rho(x, t) = c Q_0(x, sqrt(t^2 - rho^2)) for even n - m = 2k, where
// Q_0 is the cone element with the same beta, gamma, mu. Gegenbauer:
// (m+beta'+d/2)_k / (m+beta'+gamma+(d-1)/2)_k with beta' = beta (+mu on solids).
// Hermite: (-1)^k / (2^{2k} k!).
double transfer_constant(const WeightParams& p, int n, int m);

WeightParams cone_params(const WeightParams& p);

// Normalized differences |C(x/sqrt(g), t/sqrt(g)) / sqrt(h^C) - H(x,t) / sqrt(h^H)| for the
// Gegenbauer cone element (index i of degree n, parameters p with rho = 0) and the Hermite
// element of the same index, one entry per g in gammas.
std::vector<double> limit_g_to_h_check(const WeightParams& p, int n, int i, const PointCH& q,
                                       const std::vector<double>& gammas);

}  // namespace hyperbasis

#endif
