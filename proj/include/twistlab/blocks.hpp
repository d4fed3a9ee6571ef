#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twistlab/func.hpp"
#include "twistlab/sparse.hpp"

namespace twistlab {

/// A finite list of pairwise disjointly supported, l2-normalized vectors
/// with ordered supports (block n lives in (p_{n-1}, p_n]).
class BlockBasis {
 public:
  explicit BlockBasis(std::vector<SparseVec> blocks);

  const std::vector<SparseVec>& blocks() const { return blocks_; }
  const std::vector<Index>& breakpoints() const { return breakpoints_; }
  std::size_t size() const { return blocks_.size(); }

  /// Basis of singletons e_1, ..., e_n.
  static BlockBasis singletons(Index n);
  /// n uniform blocks of width N: u_j = N^{-1/2} (e_{(j-1)N+1} + ... + e_{jN}).
  static BlockBasis uniform(Index block_count, Index width);

  nlohmann::json to_json() const;
  static BlockBasis from_json(const nlohmann::json& j);

 private:
  std::vector<SparseVec> blocks_;
  std::vector<Index> breakpoints_;  // p_0 = 0 < p_1 < ...
};

/// Lifted block w_n = (omega(phi, v_n), v_n); quasinorm 1 by construction.
TwistedVec block_lift(const FuncDescriptor& phi, const BlockBasis& basis, std::size_t n);

struct DualNorm {
  double direct;   // quasinorm of (sum t_n omega(v_n), sum t_n v_n)
  double formula;  // the displayed double-sum plus ||t||_2
};

/// Norm of sum t_n w_n along two independent code paths.  The formula route
/// evaluates sum_k t_n v_n(k) (phi(log 1/|v_n(k)|) - phi(log ||t||/|t_n v_n(k)|))
/// coordinatewise.
DualNorm block_combination_norm(const FuncDescriptor& phi, const BlockBasis& basis,
                                const SparseVec& t);

/// F(t) = (sum |t_n|^2 log^2(||t||_2/|t_n|))^{1/2} + ||t||_2.
double kp_functional(const SparseVec& t);

/// Orlicz function Phi(s) = s^2 (1 + |log s|)^2, Phi(0) = 0, Phi(1) = 1.
double orlicz_phi(double s);

/// Luxemburg norm inf{rho > 0 : sum Phi(|t_n|/rho) <= 1} by bisection on the
/// monotone level map, bracketed by [||t||_inf, F(t) + ||t||_1].
double luxemburg_norm(const SparseVec& t);

/// j(x) = (0, x) and p(y, x) = y; p o j = 0.
TwistedVec embed_second(const SparseVec& x);
SparseVec project_first(const TwistedVec& v);

struct RatioBand {
  double lo, hi;
  int samples;

  bool overlaps(const RatioBand& o) const { return lo <= o.hi && o.lo <= hi; }
};

struct BandConfig {
  int samples = 1000;
  std::uint64_t seed = 7;
  bool complex_coeffs = true;
};

/// Band of block_combination_norm.direct / kp_functional(t) over random
/// coefficient vectors.  Refuses maps without the bi-Lipschitz flag (the
/// equivalence can fail there).
RatioBand block_norm_vs_kp(const FuncDescriptor& phi, const BlockBasis& basis,
                           const BandConfig& cfg = {});

/// Band of luxemburg_norm(t) / kp_functional(t) over random vectors.
RatioBand luxemburg_vs_kp(Index dim_max, const BandConfig& cfg = {});

}  // namespace twistlab
