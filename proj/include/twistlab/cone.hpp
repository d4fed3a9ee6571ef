#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "twistlab/func.hpp"
#include "twistlab/grid.hpp"

namespace twistlab {

/// One generator triple of a cone element.
struct ConeTriple {
  double lambda;  // > 0
  double alpha;   // > 0
  double beta;    // in (0, 1)
};

/// Parameters of a sum h = sum_j lambda_j * g_{alpha_j, beta_hat_j} with
/// beta_hat_j = 2*pi*beta_j*log 2.  Valid when max alpha_j * (1 + 2*pi*
/// max beta_j * log 2) < 1 and the beta_j are pairwise distinct.
struct ConeSpec {
  std::vector<ConeTriple> triples;

  static constexpr double gamma = -0.69314718055994530942;  // log(1/2)

  void validate() const;
  double max_alpha() const;
  double max_beta() const;
  double lambda_sum() const;
  /// Analytic lower Lipschitz bound lambda * (1 - alpha*(1 + 2*pi*beta*log 2)).
  double lower_lipschitz_bound() const;
  static double beta_hat(double beta) { return 2.0 * std::acos(-1.0) * beta * std::log(2.0); }

  /// Merge of two valid specs (cone closure); validates the union.
  static ConeSpec merge(const ConeSpec& a, const ConeSpec& b);
};

/// g_{alpha,beta}(t) = t + alpha*t*sin(beta*log t) with analytic Lipschitz
/// bounds 1 +- alpha*(1+beta) attached when alpha*(1+beta) < 1, and the
/// bi-Lipschitz flag set iff alpha < 1/(M*(1+beta)) with M = 1.
FuncDescriptor make_sinlog(double alpha, double beta);

/// h = sum_j lambda_j * g_{alpha_j, 2*pi*beta_j*log 2} with the technical
/// lower bound attached.
FuncDescriptor cone_element(const ConeSpec& spec);

/// The fractional-part tuples ({k b_1}, ..., {k b_n}) for k = 1..K, computed
/// with compensated products so the reduction error stays below 1e-9 up to
/// K = 10^7.
struct KroneckerOrbit {
  std::vector<double> betas;
  std::int64_t K = 0;
  std::vector<std::vector<double>> points;  // K tuples, coords in [0, 1)
};

KroneckerOrbit kronecker_orbit(const std::vector<double>& betas, std::int64_t K);

/// Max over a 64^n evaluation lattice of Euclidean torus distance to the
/// nearest orbit point.  n <= 3.
double covering_radius(const KroneckerOrbit& orbit);

/// Max deviation |count/K - volume| over anchored dyadic boxes with corners
/// on the 1/64 lattice.  n <= 3.
double discrepancy_estimate(const KroneckerOrbit& orbit);

/// Smallest k <= K_max with sign_i * sin(2*pi*k*beta_i*log 2) > threshold for
/// every i, or nullopt.
std::optional<std::int64_t> find_sign_pattern(const std::vector<double>& betas,
                                              const std::vector<int>& signs, double threshold,
                                              std::int64_t K_max);

struct TrigIdentityValues {
  double lhs;  // 2 g(beta*y) - g(beta*(gamma + y)) at y = -n*gamma
  double rhs;  // a sin(2 pi beta' gamma^2 n) + b cos(2 pi beta' gamma^2 n)
};

/// Double evaluation of the sin-addition reduction used by the g_{a,b}
/// discrepancy argument: a = 2 - cos(beta*gamma), b = -sin(beta*gamma),
/// beta = -2*pi*beta'*gamma, gamma = log(1/2).
TrigIdentityValues trig_identity_check(double beta_prime, std::int64_t n);

struct GramRankResult {
  int rank;
  double min_singular_value;
  std::vector<double> singular_values;  // descending
  bool independent;                     // full rank
};

/// Numerical linear independence of function descriptors: grid samples of
/// (h(t) - c_lin*t)/t (the shared linear part removed and the common t
/// growth normalized away), unit-normalized, Gram matrix rank via singular
/// values with threshold 1e-8 relative.
GramRankResult independence_gram_rank(const std::vector<FuncDescriptor>& elements,
                                      const LogGrid& grid);

/// The fractional part of sqrt(p), the default source of Q-linearly
/// independent betas (p a prime).
double frac_sqrt(std::int64_t p);

}  // namespace twistlab
