#pragma once

#include <cstdint>
#include <utility>

#include "twistlab/func.hpp"
#include "twistlab/grid.hpp"

namespace twistlab {

struct LipschitzOptions {
  int random_pairs = 4000;
  std::uint64_t seed = 20240001;
};

/// Empirical bi-Lipschitz constants from adjacent-pair difference quotients
/// over the grid plus randomized far pairs.  For any f the estimates bracket
/// inward: lower_est >= true lower constant, upper_est <= true upper constant.
std::pair<double, double> lipschitz_bounds(const FuncDescriptor& f, const LogGrid& grid,
                                           const LipschitzOptions& opts = {});

/// GrowthReport on h(t) = |f(t) - g(t)|; Bounded <=> classified equivalent.
GrowthReport equivalence_test(const FuncDescriptor& f, const FuncDescriptor& g,
                              const LogGrid& grid, const GrowthConfig& cfg = {});

struct ProjectiveResult {
  cplx a_best;
  GrowthReport report;  // on |f - a_best * g|
};

/// Finds a minimizing the final-window maximum of |f - a g| (golden section
/// in the real case, coordinate descent on re/im otherwise), then classifies
/// |f - a_best g| over all windows.  Bounded <=> projectively equivalent.
ProjectiveResult projective_equivalence_test(const FuncDescriptor& f, const FuncDescriptor& g,
                                             const LogGrid& grid,
                                             std::pair<double, double> a_search = {-10.0, 10.0},
                                             const GrowthConfig& cfg = {});

/// Windowed maxima of |f(a+b) - f(a) - f(b)| over sampled splits a + b = s
/// with s in the window.
GrowthReport additivity_defect(const FuncDescriptor& f, const LogGrid& grid,
                               const GrowthConfig& cfg = {});

struct HyersResult {
  cplx c;                // lim f(t)/t, estimated on the last window
  GrowthReport residual;  // growth of |f(t) - c t|
};

HyersResult hyers_linearize(const FuncDescriptor& f, const LogGrid& grid,
                            const GrowthConfig& cfg = {});

struct SecondDerivativeTail {
  std::vector<std::pair<int, double>> window_maxima;  // |f''| per window
  bool verdict;                                       // final-window max < eps
  double eps;
};

/// Vanishing-second-derivative check: |f''| window maxima with verdict true
/// iff the final-window max is below eps.
SecondDerivativeTail in_L_bis(const FuncDescriptor& f, const LogGrid& grid,
                              double eps = 1e-3);

/// Difference-quotient discrepancy between scales log n and log sqrt(n):
/// | (f(log n) - f(log sqrt n))/log sqrt n - (same at m) |.  Requires n, m >= 2.
double bid_functional(const FuncDescriptor& f, double n, double m);

/// Real/imaginary split of the same quantity.
std::pair<double, double> bid_functional_parts(const FuncDescriptor& f, double n, double m);

struct BidSweep {
  double max_delta;
  double arg_n, arg_m;
};

/// Max of bid_functional over dyadic n, m = 2^1 .. 2^max_exp (re/im parts
/// taken separately for complex-valued f).
BidSweep bid_grid_sweep(const FuncDescriptor& f, int max_exp = 40);

}  // namespace twistlab
