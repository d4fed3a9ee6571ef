#pragma once

// Frozen constants recorded from the oracle sweeps in tools/calibrate.cpp.
// The sweeps are seeded, so reruns reproduce the observed values exactly;
// the caps below add a small margin for platform-level FP variance.

namespace fixtures {

// quasilinearity_constant(Linear(1), {10000, 256, 123, complex}): 0.350993
inline constexpr double kBqlCap = 0.3512;

// quasinorm_triangle_constant(Linear(1), {10000, 128, 321, complex}): 1.200470
inline constexpr double kCfixCap = 1.2010;
inline constexpr double kCfixMin = 1.05;  // must exceed 1: not a norm

// duality pairing ratio max, dims 8/16/32/64, seed 555:
//   0.243512, 0.143161, 0.097709, 0.054341 (non-increasing as dim doubles)
inline constexpr double kDualCap = 0.25;

// covering_radius(kronecker_orbit({frac sqrt2}, 1e5)): 7.4009886e-06
inline constexpr double kEps1 = 8.0e-06;
// covering_radius 1D at K = 1e4: 7.3267697e-05 = (10/K) * 0.0733
inline constexpr double kRadiusFactor = 0.10;
// covering_radius(kronecker_orbit({frac sqrt2, frac sqrt3}, 1e5)): 0.0036347
inline constexpr double kEps2 = 4.0e-03;
// discrepancy_estimate, same 2D orbit: 1.1086e-04
inline constexpr double kDiscCap = 2.0e-04;

// luxemburg_vs_kp(64, {1000, 99, complex}): [1.000000, 1.575198]
inline constexpr double kLuxKpLo = 0.99;
inline constexpr double kLuxKpHi = 1.60;

// block_norm_vs_kp(Linear(1), widths {1,4,8,16,64}, {1000, 77, complex}):
// all [1, 1] exactly (the formula collapses for the identity map).
// Same sweep for SinLog(0.1, 1): widths <= 8 in [0.977569, 1.080923],
// width 64 in [1.000000, 1.081857].
inline constexpr double kBlockKpLo = 0.97;
inline constexpr double kBlockKpHi = 1.09;

// bid_grid_sweep(SinLog(0.1, 2 pi frac(sqrt 2) log 2), 2^40): max 0.3801
inline constexpr double kBidFloor = 0.01;

// kalton_peck_detector defect cap, calibrated on the canonical quartet:
// Linear 0, Linear+Sin 2.5975 (and 5.195 after Scale(2, .)), SinLog 1.0924,
// PowerPhase 14.1268.
inline constexpr double kDefectCap = 8.0;

// independence_gram_rank of 5 prime-root sinlog generators: min sv 0.9319
inline constexpr double kGramMinSv = 0.5;

}  // namespace fixtures
