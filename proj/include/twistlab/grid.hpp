#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twistlab {

/// Dyadic (or base-b) window grid on [t_min, t_max]: window k is
/// [b^k, b^(k+1)], sampled logarithmically with points_per_window points.
struct LogGrid {
  double t_min;
  double t_max;
  int points_per_window = 512;
  double window_base = 2.0;

  /// Default experiment grid: t in [2^-20, 2^40], 512 samples per window.
  static LogGrid standard();
  /// Coarser grid for sweeps where per-sample work is expensive.
  static LogGrid coarse(int points = 64);

  void validate() const;

  int first_window() const;
  int last_window() const;
  int window_count() const { return last_window() - first_window() + 1; }

  /// Samples of window k clipped to [t_min, t_max], ascending.
  std::vector<double> window_samples(int k) const;
  std::vector<double> all_samples() const;
};

enum class Verdict { Bounded, Growing, Inconclusive };

std::string to_string(Verdict v);

/// Thresholds for turning windowed maxima into a three-way verdict.
/// The regression runs on the tail windows (the at-infinity portion).
struct GrowthConfig {
  double tau_grow = 0.05;     // ln-maxima slope above which growth is declared
  double tau_flat = 0.05;     // ln-maxima slope at or below which flatness holds
  double floor = 1e-9;        // final maxima at or below this never count as growth
  double cap_factor = 10.0;   // bounded cap = cap_factor * first tail window max
  int min_windows = 12;
  double tail_fraction = 0.5;

  nlohmann::json to_json() const;
};

/// Windowed-maximum evidence for a Bounded/Growing/Inconclusive verdict on a
/// nonnegative function of scale.
struct GrowthReport {
  std::vector<std::pair<int, double>> window_maxima;  // (window index, max)
  double slope = 0.0;       // least-squares slope of ln M_k on the tail
  Verdict verdict = Verdict::Inconclusive;
  GrowthConfig config;
  double b_cap = 0.0;       // the bounded cap actually used

  nlohmann::json to_json() const;
};

/// Classifies maxima indexed by a scale that is exponential in the window
/// index (t-grids: window k covers t ~ b^k).  Slope is d ln(M_k) / dk.
GrowthReport classify_growth(std::vector<std::pair<int, double>> maxima,
                             const GrowthConfig& cfg = {});

/// Classifies per-scale values M_k where the underlying scale variable is
/// itself ~ k (dyadic-n sweeps: k = log2 n, quantities growing like log n
/// grow linearly in k).  Slope is d ln(M_k) / d ln(k) after a cumulative
/// running-max smoothing, so logarithmic growth registers as slope ~ 1 while
/// bounded oscillation plateaus at slope ~ 0.
GrowthReport classify_growth_polylog(std::vector<std::pair<int, double>> values,
                                     const GrowthConfig& cfg = {});

}  // namespace twistlab
