#include "twistlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twistlab {

LogGrid LogGrid::standard() {
  return LogGrid{std::ldexp(1.0, -20), std::ldexp(1.0, 40), 512, 2.0};
}

LogGrid LogGrid::coarse(int points) {
  return LogGrid{std::ldexp(1.0, -20), std::ldexp(1.0, 40), points, 2.0};
}

void LogGrid::validate() const {
  if (!(t_min > 0.0) || !(t_min < t_max))
    throw std::invalid_argument("LogGrid requires 0 < t_min < t_max");
  if (points_per_window < 2)
    throw std::invalid_argument("LogGrid requires at least 2 points per window");
  if (!(window_base > 1.0))
    throw std::invalid_argument("LogGrid requires window_base > 1");
}

int LogGrid::first_window() const {
  return static_cast<int>(std::floor(std::log(t_min) / std::log(window_base) + 1e-12));
}

int LogGrid::last_window() const {
  const double k = std::log(t_max) / std::log(window_base);
  int last = static_cast<int>(std::ceil(k - 1e-12)) - 1;
  return std::max(last, first_window());
}

std::vector<double> LogGrid::window_samples(int k) const {
  const double lo = std::max(t_min, std::pow(window_base, k));
  const double hi = std::min(t_max, std::pow(window_base, k + 1));
  std::vector<double> out;
  if (!(lo < hi)) {
    if (lo == hi) out.push_back(lo);
    return out;
  }
  out.reserve(points_per_window);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points_per_window; ++i) {
    const double s = static_cast<double>(i) / (points_per_window - 1);
    out.push_back(std::exp(llo + s * (lhi - llo)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> LogGrid::all_samples() const {
  std::vector<double> out;
  for (int k = first_window(); k <= last_window(); ++k) {
    auto w = window_samples(k);
    out.insert(out.end(), w.begin(), w.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::Growing: return "Growing";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

nlohmann::json GrowthConfig::to_json() const {
  return {{"tau_grow", tau_grow},
          {"tau_flat", tau_flat},
          {"floor", floor},
          {"cap_factor", cap_factor},
          {"min_windows", min_windows},
          {"tail_fraction", tail_fraction}};
}

nlohmann::json GrowthReport::to_json() const {
  auto maxima = nlohmann::json::array();
  for (const auto& [k, m] : window_maxima) maxima.push_back({{"window", k}, {"max", m}});
  return {{"window_maxima", std::move(maxima)},
          {"slope", slope},
          {"verdict", to_string(verdict)},
          {"b_cap", b_cap},
          {"config", config.to_json()}};
}

namespace {

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

GrowthReport classify_common(std::vector<std::pair<int, double>> maxima,
                             const GrowthConfig& cfg,
                             const std::vector<double>& xs_all) {
  GrowthReport rep;
  rep.config = cfg;
  rep.window_maxima = std::move(maxima);
  const auto& wm = rep.window_maxima;
  const int n = static_cast<int>(wm.size());
  if (n < cfg.min_windows) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  const int tail_len =
      std::max(cfg.min_windows, static_cast<int>(std::ceil(n * cfg.tail_fraction)));
  const int start = std::max(0, n - tail_len);

  double tail_max = 0.0;
  bool all_floor = true;
  for (int i = start; i < n; ++i) {
    tail_max = std::max(tail_max, wm[i].second);
    if (wm[i].second > cfg.floor) all_floor = false;
  }
  rep.b_cap = cfg.cap_factor * std::max(wm[start].second, cfg.floor);
  if (all_floor) {
    rep.slope = 0.0;
    rep.verdict = Verdict::Bounded;
    return rep;
  }

  std::vector<double> xs, ys;
  for (int i = start; i < n; ++i) {
    xs.push_back(xs_all[i]);
    ys.push_back(std::log(std::max(wm[i].second, 1e-300)));
  }
  rep.slope = ls_slope(xs, ys);

  const double final_max = wm.back().second;
  if (rep.slope > cfg.tau_grow && final_max > cfg.floor)
    rep.verdict = Verdict::Growing;
  else if (rep.slope <= cfg.tau_flat && tail_max <= rep.b_cap)
    rep.verdict = Verdict::Bounded;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

}  // namespace

GrowthReport classify_growth(std::vector<std::pair<int, double>> maxima,
                             const GrowthConfig& cfg) {
  std::vector<double> xs;
  xs.reserve(maxima.size());
  for (const auto& [k, m] : maxima) xs.push_back(static_cast<double>(k));
  return classify_common(std::move(maxima), cfg, xs);
}

GrowthReport classify_growth_polylog(std::vector<std::pair<int, double>> values,
                                     const GrowthConfig& cfg) {
  // Cumulative running max: bounded oscillation plateaus (tail slope ~ 0) while
  // genuine growth keeps raising the envelope, so single-scale dips cannot
  // flip the verdict either way.
  const int n = static_cast<int>(values.size());
  std::vector<std::pair<int, double>> smoothed = values;
  double run = 0.0;
  for (int i = 0; i < n; ++i) {
    run = std::max(run, values[i].second);
    smoothed[i].second = run;
  }
  std::vector<double> xs;
  xs.reserve(smoothed.size());
  for (int i = 0; i < n; ++i) xs.push_back(std::log(static_cast<double>(i + 1)));
  return classify_common(std::move(smoothed), cfg, xs);
}

}  // namespace twistlab
