#include "twistlab/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "twistlab/twist.hpp"

namespace twistlab {

BlockBasis::BlockBasis(std::vector<SparseVec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("BlockBasis requires at least one block");
  breakpoints_.push_back(0);
  Index prev_end = 0;
  for (const auto& v : blocks_) {
    if (v.empty()) throw std::invalid_argument("BlockBasis blocks must be nonzero");
    if (std::abs(v.norm2() - 1.0) > 1e-12)
      throw std::invalid_argument("BlockBasis blocks must be l2-normalized");
    const Index first = v.entries().front().first;
    const Index last = v.entries().back().first;
    if (first <= prev_end)
      throw std::invalid_argument("BlockBasis supports must be disjoint and ordered");
    prev_end = last;
    breakpoints_.push_back(last);
  }
}

BlockBasis BlockBasis::singletons(Index n) {
  std::vector<SparseVec> blocks;
  for (Index k = 1; k <= n; ++k) blocks.push_back(SparseVec::basis(k));
  return BlockBasis(std::move(blocks));
}

BlockBasis BlockBasis::uniform(Index block_count, Index width) {
  if (block_count < 1 || width < 1)
    throw std::invalid_argument("uniform basis requires positive block count and width");
  const double coeff = 1.0 / std::sqrt(static_cast<double>(width));
  std::vector<SparseVec> blocks;
  for (Index n = 0; n < block_count; ++n) {
    std::vector<SparseVec::Entry> entries;
    for (Index j = 1; j <= width; ++j) entries.emplace_back(n * width + j, cplx{coeff, 0.0});
    blocks.push_back(SparseVec::from_entries(std::move(entries)));
  }
  return BlockBasis(std::move(blocks));
}

nlohmann::json BlockBasis::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& v : blocks_) arr.push_back(v.to_json());
  return {{"blocks", std::move(arr)}};
}

BlockBasis BlockBasis::from_json(const nlohmann::json& j) {
  const auto& arr = j.at("blocks");
  if (!arr.is_array()) throw std::invalid_argument("BlockBasis JSON: \"blocks\" must be an array");
  std::vector<SparseVec> blocks;
  for (const auto& b : arr) blocks.push_back(SparseVec::from_json(b));
  return BlockBasis(std::move(blocks));
}

TwistedVec block_lift(const FuncDescriptor& phi, const BlockBasis& basis, std::size_t n) {
  if (n >= basis.size()) throw std::out_of_range("block_lift: index out of range");
  const SparseVec& v = basis.blocks()[n];
  return {omega(phi, v), v};
}

DualNorm block_combination_norm(const FuncDescriptor& phi, const BlockBasis& basis,
                                const SparseVec& t) {
  if (t.empty()) return {0.0, 0.0};
  if (!t.entries().empty() && t.entries().back().first > static_cast<Index>(basis.size()))
    throw std::out_of_range("block_combination_norm: coefficient index exceeds basis length");

  // Direct route: assemble the lifted combination and take the quasinorm.
  SparseVec y, x;
  for (const auto& [n, tn] : t.entries()) {
    const SparseVec& v = basis.blocks()[static_cast<size_t>(n - 1)];
    y = y + omega(phi, v).scaled(tn);
    x = x + v.scaled(tn);
  }
  const double direct = quasinorm(phi, {y, x});

  // Formula route: coordinatewise difference of the two phi terms.
  const double tnorm = t.norm2();
  double acc = 0.0;
  for (const auto& [n, tn] : t.entries()) {
    const SparseVec& v = basis.blocks()[static_cast<size_t>(n - 1)];
    for (const auto& [k, vk] : v.entries()) {
      // Both arguments are >= 0 up to rounding (|v_n(k)| <= 1, |t_n v_n(k)| <= ||t||).
      const cplx inner = phi.eval(std::max(0.0, std::log(1.0 / std::abs(vk)))) -
                         phi.eval(std::max(0.0, std::log(tnorm / std::abs(tn * vk))));
      acc += std::norm(tn * vk * inner);
    }
  }
  const double formula = std::sqrt(acc) + tnorm;
  return {direct, formula};
}

double kp_functional(const SparseVec& t) {
  if (t.empty()) return 0.0;
  const double tnorm = t.norm2();
  double acc = 0.0;
  for (const auto& [n, tn] : t.entries()) {
    const double lg = std::log(tnorm / std::abs(tn));
    acc += std::norm(tn) * lg * lg;
  }
  return std::sqrt(acc) + tnorm;
}

double orlicz_phi(double s) {
  if (s == 0.0) return 0.0;
  if (s < 0.0) throw std::invalid_argument("orlicz_phi requires s >= 0");
  const double l = 1.0 + std::abs(std::log(s));
  return s * s * l * l;
}

double luxemburg_norm(const SparseVec& t) {
  if (t.empty()) throw std::invalid_argument("luxemburg_norm requires t != 0");
  auto level = [&](double rho) {
    double acc = 0.0;
    for (const auto& [n, tn] : t.entries()) acc += orlicz_phi(std::abs(tn) / rho);
    return acc;
  };
  double lo = t.sup_norm();
  double hi = kp_functional(t);
  for (const auto& [n, tn] : t.entries()) hi += std::abs(tn);
  if (level(lo) <= 1.0) return lo;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (level(mid) <= 1.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

TwistedVec embed_second(const SparseVec& x) { return {SparseVec{}, x}; }

SparseVec project_first(const TwistedVec& v) { return v.y; }

namespace {

SparseVec random_coeffs(std::mt19937_64& rng, Index dim_max, bool complex_coeffs) {
  std::uniform_int_distribution<Index> dim(1, dim_max);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const Index d = dim(rng);
  std::vector<SparseVec::Entry> entries;
  for (Index n = 1; n <= d; ++n) {
    const double re = val(rng);
    const double im = complex_coeffs ? val(rng) : 0.0;
    if (re != 0.0 || im != 0.0) entries.emplace_back(n, cplx{re, im});
  }
  if (entries.empty()) entries.emplace_back(1, cplx{1.0, 0.0});
  return SparseVec::from_entries(std::move(entries));
}

}  // namespace

RatioBand block_norm_vs_kp(const FuncDescriptor& phi, const BlockBasis& basis,
                           const BandConfig& cfg) {
  if (!phi.bi_lipschitz_flag())
    throw std::invalid_argument("block_norm_vs_kp requires a bi-Lipschitz map");
  std::mt19937_64 rng(cfg.seed);
  RatioBand band{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (int i = 0; i < cfg.samples; ++i) {
    SparseVec t = random_coeffs(rng, static_cast<Index>(basis.size()), cfg.complex_coeffs);
    const double kp = kp_functional(t);
    if (kp == 0.0) continue;
    const double ratio = block_combination_norm(phi, basis, t).direct / kp;
    band.lo = std::min(band.lo, ratio);
    band.hi = std::max(band.hi, ratio);
    ++band.samples;
  }
  return band;
}

RatioBand luxemburg_vs_kp(Index dim_max, const BandConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  RatioBand band{std::numeric_limits<double>::infinity(), 0.0, 0};
  for (int i = 0; i < cfg.samples; ++i) {
    SparseVec t = random_coeffs(rng, dim_max, cfg.complex_coeffs);
    const double kp = kp_functional(t);
    if (kp == 0.0) continue;
    const double ratio = luxemburg_norm(t) / kp;
    band.lo = std::min(band.lo, ratio);
    band.hi = std::max(band.hi, ratio);
    ++band.samples;
  }
  return band;
}

}  // namespace twistlab
