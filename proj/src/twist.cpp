#include "twistlab/twist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace twistlab {

namespace {

constexpr Index kMaterializeCap = Index{1} << 20;

SparseVec random_sparse(std::mt19937_64& rng, Index dim_max, bool complex_entries) {
  std::uniform_int_distribution<Index> dim(1, dim_max);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const Index d = dim(rng);
  std::uniform_int_distribution<Index> idx(1, dim_max);
  std::vector<SparseVec::Entry> entries;
  for (Index i = 0; i < d; ++i) {
    const double re = val(rng);
    const double im = complex_entries ? val(rng) : 0.0;
    entries.emplace_back(idx(rng), cplx{re, im});
  }
  return SparseVec::from_entries(std::move(entries));
}

}  // namespace

SparseVec omega(const FuncDescriptor& phi, const SparseVec& x) {
  if (x.empty()) return {};
  const double norm = x.norm2();
  std::vector<SparseVec::Entry> out;
  out.reserve(x.support_size());
  for (const auto& [k, v] : x.entries()) {
    const double ratio = std::abs(v) / norm;
    if (ratio < 1e-300) continue;
    const double t = std::max(0.0, std::log(norm / std::abs(v)));
    const cplx w = v * phi.eval(t);
    if (w != cplx{0.0, 0.0}) out.emplace_back(k, w);
  }
  return SparseVec::from_entries(std::move(out));
}

double quasinorm(const FuncDescriptor& phi, const TwistedVec& v) {
  return (v.y - omega(phi, v.x)).norm2() + v.x.norm2();
}

double quasilinearity_defect(const FuncDescriptor& phi, const SparseVec& x, const SparseVec& y) {
  const double denom = x.norm2() + y.norm2();
  if (denom == 0.0)
    throw std::invalid_argument("quasilinearity_defect requires (x, y) != (0, 0)");
  const SparseVec lhs = omega(phi, x + y) - omega(phi, x) - omega(phi, y);
  return lhs.norm2() / denom;
}

SampledConstant quasinorm_triangle_constant(const FuncDescriptor& phi, const SamplerConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double best = 0.0;
  int used = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    TwistedVec u, v;
    if (i % 2 == 0) {
      u = {random_sparse(rng, cfg.dim_max, cfg.complex_entries),
           random_sparse(rng, cfg.dim_max, cfg.complex_entries)};
      v = {random_sparse(rng, cfg.dim_max, cfg.complex_entries),
           random_sparse(rng, cfg.dim_max, cfg.complex_entries)};
    } else {
      // Lifted pairs probe the directions where the triangle inequality actually
      // fails; purely random twisted parts swamp the defect.
      SparseVec x = random_sparse(rng, cfg.dim_max, cfg.complex_entries);
      SparseVec y = random_sparse(rng, cfg.dim_max, cfg.complex_entries);
      u = {omega(phi, x), x};
      v = {omega(phi, y), y};
    }
    const double nu = quasinorm(phi, u), nv = quasinorm(phi, v);
    if (nu == 0.0 && nv == 0.0) continue;
    TwistedVec s{u.y + v.y, u.x + v.x};
    best = std::max(best, quasinorm(phi, s) / (nu + nv));
    ++used;
  }
  return {best, used};
}

SampledConstant quasilinearity_constant(const FuncDescriptor& phi, const SamplerConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double best = 0.0;
  int used = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    SparseVec x = random_sparse(rng, cfg.dim_max, cfg.complex_entries);
    SparseVec y = random_sparse(rng, cfg.dim_max, cfg.complex_entries);
    if (x.norm2() + y.norm2() == 0.0) continue;
    best = std::max(best, quasilinearity_defect(phi, x, y));
    ++used;
  }
  return {best, used};
}

cplx duality_pairing(const TwistedVec& u, const TwistedVec& v, bool sesquilinear) {
  // u = (a, b): a = u.y, b = u.x; v = (c, d): c = v.y, d = v.x.
  if (sesquilinear)
    return SparseVec::inner_sesquilinear(u.x, v.y) + SparseVec::inner_sesquilinear(u.y, v.x);
  return SparseVec::inner_bilinear(u.x, v.y) + SparseVec::inner_bilinear(u.y, v.x);
}

TwistedVec matrix_apply(const Matrix2& m, const TwistedVec& v) {
  return {v.y.scaled(m.lam) + v.x.scaled(m.mu), v.y.scaled(m.eta) + v.x.scaled(m.sigma)};
}

double growth_eta(const FuncDescriptor& psi, const Matrix2& m, Index n) {
  if (n < 1) throw std::invalid_argument("growth_eta requires n >= 1");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  if (n <= kMaterializeCap) {
    TwistedVec u{SparseVec::ones_prefix(n).scaled(1.0 / sqrt_n), SparseVec{}};
    return quasinorm(psi, matrix_apply(m, u));
  }
  const cplx psival = psi.eval(std::log(sqrt_n));
  return std::abs(m.lam - m.eta * psival) + std::abs(m.eta);
}

DualRouteValue growth_lambda_sigma(const FuncDescriptor& phi, const FuncDescriptor& psi,
                                   cplx lam, cplx sigma, Index n) {
  if (n < 1) throw std::invalid_argument("growth_lambda_sigma requires n >= 1");
  const double log_sqrt_n = 0.5 * std::log(static_cast<double>(n));
  const double scalar = std::abs(lam * phi.eval(log_sqrt_n) - sigma * psi.eval(log_sqrt_n));
  double vector = scalar;
  if (n <= kMaterializeCap) {
    const SparseVec fn = SparseVec::ones_prefix(n);
    const SparseVec diff = omega(phi, fn).scaled(lam) - omega(psi, fn).scaled(sigma);
    vector = diff.norm2() / std::sqrt(static_cast<double>(n));
  }
  return {vector, scalar};
}

GrowthReport growth_eta_sweep(const FuncDescriptor& psi, const Matrix2& m, int max_exp,
                              const GrowthConfig& cfg) {
  std::vector<std::pair<int, double>> values;
  for (int k = 1; k <= max_exp; ++k)
    values.emplace_back(k, growth_eta(psi, m, Index{1} << k));
  return classify_growth_polylog(std::move(values), cfg);
}

GrowthReport growth_lambda_sigma_sweep(const FuncDescriptor& phi, const FuncDescriptor& psi,
                                       cplx lam, cplx sigma, int max_exp,
                                       const GrowthConfig& cfg) {
  std::vector<std::pair<int, double>> values;
  for (int k = 1; k <= max_exp; ++k)
    values.emplace_back(k, growth_lambda_sigma(phi, psi, lam, sigma, Index{1} << k).vector_route);
  return classify_growth_polylog(std::move(values), cfg);
}

FuncDescriptor conjugate_map(const FuncDescriptor& phi) { return phi.conjugate(); }

TwistedVec conjugate_vec(const TwistedVec& v) { return {v.y.conjugated(), v.x.conjugated()}; }

TwistedVec basis_vector(BasisKind kind, Index n) {
  if (n < 1) throw std::invalid_argument("basis_vector requires n >= 1");
  if (kind == BasisKind::Twisted) return {SparseVec::basis(n), SparseVec{}};
  return {SparseVec{}, SparseVec::basis(n)};
}

SparseVec f_vector(Index n) { return SparseVec::ones_prefix(n); }

}  // namespace twistlab
