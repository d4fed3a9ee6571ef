// Oracle sweeps that produced the frozen constants in tests/fixtures.hpp.
// Run manually; the recorded values are committed, not regenerated.

#include <cstdio>
#include <random>

#include "twistlab/analysis.hpp"
#include "twistlab/blocks.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/cone.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

static void show(const char* name, const GrowthReport& r) {
  std::printf("%-40s verdict=%-12s slope=%.4f final=%.6g\n", name,
              to_string(r.verdict).c_str(), r.slope, r.window_maxima.back().second);
}

int main() {
  const auto lin1 = FuncDescriptor::linear(1.0);
  const auto lin2 = FuncDescriptor::linear(2.0);
  const auto lin_sin = FuncDescriptor::sum({lin1, FuncDescriptor::sin_plain()});
  const auto sl = make_sinlog(0.1, 1.0);
  const auto grid = LogGrid::coarse();

  std::printf("== growth verdicts ==\n");
  show("equiv(lin1, lin1+sin)", equivalence_test(lin1, lin_sin, grid));
  show("equiv(lin1, lin2)", equivalence_test(lin1, lin2, grid));
  show("equiv(lin1, sinlog(0.1,1))", equivalence_test(lin1, sl, grid));
  show("additivity(lin1)", additivity_defect(lin1, grid));
  show("additivity(lin1+sin)", additivity_defect(lin_sin, grid));
  show("additivity(sinlog)", additivity_defect(sl, grid));
  auto hy = hyers_linearize(FuncDescriptor::sum({FuncDescriptor::linear(3.0),
                                                 FuncDescriptor::sin_plain()}),
                            grid);
  std::printf("hyers(lin3+sin) c=(%.12f, %g)\n", hy.c.real(), hy.c.imag());
  show("hyers residual(lin3+sin)", hy.residual);
  show("hyers residual(sinlog)", hyers_linearize(sl, grid).residual);

  std::printf("\n== projective ==\n");
  auto pr = projective_equivalence_test(lin2, lin1, grid);
  std::printf("a_best(lin2 vs lin1) = %.10f\n", pr.a_best.real());
  show("report", pr.report);
  const double b1 = frac_sqrt(2), b2 = frac_sqrt(3);
  auto g1 = make_sinlog(0.1, ConeSpec::beta_hat(b1));
  auto g2 = make_sinlog(0.1, ConeSpec::beta_hat(b2));
  auto pr2 = projective_equivalence_test(g1, g2, grid);
  std::printf("a_best(sinlog b1 vs b2) = %.6f\n", pr2.a_best.real());
  show("report", pr2.report);

  std::printf("\n== constants (sampling oracles) ==\n");
  SamplerConfig ql{10000, 256, 123, true};
  std::printf("B_ql  quasilinearity max (lin1, dim<=256): %.6f\n",
              quasilinearity_constant(lin1, ql).value);
  SamplerConfig tc{10000, 128, 321, true};
  std::printf("C_fix triangle max (lin1, dim<=128): %.6f\n",
              quasinorm_triangle_constant(lin1, tc).value);
  for (Index dim : {8, 16, 32, 64}) {
    SamplerConfig dc{4000, dim, 555, true};
    std::mt19937_64 rng(dc.seed);
    double best = 0.0;
    const auto neg = FuncDescriptor::linear(-1.0);
    for (int i = 0; i < dc.samples; ++i) {
      auto rnd = [&](auto& r) {
        std::uniform_real_distribution<double> val(-1.0, 1.0);
        std::vector<SparseVec::Entry> e;
        for (Index n = 1; n <= dim; ++n) e.emplace_back(n, cplx{val(r), val(r)});
        return SparseVec::from_entries(std::move(e));
      };
      TwistedVec u{rnd(rng), rnd(rng)}, v{rnd(rng), rnd(rng)};
      const double den = quasinorm(lin1, u) * quasinorm(neg, v);
      if (den > 0.0) best = std::max(best, std::abs(duality_pairing(u, v)) / den);
    }
    std::printf("K_dual dim<=%lld: %.6f\n", static_cast<long long>(dim), best);
  }

  std::printf("\n== kronecker ==\n");
  auto o1 = kronecker_orbit({frac_sqrt(2)}, 100000);
  std::printf("eps1  covering radius 1D K=1e5: %.8g\n", covering_radius(o1));
  auto o1b = kronecker_orbit({frac_sqrt(2)}, 10000);
  std::printf("radius 1D K=1e4: %.8g  (x K/10 = %.4f)\n", covering_radius(o1b),
              covering_radius(o1b) * 1e4 / 10.0);
  auto o2 = kronecker_orbit({frac_sqrt(2), frac_sqrt(3)}, 100000);
  std::printf("eps2  covering radius 2D K=1e5: %.8g\n", covering_radius(o2));
  std::printf("disc  2D K=1e5: %.8g\n", discrepancy_estimate(o2));

  std::printf("\n== bands ==\n");
  auto lux = luxemburg_vs_kp(64, {1000, 99, true});
  std::printf("luxemburg/kp band dim<=64: [%.6f, %.6f]\n", lux.lo, lux.hi);
  for (Index w : {1, 4, 8, 16, 64}) {
    auto basis = w == 1 ? BlockBasis::singletons(24) : BlockBasis::uniform(24, w);
    auto band = block_norm_vs_kp(lin1, basis, {1000, 77, true});
    std::printf("block/kp band width=%lld: [%.6f, %.6f]\n", static_cast<long long>(w),
                band.lo, band.hi);
    auto band_sl = block_norm_vs_kp(sl, basis, {1000, 77, true});
    std::printf("block/kp band (sinlog) width=%lld: [%.6f, %.6f]\n",
                static_cast<long long>(w), band_sl.lo, band_sl.hi);
  }

  std::printf("\n== classification quartet ==\n");
  for (const auto& f : {lin1, lin_sin, make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(2))),
                        FuncDescriptor::power_phase(1.0)}) {
    auto cr = class_report(f);
    std::printf("%-28s bi=%d bis=%d bid=%d  bid_max=%.4f lip=[%.4f,%.4f]\n",
                cr.map_name.c_str(), cr.in_L_bi, cr.in_L_bis, cr.in_L_bid, cr.bid.max_delta,
                cr.lipschitz_estimates.first, cr.lipschitz_estimates.second);
    auto det = kalton_peck_detector(f);
    std::printf("%-28s detector=%-15s defect_max=%.4f residual=%s\n", cr.map_name.c_str(),
                to_string(det.verdict).c_str(), det.defect_max,
                to_string(det.hyers_residual.verdict).c_str());
  }

  std::printf("\n== gram ==\n");
  std::vector<FuncDescriptor> gens;
  for (std::int64_t p : {2, 3, 5, 7, 11})
    gens.push_back(make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(p))));
  auto gr = independence_gram_rank(gens, LogGrid::coarse(32));
  std::printf("rank=%d min_sv=%.8g\n", gr.rank, gr.min_singular_value);

  std::printf("\n== sweeps ==\n");
  show("growth_eta eta=1 lam=0 lin1", growth_eta_sweep(lin1, {0, 0, 1, 0}, 30));
  show("growth_ls lin1 vs sinlog", growth_lambda_sigma_sweep(lin1, g1, 1.0, 1.0, 30));
  show("growth_ls lin1 vs lin2 (a=2)", growth_lambda_sigma_sweep(lin1, lin2, 2.0, 1.0, 30));
  return 0;
}
