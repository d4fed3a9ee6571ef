#include <doctest.h>

#include <cmath>
#include <random>

#include "../tests/fixtures.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/cone.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

FuncDescriptor example_sinlog() {
  return make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(2)));
}

}  // namespace

TEST_CASE("class reports on the canonical maps") {
  auto lin = class_report(FuncDescriptor::linear(1.0));
  CHECK(lin.in_L_bi);
  CHECK(lin.in_L_bis);
  CHECK_FALSE(lin.in_L_bid);
  CHECK(lin.bid.max_delta <= 1e-12);

  auto sl = class_report(example_sinlog());
  CHECK(sl.in_L_bi);
  CHECK(sl.in_L_bis);
  CHECK(sl.in_L_bid);
  CHECK(sl.bid.max_delta > fixtures::kBidFloor);

  auto sp = class_report(FuncDescriptor::sin_plain());
  CHECK_FALSE(sp.in_L_bi);

  // scale invariance of the three class verdicts
  for (cplx c : {cplx{2.0, 0.0}, cplx{-1.0, 0.0}}) {
    auto scaled = class_report(FuncDescriptor::scale(c, example_sinlog()));
    CHECK(scaled.in_L_bi == sl.in_L_bi);
    CHECK(scaled.in_L_bis == sl.in_L_bis);
    CHECK(scaled.in_L_bid == sl.in_L_bid);
  }

  auto j = sl.to_json();
  CHECK(j.contains("evidence"));
  CHECK(j["evidence"].contains("bid_max_delta"));
}

TEST_CASE("canonical L") {
  auto lin1 = FuncDescriptor::linear(1.0);
  auto singles = BlockBasis::singletons(5);
  for (const auto& img : canonical_L(lin1, singles)) CHECK(img.empty());

  const Index N = 16;
  auto uniform = BlockBasis::uniform(3, N);
  auto sl = example_sinlog();
  const cplx factor = sl.eval(0.5 * std::log(double(N)));
  auto images = canonical_L(sl, uniform);
  for (std::size_t n = 0; n < uniform.size(); ++n)
    CHECK((images[n] - uniform.blocks()[n].scaled(factor)).norm2() < 1e-13);
}

TEST_CASE("self-similarity defect") {
  auto sl = example_sinlog();
  auto uniform = BlockBasis::uniform(8, 4);
  CHECK(selfsim_defect(sl, uniform, SparseVec::basis(1)) <= 1e-12);

  auto lin1 = FuncDescriptor::linear(1.0);
  for (Index M : {2, 4, 8})
    CHECK(selfsim_defect(lin1, uniform, f_vector(M)) <= 1e-12);

  // vector route vs closed-form scalar route on uniform blocks
  for (Index N : {4, 16, 64}) {
    auto basis = BlockBasis::uniform(64, N);
    for (Index M : {2, 8, 64}) {
      const double vec = selfsim_defect(sl, basis, f_vector(M));
      const double scalar = uniform_block_defect(sl, N, M);
      CHECK(vec == doctest::Approx(scalar).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(selfsim_defect(sl, uniform, SparseVec{}), std::invalid_argument);
  CHECK_THROWS_AS(selfsim_defect(sl, uniform, SparseVec::basis(99)), std::out_of_range);
}

TEST_CASE("uniform block defect") {
  auto linc = FuncDescriptor::linear(cplx{3.0, -2.0});
  for (Index n : {1, 2, 1024})
    for (Index m : {1, 7, 4096}) CHECK(uniform_block_defect(linc, n, m) <= 1e-12);

  auto sl = FuncDescriptor::sin_log(0.1, 1.0);
  CHECK(uniform_block_defect(sl, 1, 64) == 0.0);
  CHECK(uniform_block_defect(sl, 64, 1) == 0.0);
  CHECK(uniform_block_defect(sl, 8, 128) == uniform_block_defect(sl, 128, 8));

  double mx = 0.0;
  for (int i = 1; i <= 30; ++i)
    for (int j = 1; j <= 30; ++j)
      mx = std::max(mx, uniform_block_defect(sl, Index{1} << i, Index{1} << j));
  CHECK(mx > fixtures::kBidFloor);
}

TEST_CASE("kalton-peck detector quartet") {
  auto lin = kalton_peck_detector(FuncDescriptor::linear(5.0));
  CHECK(lin.verdict == SelfSimVerdict::KaltonPeckLike);
  CHECK(std::abs(lin.hyers_c - cplx{5.0, 0.0}) < 1e-10);
  CHECK(lin.defect_max <= 1e-12);

  auto pert = kalton_peck_detector(
      FuncDescriptor::sum({FuncDescriptor::linear(1.0), FuncDescriptor::sin_plain()}));
  CHECK(pert.verdict == SelfSimVerdict::KaltonPeckLike);
  CHECK(pert.defect_max <= fixtures::kDefectCap);

  auto sl = kalton_peck_detector(example_sinlog());
  CHECK(sl.verdict == SelfSimVerdict::NotKaltonPeck);

  auto pp = kalton_peck_detector(FuncDescriptor::power_phase(1.0));
  CHECK(pp.verdict == SelfSimVerdict::NotKaltonPeck);

  auto j = sl.to_json();
  CHECK(j.contains("evidence"));
  CHECK(j["evidence"].contains("hyers_residual"));
}

TEST_CASE("detector verdicts are equivalence-class invariant") {
  for (const auto& phi :
       {FuncDescriptor::linear(1.0), example_sinlog()}) {
    const auto base = kalton_peck_detector(phi).verdict;
    CHECK(kalton_peck_detector(FuncDescriptor::scale(2.0, phi)).verdict == base);
    CHECK(kalton_peck_detector(FuncDescriptor::scale(-1.0, phi)).verdict == base);
    CHECK(kalton_peck_detector(
              FuncDescriptor::sum({phi, FuncDescriptor::sin_plain()})).verdict == base);
  }
}

TEST_CASE("incomparability evidence") {
  auto sl = example_sinlog();
  auto self = incomparability_evidence(sl, sl);
  CHECK_FALSE(self.not_projectively_equivalent);
  CHECK_FALSE(self.all_hypotheses_supported);

  auto lins = incomparability_evidence(FuncDescriptor::linear(1.0),
                                       FuncDescriptor::linear(2.0));
  CHECK(lins.projective.report.verdict == Verdict::Bounded);
  CHECK(std::abs(lins.projective.a_best - cplx{0.5, 0.0}) < 1e-6);
  CHECK_FALSE(lins.all_hypotheses_supported);

  auto pair = incomparability_evidence(
      sl, make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(3))));
  CHECK(pair.phi_in_bid_supported);
  CHECK(pair.psi_in_bis_supported);
  CHECK(pair.not_projectively_equivalent);
  CHECK(pair.growth_supported);
  CHECK(pair.all_hypotheses_supported);

  auto j = pair.to_json();
  CHECK(j.contains("hypotheses"));
  CHECK(j["hypotheses"]["all_supported"].get<bool>());
}
