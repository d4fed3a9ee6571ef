#include <doctest.h>

#include <cmath>
#include <random>

#include "../tests/fixtures.hpp"
#include "twistlab/analysis.hpp"
#include "twistlab/cone.hpp"

using namespace twistlab;

TEST_CASE("make_sinlog") {
  auto g = make_sinlog(0.1, 1.0);
  CHECK(g.lipschitz_lower() == doctest::Approx(0.8));
  CHECK(g.lipschitz_upper() == doctest::Approx(1.2));
  CHECK(g.bi_lipschitz_flag());
  CHECK(std::abs(g.eval(1.0) - cplx{1.0, 0.0}) < 1e-15);

  auto bad = make_sinlog(2.0, 1.0);
  CHECK_FALSE(bad.bi_lipschitz_flag());

  CHECK_THROWS_AS(make_sinlog(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_sinlog(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("cone spec validation and bounds") {
  ConeSpec spec{{{1.0, 0.1, frac_sqrt(2)}, {0.5, 0.05, frac_sqrt(3)}}};
  spec.validate();
  CHECK(spec.lambda_sum() == doctest::Approx(1.5));
  const double alpha = spec.max_alpha(), beta = spec.max_beta();
  CHECK(spec.lower_lipschitz_bound() ==
        doctest::Approx(1.5 * (1.0 - alpha * (1.0 + 2.0 * std::acos(-1.0) * beta *
                                                        std::log(2.0)))));

  ConeSpec too_big{{{1.0, 0.5, 0.9}}};  // alpha(1 + 2 pi beta log 2) > 1
  CHECK_THROWS_AS(too_big.validate(), std::invalid_argument);
  ConeSpec dup{{{1.0, 0.05, frac_sqrt(2)}, {1.0, 0.05, frac_sqrt(2)}}};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}

TEST_CASE("cone elements") {
  const auto grid = LogGrid::coarse();
  ConeSpec single{{{2.0, 0.1, frac_sqrt(2)}}};
  auto h = cone_element(single);
  auto ref = FuncDescriptor::scale(2.0, make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(2))));
  for (double t : grid.all_samples())
    CHECK(std::abs(h.eval(t) - ref.eval(t)) <= 1e-12 * std::max(1.0, t));
  CHECK(h.eval(0.0) == cplx{0.0, 0.0});

  // empirical lower bound respects the analytic one
  auto [lo, hi] = lipschitz_bounds(h, grid);
  REQUIRE(h.lipschitz_lower().has_value());
  CHECK(lo >= *h.lipschitz_lower() - 1e-6);
  CHECK(hi >= lo);

  CHECK(in_L_bis(h, grid).verdict);

  // cone closure: merged spec valid, element is the pointwise sum
  ConeSpec a{{{1.0, 0.08, frac_sqrt(2)}}};
  ConeSpec b{{{0.5, 0.06, frac_sqrt(3)}}};
  auto merged = ConeSpec::merge(a, b);
  merged.validate();
  auto hm = cone_element(merged);
  auto ha = cone_element(a);
  auto hb = cone_element(b);
  for (double t : grid.all_samples())
    CHECK(std::abs(hm.eval(t) - ha.eval(t) - hb.eval(t)) <= 1e-10 * std::max(1.0, t));
}

TEST_CASE("kronecker orbits") {
  auto rational = kronecker_orbit({0.5}, 8);
  for (std::int64_t k = 0; k < 8; ++k) {
    const double expect = (k % 2 == 0) ? 0.5 : 0.0;  // k = 1, 2, ...
    CHECK(rational.points[size_t(k)][0] == doctest::Approx(expect).epsilon(1e-12));
  }

  auto orbit = kronecker_orbit({frac_sqrt(2)}, 10000);
  for (const auto& p : orbit.points) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] < 1.0);
  }
  const double r1e4 = covering_radius(orbit);
  CHECK(r1e4 <= (10.0 / 10000.0) * fixtures::kRadiusFactor);

  auto orbit2 = kronecker_orbit({frac_sqrt(2)}, 20000);
  CHECK(covering_radius(orbit2) <= r1e4);

  CHECK(covering_radius(kronecker_orbit({frac_sqrt(2)}, 100000)) <= fixtures::kEps1);

  auto single = kronecker_orbit({0.25}, 1);
  CHECK(covering_radius(single) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("2d covering radius and discrepancy") {
  auto orbit = kronecker_orbit({frac_sqrt(2), frac_sqrt(3)}, 100000);
  CHECK(covering_radius(orbit) <= fixtures::kEps2);
  CHECK(discrepancy_estimate(orbit) <= fixtures::kDiscCap);
}

TEST_CASE("sign patterns") {
  CHECK_FALSE(find_sign_pattern({frac_sqrt(2)}, {1}, 1.0, 1000).has_value());

  auto k = find_sign_pattern({frac_sqrt(2)}, {1}, 0.5, 100000);
  REQUIRE(k.has_value());
  CHECK(*k < 100);
  CHECK(std::sin(2.0 * std::acos(-1.0) * double(*k) * frac_sqrt(2) * std::log(2.0)) > 0.5);

  auto k3 = find_sign_pattern({frac_sqrt(2), frac_sqrt(3), frac_sqrt(5)}, {1, -1, 1}, 0.5,
                              1000000);
  REQUIRE(k3.has_value());
  const double betas[] = {frac_sqrt(2), frac_sqrt(3), frac_sqrt(5)};
  const int signs[] = {1, -1, 1};
  for (int i = 0; i < 3; ++i) {
    const double s =
        std::sin(2.0 * std::acos(-1.0) * double(*k3) * betas[i] * std::log(2.0));
    CHECK(signs[i] * s > 0.5);
  }
}

TEST_CASE("trig identity") {
  auto r = trig_identity_check(1.0, 1);
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-10);

  auto r0 = trig_identity_check(0.7, 0);
  CHECK(std::abs(r0.lhs - r0.rhs) <= 1e-10);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> bp(0.01, 0.99);
  std::uniform_int_distribution<std::int64_t> nn(1, 1000);
  for (int i = 0; i < 1000; ++i) {
    auto rr = trig_identity_check(bp(rng), nn(rng));
    CHECK(std::abs(rr.lhs - rr.rhs) <= 1e-10);
  }

  // a = 2 - cos(beta gamma) >= 1 for every beta'
  for (double beta_prime : {0.1, 0.5, 0.9}) {
    const double beta = -2.0 * std::acos(-1.0) * beta_prime * ConeSpec::gamma;
    CHECK(2.0 - std::cos(beta * ConeSpec::gamma) >= 1.0);
  }
}

TEST_CASE("gram rank independence") {
  const auto grid = LogGrid::coarse(32);
  std::vector<FuncDescriptor> gens;
  for (std::int64_t p : {2, 3, 5})
    gens.push_back(make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(p))));

  auto r3 = independence_gram_rank(gens, grid);
  CHECK(r3.rank == 3);
  CHECK(r3.independent);

  gens.push_back(gens.front());
  auto rdup = independence_gram_rank(gens, grid);
  CHECK(rdup.rank == 3);
  CHECK_FALSE(rdup.independent);

  auto r1 = independence_gram_rank({gens.front()}, grid);
  CHECK(r1.rank == 1);
  CHECK(r1.singular_values.front() > 0.0);

  std::vector<FuncDescriptor> five;
  for (std::int64_t p : {2, 3, 5, 7, 11})
    five.push_back(make_sinlog(0.1, ConeSpec::beta_hat(frac_sqrt(p))));
  auto r5 = independence_gram_rank(five, grid);
  CHECK(r5.rank == 5);
  CHECK(r5.min_singular_value > fixtures::kGramMinSv);
}

TEST_CASE("frac_sqrt") {
  CHECK(frac_sqrt(2) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(frac_sqrt(5) == doctest::Approx(std::sqrt(5.0) - 2.0).epsilon(1e-15));
}
