#include <doctest.h>

#include <cmath>
#include <random>

#include "../tests/fixtures.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

const double kLn2 = std::log(2.0);

SparseVec random_vec(std::mt19937_64& rng, Index dim, bool complex_entries = true) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<SparseVec::Entry> entries;
  for (Index n = 1; n <= dim; ++n)
    entries.emplace_back(n, cplx{val(rng), complex_entries ? val(rng) : 0.0});
  return SparseVec::from_entries(std::move(entries));
}

}  // namespace

TEST_CASE("sparse vector basics") {
  auto v = SparseVec::from_entries({{3, {1.0, 0.0}}, {1, {0.0, 2.0}}, {3, {-1.0, 0.0}}});
  CHECK(v.support_size() == 1);  // index-3 entries cancel
  CHECK(v.at(1) == cplx{0.0, 2.0});
  CHECK(v.norm2() == doctest::Approx(2.0));
  CHECK(SparseVec::ones_prefix(9).norm2() == doctest::Approx(3.0));
  CHECK_THROWS(SparseVec::from_entries({{0, {1.0, 0.0}}}));

  auto j = v.to_json();
  CHECK(SparseVec::from_json(j).to_json() == j);

  TwistedVec tv{SparseVec::basis(2), v};
  CHECK(TwistedVec::from_json(tv.to_json()).to_json() == tv.to_json());
}

TEST_CASE("omega closed forms") {
  auto lin1 = FuncDescriptor::linear(1.0);
  CHECK(omega(lin1, SparseVec::basis(1)).empty());
  CHECK(omega(lin1, SparseVec{}).empty());

  const auto f4 = f_vector(4);
  const auto w = omega(lin1, f4);
  CHECK((w - f4.scaled(kLn2)).norm2() < 1e-14);

  for (Index n : {Index{2}, Index{16}, Index{4096}, Index{1} << 20}) {
    const auto fn = f_vector(n);
    const cplx expected = FuncDescriptor::sin_log(0.1, 1.0).eval(0.5 * std::log(double(n)));
    const auto wn = omega(FuncDescriptor::sin_log(0.1, 1.0), fn);
    CHECK((wn - fn.scaled(expected)).norm2() <= 1e-10 * wn.norm2());
  }
}

TEST_CASE("omega homogeneity and support") {
  std::mt19937_64 rng(2024);
  auto phi = FuncDescriptor::power_phase(1.0);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    auto x = random_vec(rng, 64);
    const cplx lam{val(rng), val(rng)};
    const auto a = omega(phi, x.scaled(lam));
    const auto b = omega(phi, x).scaled(lam);
    CHECK((a - b).norm2() <= 1e-12 * std::max(1.0, b.norm2()));
    CHECK(omega(phi, x).support_subset_of(x));
  }
}

TEST_CASE("quasinorm") {
  auto lin1 = FuncDescriptor::linear(1.0);
  CHECK(quasinorm(lin1, {SparseVec{}, SparseVec::basis(1)}) == doctest::Approx(1.0));
  CHECK(quasinorm(lin1, {SparseVec{}, f_vector(4)}) ==
        doctest::Approx(2.0 * kLn2 + 2.0).epsilon(1e-14));
  CHECK(quasinorm(lin1, {SparseVec{}, SparseVec{}}) == 0.0);

  std::mt19937_64 rng(5);
  auto x = random_vec(rng, 32);
  CHECK(quasinorm(lin1, {omega(lin1, x), x}) == doctest::Approx(x.norm2()).epsilon(1e-12));

  // exact absolute homogeneity under doubling
  TwistedVec v{random_vec(rng, 16), random_vec(rng, 16)};
  CHECK(quasinorm(lin1, {v.y.scaled(2.0), v.x.scaled(2.0)}) == 2.0 * quasinorm(lin1, v));
}

TEST_CASE("quasilinearity defect and sampled constants") {
  auto lin1 = FuncDescriptor::linear(1.0);
  CHECK(quasilinearity_defect(lin1, SparseVec::basis(1), SparseVec::basis(2)) ==
        doctest::Approx(std::sqrt(2.0) * kLn2 / 4.0).epsilon(1e-14));
  std::mt19937_64 rng(6);
  auto x = random_vec(rng, 20);
  CHECK(quasilinearity_defect(lin1, x, SparseVec{}) == 0.0);
  CHECK_THROWS_AS(quasilinearity_defect(lin1, SparseVec{}, SparseVec{}),
                  std::invalid_argument);

  auto ql = quasilinearity_constant(lin1, {10000, 256, 123, true});
  CHECK(ql.value <= fixtures::kBqlCap);
  CHECK(ql.value > 0.1);

  auto tc = quasinorm_triangle_constant(lin1, {10000, 128, 321, true});
  CHECK(tc.value <= fixtures::kCfixCap);
  CHECK(tc.value > fixtures::kCfixMin);  // the quasi-norm is not a norm
}

TEST_CASE("triangle ratio is exactly 1 for identical summands") {
  std::mt19937_64 rng(7);
  auto lin1 = FuncDescriptor::linear(1.0);
  TwistedVec u{random_vec(rng, 24), random_vec(rng, 24)};
  const double nu = quasinorm(lin1, u);
  CHECK(quasinorm(lin1, {u.y + u.y, u.x + u.x}) / (2.0 * nu) == doctest::Approx(1.0));
}

TEST_CASE("duality pairing") {
  const TwistedVec base1{SparseVec{}, SparseVec::basis(1)};
  const TwistedVec twist1{SparseVec::basis(1), SparseVec{}};
  CHECK(duality_pairing(base1, base1) == cplx{0.0, 0.0});
  CHECK(duality_pairing(base1, twist1) == cplx{1.0, 0.0});

  auto lin1 = FuncDescriptor::linear(1.0);
  auto neg1 = FuncDescriptor::linear(-1.0);
  std::vector<double> maxima;
  for (Index dim : {8, 16, 32, 64}) {
    std::mt19937_64 local(555);
    double best = 0.0;
    for (int i = 0; i < 4000; ++i) {
      TwistedVec u{random_vec(local, dim), random_vec(local, dim)};
      TwistedVec v{random_vec(local, dim), random_vec(local, dim)};
      const double den = quasinorm(lin1, u) * quasinorm(neg1, v);
      if (den > 0.0) best = std::max(best, std::abs(duality_pairing(u, v)) / den);
    }
    maxima.push_back(best);
    CHECK(best <= fixtures::kDualCap);
  }
  // stability: the normalized pairing does not grow as dim doubles 8 -> 64
  for (size_t i = 1; i < maxima.size(); ++i) CHECK(maxima[i] <= maxima[0]);
}

TEST_CASE("matrix action") {
  std::mt19937_64 rng(8);
  TwistedVec v{random_vec(rng, 12), random_vec(rng, 12)};
  auto w = matrix_apply(Matrix2::identity(), v);
  CHECK((w.y - v.y).norm2() == 0.0);
  CHECK((w.x - v.x).norm2() == 0.0);

  const auto fn = f_vector(7);
  auto swapped = matrix_apply({0.0, 0.0, 1.0, 0.0}, {fn, SparseVec{}});
  CHECK(swapped.y.empty());
  CHECK((swapped.x - fn).norm2() == 0.0);

  const cplx lam{2.0, 1.0}, eta{0.5, -1.0};
  auto u = matrix_apply({lam, 0.0, eta, 0.0}, {fn.scaled(1.0 / fn.norm2()), SparseVec{}});
  CHECK((u.y - fn.scaled(lam / fn.norm2())).norm2() < 1e-15);
  CHECK((u.x - fn.scaled(eta / fn.norm2())).norm2() < 1e-15);
}

TEST_CASE("growth_eta") {
  auto lin1 = FuncDescriptor::linear(1.0);
  for (Index n : {1, 4, 1024})
    CHECK(growth_eta(lin1, {1.0, 0.0, 0.0, 0.0}, n) == doctest::Approx(1.0).epsilon(1e-12));

  for (Index n : {4, 64, 4096}) {
    const double expect = 0.5 * std::log(double(n)) + 1.0;
    CHECK(growth_eta(lin1, {0.0, 0.0, 1.0, 0.0}, n) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(growth_eta(lin1, {1.0, 0.0, 1.0, 0.0}, 4) ==
        doctest::Approx(std::abs(1.0 - kLn2) + 1.0).epsilon(1e-12));

  // materialized and closed-form routes agree across the cap
  const Index cap = Index{1} << 20;
  const double lhs = growth_eta(lin1, {1.0, 0.0, 2.0, 0.0}, cap);
  const double rhs = std::abs(1.0 - 2.0 * 0.5 * std::log(double(cap))) + 2.0;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

  CHECK(growth_eta_sweep(lin1, {0.0, 0.0, 1.0, 0.0}, 30).verdict == Verdict::Growing);
}

TEST_CASE("growth_lambda_sigma") {
  auto lin1 = FuncDescriptor::linear(1.0);
  auto lin2 = FuncDescriptor::linear(2.0);
  auto sl = FuncDescriptor::sin_log(0.1, 1.0);

  for (Index n : {2, 100, 1 << 18}) {
    auto same = growth_lambda_sigma(sl, sl, 3.0, 3.0, n);
    CHECK(same.vector_route <= 1e-12);
    CHECK(same.scalar_route <= 1e-12);

    auto cancel = growth_lambda_sigma(lin1, lin2, 2.0, 1.0, n);
    CHECK(cancel.vector_route <= 1e-12);

    auto mixed = growth_lambda_sigma(lin1, sl, 1.0, 1.0, n);
    CHECK(mixed.vector_route ==
          doctest::Approx(mixed.scalar_route).epsilon(1e-10));
  }

  CHECK(growth_lambda_sigma_sweep(lin1, sl, 1.0, 1.0, 30).verdict == Verdict::Growing);
  CHECK(growth_lambda_sigma_sweep(lin1, lin2, 2.0, 1.0, 30).verdict == Verdict::Bounded);
}

TEST_CASE("conjugation") {
  auto pp = FuncDescriptor::power_phase(1.3);
  auto ppc = conjugate_map(pp);
  auto ppm = FuncDescriptor::power_phase(-1.3);
  for (double t : {0.5, 1.0, 7.0, 1e6})
    CHECK(std::abs(ppc.eval(t) - ppm.eval(t)) < 1e-12 * std::max(1.0, t));

  auto real_map = FuncDescriptor::sin_log(0.1, 1.0);
  for (double t : {0.5, 3.0}) CHECK(conjugate_map(real_map).eval(t) == real_map.eval(t));

  auto z = FuncDescriptor::complex_combine(FuncDescriptor::linear(1.0),
                                           FuncDescriptor::sin_plain());
  for (double t : {0.5, 2.0, 50.0})
    CHECK(std::abs(conjugate_map(z).eval(t) - std::conj(z.eval(t))) < 1e-14 * (1.0 + t));

  std::mt19937_64 rng(9);
  auto x = random_vec(rng, 32);
  const auto lhs = omega(conjugate_map(pp), x);
  const auto rhs = omega(pp, x.conjugated()).conjugated();
  CHECK((lhs - rhs).norm2() <= 1e-12 * std::max(1.0, rhs.norm2()));
}

TEST_CASE("basis vectors") {
  auto pp = FuncDescriptor::power_phase(0.4);
  for (Index n : {1, 5, 100}) {
    CHECK(quasinorm(pp, basis_vector(BasisKind::Twisted, n)) == doctest::Approx(1.0));
    CHECK(quasinorm(pp, basis_vector(BasisKind::Base, n)) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(basis_vector(BasisKind::Base, 0), std::invalid_argument);
  CHECK(f_vector(9).norm2() == doctest::Approx(3.0));
}

TEST_CASE("coordinatewise omega bound") {
  std::mt19937_64 rng(77);
  std::vector<FuncDescriptor> fs = {FuncDescriptor::linear(1.0),
                                    FuncDescriptor::sin_log(0.1, 1.0),
                                    FuncDescriptor::power_phase(1.0)};
  for (const auto& phi : fs) {
    REQUIRE(phi.lipschitz_upper().has_value());
    const double cap = *phi.lipschitz_upper() / std::exp(1.0);
    for (int i = 0; i < 200; ++i) {
      auto x = random_vec(rng, 48);
      CHECK(omega(phi, x).sup_norm() <= cap * x.norm2());
    }
  }
}
