#pragma once

#include <cstdint>

#include "twistlab/func.hpp"
#include "twistlab/grid.hpp"
#include "twistlab/sparse.hpp"

namespace twistlab {

/// The quasi-linear map: omega(phi, x)_n = x_n * phi(log(||x||_2 / |x_n|)).
/// The ratio is evaluated as log(norm/|x_n|) rather than -log(|x_n|/norm);
/// coordinates with |x_n|/||x||_2 below 1e-300 contribute 0.
SparseVec omega(const FuncDescriptor& phi, const SparseVec& x);

/// ||(y, x)||_phi = ||y - omega(phi, x)||_2 + ||x||_2.
double quasinorm(const FuncDescriptor& phi, const TwistedVec& v);

/// ||omega(x+y) - omega(x) - omega(y)||_2 / (||x||_2 + ||y||_2).
double quasilinearity_defect(const FuncDescriptor& phi, const SparseVec& x, const SparseVec& y);

struct SamplerConfig {
  int samples = 10000;
  Index dim_max = 128;
  std::uint64_t seed = 42;
  bool complex_entries = true;
};

struct SampledConstant {
  double value;   // max over samples
  int samples;
};

/// Max over random nonzero pairs of ||u+v||_phi / (||u||_phi + ||v||_phi).
SampledConstant quasinorm_triangle_constant(const FuncDescriptor& phi, const SamplerConfig& cfg);

/// Max over random pairs of the quasi-linearity defect.
SampledConstant quasilinearity_constant(const FuncDescriptor& phi, const SamplerConfig& cfg);

/// With u = (a, b) in Z(phi) and v = (c, d) in Z(-phi): <b, c> + <a, d>.
/// Bilinear by default; sesquilinear pairs with conjugated u components.
cplx duality_pairing(const TwistedVec& u, const TwistedVec& v, bool sesquilinear = false);

TwistedVec matrix_apply(const Matrix2& m, const TwistedVec& v);

/// ||M(n^{-1/2}(f_n, 0))||_psi.  Materializes f_n for n <= 2^20 and uses the
/// closed form |lam - eta*psi(log sqrt n)| + |eta| beyond that (the two
/// coincide exactly since omega is constant on f_n).
double growth_eta(const FuncDescriptor& psi, const Matrix2& m, Index n);

struct DualRouteValue {
  double vector_route;
  double scalar_route;
};

/// n^{-1/2} ||lam*omega_phi(f_n) - sigma*omega_psi(f_n)||_2, computed both as
/// a vector norm and as the scalar |lam*phi(log sqrt n) - sigma*psi(log sqrt n)|.
/// The vector route is materialized for n <= 2^20.
DualRouteValue growth_lambda_sigma(const FuncDescriptor& phi, const FuncDescriptor& psi,
                                   cplx lam, cplx sigma, Index n);

/// Dyadic-n sweeps of the two growth quantities, classified on the
/// log n scale (polylog classifier: values grow like log n, not like n).
GrowthReport growth_eta_sweep(const FuncDescriptor& psi, const Matrix2& m, int max_exp = 30,
                              const GrowthConfig& cfg = {});
GrowthReport growth_lambda_sigma_sweep(const FuncDescriptor& phi, const FuncDescriptor& psi,
                                       cplx lam, cplx sigma, int max_exp = 30,
                                       const GrowthConfig& cfg = {});

/// conjugate_map(phi)(t) = conj(phi(t)); conjugate_vec conjugates both parts.
FuncDescriptor conjugate_map(const FuncDescriptor& phi);
TwistedVec conjugate_vec(const TwistedVec& v);

enum class BasisKind { Twisted, Base };

/// (e_n, 0) for Twisted, (0, e_n) for Base.
TwistedVec basis_vector(BasisKind kind, Index n);
SparseVec f_vector(Index n);

}  // namespace twistlab
