#pragma once

#include <string>
#include <vector>

#include "twistlab/analysis.hpp"
#include "twistlab/blocks.hpp"
#include "twistlab/func.hpp"
#include "twistlab/grid.hpp"
#include "twistlab/sparse.hpp"

namespace twistlab {

struct ClassifyConfig {
  LogGrid grid = LogGrid::coarse();
  GrowthConfig growth;
  double eps_bi = 0.01;     // empirical lower Lipschitz bound above this => bi-Lipschitz
  double eps_bis = 1e-3;    // |f''| final-window max below this => vanishing tail
  double bid_floor = 0.01;  // grid max of the bid discrepancy above this => in the class
  int bid_max_exp = 40;     // dyadic n, m up to 2^bid_max_exp
};

/// Class-membership verdicts with the numeric evidence that produced them.
struct ClassReport {
  std::string map_name;
  bool in_L_bi = false;
  bool in_L_bis = false;
  bool in_L_bid = false;
  std::pair<double, double> lipschitz_estimates;  // (lower, upper)
  double d2_tail_max = 0.0;
  BidSweep bid;
  ClassifyConfig config;

  nlohmann::json to_json() const;
};

ClassReport class_report(const FuncDescriptor& phi, const ClassifyConfig& cfg = {});

/// Table of images L'(e_n) = sum_k phi(log(1/|u_n(k)|)) u_n(k) e_k for the
/// canonical linear correction of a block basis.
std::vector<SparseVec> canonical_L(const FuncDescriptor& phi, const BlockBasis& basis);

/// ||T_U(omega x) - omega(T_U x) + L'(x)||_2 / ||x||_2 with T_U(x) = sum x_n u_n.
double selfsim_defect(const FuncDescriptor& phi, const BlockBasis& basis, const SparseVec& x);

/// |phi(log sqrt M) + phi(log sqrt N) - phi(log sqrt(NM))|, the closed-form
/// reduction of the defect on uniform blocks.
double uniform_block_defect(const FuncDescriptor& phi, Index N, Index M);

enum class SelfSimVerdict { KaltonPeckLike, NotKaltonPeck, Inconclusive };

std::string to_string(SelfSimVerdict v);

struct DetectorConfig {
  LogGrid grid = LogGrid::coarse();
  GrowthConfig growth;
  int defect_max_exp = 30;  // dyadic N, M up to 2^defect_max_exp
  double defect_cap = 8.0;  // calibrated against the canonical quartet
};

struct SelfSimReport {
  std::string map_name;
  std::vector<std::vector<double>> defect_matrix;  // dyadic N x dyadic M
  double defect_max = 0.0;
  GrowthReport defect_diagonal;  // uniform_block_defect(2^k, 2^k) over k
  GrowthReport additivity;
  cplx hyers_c;
  GrowthReport hyers_residual;
  SelfSimVerdict verdict = SelfSimVerdict::Inconclusive;
  DetectorConfig config;

  nlohmann::json to_json() const;
};

/// Kalton-Peck detector: KaltonPeckLike needs a Bounded linearization
/// residual and a defect matrix under the cap; NotKaltonPeck needs a Growing
/// residual or a Growing defect diagonal.
SelfSimReport kalton_peck_detector(const FuncDescriptor& phi, const DetectorConfig& cfg = {});

struct IncomparabilityReport {
  ClassReport phi_report;
  ClassReport psi_report;
  ProjectiveResult projective;
  GrowthReport lambda_sigma_sweep;
  bool phi_in_bid_supported = false;
  bool psi_in_bis_supported = false;
  bool not_projectively_equivalent = false;
  bool growth_supported = false;
  bool all_hypotheses_supported = false;

  nlohmann::json to_json() const;
};

/// Bundles the numeric evidence behind the incomparability criterion:
/// phi in L_bid, psi in L_bis, no projective equivalence, and the dyadic
/// growth sweep.
IncomparabilityReport incomparability_evidence(const FuncDescriptor& phi,
                                               const FuncDescriptor& psi,
                                               const ClassifyConfig& cfg = {});

}  // namespace twistlab
