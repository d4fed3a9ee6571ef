#include "twistlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twistlab/twist.hpp"

namespace twistlab {

nlohmann::json ClassReport::to_json() const {
  return {{"map_name", map_name},
          {"in_L_bi", in_L_bi},
          {"in_L_bis", in_L_bis},
          {"in_L_bid", in_L_bid},
          {"evidence",
           {{"lipschitz_lower", lipschitz_estimates.first},
            {"lipschitz_upper", lipschitz_estimates.second},
            {"d2_tail_max", d2_tail_max},
            {"bid_max_delta", bid.max_delta},
            {"bid_arg_n", bid.arg_n},
            {"bid_arg_m", bid.arg_m}}},
          {"config",
           {{"eps_bi", config.eps_bi},
            {"eps_bis", config.eps_bis},
            {"bid_floor", config.bid_floor},
            {"bid_max_exp", config.bid_max_exp}}}};
}

ClassReport class_report(const FuncDescriptor& phi, const ClassifyConfig& cfg) {
  ClassReport rep;
  rep.map_name = phi.name();
  rep.config = cfg;
  rep.lipschitz_estimates = lipschitz_bounds(phi, cfg.grid);
  rep.in_L_bi = rep.lipschitz_estimates.first > cfg.eps_bi;
  if (phi.has_d2()) {
    auto tail = in_L_bis(phi, cfg.grid, cfg.eps_bis);
    rep.d2_tail_max = tail.window_maxima.back().second;
    rep.in_L_bis = tail.verdict;
  }
  rep.bid = bid_grid_sweep(phi, cfg.bid_max_exp);
  rep.in_L_bid = rep.bid.max_delta > cfg.bid_floor;
  return rep;
}

std::vector<SparseVec> canonical_L(const FuncDescriptor& phi, const BlockBasis& basis) {
  std::vector<SparseVec> images;
  images.reserve(basis.size());
  for (const auto& u : basis.blocks()) {
    std::vector<SparseVec::Entry> entries;
    for (const auto& [k, uk] : u.entries()) {
      const cplx w = phi.eval(std::max(0.0, std::log(1.0 / std::abs(uk)))) * uk;
      if (w != cplx{0.0, 0.0}) entries.emplace_back(k, w);
    }
    images.push_back(SparseVec::from_entries(std::move(entries)));
  }
  return images;
}

double selfsim_defect(const FuncDescriptor& phi, const BlockBasis& basis, const SparseVec& x) {
  if (x.empty()) throw std::invalid_argument("selfsim_defect requires x != 0");
  if (x.entries().back().first > static_cast<Index>(basis.size()))
    throw std::out_of_range("selfsim_defect: support exceeds basis length");

  auto transport = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [n, vn] : v.entries())
      out = out + basis.blocks()[static_cast<size_t>(n - 1)].scaled(vn);
    return out;
  };

  const SparseVec tu_omega = transport(omega(phi, x));
  const SparseVec omega_tu = omega(phi, transport(x));

  SparseVec lx;
  const auto images = canonical_L(phi, basis);
  for (const auto& [n, xn] : x.entries())
    lx = lx + images[static_cast<size_t>(n - 1)].scaled(xn);

  return (tu_omega - omega_tu + lx).norm2() / x.norm2();
}

double uniform_block_defect(const FuncDescriptor& phi, Index N, Index M) {
  if (N < 1 || M < 1) throw std::invalid_argument("uniform_block_defect requires N, M >= 1");
  const double ln = 0.5 * std::log(static_cast<double>(N));
  const double lm = 0.5 * std::log(static_cast<double>(M));
  return std::abs(phi.eval(lm) + phi.eval(ln) - phi.eval(lm + ln));
}

std::string to_string(SelfSimVerdict v) {
  switch (v) {
    case SelfSimVerdict::KaltonPeckLike: return "KaltonPeckLike";
    case SelfSimVerdict::NotKaltonPeck: return "NotKaltonPeck";
    case SelfSimVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

nlohmann::json SelfSimReport::to_json() const {
  return {{"map_name", map_name},
          {"verdict", to_string(verdict)},
          {"evidence",
           {{"defect_max", defect_max},
            {"defect_matrix", defect_matrix},
            {"defect_diagonal", defect_diagonal.to_json()},
            {"additivity", additivity.to_json()},
            {"hyers_c", {hyers_c.real(), hyers_c.imag()}},
            {"hyers_residual", hyers_residual.to_json()}}},
          {"config",
           {{"defect_max_exp", config.defect_max_exp}, {"defect_cap", config.defect_cap}}}};
}

SelfSimReport kalton_peck_detector(const FuncDescriptor& phi, const DetectorConfig& cfg) {
  SelfSimReport rep;
  rep.map_name = phi.name();
  rep.config = cfg;

  for (int i = 1; i <= cfg.defect_max_exp; ++i) {
    std::vector<double> row;
    for (int j = 1; j <= cfg.defect_max_exp; ++j) {
      const double d = uniform_block_defect(phi, Index{1} << i, Index{1} << j);
      row.push_back(d);
      rep.defect_max = std::max(rep.defect_max, d);
    }
    rep.defect_matrix.push_back(std::move(row));
  }
  std::vector<std::pair<int, double>> diag;
  for (int k = 1; k <= cfg.defect_max_exp; ++k)
    diag.emplace_back(k, rep.defect_matrix[k - 1][k - 1]);
  rep.defect_diagonal = classify_growth_polylog(std::move(diag), cfg.growth);

  rep.additivity = additivity_defect(phi, cfg.grid, cfg.growth);
  auto hy = hyers_linearize(phi, cfg.grid, cfg.growth);
  rep.hyers_c = hy.c;
  rep.hyers_residual = hy.residual;

  if (rep.hyers_residual.verdict == Verdict::Growing ||
      rep.defect_diagonal.verdict == Verdict::Growing)
    rep.verdict = SelfSimVerdict::NotKaltonPeck;
  else if (rep.hyers_residual.verdict == Verdict::Bounded && rep.defect_max <= cfg.defect_cap)
    rep.verdict = SelfSimVerdict::KaltonPeckLike;
  else
    rep.verdict = SelfSimVerdict::Inconclusive;
  return rep;
}

nlohmann::json IncomparabilityReport::to_json() const {
  return {{"phi", phi_report.to_json()},
          {"psi", psi_report.to_json()},
          {"projective",
           {{"a_best", {projective.a_best.real(), projective.a_best.imag()}},
            {"report", projective.report.to_json()}}},
          {"lambda_sigma_sweep", lambda_sigma_sweep.to_json()},
          {"hypotheses",
           {{"phi_in_L_bid", phi_in_bid_supported},
            {"psi_in_L_bis", psi_in_bis_supported},
            {"not_projectively_equivalent", not_projectively_equivalent},
            {"growth_supported", growth_supported},
            {"all_supported", all_hypotheses_supported}}}};
}

IncomparabilityReport incomparability_evidence(const FuncDescriptor& phi,
                                               const FuncDescriptor& psi,
                                               const ClassifyConfig& cfg) {
  IncomparabilityReport rep;
  rep.phi_report = class_report(phi, cfg);
  rep.psi_report = class_report(psi, cfg);
  rep.projective = projective_equivalence_test(phi, psi, cfg.grid, {-10.0, 10.0}, cfg.growth);
  rep.lambda_sigma_sweep =
      growth_lambda_sigma_sweep(phi, psi, 1.0, 1.0, 30, cfg.growth);

  rep.phi_in_bid_supported = rep.phi_report.in_L_bid;
  rep.psi_in_bis_supported = rep.psi_report.in_L_bis;
  rep.not_projectively_equivalent = rep.projective.report.verdict == Verdict::Growing;
  rep.growth_supported = rep.lambda_sigma_sweep.verdict == Verdict::Growing;
  rep.all_hypotheses_supported = rep.phi_in_bid_supported && rep.psi_in_bis_supported &&
                                 rep.not_projectively_equivalent && rep.growth_supported;
  return rep;
}

}  // namespace twistlab
