// Experiment harness: every library module behind one subcommand each, with
// deterministic JSON/CSV/plotdata artifacts.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistlab/analysis.hpp"
#include "twistlab/blocks.hpp"
#include "twistlab/classify.hpp"
#include "twistlab/cone.hpp"
#include "twistlab/twist.hpp"

namespace {

using nlohmann::json;
using namespace twistlab;

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInconclusive = 3;

struct Common {
  std::string out = "-";
  std::string format = "json";
  std::uint64_t seed = 42;
  bool strict = false;
};

struct Artifact {
  json report;
  std::vector<std::string> columns;           // csv/plotdata header
  std::vector<std::vector<double>> rows;      // csv/plotdata body
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int thread_cap() {
  if (const char* env = std::getenv("TWISTLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

FuncDescriptor load_descriptor(const std::string& path) {
  try {
    return FuncDescriptor::from_json(load_json(path));
  } catch (const std::exception& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw std::runtime_error(path + ": " + msg);
  }
}

double parse_beta(const std::string& tok) {
  if (tok.rfind("sqrt", 0) == 0) {
    const long long p = std::stoll(tok.substr(4));
    return frac_sqrt(p);
  }
  return std::stod(tok);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

LogGrid pick_grid(const std::string& name) {
  if (name == "standard") return LogGrid::standard();
  if (name == "coarse") return LogGrid::coarse();
  throw std::runtime_error("unknown grid '" + name + "' (coarse|standard)");
}

void write_artifact(const Common& common, const std::string& experiment,
                    const json& config, Artifact art) {
  json meta = {{"tool_version", kToolVersion},
               {"experiment", experiment},
               {"seed", common.seed},
               {"threads", thread_cap()},
               {"config", config},
               {"config_hash", fnv1a(config.dump())}};
  art.report["meta"] = std::move(meta);

  std::ostringstream body;
  if (common.format == "json") {
    body << art.report.dump(2) << '\n';
  } else {
    const char sep = common.format == "csv" ? ',' : ' ';
    body << "# tool_version=" << kToolVersion << " experiment=" << experiment
         << " seed=" << common.seed << " config_hash=" << fnv1a(config.dump()) << '\n';
    body << "# ";
    for (size_t i = 0; i < art.columns.size(); ++i)
      body << (i ? std::string(1, sep) : "") << art.columns[i];
    body << '\n';
    body.precision(17);
    for (const auto& row : art.rows) {
      for (size_t i = 0; i < row.size(); ++i) body << (i ? std::string(1, sep) : "") << row[i];
      body << '\n';
    }
  }

  if (common.out == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(common.out, std::ios::binary);
    if (!out) throw std::runtime_error(common.out + ": cannot write");
    out << body.str();
  }
}

json growth_to_json(const GrowthReport& r) { return r.to_json(); }

bool inconclusive(const GrowthReport& r) { return r.verdict == Verdict::Inconclusive; }

// ---- subcommand payloads ----------------------------------------------------

struct EvalOpts {
  std::string func;
  std::string ts;
  bool derivs = false;
};

int run_eval(const Common& common, const EvalOpts& o) {
  auto f = load_descriptor(o.func);
  Artifact art;
  art.columns = {"t", "re", "im"};
  json values = json::array();
  for (const auto& tok : split(o.ts, ',')) {
    const double t = std::stod(tok);
    const cplx v = f.eval(t);
    json entry = {{"t", t}, {"value", {v.real(), v.imag()}}};
    if (o.derivs && f.has_d1() && t > 0.0) {
      const cplx d1 = f.eval_d1(t);
      entry["d1"] = {d1.real(), d1.imag()};
    }
    if (o.derivs && f.has_d2() && t > 0.0) {
      const cplx d2 = f.eval_d2(t);
      entry["d2"] = {d2.real(), d2.imag()};
    }
    values.push_back(std::move(entry));
    art.rows.push_back({t, v.real(), v.imag()});
  }
  art.report = {{"map", f.name()}, {"values", std::move(values)}};
  write_artifact(common, "sec2-eval",
                 {{"func", o.func}, {"t", o.ts}, {"derivs", o.derivs}}, std::move(art));
  return kExitOk;
}

struct ConstantsOpts {
  std::string func;
  int samples = 10000;
  Index dim = 128;
};

int run_constants(const Common& common, const ConstantsOpts& o) {
  auto f = load_descriptor(o.func);
  SamplerConfig cfg{o.samples, o.dim, common.seed, true};
  auto ql = quasilinearity_constant(f, cfg);
  auto tc = quasinorm_triangle_constant(f, cfg);
  Artifact art;
  art.columns = {"samples", "quasilinearity_max", "triangle_max"};
  art.rows.push_back({double(ql.samples), ql.value, tc.value});
  art.report = {{"map", f.name()},
                {"quasilinearity", {{"max", ql.value}, {"samples", ql.samples}}},
                {"triangle", {{"max", tc.value}, {"samples", tc.samples}}}};
  write_artifact(common, "sec2-constants",
                 {{"func", o.func}, {"samples", o.samples}, {"dim", o.dim},
                  {"seed", common.seed}},
                 std::move(art));
  return kExitOk;
}

struct EquivOpts {
  std::string f, g;
  std::string grid = "coarse";
  bool projective = false;
};

int run_equiv(const Common& common, const EquivOpts& o) {
  auto f = load_descriptor(o.f);
  auto g = load_descriptor(o.g);
  const auto grid = pick_grid(o.grid);
  Artifact art;
  art.columns = {"window", "max"};
  GrowthReport rep;
  json extra;
  if (o.projective) {
    auto pr = projective_equivalence_test(f, g, grid);
    rep = pr.report;
    extra = {{"a_best", {pr.a_best.real(), pr.a_best.imag()}}};
  } else {
    rep = equivalence_test(f, g, grid);
  }
  for (const auto& [k, m] : rep.window_maxima) art.rows.push_back({double(k), m});
  art.report = {{"f", f.name()}, {"g", g.name()}, {"report", growth_to_json(rep)}};
  if (!extra.is_null()) art.report["projective"] = extra;
  write_artifact(common, o.projective ? "sec4-projective" : "sec2-equivalence",
                 {{"f", o.f}, {"g", o.g}, {"grid", o.grid}, {"projective", o.projective}},
                 std::move(art));
  if (common.strict && inconclusive(rep)) return kExitInconclusive;
  return kExitOk;
}

struct ConeOpts {
  std::string betas = "sqrt2,sqrt3,sqrt5";
  double alpha = 0.1;
  double lambda = 1.0;
};

int run_cone(const Common& common, const ConeOpts& o) {
  ConeSpec spec;
  std::vector<FuncDescriptor> gens;
  for (const auto& tok : split(o.betas, ',')) {
    const double b = parse_beta(tok);
    spec.triples.push_back({o.lambda, o.alpha, b});
    gens.push_back(make_sinlog(o.alpha, ConeSpec::beta_hat(b)));
  }
  spec.validate();
  auto h = cone_element(spec);
  const auto grid = LogGrid::coarse();
  auto [lo, hi] = lipschitz_bounds(h, grid);
  auto bis = in_L_bis(h, grid);
  auto gram = independence_gram_rank(gens, LogGrid::coarse(32));

  Artifact art;
  art.columns = {"index", "singular_value"};
  for (size_t i = 0; i < gram.singular_values.size(); ++i)
    art.rows.push_back({double(i), gram.singular_values[i]});
  art.report = {{"element", h.name()},
                {"analytic_lower_bound", spec.lower_lipschitz_bound()},
                {"empirical_lipschitz", {lo, hi}},
                {"in_L_bis", bis.verdict},
                {"gram",
                 {{"rank", gram.rank},
                  {"min_singular_value", gram.min_singular_value},
                  {"independent", gram.independent}}}};
  write_artifact(common, "sec5-coneability",
                 {{"betas", o.betas}, {"alpha", o.alpha}, {"lambda", o.lambda}},
                 std::move(art));
  if (common.strict && !gram.independent) return kExitInconclusive;
  return kExitOk;
}

struct KroneckerOpts {
  std::string betas = "sqrt2,sqrt3";
  std::int64_t K = 100000;
  std::string pattern;
  double threshold = 0.5;
  std::int64_t Kmax = 1000000;
};

int run_kronecker(const Common& common, const KroneckerOpts& o) {
  std::vector<double> betas;
  for (const auto& tok : split(o.betas, ',')) betas.push_back(parse_beta(tok));
  auto orbit = kronecker_orbit(betas, o.K);
  Artifact art;
  art.columns = {"k"};
  for (size_t i = 0; i < betas.size(); ++i) art.columns.push_back("b" + std::to_string(i + 1));
  for (std::int64_t k = 0; k < o.K; ++k) {
    std::vector<double> row{double(k + 1)};
    row.insert(row.end(), orbit.points[size_t(k)].begin(), orbit.points[size_t(k)].end());
    art.rows.push_back(std::move(row));
  }
  art.report = {{"betas", betas},
                {"K", o.K},
                {"covering_radius", covering_radius(orbit)},
                {"discrepancy", discrepancy_estimate(orbit)}};

  bool pattern_missing = false;
  if (!o.pattern.empty()) {
    std::vector<int> signs;
    for (const auto& tok : split(o.pattern, ','))
      signs.push_back(tok == "-" ? -1 : 1);
    auto k = find_sign_pattern(betas, signs, o.threshold, o.Kmax);
    json pj = {{"signs", signs}, {"threshold", o.threshold}, {"K_max", o.Kmax}};
    if (k) {
      pj["k"] = *k;
      json sines = json::array();
      const double two_pi = 2.0 * std::acos(-1.0);
      for (double b : betas)
        sines.push_back(std::sin(two_pi * double(*k) * b * std::log(2.0)));
      pj["sines"] = std::move(sines);
    } else {
      pj["k"] = nullptr;
      pattern_missing = true;
    }
    art.report["pattern"] = std::move(pj);
  }
  write_artifact(common, "sec5-kronecker",
                 {{"betas", o.betas},
                  {"K", o.K},
                  {"pattern", o.pattern},
                  {"threshold", o.threshold},
                  {"Kmax", o.Kmax}},
                 std::move(art));
  if (common.strict && pattern_missing) return kExitInconclusive;
  return kExitOk;
}

struct BlocksOpts {
  std::string func;
  std::string widths = "1,4,8";
  Index blocks = 24;
  int samples = 1000;
  Index lux_dim = 64;
};

int run_blocks(const Common& common, const BlocksOpts& o) {
  auto f = load_descriptor(o.func);
  Artifact art;
  art.columns = {"width", "lo", "hi"};
  json bands = json::array();
  for (const auto& tok : split(o.widths, ',')) {
    const Index w = std::stoll(tok);
    auto basis = w == 1 ? BlockBasis::singletons(o.blocks) : BlockBasis::uniform(o.blocks, w);
    auto band = block_norm_vs_kp(f, basis, {o.samples, common.seed, true});
    bands.push_back({{"width", w}, {"lo", band.lo}, {"hi", band.hi},
                     {"samples", band.samples}});
    art.rows.push_back({double(w), band.lo, band.hi});
  }
  auto lux = luxemburg_vs_kp(o.lux_dim, {o.samples, common.seed, true});
  art.report = {{"map", f.name()},
                {"block_vs_kp", std::move(bands)},
                {"luxemburg_vs_kp",
                 {{"lo", lux.lo}, {"hi", lux.hi}, {"samples", lux.samples}}}};
  write_artifact(common, "sec3-blocks",
                 {{"func", o.func},
                  {"widths", o.widths},
                  {"blocks", o.blocks},
                  {"samples", o.samples},
                  {"seed", common.seed}},
                 std::move(art));
  return kExitOk;
}

struct DistinguishOpts {
  std::string f, g;
};

int run_distinguish(const Common& common, const DistinguishOpts& o) {
  auto f = load_descriptor(o.f);
  auto g = load_descriptor(o.g);
  auto rep = incomparability_evidence(f, g);
  Artifact art;
  art.columns = {"window", "max"};
  for (const auto& [k, m] : rep.lambda_sigma_sweep.window_maxima)
    art.rows.push_back({double(k), m});
  art.report = rep.to_json();
  write_artifact(common, "sec4-incomparability", {{"f", o.f}, {"g", o.g}}, std::move(art));
  if (common.strict && (inconclusive(rep.projective.report) ||
                        inconclusive(rep.lambda_sigma_sweep)))
    return kExitInconclusive;
  return kExitOk;
}

struct SelfsimOpts {
  std::string func;
  Index Nmax = 1 << 30;
  Index Mmax = 1 << 30;
};

int run_selfsim(const Common& common, const SelfsimOpts& o) {
  auto f = load_descriptor(o.func);
  DetectorConfig cfg;
  int exp = 0;
  for (Index n = std::max(o.Nmax, o.Mmax); n > 1; n /= 2) ++exp;
  cfg.defect_max_exp = std::max(1, exp);
  auto rep = kalton_peck_detector(f, cfg);
  Artifact art;
  art.columns = {"log2_N", "log2_M", "defect"};
  for (size_t i = 0; i < rep.defect_matrix.size(); ++i)
    for (size_t j = 0; j < rep.defect_matrix[i].size(); ++j)
      art.rows.push_back({double(i + 1), double(j + 1), rep.defect_matrix[i][j]});
  art.report = rep.to_json();
  write_artifact(common, "sec7-selfsim",
                 {{"func", o.func}, {"Nmax", o.Nmax}, {"Mmax", o.Mmax}}, std::move(art));
  if (common.strict && rep.verdict == SelfSimVerdict::Inconclusive)
    return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: numerical laboratory for twisted Hilbert spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Common common;
  app.add_option("--out", common.out, "Output path ('-' for stdout)");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plotdata"}));
  app.add_option("--seed", common.seed, "RNG seed, echoed in every artifact");
  app.add_flag("--strict", common.strict, "Exit 3 on Inconclusive verdicts");

  EvalOpts eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a map descriptor");
  eval_cmd->add_option("--func", eval_opts.func, "Descriptor JSON file")->required();
  eval_cmd->add_option("--t", eval_opts.ts, "Comma-separated sample points")->required();
  eval_cmd->add_flag("--derivs", eval_opts.derivs, "Include derivatives when available");

  ConstantsOpts const_opts;
  auto* const_cmd = app.add_subcommand("constants", "Sampled quasi-norm constants");
  const_cmd->add_option("--func", const_opts.func, "Descriptor JSON file")->required();
  const_cmd->add_option("--samples", const_opts.samples, "Sample count");
  const_cmd->add_option("--dim", const_opts.dim, "Max support dimension");

  EquivOpts equiv_opts;
  auto* equiv_cmd = app.add_subcommand("equiv", "(Projective) equivalence test");
  equiv_cmd->add_option("--f", equiv_opts.f, "First descriptor")->required();
  equiv_cmd->add_option("--g", equiv_opts.g, "Second descriptor")->required();
  equiv_cmd->add_option("--grid", equiv_opts.grid, "coarse|standard");
  equiv_cmd->add_flag("--projective", equiv_opts.projective, "Search a scalar multiple");

  ConeOpts cone_opts;
  auto* cone_cmd = app.add_subcommand("cone", "Cone element + independence evidence");
  cone_cmd->add_option("--betas", cone_opts.betas, "Betas (sqrtN shorthands allowed)");
  cone_cmd->add_option("--alpha", cone_opts.alpha, "Common alpha");
  cone_cmd->add_option("--lambda", cone_opts.lambda, "Common lambda");

  KroneckerOpts kron_opts;
  auto* kron_cmd = app.add_subcommand("kronecker", "Orbit density diagnostics");
  kron_cmd->add_option("--betas", kron_opts.betas, "Betas (sqrtN shorthands allowed)");
  kron_cmd->add_option("--K", kron_opts.K, "Orbit length");
  kron_cmd->add_option("--pattern", kron_opts.pattern, "Sign pattern, e.g. +,-,+");
  kron_cmd->add_option("--threshold", kron_opts.threshold, "Sine threshold in (0,1)");
  kron_cmd->add_option("--Kmax", kron_opts.Kmax, "Pattern search horizon");

  BlocksOpts blocks_opts;
  auto* blocks_cmd = app.add_subcommand("blocks", "Block-sequence norm bands");
  blocks_cmd->add_option("--func", blocks_opts.func, "Descriptor JSON file")->required();
  blocks_cmd->add_option("--widths", blocks_opts.widths, "Block widths");
  blocks_cmd->add_option("--blocks", blocks_opts.blocks, "Block count per basis");
  blocks_cmd->add_option("--samples", blocks_opts.samples, "Samples per band");
  blocks_cmd->add_option("--lux-dim", blocks_opts.lux_dim, "Luxemburg sweep dimension");

  DistinguishOpts dist_opts;
  auto* dist_cmd = app.add_subcommand("distinguish", "Incomparability evidence");
  dist_cmd->add_option("--f", dist_opts.f, "First descriptor")->required();
  dist_cmd->add_option("--g", dist_opts.g, "Second descriptor")->required();

  SelfsimOpts self_opts;
  auto* self_cmd = app.add_subcommand("selfsim", "Kalton-Peck detector");
  self_cmd->add_option("--func", self_opts.func, "Descriptor JSON file")->required();
  self_cmd->add_option("--Nmax", self_opts.Nmax, "Max dyadic N");
  self_cmd->add_option("--Mmax", self_opts.Mmax, "Max dyadic M");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return run_eval(common, eval_opts);
    if (const_cmd->parsed()) return run_constants(common, const_opts);
    if (equiv_cmd->parsed()) return run_equiv(common, equiv_opts);
    if (cone_cmd->parsed()) return run_cone(common, cone_opts);
    if (kron_cmd->parsed()) return run_kronecker(common, kron_opts);
    if (blocks_cmd->parsed()) return run_blocks(common, blocks_opts);
    if (dist_cmd->parsed()) return run_distinguish(common, dist_opts);
    if (self_cmd->parsed()) return run_selfsim(common, self_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
