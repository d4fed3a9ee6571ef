#include "twistlab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace twistlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

// Fractional part of k*b via an exact double-double product (Dekker split):
// the absolute reduction error stays at the 1e-16 level for k up to 1e7.
double frac_product(std::int64_t k, double b) {
  const double kd = static_cast<double>(k);
  const double p = kd * b;
  const double e = std::fma(kd, b, -p);  // exact low part of the product
  double f = std::fmod(p, 1.0) + std::fmod(e, 1.0);
  f -= std::floor(f);
  if (f >= 1.0) f -= 1.0;
  return f;
}

double torus_dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    d = std::min(d, 1.0 - d);
    acc += d * d;
  }
  return acc;
}

// Cyclic Jacobi eigenvalues of a small symmetric matrix (row-major).
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = a[r * n + p], arq = a[r * n + q];
          a[r * n + p] = c * arp - s * arq;
          a[r * n + q] = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = a[p * n + r], aqr = a[q * n + r];
          a[p * n + r] = c * apr - s * aqr;
          a[q * n + r] = s * apr + c * aqr;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.rbegin(), eig.rend());
  return eig;
}

}  // namespace

void ConeSpec::validate() const {
  if (triples.empty()) throw std::invalid_argument("ConeSpec requires at least one triple");
  std::set<double> betas;
  for (const auto& t : triples) {
    if (!(t.lambda > 0.0)) throw std::invalid_argument("ConeSpec lambda must be > 0");
    if (!(t.alpha > 0.0)) throw std::invalid_argument("ConeSpec alpha must be > 0");
    if (!(t.beta > 0.0 && t.beta < 1.0))
      throw std::invalid_argument("ConeSpec beta must lie in (0, 1)");
    if (!betas.insert(t.beta).second)
      throw std::invalid_argument("ConeSpec betas must be pairwise distinct");
  }
  if (!(max_alpha() * (1.0 + 2.0 * kPi * max_beta() * kLog2) < 1.0))
    throw std::invalid_argument(
        "ConeSpec violates alpha*(1 + 2*pi*beta*log 2) < 1 (alpha, beta the maxima)");
}

double ConeSpec::max_alpha() const {
  double m = 0.0;
  for (const auto& t : triples) m = std::max(m, t.alpha);
  return m;
}

double ConeSpec::max_beta() const {
  double m = 0.0;
  for (const auto& t : triples) m = std::max(m, t.beta);
  return m;
}

double ConeSpec::lambda_sum() const {
  double s = 0.0;
  for (const auto& t : triples) s += t.lambda;
  return s;
}

double ConeSpec::lower_lipschitz_bound() const {
  return lambda_sum() * (1.0 - max_alpha() * (1.0 + 2.0 * kPi * max_beta() * kLog2));
}

ConeSpec ConeSpec::merge(const ConeSpec& a, const ConeSpec& b) {
  ConeSpec out;
  out.triples = a.triples;
  out.triples.insert(out.triples.end(), b.triples.begin(), b.triples.end());
  out.validate();
  return out;
}

FuncDescriptor make_sinlog(double alpha, double beta) {
  FuncDescriptor f = FuncDescriptor::sin_log(alpha, beta);
  // |sin| and |cos| bounded by M = 1.
  f.set_bi_lipschitz(alpha < 1.0 / (1.0 + beta));
  return f;
}

FuncDescriptor cone_element(const ConeSpec& spec) {
  spec.validate();
  std::vector<FuncDescriptor> parts;
  for (const auto& t : spec.triples)
    parts.push_back(FuncDescriptor::scale(t.lambda, make_sinlog(t.alpha, ConeSpec::beta_hat(t.beta))));
  FuncDescriptor h = spec.triples.size() == 1 ? parts[0] : FuncDescriptor::sum(parts);
  h.attach_lipschitz_lower(spec.lower_lipschitz_bound());
  h.set_bi_lipschitz(true);
  return h;
}

KroneckerOrbit kronecker_orbit(const std::vector<double>& betas, std::int64_t K) {
  if (betas.empty()) throw std::invalid_argument("kronecker_orbit requires nonempty betas");
  if (K < 1) throw std::invalid_argument("kronecker_orbit requires K >= 1");
  KroneckerOrbit orbit;
  orbit.betas = betas;
  orbit.K = K;
  orbit.points.reserve(static_cast<size_t>(K));
  for (std::int64_t k = 1; k <= K; ++k) {
    std::vector<double> pt(betas.size());
    for (size_t i = 0; i < betas.size(); ++i) pt[i] = frac_product(k, betas[i]);
    orbit.points.push_back(std::move(pt));
  }
  return orbit;
}

double covering_radius(const KroneckerOrbit& orbit) {
  if (orbit.points.empty()) throw std::invalid_argument("covering_radius: empty orbit");
  const int n = static_cast<int>(orbit.betas.size());
  if (n > 3) throw std::invalid_argument("covering_radius: lattice capped at n <= 3");
  constexpr int R = 64;

  // Bucket orbit points into the R^n cell grid.
  int cells = 1;
  for (int i = 0; i < n; ++i) cells *= R;
  std::vector<std::vector<const std::vector<double>*>> buckets(cells);
  auto cell_of = [&](const std::vector<double>& p) {
    int id = 0;
    for (int i = 0; i < n; ++i) {
      int c = static_cast<int>(p[i] * R);
      c = std::min(c, R - 1);
      id = id * R + c;
    }
    return id;
  };
  for (const auto& p : orbit.points) buckets[cell_of(p)].push_back(&p);

  double worst2 = 0.0;
  std::vector<double> q(n);
  std::vector<int> base(n), cur(n);
  int lattice = cells;
  for (int li = 0; li < lattice; ++li) {
    int rem = li;
    for (int i = n - 1; i >= 0; --i) {
      base[i] = rem % R;
      rem /= R;
      q[i] = static_cast<double>(base[i]) / R;
    }
    double best2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < R / 2 + 1; ++ring) {
      const double ring_lb = ring > 0 ? (ring - 1) * (1.0 / R) : 0.0;
      if (ring_lb * ring_lb > best2) break;
      // Visit all cells with Chebyshev ring distance == ring.
      std::vector<int> offs;
      for (int d = -ring; d <= ring; ++d) offs.push_back(d);
      std::function<void(int, bool)> rec = [&](int dim, bool on_shell) {
        if (dim == n) {
          if (ring > 0 && !on_shell) return;
          int id = 0;
          for (int i = 0; i < n; ++i) id = id * R + ((cur[i] % R) + R) % R;
          for (const auto* p : buckets[id]) best2 = std::min(best2, torus_dist2(q, *p));
          return;
        }
        for (int d : offs) {
          cur[dim] = base[dim] + d;
          rec(dim + 1, on_shell || std::abs(d) == ring);
        }
      };
      rec(0, false);
      if (best2 < std::numeric_limits<double>::infinity() &&
          ring * (1.0 / R) * ring * (1.0 / R) > best2 && ring > 0)
        break;
    }
    worst2 = std::max(worst2, best2);
  }
  return std::sqrt(worst2);
}

double discrepancy_estimate(const KroneckerOrbit& orbit) {
  if (orbit.points.empty()) throw std::invalid_argument("discrepancy_estimate: empty orbit");
  const int n = static_cast<int>(orbit.betas.size());
  if (n > 3) throw std::invalid_argument("discrepancy_estimate: capped at n <= 3");
  constexpr int R = 64;
  int cells = 1;
  for (int i = 0; i < n; ++i) cells *= R;
  std::vector<double> hist(cells, 0.0);
  for (const auto& p : orbit.points) {
    int id = 0;
    for (int i = 0; i < n; ++i) {
      int c = static_cast<int>(p[i] * R);
      c = std::min(c, R - 1);
      id = id * R + c;
    }
    hist[id] += 1.0;
  }
  // Prefix sums along each axis turn hist[c] into counts of boxes [0, c+1).
  std::vector<double> pref = hist;
  int stride = 1;
  for (int axis = n - 1; axis >= 0; --axis) {
    for (int id = 0; id < cells; ++id) {
      const int coord = (id / stride) % R;
      if (coord > 0) pref[id] += pref[id - stride];
    }
    stride *= R;
  }
  const double K = static_cast<double>(orbit.K);
  double worst = 0.0;
  for (int id = 0; id < cells; ++id) {
    double vol = 1.0;
    int rem = id;
    for (int i = n - 1; i >= 0; --i) {
      vol *= static_cast<double>((rem % R) + 1) / R;
      rem /= R;
    }
    worst = std::max(worst, std::abs(pref[id] / K - vol));
  }
  return worst;
}

std::optional<std::int64_t> find_sign_pattern(const std::vector<double>& betas,
                                              const std::vector<int>& signs, double threshold,
                                              std::int64_t K_max) {
  if (betas.size() != signs.size())
    throw std::invalid_argument("find_sign_pattern: betas and signs differ in length");
  if (!(threshold > 0.0))
    throw std::invalid_argument("find_sign_pattern: threshold must be positive");
  // threshold >= 1 is allowed and always yields NotFound (|sin| <= 1)
  std::vector<double> scaled(betas.size());
  for (size_t i = 0; i < betas.size(); ++i) scaled[i] = betas[i] * kLog2;
  for (std::int64_t k = 1; k <= K_max; ++k) {
    bool ok = true;
    for (size_t i = 0; i < scaled.size(); ++i) {
      const double s = std::sin(2.0 * kPi * frac_product(k, scaled[i]));
      if (signs[i] * s <= threshold) {
        ok = false;
        break;
      }
    }
    if (ok) return k;
  }
  return std::nullopt;
}

TrigIdentityValues trig_identity_check(double beta_prime, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("trig_identity_check requires n >= 0");
  const double gamma = ConeSpec::gamma;
  const double beta = -2.0 * kPi * beta_prime * gamma;
  const double y = -static_cast<double>(n) * gamma;
  const double lhs = 2.0 * std::sin(beta * y) - std::sin(beta * (gamma + y));
  const double a = 2.0 - std::cos(beta * gamma);
  const double b = -std::sin(beta * gamma);
  const double theta = 2.0 * kPi * beta_prime * gamma * gamma * static_cast<double>(n);
  const double rhs = a * std::sin(theta) + b * std::cos(theta);
  return {lhs, rhs};
}

GramRankResult independence_gram_rank(const std::vector<FuncDescriptor>& elements,
                                      const LogGrid& grid) {
  if (elements.empty()) throw std::invalid_argument("independence_gram_rank: no elements");
  grid.validate();
  const auto ts = grid.all_samples();
  if (ts.size() < elements.size())
    throw std::invalid_argument("independence_gram_rank: grid too small for element count");
  const int p = static_cast<int>(elements.size());

  // Sample (h(t) - c_lin*t)/t; the common linear part would otherwise make
  // every generator nearly parallel to t.
  std::vector<std::vector<double>> cols(p);
  for (int e = 0; e < p; ++e) {
    const cplx c_lin = elements[e].linear_coefficient();
    auto& col = cols[e];
    col.reserve(2 * ts.size());
    for (double t : ts) {
      const cplx r = (elements[e].eval(t) - c_lin * t) / t;
      col.push_back(r.real());
      col.push_back(r.imag());
    }
    double nrm = 0.0;
    for (double v : col) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm > 0.0)
      for (double& v : col) v /= nrm;
  }

  std::vector<double> gram(p * p, 0.0);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      double acc = 0.0;
      for (size_t s = 0; s < cols[i].size(); ++s) acc += cols[i][s] * cols[j][s];
      gram[i * p + j] = gram[j * p + i] = acc;
    }
  }
  auto eig = jacobi_eigenvalues(gram, p);

  GramRankResult out;
  for (double e : eig) out.singular_values.push_back(std::sqrt(std::max(e, 0.0)));
  const double top = out.singular_values.front();
  out.rank = 0;
  for (double s : out.singular_values)
    if (s > 1e-8 * std::max(top, 1e-300)) ++out.rank;
  out.min_singular_value = out.singular_values.back();
  out.independent = out.rank == p;
  return out;
}

double frac_sqrt(std::int64_t p) {
  const double s = std::sqrt(static_cast<double>(p));
  return s - std::floor(s);
}

}  // namespace twistlab
