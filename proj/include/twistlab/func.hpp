#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace twistlab {

using cplx = std::complex<double>;

enum class FuncKind { Linear, SinPlain, SinLog, PowerPhase, Scale, Sum, ComplexCombine };

/// A closed-form Lipschitz map phi on [0, inf) with phi(0) = 0, represented
/// as an expression tree over a small algebra of base families.  Values and
/// (when available) first/second derivatives are evaluated analytically.
///
/// Base families:
///   linear(c)         t -> c*t
///   sin_plain()       t -> sin t            (bounded perturbation)
///   sin_log(a, b)     t -> t + a*t*sin(b*log t),  0 at t = 0
///   power_phase(a)    t -> t^(1+ia) = t*e^(ia*log t),  0 at t = 0
/// Combinators: scale(c, f), sum(fs), complex_combine(re, im) for f + i*g.
class FuncDescriptor {
 public:
  static FuncDescriptor linear(cplx c);
  static FuncDescriptor sin_plain();
  static FuncDescriptor sin_log(double alpha, double beta);
  static FuncDescriptor power_phase(double alpha);
  static FuncDescriptor scale(cplx c, FuncDescriptor child);
  static FuncDescriptor sum(std::vector<FuncDescriptor> children);
  static FuncDescriptor complex_combine(FuncDescriptor re_part, FuncDescriptor im_part);

  /// Exact closed-form value; exactly 0 at t = 0.  Throws on t < 0.
  cplx eval(double t) const;
  /// Analytic first derivative, t > 0.
  cplx eval_d1(double t) const;
  /// Analytic second derivative, t > 0.
  cplx eval_d2(double t) const;

  bool has_d1() const;
  bool has_d2() const;

  /// Declared analytic Lipschitz bounds, when known for the whole tree.
  /// Upper bounds compose through scale and sum; lower bounds only exist
  /// where a construction attaches one.
  std::optional<double> lipschitz_upper() const;
  std::optional<double> lipschitz_lower() const;
  bool bi_lipschitz_flag() const { return bi_lipschitz_; }

  void attach_lipschitz_lower(double b);
  void attach_lipschitz_upper(double a);
  void set_bi_lipschitz(bool v) { bi_lipschitz_ = v; }

  /// Coefficient of the leading linear term t (0 when the family has none).
  cplx linear_coefficient() const;

  /// Pointwise complex conjugate of the map, as a descriptor in the same
  /// algebra: conj(power_phase(a)) = power_phase(-a), etc.
  FuncDescriptor conjugate() const;

  /// True when every node produces real values for real inputs.
  bool is_real_valued() const;

  std::string name() const;

  nlohmann::json to_json() const;
  static FuncDescriptor from_json(const nlohmann::json& j);

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

 private:
  explicit FuncDescriptor(NodePtr root) : root_(std::move(root)) {}

  NodePtr root_;
  std::optional<double> lip_upper_override_;
  std::optional<double> lip_lower_override_;
  bool bi_lipschitz_ = false;
};

}  // namespace twistlab
