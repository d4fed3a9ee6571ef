#include "twistlab/func.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twistlab {

struct FuncDescriptor::Node {
  FuncKind kind;
  cplx c{0.0, 0.0};     // Linear / Scale coefficient
  double alpha = 0.0;   // SinLog / PowerPhase
  double beta = 0.0;    // SinLog
  std::vector<NodePtr> children;

  std::optional<double> lip_upper;
  std::optional<double> lip_lower;
  bool d1_ok = true;
  bool d2_ok = true;
};

namespace {

using Node = FuncDescriptor::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr cplx kImagUnit{0.0, 1.0};

cplx eval_node(const Node& n, double t) {
  if (t == 0.0) return {0.0, 0.0};
  switch (n.kind) {
    case FuncKind::Linear:
      return n.c * t;
    case FuncKind::SinPlain:
      return {std::sin(t), 0.0};
    case FuncKind::SinLog:
      return {t + n.alpha * t * std::sin(n.beta * std::log(t)), 0.0};
    case FuncKind::PowerPhase: {
      const double u = n.alpha * std::log(t);
      return t * cplx{std::cos(u), std::sin(u)};
    }
    case FuncKind::Scale:
      return n.c * eval_node(*n.children[0], t);
    case FuncKind::Sum: {
      cplx acc{0.0, 0.0};
      for (const auto& ch : n.children) acc += eval_node(*ch, t);
      return acc;
    }
    case FuncKind::ComplexCombine:
      return eval_node(*n.children[0], t) + kImagUnit * eval_node(*n.children[1], t);
  }
  throw std::logic_error("unreachable func kind");
}

cplx eval_d1_node(const Node& n, double t) {
  switch (n.kind) {
    case FuncKind::Linear:
      return n.c;
    case FuncKind::SinPlain:
      return {std::cos(t), 0.0};
    case FuncKind::SinLog: {
      const double u = n.beta * std::log(t);
      return {1.0 + n.alpha * std::sin(u) + n.alpha * n.beta * std::cos(u), 0.0};
    }
    case FuncKind::PowerPhase: {
      const double u = n.alpha * std::log(t);
      return (cplx{1.0, n.alpha}) * cplx{std::cos(u), std::sin(u)};
    }
    case FuncKind::Scale:
      return n.c * eval_d1_node(*n.children[0], t);
    case FuncKind::Sum: {
      cplx acc{0.0, 0.0};
      for (const auto& ch : n.children) acc += eval_d1_node(*ch, t);
      return acc;
    }
    case FuncKind::ComplexCombine:
      return eval_d1_node(*n.children[0], t) + kImagUnit * eval_d1_node(*n.children[1], t);
  }
  throw std::logic_error("unreachable func kind");
}

cplx eval_d2_node(const Node& n, double t) {
  switch (n.kind) {
    case FuncKind::Linear:
      return {0.0, 0.0};
    case FuncKind::SinPlain:
      return {-std::sin(t), 0.0};
    case FuncKind::SinLog: {
      const double u = n.beta * std::log(t);
      // d/dt [1 + a sin(b log t) + a b cos(b log t)]
      return {(n.alpha * n.beta / t) * (std::cos(u) - n.beta * std::sin(u)), 0.0};
    }
    case FuncKind::PowerPhase: {
      const double u = n.alpha * std::log(t);
      return (cplx{1.0, n.alpha}) * (kImagUnit * n.alpha / t) * cplx{std::cos(u), std::sin(u)};
    }
    case FuncKind::Scale:
      return n.c * eval_d2_node(*n.children[0], t);
    case FuncKind::Sum: {
      cplx acc{0.0, 0.0};
      for (const auto& ch : n.children) acc += eval_d2_node(*ch, t);
      return acc;
    }
    case FuncKind::ComplexCombine:
      return eval_d2_node(*n.children[0], t) + kImagUnit * eval_d2_node(*n.children[1], t);
  }
  throw std::logic_error("unreachable func kind");
}

cplx linear_coeff_node(const Node& n) {
  switch (n.kind) {
    case FuncKind::Linear:
      return n.c;
    case FuncKind::SinPlain:
      return {0.0, 0.0};
    case FuncKind::SinLog:
      return {1.0, 0.0};
    case FuncKind::PowerPhase:
      return n.alpha == 0.0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    case FuncKind::Scale:
      return n.c * linear_coeff_node(*n.children[0]);
    case FuncKind::Sum: {
      cplx acc{0.0, 0.0};
      for (const auto& ch : n.children) acc += linear_coeff_node(*ch);
      return acc;
    }
    case FuncKind::ComplexCombine:
      return linear_coeff_node(*n.children[0]) + kImagUnit * linear_coeff_node(*n.children[1]);
  }
  throw std::logic_error("unreachable func kind");
}

bool real_valued_node(const Node& n) {
  switch (n.kind) {
    case FuncKind::Linear:
      return n.c.imag() == 0.0;
    case FuncKind::SinPlain:
    case FuncKind::SinLog:
      return true;
    case FuncKind::PowerPhase:
      return n.alpha == 0.0;
    case FuncKind::Scale:
      return n.c.imag() == 0.0 && real_valued_node(*n.children[0]);
    case FuncKind::Sum:
      for (const auto& ch : n.children)
        if (!real_valued_node(*ch)) return false;
      return true;
    case FuncKind::ComplexCombine:
      return false;
  }
  throw std::logic_error("unreachable func kind");
}

NodePtr conjugate_node(const Node& n) {
  auto out = std::make_shared<Node>(n);
  switch (n.kind) {
    case FuncKind::Linear:
      out->c = std::conj(n.c);
      break;
    case FuncKind::SinPlain:
    case FuncKind::SinLog:
      break;
    case FuncKind::PowerPhase:
      out->alpha = -n.alpha;
      break;
    case FuncKind::Scale:
      out->c = std::conj(n.c);
      out->children = {conjugate_node(*n.children[0])};
      break;
    case FuncKind::Sum: {
      out->children.clear();
      for (const auto& ch : n.children) out->children.push_back(conjugate_node(*ch));
      break;
    }
    case FuncKind::ComplexCombine: {
      // conj(f + i g) = conj(f) - i conj(g) (f, g real-valued parts)
      auto neg = std::make_shared<Node>();
      neg->kind = FuncKind::Scale;
      neg->c = {-1.0, 0.0};
      neg->children = {conjugate_node(*n.children[1])};
      neg->lip_upper = n.children[1]->lip_upper;
      neg->d1_ok = n.children[1]->d1_ok;
      neg->d2_ok = n.children[1]->d2_ok;
      out->children = {conjugate_node(*n.children[0]), neg};
      break;
    }
  }
  return out;
}

std::string name_node(const Node& n) {
  std::ostringstream os;
  switch (n.kind) {
    case FuncKind::Linear:
      os << "linear(" << n.c.real();
      if (n.c.imag() != 0.0) os << (n.c.imag() < 0 ? "" : "+") << n.c.imag() << "i";
      os << ")";
      break;
    case FuncKind::SinPlain:
      os << "sin";
      break;
    case FuncKind::SinLog:
      os << "sinlog(" << n.alpha << "," << n.beta << ")";
      break;
    case FuncKind::PowerPhase:
      os << "powerphase(" << n.alpha << ")";
      break;
    case FuncKind::Scale:
      os << n.c.real();
      if (n.c.imag() != 0.0) os << (n.c.imag() < 0 ? "" : "+") << n.c.imag() << "i";
      os << "*" << name_node(*n.children[0]);
      break;
    case FuncKind::Sum: {
      os << "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) os << " + ";
        os << name_node(*n.children[i]);
      }
      os << ")";
      break;
    }
    case FuncKind::ComplexCombine:
      os << "(" << name_node(*n.children[0]) << " + i*" << name_node(*n.children[1]) << ")";
      break;
  }
  return os.str();
}

nlohmann::json cplx_to_json(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

cplx cplx_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("complex scalar must be a number or [re, im]");
}

nlohmann::json node_to_json(const Node& n) {
  nlohmann::json j;
  switch (n.kind) {
    case FuncKind::Linear:
      j["type"] = "linear";
      j["c"] = cplx_to_json(n.c);
      break;
    case FuncKind::SinPlain:
      j["type"] = "sinplain";
      break;
    case FuncKind::SinLog:
      j["type"] = "sinlog";
      j["alpha"] = n.alpha;
      j["beta"] = n.beta;
      break;
    case FuncKind::PowerPhase:
      j["type"] = "powerphase";
      j["alpha"] = n.alpha;
      break;
    case FuncKind::Scale:
      j["type"] = "scale";
      j["c"] = cplx_to_json(n.c);
      j["children"] = nlohmann::json::array({node_to_json(*n.children[0])});
      break;
    case FuncKind::Sum: {
      j["type"] = "sum";
      auto arr = nlohmann::json::array();
      for (const auto& ch : n.children) arr.push_back(node_to_json(*ch));
      j["children"] = std::move(arr);
      break;
    }
    case FuncKind::ComplexCombine:
      j["type"] = "complex";
      j["children"] = nlohmann::json::array(
          {node_to_json(*n.children[0]), node_to_json(*n.children[1])});
      break;
  }
  return j;
}

}  // namespace

FuncDescriptor FuncDescriptor::linear(cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::Linear;
  n->c = c;
  n->lip_upper = std::abs(c);
  n->lip_lower = std::abs(c);
  FuncDescriptor f{std::move(n)};
  f.bi_lipschitz_ = (c != cplx{0.0, 0.0});
  return f;
}

FuncDescriptor FuncDescriptor::sin_plain() {
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::SinPlain;
  n->lip_upper = 1.0;
  return FuncDescriptor{std::move(n)};
}

FuncDescriptor FuncDescriptor::sin_log(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("sin_log requires alpha > 0 and beta > 0");
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::SinLog;
  n->alpha = alpha;
  n->beta = beta;
  const double ab = alpha * (1.0 + beta);
  if (ab < 1.0) {
    n->lip_upper = 1.0 + ab;
    n->lip_lower = 1.0 - ab;
  }
  FuncDescriptor f{std::move(n)};
  f.bi_lipschitz_ = (ab < 1.0);
  return f;
}

FuncDescriptor FuncDescriptor::power_phase(double alpha) {
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::PowerPhase;
  n->alpha = alpha;
  n->lip_upper = std::hypot(1.0, alpha);
  return FuncDescriptor{std::move(n)};
}

FuncDescriptor FuncDescriptor::scale(cplx c, FuncDescriptor child) {
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::Scale;
  n->c = c;
  if (auto u = child.lipschitz_upper()) n->lip_upper = std::abs(c) * *u;
  if (auto l = child.lipschitz_lower()) n->lip_lower = std::abs(c) * *l;
  n->d1_ok = child.has_d1();
  n->d2_ok = child.has_d2();
  n->children = {child.root_};
  FuncDescriptor f{std::move(n)};
  f.bi_lipschitz_ = child.bi_lipschitz_flag() && c != cplx{0.0, 0.0};
  return f;
}

FuncDescriptor FuncDescriptor::sum(std::vector<FuncDescriptor> children) {
  if (children.empty()) throw std::invalid_argument("sum requires at least one child");
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::Sum;
  double upper = 0.0;
  bool have_upper = true;
  for (const auto& ch : children) {
    if (auto u = ch.lipschitz_upper())
      upper += *u;
    else
      have_upper = false;
    n->d1_ok = n->d1_ok && ch.has_d1();
    n->d2_ok = n->d2_ok && ch.has_d2();
    n->children.push_back(ch.root_);
  }
  if (have_upper) n->lip_upper = upper;
  return FuncDescriptor{std::move(n)};
}

FuncDescriptor FuncDescriptor::complex_combine(FuncDescriptor re_part, FuncDescriptor im_part) {
  auto n = std::make_shared<Node>();
  n->kind = FuncKind::ComplexCombine;
  if (re_part.lipschitz_upper() && im_part.lipschitz_upper())
    n->lip_upper = std::hypot(*re_part.lipschitz_upper(), *im_part.lipschitz_upper());
  n->d1_ok = re_part.has_d1() && im_part.has_d1();
  n->d2_ok = re_part.has_d2() && im_part.has_d2();
  n->children = {re_part.root_, im_part.root_};
  return FuncDescriptor{std::move(n)};
}

cplx FuncDescriptor::eval(double t) const {
  if (t < 0.0) throw std::domain_error("eval requires t >= 0");
  return eval_node(*root_, t);
}

cplx FuncDescriptor::eval_d1(double t) const {
  if (!(t > 0.0)) throw std::domain_error("eval_d1 requires t > 0");
  if (!has_d1()) throw std::domain_error("first derivative unavailable for " + name());
  return eval_d1_node(*root_, t);
}

cplx FuncDescriptor::eval_d2(double t) const {
  if (!(t > 0.0)) throw std::domain_error("eval_d2 requires t > 0");
  if (!has_d2()) throw std::domain_error("second derivative unavailable for " + name());
  return eval_d2_node(*root_, t);
}

bool FuncDescriptor::has_d1() const { return root_->d1_ok; }
bool FuncDescriptor::has_d2() const { return root_->d2_ok; }

std::optional<double> FuncDescriptor::lipschitz_upper() const {
  return lip_upper_override_ ? lip_upper_override_ : root_->lip_upper;
}

std::optional<double> FuncDescriptor::lipschitz_lower() const {
  return lip_lower_override_ ? lip_lower_override_ : root_->lip_lower;
}

void FuncDescriptor::attach_lipschitz_lower(double b) { lip_lower_override_ = b; }
void FuncDescriptor::attach_lipschitz_upper(double a) { lip_upper_override_ = a; }

cplx FuncDescriptor::linear_coefficient() const { return linear_coeff_node(*root_); }

FuncDescriptor FuncDescriptor::conjugate() const {
  FuncDescriptor f{conjugate_node(*root_)};
  f.lip_upper_override_ = lip_upper_override_;
  f.lip_lower_override_ = lip_lower_override_;
  f.bi_lipschitz_ = bi_lipschitz_;
  return f;
}

bool FuncDescriptor::is_real_valued() const { return real_valued_node(*root_); }

std::string FuncDescriptor::name() const { return name_node(*root_); }

nlohmann::json FuncDescriptor::to_json() const { return node_to_json(*root_); }

FuncDescriptor FuncDescriptor::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("descriptor JSON must be an object with a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "linear") return linear(cplx_from_json(j.at("c")));
  if (type == "sinplain") return sin_plain();
  if (type == "sinlog")
    return sin_log(j.at("alpha").get<double>(), j.at("beta").get<double>());
  if (type == "powerphase") return power_phase(j.at("alpha").get<double>());
  if (type == "scale") {
    const auto& ch = j.at("children");
    if (!ch.is_array() || ch.size() != 1)
      throw std::invalid_argument("scale requires exactly one child");
    return scale(cplx_from_json(j.at("c")), from_json(ch[0]));
  }
  if (type == "sum") {
    const auto& ch = j.at("children");
    if (!ch.is_array() || ch.empty())
      throw std::invalid_argument("sum requires a nonempty children array");
    std::vector<FuncDescriptor> parts;
    for (const auto& c : ch) parts.push_back(from_json(c));
    return sum(std::move(parts));
  }
  if (type == "complex") {
    const auto& ch = j.at("children");
    if (!ch.is_array() || ch.size() != 2)
      throw std::invalid_argument("complex requires exactly two children");
    return complex_combine(from_json(ch[0]), from_json(ch[1]));
  }
  throw std::invalid_argument("unknown descriptor type: " + type);
}

}  // namespace twistlab
