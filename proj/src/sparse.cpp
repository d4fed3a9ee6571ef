#include "twistlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace twistlab {

void SparseVec::recompute_norm() {
  double acc = 0.0;
  for (const auto& [k, v] : entries_) acc += std::norm(v);
  norm2_ = std::sqrt(acc);
}

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVec out;
  out.entries_.reserve(entries.size());
  for (const auto& [k, v] : entries) {
    if (k < 1) throw std::invalid_argument("SparseVec indices start at 1");
    if (!out.entries_.empty() && out.entries_.back().first == k)
      out.entries_.back().second += v;
    else
      out.entries_.emplace_back(k, v);
  }
  out.entries_.erase(std::remove_if(out.entries_.begin(), out.entries_.end(),
                                    [](const Entry& e) { return e.second == cplx{0.0, 0.0}; }),
                     out.entries_.end());
  out.recompute_norm();
  return out;
}

SparseVec SparseVec::basis(Index n) {
  if (n < 1) throw std::invalid_argument("basis index must be >= 1");
  SparseVec out;
  out.entries_.emplace_back(n, cplx{1.0, 0.0});
  out.norm2_ = 1.0;
  return out;
}

SparseVec SparseVec::ones_prefix(Index n) {
  if (n < 1) throw std::invalid_argument("ones_prefix length must be >= 1");
  SparseVec out;
  out.entries_.reserve(static_cast<size_t>(n));
  for (Index k = 1; k <= n; ++k) out.entries_.emplace_back(k, cplx{1.0, 0.0});
  out.norm2_ = std::sqrt(static_cast<double>(n));
  return out;
}

double SparseVec::sup_norm() const {
  double m = 0.0;
  for (const auto& [k, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

cplx SparseVec::at(Index n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Index i) { return e.first < i; });
  if (it != entries_.end() && it->first == n) return it->second;
  return {0.0, 0.0};
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
  SparseVec out;
  out.entries_.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin(), b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      const cplx v = a->second + b->second;
      if (v != cplx{0.0, 0.0}) out.entries_.emplace_back(a->first, v);
      ++a;
      ++b;
    }
  }
  out.recompute_norm();
  return out;
}

SparseVec SparseVec::operator-(const SparseVec& o) const { return *this + o.scaled(-1.0); }

SparseVec SparseVec::scaled(cplx lambda) const {
  if (lambda == cplx{0.0, 0.0}) return {};
  SparseVec out;
  out.entries_.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.entries_.emplace_back(k, lambda * v);
  out.norm2_ = std::abs(lambda) * norm2_;
  return out;
}

cplx SparseVec::inner_bilinear(const SparseVec& a, const SparseVec& b) {
  cplx acc{0.0, 0.0};
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() && j != b.entries_.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else
      acc += (i++)->second * (j++)->second;
  }
  return acc;
}

cplx SparseVec::inner_sesquilinear(const SparseVec& a, const SparseVec& b) {
  cplx acc{0.0, 0.0};
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() && j != b.entries_.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else
      acc += std::conj((i++)->second) * (j++)->second;
  }
  return acc;
}

bool SparseVec::support_subset_of(const SparseVec& o) const {
  auto j = o.entries_.begin();
  for (const auto& [k, v] : entries_) {
    while (j != o.entries_.end() && j->first < k) ++j;
    if (j == o.entries_.end() || j->first != k) return false;
  }
  return true;
}

bool SparseVec::supports_disjoint(const SparseVec& o) const {
  auto i = entries_.begin();
  auto j = o.entries_.begin();
  while (i != entries_.end() && j != o.entries_.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else
      return false;
  }
  return true;
}

SparseVec SparseVec::conjugated() const {
  SparseVec out = *this;
  for (auto& [k, v] : out.entries_) v = std::conj(v);
  return out;
}

nlohmann::json SparseVec::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : entries_)
    j[std::to_string(k)] = nlohmann::json::array({v.real(), v.imag()});
  return j;
}

SparseVec SparseVec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("SparseVec JSON must be an object");
  std::vector<Entry> entries;
  for (auto it = j.begin(); it != j.end(); ++it) {
    Index k = 0;
    try {
      k = std::stoll(it.key());
    } catch (const std::exception&) {
      throw std::invalid_argument("SparseVec index is not an integer: " + it.key());
    }
    const auto& v = it.value();
    if (!v.is_array() || v.size() != 2)
      throw std::invalid_argument("SparseVec entry must be [re, im]");
    entries.emplace_back(k, cplx{v[0].get<double>(), v[1].get<double>()});
  }
  return from_entries(std::move(entries));
}

nlohmann::json TwistedVec::to_json() const {
  return {{"y", y.to_json()}, {"x", x.to_json()}};
}

TwistedVec TwistedVec::from_json(const nlohmann::json& j) {
  return {SparseVec::from_json(j.at("y")), SparseVec::from_json(j.at("x"))};
}

}  // namespace twistlab
