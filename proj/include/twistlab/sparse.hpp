#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistlab/func.hpp"

namespace twistlab {

using Index = std::int64_t;

/// Finite-support complex sequence indexed from 1 (the c00 model of an l2
/// vector).  Entries are kept sorted by index, stored entries are nonzero,
/// and the l2 norm is cached.
class SparseVec {
 public:
  using Entry = std::pair<Index, cplx>;

  SparseVec() = default;

  /// Builds from arbitrary (index, value) pairs: sorts, merges duplicates,
  /// drops zeros.  Indices must be >= 1.
  static SparseVec from_entries(std::vector<Entry> entries);

  static SparseVec basis(Index n);        // e_n
  static SparseVec ones_prefix(Index n);  // f_n = e_1 + ... + e_n

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  double norm2() const { return norm2_; }
  double sup_norm() const;
  cplx at(Index n) const;

  SparseVec operator+(const SparseVec& o) const;
  SparseVec operator-(const SparseVec& o) const;
  SparseVec scaled(cplx lambda) const;

  /// Sum of a_k * b_k over the common support (no conjugation).
  static cplx inner_bilinear(const SparseVec& a, const SparseVec& b);
  /// Sum of conj(a_k) * b_k over the common support.
  static cplx inner_sesquilinear(const SparseVec& a, const SparseVec& b);

  bool support_subset_of(const SparseVec& o) const;
  bool supports_disjoint(const SparseVec& o) const;
  SparseVec conjugated() const;

  /// {"1": [re, im], ...} with indices as decimal strings, sorted by index.
  nlohmann::json to_json() const;
  static SparseVec from_json(const nlohmann::json& j);

 private:
  std::vector<Entry> entries_;
  double norm2_ = 0.0;

  void recompute_norm();
};

/// The pair (y, x): y the twisted coordinate, x the base coordinate.
struct TwistedVec {
  SparseVec y;
  SparseVec x;

  nlohmann::json to_json() const;
  static TwistedVec from_json(const nlohmann::json& j);
};

/// 2x2 matrix acting on a TwistedVec by (y, x) -> (lam*y + mu*x, eta*y + sigma*x).
struct Matrix2 {
  cplx lam, mu, eta, sigma;

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

}  // namespace twistlab
