#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "twogrp/errors.hpp"

namespace twogrp {

/// Element of a finite abelian group, one reduced residue per invariant factor.
struct AbElement {
  std::vector<std::int64_t> residues;

  friend bool operator==(const AbElement&, const AbElement&) = default;
  friend auto operator<=>(const AbElement&, const AbElement&) = default;
};

/// Finite abelian group Z/n1 + ... + Z/nk, written additively.
///
/// Factors need not form a divisibility chain. Elements are enumerated in
/// lexicographic order of their residue vectors (first factor most
/// significant), so element index 0 is always zero.
class AbelianGroup {
 public:
  AbelianGroup() = default;  // trivial group
  explicit AbelianGroup(std::vector<std::int64_t> invariant_factors);

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::int64_t order() const noexcept { return order_; }
  std::int64_t factor(std::size_t k) const { return factors_.at(k); }

  AbElement zero() const { return AbElement{std::vector<std::int64_t>(factors_.size(), 0)}; }
  bool contains(const AbElement& x) const noexcept;

  AbElement add(const AbElement& x, const AbElement& y) const;
  AbElement neg(const AbElement& x) const;
  AbElement sub(const AbElement& x, const AbElement& y) const { return add(x, neg(y)); }
  AbElement scale(std::int64_t k, const AbElement& x) const;

  /// Position of `x` in enumerate().
  std::size_t index_of(const AbElement& x) const;
  AbElement element_at(std::size_t index) const;
  std::vector<AbElement> enumerate() const;

  /// Index-level arithmetic, used by the simplicial constructions.
  std::size_t add_index(std::size_t i, std::size_t j) const;
  std::size_t neg_index(std::size_t i) const;

  std::string describe() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  void check_shape(const AbElement& x) const;

  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
};

/// Validating constructor; throws Error(InvalidFactor) for any entry < 2.
AbelianGroup ab_make(std::vector<std::int64_t> invariant_factors);
AbElement ab_add(const AbelianGroup& a, const AbElement& x, const AbElement& y);
AbElement ab_neg(const AbelianGroup& a, const AbElement& x);
std::vector<AbElement> ab_enumerate(const AbelianGroup& a);

// Modular helpers shared by the cochain solver.
std::int64_t mod_floor(std::int64_t x, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

}  // namespace twogrp
