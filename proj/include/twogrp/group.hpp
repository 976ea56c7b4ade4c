#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twogrp/errors.hpp"

namespace twogrp {

using Elem = std::uint32_t;

/// Finite group stored as a validated multiplication table. Element 0 is the
/// identity. Copies share the immutable table.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  std::size_t order() const noexcept { return data_->order; }
  const std::string& name() const noexcept { return data_->name; }

  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  /// Unchecked lookups for inner loops.
  Elem mul_unchecked(Elem x, Elem y) const noexcept { return data_->table[x * data_->order + y]; }
  Elem inv_unchecked(Elem x) const noexcept { return data_->inverse[x]; }

  std::vector<std::vector<Elem>> table() const;
  bool is_abelian() const noexcept;
  std::size_t element_order(Elem x) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.data_ == b.data_ || a.data_->table == b.data_->table;
  }

 private:
  struct Data {
    std::size_t order = 1;
    std::string name;
    std::vector<Elem> table;
    std::vector<Elem> inverse;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  void check_index(Elem x) const;

  std::shared_ptr<const Data> data_;

  friend FiniteGroup group_from_table(const std::vector<std::vector<std::int64_t>>& table,
                                      std::string name);
};

/// Validates identity, closure, inverses and associativity (exhaustive).
/// Throws Error(NotAGroup) with reason in {closure, identity, inverse,
/// associativity} and a witness.
FiniteGroup group_from_table(const std::vector<std::vector<std::int64_t>>& table,
                             std::string name = "table");

/// Named constructions.
///   cyclic(n):    element k is the generator to the power k.
///   dihedral(n):  order 2n, element k + n*b is r^k s^b, with s r s = r^-1.
///   symmetric(n): n <= 4, permutations of {0..n-1} in lexicographic order of
///                 their image lists; (p*q)(x) = p(q(x)).
///   product:      element (g, h) has index g*|H| + h.
FiniteGroup cyclic(std::size_t n);
FiniteGroup dihedral(std::size_t n);
FiniteGroup symmetric(std::size_t n);
FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);

/// Parses "cyclic:4", "dihedral:3", "symmetric:3", "trivial",
/// "product:cyclic:2,cyclic:2" (more than two factors fold left; parentheses
/// may wrap a factor). Throws Error(UnsupportedSpec).
FiniteGroup group_construct(const std::string& spec);

Elem group_mul(const FiniteGroup& g, Elem x, Elem y);
Elem group_inv(const FiniteGroup& g, Elem x);

struct GroupAutomorphism {
  std::vector<Elem> image;

  Elem operator()(Elem x) const { return image.at(x); }
  friend bool operator==(const GroupAutomorphism&, const GroupAutomorphism&) = default;
  friend auto operator<=>(const GroupAutomorphism&, const GroupAutomorphism&) = default;
};

/// Greedy generating set: repeatedly add the smallest element outside the
/// current span.
std::vector<Elem> greedy_generators(const FiniteGroup& g);

/// All automorphisms, sorted lexicographically (identity first). Throws
/// Error(SizeBound) when |G| > max_order.
std::vector<GroupAutomorphism> group_automorphisms(const FiniteGroup& g,
                                                   std::size_t max_order = 12);

bool is_automorphism(const FiniteGroup& g, const GroupAutomorphism& phi);
GroupAutomorphism compose(const GroupAutomorphism& outer, const GroupAutomorphism& inner);
GroupAutomorphism inverse(const GroupAutomorphism& phi);

}  // namespace twogrp
