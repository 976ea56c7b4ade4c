#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "twogrp/coeff.hpp"
#include "twogrp/errors.hpp"
#include "twogrp/group.hpp"
#include "twogrp/modlinalg.hpp"

namespace twogrp {

/// Degree-n cochain G^n -> A stored as a dense table. Tuples are indexed in
/// mixed radix with the first argument most significant; within a tuple the
/// residues follow the invariant factors. Comparison is lexicographic on that
/// dense layout.
class Cochain {
 public:
  Cochain(FiniteGroup g, AbelianGroup a, std::size_t degree);

  template <class Fn>
  static Cochain from_function(FiniteGroup g, AbelianGroup a, std::size_t degree, Fn&& fn) {
    Cochain c(std::move(g), std::move(a), degree);
    std::vector<Elem> args;
    for (std::size_t t = 0; t < c.tuple_count(); ++t) {
      args = c.decode(t);
      c.set_index(t, fn(std::span<const Elem>(args)));
    }
    return c;
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const AbelianGroup& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t tuple_count() const noexcept { return tuples_; }

  std::size_t encode(std::span<const Elem> args) const;
  std::vector<Elem> decode(std::size_t tuple) const;

  AbElement at(std::span<const Elem> args) const { return at_index(encode(args)); }
  AbElement at(std::initializer_list<Elem> args) const {
    return at(std::span<const Elem>(args.begin(), args.size()));
  }
  void set(std::span<const Elem> args, const AbElement& v) { set_index(encode(args), v); }
  void set(std::initializer_list<Elem> args, const AbElement& v) {
    set(std::span<const Elem>(args.begin(), args.size()), v);
  }
  AbElement at_index(std::size_t tuple) const;
  void set_index(std::size_t tuple, const AbElement& v);

  /// Residue of component k at a tuple, no checking.
  std::int64_t raw(std::size_t tuple, std::size_t k) const noexcept {
    return values_[tuple * coeffs_.rank() + k];
  }
  void set_raw(std::size_t tuple, std::size_t k, std::int64_t v);
  const std::vector<std::int64_t>& raw_values() const noexcept { return values_; }

  bool is_zero() const noexcept;
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(std::int64_t k) const;

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_ && a.group_ == b.group_ &&
           a.values_ == b.values_;
  }
  friend bool operator<(const Cochain& a, const Cochain& b) { return a.values_ < b.values_; }

 private:
  void check_compatible(const Cochain& o) const;

  FiniteGroup group_;
  AbelianGroup coeffs_;
  std::size_t degree_;
  std::size_t tuples_;
  std::vector<std::int64_t> values_;
};

struct SizeBounds {
  std::size_t max_group = 8;
  std::int64_t max_coeffs = 8;
  /// Upper bound on (|G|-1)^(n+1), the row count of the coboundary matrix.
  std::size_t max_rows = 4096;
};

Cochain coboundary(const Cochain& c);
/// Witness: lexicographically first (n+1)-tuple where dc is nonzero.
Verdict is_cocycle(const Cochain& c);
/// Witness: lexicographically first tuple containing the identity with a
/// nonzero value.
Verdict is_normalized(const Cochain& c);

/// Z^n on normalized cochains as an internal direct sum of cyclic subgroups.
struct CocycleBasis {
  std::vector<Cochain> generators;
  std::vector<std::int64_t> orders;
  /// |Z^n|; throws Error(SizeBound) if it does not fit in 64 bits.
  std::uint64_t order() const;
};

CocycleBasis cocycle_solve(const FiniteGroup& g, const AbelianGroup& a, std::size_t n,
                           const SizeBounds& bounds = {});

/// Reduction modulo normalized coboundaries B^n = d(C^{n-1}).
class CoboundaryReducer {
 public:
  CoboundaryReducer(const FiniteGroup& g, const AbelianGroup& a, std::size_t n);

  /// Lexicographically smallest cochain in c + B^n. Requires c normalized.
  Cochain canonical(const Cochain& c) const;
  /// Some normalized beta with d(beta) = c, if c lies in B^n.
  std::optional<Cochain> preimage(const Cochain& c) const;
  std::size_t degree() const noexcept { return degree_; }
  Cochain zero() const { return Cochain(group_, coeffs_, degree_); }

 private:
  FiniteGroup group_;
  AbelianGroup coeffs_;
  std::size_t degree_;
  std::size_t coords_;
  std::vector<linalg::HowellBasis> per_component_;
};

struct CohomologyResult {
  /// Divisibility chain d_1 | d_2 | ..., each >= 2; empty for the trivial group.
  std::vector<std::int64_t> invariant_factors;
  /// One canonical cocycle per invariant factor, of exactly that order.
  std::vector<Cochain> representatives;
  std::uint64_t class_count = 1;
  std::shared_ptr<const CoboundaryReducer> reducer;
};

CohomologyResult cohomology(const FiniteGroup& g, const AbelianGroup& a, std::size_t n,
                            const SizeBounds& bounds = {});

/// Canonical representative of every class, in mixed-radix order of the
/// coefficients on `representatives` (last one fastest). First entry is zero.
std::vector<Cochain> all_class_representatives(const CohomologyResult& h,
                                               std::uint64_t max_classes = 1u << 20);

/// beta with d(beta) = c2 - c1 over normalized (n-1)-cochains, or nullopt.
std::optional<Cochain> are_cohomologous(const Cochain& c1, const Cochain& c2);

Cochain pull_back_along_automorphism(const GroupAutomorphism& phi, const Cochain& c);

struct AutOrbit {
  Cochain representative;  // lexicographically smallest canonical cocycle in the orbit
  std::size_t size = 0;    // number of classes in the orbit
};

std::vector<AutOrbit> cohomology_classes_mod_aut(const FiniteGroup& g, const AbelianGroup& a,
                                                 const SizeBounds& bounds = {},
                                                 std::size_t degree = 3);

/// Normalized coordinates: tuples avoiding the identity, in lexicographic order.
std::size_t normalized_count(std::size_t group_order, std::size_t degree);

}  // namespace twogrp
