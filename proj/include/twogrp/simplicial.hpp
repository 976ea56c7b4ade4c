#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "twogrp/cochain.hpp"

namespace twogrp {

using Cell = std::uint32_t;

/// Hard cap on the number of cells in one level.
inline constexpr std::size_t kMaxLevelCells = std::size_t{1} << 22;

/// Simplicial set truncated at degree N: levels 0..N, faces d_i on levels
/// 1..N and degeneracies s_i on levels 0..N-1, all stored as dense tables.
class TruncatedSSet {
 public:
  using Table = std::vector<Cell>;
  using FaceFn = std::function<Cell(std::size_t n, std::size_t i, Cell x)>;

  TruncatedSSet() : TruncatedSSet(0, {1}, {}, {}) {}
  /// faces[n-1][i] is d_i on level n; degeneracies[n][i] is s_i on level n.
  /// Throws ShapeMismatch on wrong table shapes or out-of-range entries.
  TruncatedSSet(std::size_t truncation, std::vector<std::size_t> level_sizes,
                std::vector<std::vector<Table>> faces, std::vector<std::vector<Table>> degeneracies);

  /// Builds every table by calling `face(n, i, x)` and `degeneracy(n, i, x)`.
  static TruncatedSSet tabulate(std::size_t truncation, std::vector<std::size_t> level_sizes,
                                const FaceFn& face, const FaceFn& degeneracy);

  std::size_t truncation() const noexcept { return truncation_; }
  std::size_t level_size(std::size_t n) const { return sizes_.at(n); }
  const std::vector<std::size_t>& level_sizes() const noexcept { return sizes_; }

  Cell face(std::size_t n, std::size_t i, Cell x) const { return faces_[n - 1][i][x]; }
  Cell degeneracy(std::size_t n, std::size_t i, Cell x) const { return degens_[n][i][x]; }
  const Table& face_table(std::size_t n, std::size_t i) const { return faces_.at(n - 1).at(i); }
  const Table& degeneracy_table(std::size_t n, std::size_t i) const { return degens_.at(n).at(i); }

  /// Copy with one face entry replaced; used to build broken fixtures.
  TruncatedSSet with_face(std::size_t n, std::size_t i, Cell x, Cell value) const;
  /// Copy truncated at a lower degree.
  TruncatedSSet truncated(std::size_t n) const;

  friend bool operator==(const TruncatedSSet&, const TruncatedSSet&) = default;

 private:
  std::size_t truncation_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Table>> faces_;
  std::vector<std::vector<Table>> degens_;
};

using SSetPtr = std::shared_ptr<const TruncatedSSet>;

inline SSetPtr share(TruncatedSSet s) { return std::make_shared<const TruncatedSSet>(std::move(s)); }

/// All simplicial identities on every cell. Witness: {n, i, j, cell} with n
/// the level the composite starts from; `detail` names the identity.
Verdict validate_simplicial(const TruncatedSSet& s);

struct SimplicialMap {
  SSetPtr source, target;
  /// components[n][x] is the image of the n-cell x.
  std::vector<std::vector<Cell>> components;

  Cell operator()(std::size_t n, Cell x) const { return components[n][x]; }
};

/// Throws ShapeMismatch unless the component tables fit source and target.
SimplicialMap make_map(SSetPtr source, SSetPtr target, std::vector<std::vector<Cell>> components);
/// Commutes with every face and degeneracy. Witness {n, i, cell}.
Verdict check_simplicial_map(const SimplicialMap& f);
/// Every component is a bijection. Witness {n, cell} of a repeated image or a
/// missed target cell.
Verdict check_levelwise_bijective(const SimplicialMap& f);
SimplicialMap identity_map(SSetPtr s);
SimplicialMap compose(const SimplicialMap& second, const SimplicialMap& first);
/// Inverse of a levelwise bijection.
SimplicialMap inverse(const SimplicialMap& f);

/// Horn of dimension n missing face i; faces[i] is ignored.
struct Horn {
  std::size_t n = 0;
  std::size_t missing = 0;
  std::vector<Cell> faces;
};

bool horn_compatible(const TruncatedSSet& s, const Horn& h);
/// Every n-cell whose faces other than `missing` match the horn.
std::vector<Cell> fillers(const TruncatedSSet& s, const Horn& h);
/// Every compatible horn of dimension 2..up_to has a filler. Witness
/// {n, missing, faces...} of the first unfilled horn.
Verdict is_kan(const TruncatedSSet& s, std::size_t up_to);
/// Calls `visit` with every compatible horn of dimension n missing face i.
void for_each_horn(const TruncatedSSet& s, std::size_t n, std::size_t i,
                   const std::function<bool(const Horn&)>& visit);

/// Nerve of G: level n is G^n in mixed radix, first entry most significant.
TruncatedSSet nerve_bg(const FiniteGroup& g, std::size_t truncation);
Cell nerve_encode(const FiniteGroup& g, std::span<const Elem> tuple);
std::vector<Elem> nerve_decode(const FiniteGroup& g, std::size_t n, Cell x);

/// Truncated simplicial abelian group: a simplicial set whose level n is the
/// abelian group `groups[n]`, cells indexed as in AbelianGroup::enumerate.
struct SimplicialAbelianGroup {
  TruncatedSSet set;
  std::vector<AbelianGroup> groups;
};

/// Order-preserving surjections [n] -> [2] as value sequences, lexicographic.
std::vector<std::vector<int>> surjections_onto_2(std::size_t n);

/// Dold-Kan image of A placed in degree 2. Level n has one copy of A per
/// surjection [n] -> [2], ordered as in surjections_onto_2. N <= 4.
SimplicialAbelianGroup gamma_a2(const AbelianGroup& a, std::size_t truncation);

/// Classifying space of a simplicial abelian group. A cell of level n is the
/// tuple (g_{n-1}, ..., g_0) with g_k in level k, encoded in mixed radix with
/// g_{n-1} most significant. Needs `g` truncated at N-1 or higher.
TruncatedSSet wbar(const SimplicialAbelianGroup& g, std::size_t truncation);
/// Total space: level n is level n+1 of wbar with d_i, s_i shifted by one.
/// Needs `g` truncated at N or higher.
TruncatedSSet w_total(const SimplicialAbelianGroup& g, std::size_t truncation);

TruncatedSSet wbar_b2a(const AbelianGroup& a, std::size_t truncation);
TruncatedSSet w_b2a(const AbelianGroup& a, std::size_t truncation);

struct WPair {
  SSetPtr w, wbar;
  /// Drops the top component g_n of a W cell.
  SimplicialMap dec;
};
/// W(B^2 A), Wbar(B^2 A) and the decalage projection, truncation <= 4.
WPair w_and_decalage(const AbelianGroup& a, std::size_t truncation);

/// The map BG -> Wbar(B^2 A) classified by a normalized 3-cochain: constant
/// below degree 3, tuple -> alpha(tuple) in degree 3, and in degree 4 the
/// unique cell with the prescribed faces. Throws NotNormalized, or
/// NotACocycle with the first 4-tuple whose faces admit no cell.
SimplicialMap cocycle_as_map(const Cochain& alpha, std::size_t truncation);
/// Same, with an explicitly supplied target (must be wbar_b2a(A, N)).
SimplicialMap cocycle_as_map(const Cochain& alpha, SSetPtr nerve, SSetPtr target);

struct FiberProduct {
  SSetPtr set;
  SimplicialMap left, right;  // projections to the two sources
  /// pairs[n][cell] = (left image, right image).
  std::vector<std::vector<std::pair<Cell, Cell>>> pairs;
};

/// Levelwise {(x, y) : f(x) = g(y)} in lexicographic order. Throws
/// TruncationMismatch unless f and g share a target and truncation.
FiberProduct fiber_product(const SimplicialMap& f, const SimplicialMap& g);
/// The unique map into the fiber product induced by a commuting square.
/// Throws ShapeMismatch if a and b disagree after f and g.
SimplicialMap mediating_map(const FiberProduct& p, const SimplicialMap& f, const SimplicialMap& g,
                            const SimplicialMap& a, const SimplicialMap& b);

}  // namespace twogrp
