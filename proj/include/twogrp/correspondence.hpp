#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twogrp/simplicial.hpp"
#include "twogrp/twogroup.hpp"

namespace twogrp {

// Both models share levels 0..2: a point, the elements of G, and 2-cells
// (f, g, a) encoded as (f |G| + g) |A| + index(a), with faces
// d_0 = g, d_1 = f g, d_2 = f.

/// 3-cell of the Duskin nerve: edges f, g, h and the scalars on its four
/// faces, subject to theta0 + theta1 = assoc(f, g, h) + theta2 + theta3.
/// Face d_0 is (g, h; theta0), d_1 is (fg, h; theta2), d_2 is (f, gh; theta1)
/// and d_3 is (f, g; theta3).
struct DuskinCell3 {
  Elem f = 0, g = 0, h = 0;
  AbElement theta[4];
};

/// 3-cell of the pullback model with free labels a, b, c; its faces carry
/// a + d, a + b, b + c, c where d = assoc(f, g, h).
struct PullbackCell3 {
  Elem f = 0, g = 0, h = 0;
  AbElement a, b, c;
};

Cell encode_cell2(const FiniteGroup& g, const AbelianGroup& a, Elem f, Elem h, const AbElement& s);
std::tuple<Elem, Elem, AbElement> decode_cell2(const FiniteGroup& g, const AbelianGroup& a, Cell x);

/// Level 3 is indexed by (f, g, h, theta1, theta2, theta3) in mixed radix.
DuskinCell3 decode_duskin3(const TwoGroupSkeleton& t, Cell x);
Cell encode_duskin3(const TwoGroupSkeleton& t, const DuskinCell3& c);
/// Level 3 is indexed by (f, g, h, a, b, c) in mixed radix.
PullbackCell3 decode_pullback3(const FiniteGroup& g, const AbelianGroup& a, Cell x);
Cell encode_pullback3(const FiniteGroup& g, const AbelianGroup& a, const PullbackCell3& c);

/// Duskin nerve of the skeleton, truncation at most 3 (DimensionBound above).
/// Level-3 cells are found by enumerating all theta quadruples.
TruncatedSSet duskin_nerve(const TwoGroupSkeleton& t, std::size_t truncation = 3);
/// Explicit pullback model; throws NotACocycle / NotNormalized.
TruncatedSSet pullback_model(const Cochain& alpha, std::size_t truncation = 3);

/// Identity through level 2; on 3-cells c = theta3, b = theta1 - theta3,
/// a = theta2 - theta1 + theta3.
SimplicialMap canonical_iso(const TwoGroupSkeleton& t, SSetPtr duskin, SSetPtr pullback);
SimplicialMap canonical_iso(const TwoGroupSkeleton& t, std::size_t truncation = 3);

/// Projection of either model onto the nerve of G (forget the scalars).
SimplicialMap project_to_nerve(const FiniteGroup& g, const AbelianGroup& a, SSetPtr model,
                               SSetPtr nerve);

/// Pullback model of alpha to pullback model of alpha + d(beta): 2-cells
/// (f, g, s) go to (f, g, s + beta(f, g)).
SimplicialMap twist_iso(const Cochain& alpha, const Cochain& beta, SSetPtr source, SSetPtr target);
/// Searches for beta with alpha2 = alpha + d(beta) and returns the twisted
/// isomorphism, or nullopt when the classes differ.
std::optional<SimplicialMap> find_pullback_isomorphism(const Cochain& alpha, const Cochain& alpha2);

/// Pullback model cell -> (nerve cell, W cell) of the generic fiber product
/// of cocycle_as_map(alpha) along decalage, matched coordinatewise.
SimplicialMap pullback_to_fiber_product(const Cochain& alpha, SSetPtr pullback,
                                        const FiberProduct& fp);

struct StageResult {
  std::string name;
  bool passed = false;
  bool ran = false;
  std::string detail;
  std::vector<std::int64_t> witness;
};

struct TheoremReport {
  std::string group;
  std::string coeffs;
  std::vector<StageResult> stages;
  std::vector<std::size_t> duskin_sizes, pullback_sizes;

  bool passed() const;
  const StageResult* first_failure() const;
};

struct TheoremOptions {
  std::size_t truncation = 3;
  std::size_t kan_up_to = 3;
};

/// Runs every stage in order; a stage whose inputs are missing is recorded as
/// not run and failed. Never throws on mathematical failure.
TheoremReport verify_theorem(const FiniteGroup& g, const AbelianGroup& a, const Cochain& alpha,
                             const TheoremOptions& options = {});

}  // namespace twogrp
