#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "twogrp/cochain.hpp"

namespace twogrp {

/// Skeletal 2-group: objects are the elements of G, Hom(g, g) is an A-torsor,
/// tensor is the group law, unitors are trivial and the associator
/// (x y) z -> x (y z) is the scalar assoc(x, y, z).
struct TwoGroupSkeleton {
  FiniteGroup group;
  AbelianGroup coeffs;
  Cochain assoc;

  Elem tensor(Elem x, Elem y) const { return group.mul(x, y); }
  Elem unit() const noexcept { return 0; }
  /// The unique h with x h = e.
  Elem weak_inverse(Elem x) const { return group.inv(x); }
};

/// Rejects cochains that are not normalized degree-3 cocycles; the cocycle
/// check runs first.
TwoGroupSkeleton two_group(const FiniteGroup& g, const AbelianGroup& a, const Cochain& alpha);

namespace diagram {

/// Bracketed tensor word in prefix form: kTensor X Y, kUnit, or an element.
using Word = std::vector<std::int64_t>;
inline constexpr std::int64_t kTensor = -1;
inline constexpr std::int64_t kUnit = -2;

Word object(Elem g);
Word unit_object();
Word tensor(const Word& x, const Word& y);

/// A morphism between bracketed words. In a skeletal 2-group every morphism
/// is an automorphism of the underlying element, so it is fully described by
/// its endpoints and one scalar.
struct Arrow {
  Word source, target;
  AbElement scalar;
};

/// Structure-map factory for one skeleton; composition checks endpoints.
class Evaluator {
 public:
  Evaluator(const FiniteGroup& g, const AbelianGroup& a, const Cochain& assoc);

  Elem value(const Word& w) const;

  Arrow identity(const Word& x) const;
  Arrow associator(const Word& x, const Word& y, const Word& z) const;
  Arrow left_unitor(const Word& x) const;   // 1 x -> x
  Arrow right_unitor(const Word& x) const;  // x 1 -> x
  /// X* X -> 1 with X = g, X* = g^-1.
  Arrow evaluation(Elem g, const AbElement& scalar) const;
  /// 1 -> X X* with X = g, X* = g^-1.
  Arrow coevaluation(Elem g, const AbElement& scalar) const;
  Arrow scalar_arrow(const Word& source, const Word& target, const AbElement& scalar) const;

  /// `first` followed by `second`; throws ShapeMismatch on an endpoint mismatch.
  Arrow then(const Arrow& first, const Arrow& second) const;
  Arrow tensor(const Arrow& f, const Arrow& g) const;
  Arrow inverse(const Arrow& f) const;

  const AbelianGroup& coeffs() const noexcept { return coeffs_; }

 private:
  FiniteGroup group_;
  AbelianGroup coeffs_;
  const Cochain* assoc_;
};

}  // namespace diagram

/// Both pentagon paths ((WX)Y)Z -> W(X(YZ)) for every quadruple; witness is
/// the first (W, X, Y, Z) where they differ.
Verdict check_pentagon(const Cochain& c);
/// (x 1) y -> x y via the associator and left unitor versus the right unitor;
/// witness (x, y).
Verdict check_triangle(const Cochain& c);

/// Whether (ev, coev) scalars make g^-1 a dual of g: both zig-zag composites
/// must be identities.
bool check_zigzag(const TwoGroupSkeleton& t, Elem g, const AbElement& ev, const AbElement& coev);
/// All (ev, coev) pairs passing check_zigzag, in lexicographic order.
std::vector<std::pair<AbElement, AbElement>> duality_data(const TwoGroupSkeleton& t, Elem g);

/// Identity-on-objects functor T -> T2 with coherence isomorphisms
/// J(x, y) : F(x y) -> F(x) F(y). Witness is the first triple where the
/// coherence hexagon fails. With this orientation J = beta relates assoc to
/// assoc + d(beta).
Verdict monoidal_functor_check(const TwoGroupSkeleton& t, const TwoGroupSkeleton& t2,
                               const Cochain& j);

/// Object of the pointed fusion category: multiplicity of each simple K_g.
/// Zero multiplicities are never stored.
struct FusionObject {
  std::map<Elem, std::uint64_t> dims;

  static FusionObject simple(Elem g) { return FusionObject{{{g, 1}}}; }
  friend bool operator==(const FusionObject&, const FusionObject&) = default;
};

FusionObject fusion_unit(const TwoGroupSkeleton& t);
FusionObject fusion_sum(const FusionObject& x, const FusionObject& y);
FusionObject fusion_tensor(const TwoGroupSkeleton& t, const FusionObject& x, const FusionObject& y);

}  // namespace twogrp
