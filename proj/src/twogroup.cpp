#include "twogrp/twogroup.hpp"

#include <stdexcept>
#include <string>

namespace twogrp {

TwoGroupSkeleton two_group(const FiniteGroup& g, const AbelianGroup& a, const Cochain& alpha) {
  if (alpha.degree() != 3) {
    throw Error(ErrorCode::DegreeMismatch,
                "associator must have degree 3, got " + std::to_string(alpha.degree()));
  }
  if (!(alpha.group() == g) || !(alpha.coeffs() == a)) {
    throw Error(ErrorCode::ShapeMismatch, "associator lives over a different (G, A)");
  }
  if (auto v = is_cocycle(alpha); !v) {
    throw Error(ErrorCode::NotACocycle, "associator is not a 3-cocycle", v.witness);
  }
  if (auto v = is_normalized(alpha); !v) {
    throw Error(ErrorCode::NotNormalized, "associator is not normalized", v.witness);
  }
  return TwoGroupSkeleton{g, a, alpha};
}

namespace diagram {

Word object(Elem g) { return Word{static_cast<std::int64_t>(g)}; }
Word unit_object() { return Word{kUnit}; }
Word tensor(const Word& x, const Word& y) {
  Word w{kTensor};
  w.insert(w.end(), x.begin(), x.end());
  w.insert(w.end(), y.begin(), y.end());
  return w;
}

Evaluator::Evaluator(const FiniteGroup& g, const AbelianGroup& a, const Cochain& assoc)
    : group_(g), coeffs_(a), assoc_(&assoc) {}

namespace {

Elem value_at(const FiniteGroup& g, const Word& w, std::size_t& pos) {
  const std::int64_t head = w.at(pos++);
  if (head == kUnit) return 0;
  if (head == kTensor) {
    const Elem x = value_at(g, w, pos);
    const Elem y = value_at(g, w, pos);
    return g.mul(x, y);
  }
  return static_cast<Elem>(head);
}

}  // namespace

Elem Evaluator::value(const Word& w) const {
  std::size_t pos = 0;
  const Elem v = value_at(group_, w, pos);
  if (pos != w.size()) throw Error(ErrorCode::ShapeMismatch, "malformed tensor word");
  return v;
}

Arrow Evaluator::scalar_arrow(const Word& source, const Word& target,
                              const AbElement& scalar) const {
  if (value(source) != value(target)) {
    throw Error(ErrorCode::ShapeMismatch, "no morphism between distinct objects of a skeleton");
  }
  return Arrow{source, target, scalar};
}

Arrow Evaluator::identity(const Word& x) const { return scalar_arrow(x, x, coeffs_.zero()); }

Arrow Evaluator::associator(const Word& x, const Word& y, const Word& z) const {
  return scalar_arrow(diagram::tensor(diagram::tensor(x, y), z),
                      diagram::tensor(x, diagram::tensor(y, z)),
                      assoc_->at({value(x), value(y), value(z)}));
}

Arrow Evaluator::left_unitor(const Word& x) const {
  return scalar_arrow(diagram::tensor(unit_object(), x), x, coeffs_.zero());
}

Arrow Evaluator::right_unitor(const Word& x) const {
  return scalar_arrow(diagram::tensor(x, unit_object()), x, coeffs_.zero());
}

Arrow Evaluator::evaluation(Elem g, const AbElement& scalar) const {
  return scalar_arrow(diagram::tensor(object(group_.inv(g)), object(g)), unit_object(), scalar);
}

Arrow Evaluator::coevaluation(Elem g, const AbElement& scalar) const {
  return scalar_arrow(unit_object(), diagram::tensor(object(g), object(group_.inv(g))), scalar);
}

Arrow Evaluator::then(const Arrow& first, const Arrow& second) const {
  if (first.target != second.source) {
    throw Error(ErrorCode::ShapeMismatch, "composite of non-composable arrows");
  }
  return Arrow{first.source, second.target, coeffs_.add(first.scalar, second.scalar)};
}

Arrow Evaluator::tensor(const Arrow& f, const Arrow& g) const {
  return Arrow{diagram::tensor(f.source, g.source), diagram::tensor(f.target, g.target),
               coeffs_.add(f.scalar, g.scalar)};
}

Arrow Evaluator::inverse(const Arrow& f) const {
  return Arrow{f.target, f.source, coeffs_.neg(f.scalar)};
}

}  // namespace diagram

using diagram::Arrow;
using diagram::Evaluator;
using diagram::object;

Verdict check_pentagon(const Cochain& c) {
  if (c.degree() != 3) throw Error(ErrorCode::DegreeMismatch, "pentagon needs a 3-cochain");
  const Evaluator ev(c.group(), c.coeffs(), c);
  const auto n = static_cast<Elem>(c.group().order());
  for (Elem w = 0; w < n; ++w) {
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        for (Elem z = 0; z < n; ++z) {
          const auto W = object(w), X = object(x), Y = object(y), Z = object(z);
          using diagram::tensor;
          const Arrow top = ev.then(ev.associator(tensor(W, X), Y, Z),
                                    ev.associator(W, X, tensor(Y, Z)));
          const Arrow bottom = ev.then(
              ev.then(ev.tensor(ev.associator(W, X, Y), ev.identity(Z)),
                      ev.associator(W, tensor(X, Y), Z)),
              ev.tensor(ev.identity(W), ev.associator(X, Y, Z)));
          if (top.source != bottom.source || top.target != bottom.target) {
            throw std::logic_error("pentagon paths have different endpoints");
          }
          if (top.scalar != bottom.scalar) {
            return Verdict::fail({w, x, y, z}, "pentagon paths disagree");
          }
        }
      }
    }
  }
  return Verdict::pass();
}

Verdict check_triangle(const Cochain& c) {
  if (c.degree() != 3) throw Error(ErrorCode::DegreeMismatch, "triangle needs a 3-cochain");
  const Evaluator ev(c.group(), c.coeffs(), c);
  const auto n = static_cast<Elem>(c.group().order());
  const auto one = diagram::unit_object();
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const auto X = object(x), Y = object(y);
      const Arrow via_assoc =
          ev.then(ev.associator(X, one, Y), ev.tensor(ev.identity(X), ev.left_unitor(Y)));
      const Arrow direct = ev.tensor(ev.right_unitor(X), ev.identity(Y));
      if (via_assoc.scalar != direct.scalar) {
        return Verdict::fail({x, y}, "triangle paths disagree");
      }
    }
  }
  return Verdict::pass();
}

bool check_zigzag(const TwoGroupSkeleton& t, Elem g, const AbElement& ev_scalar,
                  const AbElement& coev_scalar) {
  const Evaluator ev(t.group, t.coeffs, t.assoc);
  const auto X = object(g), Xd = object(t.group.inv(g));
  const Arrow evaluation = ev.evaluation(g, ev_scalar);
  const Arrow coevaluation = ev.coevaluation(g, coev_scalar);

  // X -> 1 X -> (X X*) X -> X (X* X) -> X 1 -> X
  const Arrow first = ev.then(
      ev.then(ev.then(ev.then(ev.inverse(ev.left_unitor(X)),
                              ev.tensor(coevaluation, ev.identity(X))),
                      ev.associator(X, Xd, X)),
              ev.tensor(ev.identity(X), evaluation)),
      ev.right_unitor(X));
  // X* -> X* 1 -> X* (X X*) -> (X* X) X* -> 1 X* -> X*
  const Arrow second = ev.then(
      ev.then(ev.then(ev.then(ev.inverse(ev.right_unitor(Xd)),
                              ev.tensor(ev.identity(Xd), coevaluation)),
                      ev.inverse(ev.associator(Xd, X, Xd))),
              ev.tensor(evaluation, ev.identity(Xd))),
      ev.left_unitor(Xd));
  return first.scalar == ev.identity(X).scalar && second.scalar == ev.identity(Xd).scalar;
}

std::vector<std::pair<AbElement, AbElement>> duality_data(const TwoGroupSkeleton& t, Elem g) {
  std::vector<std::pair<AbElement, AbElement>> out;
  const auto elems = t.coeffs.enumerate();
  for (const auto& e : elems)
    for (const auto& c : elems)
      if (check_zigzag(t, g, e, c)) out.emplace_back(e, c);
  return out;
}

Verdict monoidal_functor_check(const TwoGroupSkeleton& t, const TwoGroupSkeleton& t2,
                               const Cochain& j) {
  if (!(t.group == t2.group) || !(t.coeffs == t2.coeffs) || !(j.group() == t.group) ||
      !(j.coeffs() == t.coeffs)) {
    throw Error(ErrorCode::ShapeMismatch, "functor data over different (G, A)");
  }
  if (j.degree() != 2) throw Error(ErrorCode::DegreeMismatch, "coherence data must have degree 2");
  const Evaluator src(t.group, t.coeffs, t.assoc);
  const Evaluator dst(t2.group, t2.coeffs, t2.assoc);
  using diagram::tensor;
  // F flattens a word to its value and keeps scalars.
  auto F_obj = [&](const diagram::Word& w) { return object(dst.value(w)); };
  auto F = [&](const Arrow& f) { return dst.scalar_arrow(F_obj(f.source), F_obj(f.target), f.scalar); };
  // J(x, y) : F(x y) -> F(x) F(y)
  auto coherence = [&](const diagram::Word& x, const diagram::Word& y) {
    return dst.scalar_arrow(F_obj(tensor(x, y)), tensor(F_obj(x), F_obj(y)),
                            j.at({dst.value(x), dst.value(y)}));
  };
  const auto n = static_cast<Elem>(t.group.order());
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        const auto X = object(x), Y = object(y), Z = object(z);
        // F((xy)z) -> F(x(yz)) -> F(x) F(yz) -> F(x) (F(y) F(z))
        const Arrow top =
            dst.then(dst.then(F(src.associator(X, Y, Z)), coherence(X, tensor(Y, Z))),
                     dst.tensor(dst.identity(X), coherence(Y, Z)));
        // F((xy)z) -> F(xy) F(z) -> (F(x) F(y)) F(z) -> F(x) (F(y) F(z))
        const Arrow bottom =
            dst.then(dst.then(coherence(tensor(X, Y), Z),
                              dst.tensor(coherence(X, Y), dst.identity(Z))),
                     dst.associator(X, Y, Z));
        if (top.source != bottom.source || top.target != bottom.target) {
          throw std::logic_error("hexagon paths have different endpoints");
        }
        if (top.scalar != bottom.scalar) {
          return Verdict::fail({x, y, z}, "functor coherence hexagon fails");
        }
      }
    }
  }
  return Verdict::pass();
}

FusionObject fusion_unit(const TwoGroupSkeleton& t) { return FusionObject::simple(t.unit()); }

FusionObject fusion_sum(const FusionObject& x, const FusionObject& y) {
  FusionObject r = x;
  for (auto [g, m] : y.dims) r.dims[g] += m;
  return r;
}

FusionObject fusion_tensor(const TwoGroupSkeleton& t, const FusionObject& x,
                           const FusionObject& y) {
  FusionObject r;
  for (auto [g, m] : x.dims) {
    for (auto [h, n] : y.dims) {
      if (m == 0 || n == 0) continue;
      r.dims[t.tensor(g, h)] += m * n;
    }
  }
  return r;
}

}  // namespace twogrp
