#include "twogrp/correspondence.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>

namespace twogrp {

namespace {

std::size_t order_of(const FiniteGroup& g) { return g.order(); }
std::size_t order_of(const AbelianGroup& a) { return static_cast<std::size_t>(a.order()); }

void check_truncation(std::size_t n, const char* what) {
  if (n > 3) {
    throw Error(ErrorCode::DimensionBound,
                std::string(what) + " is built up to degree 3, requested " + std::to_string(n));
  }
}

std::vector<std::size_t> model_sizes(const FiniteGroup& g, const AbelianGroup& a, std::size_t top) {
  const std::size_t n = order_of(g), m = order_of(a);
  const std::vector<std::size_t> all{1, n, n * n * m, n * n * n * m * m * m};
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top) + 1};
}

// Faces and degeneracies on levels <= 2, shared by both models.
Cell low_face(const FiniteGroup& g, const AbelianGroup& a, std::size_t n, std::size_t i, Cell x) {
  if (n == 1) return 0;
  const auto [f, h, s] = decode_cell2(g, a, x);
  (void)s;
  if (i == 0) return h;
  if (i == 1) return g.mul(f, h);
  return f;
}

Cell low_degeneracy(const FiniteGroup& g, const AbelianGroup& a, std::size_t n, std::size_t i,
                    Cell x) {
  if (n == 0) return 0;
  const auto z = a.zero();
  return i == 0 ? encode_cell2(g, a, 0, x, z) : encode_cell2(g, a, x, 0, z);
}

// 3-cells with faces (g, h; s0), (fg, h; s1), (f, gh; s2), (f, g; s3).
struct FaceScalars {
  Elem f, g, h;
  AbElement s[4];
};

Cell face_of(const FiniteGroup& G, const AbelianGroup& A, const FaceScalars& c, std::size_t i) {
  switch (i) {
    case 0: return encode_cell2(G, A, c.g, c.h, c.s[0]);
    case 1: return encode_cell2(G, A, G.mul(c.f, c.g), c.h, c.s[1]);
    case 2: return encode_cell2(G, A, c.f, G.mul(c.g, c.h), c.s[2]);
    default: return encode_cell2(G, A, c.f, c.g, c.s[3]);
  }
}

FaceScalars duskin_faces(const DuskinCell3& c) {
  return {c.f, c.g, c.h, {c.theta[0], c.theta[2], c.theta[1], c.theta[3]}};
}

FaceScalars pullback_faces(const AbelianGroup& A, const Cochain& alpha, const PullbackCell3& c) {
  const AbElement d = alpha.at({c.f, c.g, c.h});
  return {c.f, c.g, c.h, {A.add(c.a, d), A.add(c.a, c.b), A.add(c.b, c.c), c.c}};
}

Cell mixed6(const FiniteGroup& G, const AbelianGroup& A, Elem f, Elem g, Elem h, const AbElement& x,
            const AbElement& y, const AbElement& z) {
  const std::size_t n = order_of(G), m = order_of(A);
  std::size_t r = (static_cast<std::size_t>(f) * n + g) * n + h;
  r = ((r * m + A.index_of(x)) * m + A.index_of(y)) * m + A.index_of(z);
  return static_cast<Cell>(r);
}

struct Unpacked6 {
  Elem f, g, h;
  AbElement x, y, z;
};

Unpacked6 unmix6(const FiniteGroup& G, const AbelianGroup& A, Cell cell) {
  const std::size_t n = order_of(G), m = order_of(A);
  std::size_t r = cell;
  const std::size_t iz = r % m; r /= m;
  const std::size_t iy = r % m; r /= m;
  const std::size_t ix = r % m; r /= m;
  const auto h = static_cast<Elem>(r % n); r /= n;
  const auto g = static_cast<Elem>(r % n); r /= n;
  const auto f = static_cast<Elem>(r);
  return {f, g, h, A.element_at(ix), A.element_at(iy), A.element_at(iz)};
}

void check_model_pair(const FiniteGroup& g, const AbelianGroup& a, const TruncatedSSet& s) {
  if (s.level_sizes() != model_sizes(g, a, s.truncation())) {
    throw Error(ErrorCode::ShapeMismatch, "simplicial set does not have the shape of a model");
  }
}

}  // namespace

Cell encode_cell2(const FiniteGroup& g, const AbelianGroup& a, Elem f, Elem h, const AbElement& s) {
  return static_cast<Cell>((static_cast<std::size_t>(f) * g.order() + h) * order_of(a) +
                           a.index_of(s));
}

std::tuple<Elem, Elem, AbElement> decode_cell2(const FiniteGroup& g, const AbelianGroup& a, Cell x) {
  const std::size_t m = order_of(a), n = g.order();
  const std::size_t s = x % m, rest = x / m;
  return {static_cast<Elem>(rest / n), static_cast<Elem>(rest % n), a.element_at(s)};
}

DuskinCell3 decode_duskin3(const TwoGroupSkeleton& t, Cell x) {
  const auto u = unmix6(t.group, t.coeffs, x);
  DuskinCell3 c{u.f, u.g, u.h, {}};
  c.theta[1] = u.x;
  c.theta[2] = u.y;
  c.theta[3] = u.z;
  const auto& A = t.coeffs;
  c.theta[0] = A.sub(A.add(A.add(t.assoc.at({u.f, u.g, u.h}), u.y), u.z), u.x);
  return c;
}

Cell encode_duskin3(const TwoGroupSkeleton& t, const DuskinCell3& c) {
  return mixed6(t.group, t.coeffs, c.f, c.g, c.h, c.theta[1], c.theta[2], c.theta[3]);
}

PullbackCell3 decode_pullback3(const FiniteGroup& g, const AbelianGroup& a, Cell x) {
  auto u = unmix6(g, a, x);
  return {u.f, u.g, u.h, std::move(u.x), std::move(u.y), std::move(u.z)};
}

Cell encode_pullback3(const FiniteGroup& g, const AbelianGroup& a, const PullbackCell3& c) {
  return mixed6(g, a, c.f, c.g, c.h, c.a, c.b, c.c);
}

TruncatedSSet duskin_nerve(const TwoGroupSkeleton& t, std::size_t truncation) {
  check_truncation(truncation, "the Duskin nerve");
  const FiniteGroup& G = t.group;
  const AbelianGroup& A = t.coeffs;
  const auto sizes = model_sizes(G, A, truncation);
  for (auto s : sizes) {
    if (s > kMaxLevelCells) throw Error(ErrorCode::SizeBound, "Duskin nerve level too large");
  }

  // Level 3: every (f, g, h, theta0..theta3) satisfying the constraint. The
  // constraint fixes theta0, so the survivors are indexed by the other labels.
  std::vector<DuskinCell3> cells3;
  if (truncation >= 3) {
    cells3.resize(sizes[3]);
    std::vector<bool> seen(sizes[3], false);
    const auto elems = A.enumerate();
    const auto n = static_cast<Elem>(G.order());
    for (Elem f = 0; f < n; ++f)
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) {
          const AbElement d = t.assoc.at({f, g, h});
          for (const auto& t1 : elems)
            for (const auto& t2 : elems)
              for (const auto& t3 : elems) {
                const AbElement rhs = A.add(A.add(d, t2), t3);
                for (const auto& t0 : elems) {
                  if (A.add(t0, t1) != rhs) continue;
                  DuskinCell3 c{f, g, h, {t0, t1, t2, t3}};
                  const Cell x = encode_duskin3(t, c);
                  if (seen[x]) throw std::logic_error("Duskin 3-cell enumerated twice");
                  seen[x] = true;
                  cells3[x] = std::move(c);
                }
              }
        }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw std::logic_error("Duskin level 3 is missing a cell");
    }
  }

  auto face = [&](std::size_t n, std::size_t i, Cell x) -> Cell {
    if (n <= 2) return low_face(G, A, n, i, x);
    return face_of(G, A, duskin_faces(cells3[x]), i);
  };
  auto degeneracy = [&](std::size_t n, std::size_t i, Cell x) -> Cell {
    if (n <= 1) return low_degeneracy(G, A, n, i, x);
    // The new face pair carries zero, the two old faces carry s.
    const auto [f, h, s] = decode_cell2(G, A, x);
    const auto z = A.zero();
    DuskinCell3 c;
    if (i == 0) c = {0, f, h, {s, z, s, z}};
    else if (i == 1) c = {f, 0, h, {z, s, s, z}};
    else c = {f, h, 0, {z, s, z, s}};
    return encode_duskin3(t, c);
  };
  auto s = TruncatedSSet::tabulate(truncation, sizes, face, degeneracy);
  if (auto v = validate_simplicial(s); !v) {
    throw std::logic_error("Duskin nerve violates " + v.detail);
  }
  return s;
}

TruncatedSSet pullback_model(const Cochain& alpha, std::size_t truncation) {
  check_truncation(truncation, "the pullback model");
  const TwoGroupSkeleton t = two_group(alpha.group(), alpha.coeffs(), alpha);
  const FiniteGroup& G = t.group;
  const AbelianGroup& A = t.coeffs;
  const auto sizes = model_sizes(G, A, truncation);
  for (auto s : sizes) {
    if (s > kMaxLevelCells) throw Error(ErrorCode::SizeBound, "pullback model level too large");
  }
  auto face = [&](std::size_t n, std::size_t i, Cell x) -> Cell {
    if (n <= 2) return low_face(G, A, n, i, x);
    return face_of(G, A, pullback_faces(A, t.assoc, decode_pullback3(G, A, x)), i);
  };
  auto degeneracy = [&](std::size_t n, std::size_t i, Cell x) -> Cell {
    if (n <= 1) return low_degeneracy(G, A, n, i, x);
    const auto [f, h, s] = decode_cell2(G, A, x);
    const auto z = A.zero();
    PullbackCell3 c;
    if (i == 0) c = {0, f, h, s, z, z};
    else if (i == 1) c = {f, 0, h, z, s, z};
    else c = {f, h, 0, z, z, s};
    return encode_pullback3(G, A, c);
  };
  auto s = TruncatedSSet::tabulate(truncation, sizes, face, degeneracy);
  if (auto v = validate_simplicial(s); !v) {
    throw std::logic_error("pullback model violates " + v.detail);
  }
  return s;
}

SimplicialMap canonical_iso(const TwoGroupSkeleton& t, SSetPtr duskin, SSetPtr pullback) {
  check_model_pair(t.group, t.coeffs, *duskin);
  check_model_pair(t.group, t.coeffs, *pullback);
  if (duskin->truncation() != pullback->truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "models have different truncations");
  }
  const AbelianGroup& A = t.coeffs;
  const std::size_t top = duskin->truncation();
  std::vector<std::vector<Cell>> comps(top + 1);
  for (std::size_t n = 0; n <= std::min<std::size_t>(top, 2); ++n) {
    comps[n].resize(duskin->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) comps[n][x] = x;
  }
  if (top >= 3) {
    comps[3].resize(duskin->level_size(3));
    for (Cell x = 0; x < comps[3].size(); ++x) {
      const auto d = decode_duskin3(t, x);
      const AbElement c = d.theta[3];
      const AbElement b = A.sub(d.theta[1], d.theta[3]);
      const AbElement a = A.add(A.sub(d.theta[2], d.theta[1]), d.theta[3]);
      comps[3][x] = encode_pullback3(t.group, A, {d.f, d.g, d.h, a, b, c});
    }
  }
  return make_map(std::move(duskin), std::move(pullback), std::move(comps));
}

SimplicialMap canonical_iso(const TwoGroupSkeleton& t, std::size_t truncation) {
  return canonical_iso(t, share(duskin_nerve(t, truncation)),
                       share(pullback_model(t.assoc, truncation)));
}

SimplicialMap project_to_nerve(const FiniteGroup& g, const AbelianGroup& a, SSetPtr model,
                               SSetPtr nerve) {
  check_model_pair(g, a, *model);
  if (model->truncation() != nerve->truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "model and nerve have different truncations");
  }
  const std::size_t top = model->truncation();
  std::vector<std::vector<Cell>> comps(top + 1);
  const std::size_t m = order_of(a);
  const std::size_t per3 = m * m * m;
  for (std::size_t n = 0; n <= top; ++n) {
    comps[n].resize(model->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) {
      // Both encodings put the group elements in front of the scalars.
      comps[n][x] = n <= 1 ? x : static_cast<Cell>(n == 2 ? x / m : x / per3);
    }
  }
  return make_map(std::move(model), std::move(nerve), std::move(comps));
}

SimplicialMap twist_iso(const Cochain& alpha, const Cochain& beta, SSetPtr source, SSetPtr target) {
  const FiniteGroup& G = alpha.group();
  const AbelianGroup& A = alpha.coeffs();
  if (beta.degree() != 2 || !(beta.group() == G) || !(beta.coeffs() == A)) {
    throw Error(ErrorCode::ShapeMismatch, "twist needs a 2-cochain over the same (G, A)");
  }
  check_model_pair(G, A, *source);
  check_model_pair(G, A, *target);
  if (source->truncation() != target->truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "models have different truncations");
  }
  const std::size_t top = source->truncation();
  std::vector<std::vector<Cell>> comps(top + 1);
  for (std::size_t n = 0; n <= std::min<std::size_t>(top, 1); ++n) {
    comps[n].resize(source->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) comps[n][x] = x;
  }
  if (top >= 2) {
    comps[2].resize(source->level_size(2));
    for (Cell x = 0; x < comps[2].size(); ++x) {
      const auto [f, h, s] = decode_cell2(G, A, x);
      comps[2][x] = encode_cell2(G, A, f, h, A.add(s, beta.at({f, h})));
    }
  }
  if (top >= 3) {
    comps[3].resize(source->level_size(3));
    for (Cell x = 0; x < comps[3].size(); ++x) {
      const auto p = decode_pullback3(G, A, x);
      const AbElement bfg = beta.at({p.f, p.g});
      const AbElement bf_gh = beta.at({p.f, G.mul(p.g, p.h)});
      const AbElement bfg_h = beta.at({G.mul(p.f, p.g), p.h});
      // Shift the face scalars and solve back for the labels.
      const AbElement c = A.add(p.c, bfg);
      const AbElement b = A.sub(A.add(p.b, bf_gh), bfg);
      const AbElement a = A.add(A.sub(A.add(p.a, bfg_h), bf_gh), bfg);
      comps[3][x] = encode_pullback3(G, A, {p.f, p.g, p.h, a, b, c});
    }
  }
  return make_map(std::move(source), std::move(target), std::move(comps));
}

std::optional<SimplicialMap> find_pullback_isomorphism(const Cochain& alpha, const Cochain& alpha2) {
  const auto beta = are_cohomologous(alpha, alpha2);
  if (!beta) return std::nullopt;
  auto f = twist_iso(alpha, *beta, share(pullback_model(alpha)), share(pullback_model(alpha2)));
  if (!check_simplicial_map(f) || !check_levelwise_bijective(f)) {
    throw std::logic_error("twist by a coboundary preimage is not an isomorphism");
  }
  return f;
}

SimplicialMap pullback_to_fiber_product(const Cochain& alpha, SSetPtr pullback,
                                        const FiberProduct& fp) {
  const FiniteGroup& G = alpha.group();
  const AbelianGroup& A = alpha.coeffs();
  check_model_pair(G, A, *pullback);
  const std::size_t top = pullback->truncation();
  if (fp.set->truncation() != top) {
    throw Error(ErrorCode::TruncationMismatch, "fiber product has a different truncation");
  }
  const std::size_t m = order_of(A);
  std::vector<std::vector<Cell>> comps(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    comps[n].resize(pullback->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) {
      // W_n cells are (g_n, ..., g_0) with the top component most significant.
      std::pair<Cell, Cell> p;
      if (n <= 1) {
        p = {x, 0};
      } else if (n == 2) {
        p = {static_cast<Cell>(x / m), static_cast<Cell>(x % m)};
      } else {
        const auto c = decode_pullback3(G, A, x);
        const std::size_t top3 = (A.index_of(c.a) * m + A.index_of(c.b)) * m + A.index_of(c.c);
        const std::size_t d = A.index_of(alpha.at({c.f, c.g, c.h}));
        const Elem t[3] = {c.f, c.g, c.h};
        p = {nerve_encode(G, t), static_cast<Cell>(top3 * m + d)};
      }
      const auto& level = fp.pairs[n];
      const auto it = std::lower_bound(level.begin(), level.end(), p);
      if (it == level.end() || *it != p) {
        throw Error(ErrorCode::ShapeMismatch,
                    "pullback cell has no partner in the fiber product",
                    {static_cast<std::int64_t>(n), static_cast<std::int64_t>(x)});
      }
      comps[n][x] = static_cast<Cell>(it - level.begin());
    }
  }
  return make_map(std::move(pullback), fp.set, std::move(comps));
}

bool TheoremReport::passed() const {
  return !stages.empty() &&
         std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.passed; });
}

const StageResult* TheoremReport::first_failure() const {
  for (const auto& s : stages)
    if (!s.passed) return &s;
  return nullptr;
}

namespace {

StageResult from_verdict(std::string name, const Verdict& v) {
  return StageResult{std::move(name), v.holds, true, v.holds ? std::string{} : v.detail,
                     v.witness};
}

StageResult from_error(std::string name, const std::exception& e) {
  StageResult r{std::move(name), false, true, e.what(), {}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) r.witness = err->witness();
  return r;
}

}  // namespace

TheoremReport verify_theorem(const FiniteGroup& g, const AbelianGroup& a, const Cochain& alpha,
                             const TheoremOptions& options) {
  TheoremReport report;
  report.group = g.name();
  report.coeffs = a.describe();
  const std::vector<std::string> names{"construction", "validation",     "iso_forward", "iso_backward",
                                       "naturality",   "fiber_product",  "kan"};
  auto skip_rest = [&] {
    for (std::size_t k = report.stages.size(); k < names.size(); ++k)
      report.stages.push_back({names[k], false, false, "not run: an earlier stage failed", {}});
  };
  const std::size_t top = options.truncation;

  std::optional<TwoGroupSkeleton> t;
  SSetPtr duskin, pullback;
  try {
    t = two_group(g, a, alpha);
    duskin = share(duskin_nerve(*t, top));
    pullback = share(pullback_model(alpha, top));
    report.duskin_sizes = duskin->level_sizes();
    report.pullback_sizes = pullback->level_sizes();
    report.stages.push_back({names[0], true, true, {}, {}});
  } catch (const std::exception& e) {
    report.stages.push_back(from_error(names[0], e));
    skip_rest();
    return report;
  }

  {
    Verdict v = validate_simplicial(*duskin);
    if (v) v = validate_simplicial(*pullback);
    report.stages.push_back(from_verdict(names[1], v));
  }

  SimplicialMap iso = canonical_iso(*t, duskin, pullback);
  report.stages.push_back(from_verdict(names[2], check_simplicial_map(iso)));

  {
    Verdict v = check_levelwise_bijective(iso);
    if (v) v = check_simplicial_map(inverse(iso));
    report.stages.push_back(from_verdict(names[3], v));
  }

  {
    const SSetPtr nerve = share(nerve_bg(g, top));
    const auto pd = project_to_nerve(g, a, duskin, nerve);
    const auto pp = project_to_nerve(g, a, pullback, nerve);
    Verdict v = check_simplicial_map(pd);
    if (v) v = check_simplicial_map(pp);
    if (v) {
      const auto via = compose(pp, iso);
      for (std::size_t n = 0; n <= top && v; ++n)
        for (Cell x = 0; x < duskin->level_size(n); ++x)
          if (via(n, x) != pd(n, x)) {
            v = Verdict::fail({static_cast<std::int64_t>(n), x},
                              "isomorphism does not commute with the projections to BG");
            break;
          }
    }
    report.stages.push_back(from_verdict(names[4], v));
  }

  try {
    const auto classifying = cocycle_as_map(alpha, top);
    const auto wp = w_and_decalage(a, top);
    const FiberProduct fp = fiber_product(classifying, wp.dec);
    const auto m = pullback_to_fiber_product(alpha, pullback, fp);
    Verdict v = check_simplicial_map(m);
    if (v) v = check_levelwise_bijective(m);
    report.stages.push_back(from_verdict(names[5], v));
  } catch (const std::exception& e) {
    report.stages.push_back(from_error(names[5], e));
  }

  try {
    report.stages.push_back(from_verdict(names[6], is_kan(*duskin, std::min(options.kan_up_to, top))));
  } catch (const std::exception& e) {
    report.stages.push_back(from_error(names[6], e));
  }
  return report;
}

}  // namespace twogrp
