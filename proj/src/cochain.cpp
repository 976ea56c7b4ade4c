#include "twogrp/cochain.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace twogrp {

using linalg::HowellBasis;
using linalg::ModMatrix;

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::size_t>::max() / b) {
      throw Error(ErrorCode::SizeBound, "cochain table size overflows");
    }
    r *= b;
  }
  return r;
}

// Dense tuple index of the u-th normalized tuple.
std::size_t dense_of_normalized(std::size_t u, std::size_t order, std::size_t degree) {
  std::size_t dense = 0, weight = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    const std::size_t digit = u % (order - 1) + 1;
    u /= (order - 1);
    dense += digit * weight;
    weight *= order;
  }
  return dense;
}

// Normalized index of a tuple with no identity entry.
std::size_t normalized_of(std::span<const Elem> args, std::size_t order) {
  std::size_t u = 0;
  for (Elem x : args) u = u * (order - 1) + (x - 1);
  return u;
}

void decode_normalized(std::size_t u, std::size_t order, std::vector<Elem>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(u % (order - 1) + 1);
    u /= (order - 1);
  }
}

// Integer coboundary d: C^n -> C^{n+1} restricted to normalized coordinates,
// reduced mod m. Rows are (n+1)-tuples, columns n-tuples.
ModMatrix coboundary_matrix(const FiniteGroup& g, std::size_t n, std::int64_t m) {
  const std::size_t order = g.order();
  const std::size_t rows = normalized_count(order, n + 1), cols = normalized_count(order, n);
  ModMatrix d(rows, cols, m);
  if (order == 1) return d;
  std::vector<Elem> t(n + 1), face(n);
  for (std::size_t r = 0; r < rows; ++r) {
    decode_normalized(r, order, t);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      // face i: drop first (i = 0), merge t[i-1], t[i] (0 < i <= n), drop last (i = n+1)
      bool degenerate = false;
      for (std::size_t k = 0, src = 0; k < n; ++k) {
        if (i == 0) {
          face[k] = t[k + 1];
        } else if (i == n + 1) {
          face[k] = t[k];
        } else if (k + 1 < i) {
          face[k] = t[k];
        } else if (k + 1 == i) {
          face[k] = g.mul_unchecked(t[k], t[k + 1]);
        } else {
          face[k] = t[k + 1];
        }
        (void)src;
        if (face[k] == 0) degenerate = true;
      }
      if (degenerate) continue;
      d.add_to(r, normalized_of(face, order), (i % 2 == 0) ? 1 : -1);
    }
  }
  return d;
}

std::vector<std::int64_t> component_vector(const Cochain& c, std::size_t k) {
  const std::size_t order = c.group().order();
  const std::size_t count = normalized_count(order, c.degree());
  std::vector<std::int64_t> v(count);
  for (std::size_t u = 0; u < count; ++u)
    v[u] = c.raw(dense_of_normalized(u, order, c.degree()), k);
  return v;
}

void write_component(Cochain& c, std::size_t k, std::span<const std::int64_t> v) {
  const std::size_t order = c.group().order();
  for (std::size_t u = 0; u < v.size(); ++u)
    c.set_raw(dense_of_normalized(u, order, c.degree()), k, v[u]);
}

void check_bounds(const FiniteGroup& g, const AbelianGroup& a, std::size_t n,
                  const SizeBounds& bounds) {
  if (g.order() > bounds.max_group) {
    throw Error(ErrorCode::SizeBound, "|G| = " + std::to_string(g.order()) + " exceeds bound " +
                                          std::to_string(bounds.max_group));
  }
  if (a.order() > bounds.max_coeffs) {
    throw Error(ErrorCode::SizeBound, "|A| = " + std::to_string(a.order()) + " exceeds bound " +
                                          std::to_string(bounds.max_coeffs));
  }
  if (g.order() > 1 && normalized_count(g.order(), n + 1) > bounds.max_rows) {
    throw Error(ErrorCode::SizeBound, "coboundary matrix in degree " + std::to_string(n) +
                                          " exceeds " + std::to_string(bounds.max_rows) + " rows");
  }
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

struct CyclicPiece {
  std::int64_t order;
  Cochain generator;
};

// Cyclic decomposition of H^n(G; Z/m) placed in component k of A.
std::vector<CyclicPiece> component_cohomology(const FiniteGroup& g, const AbelianGroup& a,
                                              std::size_t n, std::size_t k,
                                              CocycleBasis* cocycles) {
  const std::int64_t m = a.factor(k);
  const std::size_t order = g.order();
  const std::size_t cn = normalized_count(order, n);
  std::vector<CyclicPiece> out;
  if (order == 1 && n > 0) return out;

  auto form = linalg::diagonalize(coboundary_matrix(g, n, m), {.col_transform = true,
                                                               .col_inverse = true});
  const ModMatrix& v = *form.col_transform;
  const ModMatrix& vinv = *form.col_inverse;

  // Z^n = sum over t of <(m/s_t) V e_t>, cyclic of order s_t.
  std::vector<std::int64_t> s(cn, m);
  for (std::size_t t = 0; t < form.diagonal.size(); ++t) s[t] = form.diagonal[t];
  std::vector<std::size_t> kept;
  std::vector<std::vector<std::int64_t>> z;
  for (std::size_t t = 0; t < cn; ++t) {
    if (s[t] == 1) continue;
    kept.push_back(t);
    std::vector<std::int64_t> col(cn);
    for (std::size_t i = 0; i < cn; ++i) col[i] = mul_mod(m / s[t], v(i, t), m);
    z.push_back(std::move(col));
  }
  if (cocycles) {
    for (std::size_t q = 0; q < kept.size(); ++q) {
      Cochain c(g, a, n);
      write_component(c, k, z[q]);
      cocycles->generators.push_back(std::move(c));
      cocycles->orders.push_back(s[kept[q]]);
    }
  }
  if (kept.empty()) return out;

  // Relations: s_t g_t = 0 and the z-coordinates of every d(e_j).
  const std::size_t cprev = n == 0 ? 0 : normalized_count(order, n - 1);
  ModMatrix rel(kept.size(), kept.size() + cprev, m);
  for (std::size_t q = 0; q < kept.size(); ++q) rel.set(q, q, s[kept[q]]);
  if (cprev > 0) {
    const ModMatrix dprev = coboundary_matrix(g, n - 1, m);
    std::vector<std::int64_t> b(cn);
    for (std::size_t j = 0; j < cprev; ++j) {
      for (std::size_t i = 0; i < cn; ++i) b[i] = dprev(i, j);
      const auto y = vinv.apply(b);
      for (std::size_t t = 0; t < cn; ++t) {
        const std::int64_t step = m / s[t];
        if (y[t] % step != 0) {
          throw std::logic_error("coboundary outside the cocycle lattice (d^2 != 0)");
        }
      }
      for (std::size_t q = 0; q < kept.size(); ++q) {
        const std::size_t t = kept[q];
        rel.set(q, kept.size() + j, (y[t] / (m / s[t])) % s[t]);
      }
    }
  }
  auto pres = linalg::diagonalize(rel, {.row_inverse = true});
  const ModMatrix& uinv = *pres.row_inverse;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const std::int64_t d = i < pres.diagonal.size() ? pres.diagonal[i] : m;
    if (d == 1) continue;
    std::vector<std::int64_t> gen(cn, 0);
    for (std::size_t q = 0; q < kept.size(); ++q) {
      const std::int64_t coef = uinv(q, i);
      if (!coef) continue;
      for (std::size_t r = 0; r < cn; ++r) gen[r] = (gen[r] + mul_mod(coef, z[q][r], m)) % m;
    }
    Cochain c(g, a, n);
    write_component(c, k, gen);
    out.push_back({d, std::move(c)});
  }
  return out;
}

}  // namespace

std::size_t normalized_count(std::size_t group_order, std::size_t degree) {
  if (group_order == 0) return 0;
  return ipow(group_order - 1, degree);
}

Cochain::Cochain(FiniteGroup g, AbelianGroup a, std::size_t degree)
    : group_(std::move(g)), coeffs_(std::move(a)), degree_(degree) {
  tuples_ = ipow(group_.order(), degree_);
  values_.assign(tuples_ * coeffs_.rank(), 0);
}

std::size_t Cochain::encode(std::span<const Elem> args) const {
  if (args.size() != degree_) {
    throw Error(ErrorCode::DegreeMismatch, "expected " + std::to_string(degree_) +
                                               " arguments, got " + std::to_string(args.size()));
  }
  std::size_t t = 0;
  for (Elem x : args) {
    if (x >= group_.order()) {
      throw Error(ErrorCode::IndexOutOfRange, "cochain argument out of range",
                  {static_cast<std::int64_t>(x)});
    }
    t = t * group_.order() + x;
  }
  return t;
}

std::vector<Elem> Cochain::decode(std::size_t tuple) const {
  std::vector<Elem> args(degree_);
  for (std::size_t i = degree_; i-- > 0;) {
    args[i] = static_cast<Elem>(tuple % group_.order());
    tuple /= group_.order();
  }
  return args;
}

AbElement Cochain::at_index(std::size_t tuple) const {
  if (tuple >= tuples_) throw Error(ErrorCode::IndexOutOfRange, "tuple index out of range");
  const std::size_t r = coeffs_.rank();
  return AbElement{std::vector<std::int64_t>(values_.begin() + static_cast<long>(tuple * r),
                                             values_.begin() + static_cast<long>((tuple + 1) * r))};
}

void Cochain::set_index(std::size_t tuple, const AbElement& v) {
  if (tuple >= tuples_) throw Error(ErrorCode::IndexOutOfRange, "tuple index out of range");
  if (!coeffs_.contains(v)) {
    throw Error(ErrorCode::ShapeMismatch, "value is not an element of " + coeffs_.describe());
  }
  std::copy(v.residues.begin(), v.residues.end(),
            values_.begin() + static_cast<long>(tuple * coeffs_.rank()));
}

void Cochain::set_raw(std::size_t tuple, std::size_t k, std::int64_t v) {
  values_[tuple * coeffs_.rank() + k] = mod_floor(v, coeffs_.factor(k));
}

bool Cochain::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](std::int64_t x) { return x == 0; });
}

void Cochain::check_compatible(const Cochain& o) const {
  if (degree_ != o.degree_) {
    throw Error(ErrorCode::DegreeMismatch, "cochain degrees differ: " + std::to_string(degree_) +
                                               " vs " + std::to_string(o.degree_));
  }
  if (!(coeffs_ == o.coeffs_) || !(group_ == o.group_)) {
    throw Error(ErrorCode::ShapeMismatch, "cochains live over different (G, A)");
  }
}

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(o);
  Cochain r = *this;
  const std::size_t rank = coeffs_.rank();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    r.values_[i] = (values_[i] + o.values_[i]) % coeffs_.factor(i % rank);
  }
  return r;
}

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::scaled(std::int64_t k) const {
  Cochain r = *this;
  const std::size_t rank = coeffs_.rank();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto m = coeffs_.factor(i % rank);
    r.values_[i] = mul_mod(mod_floor(k, m), values_[i], m);
  }
  return r;
}

Cochain coboundary(const Cochain& c) {
  const FiniteGroup& g = c.group();
  const std::size_t n = c.degree(), rank = c.coeffs().rank();
  Cochain d(g, c.coeffs(), n + 1);
  std::vector<Elem> face(n);
  for (std::size_t t = 0; t < d.tuple_count(); ++t) {
    const auto args = d.decode(t);
    std::vector<std::int64_t> acc(rank, 0);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i == 0) face[k] = args[k + 1];
        else if (i == n + 1 || k + 1 < i) face[k] = args[k];
        else if (k + 1 == i) face[k] = g.mul_unchecked(args[k], args[k + 1]);
        else face[k] = args[k + 1];
      }
      const std::size_t ft = c.encode(face);
      for (std::size_t r = 0; r < rank; ++r) {
        acc[r] += (i % 2 == 0) ? c.raw(ft, r) : -c.raw(ft, r);
      }
    }
    for (std::size_t r = 0; r < rank; ++r) d.set_raw(t, r, acc[r]);
  }
  return d;
}

Verdict is_cocycle(const Cochain& c) {
  const Cochain d = coboundary(c);
  const std::size_t rank = c.coeffs().rank();
  for (std::size_t t = 0; t < d.tuple_count(); ++t) {
    for (std::size_t r = 0; r < rank; ++r) {
      if (d.raw(t, r) != 0) {
        const auto args = d.decode(t);
        return Verdict::fail(std::vector<std::int64_t>(args.begin(), args.end()),
                             "coboundary is nonzero");
      }
    }
  }
  return Verdict::pass();
}

Verdict is_normalized(const Cochain& c) {
  const std::size_t rank = c.coeffs().rank();
  for (std::size_t t = 0; t < c.tuple_count(); ++t) {
    const auto args = c.decode(t);
    if (std::find(args.begin(), args.end(), Elem{0}) == args.end()) continue;
    for (std::size_t r = 0; r < rank; ++r) {
      if (c.raw(t, r) != 0) {
        return Verdict::fail(std::vector<std::int64_t>(args.begin(), args.end()),
                             "nonzero value on a tuple containing the identity");
      }
    }
  }
  return Verdict::pass();
}

std::uint64_t CocycleBasis::order() const {
  std::uint64_t acc = 1;
  for (auto o : orders) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(o)) {
      throw Error(ErrorCode::SizeBound, "|Z^n| overflows 64 bits");
    }
    acc *= static_cast<std::uint64_t>(o);
  }
  return acc;
}

CocycleBasis cocycle_solve(const FiniteGroup& g, const AbelianGroup& a, std::size_t n,
                           const SizeBounds& bounds) {
  check_bounds(g, a, n, bounds);
  CocycleBasis basis;
  for (std::size_t k = 0; k < a.rank(); ++k) component_cohomology(g, a, n, k, &basis);
  return basis;
}

CoboundaryReducer::CoboundaryReducer(const FiniteGroup& g, const AbelianGroup& a, std::size_t n)
    : group_(g), coeffs_(a), degree_(n), coords_(normalized_count(g.order(), n)) {
  const std::size_t cprev = n == 0 ? 0 : normalized_count(g.order(), n - 1);
  for (std::size_t k = 0; k < a.rank(); ++k) {
    const std::int64_t m = a.factor(k);
    std::vector<std::vector<std::int64_t>> gens;
    if (cprev > 0 && g.order() > 1) {
      const ModMatrix d = coboundary_matrix(g, n - 1, m);
      for (std::size_t j = 0; j < cprev; ++j) {
        std::vector<std::int64_t> row(coords_ + cprev, 0);
        for (std::size_t i = 0; i < coords_; ++i) row[i] = d(i, j);
        row[coords_ + j] = 1;
        gens.push_back(std::move(row));
      }
    }
    per_component_.emplace_back(std::move(gens), coords_, cprev, m);
  }
}

Cochain CoboundaryReducer::canonical(const Cochain& c) const {
  if (c.degree() != degree_) throw Error(ErrorCode::DegreeMismatch, "reducer degree mismatch");
  if (auto v = is_normalized(c); !v) {
    throw Error(ErrorCode::NotNormalized, "canonical form needs a normalized cochain", v.witness);
  }
  Cochain out = c;
  for (std::size_t k = 0; k < coeffs_.rank(); ++k) {
    const auto red = per_component_[k].reduce(component_vector(c, k));
    write_component(out, k, red.residual);
  }
  return out;
}

std::optional<Cochain> CoboundaryReducer::preimage(const Cochain& c) const {
  if (c.degree() != degree_) throw Error(ErrorCode::DegreeMismatch, "reducer degree mismatch");
  if (degree_ == 0) {
    if (c.is_zero()) return Cochain(group_, coeffs_, 0);
    return std::nullopt;
  }
  if (!is_normalized(c)) return std::nullopt;
  Cochain beta(group_, coeffs_, degree_ - 1);
  for (std::size_t k = 0; k < coeffs_.rank(); ++k) {
    const auto red = per_component_[k].reduce(component_vector(c, k));
    if (std::any_of(red.residual.begin(), red.residual.end(), [](auto x) { return x != 0; })) {
      return std::nullopt;
    }
    write_component(beta, k, red.certificate);
  }
  return beta;
}

CohomologyResult cohomology(const FiniteGroup& g, const AbelianGroup& a, std::size_t n,
                            const SizeBounds& bounds) {
  check_bounds(g, a, n, bounds);
  std::vector<CyclicPiece> pieces;
  for (std::size_t k = 0; k < a.rank(); ++k) {
    auto part = component_cohomology(g, a, n, k, nullptr);
    for (auto& p : part) pieces.push_back(std::move(p));
  }

  // Primary decomposition, then recombine into a divisibility chain.
  std::map<std::int64_t, std::vector<CyclicPiece>> primary;
  for (const auto& piece : pieces) {
    for (auto [p, e] : factorize(piece.order)) {
      std::int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      primary[p].push_back({pe, piece.generator.scaled(piece.order / pe)});
    }
  }
  std::size_t count = 0;
  for (auto& [p, list] : primary) {
    std::stable_sort(list.begin(), list.end(),
                     [](const CyclicPiece& x, const CyclicPiece& y) { return x.order > y.order; });
    count = std::max(count, list.size());
  }
  CohomologyResult result;
  result.reducer = std::make_shared<CoboundaryReducer>(g, a, n);
  std::vector<CyclicPiece> chain;
  for (std::size_t j = 0; j < count; ++j) {
    CyclicPiece acc{1, Cochain(g, a, n)};
    for (auto& [p, list] : primary) {
      if (j < list.size()) {
        acc.order *= list[j].order;
        acc.generator = acc.generator + list[j].generator;
      }
    }
    chain.push_back(std::move(acc));
  }
  std::reverse(chain.begin(), chain.end());  // ascending: d_1 | d_2 | ...
  result.class_count = 1;
  for (auto& c : chain) {
    result.invariant_factors.push_back(c.order);
    result.representatives.push_back(result.reducer->canonical(c.generator));
    if (result.class_count > std::numeric_limits<std::uint64_t>::max() /
                                 static_cast<std::uint64_t>(c.order)) {
      result.class_count = std::numeric_limits<std::uint64_t>::max();
    } else {
      result.class_count *= static_cast<std::uint64_t>(c.order);
    }
  }
  return result;
}

std::vector<Cochain> all_class_representatives(const CohomologyResult& h,
                                               std::uint64_t max_classes) {
  if (h.class_count > max_classes) {
    throw Error(ErrorCode::SizeBound, "too many cohomology classes to enumerate (" +
                                          std::to_string(h.class_count) + ")");
  }
  std::vector<Cochain> out;
  if (!h.reducer) return out;
  const std::size_t r = h.invariant_factors.size();
  std::vector<std::int64_t> coef(r, 0);
  const Cochain zero = h.reducer->zero();
  for (std::uint64_t idx = 0; idx < h.class_count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = r; i-- > 0;) {
      coef[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(h.invariant_factors[i]));
      rest /= static_cast<std::uint64_t>(h.invariant_factors[i]);
    }
    if (r == 0) {
      out.push_back(zero);
      break;
    }
    Cochain c = zero;
    for (std::size_t i = 0; i < r; ++i) c = c + h.representatives[i].scaled(coef[i]);
    out.push_back(h.reducer->canonical(c));
  }
  return out;
}

std::optional<Cochain> are_cohomologous(const Cochain& c1, const Cochain& c2) {
  if (c1.degree() != c2.degree()) {
    throw Error(ErrorCode::DegreeMismatch, "are_cohomologous: degrees " +
                                               std::to_string(c1.degree()) + " and " +
                                               std::to_string(c2.degree()));
  }
  const Cochain diff = c2 - c1;
  if (diff.degree() == 0) {
    if (diff.is_zero()) return Cochain(c1.group(), c1.coeffs(), 0);
    return std::nullopt;
  }
  if (diff.is_zero()) return Cochain(c1.group(), c1.coeffs(), c1.degree() - 1);
  CoboundaryReducer reducer(c1.group(), c1.coeffs(), c1.degree());
  return reducer.preimage(diff);
}

Cochain pull_back_along_automorphism(const GroupAutomorphism& phi, const Cochain& c) {
  if (phi.image.size() != c.group().order()) {
    throw Error(ErrorCode::ShapeMismatch, "automorphism does not match the cochain's group");
  }
  Cochain out(c.group(), c.coeffs(), c.degree());
  std::vector<Elem> img(c.degree());
  const std::size_t rank = c.coeffs().rank();
  for (std::size_t t = 0; t < c.tuple_count(); ++t) {
    const auto args = c.decode(t);
    for (std::size_t i = 0; i < args.size(); ++i) img[i] = phi.image[args[i]];
    const std::size_t src = c.encode(img);
    for (std::size_t r = 0; r < rank; ++r) out.set_raw(t, r, c.raw(src, r));
  }
  return out;
}

std::vector<AutOrbit> cohomology_classes_mod_aut(const FiniteGroup& g, const AbelianGroup& a,
                                                 const SizeBounds& bounds, std::size_t degree) {
  const auto h = cohomology(g, a, degree, bounds);
  const auto classes = all_class_representatives(h);
  const auto autos = group_automorphisms(g, std::max<std::size_t>(12, bounds.max_group));
  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i].raw_values()] = i;

  std::vector<std::int64_t> orbit_of(classes.size(), -1);
  std::vector<AutOrbit> orbits;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    const auto id = static_cast<std::int64_t>(orbits.size());
    std::vector<std::size_t> members{i};
    orbit_of[i] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& phi : autos) {
        const Cochain moved =
            h.reducer->canonical(pull_back_along_automorphism(phi, classes[members[head]]));
        const auto it = index.find(moved.raw_values());
        if (it == index.end()) {
          throw std::logic_error("automorphism image is not a known cohomology class");
        }
        if (orbit_of[it->second] < 0) {
          orbit_of[it->second] = id;
          members.push_back(it->second);
        }
      }
    }
    Cochain best = classes[members[0]];
    for (auto mbr : members)
      if (classes[mbr] < best) best = classes[mbr];
    orbits.push_back({best, members.size()});
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const AutOrbit& x, const AutOrbit& y) { return x.representative < y.representative; });
  return orbits;
}

}  // namespace twogrp
