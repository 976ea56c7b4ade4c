#include "twogrp/simplicial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace twogrp {

namespace {

std::string level_name(std::size_t n, std::size_t i) {
  return std::to_string(n) + "," + std::to_string(i);
}

void check_level_size(std::size_t size) {
  if (size > kMaxLevelCells) {
    throw Error(ErrorCode::SizeBound,
                "level with " + std::to_string(size) + " cells exceeds " +
                    std::to_string(kMaxLevelCells));
  }
}

std::size_t checked_product(std::size_t a, std::size_t b) {
  if (b != 0 && a > kMaxLevelCells / b) {
    throw Error(ErrorCode::SizeBound, "level size exceeds " + std::to_string(kMaxLevelCells));
  }
  return a * b;
}

}  // namespace

TruncatedSSet::TruncatedSSet(std::size_t truncation, std::vector<std::size_t> level_sizes,
                             std::vector<std::vector<Table>> faces,
                             std::vector<std::vector<Table>> degeneracies)
    : truncation_(truncation),
      sizes_(std::move(level_sizes)),
      faces_(std::move(faces)),
      degens_(std::move(degeneracies)) {
  if (sizes_.size() != truncation_ + 1) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(truncation_ + 1) +
                                              " level sizes, got " + std::to_string(sizes_.size()));
  }
  for (auto s : sizes_) check_level_size(s);
  if (faces_.size() != truncation_ || degens_.size() != truncation_) {
    throw Error(ErrorCode::ShapeMismatch, "face/degeneracy table count does not match truncation");
  }
  for (std::size_t n = 1; n <= truncation_; ++n) {
    if (faces_[n - 1].size() != n + 1) {
      throw Error(ErrorCode::ShapeMismatch, "level " + std::to_string(n) + " needs " +
                                                std::to_string(n + 1) + " face maps");
    }
    for (std::size_t i = 0; i <= n; ++i) {
      const auto& t = faces_[n - 1][i];
      if (t.size() != sizes_[n]) {
        throw Error(ErrorCode::ShapeMismatch, "face " + level_name(n, i) + " has wrong length");
      }
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (t[x] >= sizes_[n - 1]) {
          throw Error(ErrorCode::ShapeMismatch, "face " + level_name(n, i) + " out of range",
                      {static_cast<std::int64_t>(n), static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(x)});
        }
      }
    }
  }
  for (std::size_t n = 0; n < truncation_; ++n) {
    if (degens_[n].size() != n + 1) {
      throw Error(ErrorCode::ShapeMismatch, "level " + std::to_string(n) + " needs " +
                                                std::to_string(n + 1) + " degeneracies");
    }
    for (std::size_t i = 0; i <= n; ++i) {
      const auto& t = degens_[n][i];
      if (t.size() != sizes_[n]) {
        throw Error(ErrorCode::ShapeMismatch,
                    "degeneracy " + level_name(n, i) + " has wrong length");
      }
      for (std::size_t x = 0; x < t.size(); ++x) {
        if (t[x] >= sizes_[n + 1]) {
          throw Error(ErrorCode::ShapeMismatch, "degeneracy " + level_name(n, i) + " out of range",
                      {static_cast<std::int64_t>(n), static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(x)});
        }
      }
    }
  }
}

TruncatedSSet TruncatedSSet::tabulate(std::size_t truncation, std::vector<std::size_t> level_sizes,
                                      const FaceFn& face, const FaceFn& degeneracy) {
  if (level_sizes.size() != truncation + 1) {
    throw Error(ErrorCode::ShapeMismatch, "level size list does not match truncation");
  }
  for (auto s : level_sizes) check_level_size(s);
  std::vector<std::vector<Table>> faces(truncation), degens(truncation);
  for (std::size_t n = 1; n <= truncation; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      Table t(level_sizes[n]);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = face(n, i, static_cast<Cell>(x));
      faces[n - 1].push_back(std::move(t));
    }
  }
  for (std::size_t n = 0; n < truncation; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      Table t(level_sizes[n]);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = degeneracy(n, i, static_cast<Cell>(x));
      degens[n].push_back(std::move(t));
    }
  }
  return TruncatedSSet(truncation, std::move(level_sizes), std::move(faces), std::move(degens));
}

TruncatedSSet TruncatedSSet::with_face(std::size_t n, std::size_t i, Cell x, Cell value) const {
  auto faces = faces_;
  faces.at(n - 1).at(i).at(x) = value;
  return TruncatedSSet(truncation_, sizes_, std::move(faces), degens_);
}

TruncatedSSet TruncatedSSet::truncated(std::size_t n) const {
  if (n > truncation_) {
    throw Error(ErrorCode::TruncationMismatch, "cannot raise the truncation degree");
  }
  return TruncatedSSet(n, std::vector<std::size_t>(sizes_.begin(), sizes_.begin() + n + 1),
                       std::vector<std::vector<Table>>(faces_.begin(), faces_.begin() + n),
                       std::vector<std::vector<Table>>(degens_.begin(), degens_.begin() + n));
}

Verdict validate_simplicial(const TruncatedSSet& s) {
  const std::size_t top = s.truncation();
  auto fail = [](const char* identity, std::size_t n, std::size_t i, std::size_t j, Cell x) {
    return Verdict::fail({static_cast<std::int64_t>(n), static_cast<std::int64_t>(i),
                          static_cast<std::int64_t>(j), static_cast<std::int64_t>(x)},
                         identity);
  };
  // d_i d_j = d_{j-1} d_i for i < j, on level n.
  for (std::size_t n = 2; n <= top; ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (Cell x = 0; x < s.level_size(n); ++x)
          if (s.face(n - 1, i, s.face(n, j, x)) != s.face(n - 1, j - 1, s.face(n, i, x)))
            return fail("d_i d_j = d_{j-1} d_i", n, i, j, x);
  // s_i s_j = s_{j+1} s_i for i <= j, on level n.
  for (std::size_t n = 0; n + 2 <= top; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        for (Cell x = 0; x < s.level_size(n); ++x)
          if (s.degeneracy(n + 1, i, s.degeneracy(n, j, x)) !=
              s.degeneracy(n + 1, j + 1, s.degeneracy(n, i, x)))
            return fail("s_i s_j = s_{j+1} s_i", n, i, j, x);
  // d_i s_j on level n, with s_j : n -> n+1.
  for (std::size_t n = 0; n + 1 <= top; ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n + 1; ++i) {
        for (Cell x = 0; x < s.level_size(n); ++x) {
          const Cell lhs = s.face(n + 1, i, s.degeneracy(n, j, x));
          if (i == j || i == j + 1) {
            if (lhs != x) return fail("d_j s_j = d_{j+1} s_j = id", n, i, j, x);
          } else if (i < j) {
            if (lhs != s.degeneracy(n - 1, j - 1, s.face(n, i, x)))
              return fail("d_i s_j = s_{j-1} d_i", n, i, j, x);
          } else {
            if (lhs != s.degeneracy(n - 1, j, s.face(n, i - 1, x)))
              return fail("d_i s_j = s_j d_{i-1}", n, i, j, x);
          }
        }
      }
    }
  }
  return Verdict::pass();
}

SimplicialMap make_map(SSetPtr source, SSetPtr target, std::vector<std::vector<Cell>> components) {
  if (!source || !target) throw Error(ErrorCode::ShapeMismatch, "map needs a source and target");
  if (source->truncation() != target->truncation()) {
    throw Error(ErrorCode::TruncationMismatch, "source and target truncations differ");
  }
  if (components.size() != source->truncation() + 1) {
    throw Error(ErrorCode::ShapeMismatch, "one component per level is required");
  }
  for (std::size_t n = 0; n < components.size(); ++n) {
    if (components[n].size() != source->level_size(n)) {
      throw Error(ErrorCode::ShapeMismatch, "component " + std::to_string(n) + " has wrong length");
    }
    for (Cell y : components[n]) {
      if (y >= target->level_size(n)) {
        throw Error(ErrorCode::ShapeMismatch, "component " + std::to_string(n) + " out of range");
      }
    }
  }
  return SimplicialMap{std::move(source), std::move(target), std::move(components)};
}

Verdict check_simplicial_map(const SimplicialMap& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  for (std::size_t n = 1; n <= s.truncation(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      for (Cell x = 0; x < s.level_size(n); ++x)
        if (f(n - 1, s.face(n, i, x)) != t.face(n, i, f(n, x)))
          return Verdict::fail({static_cast<std::int64_t>(n), static_cast<std::int64_t>(i), x},
                               "map does not commute with a face");
  for (std::size_t n = 0; n < s.truncation(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      for (Cell x = 0; x < s.level_size(n); ++x)
        if (f(n + 1, s.degeneracy(n, i, x)) != t.degeneracy(n, i, f(n, x)))
          return Verdict::fail({static_cast<std::int64_t>(n), static_cast<std::int64_t>(i), x},
                               "map does not commute with a degeneracy");
  return Verdict::pass();
}

Verdict check_levelwise_bijective(const SimplicialMap& f) {
  for (std::size_t n = 0; n <= f.source->truncation(); ++n) {
    std::vector<std::int64_t> preimage(f.target->level_size(n), -1);
    for (Cell x = 0; x < f.source->level_size(n); ++x) {
      const Cell y = f(n, x);
      if (preimage[y] >= 0) {
        return Verdict::fail({static_cast<std::int64_t>(n), x}, "two cells share an image");
      }
      preimage[y] = x;
    }
    for (std::size_t y = 0; y < preimage.size(); ++y) {
      if (preimage[y] < 0) {
        return Verdict::fail({static_cast<std::int64_t>(n), static_cast<std::int64_t>(y)},
                             "target cell has no preimage");
      }
    }
  }
  return Verdict::pass();
}

SimplicialMap identity_map(SSetPtr s) {
  std::vector<std::vector<Cell>> comps(s->truncation() + 1);
  for (std::size_t n = 0; n < comps.size(); ++n) {
    comps[n].resize(s->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) comps[n][x] = x;
  }
  return SimplicialMap{s, s, std::move(comps)};
}

SimplicialMap compose(const SimplicialMap& second, const SimplicialMap& first) {
  if (!(*first.target == *second.source)) {
    throw Error(ErrorCode::ShapeMismatch, "maps are not composable");
  }
  auto comps = first.components;
  for (std::size_t n = 0; n < comps.size(); ++n)
    for (auto& y : comps[n]) y = second(n, y);
  return SimplicialMap{first.source, second.target, std::move(comps)};
}

SimplicialMap inverse(const SimplicialMap& f) {
  if (auto v = check_levelwise_bijective(f); !v) {
    throw Error(ErrorCode::ShapeMismatch, "map is not a levelwise bijection", v.witness);
  }
  std::vector<std::vector<Cell>> comps(f.components.size());
  for (std::size_t n = 0; n < comps.size(); ++n) {
    comps[n].resize(f.target->level_size(n));
    for (Cell x = 0; x < f.components[n].size(); ++x) comps[n][f(n, x)] = x;
  }
  return SimplicialMap{f.target, f.source, std::move(comps)};
}

namespace {

void check_horn_shape(const TruncatedSSet& s, const Horn& h) {
  if (h.n < 1 || h.n > s.truncation()) {
    throw Error(ErrorCode::DimensionBound, "horn dimension " + std::to_string(h.n) +
                                               " outside 1.." + std::to_string(s.truncation()));
  }
  if (h.missing > h.n || h.faces.size() != h.n + 1) {
    throw Error(ErrorCode::ShapeMismatch, "malformed horn");
  }
  for (std::size_t k = 0; k <= h.n; ++k) {
    if (k != h.missing && h.faces[k] >= s.level_size(h.n - 1)) {
      throw Error(ErrorCode::ShapeMismatch, "horn face out of range");
    }
  }
}

}  // namespace

bool horn_compatible(const TruncatedSSet& s, const Horn& h) {
  check_horn_shape(s, h);
  if (h.n < 2) return true;
  for (std::size_t k = 0; k <= h.n; ++k) {
    if (k == h.missing) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == h.missing) continue;
      if (s.face(h.n - 1, j, h.faces[k]) != s.face(h.n - 1, k - 1, h.faces[j])) return false;
    }
  }
  return true;
}

std::vector<Cell> fillers(const TruncatedSSet& s, const Horn& h) {
  check_horn_shape(s, h);
  std::vector<Cell> out;
  for (Cell x = 0; x < s.level_size(h.n); ++x) {
    bool match = true;
    for (std::size_t k = 0; k <= h.n && match; ++k)
      if (k != h.missing) match = s.face(h.n, k, x) == h.faces[k];
    if (match) out.push_back(x);
  }
  return out;
}

void for_each_horn(const TruncatedSSet& s, std::size_t n, std::size_t i,
                   const std::function<bool(const Horn&)>& visit) {
  if (n < 1 || n > s.truncation()) {
    throw Error(ErrorCode::DimensionBound, "horn dimension out of range");
  }
  Horn h{n, i, std::vector<Cell>(n + 1, 0)};
  const std::size_t cells = s.level_size(n - 1);
  bool stop = false;
  // Faces are chosen in increasing k; each is checked against earlier ones.
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (stop) return;
    if (k > n) {
      if (!visit(h)) stop = true;
      return;
    }
    if (k == i) {
      place(k + 1);
      return;
    }
    for (Cell x = 0; x < cells && !stop; ++x) {
      bool ok = true;
      if (n >= 2) {
        for (std::size_t j = 0; j < k && ok; ++j)
          if (j != i) ok = s.face(n - 1, j, x) == s.face(n - 1, k - 1, h.faces[j]);
      }
      if (!ok) continue;
      h.faces[k] = x;
      place(k + 1);
    }
    h.faces[k] = 0;
  };
  place(0);
}

Verdict is_kan(const TruncatedSSet& s, std::size_t up_to) {
  if (up_to > s.truncation()) {
    throw Error(ErrorCode::DimensionBound, "Kan check up to " + std::to_string(up_to) +
                                               " exceeds truncation " +
                                               std::to_string(s.truncation()));
  }
  for (std::size_t n = 2; n <= up_to; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      // Face tuples (without slot i) realized by some n-cell.
      std::unordered_map<std::uint64_t, std::vector<std::vector<Cell>>> realized;
      auto key = [&](const std::vector<Cell>& faces) {
        std::uint64_t k = 1469598103934665603ull;
        for (std::size_t t = 0; t <= n; ++t) {
          if (t == i) continue;
          k = (k ^ faces[t]) * 1099511628211ull;
        }
        return k;
      };
      auto strip = [&](std::vector<Cell> faces) {
        faces[i] = 0;
        return faces;
      };
      for (Cell x = 0; x < s.level_size(n); ++x) {
        std::vector<Cell> faces(n + 1);
        for (std::size_t t = 0; t <= n; ++t) faces[t] = s.face(n, t, x);
        faces = strip(std::move(faces));
        auto& bucket = realized[key(faces)];
        if (std::find(bucket.begin(), bucket.end(), faces) == bucket.end()) bucket.push_back(faces);
      }
      Verdict result = Verdict::pass();
      for_each_horn(s, n, i, [&](const Horn& h) {
        const auto it = realized.find(key(h.faces));
        if (it != realized.end() &&
            std::find(it->second.begin(), it->second.end(), h.faces) != it->second.end()) {
          return true;
        }
        std::vector<std::int64_t> w{static_cast<std::int64_t>(n), static_cast<std::int64_t>(i)};
        for (std::size_t t = 0; t <= n; ++t)
          w.push_back(t == i ? -1 : static_cast<std::int64_t>(h.faces[t]));
        result = Verdict::fail(std::move(w), "horn has no filler");
        return false;
      });
      if (!result) return result;
    }
  }
  return Verdict::pass();
}

// Nerve of a group.

Cell nerve_encode(const FiniteGroup& g, std::span<const Elem> tuple) {
  std::size_t x = 0;
  for (Elem e : tuple) x = x * g.order() + e;
  return static_cast<Cell>(x);
}

std::vector<Elem> nerve_decode(const FiniteGroup& g, std::size_t n, Cell x) {
  std::vector<Elem> t(n);
  for (std::size_t k = n; k-- > 0;) {
    t[k] = static_cast<Elem>(x % g.order());
    x /= static_cast<Cell>(g.order());
  }
  return t;
}

TruncatedSSet nerve_bg(const FiniteGroup& g, std::size_t truncation) {
  std::vector<std::size_t> sizes{1};
  for (std::size_t n = 1; n <= truncation; ++n) sizes.push_back(checked_product(sizes.back(), g.order()));
  auto face = [&](std::size_t n, std::size_t i, Cell x) {
    auto t = nerve_decode(g, n, x);
    std::vector<Elem> r;
    r.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      if (i == 0 && k == 0) continue;
      if (i == n && k == n - 1) continue;
      if (i > 0 && i < n && k == i - 1) {
        r.push_back(g.mul_unchecked(t[k], t[k + 1]));
        ++k;
        continue;
      }
      r.push_back(t[k]);
    }
    return nerve_encode(g, r);
  };
  auto degeneracy = [&](std::size_t n, std::size_t i, Cell x) {
    auto t = nerve_decode(g, n, x);
    t.insert(t.begin() + static_cast<long>(i), Elem{0});
    return nerve_encode(g, t);
  };
  return TruncatedSSet::tabulate(truncation, sizes, face, degeneracy);
}

// Dold-Kan Gamma(A[2]).

std::vector<std::vector<int>> surjections_onto_2(std::size_t n) {
  std::vector<std::vector<int>> out;
  const int len = static_cast<int>(n) + 1;
  // Nondecreasing sequences starting at 0, ending at 2, hitting 1.
  for (int first1 = 1; first1 < len; ++first1) {
    for (int first2 = first1 + 1; first2 < len; ++first2) {
      std::vector<int> s(static_cast<std::size_t>(len));
      for (int k = 0; k < len; ++k) s[static_cast<std::size_t>(k)] = k < first1 ? 0 : (k < first2 ? 1 : 2);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialAbelianGroup gamma_a2(const AbelianGroup& a, std::size_t truncation) {
  std::vector<std::vector<std::vector<int>>> surj;
  std::vector<AbelianGroup> groups;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= truncation; ++n) {
    surj.push_back(surjections_onto_2(n));
    std::vector<std::int64_t> factors;
    for (std::size_t k = 0; k < surj[n].size(); ++k)
      for (auto f : a.invariant_factors()) factors.push_back(f);
    std::size_t size = 1;
    for (auto f : factors) size = checked_product(size, static_cast<std::size_t>(f));
    groups.emplace_back(factors);
    sizes.push_back(size);
  }
  const std::size_t rank = a.rank();
  auto index_of = [&](std::size_t n, const std::vector<int>& seq) {
    const auto& list = surj[n];
    const auto it = std::lower_bound(list.begin(), list.end(), seq);
    return (it != list.end() && *it == seq) ? static_cast<std::int64_t>(it - list.begin()) : -1;
  };
  // Summand eta goes to eta o theta when that is still onto [2], else to 0.
  auto induced = [&](std::size_t n, std::size_t m, Cell x, auto&& reindex) {
    const auto v = groups[n].element_at(x).residues;
    AbElement out = groups[m].zero();
    for (std::size_t k = 0; k < surj[n].size(); ++k) {
      const auto target = index_of(m, reindex(surj[n][k]));
      if (target < 0) continue;
      for (std::size_t r = 0; r < rank; ++r) {
        auto& slot = out.residues[static_cast<std::size_t>(target) * rank + r];
        slot = (slot + v[k * rank + r]) % a.factor(r);
      }
    }
    return static_cast<Cell>(groups[m].index_of(out));
  };
  auto face = [&](std::size_t n, std::size_t i, Cell x) {
    return induced(n, n - 1, x, [i](std::vector<int> s) {
      s.erase(s.begin() + static_cast<long>(i));
      return s;
    });
  };
  auto degeneracy = [&](std::size_t n, std::size_t i, Cell x) {
    return induced(n, n + 1, x, [i](std::vector<int> s) {
      s.insert(s.begin() + static_cast<long>(i), s[i]);
      return s;
    });
  };
  SimplicialAbelianGroup out{TruncatedSSet::tabulate(truncation, sizes, face, degeneracy), groups};
  if (auto v = validate_simplicial(out.set); !v) {
    throw std::logic_error("Gamma(A[2]) fails " + v.detail);
  }
  return out;
}

// W-bar and W of a simplicial abelian group.

namespace {

struct WbarCoder {
  const SimplicialAbelianGroup* g;

  // Component t of a level-n cell lives in level n-1-t.
  std::vector<Cell> decode(std::size_t n, Cell x) const {
    std::vector<Cell> comps(n);
    for (std::size_t t = n; t-- > 0;) {
      const auto radix = static_cast<Cell>(g->set.level_size(n - 1 - t));
      comps[t] = x % radix;
      x /= radix;
    }
    return comps;
  }
  Cell encode(std::size_t n, const std::vector<Cell>& comps) const {
    std::size_t x = 0;
    for (std::size_t t = 0; t < n; ++t) x = x * g->set.level_size(n - 1 - t) + comps[t];
    return static_cast<Cell>(x);
  }
  std::size_t size(std::size_t n) const {
    std::size_t s = 1;
    for (std::size_t k = 0; k < n; ++k) s = checked_product(s, g->set.level_size(k));
    return s;
  }
  Cell add(std::size_t level, Cell x, Cell y) const {
    return static_cast<Cell>(g->groups[level].add_index(x, y));
  }

  Cell face(std::size_t n, std::size_t i, Cell x) const {
    const auto c = decode(n, x);
    std::vector<Cell> r;
    r.reserve(n - 1);
    const auto& s = g->set;
    if (i == 0) {
      r.assign(c.begin() + 1, c.end());
    } else if (i < n) {
      for (std::size_t t = 0; t + 1 < i; ++t) r.push_back(s.face(n - 1 - t, i - 1 - t, c[t]));
      r.push_back(add(n - i - 1, s.face(n - i, 0, c[i - 1]), c[i]));
      r.insert(r.end(), c.begin() + static_cast<long>(i) + 1, c.end());
    } else {
      for (std::size_t t = 0; t + 1 < n; ++t) r.push_back(s.face(n - 1 - t, n - 1 - t, c[t]));
    }
    return encode(n - 1, r);
  }

  Cell degeneracy(std::size_t n, std::size_t i, Cell x) const {
    const auto c = decode(n, x);
    std::vector<Cell> r;
    r.reserve(n + 1);
    for (std::size_t t = 0; t < i; ++t) r.push_back(g->set.degeneracy(n - 1 - t, i - 1 - t, c[t]));
    r.push_back(0);  // identity of level n - i
    r.insert(r.end(), c.begin() + static_cast<long>(i), c.end());
    return encode(n + 1, r);
  }
};

}  // namespace

TruncatedSSet wbar(const SimplicialAbelianGroup& g, std::size_t truncation) {
  if (truncation > 0 && g.set.truncation() + 1 < truncation) {
    throw Error(ErrorCode::TruncationMismatch, "simplicial group is truncated too low for Wbar");
  }
  const WbarCoder coder{&g};
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= truncation; ++n) sizes.push_back(coder.size(n));
  auto out = TruncatedSSet::tabulate(
      truncation, sizes, [&](std::size_t n, std::size_t i, Cell x) { return coder.face(n, i, x); },
      [&](std::size_t n, std::size_t i, Cell x) { return coder.degeneracy(n, i, x); });
  if (auto v = validate_simplicial(out); !v) throw std::logic_error("Wbar fails " + v.detail);
  return out;
}

TruncatedSSet w_total(const SimplicialAbelianGroup& g, std::size_t truncation) {
  if (g.set.truncation() < truncation) {
    throw Error(ErrorCode::TruncationMismatch, "simplicial group is truncated too low for W");
  }
  const WbarCoder coder{&g};
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= truncation; ++n) sizes.push_back(coder.size(n + 1));
  auto out = TruncatedSSet::tabulate(
      truncation, sizes,
      [&](std::size_t n, std::size_t i, Cell x) { return coder.face(n + 1, i + 1, x); },
      [&](std::size_t n, std::size_t i, Cell x) { return coder.degeneracy(n + 1, i + 1, x); });
  if (auto v = validate_simplicial(out); !v) throw std::logic_error("W fails " + v.detail);
  return out;
}

TruncatedSSet wbar_b2a(const AbelianGroup& a, std::size_t truncation) {
  return wbar(gamma_a2(a, truncation == 0 ? 0 : truncation - 1), truncation);
}

TruncatedSSet w_b2a(const AbelianGroup& a, std::size_t truncation) {
  return w_total(gamma_a2(a, truncation), truncation);
}

WPair w_and_decalage(const AbelianGroup& a, std::size_t truncation) {
  const auto gamma = gamma_a2(a, truncation);
  auto w = share(w_total(gamma, truncation));
  auto wb = share(wbar(gamma, truncation));
  const WbarCoder coder{&gamma};
  std::vector<std::vector<Cell>> comps(truncation + 1);
  for (std::size_t n = 0; n <= truncation; ++n) {
    comps[n].resize(w->level_size(n));
    for (Cell x = 0; x < comps[n].size(); ++x) comps[n][x] = coder.face(n + 1, 0, x);
  }
  auto dec = make_map(w, wb, std::move(comps));
  return WPair{w, wb, std::move(dec)};
}

SimplicialMap cocycle_as_map(const Cochain& alpha, std::size_t truncation) {
  return cocycle_as_map(alpha, share(nerve_bg(alpha.group(), truncation)),
                        share(wbar_b2a(alpha.coeffs(), truncation)));
}

SimplicialMap cocycle_as_map(const Cochain& alpha, SSetPtr nerve, SSetPtr target) {
  if (alpha.degree() != 3) throw Error(ErrorCode::DegreeMismatch, "cocycle_as_map needs degree 3");
  if (auto v = is_normalized(alpha); !v) {
    throw Error(ErrorCode::NotNormalized, "cochain is not normalized", v.witness);
  }
  const std::size_t top = nerve->truncation();
  if (target->truncation() != top) {
    throw Error(ErrorCode::TruncationMismatch, "nerve and Wbar truncations differ");
  }
  if (top > 4) throw Error(ErrorCode::DimensionBound, "cocycle_as_map supports truncation <= 4");
  const FiniteGroup& g = alpha.group();
  const AbelianGroup& a = alpha.coeffs();
  std::vector<std::vector<Cell>> comps(top + 1);
  for (std::size_t n = 0; n <= std::min<std::size_t>(top, 2); ++n)
    comps[n].assign(nerve->level_size(n), 0);
  if (top >= 3) {
    comps[3].resize(nerve->level_size(3));
    for (Cell x = 0; x < comps[3].size(); ++x) {
      const auto t = nerve_decode(g, 3, x);
      // Wbar_3 = Gamma_2 x Gamma_1 x Gamma_0 and the last two are points.
      comps[3][x] = static_cast<Cell>(a.index_of(alpha.at(t)));
    }
  }
  if (top >= 4) {
    std::map<std::vector<Cell>, Cell> by_faces;
    for (Cell y = 0; y < target->level_size(4); ++y) {
      std::vector<Cell> f(5);
      for (std::size_t i = 0; i <= 4; ++i) f[i] = target->face(4, i, y);
      by_faces.emplace(std::move(f), y);
    }
    comps[4].resize(nerve->level_size(4));
    for (Cell x = 0; x < comps[4].size(); ++x) {
      std::vector<Cell> f(5);
      for (std::size_t i = 0; i <= 4; ++i) f[i] = comps[3][nerve->face(4, i, x)];
      const auto it = by_faces.find(f);
      if (it == by_faces.end()) {
        const auto t = nerve_decode(g, 4, x);
        throw Error(ErrorCode::NotACocycle, "no 4-cell of Wbar(B^2 A) has the required faces",
                    std::vector<std::int64_t>(t.begin(), t.end()));
      }
      comps[4][x] = it->second;
    }
  }
  return make_map(std::move(nerve), std::move(target), std::move(comps));
}

FiberProduct fiber_product(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.source->truncation() != g.source->truncation() ||
      f.target->truncation() != g.target->truncation() || !(*f.target == *g.target)) {
    throw Error(ErrorCode::TruncationMismatch, "fiber product needs a common target and truncation");
  }
  const std::size_t top = f.source->truncation();
  std::vector<std::vector<std::pair<Cell, Cell>>> pairs(top + 1);
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= top; ++n) {
    // Bucket the right-hand cells by image, then sweep the left-hand cells.
    std::vector<std::vector<Cell>> by_image(f.target->level_size(n));
    for (Cell y = 0; y < g.source->level_size(n); ++y) by_image[g(n, y)].push_back(y);
    for (Cell x = 0; x < f.source->level_size(n); ++x)
      for (Cell y : by_image[f(n, x)]) pairs[n].emplace_back(x, y);
    check_level_size(pairs[n].size());
    sizes.push_back(pairs[n].size());
  }
  auto lookup = [&](std::size_t n, std::pair<Cell, Cell> p) {
    const auto it = std::lower_bound(pairs[n].begin(), pairs[n].end(), p);
    if (it == pairs[n].end() || *it != p) {
      throw std::logic_error("fiber product is not closed under structure maps");
    }
    return static_cast<Cell>(it - pairs[n].begin());
  };
  auto set = share(TruncatedSSet::tabulate(
      top, sizes,
      [&](std::size_t n, std::size_t i, Cell c) {
        const auto [x, y] = pairs[n][c];
        return lookup(n - 1, {f.source->face(n, i, x), g.source->face(n, i, y)});
      },
      [&](std::size_t n, std::size_t i, Cell c) {
        const auto [x, y] = pairs[n][c];
        return lookup(n + 1, {f.source->degeneracy(n, i, x), g.source->degeneracy(n, i, y)});
      }));
  std::vector<std::vector<Cell>> left(top + 1), right(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    for (auto [x, y] : pairs[n]) {
      left[n].push_back(x);
      right[n].push_back(y);
    }
  }
  FiberProduct out{set, make_map(set, f.source, std::move(left)),
                   make_map(set, g.source, std::move(right)), std::move(pairs)};
  return out;
}

SimplicialMap mediating_map(const FiberProduct& p, const SimplicialMap& f, const SimplicialMap& g,
                            const SimplicialMap& a, const SimplicialMap& b) {
  if (!(*a.source == *b.source)) throw Error(ErrorCode::ShapeMismatch, "legs have different sources");
  const std::size_t top = a.source->truncation();
  std::vector<std::vector<Cell>> comps(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    for (Cell w = 0; w < a.source->level_size(n); ++w) {
      const std::pair<Cell, Cell> target{a(n, w), b(n, w)};
      if (f(n, target.first) != g(n, target.second)) {
        throw Error(ErrorCode::ShapeMismatch, "square does not commute",
                    {static_cast<std::int64_t>(n), w});
      }
      const auto it = std::lower_bound(p.pairs[n].begin(), p.pairs[n].end(), target);
      comps[n].push_back(static_cast<Cell>(it - p.pairs[n].begin()));
    }
  }
  return make_map(a.source, p.set, std::move(comps));
}

}  // namespace twogrp
