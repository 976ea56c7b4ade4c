#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "twogrp/simplicial.hpp"

using namespace twogrp;

namespace {

TruncatedSSet point(std::size_t n) {
  return TruncatedSSet::tabulate(
      n, std::vector<std::size_t>(n + 1, 1), [](std::size_t, std::size_t, Cell) { return Cell{0}; },
      [](std::size_t, std::size_t, Cell) { return Cell{0}; });
}

// The standard 1-simplex truncated at N: n-cells are monotone 0/1 sequences
// of length n+1, indexed by their number of zeros.
TruncatedSSet delta1(std::size_t n_max) {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= n_max; ++n) sizes.push_back(n + 2);
  // Cell z of level n has z zeros followed by n+1-z ones.
  auto face = [](std::size_t, std::size_t i, Cell z) {
    return static_cast<Cell>(i < z ? z - 1 : z);
  };
  auto degeneracy = [](std::size_t, std::size_t i, Cell z) {
    return static_cast<Cell>(i < z ? z + 1 : z);
  };
  return TruncatedSSet::tabulate(n_max, sizes, face, degeneracy);
}

std::vector<std::int64_t> residues(const AbelianGroup& g, Cell x) {
  return g.element_at(x).residues;
}

}  // namespace

TEST_CASE("validation basics") {
  CHECK(validate_simplicial(point(4)));
  CHECK(validate_simplicial(delta1(4)));
  const auto nerve = nerve_bg(cyclic(2), 3);
  CHECK(validate_simplicial(nerve));
  const auto broken = nerve.with_face(2, 1, 3, 1);
  const auto v = validate_simplicial(broken);
  CHECK_FALSE(v);
  CHECK_FALSE(v.detail.empty());
  CHECK(v.witness.size() == 4);
  CHECK_THROWS_AS(nerve.with_face(2, 1, 3, 7), Error);
}

TEST_CASE("nerve of a group") {
  CHECK(nerve_bg(FiniteGroup(), 3).level_sizes() == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(nerve_bg(cyclic(2), 3).level_sizes() == std::vector<std::size_t>{1, 2, 4, 8});
  const auto g = dihedral(3);
  const auto n = nerve_bg(g, 3);
  CHECK(validate_simplicial(n));
  for (Elem f = 0; f < 6; ++f) {
    for (Elem h = 0; h < 6; ++h) {
      const Elem pair[] = {f, h};
      const Cell c = nerve_encode(g, pair);
      CHECK(n.face(2, 0, c) == h);
      CHECK(n.face(2, 1, c) == g.mul(f, h));
      CHECK(n.face(2, 2, c) == f);
    }
  }
  for (const auto* spec : {"cyclic:3", "dihedral:3", "product:cyclic:2,cyclic:2"}) {
    CHECK(is_kan(nerve_bg(group_construct(spec), 3), 3));
  }
}

TEST_CASE("nerve horn fillers") {
  const auto g = dihedral(3);
  const auto n = nerve_bg(g, 3);
  for (Elem f = 0; f < 6; ++f) {
    for (Elem h = 0; h < 6; ++h) {
      const Horn horn{2, 1, {h, 0, f}};
      CHECK(horn_compatible(n, horn));
      const Elem pair[] = {f, h};
      CHECK(fillers(n, horn) == std::vector<Cell>{nerve_encode(g, pair)});
    }
  }
  CHECK_THROWS_AS(fillers(n, Horn{4, 0, {0, 0, 0, 0, 0}}), Error);
}

TEST_CASE("non-Kan fixture") {
  const auto d = delta1(3);
  const auto v = is_kan(d, 2);
  CHECK_FALSE(v);
  REQUIRE(v.witness.size() == 5);
  const Horn h{static_cast<std::size_t>(v.witness[0]), static_cast<std::size_t>(v.witness[1]),
               {}};
  std::vector<Cell> faces;
  for (std::size_t t = 2; t < v.witness.size(); ++t)
    faces.push_back(v.witness[t] < 0 ? 0 : static_cast<Cell>(v.witness[t]));
  const Horn horn{h.n, h.missing, faces};
  CHECK(horn_compatible(d, horn));
  CHECK(fillers(d, horn).empty());
}

TEST_CASE("surjection counts") {
  for (std::size_t n = 0; n <= 5; ++n) {
    // Independent count over all 3^(n+1) sequences.
    std::size_t count = 0;
    std::size_t total = 1;
    for (std::size_t k = 0; k <= n; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<int> s;
      for (std::size_t c = code, k = 0; k <= n; ++k, c /= 3) s.push_back(static_cast<int>(c % 3));
      const bool monotone = std::is_sorted(s.begin(), s.end());
      const bool onto = std::count(s.begin(), s.end(), 0) && std::count(s.begin(), s.end(), 1) &&
                        std::count(s.begin(), s.end(), 2);
      count += monotone && onto;
    }
    CHECK(surjections_onto_2(n).size() == count);
  }
  CHECK(surjections_onto_2(3) ==
        std::vector<std::vector<int>>{{0, 0, 1, 2}, {0, 1, 1, 2}, {0, 1, 2, 2}});
}

TEST_CASE("Gamma(A[2])") {
  CHECK(gamma_a2(ab_make({}), 4).set.level_sizes() == std::vector<std::size_t>{1, 1, 1, 1, 1});
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{2}, {3}, {4}, {2, 2}}) {
    const auto a = ab_make(f);
    const auto g = gamma_a2(a, 4);
    const auto o = static_cast<std::size_t>(a.order());
    CHECK(g.set.level_sizes() == std::vector<std::size_t>{1, 1, o, o * o * o, o * o * o * o * o * o});
    CHECK(validate_simplicial(g.set));
  }
  // Level 3 faces: d_i restricted to A_j is the identity iff i in {j, j+1}.
  const auto a = ab_make({3});
  const auto g = gamma_a2(a, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    AbElement basis = g.groups[3].zero();
    basis.residues[j] = 1;
    const Cell x = static_cast<Cell>(g.groups[3].index_of(basis));
    for (std::size_t i = 0; i <= 3; ++i) {
      const auto image = residues(g.groups[2], g.set.face(3, i, x));
      CHECK(image == std::vector<std::int64_t>{(i == j || i == j + 1) ? 1 : 0});
    }
  }
}

TEST_CASE("Wbar and W of B^2 A") {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{2}, {3}, {4}, {2, 2}}) {
    const auto a = ab_make(f);
    const auto o = static_cast<std::size_t>(a.order());
    CHECK(wbar_b2a(a, 3).level_sizes() == std::vector<std::size_t>{1, 1, 1, o});
    CHECK(wbar_b2a(a, 4).level_sizes() == std::vector<std::size_t>{1, 1, 1, o, o * o * o * o});
    CHECK(w_b2a(a, 3).level_sizes() == std::vector<std::size_t>{1, 1, o, o * o * o * o});
    const auto pair = w_and_decalage(a, 3);
    CHECK(validate_simplicial(*pair.w));
    CHECK(validate_simplicial(*pair.wbar));
    CHECK(check_simplicial_map(pair.dec));
  }
  const auto a2 = ab_make({2});
  CHECK(w_b2a(a2, 3).level_size(3) == 16);
  const auto w4 = w_and_decalage(a2, 4);
  CHECK(w4.w->level_size(4) == 1024);
  CHECK(check_simplicial_map(w4.dec));

  // Level-3 faces of W in the coordinates (a, b, c, d), a single copy of A each.
  const auto a = ab_make({4});
  const auto pair = w_and_decalage(a, 3);
  const auto& w = *pair.w;
  for (Cell x = 0; x < w.level_size(3); ++x) {
    const std::int64_t pa = x / 64, pb = (x / 16) % 4, pc = (x / 4) % 4, pd = x % 4;
    CHECK(w.face(3, 0, x) == static_cast<Cell>((pa + pd) % 4));
    CHECK(w.face(3, 1, x) == static_cast<Cell>((pa + pb) % 4));
    CHECK(w.face(3, 2, x) == static_cast<Cell>((pb + pc) % 4));
    CHECK(w.face(3, 3, x) == static_cast<Cell>(pc));
    CHECK(pair.dec(3, x) == static_cast<Cell>(pd));
  }
  // Level-4 faces of Wbar: (a, b, c, x) -> (x, a+x, a+b, b+c, c), injective
  // onto the tuples with vanishing alternating sum.
  const auto wb = wbar_b2a(a, 4);
  std::set<std::vector<Cell>> images;
  for (Cell y = 0; y < wb.level_size(4); ++y) {
    const std::int64_t pa = y / 64, pb = (y / 16) % 4, pc = (y / 4) % 4, px = y % 4;
    const std::vector<Cell> expect{static_cast<Cell>(px), static_cast<Cell>((pa + px) % 4),
                                   static_cast<Cell>((pa + pb) % 4),
                                   static_cast<Cell>((pb + pc) % 4), static_cast<Cell>(pc)};
    std::vector<Cell> got;
    for (std::size_t i = 0; i <= 4; ++i) got.push_back(wb.face(4, i, y));
    CHECK(got == expect);
    images.insert(got);
  }
  CHECK(images.size() == 256);
}

TEST_CASE("cocycle as a simplicial map") {
  const auto g = cyclic(2);
  const auto a = ab_make({2});
  const auto zero = cocycle_as_map(Cochain(g, a, 3), 4);
  for (const auto& level : zero.components)
    for (Cell y : level) CHECK(y == 0);
  CHECK(check_simplicial_map(zero));

  Cochain alpha(g, a, 3);
  alpha.set({1, 1, 1}, {{1}});
  const auto f = cocycle_as_map(alpha, 3);
  CHECK(f(3, 7) == 1);
  CHECK(check_simplicial_map(f));

  Cochain unnormalized(g, a, 3);
  unnormalized.set({0, 1, 1}, {{1}});
  try {
    cocycle_as_map(unnormalized, 4);
    FAIL("accepted an unnormalized cochain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("level-4 extension exists exactly for cocycles") {
  for (const auto& [spec, f] : std::vector<std::pair<const char*, std::int64_t>>{
           {"cyclic:2", 2}, {"cyclic:3", 2}}) {
    const auto g = group_construct(spec);
    const auto a = ab_make({f});
    const auto nerve = share(nerve_bg(g, 4));
    const auto target = share(wbar_b2a(a, 4));
    std::size_t cocycles = 0, total = 0;
    for (const auto& c : oracle::all_normalized(g, a, 3)) {
      ++total;
      const auto v = is_cocycle(c);
      try {
        const auto m = cocycle_as_map(c, nerve, target);
        CHECK(v);
        CHECK(check_simplicial_map(m));
        ++cocycles;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotACocycle);
        CHECK_FALSE(v);
        CHECK(e.witness() == v.witness);
      }
    }
    CHECK(cocycles == cocycle_solve(g, a, 3).order());
    CHECK(total > cocycles - 1);
  }
}

TEST_CASE("fiber products") {
  const auto g = dihedral(3);
  const auto n = share(nerve_bg(g, 3));
  const auto id = identity_map(n);
  const auto p = fiber_product(id, id);
  CHECK(validate_simplicial(*p.set));
  CHECK(check_simplicial_map(p.left));
  CHECK(check_simplicial_map(p.right));
  CHECK(check_levelwise_bijective(p.left));

  // Preimage of the base point under the map BG -> B(G/...) induced by the sign
  // homomorphism D3 -> C2: the fiber is the nerve-like set of the kernel.
  const auto c2 = cyclic(2);
  const auto n2 = share(nerve_bg(c2, 3));
  std::vector<std::vector<Cell>> comps(4);
  for (std::size_t k = 0; k <= 3; ++k) {
    for (Cell x = 0; x < n->level_size(k); ++x) {
      auto t = nerve_decode(g, k, x);
      for (auto& e : t) e = e / 3;  // reflections have index >= 3
      comps[k].push_back(nerve_encode(c2, t));
    }
  }
  const auto sign = make_map(n, n2, comps);
  CHECK(check_simplicial_map(sign));
  const auto pt = share(point(3));
  const auto base = make_map(pt, n2, {{0}, {0}, {0}, {0}});
  CHECK(check_simplicial_map(base));
  const auto fiber = fiber_product(sign, base);
  CHECK(validate_simplicial(*fiber.set));
  CHECK(fiber.set->level_sizes() == std::vector<std::size_t>{1, 3, 9, 27});
  for (std::size_t k = 0; k <= 3; ++k)
    for (Cell c = 0; c < fiber.set->level_size(k); ++c) CHECK(sign(k, fiber.left(k, c)) == 0);

  // Universal property for the commuting square through the kernel nerve.
  const auto c3 = cyclic(3);
  const auto n3 = share(nerve_bg(c3, 3));
  std::vector<std::vector<Cell>> incl(4);
  for (std::size_t k = 0; k <= 3; ++k)
    for (Cell x = 0; x < n3->level_size(k); ++x) incl[k].push_back(nerve_encode(g, nerve_decode(c3, k, x)));
  const auto inc = make_map(n3, n, incl);
  CHECK(check_simplicial_map(inc));
  const auto to_pt = make_map(n3, pt, {std::vector<Cell>(1, 0), std::vector<Cell>(3, 0),
                                       std::vector<Cell>(9, 0), std::vector<Cell>(27, 0)});
  const auto m = mediating_map(fiber, sign, base, inc, to_pt);
  CHECK(check_simplicial_map(m));
  CHECK(compose(fiber.left, m).components == inc.components);
  CHECK(check_levelwise_bijective(m));

  CHECK_THROWS_AS(fiber_product(sign, identity_map(n)), Error);
}
