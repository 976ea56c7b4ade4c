#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twogrp/correspondence.hpp"

using namespace twogrp;

namespace {

Cochain carry_cocycle(std::size_t n, std::int64_t m) {
  return Cochain::from_function(cyclic(n), ab_make({m}), 3, [n, m](std::span<const Elem> t) {
    return AbElement{{static_cast<std::int64_t>(t[0] * ((t[1] + t[2]) / n)) % m}};
  });
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

TwoGroupSkeleton skeleton(const Cochain& alpha) {
  return two_group(alpha.group(), alpha.coeffs(), alpha);
}

std::int64_t horn_count(const TruncatedSSet& s, std::size_t n, std::size_t i,
                        std::size_t expected_fillers, bool& all_match) {
  std::int64_t horns = 0;
  for_each_horn(s, n, i, [&](const Horn& h) {
    ++horns;
    if (fillers(s, h).size() != expected_fillers) all_match = false;
    return true;
  });
  return horns;
}

}  // namespace

TEST_CASE("Duskin nerve shape") {
  const auto alpha = carry_cocycle(3, 3);
  const auto t = skeleton(alpha);
  const auto d = duskin_nerve(t);
  CHECK(d.level_sizes() == std::vector<std::size_t>{1, 3, 27, 729});
  CHECK(validate_simplicial(d));
  CHECK(duskin_nerve(t, 2).level_sizes() == std::vector<std::size_t>{1, 3, 27});
  CHECK(code_of([&] { duskin_nerve(t, 4); }) == ErrorCode::DimensionBound);

  // Independent count of quadruples satisfying the constraint.
  std::size_t count = 0;
  for (int f = 0; f < 3; ++f)
    for (int g = 0; g < 3; ++g)
      for (int h = 0; h < 3; ++h) {
        const auto a = alpha.at({Elem(f), Elem(g), Elem(h)}).residues[0];
        for (int t0 = 0; t0 < 3; ++t0)
          for (int t1 = 0; t1 < 3; ++t1)
            for (int t2 = 0; t2 < 3; ++t2)
              for (int t3 = 0; t3 < 3; ++t3)
                if ((t0 + t1) % 3 == (a + t2 + t3) % 3) ++count;
      }
  CHECK(count == d.level_size(3));
}

TEST_CASE("Duskin faces and degeneracies") {
  const auto alpha = carry_cocycle(4, 4);
  const auto t = skeleton(alpha);
  const auto d = duskin_nerve(t);
  const auto& G = t.group;
  const auto& A = t.coeffs;
  for (Cell x = 0; x < d.level_size(3); x += 37) {
    const auto c = decode_duskin3(t, x);
    CHECK(encode_duskin3(t, c) == x);
    const auto lhs = (c.theta[0].residues[0] + c.theta[1].residues[0]) % 4;
    const auto rhs =
        (alpha.at({c.f, c.g, c.h}).residues[0] + c.theta[2].residues[0] + c.theta[3].residues[0]) % 4;
    CHECK(lhs == rhs);
    CHECK(d.face(3, 0, x) == encode_cell2(G, A, c.g, c.h, c.theta[0]));
    CHECK(d.face(3, 1, x) == encode_cell2(G, A, G.mul(c.f, c.g), c.h, c.theta[2]));
    CHECK(d.face(3, 2, x) == encode_cell2(G, A, c.f, G.mul(c.g, c.h), c.theta[1]));
    CHECK(d.face(3, 3, x) == encode_cell2(G, A, c.f, c.g, c.theta[3]));
  }
  const AbElement s{{3}}, z{{0}};
  const Cell x = encode_cell2(G, A, 1, 2, s);
  CHECK(d.face(2, 0, x) == 2);
  CHECK(d.face(2, 1, x) == 3);
  CHECK(d.face(2, 2, x) == 1);
  CHECK(d.degeneracy(1, 0, 2) == encode_cell2(G, A, 0, 2, z));
  CHECK(d.degeneracy(1, 1, 2) == encode_cell2(G, A, 2, 0, z));
  // The inserted identity edge meets faces labelled zero.
  const auto s0 = decode_duskin3(t, d.degeneracy(2, 0, x));
  CHECK((s0.f == 0 && s0.g == 1 && s0.h == 2));
  CHECK(s0.theta[1] == z);
  CHECK(s0.theta[3] == z);
  const auto s2 = decode_duskin3(t, d.degeneracy(2, 2, x));
  CHECK((s2.f == 1 && s2.g == 2 && s2.h == 0));
  CHECK(s2.theta[0] == z);
  CHECK(s2.theta[2] == z);
}

TEST_CASE("Duskin horn fillers") {
  for (const auto& alpha : {carry_cocycle(2, 2), carry_cocycle(3, 3), carry_cocycle(4, 2)}) {
    const auto t = skeleton(alpha);
    const auto d = duskin_nerve(t);
    const std::size_t n = t.group.order(), m = static_cast<std::size_t>(t.coeffs.order());
    CAPTURE(n);
    for (std::size_t i = 0; i <= 2; ++i) {
      bool ok = true;
      CHECK(horn_count(d, 2, i, m, ok) == static_cast<std::int64_t>(n * n));
      CHECK(ok);
    }
    // Three faces fix every edge and, through the constraint, the fourth label.
    for (std::size_t i = 0; i <= 3; ++i) {
      bool ok = true;
      CHECK(horn_count(d, 3, i, 1, ok) == static_cast<std::int64_t>(n * n * n * m * m * m));
      CHECK(ok);
    }
    CHECK(is_kan(d, 3));
  }
}

TEST_CASE("pullback model") {
  const auto alpha = carry_cocycle(3, 3);
  const auto p = pullback_model(alpha);
  CHECK(validate_simplicial(p));
  CHECK(p.level_sizes() == std::vector<std::size_t>{1, 3, 27, 729});
  const auto& G = alpha.group();
  const auto& A = alpha.coeffs();
  const PullbackCell3 c{2, 2, 1, AbElement{{1}}, AbElement{{2}}, AbElement{{0}}};
  const Cell x = encode_pullback3(G, A, c);
  // alpha(2, 2, 1) = 2 * ((2 + 1) / 3) = 2
  CHECK(p.face(3, 0, x) == encode_cell2(G, A, 2, 1, AbElement{{0}}));
  CHECK(p.face(3, 1, x) == encode_cell2(G, A, 1, 1, AbElement{{0}}));
  CHECK(p.face(3, 2, x) == encode_cell2(G, A, 2, 0, AbElement{{2}}));
  CHECK(p.face(3, 3, x) == encode_cell2(G, A, 2, 2, AbElement{{0}}));

  Cochain broken = alpha;
  broken.set({1, 1, 1}, AbElement{{1}});
  CHECK(code_of([&] { pullback_model(broken); }) == ErrorCode::NotACocycle);
  CHECK(code_of([&] { pullback_model(alpha, 4); }) == ErrorCode::DimensionBound);
}

TEST_CASE("canonical isomorphism") {
  for (const auto& alpha : {carry_cocycle(2, 2), carry_cocycle(3, 3), carry_cocycle(4, 4)}) {
    const auto t = skeleton(alpha);
    const SSetPtr d = share(duskin_nerve(t));
    const SSetPtr p = share(pullback_model(alpha));
    const auto iso = canonical_iso(t, d, p);
    CHECK(check_simplicial_map(iso));
    CHECK(check_levelwise_bijective(iso));
    CHECK(check_simplicial_map(inverse(iso)));
    const SSetPtr nerve = share(nerve_bg(t.group, 3));
    const auto pd = project_to_nerve(t.group, t.coeffs, d, nerve);
    const auto pp = project_to_nerve(t.group, t.coeffs, p, nerve);
    CHECK(check_simplicial_map(pd));
    CHECK(check_simplicial_map(pp));
    CHECK(compose(pp, iso).components == pd.components);
  }

  // Explicit values on one cell of C3 with A = Z/3.
  const auto alpha = carry_cocycle(3, 3);
  const auto t = skeleton(alpha);
  const auto iso = canonical_iso(t);
  DuskinCell3 c{1, 2, 2, {}};
  c.theta[1] = AbElement{{2}};
  c.theta[2] = AbElement{{0}};
  c.theta[3] = AbElement{{1}};
  const auto image = decode_pullback3(t.group, t.coeffs, iso(3, encode_duskin3(t, c)));
  CHECK(image.c.residues[0] == 1);
  CHECK(image.b.residues[0] == 1);  // 2 - 1
  CHECK(image.a.residues[0] == 2);  // 0 - 2 + 1
}

TEST_CASE("a corrupted model breaks the isomorphism") {
  const auto alpha = carry_cocycle(2, 2);
  const auto t = skeleton(alpha);
  const auto d = duskin_nerve(t);
  const Cell x = 5;
  const Cell old = d.face(3, 0, x);
  const SSetPtr bad = share(d.with_face(3, 0, x, old ^ 1u));
  CHECK_FALSE(validate_simplicial(*bad));
  const auto iso = canonical_iso(t, bad, share(pullback_model(alpha)));
  const auto v = check_simplicial_map(iso);
  CHECK_FALSE(v);
  CHECK(v.witness == std::vector<std::int64_t>{3, 0, x});
}

TEST_CASE("cohomologous cocycles give isomorphic models") {
  std::mt19937_64 rng(7);
  const auto alpha = carry_cocycle(3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto beta = oracle::random_normalized(alpha.group(), alpha.coeffs(), 2, rng);
    const auto alpha2 = alpha + coboundary(beta);
    const SSetPtr src = share(pullback_model(alpha));
    const SSetPtr dst = share(pullback_model(alpha2));
    const auto f = twist_iso(alpha, beta, src, dst);
    CHECK(check_simplicial_map(f));
    CHECK(check_levelwise_bijective(f));
    const auto found = find_pullback_isomorphism(alpha, alpha2);
    REQUIRE(found.has_value());
    CHECK(check_simplicial_map(*found));
  }
  CHECK_FALSE(find_pullback_isomorphism(alpha, alpha.scaled(2)).has_value());
  CHECK_FALSE(find_pullback_isomorphism(alpha, Cochain(alpha.group(), alpha.coeffs(), 3)).has_value());
}

TEST_CASE("pullback model is the fiber product") {
  for (const auto& alpha : {carry_cocycle(2, 2), carry_cocycle(3, 3), carry_cocycle(4, 2)}) {
    const SSetPtr p = share(pullback_model(alpha));
    const auto wp = w_and_decalage(alpha.coeffs(), 3);
    const auto fp = fiber_product(cocycle_as_map(alpha, 3), wp.dec);
    CHECK(fp.set->level_sizes() == p->level_sizes());
    const auto m = pullback_to_fiber_product(alpha, p, fp);
    CHECK(check_simplicial_map(m));
    CHECK(check_levelwise_bijective(m));
  }
}

TEST_CASE("verify_theorem") {
  const auto g = cyclic(2);
  const auto a = ab_make({2});
  const auto h = cohomology(g, a, 3);
  for (const auto& alpha : all_class_representatives(h)) {
    const auto report = verify_theorem(g, a, alpha);
    CHECK(report.passed());
    REQUIRE(report.stages.size() == 7);
    CHECK(report.stages[0].name == "construction");
    CHECK(report.stages[6].name == "kan");
    CHECK(report.duskin_sizes == std::vector<std::size_t>{1, 2, 8, 64});
    CHECK(report.first_failure() == nullptr);
  }

  const auto s3 = dihedral(3);
  const auto hs = cohomology(s3, ab_make({2}), 3);
  for (const auto& alpha : all_class_representatives(hs)) {
    CHECK(verify_theorem(s3, ab_make({2}), alpha).passed());
  }

  Cochain broken(g, a, 3);
  broken.set({1, 1, 1}, AbElement{{1}});
  broken.set({1, 0, 1}, AbElement{{1}});
  const auto bad = verify_theorem(g, a, broken);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.first_failure() != nullptr);
  CHECK(bad.first_failure()->name == "construction");
  CHECK_FALSE(bad.first_failure()->witness.empty());
  CHECK_FALSE(bad.stages[1].ran);
}
