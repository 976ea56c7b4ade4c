#include "twogrp/group.hpp"

#include <algorithm>
#include <numeric>

namespace twogrp {

namespace {

[[noreturn]] void not_a_group(const std::string& reason, std::vector<std::int64_t> witness,
                              const std::string& msg) {
  throw Error(ErrorCode::NotAGroup, "not a group (" + reason + "): " + msg, std::move(witness),
              reason);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::size_t parse_size(const std::string& spec, const std::string& digits) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
      digits.size() > 6) {
    throw Error(ErrorCode::UnsupportedSpec, "bad size in group spec '" + spec + "'");
  }
  return static_cast<std::size_t>(std::stoul(digits));
}

}  // namespace

FiniteGroup::FiniteGroup() {
  auto d = std::make_shared<Data>();
  d->order = 1;
  d->name = "trivial";
  d->table = {0};
  d->inverse = {0};
  data_ = std::move(d);
}

void FiniteGroup::check_index(Elem x) const {
  if (x >= data_->order) {
    throw Error(ErrorCode::IndexOutOfRange,
                "element " + std::to_string(x) + " out of range for group of order " +
                    std::to_string(data_->order),
                {static_cast<std::int64_t>(x)});
  }
}

Elem FiniteGroup::mul(Elem x, Elem y) const {
  check_index(x);
  check_index(y);
  return mul_unchecked(x, y);
}

Elem FiniteGroup::inv(Elem x) const {
  check_index(x);
  return inv_unchecked(x);
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  const auto n = order();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = data_->table[i * n + j];
  return t;
}

bool FiniteGroup::is_abelian() const noexcept {
  const auto n = order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data_->table[i * n + j] != data_->table[j * n + i]) return false;
  return true;
}

std::size_t FiniteGroup::element_order(Elem x) const {
  check_index(x);
  std::size_t k = 1;
  for (Elem y = x; y != 0; y = mul_unchecked(y, x)) ++k;
  return k;
}

FiniteGroup group_from_table(const std::vector<std::vector<std::int64_t>>& table,
                             std::string name) {
  const std::size_t n = table.size();
  if (n == 0) not_a_group("closure", {}, "empty table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      not_a_group("closure", {static_cast<std::int64_t>(i)},
                  "row " + std::to_string(i) + " has length " + std::to_string(table[i].size()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= static_cast<std::int64_t>(n)) {
        not_a_group("closure", {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                    "entry out of range");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[0][i] != static_cast<std::int64_t>(i) || table[i][0] != static_cast<std::int64_t>(i)) {
      not_a_group("identity", {static_cast<std::int64_t>(i)}, "element 0 is not a two-sided identity");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      seen_row[static_cast<std::size_t>(table[i][j])] = 1;
      seen_col[static_cast<std::size_t>(table[j][i])] = 1;
    }
    if (std::count(seen_row.begin(), seen_row.end(), 1) != static_cast<long>(n) ||
        std::count(seen_col.begin(), seen_col.end(), 1) != static_cast<long>(n)) {
      not_a_group("inverse", {static_cast<std::int64_t>(i)},
                  "row/column " + std::to_string(i) + " is not a permutation");
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto xy = static_cast<std::size_t>(table[x][y]);
        const auto yz = static_cast<std::size_t>(table[y][z]);
        if (table[xy][z] != table[x][yz]) {
          not_a_group("associativity",
                      {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y),
                       static_cast<std::int64_t>(z)},
                      "(xy)z != x(yz)");
        }
      }

  auto d = std::make_shared<FiniteGroup::Data>();
  d->order = n;
  d->name = std::move(name);
  d->table.resize(n * n);
  d->inverse.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d->table[i * n + j] = static_cast<Elem>(table[i][j]);
      if (table[i][j] == 0) d->inverse[i] = static_cast<Elem>(j);
    }
  return FiniteGroup(std::move(d));
}

FiniteGroup cyclic(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::UnsupportedSpec, "cyclic(n) needs n >= 1");
  std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::int64_t>((i + j) % n);
  return group_from_table(t, n == 1 ? "trivial" : "cyclic:" + std::to_string(n));
}

FiniteGroup dihedral(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::UnsupportedSpec, "dihedral(n) needs n >= 1");
  const std::size_t order = 2 * n;
  std::vector<std::vector<std::int64_t>> t(order, std::vector<std::int64_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
      // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
      const std::size_t k = b == 0 ? (a + c) % n : (a + n - c) % n;
      t[x][y] = static_cast<std::int64_t>(k + n * ((b + d) % 2));
    }
  return group_from_table(t, "dihedral:" + std::to_string(n));
}

FiniteGroup symmetric(std::size_t n) {
  if (n < 1 || n > 4) throw Error(ErrorCode::UnsupportedSpec, "symmetric(n) supports 1 <= n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t order = perms.size();
  std::vector<std::vector<std::int64_t>> t(order, std::vector<std::int64_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) {
      std::vector<int> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[i][static_cast<std::size_t>(perms[j][x])];
      t[i][j] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  return group_from_table(t, "symmetric:" + std::to_string(n));
}

FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order(), order = ng * nh;
  std::vector<std::vector<std::int64_t>> t(order, std::vector<std::int64_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const Elem a = g.mul_unchecked(static_cast<Elem>(x / nh), static_cast<Elem>(y / nh));
      const Elem b = h.mul_unchecked(static_cast<Elem>(x % nh), static_cast<Elem>(y % nh));
      t[x][y] = static_cast<std::int64_t>(a * nh + b);
    }
  return group_from_table(t, "product:(" + g.name() + "),(" + h.name() + ")");
}

FiniteGroup group_construct(const std::string& raw) {
  std::string spec = trim(raw);
  while (spec.size() >= 2 && spec.front() == '(' && spec.back() == ')') {
    spec = trim(spec.substr(1, spec.size() - 2));
  }
  if (spec == "trivial") return cyclic(1);
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::UnsupportedSpec, "unsupported group spec '" + raw + "'");
  }
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (family == "cyclic") return cyclic(parse_size(raw, rest));
  if (family == "dihedral") return dihedral(parse_size(raw, rest));
  if (family == "symmetric") return symmetric(parse_size(raw, rest));
  if (family == "product") {
    const auto parts = split_top_level(rest);
    if (parts.size() < 2) {
      throw Error(ErrorCode::UnsupportedSpec, "product needs at least two factors: '" + raw + "'");
    }
    FiniteGroup acc = group_construct(parts[0]);
    for (std::size_t k = 1; k < parts.size(); ++k) acc = product(acc, group_construct(parts[k]));
    return acc;
  }
  throw Error(ErrorCode::UnsupportedSpec, "unknown group family '" + family + "'");
}

Elem group_mul(const FiniteGroup& g, Elem x, Elem y) { return g.mul(x, y); }
Elem group_inv(const FiniteGroup& g, Elem x) { return g.inv(x); }

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Elem> gens;
  std::vector<char> in_span(n, 0);
  in_span[0] = 1;
  auto close = [&] {
    // Closure under right multiplication by generators suffices in a finite group.
    std::vector<Elem> frontier;
    for (std::size_t x = 0; x < n; ++x)
      if (in_span[x]) frontier.push_back(static_cast<Elem>(x));
    while (!frontier.empty()) {
      const Elem x = frontier.back();
      frontier.pop_back();
      for (Elem s : gens) {
        const Elem y = g.mul_unchecked(x, s);
        if (!in_span[y]) {
          in_span[y] = 1;
          frontier.push_back(y);
        }
      }
    }
  };
  for (std::size_t x = 1; x < n; ++x) {
    if (!in_span[x]) {
      gens.push_back(static_cast<Elem>(x));
      close();
    }
  }
  return gens;
}

bool is_automorphism(const FiniteGroup& g, const GroupAutomorphism& phi) {
  const std::size_t n = g.order();
  if (phi.image.size() != n || phi.image[0] != 0) return false;
  std::vector<char> seen(n, 0);
  for (Elem y : phi.image) {
    if (y >= n || seen[y]) return false;
    seen[y] = 1;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Elem xy = g.mul_unchecked(static_cast<Elem>(x), static_cast<Elem>(y));
      if (phi.image[xy] != g.mul_unchecked(phi.image[x], phi.image[y])) return false;
    }
  return true;
}

std::vector<GroupAutomorphism> group_automorphisms(const FiniteGroup& g, std::size_t max_order) {
  const std::size_t n = g.order();
  if (n > max_order) {
    throw Error(ErrorCode::SizeBound, "automorphism search limited to |G| <= " +
                                          std::to_string(max_order) + ", got " + std::to_string(n));
  }
  const auto gens = greedy_generators(g);
  std::vector<std::size_t> gen_order(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) gen_order[k] = g.element_order(gens[k]);

  // BFS word for each element: x = parent[x] * gens[via[x]].
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::size_t> via(n, 0);
  std::vector<Elem> bfs{0};
  std::vector<char> reached(n, 0);
  reached[0] = 1;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = g.mul_unchecked(bfs[head], gens[k]);
      if (!reached[y]) {
        reached[y] = 1;
        parent[y] = bfs[head];
        via[y] = k;
        bfs.push_back(y);
      }
    }
  }

  std::vector<GroupAutomorphism> out;
  std::vector<Elem> images(gens.size());
  std::vector<char> used(n, 0);
  auto try_extend = [&] {
    GroupAutomorphism phi{std::vector<Elem>(n, 0)};
    for (std::size_t idx = 1; idx < bfs.size(); ++idx) {
      const Elem x = bfs[idx];
      phi.image[x] =
          g.mul_unchecked(phi.image[static_cast<std::size_t>(parent[x])], images[via[x]]);
    }
    if (is_automorphism(g, phi)) out.push_back(std::move(phi));
  };
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      try_extend();
      return;
    }
    for (std::size_t y = 1; y < n; ++y) {
      if (used[y] || g.element_order(static_cast<Elem>(y)) != gen_order[k]) continue;
      used[y] = 1;
      images[k] = static_cast<Elem>(y);
      self(self, k + 1);
      used[y] = 0;
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

GroupAutomorphism compose(const GroupAutomorphism& outer, const GroupAutomorphism& inner) {
  GroupAutomorphism r{std::vector<Elem>(inner.image.size())};
  for (std::size_t x = 0; x < inner.image.size(); ++x) r.image[x] = outer.image.at(inner.image[x]);
  return r;
}

GroupAutomorphism inverse(const GroupAutomorphism& phi) {
  GroupAutomorphism r{std::vector<Elem>(phi.image.size())};
  for (std::size_t x = 0; x < phi.image.size(); ++x) r.image.at(phi.image[x]) = static_cast<Elem>(x);
  return r;
}

}  // namespace twogrp
