#include "twogrp/modlinalg.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "twogrp/coeff.hpp"

namespace twogrp::linalg {

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus)
    : rows_(rows), cols_(cols), m_(modulus), data_(rows * cols, 0) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
}

ModMatrix ModMatrix::identity(std::size_t n, std::int64_t modulus) {
  ModMatrix id(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) id.set(i, i, 1);
  return id;
}

void ModMatrix::set(std::size_t i, std::size_t j, std::int64_t v) {
  data_[i * cols_ + j] = mod_floor(v, m_);
}

void ModMatrix::add_to(std::size_t i, std::size_t j, std::int64_t v) {
  auto& x = data_[i * cols_ + j];
  x = mod_floor(x + mod_floor(v, m_), m_);
}

std::vector<std::int64_t> ModMatrix::apply(std::span<const std::int64_t> x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    __int128 acc = 0;
    const auto r = row(i);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (r[j] && x[j]) acc = (acc + static_cast<__int128>(r[j]) * x[j]) % m_;
    }
    y[i] = mod_floor(static_cast<std::int64_t>(acc), m_);
  }
  return y;
}

void ModMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
}

void ModMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
}

void ModMatrix::scale_row(std::size_t i, std::int64_t unit) {
  for (auto& x : row(i)) x = mul_mod(x, unit, m_);
}

void ModMatrix::scale_col(std::size_t j, std::int64_t unit) {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& x = data_[i * cols_ + j];
    x = mul_mod(x, unit, m_);
  }
}

void ModMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t f) {
  f = mod_floor(f, m_);
  if (f == 0) return;
  auto d = row(dst);
  const auto s = row(src);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (s[j]) d[j] = (d[j] + mul_mod(f, s[j], m_)) % m_;
  }
}

void ModMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t f) {
  f = mod_floor(f, m_);
  if (f == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto s = data_[i * cols_ + src];
    if (s) {
      auto& d = data_[i * cols_ + dst];
      d = (d + mul_mod(f, s, m_)) % m_;
    }
  }
}

void ModMatrix::mix_rows(std::size_t a, std::size_t b, std::int64_t p, std::int64_t q,
                         std::int64_t r, std::int64_t s) {
  p = mod_floor(p, m_), q = mod_floor(q, m_), r = mod_floor(r, m_), s = mod_floor(s, m_);
  auto ra = row(a), rb = row(b);
  for (std::size_t j = 0; j < cols_; ++j) {
    const auto x = ra[j], y = rb[j];
    if (!x && !y) continue;
    ra[j] = (mul_mod(p, x, m_) + mul_mod(q, y, m_)) % m_;
    rb[j] = (mul_mod(r, x, m_) + mul_mod(s, y, m_)) % m_;
  }
}

void ModMatrix::mix_cols(std::size_t a, std::size_t b, std::int64_t p, std::int64_t q,
                         std::int64_t r, std::int64_t s) {
  p = mod_floor(p, m_), q = mod_floor(q, m_), r = mod_floor(r, m_), s = mod_floor(s, m_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& x = data_[i * cols_ + a];
    auto& y = data_[i * cols_ + b];
    if (!x && !y) continue;
    const auto nx = (mul_mod(p, x, m_) + mul_mod(q, y, m_)) % m_;
    const auto ny = (mul_mod(r, x, m_) + mul_mod(s, y, m_)) % m_;
    x = nx;
    y = ny;
  }
}

void ModMatrix::drop_rows_after(std::size_t count) {
  if (count >= rows_) return;
  rows_ = count;
  data_.resize(rows_ * cols_);
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, cs) = std::make_pair(cs, old_s - q * cs);
    std::tie(old_t, ct) = std::make_pair(ct, old_t - q * ct);
  }
  if (old_r < 0) {
    old_r = -old_r, old_s = -old_s, old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  std::int64_t s, t;
  return ext_gcd(a, b, s, t);
}

std::int64_t inverse_unit(std::int64_t u, std::int64_t m) {
  std::int64_t s, t;
  const auto g = ext_gcd(mod_floor(u, m), m, s, t);
  if (g != 1) throw std::logic_error("inverse_unit: not a unit");
  return mod_floor(s, m);
}

std::int64_t normalizing_unit(std::int64_t a, std::int64_t m) {
  a = mod_floor(a, m);
  if (m == 1) return 0;
  if (a == 0) return 1;
  const std::int64_t g = gcd(a, m);
  const std::int64_t mg = m / g;
  std::int64_t base = mg == 1 ? 0 : inverse_unit(a / g, mg);
  // Lift base (a unit mod m/g) to a unit mod m.
  for (std::int64_t u = base;; u += mg) {
    if (gcd(u, m) == 1) return mod_floor(u, m);
  }
}

namespace {

// Row echelon by gcd row operations; rows are not tracked. Returns number of
// nonzero rows, which are moved to the top.
std::size_t echelon_untracked(ModMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  const std::int64_t m = a.modulus();
  std::size_t cur = 0;
  for (std::size_t j = 0; j < c && cur < r; ++j) {
    std::size_t piv = r;
    for (std::size_t i = cur; i < r; ++i)
      if (a(i, j)) {
        piv = i;
        break;
      }
    if (piv == r) continue;
    a.swap_rows(cur, piv);
    for (std::size_t i = cur + 1; i < r; ++i) {
      const std::int64_t b = a(i, j);
      if (!b) continue;
      const std::int64_t p = a(cur, j);
      if (b % p == 0) {
        a.add_row_multiple(i, cur, -(b / p));
      } else {
        std::int64_t s, t;
        const std::int64_t g = ext_gcd(p, b, s, t);
        a.mix_rows(cur, i, s, t, -(b / g), p / g);
      }
    }
    (void)m;
    ++cur;
  }
  return cur;
}

}  // namespace

DiagonalForm diagonalize(ModMatrix a, DiagonalizeOptions opts) {
  const std::int64_t m = a.modulus();
  DiagonalForm out;
  if (opts.col_transform) out.col_transform = ModMatrix::identity(a.cols(), m);
  if (opts.col_inverse) out.col_inverse = ModMatrix::identity(a.cols(), m);
  if (opts.row_inverse) out.row_inverse = ModMatrix::identity(a.rows(), m);
  if (m == 1) return out;

  if (!opts.row_inverse && a.rows() > a.cols()) {
    a.drop_rows_after(echelon_untracked(a));
  }

  // Column operation bookkeeping: A <- A E, V <- V E, Vinv <- E^-1 Vinv.
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (out.col_transform) out.col_transform->swap_cols(x, y);
    if (out.col_inverse) out.col_inverse->swap_rows(x, y);
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, std::int64_t f) {
    a.add_col_multiple(dst, src, f);
    if (out.col_transform) out.col_transform->add_col_multiple(dst, src, f);
    if (out.col_inverse) out.col_inverse->add_row_multiple(src, dst, -f);
  };
  // (col_x, col_y) <- (s col_x + t col_y, -(b/g) col_x + (a/g) col_y)
  auto col_mix = [&](std::size_t x, std::size_t y, std::int64_t s, std::int64_t t,
                     std::int64_t ag, std::int64_t bg) {
    a.mix_cols(x, y, s, t, -bg, ag);
    if (out.col_transform) out.col_transform->mix_cols(x, y, s, t, -bg, ag);
    if (out.col_inverse) out.col_inverse->mix_rows(x, y, ag, bg, -t, s);
  };
  // Row operation bookkeeping: A <- E A, Uinv <- Uinv E^-1.
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (out.row_inverse) out.row_inverse->swap_cols(x, y);
  };
  auto row_scale = [&](std::size_t x, std::int64_t u) {
    a.scale_row(x, u);
    if (out.row_inverse) out.row_inverse->scale_col(x, inverse_unit(u, m));
  };
  auto row_addmul = [&](std::size_t dst, std::size_t src, std::int64_t f) {
    a.add_row_multiple(dst, src, f);
    if (out.row_inverse) out.row_inverse->add_col_multiple(src, dst, -f);
  };
  auto row_mix = [&](std::size_t x, std::size_t y, std::int64_t s, std::int64_t t,
                     std::int64_t ag, std::int64_t bg) {
    a.mix_rows(x, y, s, t, -bg, ag);
    if (out.row_inverse) out.row_inverse->mix_cols(x, y, ag, bg, -t, s);
  };

  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    // Pivot: nonzero entry generating the largest ideal.
    std::size_t pi = a.rows(), pj = a.cols();
    std::int64_t best = m;
    for (std::size_t i = t; i < a.rows() && best > 1; ++i) {
      const auto r = a.row(i);
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (!r[j]) continue;
        const auto g = gcd(r[j], m);
        if (g < best) {
          best = g, pi = i, pj = j;
          if (g == 1) break;
        }
      }
    }
    if (pi == a.rows()) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool changed = true;
    while (changed) {
      changed = false;
      const std::int64_t u = normalizing_unit(a(t, t), m);
      if (u != 1) row_scale(t, u);
      const std::int64_t p = a(t, t);
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        const std::int64_t b = a(i, t);
        if (!b) continue;
        const std::int64_t pp = a(t, t);
        if (b % pp == 0) {
          row_addmul(i, t, -(b / pp));
        } else {
          std::int64_t s, tt;
          const std::int64_t g = ext_gcd(pp, b, s, tt);
          row_mix(t, i, s, tt, pp / g, b / g);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        const std::int64_t b = a(t, j);
        if (!b) continue;
        const std::int64_t pp = a(t, t);
        if (b % pp == 0) {
          col_addmul(j, t, -(b / pp));
        } else {
          std::int64_t s, tt;
          const std::int64_t g = ext_gcd(pp, b, s, tt);
          col_mix(t, j, s, tt, pp / g, b / g);
          changed = true;
        }
      }
      (void)p;
    }
    out.diagonal.push_back(a(t, t));
  }
  return out;
}

HowellBasis::HowellBasis(std::vector<std::vector<std::int64_t>> generators, std::size_t width,
                         std::size_t cert_width, std::int64_t modulus)
    : width_(width), cert_width_(cert_width), m_(modulus) {
  const std::size_t full = width + cert_width;
  for (auto& g : generators) {
    if (g.size() != full) throw std::invalid_argument("HowellBasis: generator width mismatch");
    for (auto& x : g) x = mod_floor(x, m_);
  }
  if (m_ == 1) return;

  auto mix = [&](std::vector<std::int64_t>& x, std::vector<std::int64_t>& y, std::int64_t p,
                 std::int64_t q, std::int64_t r, std::int64_t s) {
    p = mod_floor(p, m_), q = mod_floor(q, m_), r = mod_floor(r, m_), s = mod_floor(s, m_);
    for (std::size_t k = 0; k < full; ++k) {
      const auto a = x[k], b = y[k];
      x[k] = (mul_mod(p, a, m_) + mul_mod(q, b, m_)) % m_;
      y[k] = (mul_mod(r, a, m_) + mul_mod(s, b, m_)) % m_;
    }
  };
  auto is_zero_image = [&](const std::vector<std::int64_t>& v) {
    for (std::size_t k = 0; k < width_; ++k)
      if (v[k]) return false;
    return true;
  };

  std::vector<std::vector<std::int64_t>> work;
  for (auto& g : generators)
    if (!is_zero_image(g)) work.push_back(std::move(g));

  for (std::size_t col = 0; col < width_ && !work.empty(); ++col) {
    std::size_t piv = work.size();
    for (std::size_t i = 0; i < work.size(); ++i)
      if (work[i][col]) {
        piv = i;
        break;
      }
    if (piv == work.size()) continue;
    std::swap(work[piv], work.back());
    auto pivot = std::move(work.back());
    work.pop_back();
    for (auto& row : work) {
      const std::int64_t b = row[col];
      if (!b) continue;
      const std::int64_t a = pivot[col];
      if (b % a == 0) {
        const std::int64_t f = mod_floor(-(b / a), m_);
        for (std::size_t k = 0; k < full; ++k) row[k] = (row[k] + mul_mod(f, pivot[k], m_)) % m_;
      } else {
        std::int64_t s, t;
        const std::int64_t g = ext_gcd(a, b, s, t);
        mix(pivot, row, s, t, -(b / g), a / g);
      }
    }
    const std::int64_t u = normalizing_unit(pivot[col], m_);
    for (auto& x : pivot) x = mul_mod(x, u, m_);
    const std::int64_t d = pivot[col];
    // Howell closure: (m/d) * pivot vanishes at col and must stay in the span.
    std::vector<std::int64_t> annihilated(full);
    for (std::size_t k = 0; k < full; ++k) annihilated[k] = mul_mod(m_ / d, pivot[k], m_);
    if (!is_zero_image(annihilated)) work.push_back(std::move(annihilated));
    std::erase_if(work, is_zero_image);
    rows_.push_back(std::move(pivot));
    pivot_col_.push_back(col);
  }
  // Reduce entries above each pivot into [0, d).
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t col = pivot_col_[k];
    const std::int64_t d = rows_[k][col];
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t q = rows_[j][col] / d;
      if (!q) continue;
      for (std::size_t t = 0; t < full; ++t)
        rows_[j][t] = mod_floor(rows_[j][t] - mul_mod(q, rows_[k][t], m_), m_);
    }
  }
}

HowellBasis::Reduction HowellBasis::reduce(std::span<const std::int64_t> v) const {
  if (v.size() != width_) throw std::invalid_argument("HowellBasis::reduce: width mismatch");
  Reduction r{std::vector<std::int64_t>(v.begin(), v.end()),
              std::vector<std::int64_t>(cert_width_, 0)};
  for (auto& x : r.residual) x = mod_floor(x, m_);
  if (m_ == 1) return r;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t col = pivot_col_[k];
    const std::int64_t q = r.residual[col] / rows_[k][col];
    if (!q) continue;
    for (std::size_t t = 0; t < width_; ++t)
      r.residual[t] = mod_floor(r.residual[t] - mul_mod(q, rows_[k][t], m_), m_);
    for (std::size_t t = 0; t < cert_width_; ++t)
      r.certificate[t] = (r.certificate[t] + mul_mod(q, rows_[k][width_ + t], m_)) % m_;
  }
  return r;
}

bool HowellBasis::contains(std::span<const std::int64_t> v) const {
  const auto r = reduce(v);
  for (auto x : r.residual)
    if (x) return false;
  return true;
}

long double HowellBasis::log2_order() const {
  long double acc = 0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    acc += std::log2(static_cast<long double>(m_ / rows_[k][pivot_col_[k]]));
  }
  return acc;
}

}  // namespace twogrp::linalg
