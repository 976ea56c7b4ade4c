#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace twogrp::linalg {

/// Dense matrix over Z/m, entries kept in [0, m).
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus);

  static ModMatrix identity(std::size_t n, std::int64_t modulus);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t modulus() const noexcept { return m_; }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores `v` reduced mod m.
  void set(std::size_t i, std::size_t j, std::int64_t v);
  void add_to(std::size_t i, std::size_t j, std::int64_t v);

  std::span<std::int64_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const std::int64_t> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;  // this * x

  // Elementary operations; every one is invertible over Z/m.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void scale_row(std::size_t i, std::int64_t unit);
  void scale_col(std::size_t j, std::int64_t unit);
  void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t f);  // dst += f*src
  void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t f);
  /// (row_a, row_b) <- (p*row_a + q*row_b, r*row_a + s*row_b)
  void mix_rows(std::size_t a, std::size_t b, std::int64_t p, std::int64_t q, std::int64_t r,
                std::int64_t s);
  void mix_cols(std::size_t a, std::size_t b, std::int64_t p, std::int64_t q, std::int64_t r,
                std::int64_t s);

  void drop_rows_after(std::size_t count);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::int64_t m_ = 1;
  std::vector<std::int64_t> data_;
};

/// g = gcd(a, b) >= 0 with s*a + t*b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);
std::int64_t gcd(std::int64_t a, std::int64_t b);
/// A unit u of Z/m with u*a = gcd(a, m) (mod m).
std::int64_t normalizing_unit(std::int64_t a, std::int64_t m);
std::int64_t inverse_unit(std::int64_t u, std::int64_t m);

/// U * A * V = diag(d_0, ..., d_{k-1}, 0, ...) over Z/m with each d_i a
/// proper divisor of m (d_i != 0). The diagonal need not be a divisibility
/// chain. Only the requested transforms are tracked; the left transform U
/// itself is never formed.
struct DiagonalForm {
  std::vector<std::int64_t> diagonal;
  std::optional<ModMatrix> col_transform;      // V
  std::optional<ModMatrix> col_inverse;        // V^-1
  std::optional<ModMatrix> row_inverse;        // U^-1
};

struct DiagonalizeOptions {
  bool col_transform = false;
  bool col_inverse = false;
  bool row_inverse = false;
};

DiagonalForm diagonalize(ModMatrix a, DiagonalizeOptions opts);

/// Howell normal form of a submodule of (Z/m)^L, with an attached
/// "certificate" block of width P carried along every row operation.
/// Reduction against it yields the lexicographically smallest element of a
/// coset and the combination of input generators that was subtracted.
class HowellBasis {
 public:
  /// Each generator has length L + P; only the first L entries span the module.
  HowellBasis(std::vector<std::vector<std::int64_t>> generators, std::size_t width,
              std::size_t cert_width, std::int64_t modulus);

  struct Reduction {
    std::vector<std::int64_t> residual;     // length L, lexicographically minimal
    std::vector<std::int64_t> certificate;  // length P, sum of q_k * cert(row_k)
  };
  Reduction reduce(std::span<const std::int64_t> v) const;
  bool contains(std::span<const std::int64_t> v) const;

  std::size_t width() const noexcept { return width_; }
  std::int64_t modulus() const noexcept { return m_; }
  std::size_t pivot_count() const noexcept { return rows_.size(); }
  /// Order of the submodule: product of m / leading entry over pivot rows.
  long double log2_order() const;

 private:
  std::size_t width_, cert_width_;
  std::int64_t m_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivot_col_;
};

}  // namespace twogrp::linalg
