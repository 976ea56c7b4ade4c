#include "twogrp/coeff.hpp"

#include <limits>
#include <sstream>

namespace twogrp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeBound: return "SizeBound";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::TruncationMismatch: return "TruncationMismatch";
    case ErrorCode::DimensionBound: return "DimensionBound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(
      mod_floor(static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m), m));
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  order_ = 1;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const auto f = factors_[k];
    if (f < 2) {
      throw Error(ErrorCode::InvalidFactor,
                  "invariant factor " + std::to_string(f) + " at position " + std::to_string(k) +
                      " is < 2",
                  {static_cast<std::int64_t>(k)});
    }
    if (order_ > std::numeric_limits<std::int64_t>::max() / f) {
      throw Error(ErrorCode::SizeBound, "abelian group order overflows 64 bits");
    }
    order_ *= f;
  }
}

bool AbelianGroup::contains(const AbElement& x) const noexcept {
  if (x.residues.size() != factors_.size()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (x.residues[k] < 0 || x.residues[k] >= factors_[k]) return false;
  }
  return true;
}

void AbelianGroup::check_shape(const AbElement& x) const {
  if (!contains(x)) {
    throw Error(ErrorCode::ShapeMismatch,
                "element does not belong to " + describe() + " (wrong length or unreduced)");
  }
}

AbElement AbelianGroup::add(const AbElement& x, const AbElement& y) const {
  check_shape(x);
  check_shape(y);
  AbElement z = x;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    z.residues[k] = (x.residues[k] + y.residues[k]) % factors_[k];
  }
  return z;
}

AbElement AbelianGroup::neg(const AbElement& x) const {
  check_shape(x);
  AbElement z = x;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    z.residues[k] = x.residues[k] == 0 ? 0 : factors_[k] - x.residues[k];
  }
  return z;
}

AbElement AbelianGroup::scale(std::int64_t s, const AbElement& x) const {
  check_shape(x);
  AbElement z = x;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    z.residues[k] = mul_mod(mod_floor(s, factors_[k]), x.residues[k], factors_[k]);
  }
  return z;
}

std::size_t AbelianGroup::index_of(const AbElement& x) const {
  check_shape(x);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    idx = idx * static_cast<std::size_t>(factors_[k]) + static_cast<std::size_t>(x.residues[k]);
  }
  return idx;
}

AbElement AbelianGroup::element_at(std::size_t index) const {
  if (index >= static_cast<std::size_t>(order_)) {
    throw Error(ErrorCode::IndexOutOfRange, "element index " + std::to_string(index) +
                                                " out of range for " + describe());
  }
  AbElement x = zero();
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const auto f = static_cast<std::size_t>(factors_[k]);
    x.residues[k] = static_cast<std::int64_t>(index % f);
    index /= f;
  }
  return x;
}

std::vector<AbElement> AbelianGroup::enumerate() const {
  std::vector<AbElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) out.push_back(element_at(i));
  return out;
}

std::size_t AbelianGroup::add_index(std::size_t i, std::size_t j) const {
  // Mixed-radix digitwise addition without allocating.
  std::size_t out = 0, weight = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const auto f = static_cast<std::size_t>(factors_[k]);
    const std::size_t d = (i % f + j % f) % f;
    out += d * weight;
    weight *= f;
    i /= f;
    j /= f;
  }
  return out;
}

std::size_t AbelianGroup::neg_index(std::size_t i) const {
  std::size_t out = 0, weight = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const auto f = static_cast<std::size_t>(factors_[k]);
    const std::size_t d = (f - i % f) % f;
    out += d * weight;
    weight *= f;
    i /= f;
  }
  return out;
}

std::string AbelianGroup::describe() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << "+";
    os << "Z" << factors_[k];
  }
  return os.str();
}

AbelianGroup ab_make(std::vector<std::int64_t> invariant_factors) {
  return AbelianGroup(std::move(invariant_factors));
}

AbElement ab_add(const AbelianGroup& a, const AbElement& x, const AbElement& y) {
  return a.add(x, y);
}

AbElement ab_neg(const AbelianGroup& a, const AbElement& x) { return a.neg(x); }

std::vector<AbElement> ab_enumerate(const AbelianGroup& a) { return a.enumerate(); }

}  // namespace twogrp
