#include "lda/echelon.hpp"

#include <algorithm>
#include <string>

namespace lda {

namespace {
constexpr std::size_t kLazyTerms = 15;
}  // namespace

EchelonState::EchelonState(const Field &f, std::size_t ambient_dim)
    : field_(f), ambient_(ambient_dim) {}

bool EchelonState::residual(std::span<const std::uint64_t> v, std::vector<std::uint64_t> &out) const {
  out.assign(v.begin(), v.end());
  const std::size_t r = rank();
  if (r == 0) {
    return std::any_of(out.begin(), out.end(), [](std::uint64_t x) { return x != 0; });
  }
  std::vector<unsigned __int128> acc(ambient_, 0);
  std::size_t pending = 0;
  std::uint64_t active_rows = 0;
  for (std::size_t k = 0; k < r; ++k) {
    const std::uint64_t c = v[pivots_[k]];
    if (c == 0) continue;
    ++active_rows;
    const std::uint64_t *row = rows_.data() + k * ambient_;
    for (std::size_t j = 0; j < ambient_; ++j) acc[j] += static_cast<unsigned __int128>(c) * row[j];
    if (++pending == kLazyTerms) {
      for (auto &x : acc) x = field_.reduce_wide(x);
      pending = 0;
    }
  }
  count_mul(active_rows * ambient_);
  count_add(active_rows * ambient_);
  bool nonzero = false;
  for (std::size_t j = 0; j < ambient_; ++j) {
    out[j] = field_.sub_raw(out[j], field_.reduce_wide(acc[j]));
    nonzero |= out[j] != 0;
  }
  return nonzero;
}

EchelonState::ExtendResult EchelonState::try_extend(const FlatVector &v) {
  if (v.size() != ambient_) {
    throw DimensionError("vector length " + std::to_string(v.size()) + " does not match ambient dimension " +
                         std::to_string(ambient_));
  }
  if (!(v.field() == field_)) throw ContextError("echelon state field mismatch");

  // A full-rank state spans everything; no vector can extend it.
  if (rank() >= ambient_) return {false};
  std::vector<std::uint64_t> w;
  if (!residual(v.raw(), w)) return {false};

  const std::size_t r = rank();
  const std::size_t inserted = r;  // accepted vectors so far == rank
  std::size_t pivot = 0;
  while (w[pivot] == 0) ++pivot;

  // New row's transform: e_new - sum_k c_k T_k, then scaled like the row.
  std::vector<std::uint64_t> t_new(inserted + 1, 0);
  t_new[inserted] = 1;
  std::uint64_t muls = 0;
  for (std::size_t k = 0; k < r; ++k) {
    const std::uint64_t c = v[pivots_[k]];
    if (c == 0) continue;
    const auto &tk = transform_[k];
    for (std::size_t j = 0; j < tk.size(); ++j) t_new[j] = field_.sub_raw(t_new[j], field_.mul_raw(c, tk[j]));
    muls += tk.size();
  }

  const std::uint64_t s = field_.inv_raw(w[pivot]);
  count_inv();
  for (auto &x : w) x = field_.mul_raw(x, s);
  for (auto &x : t_new) x = field_.mul_raw(x, s);
  muls += ambient_ + t_new.size();

#ifndef LDA_MUTATION_RREF_PIVOT
  // Clear the new pivot column from the existing rows.
  for (std::size_t k = 0; k < r; ++k) {
    std::uint64_t *row = rows_.data() + k * ambient_;
    const std::uint64_t c = row[pivot];
    if (c == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) row[j] = field_.sub_raw(row[j], field_.mul_raw(c, w[j]));
    auto &tk = transform_[k];
    tk.resize(inserted + 1, 0);
    for (std::size_t j = 0; j < tk.size(); ++j) tk[j] = field_.sub_raw(tk[j], field_.mul_raw(c, t_new[j]));
    muls += ambient_ + tk.size();
  }
#endif
  count_mul(muls);
  count_add(muls);

  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos * ambient_), w.begin(), w.end());
  transform_.insert(transform_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(t_new));
  return {true};
}

bool EchelonState::contains(const FlatVector &v) const {
  if (v.size() != ambient_) throw DimensionError("vector length does not match ambient dimension");
  std::vector<std::uint64_t> w;
  return !residual(v.raw(), w);
}

std::optional<std::vector<std::uint64_t>> EchelonState::coordinates(const FlatVector &v) const {
  if (v.size() != ambient_) throw DimensionError("vector length does not match ambient dimension");
  std::vector<std::uint64_t> w;
  if (residual(v.raw(), w)) return std::nullopt;
  const std::size_t r = rank();
  std::vector<unsigned __int128> acc(r, 0);
  std::size_t pending = 0;
  std::uint64_t muls = 0;
  for (std::size_t k = 0; k < r; ++k) {
    const std::uint64_t c = v[pivots_[k]];
    if (c == 0) continue;
    const auto &tk = transform_[k];
    for (std::size_t j = 0; j < tk.size(); ++j) acc[j] += static_cast<unsigned __int128>(c) * tk[j];
    muls += tk.size();
    if (++pending == kLazyTerms) {
      for (auto &x : acc) x = field_.reduce_wide(x);
      pending = 0;
    }
  }
  count_mul(muls);
  count_add(muls);
  std::vector<std::uint64_t> coords(r);
  for (std::size_t j = 0; j < r; ++j) coords[j] = field_.reduce_wide(acc[j]);
  return coords;
}

bool EchelonState::is_reduced() const {
  for (std::size_t k = 0; k < rank(); ++k) {
    if (k > 0 && pivots_[k] <= pivots_[k - 1]) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::uint64_t expect = (i == k) ? 1 : 0;
      if (rows_[i * ambient_ + pivots_[k]] != expect) return false;
    }
    // Leading entry: nothing nonzero before the pivot.
    for (std::size_t j = 0; j < pivots_[k]; ++j)
      if (rows_[k * ambient_ + j] != 0) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> solve_coordinates(std::span<const FlatVector> basis,
                                                            const FlatVector &target) {
  EchelonState state(target.field(), target.size());
  for (const auto &b : basis) {
    if (!state.try_extend(b).extended) throw std::invalid_argument("solve_coordinates: basis is linearly dependent");
  }
  return state.coordinates(target);
}

}  // namespace lda
