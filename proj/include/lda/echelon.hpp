#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lda/matrix.hpp"

namespace lda {

/// Incrementally maintained reduced row-echelon form.
///
/// Alongside the reduced rows the state keeps a transformation record: row k
/// equals sum_j transform[k][j] * inserted[j], where `inserted` are the
/// vectors accepted by try_extend in insertion order. That record is what
/// turns a membership test into coordinates relative to the accepted
/// vectors rather than the reduced rows.
class EchelonState {
 public:
  EchelonState(const Field &f, std::size_t ambient_dim);

  struct ExtendResult {
    bool extended;
  };

  /// Appends v if it is outside the current row space. Throws DimensionError
  /// on length mismatch.
  ExtendResult try_extend(const FlatVector &v);

  /// True iff v lies in the row space. Does not modify the state.
  bool contains(const FlatVector &v) const;

  /// Coordinates of v relative to the accepted vectors, or nullopt when v is
  /// outside the span.
  std::optional<std::vector<std::uint64_t>> coordinates(const FlatVector &v) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const Field &field() const { return field_; }
  std::span<const std::size_t> pivot_cols() const { return pivots_; }
  std::span<const std::uint64_t> row(std::size_t k) const {
    return {rows_.data() + k * ambient_, ambient_};
  }

  /// Re-runs the RREF checks: unit pivots, cleared pivot columns, strictly
  /// increasing pivot order. Used by tests.
  bool is_reduced() const;

 private:
  // Writes v - sum_k v[pivot_k] * row_k into out; returns true if nonzero.
  bool residual(std::span<const std::uint64_t> v, std::vector<std::uint64_t> &out) const;

  Field field_;
  std::size_t ambient_;
  std::vector<std::uint64_t> rows_;  // rank x ambient, row-major, sorted by pivot
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint64_t>> transform_;  // per row, length = rank at time of use
};

/// Coordinates of target in an explicit list of linearly independent
/// vectors. Returns nullopt when target is outside their span. Throws
/// std::invalid_argument if the basis is not independent.
std::optional<std::vector<std::uint64_t>> solve_coordinates(std::span<const FlatVector> basis,
                                                            const FlatVector &target);

}  // namespace lda
