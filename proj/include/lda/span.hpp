#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lda/braid.hpp"
#include "lda/echelon.hpp"
#include "lda/matrix.hpp"

namespace lda {

class NotInSpanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators of the multiplication monoid acting on the ambient matrix
/// space: v -> g v for g in `left`, v -> v g for g in `right`. Each list
/// must be closed under inverses.
struct SideSpec {
  std::vector<LabeledMatrix> left;
  std::vector<LabeledMatrix> right;

  std::size_t monoid_generators() const { return left.size() + right.size(); }
};

/// Checks invertibility and inverse closure. Throws std::invalid_argument.
void validate_sides(const SideSpec &sides);

/// One basis vector, stored as value = left * cores[core] * right together
/// with the generator words that produced `left` and `right`.
struct BasisEntry {
  std::size_t core;
  std::vector<int> left_word;
  std::vector<int> right_word;
  Matrix left;
  Matrix right;
  Matrix value;
};

class DecoratedBasis {
 public:
  DecoratedBasis(std::vector<Matrix> cores, std::vector<BasisEntry> entries, EchelonState echelon)
      : cores_(std::move(cores)), entries_(std::move(entries)), echelon_(std::move(echelon)) {}

  const Matrix &core() const { return cores_.front(); }
  std::span<const Matrix> cores() const { return cores_; }
  std::span<const BasisEntry> entries() const { return entries_; }
  const EchelonState &echelon() const { return echelon_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t dim() const { return cores_.front().dim(); }

 private:
  std::vector<Matrix> cores_;
  std::vector<BasisEntry> entries_;
  EchelonState echelon_;
};

/// Basis of the span of {L c R : c in cores, L, R products of side
/// generators}, grown breadth-first from the cores until no single
/// generator image leaves the span.
DecoratedBasis build_decorated_basis(std::span<const Matrix> cores, const SideSpec &sides);
DecoratedBasis build_decorated_basis(const Matrix &core, const SideSpec &sides);

/// Coefficients alpha with sum_i alpha_i entries[i].value = target.
/// Throws NotInSpanError when target is outside the span.
std::vector<std::uint64_t> express(const DecoratedBasis &basis, const Matrix &target);

/// sum_i coeffs[i] * entries[i].left * replacement * entries[i].right.
Matrix substitute(const DecoratedBasis &basis, std::span<const std::uint64_t> coeffs, const Matrix &replacement);

/// General form: entry i uses replacements[entries[i].core].
Matrix substitute(const DecoratedBasis &basis, std::span<const std::uint64_t> coeffs,
                  std::span<const Matrix> replacements);

/// True iff every single-generator image of every entry lies in the span.
bool is_closed(const DecoratedBasis &basis, const SideSpec &sides);

/// Operation-count budget for one basis build: D^3 |U|^2 + D |W|^2 with
/// D the ambient dimension (dim^2).
double span_cost_bound(std::size_t ambient_dim, std::size_t monoid_generators, std::size_t cores);

}  // namespace lda
