#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lda/field.hpp"
#include "lda/matrix.hpp"

namespace lda {

class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A word in the Artin generators of B_n. Letters are signed generator
/// indices: +i is sigma_i, -i is sigma_i^{-1}. Stored freely reduced.
class BraidWord {
 public:
  explicit BraidWord(int strands) : strands_(strands) {}
  BraidWord(int strands, std::span<const int> letters);

  /// Parses "2 -3 2". Throws std::invalid_argument on bad tokens or indices.
  static BraidWord parse(int strands, std::string_view text);

  int strands() const { return strands_; }
  std::span<const int> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends one letter, cancelling against the tail if it is the inverse.
  void push_back(int letter);
  BraidWord inverse() const;
  BraidWord operator*(const BraidWord &o) const;
  bool operator==(const BraidWord &) const = default;

  std::string to_string() const;

 private:
  int strands_;
  std::vector<int> letters_;
};

enum class RepKind { lk, burau };

std::string to_string(RepKind kind);
RepKind parse_rep_kind(std::string_view text);

/// A linear image of B_n over F_p: one matrix per Artin generator plus its
/// exact inverse. Construction always runs the braid-relation gate.
class Representation {
 public:
  /// Validates invertibility and every braid relation; throws
  /// RepresentationError otherwise.
  Representation(RepKind kind, int strands, FieldElement q, FieldElement t, std::vector<Matrix> generators);

  RepKind kind() const { return kind_; }
  int strands() const { return strands_; }
  std::size_t dim() const { return dim_; }
  const Field &field() const { return q_.field(); }
  const FieldElement &q() const { return q_; }
  const FieldElement &t() const { return t_; }

  /// Image of a signed letter.
  const Matrix &image(int letter) const;
  Matrix evaluate(const BraidWord &w) const;

 private:
  RepKind kind_;
  int strands_;
  std::size_t dim_;
  FieldElement q_;
  FieldElement t_;
  std::vector<Matrix> gens_;
  std::vector<Matrix> inv_gens_;
};

/// Checks sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1} and
/// far commutation. Returns a description of the first failing relation, or
/// an empty string.
std::string first_failing_relation(std::span<const Matrix> generators);

/// Lawrence-Krammer representation of dimension n(n-1)/2. Requires n >= 3,
/// q, t nonzero and q != 1.
Representation lk_representation(int strands, const FieldElement &q, const FieldElement &t);

/// Unreduced Burau representation of dimension n. Requires n >= 3, t != 0.
Representation burau_representation(int strands, const FieldElement &t);

/// Raw generator matrices of the constructions above, without validation.
std::vector<Matrix> lk_generator_matrices(int strands, const FieldElement &q, const FieldElement &t);
std::vector<Matrix> burau_generator_matrices(int strands, const FieldElement &t);

/// Index of basis vector x_{j,k} (1 <= j < k <= n) in the LK basis.
std::size_t lk_index(int strands, int j, int k);

struct LabeledMatrix {
  int label;  // signed generator letter
  Matrix matrix;
};

/// Subgroups A = <sigma_1..sigma_{split-1}> and B = <sigma_{split+1}..sigma_{n-1}>.
/// Generator lists hold each generator followed by its inverse.
struct CommutingPair {
  int split;
  std::vector<int> a_indices;
  std::vector<int> b_indices;
  std::vector<LabeledMatrix> a_gens;
  std::vector<LabeledMatrix> b_gens;
};

CommutingPair commuting_subgroups(const Representation &rep, int split);

/// Balanced default, ceil((n-1)/2).
int default_split(int strands);

/// Freely reduced word whose pre-reduction length is uniform in
/// [len_min, len_max], letters uniform over allowed indices and both signs.
BraidWord sample_word(Rng &rng, int strands, std::span<const int> allowed, int len_min, int len_max);

}  // namespace lda
