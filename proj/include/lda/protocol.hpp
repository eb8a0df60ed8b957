#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lda/braid.hpp"
#include "lda/matrix.hpp"

namespace lda {

/// Everything needed to reproduce one honest protocol run.
struct ProtocolParams {
  int protocol_id = 1;
  int n = 6;
  RepKind rep = RepKind::lk;
  std::uint64_t p = Field::kDefaultModulus;
  // Representation parameters; drawn from the seed when absent.
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> t;
  // Defaults to default_split(n).
  std::optional<int> split;
  // Pre-reduction lengths of the private words.
  int len_min = 5;
  int len_max = 15;
  // Pre-reduction length of the public base element h.
  int h_len_min = 5;
  int h_len_max = 15;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
  int resolved_split() const { return split.value_or(default_split(n)); }
};

/// Parameters that are public in a transcript. Seed and word lengths are
/// deliberately absent: they would let a reader regenerate private keys.
struct PublicParams {
  int protocol_id;
  int n;
  RepKind rep;
  std::uint64_t p;
  std::uint64_t q;
  std::uint64_t t;
  int split;
  std::size_t dim;

  bool operator==(const PublicParams &) const = default;
};

/// The public view of one run.
struct Transcript {
  PublicParams params;
  Matrix h;
  std::vector<LabeledMatrix> a_gens;
  std::vector<LabeledMatrix> b_gens;
  Matrix x, y, w, z, u, v;

  const Field &field() const { return h.field(); }
};

bool operator==(const LabeledMatrix &a, const LabeledMatrix &b);
bool operator==(const Transcript &a, const Transcript &b);

struct PrivateElement {
  std::string name;
  BraidWord word;
  Matrix matrix;
};

/// Secrets of both parties. Only tests and fixture files look at this.
struct PrivateState {
  std::uint64_t seed = 0;
  BraidWord h_word{3};
  std::vector<PrivateElement> elements;

  const PrivateElement &get(const std::string &name) const;
  const Matrix &operator[](const std::string &name) const { return get(name).matrix; }
};

struct HonestRun {
  Transcript transcript;
  Matrix k_alice;
  Matrix k_bob;
  PrivateState secrets;
};

/// Builds the representation described by resolved public parameters.
Representation make_representation(const PublicParams &params);

HonestRun run_protocol_1(const ProtocolParams &params);
HonestRun run_protocol_2(const ProtocolParams &params);
HonestRun run_protocol(const ProtocolParams &params);

/// Names of the private elements, in sampling order.
const std::vector<std::string> &private_element_names(int protocol_id);

}  // namespace lda
