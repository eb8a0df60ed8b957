#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "lda/field.hpp"
#include "lda/matrix.hpp"
#include "lda/protocol.hpp"
#include "lda/span.hpp"

namespace lda {

/// An `express` call failed: the transcript cannot have come from an honest
/// run of the claimed protocol.
class MalformedTranscriptError : public std::runtime_error {
 public:
  MalformedTranscriptError(int stage, const std::string &what)
      : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

struct StageReport {
  std::string subspace;        // e.g. "BwB"
  std::string expressed;       // message expanded in the basis
  std::string replacement;     // what replaced the core
  std::size_t basis_dim = 0;
  std::size_t monoid_generators = 0;
  OpCounter build_ops;         // counted work of build_decorated_basis alone
  OpCounter ops;               // whole stage
  double cost_bound = 0;       // span_cost_bound for this stage's build
};

struct AttackReport {
  int protocol_id = 0;
  Matrix recovered_k;
  // Intermediates after stages 1 and 2 (M1, M2).
  Matrix m1;
  Matrix m2;
  std::array<StageReport, 3> stages;
  OpCounter op_counts;
  std::chrono::nanoseconds wall_time{0};
  // Populated only when AttackOptions::keep_bases is set.
  std::array<std::optional<DecoratedBasis>, 3> bases;
};

struct AttackOptions {
  bool keep_bases = false;
};

/// Recovers K from a protocol-1 transcript: expand x over BwB and swap w
/// for u, expand y over BhB and swap h for the result, expand v over BzB
/// and swap z for that.
AttackReport attack_protocol_1(const Transcript &t, const AttackOptions &options = {});

/// Same pipeline for protocol 2 with left multipliers from B and right
/// multipliers from A.
AttackReport attack_protocol_2(const Transcript &t, const AttackOptions &options = {});

AttackReport attack(const Transcript &t, const AttackOptions &options = {});

/// True iff the recovered key equals the honest key entrywise. Throws
/// DimensionError if the shapes differ.
bool verify_against_oracle(const AttackReport &report, const HonestRun &run);

}  // namespace lda
