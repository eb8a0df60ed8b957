#include "lda/attack.hpp"

namespace lda {

namespace {

void check_shape(const Transcript &t) {
  const Matrix &h = t.h;
  if (h.dim() != t.params.dim) throw MalformedTranscriptError(0, "h has the wrong dimension");
  for (const Matrix *m : {&t.x, &t.y, &t.w, &t.z, &t.u, &t.v}) {
    if (m->dim() != h.dim() || !(m->field() == h.field())) {
      throw MalformedTranscriptError(0, "message dimensions or fields disagree");
    }
  }
  for (const auto *gens : {&t.a_gens, &t.b_gens}) {
    if (gens->empty()) throw MalformedTranscriptError(0, "empty subgroup generator list");
    for (const auto &g : *gens)
      if (g.matrix.dim() != h.dim()) throw MalformedTranscriptError(0, "generator dimension mismatch");
  }
}

struct StageInput {
  const char *subspace;
  const char *core_name;
  const char *expressed_name;
  const char *replacement_name;
};

// Builds the basis around `core`, expands `target` in it and substitutes
// `replacement` for the core.
Matrix run_stage(int stage, const StageInput &in, const Matrix &core, const Matrix &target,
                 const Matrix &replacement, const SideSpec &sides, StageReport &report,
                 std::optional<DecoratedBasis> *keep) {
  CountingScope stage_scope;
  report.subspace = in.subspace;
  report.expressed = in.expressed_name;
  report.replacement = in.replacement_name;
  report.monoid_generators = sides.monoid_generators();

  DecoratedBasis basis = [&] {
    CountingScope build_scope;
    try {
      auto b = build_decorated_basis(core, sides);
      report.build_ops = build_scope.counts();
      return b;
    } catch (const std::invalid_argument &e) {
      throw MalformedTranscriptError(stage, std::string("cannot build basis of ") + in.subspace + ": " + e.what());
    }
  }();
  report.basis_dim = basis.size();
  report.cost_bound = span_cost_bound(core.dim() * core.dim(), sides.monoid_generators(), 1);

  std::vector<std::uint64_t> coeffs;
  try {
    coeffs = express(basis, target);
  } catch (const NotInSpanError &) {
    throw MalformedTranscriptError(stage, std::string(in.expressed_name) + " is not in " + in.subspace);
  }
  Matrix out = substitute(basis, coeffs, replacement);
  report.ops = stage_scope.counts();
  if (keep != nullptr) keep->emplace(std::move(basis));
  return out;
}

template <class Pipeline>
AttackReport timed(int protocol_id, const Transcript &t, Pipeline &&pipeline) {
  if (t.params.protocol_id != protocol_id) {
    throw std::invalid_argument("transcript is for protocol " + std::to_string(t.params.protocol_id) +
                                ", not protocol " + std::to_string(protocol_id));
  }
  check_shape(t);
  const auto start = std::chrono::steady_clock::now();
  CountingScope scope;
  const Field &f = t.field();
  const std::size_t dim = t.h.dim();
  AttackReport report{protocol_id, Matrix(f, dim), Matrix(f, dim), Matrix(f, dim), {}, {}, {}, {}};
  pipeline(report);
  report.op_counts = scope.counts();
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace

AttackReport attack_protocol_1(const Transcript &t, const AttackOptions &options) {
  auto keep = [&](AttackReport &r, std::size_t i) { return options.keep_bases ? &r.bases[i] : nullptr; };
  return timed(1, t, [&](AttackReport &r) {
    // Every subspace is a two-sided B-module: B.core.B.
    const SideSpec sides{t.b_gens, t.b_gens};
    // x = (g3 f1)^{-1} w (f2 g4)^{-1} lies in BwB; swapping w for
    // u = d1^{-1} w d2^{-1} yields d1^{-1} x d2^{-1} = c1 h c2.
    r.m1 = run_stage(1, {"BwB", "w", "x", "u"}, t.w, t.x, t.u, sides, r.stages[0], keep(r, 0));
    // y lies in BhB; swapping h for c1 h c2 yields c1 y c2.
    r.m2 = run_stage(2, {"BhB", "h", "y", "M1"}, t.h, t.y, r.m1, sides, r.stages[1], keep(r, 1));
    // v lies in BzB; swapping z for c1 y c2 = d3^{-1} z d4^{-1} yields K.
    r.recovered_k = run_stage(3, {"BzB", "z", "v", "M2"}, t.z, t.v, r.m2, sides, r.stages[2], keep(r, 2));
  });
}

AttackReport attack_protocol_2(const Transcript &t, const AttackOptions &options) {
  auto keep = [&](AttackReport &r, std::size_t i) { return options.keep_bases ? &r.bases[i] : nullptr; };
  return timed(2, t, [&](AttackReport &r) {
    // Left multipliers from B, right multipliers from A: B.core.A.
    const SideSpec sides{t.b_gens, t.a_gens};
    // Swapping w for u = d1^{-1} w g2^{-1} in x's expansion gives c1 h f2.
    r.m1 = run_stage(1, {"BwA", "w", "x", "u"}, t.w, t.x, t.u, sides, r.stages[0], keep(r, 0));
    // Swapping h for c1 h f2 in y's expansion gives c1 y f2.
    r.m2 = run_stage(2, {"BhA", "h", "y", "M1"}, t.h, t.y, r.m1, sides, r.stages[1], keep(r, 1));
    // Swapping z for c1 y f2 = d4^{-1} z g4^{-1} in v's expansion gives K.
    r.recovered_k = run_stage(3, {"BzA", "z", "v", "M2"}, t.z, t.v, r.m2, sides, r.stages[2], keep(r, 2));
  });
}

AttackReport attack(const Transcript &t, const AttackOptions &options) {
  return t.params.protocol_id == 2 ? attack_protocol_2(t, options) : attack_protocol_1(t, options);
}

bool verify_against_oracle(const AttackReport &report, const HonestRun &run) {
  require_compatible(report.recovered_k, run.k_alice, "verify_against_oracle");
  if (report.protocol_id != run.transcript.params.protocol_id) return false;
  return report.recovered_k == run.k_alice;
}

}  // namespace lda
