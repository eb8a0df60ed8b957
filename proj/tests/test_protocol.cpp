#include "doctest.h"
#include "lda/attack.hpp"
#include "lda/io.hpp"
#include "lda/lab.hpp"
#include "lda/protocol.hpp"

using lda::Matrix;
using lda::ProtocolParams;

namespace {

ProtocolParams params(int protocol, int n, lda::RepKind rep, std::uint64_t seed) {
  ProtocolParams p;
  p.protocol_id = protocol;
  p.n = n;
  p.rep = rep;
  p.seed = seed;
  return p;
}

Matrix inv(const lda::HonestRun &run, const char *name) { return lda::mat_inverse(run.secrets[name]); }

}  // namespace

TEST_CASE("parameter validation") {
  ProtocolParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.resolved_split() == 3);
  p.n = 3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.protocol_id = 3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.split = 5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.q = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.len_min = 9;
  p.len_max = 3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.p = 100;
  CHECK_THROWS_AS(p.validate(), lda::ContextError);
}

TEST_CASE("honest runs agree and match the closed-form key") {
  for (int protocol : {1, 2}) {
    for (auto rep : {lda::RepKind::lk, lda::RepKind::burau}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto run = lda::run_protocol(params(protocol, 6, rep, seed));
        CAPTURE(protocol);
        CAPTURE(seed);
        CHECK(run.k_alice == run.k_bob);
        const auto &s = run.secrets;
        const Matrix &h = run.transcript.h;
        if (protocol == 1) {
          CHECK(run.k_alice == s["c1"] * s["f1"] * h * s["f2"] * s["c2"]);
          CHECK(run.transcript.x == s["d1"] * s["c1"] * h * s["c2"] * s["d2"]);
        } else {
          CHECK(run.k_alice == s["c1"] * s["f1"] * h * s["c2"] * s["f2"]);
          CHECK(run.transcript.x == s["d1"] * s["c1"] * h * s["f2"] * s["g2"]);
        }
        CHECK(s.elements.size() == lda::private_element_names(protocol).size());
      }
    }
  }
}

TEST_CASE("runs are reproducible from the seed") {
  const auto a = lda::run_protocol(params(2, 5, lda::RepKind::lk, 77));
  const auto b = lda::run_protocol(params(2, 5, lda::RepKind::lk, 77));
  const auto c = lda::run_protocol(params(2, 5, lda::RepKind::lk, 78));
  CHECK(a.transcript == b.transcript);
  CHECK(a.k_alice == b.k_alice);
  CHECK_FALSE(a.transcript == c.transcript);
  CHECK(lda::trial_seed(77, 0) == lda::mix64(77));
  CHECK(lda::trial_seed(77, 1) != lda::trial_seed(77, 2));
}

TEST_CASE("explicit q and t are honored") {
  auto p = params(1, 5, lda::RepKind::lk, 1);
  p.q = 3;
  p.t = 5;
  const auto run = lda::run_protocol(p);
  CHECK(run.transcript.params.q == 3);
  CHECK(run.transcript.params.t == 5);
  CHECK(run.transcript.params.dim == 10);
}

TEST_CASE("attack recovers the key and the intermediates") {
  for (int protocol : {1, 2}) {
    for (auto rep : {lda::RepKind::lk, lda::RepKind::burau}) {
      for (int n : {4, 5, 6}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          const auto run = lda::run_protocol(params(protocol, n, rep, seed));
          const auto report = lda::attack(run.transcript);
          CAPTURE(protocol);
          CAPTURE(n);
          CAPTURE(seed);
          CHECK(report.recovered_k == run.k_alice);
          CHECK(lda::verify_against_oracle(report, run));
          const Matrix &x = run.transcript.x;
          if (protocol == 1) {
            CHECK(report.m1 == inv(run, "d1") * x * inv(run, "d2"));
          } else {
            CHECK(report.m1 == inv(run, "d1") * x * inv(run, "g2"));
          }
          for (const auto &s : report.stages) CHECK(s.basis_dim > 0);
        }
      }
    }
  }
}

TEST_CASE("attack ignores private state and rejects forged transcripts") {
  auto run = lda::run_protocol(params(1, 5, lda::RepKind::lk, 4));
  const auto honest = lda::attack(run.transcript);

  lda::Transcript forged = run.transcript;
  forged.u = Matrix::identity(forged.field(), forged.params.dim);
  bool matched = false;
  try {
    matched = lda::attack(forged).recovered_k == run.k_alice;
  } catch (const lda::MalformedTranscriptError &) {
  }
  CHECK_FALSE(matched);

  // A random x is almost surely outside BwB.
  lda::Rng rng(5);
  forged = run.transcript;
  forged.x = Matrix::random(forged.field(), forged.params.dim, rng);
  try {
    (void)lda::attack(forged);
    FAIL("expected MalformedTranscriptError");
  } catch (const lda::MalformedTranscriptError &e) {
    CHECK(e.stage() == 1);
  }
  CHECK(honest.recovered_k == run.k_alice);
}

TEST_CASE("transcript serialization") {
  const auto run = lda::run_protocol(params(2, 5, lda::RepKind::burau, 9));
  const std::string text = lda::write_transcript(run.transcript);
  CHECK(text == lda::write_transcript(run, false));
  const lda::Transcript back = lda::read_transcript(text);
  CHECK(back == run.transcript);
  CHECK(lda::attack(back).recovered_k == run.k_alice);

  // Only the fixture carries secrets.
  CHECK(text.find("private") == std::string::npos);
  CHECK(text.find("seed") == std::string::npos);
  const std::string fixture = lda::write_transcript(run, true);
  CHECK(fixture.find("\"private\"") != std::string::npos);
  CHECK(lda::read_fixture_key(fixture) == run.k_alice);
  CHECK(lda::read_transcript(fixture) == run.transcript);
  CHECK_THROWS_AS(lda::read_fixture_key(text), lda::ParseError);

  CHECK_THROWS_AS(lda::read_transcript(text.substr(0, text.size() / 2)), lda::ParseError);
  CHECK_THROWS_AS(lda::read_transcript("[]"), lda::ParseError);
  std::string wrong_dim = text;
  wrong_dim.replace(wrong_dim.find("\"dim\": 5"), 8, "\"dim\": 6");
  CHECK_THROWS_AS(lda::read_transcript(wrong_dim), lda::ParseError);
  std::string unreduced = text;
  const std::string p = std::to_string(run.transcript.params.p);
  unreduced.replace(unreduced.find("\"0\""), 3, "\"" + p + "\"");
  CHECK_THROWS_AS(lda::read_transcript(unreduced), lda::ParseError);
}

TEST_CASE("report serialization is deterministic") {
  const auto run = lda::run_protocol(params(1, 4, lda::RepKind::lk, 3));
  const auto a = lda::write_report(lda::attack(run.transcript), false);
  const auto b = lda::write_report(lda::attack(run.transcript), false);
  CHECK(a == b);
  CHECK(a.find("wall_time") == std::string::npos);
  CHECK(lda::write_report(lda::attack(run.transcript), true).find("wall_time_ms") != std::string::npos);
  const auto with_bases = lda::write_report(lda::attack(run.transcript, {true}), false);
  CHECK(with_bases.find("\"bases\"") != std::string::npos);
}

TEST_CASE("lab helpers") {
  CHECK(lda::loglog_slope({1, 10, 100}, {2, 200, 20000}) == doctest::Approx(2.0));
  const auto demo = lda::run_demo(params(2, 4, lda::RepKind::burau, 1), 3);
  CHECK(demo.trials.size() == 3);
  CHECK(demo.matches() == 3);
  CHECK(lda::run_demo(params(1, 4, lda::RepKind::lk, 1), 0).trials.empty());
  for (const auto &s : lda::run_selftest()) CHECK_MESSAGE(s.passed, s.name << ": " << s.detail);
}
