// lda: simulate double-shielded key exchanges over braid group images and
// break them with the linear decomposition attack.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lda/attack.hpp"
#include "lda/io.hpp"
#include "lda/lab.hpp"
#include "lda/protocol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  int protocol = 1;
  int n = 6;
  std::string rep = "lk";
  std::uint64_t p = lda::Field::kDefaultModulus;
  int split = 0;  // 0: default
  int len_min = 5;
  int len_max = 15;
  std::uint64_t seed = 0;
  int trials = 1;
  std::string out;
  std::string fixture;
  bool dump_bases = false;
  bool timing = false;
  int verbosity = 0;
  std::vector<int> n_list{4, 5, 6, 8};
  std::string transcript;

  lda::ProtocolParams params() const {
    lda::ProtocolParams p_;
    p_.protocol_id = protocol;
    p_.n = n;
    p_.rep = lda::parse_rep_kind(rep);
    p_.p = p;
    if (split != 0) p_.split = split;
    p_.len_min = len_min;
    p_.len_max = len_max;
    p_.seed = seed;
    p_.validate();
    return p_;
  }
};

void add_protocol_flags(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--protocol", cfg.protocol, "Protocol to run (1 or 2)")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--n", cfg.n, "Number of braid strands")->check(CLI::Range(4, 64));
  cmd->add_option("--rep", cfg.rep, "Representation: lk or burau")->check(CLI::IsMember({"lk", "burau"}));
  cmd->add_option("--p", cfg.p, "Prime field modulus (odd prime below 2^62)");
  cmd->add_option("--split", cfg.split, "Subgroup split index (default ceil((n-1)/2))");
  cmd->add_option("--len-min", cfg.len_min, "Minimum private word length")->check(CLI::NonNegativeNumber);
  cmd->add_option("--len-max", cfg.len_max, "Maximum private word length")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", cfg.seed, "Master seed");
}

void print_stage_summary(const lda::AttackReport &report) {
  for (const auto &s : report.stages) {
    std::printf("  %s: expand %s in basis of size %zu, swap core for %s\n", s.subspace.c_str(), s.expressed.c_str(),
                s.basis_dim, s.replacement.c_str());
  }
}

int cmd_simulate(const RunConfig &cfg) {
  const lda::ProtocolParams params = cfg.params();
  const lda::HonestRun run = lda::run_protocol(params);
  const std::string out = cfg.out.empty() ? "transcript.json" : cfg.out;
  lda::write_file(out, lda::write_transcript(run, false));
  if (!cfg.fixture.empty()) lda::write_file(cfg.fixture, lda::write_transcript(run, true));
  std::printf("protocol %d n %d rep %s dim %zu seed %llu -> %s\n", params.protocol_id, params.n,
              lda::to_string(params.rep).c_str(), run.transcript.params.dim,
              static_cast<unsigned long long>(params.seed), out.c_str());
  return kExitOk;
}

int cmd_attack(const RunConfig &cfg) {
  const lda::Transcript t = lda::read_transcript(lda::read_file(cfg.transcript));
  lda::AttackReport report = [&] {
    try {
      return lda::attack(t, {cfg.dump_bases});
    } catch (const lda::MalformedTranscriptError &e) {
      std::fprintf(stderr, "attack failed at %s\n", e.what());
      throw;
    }
  }();
  if (!cfg.out.empty()) lda::write_file(cfg.out, lda::write_report(report, cfg.timing));
  std::printf("protocol %d dim %zu: recovered K (stage dims %zu %zu %zu, %llu field multiplications)\n",
              report.protocol_id, report.recovered_k.dim(), report.stages[0].basis_dim, report.stages[1].basis_dim,
              report.stages[2].basis_dim, static_cast<unsigned long long>(report.op_counts.mul_count));
  if (cfg.verbosity > 0) print_stage_summary(report);
  if (cfg.timing) {
    std::printf("wall time %.3f ms\n", std::chrono::duration<double, std::milli>(report.wall_time).count());
  }
  if (!cfg.fixture.empty()) {
    const lda::Matrix honest = lda::read_fixture_key(lda::read_file(cfg.fixture));
    if (honest.dim() != report.recovered_k.dim() || !(honest == report.recovered_k)) {
      std::printf("MISMATCH\n");
      return kExitFailure;
    }
    std::printf("MATCH\n");
  }
  return kExitOk;
}

int cmd_demo(const RunConfig &cfg) {
  const lda::ProtocolParams params = cfg.params();
  const lda::DemoSummary summary = lda::run_demo(params, cfg.trials);
  std::ostringstream os;
  os << "protocol " << params.protocol_id << " n " << params.n << " rep " << lda::to_string(params.rep)
     << " seed " << params.seed << "\n";
  for (const auto &t : summary.trials) {
    os << "trial " << t.index << " seed " << t.seed << " dims " << t.dims[0] << ' ' << t.dims[1] << ' ' << t.dims[2]
       << " muls " << t.ops.mul_count;
    if (cfg.timing) os << " ms " << std::chrono::duration<double, std::milli>(t.wall_time).count();
    os << (t.match ? " MATCH" : " MISMATCH") << "\n";
  }
  os << summary.matches() << "/" << summary.trials.size() << " MATCH\n";
  std::cout << os.str();
  if (!cfg.out.empty()) lda::write_file(cfg.out, os.str());
  return summary.matches() == static_cast<int>(summary.trials.size()) ? kExitOk : kExitFailure;
}

int cmd_bench(const RunConfig &cfg) {
  lda::ProtocolParams base = cfg.params();
  const lda::BenchTable table = lda::run_bench(base, cfg.n_list, cfg.trials);
  std::cout << lda::bench_pretty(table, cfg.timing);
  if (!cfg.out.empty()) lda::write_file(cfg.out, lda::bench_json(table, cfg.timing));
  return kExitOk;
}

int cmd_selftest() {
  bool all = true;
  for (const auto &r : lda::run_selftest()) {
    std::printf("%s %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.empty() ? "" : ": ",
                r.detail.c_str());
    all = all && r.passed;
  }
  std::printf(all ? "selftest passed\n" : "selftest FAILED\n");
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Linear decomposition attack lab for double-shielded braid key exchange"};
  app.set_config("--config", "", "Optional TOML/INI file overriding flags");
  app.require_subcommand(1);
  RunConfig cfg;

  auto *simulate = app.add_subcommand("simulate", "Run an honest protocol and write its public transcript");
  add_protocol_flags(simulate, cfg);
  simulate->add_option("--out", cfg.out, "Transcript path (default transcript.json)");
  simulate->add_option("--fixture", cfg.fixture, "Also write a private fixture (transcript plus secrets)");

  auto *attack = app.add_subcommand("attack", "Recover the shared key from a transcript");
  attack->add_option("transcript", cfg.transcript, "Transcript path")->required()->check(CLI::ExistingFile);
  attack->add_option("--out", cfg.out, "Write the attack report here");
  attack->add_option("--fixture", cfg.fixture, "Private fixture to verify the recovered key against")
      ->check(CLI::ExistingFile);
  attack->add_flag("--dump-bases", cfg.dump_bases, "Include the three decorated bases in the report");
  attack->add_flag("--timing", cfg.timing, "Report wall time");
  attack->add_flag("-v,--verbose", cfg.verbosity, "Print per-stage details");

  auto *demo = app.add_subcommand("demo", "Simulate, attack and verify several runs");
  add_protocol_flags(demo, cfg);
  demo->add_option("--trials", cfg.trials, "Number of runs")->check(CLI::NonNegativeNumber);
  demo->add_option("--out", cfg.out, "Also write the report here");
  demo->add_flag("--timing", cfg.timing, "Report wall time per trial");

  auto *bench = app.add_subcommand("bench", "Operation counts and growth across strand counts");
  add_protocol_flags(bench, cfg);
  bench->add_option("--n-list", cfg.n_list, "Strand counts to measure")->delimiter(',')->expected(1, -1);
  bench->add_option("--trials", cfg.trials, "Runs per (n, protocol)")->check(CLI::PositiveNumber);
  bench->add_option("--out", cfg.out, "Write the machine-readable table here");
  bench->add_flag("--timing", cfg.timing, "Include wall time");

  auto *selftest = app.add_subcommand("selftest", "Run the built-in invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (attack->parsed()) return cmd_attack(cfg);
    if (demo->parsed()) return cmd_demo(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const lda::ParseError &e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kExitUsage;
  } catch (const lda::ContextError &e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kExitUsage;
  } catch (const lda::MalformedTranscriptError &) {
    return kExitFailure;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
