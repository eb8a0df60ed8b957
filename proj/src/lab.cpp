#include "lda/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace lda {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) { return mix64(master ^ index); }

int DemoSummary::matches() const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(), [](const TrialResult &t) { return t.match; }));
}

DemoSummary run_demo(const ProtocolParams &params, int trials) {
  DemoSummary summary;
  for (int i = 0; i < trials; ++i) {
    ProtocolParams p = params;
    p.seed = trial_seed(params.seed, static_cast<std::uint64_t>(i));
    const HonestRun run = run_protocol(p);
    TrialResult r;
    r.index = i;
    r.seed = p.seed;
    try {
      const AttackReport report = attack(run.transcript);
      r.match = verify_against_oracle(report, run);
      for (int s = 0; s < 3; ++s) r.dims[s] = report.stages[static_cast<std::size_t>(s)].basis_dim;
      r.ops = report.op_counts;
      r.wall_time = report.wall_time;
    } catch (const MalformedTranscriptError &) {
      r.match = false;
    }
    summary.trials.push_back(r);
  }
  return summary;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two or more points");
  double mx = 0, my = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw std::invalid_argument("loglog_slope needs two distinct x values");
  return sxy / sxx;
}

namespace {
double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}
}  // namespace

BenchTable run_bench(const ProtocolParams &base, const std::vector<int> &strand_counts, int trials) {
  if (strand_counts.empty()) throw std::invalid_argument("bench needs at least one strand count");
  BenchTable table;
  std::uint64_t counter = 0;
  for (int n : strand_counts) {
    for (int protocol = 1; protocol <= 2; ++protocol) {
      for (int i = 0; i < trials; ++i) {
        ProtocolParams p = base;
        p.n = n;
        p.protocol_id = protocol;
        p.split.reset();
        p.seed = trial_seed(base.seed, counter++);
        const HonestRun run = run_protocol(p);
        const AttackReport report = attack(run.transcript);
        if (!verify_against_oracle(report, run)) {
          throw std::runtime_error("bench: attack failed to recover the key for n=" + std::to_string(n) +
                                   " protocol " + std::to_string(protocol));
        }
        BenchRecord rec;
        rec.n = n;
        rec.dim = run.transcript.params.dim;
        rec.protocol_id = protocol;
        rec.trial = i;
        rec.seed = p.seed;
        for (std::size_t s = 0; s < 3; ++s) {
          rec.stage_dims[s] = report.stages[s].basis_dim;
          rec.build_mul_count += report.stages[s].build_ops.mul_count;
          rec.bound_value += report.stages[s].cost_bound;
        }
        rec.mul_count = report.op_counts.mul_count;
        rec.ratio = static_cast<double>(rec.build_mul_count) / rec.bound_value;
        rec.wall_time = report.wall_time;
        table.records.push_back(rec);
      }
    }
  }
  std::vector<double> ratios;
  for (const auto &r : table.records) ratios.push_back(r.ratio);
  table.median_ratio = median(ratios);
  for (int protocol = 1; protocol <= 2; ++protocol) {
    std::map<std::size_t, std::vector<double>> by_dim;
    for (const auto &r : table.records)
      if (r.protocol_id == protocol) by_dim[r.dim].push_back(static_cast<double>(r.mul_count));
    if (by_dim.size() < 2) {
      table.slope[protocol - 1] = std::nan("");
      continue;
    }
    std::vector<double> xs, ys;
    for (const auto &[dim, muls] : by_dim) {
      xs.push_back(static_cast<double>(dim));
      ys.push_back(median(muls));
    }
    table.slope[protocol - 1] = loglog_slope(xs, ys);
  }
  return table;
}

std::string bench_json(const BenchTable &table, bool include_timing) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = 1;
  json rows = json::array();
  for (const auto &r : table.records) {
    json row;
    row["n"] = r.n;
    row["dim"] = r.dim;
    row["protocol_id"] = r.protocol_id;
    row["trial"] = r.trial;
    row["seed"] = std::to_string(r.seed);
    row["stage_dims"] = {r.stage_dims[0], r.stage_dims[1], r.stage_dims[2]};
    row["mul_count"] = r.mul_count;
    row["build_mul_count"] = r.build_mul_count;
    row["bound_value"] = r.bound_value;
    row["ratio"] = r.ratio;
    if (include_timing) row["wall_time_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  auto slope = [](double s) { return std::isnan(s) ? json(nullptr) : json(s); };
  doc["loglog_slope"] = {{"protocol_1", slope(table.slope[0])}, {"protocol_2", slope(table.slope[1])}};
  doc["median_ratio"] = table.median_ratio;
  return doc.dump(1) + "\n";
}

std::string bench_pretty(const BenchTable &table, bool include_timing) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%3s %4s %5s %6s %6s %6s %14s %14s %12s%s\n", "n", "dim", "proto", "q", "s",
                "r", "mul_count", "bound", "ratio", include_timing ? "   wall_ms" : "");
  os << line;
  for (const auto &r : table.records) {
    std::snprintf(line, sizeof line, "%3d %4zu %5d %6zu %6zu %6zu %14llu %14.4g %12.4g", r.n, r.dim, r.protocol_id,
                  r.stage_dims[0], r.stage_dims[1], r.stage_dims[2], static_cast<unsigned long long>(r.mul_count),
                  r.bound_value, r.ratio);
    os << line;
    if (include_timing) {
      std::snprintf(line, sizeof line, " %9.1f", std::chrono::duration<double, std::milli>(r.wall_time).count());
      os << line;
    }
    os << '\n';
  }
  for (int i = 0; i < 2; ++i) {
    if (std::isnan(table.slope[i])) {
      os << "log-log slope (protocol " << i + 1 << "): n/a (need two dimensions)\n";
    } else {
      std::snprintf(line, sizeof line, "log-log slope (protocol %d): %.3f\n", i + 1, table.slope[i]);
      os << line;
    }
  }
  std::snprintf(line, sizeof line, "median ratio: %.4g\n", table.median_ratio);
  os << line;
  return os.str();
}

namespace {

using Check = std::function<void()>;

void expect(bool ok, const std::string &what) {
  if (!ok) throw std::runtime_error(what);
}

SuiteResult run_suite(const std::string &name, const Check &body) {
  try {
    body();
    return {name, true, ""};
  } catch (const std::exception &e) {
    return {name, false, e.what()};
  }
}

void field_axioms() {
  const Field f = Field::default_field();
  Rng rng(1);
  std::uniform_int_distribution<std::uint64_t> any(0, f.modulus() - 1);
  for (int i = 0; i < 1000; ++i) {
    const FieldElement a(f, any(rng)), b(f, any(rng)), c(f, any(rng));
    expect((a + b) + c == a + (b + c), "addition is not associative");
    expect((a * b) * c == a * (b * c), "multiplication is not associative");
    expect(a + b == b + a && a * b == b * a, "operations are not commutative");
    expect(a * (b + c) == a * b + a * c, "distributivity fails");
    if (!a.is_zero()) {
      expect(a * inverse(a) == FieldElement::one(f), "a * a^-1 != 1");
      expect(inverse(inverse(a)) == a, "inverse is not an involution");
    }
  }
}

void braid_relations() {
  const Field f = Field::default_field();
  Rng rng(2);
  for (int n = 3; n <= 6; ++n) {
    FieldElement q(f, 0);
    do q = random_nonzero(f, rng);
    while (q.value() == 1);
    const FieldElement t = random_nonzero(f, rng);
    // The constructors run the relation gate and throw on failure.
    const Representation lk = lk_representation(n, q, t);
    expect(lk.dim() == static_cast<std::size_t>(n * (n - 1) / 2), "LK dimension");
    const Representation bu = burau_representation(n, t);
    expect(bu.dim() == static_cast<std::size_t>(n), "Burau dimension");
  }
}

void subgroup_commutation() {
  const Field f = Field::default_field();
  Rng rng(3);
  for (int n = 4; n <= 7; ++n) {
    const FieldElement q(f, 3), t = random_nonzero(f, rng);
    for (const Representation &rep : {lk_representation(n, q, t), burau_representation(n, t)}) {
      for (int split = 2; split <= n - 2; ++split) {
        const CommutingPair pair = commuting_subgroups(rep, split);
        for (const auto &a : pair.a_gens)
          for (const auto &b : pair.b_gens) expect(commutes(a.matrix, b.matrix), "A and B do not commute");
      }
    }
  }
}

void span_fixpoint() {
  const Field f = Field::default_field();
  Rng rng(4);
  for (int n = 4; n <= 5; ++n) {
    const Representation rep = lk_representation(n, FieldElement(f, 5), random_nonzero(f, rng));
    const CommutingPair pair = commuting_subgroups(rep, default_split(n));
    std::vector<int> all;
    for (int i = 1; i < n; ++i) all.push_back(i);
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix core = rep.evaluate(sample_word(rng, n, all, 3, 8));
      const SideSpec sides{pair.b_gens, pair.a_gens};
      const DecoratedBasis basis = build_decorated_basis(core, sides);
      expect(basis.echelon().is_reduced(), "echelon state is not in reduced form");
      expect(is_closed(basis, sides), "basis is not closed under the side generators");
      for (const auto &e : basis.entries()) expect(e.left * core * e.right == e.value, "provenance broken");
      Matrix target = Matrix::zero(f, core.dim());
      std::vector<std::uint64_t> chosen;
      for (const auto &e : basis.entries()) {
        chosen.push_back(f.random_nonzero_raw(rng));
        target.add_scaled(e.value, chosen.back());
      }
      expect(express(basis, target) == chosen, "express did not recover the chosen coefficients");
      expect(substitute(basis, express(basis, target), core) == target, "substitute(express(T), core) != T");
    }
  }
}

void key_agreement() {
  for (int protocol = 1; protocol <= 2; ++protocol) {
    for (RepKind rep : {RepKind::lk, RepKind::burau}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ProtocolParams p;
        p.protocol_id = protocol;
        p.n = 5;
        p.rep = rep;
        p.seed = seed;
        const HonestRun run = run_protocol(p);  // throws on disagreement
        expect(run.k_alice == run.k_bob, "keys differ");
      }
    }
  }
}

void attack_soundness() {
  for (int protocol = 1; protocol <= 2; ++protocol) {
    for (RepKind rep : {RepKind::lk, RepKind::burau}) {
      for (int n : {4, 5}) {
        for (std::uint64_t seed = 10; seed < 13; ++seed) {
          ProtocolParams p;
          p.protocol_id = protocol;
          p.n = n;
          p.rep = rep;
          p.seed = seed;
          const HonestRun run = run_protocol(p);
          const AttackReport report = attack(run.transcript);
          expect(verify_against_oracle(report, run),
                 "attack missed the key for protocol " + std::to_string(protocol) + " " + to_string(rep) +
                     " n=" + std::to_string(n) + " seed=" + std::to_string(seed));
        }
      }
    }
  }
}

}  // namespace

std::vector<SuiteResult> run_selftest() {
  return {run_suite("field_axioms", field_axioms),         run_suite("braid_relations", braid_relations),
          run_suite("subgroup_commutation", subgroup_commutation), run_suite("span_fixpoint", span_fixpoint),
          run_suite("key_agreement", key_agreement),       run_suite("attack_soundness", attack_soundness)};
}

}  // namespace lda
