#include "lda/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lda {

void ProtocolParams::validate() const {
  if (protocol_id != 1 && protocol_id != 2) {
    throw std::invalid_argument("protocol must be 1 or 2, got " + std::to_string(protocol_id));
  }
  if (n < 4) throw std::invalid_argument("need n >= 4 strands for two commuting subgroups, got " + std::to_string(n));
  const int s = resolved_split();
  if (s < 2 || s > n - 2) {
    throw std::invalid_argument("split must lie in [2, " + std::to_string(n - 2) + "], got " + std::to_string(s));
  }
  if (len_min < 0 || len_max < len_min) throw std::invalid_argument("bad private word length range");
  if (h_len_min < 0 || h_len_max < h_len_min) throw std::invalid_argument("bad h word length range");
  Field f = Field::make(p);
  if (q && (*q % f.modulus() == 0 || *q % f.modulus() == 1) && rep == RepKind::lk) {
    throw std::invalid_argument("Lawrence-Krammer q must be neither 0 nor 1");
  }
  if (t && *t % f.modulus() == 0) throw std::invalid_argument("t must be nonzero");
}

bool operator==(const LabeledMatrix &a, const LabeledMatrix &b) {
  return a.label == b.label && a.matrix == b.matrix;
}

bool operator==(const Transcript &a, const Transcript &b) {
  return a.params == b.params && a.h == b.h && a.a_gens == b.a_gens && a.b_gens == b.b_gens && a.x == b.x &&
         a.y == b.y && a.w == b.w && a.z == b.z && a.u == b.u && a.v == b.v;
}

const PrivateElement &PrivateState::get(const std::string &name) const {
  for (const auto &e : elements)
    if (e.name == name) return e;
  throw std::out_of_range("no private element named " + name);
}

Representation make_representation(const PublicParams &params) {
  const Field f = Field::make(params.p);
  if (params.rep == RepKind::lk) {
    return lk_representation(params.n, FieldElement(f, params.q), FieldElement(f, params.t));
  }
  return burau_representation(params.n, FieldElement(f, params.t));
}

const std::vector<std::string> &private_element_names(int protocol_id) {
  static const std::vector<std::string> p1 = {"c1", "c2", "d1", "d2", "f1", "f2",
                                              "g1", "g2", "g3", "g4", "d3", "d4"};
  static const std::vector<std::string> p2 = {"c1", "d1", "f2", "g2", "c2", "d2",
                                              "d3", "f1", "g1", "g3", "d4", "g4"};
  return protocol_id == 1 ? p1 : p2;
}

namespace {

struct Setup {
  PublicParams pub;
  Representation rep;
  CommutingPair pair;
  Rng rng;
};

Setup setup(const ProtocolParams &params) {
  params.validate();
  const Field f = Field::make(params.p);
  Rng rng(params.seed);
  std::uint64_t q = 1;
  std::uint64_t t = 0;
  if (params.rep == RepKind::lk) {
    if (params.q) {
      q = f.reduce(*params.q);
    } else {
      do q = f.random_nonzero_raw(rng);
      while (q == 1);
    }
    t = params.t ? f.reduce(*params.t) : f.random_nonzero_raw(rng);
  } else {
    if (params.t) {
      t = f.reduce(*params.t);
    } else {
      do t = f.random_nonzero_raw(rng);
      while (t == 1);
    }
  }
  const int split = params.resolved_split();
  const std::size_t dim = params.rep == RepKind::lk ? static_cast<std::size_t>(params.n * (params.n - 1) / 2)
                                                    : static_cast<std::size_t>(params.n);
  PublicParams pub{params.protocol_id, params.n, params.rep, params.p, q, t, split, dim};
  Representation rep = make_representation(pub);
  CommutingPair pair = commuting_subgroups(rep, split);
  return Setup{pub, std::move(rep), std::move(pair), rng};
}

class Sampler {
 public:
  Sampler(Setup &s, const ProtocolParams &params, PrivateState &secrets)
      : s_(s), params_(params), secrets_(secrets) {}

  Matrix from_a(const std::string &name) { return draw(name, s_.pair.a_indices); }
  Matrix from_b(const std::string &name) { return draw(name, s_.pair.b_indices); }

 private:
  Matrix draw(const std::string &name, const std::vector<int> &allowed) {
    BraidWord w = sample_word(s_.rng, params_.n, allowed, params_.len_min, params_.len_max);
    Matrix m = s_.rep.evaluate(w);
    secrets_.elements.push_back({name, w, m});
    return m;
  }

  Setup &s_;
  const ProtocolParams &params_;
  PrivateState &secrets_;
};

Matrix inv_of(const Representation &rep, const PrivateState &secrets, const std::string &name) {
  return rep.evaluate(secrets.get(name).word.inverse());
}

Matrix sample_h(Setup &s, const ProtocolParams &params, PrivateState &secrets) {
  std::vector<int> all(static_cast<std::size_t>(params.n - 1));
  std::iota(all.begin(), all.end(), 1);
  secrets.h_word = sample_word(s.rng, params.n, all, params.h_len_min, params.h_len_max);
  return s.rep.evaluate(secrets.h_word);
}

HonestRun finish(Setup &s, PrivateState secrets, Matrix h, Matrix x, Matrix y, Matrix w, Matrix z, Matrix u,
                 Matrix v, Matrix k_alice, Matrix k_bob) {
  if (k_alice != k_bob) {
    throw std::logic_error("honest parties derived different keys; the simulator is broken");
  }
  Transcript tr{s.pub,
                std::move(h),
                s.pair.a_gens,
                s.pair.b_gens,
                std::move(x),
                std::move(y),
                std::move(w),
                std::move(z),
                std::move(u),
                std::move(v)};
  return HonestRun{std::move(tr), std::move(k_alice), std::move(k_bob), std::move(secrets)};
}

}  // namespace

HonestRun run_protocol_1(const ProtocolParams &params) {
  if (params.protocol_id != 1) {
    throw std::invalid_argument("run_protocol_1 called with protocol " + std::to_string(params.protocol_id));
  }
  Setup s = setup(params);
  PrivateState secrets;
  secrets.seed = params.seed;
  Matrix h = sample_h(s, params, secrets);
  Sampler draw(s, params, secrets);

  // Alice
  Matrix c1 = draw.from_a("c1"), c2 = draw.from_a("c2"), d1 = draw.from_a("d1"), d2 = draw.from_a("d2");
  Matrix x = d1 * c1 * h * c2 * d2;
  // Bob
  Matrix f1 = draw.from_b("f1"), f2 = draw.from_b("f2");
  Matrix g1 = draw.from_b("g1"), g2 = draw.from_b("g2"), g3 = draw.from_b("g3"), g4 = draw.from_b("g4");
  Matrix y = g1 * f1 * h * f2 * g2;
  Matrix w = g3 * f1 * x * f2 * g4;
  // Alice
  Matrix d3 = draw.from_a("d3"), d4 = draw.from_a("d4");
  Matrix z = d3 * c1 * y * c2 * d4;
  Matrix u = inv_of(s.rep, secrets, "d1") * w * inv_of(s.rep, secrets, "d2");
  // Bob
  Matrix v = inv_of(s.rep, secrets, "g1") * z * inv_of(s.rep, secrets, "g2");

  Matrix k_alice = inv_of(s.rep, secrets, "d3") * v * inv_of(s.rep, secrets, "d4");
  Matrix k_bob = inv_of(s.rep, secrets, "g3") * u * inv_of(s.rep, secrets, "g4");
  return finish(s, std::move(secrets), std::move(h), std::move(x), std::move(y), std::move(w), std::move(z),
                std::move(u), std::move(v), std::move(k_alice), std::move(k_bob));
}

HonestRun run_protocol_2(const ProtocolParams &params) {
  if (params.protocol_id != 2) {
    throw std::invalid_argument("run_protocol_2 called with protocol " + std::to_string(params.protocol_id));
  }
  Setup s = setup(params);
  PrivateState secrets;
  secrets.seed = params.seed;
  Matrix h = sample_h(s, params, secrets);
  Sampler draw(s, params, secrets);

  // Alice. Her right factors f2 and g2 come from B; this is what makes
  // k_alice and k_bob coincide.
  Matrix c1 = draw.from_a("c1"), d1 = draw.from_a("d1");
  Matrix f2 = draw.from_b("f2"), g2 = draw.from_b("g2");
  Matrix x = d1 * c1 * h * f2 * g2;
  // Bob
  Matrix c2 = draw.from_a("c2"), d2 = draw.from_a("d2"), d3 = draw.from_a("d3");
  Matrix f1 = draw.from_b("f1"), g1 = draw.from_b("g1"), g3 = draw.from_b("g3");
  Matrix y = g1 * f1 * h * c2 * d2;
  Matrix w = g3 * f1 * x * c2 * d3;
  // Alice
  Matrix d4 = draw.from_a("d4"), g4 = draw.from_b("g4");
  Matrix z = d4 * c1 * y * f2 * g4;
  Matrix u = inv_of(s.rep, secrets, "d1") * w * inv_of(s.rep, secrets, "g2");
  // Bob
  Matrix v = inv_of(s.rep, secrets, "g1") * z * inv_of(s.rep, secrets, "d2");

  Matrix k_alice = inv_of(s.rep, secrets, "d4") * v * inv_of(s.rep, secrets, "g4");
  Matrix k_bob = inv_of(s.rep, secrets, "g3") * u * inv_of(s.rep, secrets, "d3");
  return finish(s, std::move(secrets), std::move(h), std::move(x), std::move(y), std::move(w), std::move(z),
                std::move(u), std::move(v), std::move(k_alice), std::move(k_bob));
}

HonestRun run_protocol(const ProtocolParams &params) {
  return params.protocol_id == 2 ? run_protocol_2(params) : run_protocol_1(params);
}

}  // namespace lda
