#include "lda/braid.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace lda {

BraidWord::BraidWord(int strands, std::span<const int> letters) : strands_(strands) {
  for (int l : letters) push_back(l);
}

void BraidWord::push_back(int letter) {
  if (letter == 0 || std::abs(letter) >= strands_) {
    throw std::invalid_argument("generator index " + std::to_string(letter) + " out of range for B_" +
                                std::to_string(strands_));
  }
  if (!letters_.empty() && letters_.back() == -letter) {
    letters_.pop_back();
  } else {
    letters_.push_back(letter);
  }
}

BraidWord BraidWord::parse(int strands, std::string_view text) {
  BraidWord w(strands);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    int letter = 0;
    const char *first = text.data() + pos;
    const char *last = text.data() + end;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, letter);
    if (ec != std::errc() || ptr != last) {
      throw std::invalid_argument("bad braid letter '" + std::string(text.substr(pos, end - pos)) + "'");
    }
    w.push_back(letter);
    pos = end;
  }
  return w;
}

BraidWord BraidWord::inverse() const {
  BraidWord out(strands_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(-*it);
  return out;
}

BraidWord BraidWord::operator*(const BraidWord &o) const {
  if (strands_ != o.strands_) throw std::invalid_argument("braid words on different strand counts");
  BraidWord out = *this;
  for (int l : o.letters_) out.push_back(l);
  return out;
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << letters_[i];
  }
  return os.str();
}

std::string to_string(RepKind kind) { return kind == RepKind::lk ? "lk" : "burau"; }

RepKind parse_rep_kind(std::string_view text) {
  if (text == "lk") return RepKind::lk;
  if (text == "burau") return RepKind::burau;
  throw std::invalid_argument("unknown representation kind '" + std::string(text) + "'");
}

std::string first_failing_relation(std::span<const Matrix> gens) {
  const std::size_t k = gens.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Matrix &a = gens[i];
    const Matrix &b = gens[i + 1];
    if (a * b * a != b * a * b) {
      return "braid relation s" + std::to_string(i + 1) + " s" + std::to_string(i + 2) + " s" + std::to_string(i + 1);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (!commutes(gens[i], gens[j])) {
        return "far commutation s" + std::to_string(i + 1) + " s" + std::to_string(j + 1);
      }
    }
  }
  return {};
}

Representation::Representation(RepKind kind, int strands, FieldElement q, FieldElement t,
                               std::vector<Matrix> generators)
    : kind_(kind), strands_(strands), dim_(0), q_(q), t_(t), gens_(std::move(generators)) {
  if (strands_ < 3) throw RepresentationError("need at least 3 strands, got " + std::to_string(strands_));
  if (gens_.size() != static_cast<std::size_t>(strands_ - 1)) {
    throw RepresentationError("expected " + std::to_string(strands_ - 1) + " generator images");
  }
  dim_ = gens_.front().dim();
  for (const auto &g : gens_) {
    if (g.dim() != dim_ || !(g.field() == q_.field())) {
      throw RepresentationError("generator images disagree on dimension or field");
    }
  }
  inv_gens_.reserve(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    try {
      inv_gens_.push_back(mat_inverse(gens_[i]));
    } catch (const SingularMatrixError &) {
      throw RepresentationError("image of s" + std::to_string(i + 1) + " is singular");
    }
  }
  if (auto failure = first_failing_relation(gens_); !failure.empty()) {
    throw RepresentationError(to_string(kind_) + " representation violates " + failure);
  }
}

const Matrix &Representation::image(int letter) const {
  if (letter == 0 || std::abs(letter) >= strands_) {
    throw std::out_of_range("generator index " + std::to_string(letter) + " out of range for B_" +
                            std::to_string(strands_));
  }
  const auto idx = static_cast<std::size_t>(std::abs(letter) - 1);
  return letter > 0 ? gens_[idx] : inv_gens_[idx];
}

Matrix Representation::evaluate(const BraidWord &w) const {
  if (w.strands() != strands_) {
    throw std::invalid_argument("word on " + std::to_string(w.strands()) + " strands evaluated in B_" +
                                std::to_string(strands_));
  }
  Matrix out = Matrix::identity(field(), dim_);
  for (int l : w.letters()) out = out * image(l);
  return out;
}

std::size_t lk_index(int n, int j, int k) {
  // Pairs (j, k) in lexicographic order.
  std::size_t idx = 0;
  for (int a = 1; a < j; ++a) idx += static_cast<std::size_t>(n - a);
  return idx + static_cast<std::size_t>(k - j - 1);
}

std::vector<Matrix> lk_generator_matrices(int n, const FieldElement &q, const FieldElement &t) {
  const Field &f = q.field();
  const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const std::uint64_t qv = q.value();
  const std::uint64_t tv = t.value();
  const std::uint64_t q2 = f.mul_raw(qv, qv);
  const std::uint64_t one_minus_q = f.sub_raw(1, qv);
  const std::uint64_t q2_minus_q = f.sub_raw(q2, qv);

  std::vector<Matrix> gens;
  gens.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    Matrix g(f, m);
    // Column (j,k) holds the image of x_{j,k}.
    auto put = [&](int j, int k, int dj, int dk, std::uint64_t c) {
      const std::size_t src = lk_index(n, j, k);
      const std::size_t dst = lk_index(n, dj, dk);
      g(dst, src) = f.add_raw(g(dst, src), c);
    };
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        if (i == j && k == i + 1) {
          put(j, k, j, k, f.neg_raw(f.mul_raw(tv, q2)));
        } else if (i == j - 1) {
          put(j, k, i, k, qv);
          put(j, k, i, j, q2_minus_q);
          put(j, k, j, k, one_minus_q);
        } else if (i == j) {
          put(j, k, j + 1, k, 1);
        } else if (i == k - 1) {
          put(j, k, j, i, qv);
          put(j, k, j, k, one_minus_q);
          put(j, k, i, k, f.neg_raw(f.mul_raw(q2_minus_q, tv)));
        } else if (i == k) {
          put(j, k, j, k + 1, 1);
        } else {
          put(j, k, j, k, 1);
        }
      }
    }
    gens.push_back(std::move(g));
  }
#ifdef LDA_MUTATION_LK_ENTRY
  gens[0](0, 0) = f.add_raw(gens[0](0, 0), 1);
#endif
  return gens;
}

Representation lk_representation(int n, const FieldElement &q, const FieldElement &t) {
  if (n < 3) throw RepresentationError("Lawrence-Krammer needs n >= 3");
  if (!(q.field() == t.field())) throw ContextError("q and t live in different fields");
  if (q.is_zero() || t.is_zero()) throw RepresentationError("Lawrence-Krammer parameters must be nonzero");
  if (q.value() == 1) throw RepresentationError("Lawrence-Krammer parameter q must differ from 1");
  return Representation(RepKind::lk, n, q, t, lk_generator_matrices(n, q, t));
}

std::vector<Matrix> burau_generator_matrices(int n, const FieldElement &t) {
  const Field &f = t.field();
  std::vector<Matrix> gens;
  for (int i = 1; i < n; ++i) {
    Matrix g = Matrix::identity(f, static_cast<std::size_t>(n));
    const auto r = static_cast<std::size_t>(i - 1);
    g(r, r) = f.sub_raw(1, t.value());
    g(r, r + 1) = t.value();
    g(r + 1, r) = 1;
    g(r + 1, r + 1) = 0;
    gens.push_back(std::move(g));
  }
  return gens;
}

Representation burau_representation(int n, const FieldElement &t) {
  if (n < 3) throw RepresentationError("Burau needs n >= 3");
  if (t.is_zero()) throw RepresentationError("Burau parameter t must be nonzero");
  return Representation(RepKind::burau, n, FieldElement::one(t.field()), t, burau_generator_matrices(n, t));
}

int default_split(int n) { return n / 2; }  // ceil((n-1)/2)

CommutingPair commuting_subgroups(const Representation &rep, int split) {
  const int n = rep.strands();
  if (split < 2 || split > n - 2) {
    throw std::invalid_argument("split " + std::to_string(split) + " must lie in [2, " + std::to_string(n - 2) +
                                "] so that both subgroups are nonempty");
  }
  CommutingPair pair{split, {}, {}, {}, {}};
  for (int i = 1; i < split; ++i) pair.a_indices.push_back(i);
  for (int i = split + 1; i < n; ++i) pair.b_indices.push_back(i);
  for (int i : pair.a_indices) {
    pair.a_gens.push_back({i, rep.image(i)});
    pair.a_gens.push_back({-i, rep.image(-i)});
  }
  for (int i : pair.b_indices) {
    pair.b_gens.push_back({i, rep.image(i)});
    pair.b_gens.push_back({-i, rep.image(-i)});
  }
  for (const auto &a : pair.a_gens) {
    for (const auto &b : pair.b_gens) {
      if (!commutes(a.matrix, b.matrix)) {
        throw std::logic_error("generators " + std::to_string(a.label) + " and " + std::to_string(b.label) +
                               " do not commute; the representation is broken");
      }
    }
  }
  return pair;
}

BraidWord sample_word(Rng &rng, int strands, std::span<const int> allowed, int len_min, int len_max) {
  if (len_min < 0 || len_max < len_min) throw std::invalid_argument("bad word length range");
  BraidWord w(strands);
  if (len_max == 0) return w;
  if (allowed.empty()) throw std::invalid_argument("sample_word needs at least one allowed generator");
  std::uniform_int_distribution<int> len_dist(len_min, len_max);
  std::uniform_int_distribution<std::size_t> idx_dist(0, allowed.size() - 1);
  std::bernoulli_distribution sign_dist(0.5);
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    const int g = allowed[idx_dist(rng)];
    w.push_back(sign_dist(rng) ? g : -g);
  }
  return w;
}

}  // namespace lda
