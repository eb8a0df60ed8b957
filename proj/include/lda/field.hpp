#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lda {

class ContextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Field operation tallies for one counting scope.
struct OpCounter {
  std::uint64_t mul_count = 0;
  std::uint64_t add_count = 0;
  std::uint64_t inv_count = 0;

  OpCounter &operator+=(const OpCounter &o) {
    mul_count += o.mul_count;
    add_count += o.add_count;
    inv_count += o.inv_count;
    return *this;
  }
  friend OpCounter operator-(OpCounter a, const OpCounter &b) {
    a.mul_count -= b.mul_count;
    a.add_count -= b.add_count;
    a.inv_count -= b.inv_count;
    return a;
  }
  bool operator==(const OpCounter &) const = default;
};

class CountingScope;

namespace detail {
CountingScope *&active_scope();
void record(std::uint64_t muls, std::uint64_t adds, std::uint64_t invs);
}  // namespace detail

/// Installs a fresh counter as the calling thread's active counter. On
/// destruction the scope's totals are folded into the enclosing scope, so
/// nested measurements never lose work. Scopes are thread-confined.
class CountingScope {
 public:
  CountingScope();
  ~CountingScope();
  CountingScope(const CountingScope &) = delete;
  CountingScope &operator=(const CountingScope &) = delete;

  const OpCounter &counts() const { return counter_; }

 private:
  friend void detail::record(std::uint64_t, std::uint64_t, std::uint64_t);

  OpCounter counter_;
  CountingScope *parent_;
};

inline void count_mul(std::uint64_t k = 1) { detail::record(k, 0, 0); }
inline void count_add(std::uint64_t k = 1) { detail::record(0, k, 0); }
inline void count_inv(std::uint64_t k = 1) { detail::record(0, 0, k); }

using Rng = std::mt19937_64;

/// Prime field context. Holds only the modulus, so copies are free; the
/// primality check runs once in `Field::make`.
class Field {
 public:
  /// 2^62 - 57, the largest prime below 2^62.
  static constexpr std::uint64_t kDefaultModulus = (std::uint64_t{1} << 62) - 57;
  /// Residues must stay below 2^62 so that sixteen products fit in 128 bits.
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  /// Validates that p is an odd prime below kMaxModulus.
  static Field make(std::uint64_t p = kDefaultModulus);
  static Field default_field() { return make(kDefaultModulus); }

  std::uint64_t modulus() const { return p_; }

  // Raw residue kernels. These do not touch the op counter; callers that
  // run them in bulk record the totals themselves.
  std::uint64_t reduce(std::uint64_t x) const { return x % p_; }
  std::uint64_t add_raw(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub_raw(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg_raw(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t reduce_wide(unsigned __int128 x) const {
    return static_cast<std::uint64_t>(x % p_);
  }
  /// Extended Euclid; throws DivisionByZeroError for a = 0.
  std::uint64_t inv_raw(std::uint64_t a) const;
  std::uint64_t pow_raw(std::uint64_t a, std::uint64_t e) const;

  /// Uniform residue in [1, p).
  std::uint64_t random_nonzero_raw(Rng &rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(1, p_ - 1);
    return dist(rng);
  }

  friend bool operator==(const Field &, const Field &) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// An element of F_p together with its field context.
class FieldElement {
 public:
  FieldElement(const Field &f, std::uint64_t value) : field_(f), value_(f.reduce(value)) {}
  static FieldElement zero(const Field &f) { return {f, 0}; }
  static FieldElement one(const Field &f) { return {f, 1}; }

  std::uint64_t value() const { return value_; }
  const Field &field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  std::string to_string() const { return std::to_string(value_); }

  friend bool operator==(const FieldElement &a, const FieldElement &b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  Field field_;
  std::uint64_t value_;
};

FieldElement add(const FieldElement &a, const FieldElement &b);
FieldElement sub(const FieldElement &a, const FieldElement &b);
FieldElement mul(const FieldElement &a, const FieldElement &b);
FieldElement inverse(const FieldElement &a);
FieldElement random_nonzero(const Field &f, Rng &rng);

inline FieldElement operator+(const FieldElement &a, const FieldElement &b) { return add(a, b); }
inline FieldElement operator-(const FieldElement &a, const FieldElement &b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement &a, const FieldElement &b) { return mul(a, b); }

/// Parses a canonical decimal residue. Rejects values >= p.
std::uint64_t parse_residue(const Field &f, const std::string &text);

}  // namespace lda
