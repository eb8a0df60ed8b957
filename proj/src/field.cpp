#include "lda/field.hpp"

#include <charconv>

namespace lda {

namespace detail {

CountingScope *&active_scope() {
  thread_local CountingScope *scope = nullptr;
  return scope;
}

void record(std::uint64_t muls, std::uint64_t adds, std::uint64_t invs) {
  CountingScope *scope = active_scope();
  if (scope == nullptr) return;
  OpCounter &c = scope->counter_;
  c.mul_count += muls;
  c.add_count += adds;
  c.inv_count += invs;
}

}  // namespace detail

CountingScope::CountingScope() : parent_(detail::active_scope()) { detail::active_scope() = this; }

CountingScope::~CountingScope() {
  detail::active_scope() = parent_;
  if (parent_ != nullptr) detail::record(counter_.mul_count, counter_.add_count, counter_.inv_count);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::make(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw ContextError("field modulus must be an odd prime, got " + std::to_string(p));
  if (p >= kMaxModulus) throw ContextError("field modulus must be below 2^62, got " + std::to_string(p));
  if (!is_prime(p)) throw ContextError("field modulus is not prime: " + std::to_string(p));
  return Field(p);
}

std::uint64_t Field::inv_raw(std::uint64_t a) const {
  if (a % p_ == 0) throw DivisionByZeroError("inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on signed 128-bit to avoid overflow in the cofactors.
  __int128 old_r = static_cast<__int128>(a % p_), r = p_;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  __int128 res = old_s % static_cast<__int128>(p_);
  if (res < 0) res += p_;
  return static_cast<std::uint64_t>(res);
}

std::uint64_t Field::pow_raw(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p_); }

namespace {
void require_same(const FieldElement &a, const FieldElement &b) {
  if (!(a.field() == b.field())) {
    throw ContextError("field modulus mismatch: " + std::to_string(a.field().modulus()) + " vs " +
                       std::to_string(b.field().modulus()));
  }
}
}  // namespace

FieldElement add(const FieldElement &a, const FieldElement &b) {
  require_same(a, b);
  count_add();
  return {a.field(), a.field().add_raw(a.value(), b.value())};
}

FieldElement sub(const FieldElement &a, const FieldElement &b) {
  require_same(a, b);
  count_add();
  return {a.field(), a.field().sub_raw(a.value(), b.value())};
}

FieldElement mul(const FieldElement &a, const FieldElement &b) {
  require_same(a, b);
  count_mul();
  return {a.field(), a.field().mul_raw(a.value(), b.value())};
}

FieldElement inverse(const FieldElement &a) {
  std::uint64_t r = a.field().inv_raw(a.value());
  count_inv();
  return {a.field(), r};
}

FieldElement random_nonzero(const Field &f, Rng &rng) { return {f, f.random_nonzero_raw(rng)}; }

std::uint64_t parse_residue(const Field &f, const std::string &text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a decimal residue: '" + text + "'");
  }
  if (value >= f.modulus()) {
    throw std::invalid_argument("residue " + text + " is not reduced modulo " + std::to_string(f.modulus()));
  }
  return value;
}

}  // namespace lda
