#include "doctest.h"
#include "lda/echelon.hpp"
#include "lda/matrix.hpp"
#include "oracles.hpp"

using lda::EchelonState;
using lda::Field;
using lda::FlatVector;
using lda::Matrix;

namespace {

std::vector<oracle::Row> rows_of(const Matrix &m) {
  std::vector<oracle::Row> rows;
  const auto d = static_cast<std::ptrdiff_t>(m.dim());
  for (std::ptrdiff_t i = 0; i < d; ++i) rows.emplace_back(m.raw().begin() + i * d, m.raw().begin() + (i + 1) * d);
  return rows;
}

Matrix random_invertible(const Field &f, std::size_t dim, lda::Rng &rng) {
  for (;;) {
    Matrix m = Matrix::random(f, dim, rng);
    if (oracle::rank(rows_of(m), f.modulus()) == dim) return m;
  }
}

FlatVector random_vector(const Field &f, std::size_t len, lda::Rng &rng) {
  std::uniform_int_distribution<std::uint64_t> any(0, f.modulus() - 1);
  std::vector<std::uint64_t> v(len);
  for (auto &x : v) x = any(rng);
  return FlatVector(f, std::move(v));
}

}  // namespace

TEST_CASE("mat_mul") {
  const Field f = Field::make(101);
  const Matrix a(f, 2, {1, 2, 3, 4});
  const Matrix swap(f, 2, {0, 1, 1, 0});
  CHECK(lda::mat_mul(a, swap) == Matrix(f, 2, {2, 1, 4, 3}));
  CHECK(lda::mat_mul(Matrix::identity(f, 2), a) == a);
  CHECK_THROWS_AS(lda::mat_mul(a, Matrix::identity(f, 3)), lda::DimensionError);
  CHECK_THROWS_AS(lda::mat_mul(a, Matrix::identity(Field::make(103), 2)), lda::ContextError);

  SUBCASE("agrees with a plain triple loop") {
    const Field big = Field::default_field();
    lda::Rng rng(1);
    for (std::size_t dim : {1u, 5u, 17u, 36u}) {
      const Matrix x = Matrix::random(big, dim, rng), y = Matrix::random(big, dim, rng);
      const auto expected = oracle::matmul({x.raw().begin(), x.raw().end()}, {y.raw().begin(), y.raw().end()}, dim,
                                           big.modulus());
      CHECK(std::equal(expected.begin(), expected.end(), (x * y).raw().begin()));
    }
  }

  SUBCASE("associativity") {
    const Field big = Field::default_field();
    lda::Rng rng(2);
    for (int i = 0; i < 20; ++i) {
      const Matrix x = Matrix::random(big, 6, rng), y = Matrix::random(big, 6, rng), z = Matrix::random(big, 6, rng);
      CHECK((x * y) * z == x * (y * z));
    }
  }
}

TEST_CASE("mat_inverse") {
  const Field f = Field::default_field();
  CHECK(lda::mat_inverse(Matrix::identity(f, 4)) == Matrix::identity(f, 4));
  const std::vector<std::uint64_t> d{2, 3, 5, 7};
  std::vector<std::uint64_t> dinv;
  for (auto x : d) dinv.push_back(f.inv_raw(x));
  CHECK(lda::mat_inverse(Matrix::diagonal(f, d)) == Matrix::diagonal(f, dinv));

  lda::Rng rng(3);
  for (std::size_t dim : {1u, 3u, 10u, 28u}) {
    const Matrix a = random_invertible(f, dim, rng);
    CHECK((a * lda::mat_inverse(a)).is_identity());
    CHECK((lda::mat_inverse(a) * a).is_identity());
  }
  const Field small = Field::make(101);
  CHECK_THROWS_AS(lda::mat_inverse(Matrix(small, 2, {1, 2, 2, 4})), lda::SingularMatrixError);
  CHECK_THROWS_AS(lda::mat_inverse(Matrix::zero(small, 3)), lda::SingularMatrixError);
}

TEST_CASE("flatten") {
  const Field f = Field::make(101);
  CHECK(lda::flatten(Matrix::identity(f, 2)) == FlatVector(f, {1, 0, 0, 1}));
  lda::Rng rng(4);
  const Matrix a = Matrix::random(f, 5, rng), b = Matrix::random(f, 5, rng);
  CHECK(lda::unflatten(lda::flatten(a), 5) == a);
  CHECK(lda::flatten(a + b) == lda::flatten(a) + lda::flatten(b));
  CHECK_THROWS_AS(lda::unflatten(lda::flatten(a), 4), lda::DimensionError);
}

TEST_CASE("try_extend") {
  const Field f = Field::default_field();
  lda::Rng rng(5);

  EchelonState s(f, 9);
  const FlatVector v = random_vector(f, 9, rng);
  CHECK(s.try_extend(v).extended);
  CHECK(s.rank() == 1);
  CHECK_FALSE(s.try_extend(v).extended);
  CHECK(s.rank() == 1);
  CHECK_FALSE(s.try_extend(FlatVector(f, 9)).extended);  // zero vector
  CHECK_THROWS_AS(s.try_extend(FlatVector(f, 4)), lda::DimensionError);

  SUBCASE("pigeonhole") {
    EchelonState full(f, 16);
    int rejected = 0;
    for (int i = 0; i < 17; ++i) rejected += full.try_extend(random_vector(f, 16, rng)).extended ? 0 : 1;
    CHECK(rejected >= 1);
    CHECK(full.rank() == 16);
    CHECK(full.is_reduced());
  }

  SUBCASE("rank agrees with independent elimination and RREF holds") {
    for (int trial = 0; trial < 20; ++trial) {
      // Low-rank family: combinations of a few generators, plus noise rows.
      const std::size_t len = 25;
      std::vector<FlatVector> gens;
      const int k = 1 + trial % 7;
      for (int i = 0; i < k; ++i) gens.push_back(random_vector(f, len, rng));
      EchelonState st(f, len);
      std::vector<oracle::Row> rows;
      for (int i = 0; i < 15; ++i) {
        FlatVector v(f, len);
        for (const auto &g : gens) {
          const std::uint64_t c = f.random_nonzero_raw(rng) % 3;
          for (std::size_t j = 0; j < len; ++j) v[j] = f.add_raw(v[j], f.mul_raw(c, g[j]));
        }
        st.try_extend(v);
        rows.emplace_back(v.raw().begin(), v.raw().end());
        CHECK(st.rank() == oracle::rank(rows, f.modulus()));
        CHECK(st.is_reduced());
        CHECK(st.rank() <= len);
      }
    }
  }
}

TEST_CASE("solve_coordinates") {
  const Field f = Field::default_field();
  const std::vector<FlatVector> units{FlatVector(f, {1, 0, 0}), FlatVector(f, {0, 1, 0})};
  auto c = lda::solve_coordinates(units, FlatVector(f, {5, 7, 0}));
  REQUIRE(c);
  CHECK(*c == std::vector<std::uint64_t>{5, 7});
  CHECK_FALSE(lda::solve_coordinates(units, FlatVector(f, {0, 0, 1})));

  lda::Rng rng(6);
  std::vector<FlatVector> basis;
  for (int i = 0; i < 12; ++i) basis.push_back(random_vector(f, 30, rng));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto unit = lda::solve_coordinates(basis, basis[k]);
    REQUIRE(unit);
    for (std::size_t j = 0; j < unit->size(); ++j) CHECK((*unit)[j] == (j == k ? 1u : 0u));
  }
  // Build target from chosen coefficients; recover them exactly.
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint64_t> chosen;
    FlatVector target(f, 30);
    for (const auto &b : basis) {
      chosen.push_back(f.random_nonzero_raw(rng));
      for (std::size_t j = 0; j < 30; ++j) target[j] = f.add_raw(target[j], f.mul_raw(chosen.back(), b[j]));
    }
    auto got = lda::solve_coordinates(basis, target);
    REQUIRE(got);
    CHECK(*got == chosen);
    // Reconstruction from the returned coordinates is exact.
    FlatVector back(f, 30);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < 30; ++j) back[j] = f.add_raw(back[j], f.mul_raw((*got)[i], basis[i][j]));
    CHECK(back == target);
  }
  std::vector<FlatVector> dependent{basis[0], basis[1], basis[0]};
  CHECK_THROWS_AS(lda::solve_coordinates(dependent, basis[2]), std::invalid_argument);
}

TEST_CASE("elimination cost is O(n^2 r)") {
  // Insert n independent random vectors of length r and compare counted
  // multiplications against n^2 r. The constant is measured, not derived.
  const Field f = Field::default_field();
  lda::Rng rng(7);
  constexpr double kConstant = 4.0;
  for (auto [n, r] : {std::pair{5, 10}, {10, 10}, {20, 50}, {40, 60}, {60, 60}}) {
    EchelonState st(f, static_cast<std::size_t>(r));
    lda::CountingScope scope;
    for (int i = 0; i < n; ++i) st.try_extend(random_vector(f, static_cast<std::size_t>(r), rng));
    const double bound = kConstant * n * n * r;
    CHECK_MESSAGE(static_cast<double>(scope.counts().mul_count) <= bound, "n=" << n << " r=" << r);
  }
}
