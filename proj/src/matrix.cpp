#include "lda/matrix.hpp"

#include <string>
#include <utility>

namespace lda {

namespace {
// p < 2^62, so each product is < 2^124 and sixteen of them fit in 128 bits.
constexpr std::size_t kLazyTerms = 15;
}  // namespace

FlatVector::FlatVector(const Field &f, std::vector<std::uint64_t> entries)
    : field_(f), entries_(std::move(entries)) {
  for (auto &e : entries_) e = f.reduce(e);
}

bool FlatVector::is_zero() const {
  for (auto e : entries_)
    if (e != 0) return false;
  return true;
}

FlatVector FlatVector::operator+(const FlatVector &o) const {
  if (!(field_ == o.field_)) throw ContextError("flat vector field mismatch");
  if (size() != o.size()) throw DimensionError("flat vector length mismatch");
  FlatVector out(field_, size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = field_.add_raw(entries_[i], o.entries_[i]);
  count_add(size());
  return out;
}

Matrix::Matrix(const Field &f, std::size_t dim, std::vector<std::uint64_t> row_major)
    : field_(f), dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim * dim) {
    throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(dim * dim));
  }
  for (auto &e : data_) e = f.reduce(e);
}

Matrix Matrix::identity(const Field &f, std::size_t dim) { return scalar(f, dim, 1); }

Matrix Matrix::scalar(const Field &f, std::size_t dim, std::uint64_t c) {
  Matrix m(f, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = f.reduce(c);
  return m;
}

Matrix Matrix::diagonal(const Field &f, std::span<const std::uint64_t> diag) {
  Matrix m(f, diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = f.reduce(diag[i]);
  return m;
}

Matrix Matrix::random(const Field &f, std::size_t dim, Rng &rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, f.modulus() - 1);
  Matrix m(f, dim);
  for (auto &e : m.data_) e = dist(rng);
  return m;
}

void require_compatible(const Matrix &a, const Matrix &b, const char *what) {
  if (!(a.field() == b.field())) {
    throw ContextError(std::string(what) + ": field modulus mismatch");
  }
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

Matrix Matrix::operator*(const Matrix &o) const {
  require_compatible(*this, o, "mat_mul");
  const std::size_t n = dim_;
  Matrix out(field_, n);
  std::vector<unsigned __int128> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t pending = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t a = data_[i * n + k];
      if (a == 0) continue;
      const std::uint64_t *brow = o.data_.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) acc[j] += static_cast<unsigned __int128>(a) * brow[j];
      if (++pending == kLazyTerms) {
        for (auto &x : acc) x = field_.reduce_wide(x);
        pending = 0;
      }
    }
    for (std::size_t j = 0; j < n; ++j) out.data_[i * n + j] = field_.reduce_wide(acc[j]);
  }
  count_mul(n * n * n);
  count_add(n * n * n);
  return out;
}

Matrix Matrix::operator+(const Matrix &o) const {
  require_compatible(*this, o, "matrix add");
  Matrix out(field_, dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add_raw(data_[i], o.data_[i]);
  count_add(data_.size());
  return out;
}

Matrix Matrix::operator-(const Matrix &o) const {
  require_compatible(*this, o, "matrix sub");
  Matrix out(field_, dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub_raw(data_[i], o.data_[i]);
  count_add(data_.size());
  return out;
}

Matrix Matrix::scaled(std::uint64_t c) const {
  Matrix out(field_, dim_);
  c = field_.reduce(c);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul_raw(data_[i], c);
  count_mul(data_.size());
  return out;
}

void Matrix::add_scaled(const Matrix &o, std::uint64_t c) {
  require_compatible(*this, o, "add_scaled");
  c = field_.reduce(c);
  if (c == 0) return;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] = field_.add_raw(data_[i], field_.mul_raw(o.data_[i], c));
  }
  count_mul(data_.size());
  count_add(data_.size());
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (auto e : data_)
    if (e != 0) return false;
  return true;
}

Matrix mat_mul(const Matrix &a, const Matrix &b) { return a * b; }

Matrix mat_inverse(const Matrix &a) {
  const Field &f = a.field();
  const std::size_t n = a.dim();
  Matrix work = a;
  Matrix inv = Matrix::identity(f, n);
  std::uint64_t muls = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work(piv, col) == 0) ++piv;
    if (piv == n) throw SingularMatrixError("matrix of dim " + std::to_string(n) + " is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(piv, j), work(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const std::uint64_t s = f.inv_raw(work(col, col));
    count_inv();
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) = f.mul_raw(work(col, j), s);
      inv(col, j) = f.mul_raw(inv(col, j), s);
    }
    muls += 2 * n;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::uint64_t m = work(r, col);
      if (m == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) = f.sub_raw(work(r, j), f.mul_raw(m, work(col, j)));
        inv(r, j) = f.sub_raw(inv(r, j), f.mul_raw(m, inv(col, j)));
      }
      muls += 2 * n;
    }
  }
  count_mul(muls);
  count_add(muls);
  return inv;
}

bool commutes(const Matrix &a, const Matrix &b) { return a * b == b * a; }

FlatVector flatten(const Matrix &a) {
  return FlatVector(a.field(), std::vector<std::uint64_t>(a.raw().begin(), a.raw().end()));
}

Matrix unflatten(const FlatVector &v, std::size_t dim) {
  if (v.size() != dim * dim) {
    throw DimensionError("cannot unflatten length " + std::to_string(v.size()) + " into dim " + std::to_string(dim));
  }
  return Matrix(v.field(), dim, std::vector<std::uint64_t>(v.raw().begin(), v.raw().end()));
}

}  // namespace lda
