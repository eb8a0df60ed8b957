#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lda/field.hpp"

namespace lda {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense vector over F_p. In this project it is always the row-major
/// flattening of a square matrix, so its length is dim^2.
class FlatVector {
 public:
  FlatVector(const Field &f, std::size_t len) : field_(f), entries_(len, 0) {}
  FlatVector(const Field &f, std::vector<std::uint64_t> entries);

  const Field &field() const { return field_; }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  std::uint64_t &operator[](std::size_t i) { return entries_[i]; }
  std::span<const std::uint64_t> raw() const { return entries_; }
  std::span<std::uint64_t> raw() { return entries_; }
  bool is_zero() const;

  FlatVector operator+(const FlatVector &o) const;
  bool operator==(const FlatVector &o) const = default;

 private:
  Field field_;
  std::vector<std::uint64_t> entries_;
};

/// Dense square matrix over F_p, row-major.
class Matrix {
 public:
  Matrix(const Field &f, std::size_t dim) : field_(f), dim_(dim), data_(dim * dim, 0) {}
  Matrix(const Field &f, std::size_t dim, std::vector<std::uint64_t> row_major);

  static Matrix identity(const Field &f, std::size_t dim);
  static Matrix zero(const Field &f, std::size_t dim) { return Matrix(f, dim); }
  static Matrix diagonal(const Field &f, std::span<const std::uint64_t> diag);
  static Matrix scalar(const Field &f, std::size_t dim, std::uint64_t c);
  static Matrix random(const Field &f, std::size_t dim, Rng &rng);

  const Field &field() const { return field_; }
  std::size_t dim() const { return dim_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::uint64_t &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const { return {field_, (*this)(r, c)}; }
  std::span<const std::uint64_t> raw() const { return data_; }

  Matrix operator*(const Matrix &o) const;
  Matrix operator+(const Matrix &o) const;
  Matrix operator-(const Matrix &o) const;
  Matrix scaled(std::uint64_t c) const;
  /// this += c * o, entrywise.
  void add_scaled(const Matrix &o, std::uint64_t c);

  bool is_identity() const;
  bool is_zero() const;
  bool operator==(const Matrix &o) const = default;

 private:
  Field field_;
  std::size_t dim_;
  std::vector<std::uint64_t> data_;
};

Matrix mat_mul(const Matrix &a, const Matrix &b);
/// Gauss-Jordan inverse. Throws SingularMatrixError.
Matrix mat_inverse(const Matrix &a);
bool commutes(const Matrix &a, const Matrix &b);

FlatVector flatten(const Matrix &a);
Matrix unflatten(const FlatVector &v, std::size_t dim);

/// Throws ContextError / DimensionError when shapes or fields disagree.
void require_compatible(const Matrix &a, const Matrix &b, const char *what);

}  // namespace lda
