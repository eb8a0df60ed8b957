#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's elimination code; arithmetic is done on plain integers.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Row = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Rank by textbook row reduction with Fermat inverses.
inline std::size_t rank(std::vector<Row> rows, std::uint64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t inv = powmod(rows[r][c], p - 2, p);
    for (auto &x : rows[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t m = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = (rows[i][j] + p - mulmod(m, rows[r][j], p)) % p;
    }
    ++r;
  }
  return r;
}

/// Plain triple-loop product of row-major n x n matrices.
inline Row matmul(const Row &a, const Row &b, std::size_t n, std::uint64_t p) {
  Row out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s = (s + mulmod(a[i * n + k], b[k * n + j], p)) % p;
      out[i * n + j] = s;
    }
  return out;
}

}  // namespace oracle
