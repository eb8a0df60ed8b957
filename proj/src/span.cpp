#include "lda/span.hpp"

#include <string>

namespace lda {

void validate_sides(const SideSpec &sides) {
  auto check = [](const std::vector<LabeledMatrix> &gens, const char *side) {
    for (const auto &g : gens) {
      bool found = false;
      for (const auto &h : gens) {
        if ((g.matrix * h.matrix).is_identity()) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument(std::string(side) + " generator " + std::to_string(g.label) +
                                    " has no listed inverse");
      }
    }
  };
  check(sides.left, "left");
  check(sides.right, "right");
}

DecoratedBasis build_decorated_basis(const Matrix &core, const SideSpec &sides) {
  return build_decorated_basis(std::span<const Matrix>(&core, 1), sides);
}

DecoratedBasis build_decorated_basis(std::span<const Matrix> cores, const SideSpec &sides) {
  if (cores.empty()) throw std::invalid_argument("build_decorated_basis needs at least one core");
  const Matrix &first = cores.front();
  for (const auto &c : cores) require_compatible(first, c, "build_decorated_basis");
  for (const auto &g : sides.left) require_compatible(first, g.matrix, "build_decorated_basis");
  for (const auto &g : sides.right) require_compatible(first, g.matrix, "build_decorated_basis");

  const Field &f = first.field();
  const std::size_t dim = first.dim();
  EchelonState echelon(f, dim * dim);
  std::vector<BasisEntry> entries;

  for (std::size_t c = 0; c < cores.size(); ++c) {
    if (echelon.try_extend(flatten(cores[c])).extended) {
      entries.push_back({c, {}, {}, Matrix::identity(f, dim), Matrix::identity(f, dim), cores[c]});
    }
  }
  if (entries.empty()) throw std::invalid_argument("build_decorated_basis: all cores are zero");

  // Breadth-first: entries are processed in creation order; for each, left
  // generators first, then right. Dependent candidates are dropped.
  const std::size_t ambient = dim * dim;
  for (std::size_t next = 0; next < entries.size(); ++next) {
    if (echelon.rank() >= ambient) break;
    for (const auto &g : sides.left) {
      Matrix value = g.matrix * entries[next].value;
      if (!echelon.try_extend(flatten(value)).extended) continue;
      const BasisEntry &parent = entries[next];
      BasisEntry child{parent.core, {}, parent.right_word, g.matrix * parent.left, parent.right, std::move(value)};
      child.left_word.reserve(parent.left_word.size() + 1);
      child.left_word.push_back(g.label);
      child.left_word.insert(child.left_word.end(), parent.left_word.begin(), parent.left_word.end());
      entries.push_back(std::move(child));
    }
    for (const auto &g : sides.right) {
      Matrix value = entries[next].value * g.matrix;
      if (!echelon.try_extend(flatten(value)).extended) continue;
      const BasisEntry &parent = entries[next];
      BasisEntry child{parent.core, parent.left_word, parent.right_word, parent.left, parent.right * g.matrix,
                       std::move(value)};
      child.right_word.push_back(g.label);
      entries.push_back(std::move(child));
    }
  }
  return DecoratedBasis(std::vector<Matrix>(cores.begin(), cores.end()), std::move(entries), std::move(echelon));
}

std::vector<std::uint64_t> express(const DecoratedBasis &basis, const Matrix &target) {
  require_compatible(basis.core(), target, "express");
  auto coords = basis.echelon().coordinates(flatten(target));
  if (!coords) throw NotInSpanError("target is not in the span of the decorated basis");
  return std::move(*coords);
}

Matrix substitute(const DecoratedBasis &basis, std::span<const std::uint64_t> coeffs, const Matrix &replacement) {
  if (basis.cores().size() != 1) {
    throw std::invalid_argument("substitute: basis has several cores, pass one replacement per core");
  }
  return substitute(basis, coeffs, std::span<const Matrix>(&replacement, 1));
}

Matrix substitute(const DecoratedBasis &basis, std::span<const std::uint64_t> coeffs,
                  std::span<const Matrix> replacements) {
  if (coeffs.size() != basis.size()) {
    throw DimensionError("substitute: " + std::to_string(coeffs.size()) + " coefficients for a basis of size " +
                         std::to_string(basis.size()));
  }
  if (replacements.size() != basis.cores().size()) {
    throw DimensionError("substitute: replacement count does not match core count");
  }
  for (const auto &r : replacements) require_compatible(basis.core(), r, "substitute");
  Matrix out = Matrix::zero(basis.core().field(), basis.dim());
  const auto entries = basis.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const BasisEntry &e = entries[i];
    out.add_scaled(e.left * replacements[e.core] * e.right, coeffs[i]);
  }
  return out;
}

bool is_closed(const DecoratedBasis &basis, const SideSpec &sides) {
  for (const auto &e : basis.entries()) {
    for (const auto &g : sides.left)
      if (!basis.echelon().contains(flatten(g.matrix * e.value))) return false;
    for (const auto &g : sides.right)
      if (!basis.echelon().contains(flatten(e.value * g.matrix))) return false;
  }
  return true;
}

double span_cost_bound(std::size_t ambient_dim, std::size_t monoid_generators, std::size_t cores) {
  const auto d = static_cast<double>(ambient_dim);
  const auto u = static_cast<double>(monoid_generators);
  const auto w = static_cast<double>(cores);
  return d * d * d * u * u + d * w * w;
}

}  // namespace lda
