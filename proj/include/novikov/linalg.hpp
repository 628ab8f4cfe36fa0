#pragma once

// Dense exact linear algebra over Q, F_p and Z used by the engines and the
// cocycle tools.

#include <cstdint>
#include <vector>

#include "novikov/laurent.hpp"

namespace novikov::linalg
{

template <typename T>
using Dense = std::vector<std::vector<T>>;

/// Rank over Q by Gaussian elimination.  Rows may be empty.
std::size_t rational_rank(Dense<Rational> m);

/// Rank over F_p; entries must already be reduced mod p.
std::size_t modular_rank(Dense<std::uint64_t> m, std::uint64_t p);

/// Triangular basis of the subgroup of Z^n generated by `vectors` (each of
/// length n).  Basis vector i has its first nonzero entry at pivot_rows[i]
/// and vanishes at pivot_rows[j] for j < i.
struct LatticeBasis
{
    std::vector<std::vector<Integer>> basis;
    std::vector<std::size_t> pivot_rows;

    /// Integer coordinates of a lattice member.  Throws std::domain_error if
    /// the vector is not in the lattice.
    std::vector<Integer> coordinates(std::vector<Integer> v) const;
};

LatticeBasis lattice_basis(std::vector<std::vector<Integer>> vectors, std::size_t n);

} // namespace novikov::linalg
