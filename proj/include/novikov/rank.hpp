#pragma once

// Generic rank of a Laurent matrix: exactly over the fraction field, or by
// specialization at points of (C*)^r.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "novikov/laurent.hpp"
#include "novikov/matrix.hpp"

namespace novikov
{

enum class RankMethod
{
    exact,
    specialize,
    both,
};

std::string to_string(RankMethod m);
/// Parses "exact", "specialize" or "both".
RankMethod parse_rank_method(const std::string &s);

struct RankResult
{
    std::size_t rank = 0;
    /// "exact" or "specialized"; `both` runs report "exact" with the
    /// specialized side recorded in specialized_rank.
    std::string method;
    std::size_t trials = 0;
    std::vector<std::uint64_t> primes;
    /// Point provenance of a single specialization.
    std::string point;
    std::optional<std::size_t> specialized_rank;
    /// Numerical rank only: tolerance used and whether a singular value fell
    /// within a factor 10 of the cutoff.
    std::optional<double> tolerance;
    bool ambiguous = false;
    std::chrono::nanoseconds elapsed{0};
};

/// Raised in `both` mode if a specialization reports a rank above the exact
/// one, which can only come from an arithmetic bug.
class EngineDisagreement : public std::logic_error
{
public:
    EngineDisagreement(std::size_t exact, std::size_t specialized);
};

constexpr double default_tolerance = 1e-8;

/// Rank over Q(z_1, ..., z_r) by fraction-free (Bareiss) elimination.
RankResult exact_rank(const LaurentMatrix &m);

/// Rank of the matrix evaluated at a point.  Finite-field and rational points
/// give exact ranks; unit-complex points give the number of singular values
/// above tolerance * (largest singular value).
RankResult specialized_rank(const LaurentMatrix &m, const SpecPoint &at, double tolerance = default_tolerance);

/// Random unit point of (F_p^*)^r with a fresh prime in [2^30, 2^31), drawn
/// deterministically from (seed, stream, index).  The prime avoids the
/// denominators of `m`.
SpecPoint random_finite_field_point(const LaurentMatrix &m, std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index);

/// exact: exact_rank.  specialize: maximum over `trials` random finite-field
/// points.  both: runs the two and checks specialized <= exact.
RankResult generic_rank(const LaurentMatrix &m, RankMethod method, std::size_t trials, std::uint64_t seed,
                        std::uint64_t stream = 0);

} // namespace novikov
