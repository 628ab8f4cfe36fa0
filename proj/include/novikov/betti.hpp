#pragma once

// Novikov numbers (equivalently L2 Betti numbers of the free abelian cover)
// from generic boundary ranks, pointwise twisted homology, and a Monte Carlo
// estimate of the torus integral of dim H_i(M; L).

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "novikov/complex.hpp"
#include "novikov/rank.hpp"

namespace novikov
{

struct BettiReport
{
    std::vector<std::int64_t> betti;      // degrees 0..n
    std::int64_t euler = 0;
    std::size_t class_rank = 0;
    std::size_t ring_rank = 0;
    std::vector<std::size_t> cell_counts;
    std::vector<std::size_t> boundary_ranks;  // rank d_k for k = 1..n, stored at k-1

    RankMethod method = RankMethod::exact;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> primes;
    std::chrono::nanoseconds elapsed{0};

    /// b_i with b_i = 0 outside 0..n.
    std::int64_t at(int degree) const;
};

struct PointHomology
{
    SpecPoint point;
    std::vector<std::int64_t> dims;
    BettiReport generic;
    std::vector<bool> jumps;   // dims_i > generic b_i
    bool ambiguous = false;    // numerical rank near the cutoff somewhere

    bool has_jump() const;
};

/// b_i = #cells_i - rank d_i - rank d_{i+1}, ranks from generic_rank.
BettiReport novikov_numbers(const EquivariantComplex &e, RankMethod method = RankMethod::both,
                            std::size_t trials = 5, std::uint64_t seed = 0);

/// Rational Betti numbers of the complex (the class xi = 0).
BettiReport ordinary_betti(const DeltaComplex &c);

/// dims_i = #cells_i - rank d_i(L) - rank d_{i+1}(L) at a single point L.
/// Throws std::logic_error if any dims_i falls below generic.b_i.
PointHomology homology_at_point(const EquivariantComplex &e, const SpecPoint &at, const BettiReport &generic,
                                double tolerance = default_tolerance);

std::vector<PointHomology> jump_probe(const EquivariantComplex &e, const std::vector<SpecPoint> &points,
                                      const BettiReport &generic, double tolerance = default_tolerance);

struct MonteCarloReport
{
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = default_tolerance;
    std::vector<double> mean;                                // per degree
    std::vector<std::map<std::int64_t, std::size_t>> histogram;  // per degree: dim -> count
    std::vector<std::int64_t> generic;
    std::size_t deviating = 0;             // samples whose dims differ from generic anywhere
    std::vector<std::size_t> ambiguous;    // indices of samples with a near-cutoff singular value
    std::chrono::nanoseconds elapsed{0};
};

/// Uniform independent angles per coordinate; sample s draws from
/// derived_rng(seed, 0, s).  `generic` is the reference the deviations are
/// counted against.
MonteCarloReport montecarlo_l2(const EquivariantComplex &e, std::size_t samples, std::uint64_t seed,
                               double tolerance, const BettiReport &generic);

} // namespace novikov
