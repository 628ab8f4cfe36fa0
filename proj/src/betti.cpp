#include "novikov/betti.hpp"

#include <stdexcept>

#include "novikov/random.hpp"

namespace novikov
{

std::int64_t BettiReport::at(int degree) const
{
    if (degree < 0 || static_cast<std::size_t>(degree) >= betti.size())
        return 0;
    return betti[static_cast<std::size_t>(degree)];
}

bool PointHomology::has_jump() const
{
    for (bool j : jumps)
        if (j)
            return true;
    return false;
}

namespace
{

using Clock = std::chrono::steady_clock;

std::vector<std::int64_t> betti_from_ranks(const std::vector<std::size_t> &cells, const std::vector<std::size_t> &ranks)
{
    std::vector<std::int64_t> b(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        std::int64_t v = static_cast<std::int64_t>(cells[i]);
        if (i >= 1)
            v -= static_cast<std::int64_t>(ranks[i - 1]);
        if (i < ranks.size())
            v -= static_cast<std::int64_t>(ranks[i]);
        if (v < 0)
            throw std::logic_error("negative Betti number in degree " + std::to_string(i) +
                                   "; boundary ranks are inconsistent");
        b[i] = v;
    }
    return b;
}

void check_euler(const std::vector<std::int64_t> &b, std::int64_t chi)
{
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        sum += (i % 2 == 0 ? 1 : -1) * b[i];
    if (sum != chi)
        throw std::logic_error("Euler characteristic identity fails: " + std::to_string(sum) +
                               " != " + std::to_string(chi));
}

std::vector<std::size_t> positive_cells(const EquivariantComplex &e)
{
    std::vector<std::size_t> cells;
    if (e.dimension() >= 0)
        cells = e.cell_counts();
    return cells;
}

} // namespace

BettiReport novikov_numbers(const EquivariantComplex &e, RankMethod method, std::size_t trials, std::uint64_t seed)
{
    const auto start = Clock::now();
    BettiReport out;
    out.method = method;
    out.trials = method == RankMethod::exact ? 0 : trials;
    out.seed = seed;
    out.class_rank = e.class_rank();
    out.ring_rank = e.rank();
    out.cell_counts = positive_cells(e);
    for (int k = 1; k <= e.dimension(); ++k)
    {
        // Each degree draws from its own stream.
        auto r = generic_rank(e.boundary(static_cast<std::size_t>(k)), method, trials, seed,
                              static_cast<std::uint64_t>(k));
        out.boundary_ranks.push_back(r.rank);
        out.primes.insert(out.primes.end(), r.primes.begin(), r.primes.end());
    }
    out.betti = betti_from_ranks(out.cell_counts, out.boundary_ranks);
    out.euler = e.euler_characteristic();
    check_euler(out.betti, out.euler);
    out.elapsed = Clock::now() - start;
    return out;
}

BettiReport ordinary_betti(const DeltaComplex &c)
{
    validate_complex(c);
    const auto start = Clock::now();
    BettiReport out;
    out.method = RankMethod::exact;
    out.cell_counts = c.cell_counts();
    for (int k = 1; k <= c.dimension(); ++k)
        out.boundary_ranks.push_back(exact_rank(integral_boundary(c, static_cast<std::size_t>(k))).rank);
    out.betti = betti_from_ranks(out.cell_counts, out.boundary_ranks);
    out.euler = c.euler_characteristic();
    check_euler(out.betti, out.euler);
    out.elapsed = Clock::now() - start;
    return out;
}

PointHomology homology_at_point(const EquivariantComplex &e, const SpecPoint &at, const BettiReport &generic,
                                double tolerance)
{
    if (at.rank() != e.rank())
        throw RankMismatch(e.rank(), at.rank());
    PointHomology out{at, {}, generic, {}, false};
    std::vector<std::size_t> ranks;
    for (int k = 1; k <= e.dimension(); ++k)
    {
        auto r = specialized_rank(e.boundary(static_cast<std::size_t>(k)), at, tolerance);
        ranks.push_back(r.rank);
        out.ambiguous = out.ambiguous || r.ambiguous;
    }
    out.dims = betti_from_ranks(positive_cells(e), ranks);
    for (std::size_t i = 0; i < out.dims.size(); ++i)
    {
        const auto g = generic.at(static_cast<int>(i));
        if (out.dims[i] < g)
            throw std::logic_error("semicontinuity violated at " + at.to_string() + " in degree " +
                                   std::to_string(i) + ": " + std::to_string(out.dims[i]) + " < generic " +
                                   std::to_string(g));
        out.jumps.push_back(out.dims[i] > g);
    }
    return out;
}

std::vector<PointHomology> jump_probe(const EquivariantComplex &e, const std::vector<SpecPoint> &points,
                                      const BettiReport &generic, double tolerance)
{
    if (points.empty())
        throw std::invalid_argument("jump probe needs at least one point");
    std::vector<PointHomology> out;
    out.reserve(points.size());
    for (const auto &p : points)
        out.push_back(homology_at_point(e, p, generic, tolerance));
    return out;
}

MonteCarloReport montecarlo_l2(const EquivariantComplex &e, std::size_t samples, std::uint64_t seed,
                               double tolerance, const BettiReport &generic)
{
    if (samples == 0)
        throw std::invalid_argument("Monte Carlo needs at least one sample");
    const auto start = Clock::now();
    const auto cells = positive_cells(e);
    const auto degrees = cells.size();
    MonteCarloReport out;
    out.samples = samples;
    out.seed = seed;
    out.tolerance = tolerance;
    out.mean.assign(degrees, 0.0);
    out.histogram.resize(degrees);
    for (std::size_t i = 0; i < degrees; ++i)
        out.generic.push_back(generic.at(static_cast<int>(i)));

    std::vector<std::int64_t> totals(degrees, 0);
    for (std::size_t s = 0; s < samples; ++s)
    {
        auto rng = derived_rng(seed, 0, s);
        std::vector<double> turns(e.rank());
        for (auto &t : turns)
            t = uniform_unit(rng);
        std::vector<std::size_t> ranks;
        bool ambiguous = false;
        for (int k = 1; k <= e.dimension(); ++k)
        {
            auto r = specialized_rank(e.boundary(static_cast<std::size_t>(k)), SpecPoint::unit_complex(turns),
                                      tolerance);
            ranks.push_back(r.rank);
            ambiguous = ambiguous || r.ambiguous;
        }
        // Numerical ranks are not forced to respect semicontinuity, so the
        // distribution is recorded as observed.
        std::vector<std::int64_t> dims(degrees);
        for (std::size_t i = 0; i < degrees; ++i)
        {
            std::int64_t v = static_cast<std::int64_t>(cells[i]);
            if (i >= 1)
                v -= static_cast<std::int64_t>(ranks[i - 1]);
            if (i < ranks.size())
                v -= static_cast<std::int64_t>(ranks[i]);
            dims[i] = v;
        }
        bool deviates = false;
        for (std::size_t i = 0; i < degrees; ++i)
        {
            totals[i] += dims[i];
            ++out.histogram[i][dims[i]];
            deviates = deviates || dims[i] != out.generic[i];
        }
        if (deviates)
            ++out.deviating;
        if (ambiguous)
            out.ambiguous.push_back(s);
    }
    for (std::size_t i = 0; i < degrees; ++i)
        out.mean[i] = static_cast<double>(totals[i]) / static_cast<double>(samples);
    out.elapsed = Clock::now() - start;
    return out;
}

} // namespace novikov
