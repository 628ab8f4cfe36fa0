#include "novikov/rank.hpp"

#include <algorithm>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "novikov/linalg.hpp"
#include "novikov/random.hpp"

#include "kronecker.hpp"

namespace novikov
{

std::string to_string(RankMethod m)
{
    switch (m)
    {
    case RankMethod::exact:
        return "exact";
    case RankMethod::specialize:
        return "specialize";
    case RankMethod::both:
        return "both";
    }
    return "unknown";
}

RankMethod parse_rank_method(const std::string &s)
{
    if (s == "exact")
        return RankMethod::exact;
    if (s == "specialize")
        return RankMethod::specialize;
    if (s == "both")
        return RankMethod::both;
    throw std::invalid_argument("unknown rank method '" + s + "' (expected exact, specialize or both)");
}

EngineDisagreement::EngineDisagreement(std::size_t exact, std::size_t specialized)
    : std::logic_error("specialized rank " + std::to_string(specialized) + " exceeds exact rank " +
                       std::to_string(exact))
{
}

namespace
{

using Clock = std::chrono::steady_clock;

// Divides a row by its rational content and by the largest monomial dividing
// every entry.  Rows may be scaled by units at any stage of Bareiss
// elimination without breaking the exactness of later divisions.
void strip_row(std::vector<LaurentPoly> &row, std::size_t from, std::size_t rank)
{
    std::optional<ExponentVector> low;
    Integer num_gcd = 0, den_lcm = 1;
    for (std::size_t j = from; j < row.size(); ++j)
    {
        const auto &p = row[j];
        if (p.is_zero())
            continue;
        auto m = p.min_exponents();
        if (!low)
            low = m;
        else
            for (std::size_t k = 0; k < rank; ++k)
                (*low)[k] = std::min((*low)[k], m[k]);
        for (const auto &t : p.terms())
        {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den_mpz_t());
        }
    }
    if (!low)
        return;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    const auto shift = -*low;
    const bool trivial = scale == 1 && shift.is_zero();
    if (trivial)
        return;
    for (std::size_t j = from; j < row.size(); ++j)
        if (!row[j].is_zero())
            row[j] = row[j].shifted(shift).scaled(scale);
}

// Upper limit for one packed operand, in limbs.
constexpr std::uint64_t max_packed_limbs = std::uint64_t{1} << 24;

using kronecker::IntPoly;

void strip_monomials(std::vector<IntPoly> &row, std::size_t from, std::size_t rank)
{
    std::optional<std::vector<std::int64_t>> low;
    for (std::size_t j = from; j < row.size(); ++j)
    {
        if (row[j].is_zero())
            continue;
        auto m = row[j].min_exponents();
        if (!low)
            low = m;
        else
            for (std::size_t k = 0; k < rank; ++k)
                (*low)[k] = std::min((*low)[k], m[k]);
    }
    if (!low)
        return;
    for (auto &x : *low)
        x = -x;
    for (std::size_t j = from; j < row.size(); ++j)
        row[j].shift(*low);
}

void raise_to(std::vector<std::int64_t> &acc, const std::vector<std::int64_t> &v)
{
    for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] = std::max(acc[k], v[k]);
}

std::vector<std::int64_t> sum(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b)
{
    auto out = a;
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += b[k];
    return out;
}

// (pivot * x - lead * y) / previous through Laurent arithmetic.
IntPoly sparse_update(const IntPoly &pivot, const IntPoly &x, const IntPoly &lead, const IntPoly &y,
                      const IntPoly &previous, std::size_t rank)
{
    LaurentPoly numerator(rank);
    if (!x.is_zero())
        numerator = kronecker::to_laurent(pivot) * kronecker::to_laurent(x);
    if (!lead.is_zero() && !y.is_zero())
        numerator -= kronecker::to_laurent(lead) * kronecker::to_laurent(y);
    if (numerator.is_zero())
        return IntPoly{rank, {}, {}};
    auto q = numerator.divide_exact(kronecker::to_laurent(previous));
    if (!q)
        throw std::logic_error("Bareiss step produced an inexact division");
    return kronecker::from_laurent(*q);
}

// Fraction-free elimination over Z[z_1, ..., z_r].  After the initial
// normalization every entry is a minor of an integer matrix (up to monomial
// row factors), so all coefficients stay below the product of the row
// l1-norms.  That bound fixes the packed coefficient width.
std::size_t bareiss_rank(std::vector<std::vector<LaurentPoly>> dense, std::size_t rank)
{
    const std::size_t rows = dense.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = dense.front().size();

    // Monomial normalization: column shifts first, then rows (with content).
    for (std::size_t j = 0; j < cols; ++j)
    {
        std::optional<ExponentVector> low;
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (dense[i][j].is_zero())
                continue;
            auto m = dense[i][j].min_exponents();
            if (!low)
                low = m;
            else
                for (std::size_t k = 0; k < rank; ++k)
                    (*low)[k] = std::min((*low)[k], m[k]);
        }
        if (low && !low->is_zero())
            for (std::size_t i = 0; i < rows; ++i)
                if (!dense[i][j].is_zero())
                    dense[i][j] = dense[i][j].shifted(-*low);
    }
    for (auto &row : dense)
        strip_row(row, 0, rank);

    std::vector<std::vector<IntPoly>> a(rows);
    std::size_t bound_bits = 0;
    for (std::size_t i = 0; i < rows; ++i)
    {
        Integer norm = 0;
        for (const auto &p : dense[i])
        {
            a[i].push_back(kronecker::from_laurent(p));
            norm += a[i].back().norm1();
        }
        if (norm > 1)
            bound_bits += mpz_sizeinbase(norm.get_mpz_t(), 2);
    }
    dense.clear();
    // Products of two bounded quantities, their difference, and a sign bit.
    const std::size_t limbs = (2 * bound_bits + 3 + 63) / 64;

    IntPoly previous{rank, std::vector<std::int64_t>(rank, 0), {Integer(1)}};
    std::size_t found = 0;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k)
    {
        // Markowitz-style pivot: fewest terms, ties by lowest (row, col).
        std::size_t pi = rows, pj = cols, best_terms = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
            {
                const auto t = a[i][j].terms();
                if (t == 0)
                    continue;
                if (pi == rows || t < best_terms)
                {
                    pi = i;
                    pj = j;
                    best_terms = t;
                }
            }
        if (pi == rows)
            break;
        std::swap(a[k], a[pi]);
        if (pj != k)
            for (auto &row : a)
                std::swap(row[k], row[pj]);
        ++found;
        if (k + 1 == rows || k + 1 == cols)
            break;

        const IntPoly &pivot = a[k][k];
        auto prev_low = previous.min_exponents();
        IntPoly prev_shifted = previous;
        for (auto &x : prev_low)
            x = -x;
        prev_shifted.shift(prev_low);

        // One layout per step, large enough for every numerator of the step.
        std::vector<std::int64_t> below(rank, 0), lead_deg(rank, 0), pivot_row(rank, 0);
        for (std::size_t i = k + 1; i < rows; ++i)
        {
            if (!a[i][k].is_zero())
                raise_to(lead_deg, a[i][k].max_exponents());
            for (std::size_t j = k + 1; j < cols; ++j)
                if (!a[i][j].is_zero())
                    raise_to(below, a[i][j].max_exponents());
        }
        for (std::size_t j = k + 1; j < cols; ++j)
            if (!a[k][j].is_zero())
                raise_to(pivot_row, a[k][j].max_exponents());
        auto degree = sum(pivot.max_exponents(), below);
        raise_to(degree, sum(lead_deg, pivot_row));
        raise_to(degree, prev_shifted.max_exponents());
        const auto layout = kronecker::make_layout(degree, limbs, max_packed_limbs);

        std::optional<Integer> packed_pivot, packed_previous;
        std::uint64_t previous_mod = 0;
        std::vector<std::optional<Integer>> packed_row(cols);
        if (layout.slots != 0)
        {
            packed_pivot = kronecker::pack(pivot, layout);
            packed_previous = kronecker::pack(prev_shifted, layout);
            previous_mod = mpz_fdiv_ui(packed_previous->get_mpz_t(), (1UL << 61) - 1);
        }
        for (std::size_t i = k + 1; i < rows; ++i)
        {
            const IntPoly &lead = a[i][k];
            std::optional<Integer> packed_lead;
            for (std::size_t j = k + 1; j < cols; ++j)
            {
                IntPoly &x = a[i][j];
                const IntPoly &y = a[k][j];
                const bool cross = !lead.is_zero() && !y.is_zero();
                if (x.is_zero() && !cross)
                    continue;
                if (layout.slots == 0)
                {
                    x = sparse_update(pivot, x, lead, y, previous, rank);
                    continue;
                }
                Integer numerator = 0;
                if (!x.is_zero())
                    numerator = *packed_pivot * kronecker::pack(x, layout);
                if (cross)
                {
                    if (!packed_lead)
                        packed_lead = kronecker::pack(lead, layout);
                    if (!packed_row[j])
                        packed_row[j] = kronecker::pack(y, layout);
                    numerator -= *packed_lead * *packed_row[j];
                }
                if (numerator == 0)
                {
                    x = IntPoly{rank, {}, {}};
                    continue;
                }
                // Residues mod 2^61 - 1 catch an inexact division.
                constexpr unsigned long check = (1UL << 61) - 1;
                const auto n_mod = mpz_fdiv_ui(numerator.get_mpz_t(), check);
                mpz_divexact(numerator.get_mpz_t(), numerator.get_mpz_t(), packed_previous->get_mpz_t());
                if (modular::mul(mpz_fdiv_ui(numerator.get_mpz_t(), check), previous_mod, check) != n_mod)
                    throw std::logic_error("Bareiss step produced an inexact division");
                x = kronecker::unpack(numerator, layout, rank);
                x.shift(prev_low);
            }
            a[i][k] = IntPoly{rank, {}, {}};
            strip_monomials(a[i], k + 1, rank);
        }
        previous = a[k][k];
    }
    return found;
}

std::vector<std::vector<LaurentPoly>> to_dense(const LaurentMatrix &m)
{
    std::vector<std::vector<LaurentPoly>> a(m.rows(), std::vector<LaurentPoly>(m.cols(), LaurentPoly::zero(m.rank())));
    for (const auto &[idx, v] : m.entries())
        a[idx.first][idx.second] = v;
    return a;
}

Integer denominator_lcm(const LaurentMatrix &m)
{
    Integer den = 1;
    for (const auto &[idx, v] : m.entries())
        for (const auto &t : v.terms())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
    return den;
}

struct NumericalRank
{
    std::size_t rank;
    bool ambiguous;
};

NumericalRank numerical_rank(const LaurentMatrix &m, const UnitComplexPoint &at, double tolerance)
{
    if (m.rows() == 0 || m.cols() == 0)
        return {0, false};
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m.rows()),
                                                static_cast<Eigen::Index>(m.cols()));
    for (const auto &[idx, v] : m.entries())
        a(static_cast<Eigen::Index>(idx.first), static_cast<Eigen::Index>(idx.second)) = v.evaluate_unit(at);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return {0, false};
    const double cutoff = tolerance * s(0);
    NumericalRank out{0, false};
    for (Eigen::Index i = 0; i < s.size(); ++i)
    {
        if (s(i) > cutoff)
            ++out.rank;
        if (s(i) > cutoff / 10 && s(i) < cutoff * 10)
            out.ambiguous = true;
    }
    return out;
}

} // namespace

RankResult exact_rank(const LaurentMatrix &m)
{
    const auto start = Clock::now();
    RankResult out;
    out.method = "exact";
    out.rank = bareiss_rank(to_dense(m), m.rank());
    out.elapsed = Clock::now() - start;
    return out;
}

RankResult specialized_rank(const LaurentMatrix &m, const SpecPoint &at, double tolerance)
{
    if (at.rank() != m.rank())
        throw RankMismatch(m.rank(), at.rank());
    const auto start = Clock::now();
    RankResult out;
    out.method = "specialized";
    out.trials = 1;
    out.point = at.to_string();
    if (const auto *ff = std::get_if<FiniteFieldPoint>(&at.storage()))
    {
        linalg::Dense<std::uint64_t> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
        for (const auto &[idx, v] : m.entries())
            a[idx.first][idx.second] = v.evaluate_mod(*ff);
        out.rank = linalg::modular_rank(std::move(a), ff->prime);
        out.primes.push_back(ff->prime);
    }
    else if (const auto *q = std::get_if<RationalPoint>(&at.storage()))
    {
        linalg::Dense<Rational> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
        for (const auto &[idx, v] : m.entries())
            a[idx.first][idx.second] = v.evaluate_rational(*q);
        out.rank = linalg::rational_rank(std::move(a));
    }
    else
    {
        const auto nr = numerical_rank(m, std::get<UnitComplexPoint>(at.storage()), tolerance);
        out.rank = nr.rank;
        out.ambiguous = nr.ambiguous;
        out.tolerance = tolerance;
    }
    out.elapsed = Clock::now() - start;
    return out;
}

SpecPoint random_finite_field_point(const LaurentMatrix &m, std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index)
{
    auto rng = derived_rng(seed, stream, index);
    const Integer den = denominator_lcm(m);
    constexpr std::uint64_t low = 1ULL << 30;
    std::uint64_t p = 0;
    while (true)
    {
        p = low + uniform_below(rng, low);
        if (modular::is_prime(p) && mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)) == 0)
            break;
    }
    std::vector<std::uint64_t> coords(m.rank());
    for (auto &c : coords)
        c = 1 + uniform_below(rng, p - 1);
    return SpecPoint::finite_field(p, std::move(coords));
}

RankResult generic_rank(const LaurentMatrix &m, RankMethod method, std::size_t trials, std::uint64_t seed,
                        std::uint64_t stream)
{
    if (method == RankMethod::exact)
        return exact_rank(m);
    if (trials == 0)
        throw std::invalid_argument("specialization needs at least one trial");

    const auto start = Clock::now();
    RankResult spec;
    spec.method = "specialized";
    spec.trials = trials;
    for (std::size_t t = 0; t < trials; ++t)
    {
        const auto point = random_finite_field_point(m, seed, stream, t);
        const auto r = specialized_rank(m, point);
        spec.rank = std::max(spec.rank, r.rank);
        spec.primes.push_back(std::get<FiniteFieldPoint>(point.storage()).prime);
    }
    spec.specialized_rank = spec.rank;
    spec.elapsed = Clock::now() - start;
    if (method == RankMethod::specialize)
        return spec;

    auto exact = exact_rank(m);
    if (spec.rank > exact.rank)
        throw EngineDisagreement(exact.rank, spec.rank);
    exact.trials = trials;
    exact.primes = spec.primes;
    exact.specialized_rank = spec.rank;
    exact.elapsed += spec.elapsed;
    return exact;
}

} // namespace novikov
