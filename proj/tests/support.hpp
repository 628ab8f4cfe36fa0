#pragma once

// Fixtures and independent oracles shared by the test programs.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "novikov/io.hpp"
#include "novikov/linalg.hpp"
#include "novikov/random.hpp"

namespace testing
{

using namespace novikov;

inline std::string data_path(const std::string &name)
{
    return std::string(NOVIKOV_DATA_DIR) + "/" + name;
}

inline io::ComplexFile load(const std::string &name)
{
    return io::read_complex_file(data_path(name));
}

/// Integral boundary matrix of degree k straight from the face lists.
inline linalg::Dense<Integer> boundary_from_faces(const DeltaComplex &c, std::size_t k)
{
    linalg::Dense<Integer> d(c.cell_count(k - 1), std::vector<Integer>(c.cell_count(k), 0));
    for (std::size_t s = 0; s < c.cell_count(k); ++s)
    {
        auto f = c.faces(k, s);
        for (std::size_t i = 0; i < f.size(); ++i)
            d[f[i]][s] += i % 2 == 0 ? 1 : -1;
    }
    return d;
}

/// Number of nonzero invariant factors of an integer matrix, by Smith
/// normal form diagonalization with integer row and column operations.
inline std::size_t smith_rank(linalg::Dense<Integer> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::size_t t = 0;
    while (t < rows && t < cols)
    {
        // Pivot: smallest nonzero absolute value in the remaining block.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj])))
                    pi = i, pj = j;
        if (pi == rows)
            break;
        std::swap(a[t], a[pi]);
        for (auto &row : a)
            std::swap(row[t], row[pj]);
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
        {
            Integer q = a[i][t] / a[t][t];
            for (std::size_t j = t; j < cols; ++j)
                a[i][j] -= q * a[t][j];
            clean = clean && a[i][t] == 0;
        }
        for (std::size_t j = t + 1; j < cols; ++j)
        {
            Integer q = a[t][j] / a[t][t];
            for (std::size_t i = t; i < rows; ++i)
                a[i][j] -= q * a[i][t];
            clean = clean && a[t][j] == 0;
        }
        if (clean)
            ++t;
    }
    return t;
}

inline std::vector<std::int64_t> smith_betti(const DeltaComplex &c)
{
    const auto counts = c.cell_counts();
    std::vector<std::size_t> ranks(counts.size() + 1, 0);
    for (std::size_t k = 1; k < counts.size(); ++k)
        ranks[k] = smith_rank(boundary_from_faces(c, k));
    std::vector<std::int64_t> b;
    for (std::size_t i = 0; i < counts.size(); ++i)
        b.push_back(static_cast<std::int64_t>(counts[i] - ranks[i] - ranks[i + 1]));
    return b;
}

/// A random Delta-complex together with the vertex labels it was built from.
struct RandomComplex
{
    DeltaComplex complex;
    std::size_t original_vertices = 0;
    std::vector<std::size_t> quotient;                    // original vertex -> vertex
    std::vector<std::pair<std::size_t, std::size_t>> edge_ends;  // original (low, high)
};

/// Random simplicial complex on at most 7 vertices with at most `max_cells`
/// cells, optionally followed by a quotient that identifies vertices.  The
/// quotient turns edges into loops and parallel edges but keeps the face
/// relations, so the result is a Delta-complex.
inline RandomComplex random_complex(std::mt19937_64 &rng, std::size_t max_cells = 30, bool collapse = true)
{
    std::uniform_int_distribution<std::size_t> nv_dist(1, 7);
    const std::size_t nv = nv_dist(rng);
    std::set<std::vector<std::size_t>> simplices;
    for (std::size_t v = 0; v < nv; ++v)
        simplices.insert({v});
    auto closure_size = [&](const std::vector<std::size_t> &s) {
        std::size_t extra = 0;
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask)
        {
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    f.push_back(s[i]);
            extra += simplices.count(f) ? 0 : 1;
        }
        return extra;
    };
    std::uniform_int_distribution<std::size_t> dim_dist(1, 3);
    std::uniform_int_distribution<std::size_t> tries_dist(0, 25);
    const std::size_t tries = tries_dist(rng);
    for (std::size_t t = 0; t < tries && nv >= 2; ++t)
    {
        const std::size_t k = std::min(dim_dist(rng), nv - 1);
        std::vector<std::size_t> verts(nv);
        std::iota(verts.begin(), verts.end(), 0);
        std::shuffle(verts.begin(), verts.end(), rng);
        std::vector<std::size_t> s(verts.begin(), verts.begin() + static_cast<std::ptrdiff_t>(k + 1));
        std::sort(s.begin(), s.end());
        if (simplices.size() + closure_size(s) > max_cells)
            continue;
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask)
        {
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    f.push_back(s[i]);
            simplices.insert(f);
        }
    }

    // Index simplices by dimension.
    std::vector<std::vector<std::vector<std::size_t>>> by_dim(4);
    for (const auto &s : simplices)
        by_dim[s.size() - 1].push_back(s);
    std::vector<std::vector<DeltaComplex::Faces>> cells;
    for (std::size_t k = 1; k < by_dim.size() && !by_dim[k].empty(); ++k)
    {
        std::vector<DeltaComplex::Faces> level;
        for (const auto &s : by_dim[k])
        {
            DeltaComplex::Faces faces;
            for (std::size_t i = 0; i <= k; ++i)
            {
                auto f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = std::find(by_dim[k - 1].begin(), by_dim[k - 1].end(), f);
                faces.push_back(static_cast<std::size_t>(it - by_dim[k - 1].begin()));
            }
            level.push_back(faces);
        }
        cells.push_back(level);
    }

    RandomComplex out;
    out.original_vertices = nv;
    out.quotient.resize(nv);
    std::iota(out.quotient.begin(), out.quotient.end(), 0);
    std::size_t target = nv;
    if (collapse && nv >= 2 && rng() % 2 == 0)
    {
        target = 1 + uniform_below(rng, nv);
        for (auto &q : out.quotient)
            q = uniform_below(rng, target);
        // Relabel so every target vertex is hit.
        std::vector<std::size_t> seen(target, SIZE_MAX);
        std::size_t next = 0;
        for (auto &q : out.quotient)
        {
            if (seen[q] == SIZE_MAX)
                seen[q] = next++;
            q = seen[q];
        }
        target = next;
    }
    for (const auto &e : by_dim[1])
        out.edge_ends.emplace_back(e[0], e[1]);
    // Edge faces are vertex indices: d_0 = high end, d_1 = low end.
    if (!cells.empty())
        for (auto &faces : cells[0])
            for (auto &v : faces)
                v = out.quotient[v];
    out.complex = DeltaComplex(target, std::move(cells));
    return out;
}

/// Coboundary of random integer potentials on the original vertices, one
/// potential per coordinate.  It is a cocycle of the quotient as well.
inline Cocycle random_cocycle(const RandomComplex &rc, std::size_t rank, std::mt19937_64 &rng, std::int64_t span = 3)
{
    std::vector<std::vector<std::int64_t>> f(rank, std::vector<std::int64_t>(rc.original_vertices));
    for (auto &coord : f)
        for (auto &x : coord)
            x = static_cast<std::int64_t>(uniform_below(rng, 2 * span + 1)) - span;
    std::vector<ExponentVector> values;
    for (const auto &[lo, hi] : rc.edge_ends)
    {
        ExponentVector e(rank);
        for (std::size_t k = 0; k < rank; ++k)
            e[k] = f[k][hi] - f[k][lo];
        values.push_back(e);
    }
    return Cocycle::integral(rank, values);
}

/// Random polynomial with up to `max_terms` terms, exponents in [-2, 2] and
/// small integer coefficients.
inline LaurentPoly random_poly(std::mt19937_64 &rng, std::size_t rank, std::size_t max_terms = 3)
{
    std::vector<LaurentPoly::Term> terms;
    const std::size_t n = 1 + uniform_below(rng, max_terms);
    for (std::size_t t = 0; t < n; ++t)
    {
        ExponentVector e(rank);
        for (std::size_t k = 0; k < rank; ++k)
            e[k] = static_cast<std::int64_t>(uniform_below(rng, 5)) - 2;
        std::int64_t c = static_cast<std::int64_t>(uniform_below(rng, 7)) - 3;
        terms.emplace_back(e, Rational(static_cast<long>(c == 0 ? 1 : c)));
    }
    return LaurentPoly(rank, terms);
}

/// Random sparse matrix; about a third of them get dependent rows so that
/// rank deficiency is common.
inline LaurentMatrix random_matrix(std::mt19937_64 &rng, std::size_t max_dim = 12, std::size_t max_rank = 3)
{
    const std::size_t rows = 1 + uniform_below(rng, max_dim);
    const std::size_t cols = 1 + uniform_below(rng, max_dim);
    const std::size_t r = 1 + uniform_below(rng, max_rank);
    LaurentMatrix m(rows, cols, r);
    const double density = 0.15 + 0.25 * uniform_unit(rng);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (uniform_unit(rng) < density)
                m.set(i, j, random_poly(rng, r));
    if (rows >= 3 && uniform_below(rng, 3) == 0)
    {
        // Row a := z^e * row b + row c for a few rows.
        const std::size_t copies = 1 + uniform_below(rng, rows / 3);
        for (std::size_t t = 0; t < copies; ++t)
        {
            const std::size_t a = uniform_below(rng, rows), b = uniform_below(rng, rows), c = uniform_below(rng, rows);
            if (a == b || a == c)
                continue;
            ExponentVector e(r);
            e[uniform_below(rng, r)] = 1;
            for (std::size_t j = 0; j < cols; ++j)
                m.set(a, j, m.at(b, j).shifted(e) + m.at(c, j));
        }
    }
    return m;
}

/// Rank of a rank-1 Laurent matrix over Q(z) by evaluation at enough
/// integer points: a nonzero minor of spread at most D has at most D roots.
inline std::size_t interpolation_rank(const LaurentMatrix &m)
{
    std::int64_t spread = 0;
    for (const auto &[idx, p] : m.entries())
        spread = std::max(spread, p.spread());
    const std::size_t n = std::min(m.rows(), m.cols());
    const std::int64_t points = spread * static_cast<std::int64_t>(n) + 1;
    std::size_t best = 0;
    for (std::int64_t x = 2; x < 2 + points; ++x)
    {
        const auto at = SpecPoint::rational({Rational(static_cast<long>(x))});
        linalg::Dense<Rational> d(m.rows(), std::vector<Rational>(m.cols(), 0));
        for (const auto &[idx, p] : m.entries())
            d[idx.first][idx.second] = std::get<Rational>(p.evaluate(at));
        best = std::max(best, linalg::rational_rank(d));
    }
    return best;
}

} // namespace testing
