#include "novikov/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace novikov::linalg
{

std::size_t rational_rank(Dense<Rational> m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col)
    {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i)
        {
            if (m[i][col] == 0)
                continue;
            Rational f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::size_t modular_rank(Dense<std::uint64_t> m, std::uint64_t p)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col)
    {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[rank], m[pivot]);
        const std::uint64_t inv = modular::inverse(m[rank][col], p);
        for (std::size_t i = rank + 1; i < rows; ++i)
        {
            if (m[i][col] == 0)
                continue;
            const std::uint64_t f = modular::mul(m[i][col], inv, p);
            for (std::size_t j = col; j < cols; ++j)
            {
                const std::uint64_t sub = modular::mul(f, m[rank][j], p);
                m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

LatticeBasis lattice_basis(std::vector<std::vector<Integer>> vectors, std::size_t n)
{
    for (const auto &v : vectors)
        if (v.size() != n)
            throw std::invalid_argument("lattice generator has wrong length");
    LatticeBasis out;
    for (std::size_t row = 0; row < n; ++row)
    {
        // Euclid on the entries at `row` until a single generator remains nonzero there.
        while (true)
        {
            std::size_t best = vectors.size();
            std::size_t nonzero = 0;
            for (std::size_t i = 0; i < vectors.size(); ++i)
            {
                if (vectors[i][row] == 0)
                    continue;
                ++nonzero;
                if (best == vectors.size() || abs(vectors[i][row]) < abs(vectors[best][row]))
                    best = i;
            }
            if (nonzero == 0)
                break;
            if (nonzero == 1)
            {
                auto pivot = std::move(vectors[best]);
                vectors.erase(vectors.begin() + static_cast<std::ptrdiff_t>(best));
                if (pivot[row] < 0)
                    for (auto &x : pivot)
                        x = -x;
                out.basis.push_back(std::move(pivot));
                out.pivot_rows.push_back(row);
                break;
            }
            for (std::size_t i = 0; i < vectors.size(); ++i)
            {
                if (i == best || vectors[i][row] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), vectors[i][row].get_mpz_t(), vectors[best][row].get_mpz_t());
                for (std::size_t k = 0; k < n; ++k)
                    vectors[i][k] -= q * vectors[best][k];
            }
        }
    }
    return out;
}

std::vector<Integer> LatticeBasis::coordinates(std::vector<Integer> v) const
{
    std::vector<Integer> c(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
    {
        const auto row = pivot_rows[i];
        if (v[row] % basis[i][row] != 0)
            throw std::domain_error("vector is not in the lattice");
        c[i] = v[row] / basis[i][row];
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] -= c[i] * basis[i][k];
    }
    for (const auto &x : v)
        if (x != 0)
            throw std::domain_error("vector is not in the lattice");
    return c;
}

} // namespace novikov::linalg
