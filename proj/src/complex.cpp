#include "novikov/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "novikov/linalg.hpp"

namespace novikov
{

namespace
{

std::string join_values(const std::vector<Rational> &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

std::vector<Rational> add(const std::vector<Rational> &a, const std::vector<Rational> &b)
{
    std::vector<Rational> out(a);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b[i];
    return out;
}

Integer floor_of(const Rational &x)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

Integer ceil_of(const Rational &x)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

Integer round_of(const Rational &x)
{
    return floor_of(x + Rational(1, 2));
}

} // namespace

ValidationError::ValidationError(const std::string &what, std::optional<std::size_t> dimension,
                                 std::optional<std::size_t> cell)
    : std::runtime_error(what), dimension_(dimension), cell_(cell)
{
}

// ---------------------------------------------------------------------------
// DeltaComplex

DeltaComplex::DeltaComplex(std::size_t vertex_count, std::vector<std::vector<Faces>> cells)
    : vertex_count_(vertex_count), cells_(std::move(cells))
{
}

int DeltaComplex::dimension() const noexcept
{
    if (cells_.empty())
        return vertex_count_ == 0 ? -1 : 0;
    return static_cast<int>(cells_.size());
}

std::size_t DeltaComplex::cell_count(std::size_t k) const
{
    if (k == 0)
        return vertex_count_;
    return k <= cells_.size() ? cells_[k - 1].size() : 0;
}

std::vector<std::size_t> DeltaComplex::cell_counts() const
{
    std::vector<std::size_t> out;
    for (int k = 0; k <= dimension(); ++k)
        out.push_back(cell_count(static_cast<std::size_t>(k)));
    return out;
}

std::size_t DeltaComplex::total_cells() const
{
    auto counts = cell_counts();
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

std::span<const std::size_t> DeltaComplex::faces(std::size_t k, std::size_t cell) const
{
    if (k == 0 || k > cells_.size() || cell >= cells_[k - 1].size())
        throw std::out_of_range("no " + std::to_string(k) + "-cell with index " + std::to_string(cell));
    return cells_[k - 1][cell];
}

std::vector<std::size_t> DeltaComplex::vertices(std::size_t k, std::size_t cell) const
{
    if (k == 0)
        return {cell};
    auto front = vertices(k - 1, face(k, cell, k));
    auto back = vertices(k - 1, face(k, cell, 0));
    front.push_back(back.back());
    return front;
}

std::size_t DeltaComplex::leading_edge(std::size_t k, std::size_t cell) const
{
    if (k == 0)
        throw std::invalid_argument("a vertex has no leading edge");
    while (k > 1)
    {
        cell = face(k, cell, k);
        --k;
    }
    return cell;
}

std::int64_t DeltaComplex::euler_characteristic() const
{
    std::int64_t chi = 0;
    auto counts = cell_counts();
    for (std::size_t k = 0; k < counts.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(counts[k]);
    return chi;
}

// ---------------------------------------------------------------------------
// Cocycle

Cocycle::Cocycle(std::size_t rank, std::vector<std::vector<Rational>> values)
    : rank_(rank), values_(std::move(values))
{
    for (std::size_t e = 0; e < values_.size(); ++e)
    {
        if (values_[e].size() != rank_)
            throw ValidationError("cocycle value on edge " + std::to_string(e) + " has " +
                                      std::to_string(values_[e].size()) + " entries, expected " +
                                      std::to_string(rank_),
                                  1, e);
        for (auto &x : values_[e])
            x.canonicalize();
    }
}

Cocycle Cocycle::zero(std::size_t edge_count, std::size_t rank)
{
    return Cocycle(rank, std::vector<std::vector<Rational>>(edge_count, std::vector<Rational>(rank, Rational(0))));
}

Cocycle Cocycle::integral(std::size_t rank, const std::vector<ExponentVector> &values)
{
    std::vector<std::vector<Rational>> v;
    for (const auto &e : values)
    {
        if (e.rank() != rank)
            throw RankMismatch(rank, e.rank());
        std::vector<Rational> row;
        for (auto x : e.entries())
            row.emplace_back(static_cast<long>(x));
        v.push_back(std::move(row));
    }
    return Cocycle(rank, std::move(v));
}

Cocycle Cocycle::scalar(const std::vector<std::int64_t> &values)
{
    std::vector<ExponentVector> v;
    for (auto x : values)
        v.push_back(ExponentVector{x});
    return integral(1, v);
}

bool Cocycle::is_integral() const
{
    for (const auto &row : values_)
        for (const auto &x : row)
            if (x.get_den() != 1)
                return false;
    return true;
}

bool Cocycle::is_zero() const
{
    for (const auto &row : values_)
        for (const auto &x : row)
            if (x != 0)
                return false;
    return true;
}

ExponentVector Cocycle::exponent(std::size_t edge) const
{
    const auto &row = values_.at(edge);
    ExponentVector e(rank_);
    for (std::size_t k = 0; k < rank_; ++k)
    {
        if (row[k].get_den() != 1)
            throw std::domain_error("cocycle value " + row[k].get_str() + " on edge " + std::to_string(edge) +
                                    " is not an integer");
        if (!row[k].get_num().fits_slong_p())
            throw std::domain_error("cocycle value on edge " + std::to_string(edge) + " overflows");
        e[k] = row[k].get_num().get_si();
    }
    return e;
}

Cocycle Cocycle::project(const std::vector<std::size_t> &coordinates) const
{
    std::vector<std::vector<Rational>> v;
    for (const auto &row : values_)
    {
        std::vector<Rational> out;
        for (auto k : coordinates)
            out.push_back(row.at(k));
        v.push_back(std::move(out));
    }
    return Cocycle(coordinates.size(), std::move(v));
}

// ---------------------------------------------------------------------------
// EquivariantComplex

EquivariantComplex::EquivariantComplex(std::size_t rank, std::vector<std::size_t> cell_counts,
                                       std::vector<LaurentMatrix> boundaries, std::size_t class_rank)
    : rank_(rank), cell_counts_(std::move(cell_counts)), boundaries_(std::move(boundaries)), class_rank_(class_rank)
{
    if (boundaries_.size() + 1 != std::max<std::size_t>(cell_counts_.size(), 1))
        throw std::invalid_argument("equivariant complex needs one boundary matrix per positive degree");
    for (std::size_t k = 1; k < cell_counts_.size(); ++k)
    {
        const auto &d = boundaries_[k - 1];
        if (d.rows() != cell_counts_[k - 1] || d.cols() != cell_counts_[k] || d.rank() != rank_)
            throw std::invalid_argument("boundary matrix " + std::to_string(k) + " has the wrong shape or ring");
    }
}

const LaurentMatrix &EquivariantComplex::boundary(std::size_t k) const
{
    if (k == 0 || k > boundaries_.size())
        throw std::out_of_range("no boundary matrix in degree " + std::to_string(k));
    return boundaries_[k - 1];
}

std::int64_t EquivariantComplex::euler_characteristic() const
{
    std::int64_t chi = 0;
    for (std::size_t k = 0; k < cell_counts_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(cell_counts_[k]);
    return chi;
}

// ---------------------------------------------------------------------------
// validation

LaurentMatrix integral_boundary(const DeltaComplex &c, std::size_t k)
{
    LaurentMatrix d(c.cell_count(k - 1), c.cell_count(k), 0);
    for (std::size_t s = 0; s < c.cell_count(k); ++s)
    {
        auto f = c.faces(k, s);
        for (std::size_t i = 0; i < f.size(); ++i)
            d.add(f[i], s, LaurentPoly::constant(0, i % 2 == 0 ? 1 : -1));
    }
    return d;
}

void validate_complex(const DeltaComplex &c)
{
    const int n = c.dimension();
    for (int kk = 1; kk <= n; ++kk)
    {
        const auto k = static_cast<std::size_t>(kk);
        for (std::size_t s = 0; s < c.cell_count(k); ++s)
        {
            auto f = c.faces(k, s);
            if (f.size() != k + 1)
                throw ValidationError(std::to_string(k) + "-cell " + std::to_string(s) + " has " +
                                          std::to_string(f.size()) + " faces, expected " + std::to_string(k + 1),
                                      k, s);
            for (std::size_t i = 0; i < f.size(); ++i)
                if (f[i] >= c.cell_count(k - 1))
                    throw ValidationError(std::to_string(k) + "-cell " + std::to_string(s) + ": face " +
                                              std::to_string(i) + " refers to missing " + std::to_string(k - 1) +
                                              "-cell " + std::to_string(f[i]),
                                          k, s);
        }
    }
    for (int kk = 2; kk <= n; ++kk)
    {
        const auto k = static_cast<std::size_t>(kk);
        for (std::size_t s = 0; s < c.cell_count(k); ++s)
            for (std::size_t j = 1; j <= k; ++j)
                for (std::size_t i = 0; i < j; ++i)
                {
                    auto lhs = c.face(k - 1, c.face(k, s, j), i);
                    auto rhs = c.face(k - 1, c.face(k, s, i), j - 1);
                    if (lhs != rhs)
                        throw ValidationError(std::to_string(k) + "-cell " + std::to_string(s) +
                                                  " violates the face identity d_" + std::to_string(i) + " d_" +
                                                  std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                                                  std::to_string(i),
                                              k, s);
                }
    }
    for (int kk = 2; kk <= n; ++kk)
    {
        const auto k = static_cast<std::size_t>(kk);
        auto dd = integral_boundary(c, k - 1) * integral_boundary(c, k);
        if (!dd.is_zero())
        {
            auto cell = dd.entries().begin()->first.second;
            throw ValidationError("boundary of " + std::to_string(k) + "-cell " + std::to_string(cell) +
                                      " is not a cycle",
                                  k, cell);
        }
    }
}

void validate_cocycle(const DeltaComplex &c, const Cocycle &w)
{
    if (w.edge_count() != c.cell_count(1))
        throw ValidationError("cocycle has " + std::to_string(w.edge_count()) + " values but the complex has " +
                              std::to_string(c.cell_count(1)) + " edges");
    for (std::size_t s = 0; s < c.cell_count(2); ++s)
    {
        const auto &w0 = w.value(c.face(2, s, 0));
        const auto &w1 = w.value(c.face(2, s, 1));
        const auto &w2 = w.value(c.face(2, s, 2));
        if (add(w2, w0) != w1)
            throw ValidationError("cocycle condition fails on 2-cell " + std::to_string(s) + ": w(d2)=" +
                                      join_values(w2) + " + w(d0)=" + join_values(w0) + " != w(d1)=" +
                                      join_values(w1),
                                  2, s);
    }
}

// ---------------------------------------------------------------------------
// builders

EquivariantComplex build_equivariant(const DeltaComplex &c, const Cocycle &w)
{
    validate_complex(c);
    validate_cocycle(c, w);
    if (!w.is_integral())
        throw ValidationError("the equivariant complex needs an integral cocycle");

    const std::size_t r = w.rank();
    const int n = c.dimension();
    std::vector<LaurentMatrix> boundaries;
    for (int kk = 1; kk <= n; ++kk)
    {
        const auto k = static_cast<std::size_t>(kk);
        LaurentMatrix d(c.cell_count(k - 1), c.cell_count(k), r);
        for (std::size_t s = 0; s < c.cell_count(k); ++s)
        {
            auto f = c.faces(k, s);
            d.add(f[0], s, LaurentPoly::monomial(w.exponent(c.leading_edge(k, s))));
            for (std::size_t i = 1; i < f.size(); ++i)
                d.add(f[i], s, LaurentPoly::constant(r, i % 2 == 0 ? 1 : -1));
        }
        boundaries.push_back(std::move(d));
    }
    for (std::size_t k = 1; k < boundaries.size(); ++k)
    {
        auto dd = boundaries[k - 1] * boundaries[k];
        if (!dd.is_zero())
        {
            auto cell = dd.entries().begin()->first.second;
            throw ValidationError("lifted boundary does not square to zero at " + std::to_string(k + 1) + "-cell " +
                                      std::to_string(cell),
                                  k + 1, cell);
        }
    }
    auto counts = c.cell_counts();
    if (counts.empty())
        counts.push_back(0);
    return EquivariantComplex(r, std::move(counts), std::move(boundaries), cocycle_rank(c, w));
}

CoverResult cyclic_cover(const DeltaComplex &c, const Cocycle &w, std::int64_t m)
{
    if (m < 1)
        throw std::invalid_argument("cover degree must be positive, got " + std::to_string(m));
    validate_complex(c);
    validate_cocycle(c, w);
    if (w.rank() != 1 || !w.is_integral())
        throw ValidationError("cyclic cover needs a rank-1 integral cocycle (got rank " + std::to_string(w.rank()) +
                              ")");

    const auto sheets = static_cast<std::size_t>(m);
    auto sheet_shift = [m](std::int64_t j, std::int64_t t) {
        auto x = (j + t) % m;
        return static_cast<std::size_t>(x < 0 ? x + m : x);
    };

    std::vector<std::vector<DeltaComplex::Faces>> cells;
    const int n = c.dimension();
    for (int kk = 1; kk <= n; ++kk)
    {
        const auto k = static_cast<std::size_t>(kk);
        std::vector<DeltaComplex::Faces> level;
        level.reserve(c.cell_count(k) * sheets);
        for (std::size_t s = 0; s < c.cell_count(k); ++s)
        {
            const auto t0 = w.exponent(c.leading_edge(k, s))[0];
            auto f = c.faces(k, s);
            for (std::int64_t j = 0; j < m; ++j)
            {
                DeltaComplex::Faces lifted(f.size());
                for (std::size_t i = 0; i < f.size(); ++i)
                    lifted[i] = f[i] * sheets + sheet_shift(j, i == 0 ? t0 : 0);
                level.push_back(std::move(lifted));
            }
        }
        cells.push_back(std::move(level));
    }

    std::vector<std::vector<Rational>> values;
    for (std::size_t e = 0; e < c.cell_count(1); ++e)
        for (std::size_t j = 0; j < sheets; ++j)
            values.push_back(w.value(e));

    CoverResult out{DeltaComplex(c.cell_count(0) * sheets, std::move(cells)), Cocycle(1, std::move(values))};
    validate_complex(out.complex);
    validate_cocycle(out.complex, out.cocycle);
    return out;
}

// ---------------------------------------------------------------------------
// cocycle tools

CycleBasis cycle_basis(const DeltaComplex &c, const Cocycle &w)
{
    if (w.edge_count() != c.cell_count(1))
        throw ValidationError("cocycle does not match the edge count of the complex");
    const std::size_t vertices = c.cell_count(0), edges = c.cell_count(1), r = w.rank();

    std::vector<std::vector<std::size_t>> incident(vertices);
    for (std::size_t e = 0; e < edges; ++e)
    {
        incident[c.face(1, e, 1)].push_back(e);
        if (c.face(1, e, 0) != c.face(1, e, 1))
            incident[c.face(1, e, 0)].push_back(e);
    }

    CycleBasis out;
    out.potential.assign(vertices, std::vector<Rational>(r, Rational(0)));
    out.tree_edge.assign(edges, false);
    std::vector<bool> seen(vertices, false);
    for (std::size_t root = 0; root < vertices; ++root)
    {
        if (seen[root])
            continue;
        seen[root] = true;
        std::deque<std::size_t> queue{root};
        while (!queue.empty())
        {
            const auto u = queue.front();
            queue.pop_front();
            for (auto e : incident[u])
            {
                const auto tail = c.face(1, e, 1), head = c.face(1, e, 0);
                const auto other = tail == u ? head : tail;
                if (seen[other])
                    continue;
                seen[other] = true;
                out.tree_edge[e] = true;
                out.potential[other] = out.potential[u];
                for (std::size_t k = 0; k < r; ++k)
                {
                    if (other == head)
                        out.potential[other][k] += w.value(e)[k];
                    else
                        out.potential[other][k] -= w.value(e)[k];
                }
                queue.push_back(other);
            }
        }
    }
    for (std::size_t e = 0; e < edges; ++e)
    {
        if (out.tree_edge[e])
            continue;
        const auto tail = c.face(1, e, 1), head = c.face(1, e, 0);
        std::vector<Rational> period(r);
        for (std::size_t k = 0; k < r; ++k)
            period[k] = w.value(e)[k] + out.potential[tail][k] - out.potential[head][k];
        out.non_tree_edges.push_back(e);
        out.periods.push_back(std::move(period));
    }
    return out;
}

std::size_t cocycle_rank(const DeltaComplex &c, const Cocycle &w)
{
    return linalg::rational_rank(cycle_basis(c, w).periods);
}

Approximation rational_approximation(const DeltaComplex &c, const Cocycle &w, std::int64_t denominator_bound)
{
    if (denominator_bound < 1)
        throw std::invalid_argument("denominator bound must be at least 1");
    validate_complex(c);
    validate_cocycle(c, w);

    const std::size_t r = w.rank(), edges = c.cell_count(1);
    const auto basis = cycle_basis(c, w);

    // Lattice generated by the periods; w_hat is defined by sending a basis B of
    // it to an integer matrix close to q*B, so every relation among periods
    // (in particular every cycle in ker w) survives.
    Integer den = 1;
    for (const auto &p : basis.periods)
        for (const auto &x : p)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<Integer>> scaled;
    for (const auto &p : basis.periods)
    {
        std::vector<Integer> v;
        for (const auto &x : p)
            v.push_back(x.get_num() * (den / x.get_den()));
        scaled.push_back(std::move(v));
    }
    const auto lattice = linalg::lattice_basis(scaled, r);
    const std::size_t lattice_rank = lattice.basis.size();
    std::vector<std::vector<Integer>> coords;
    for (const auto &v : scaled)
        coords.push_back(lattice.coordinates(v));
    std::vector<std::size_t> period_slot(edges, edges);
    for (std::size_t i = 0; i < basis.non_tree_edges.size(); ++i)
        period_slot[basis.non_tree_edges[i]] = i;

    std::optional<Approximation> best;
    for (std::int64_t q = 1; q <= denominator_bound; ++q)
    {
        const Rational qq(static_cast<long>(q));
        std::vector<std::vector<Rational>> values(edges, std::vector<Rational>(r));
        Rational worst = 0;
        for (std::size_t k = 0; k < r; ++k)
        {
            std::vector<Integer> gauge;
            for (const auto &f : basis.potential)
                gauge.push_back(round_of(qq * f[k]));

            // Candidate rows: each coordinate of q*B rounded down or up.
            std::vector<std::pair<Integer, Integer>> choices;
            for (std::size_t j = 0; j < lattice_rank; ++j)
            {
                Rational target = qq * Rational(lattice.basis[j][k], den);
                target.canonicalize();
                choices.emplace_back(floor_of(target), ceil_of(target));
            }
            std::optional<std::pair<Rational, std::vector<Integer>>> best_row;
            for (std::size_t mask = 0; mask < (std::size_t{1} << lattice_rank); ++mask)
            {
                std::vector<Integer> row(lattice_rank);
                bool duplicate = false;
                for (std::size_t j = 0; j < lattice_rank; ++j)
                {
                    const bool up = (mask >> j) & 1;
                    if (up && choices[j].first == choices[j].second)
                        duplicate = true;
                    row[j] = up ? choices[j].second : choices[j].first;
                }
                if (duplicate)
                    continue;
                Rational err = 0;
                for (std::size_t e = 0; e < edges; ++e)
                {
                    Integer v = gauge[c.face(1, e, 0)] - gauge[c.face(1, e, 1)];
                    if (period_slot[e] < edges)
                        for (std::size_t j = 0; j < lattice_rank; ++j)
                            v += row[j] * coords[period_slot[e]][j];
                    Rational diff = Rational(v) / qq - w.value(e)[k];
                    err = std::max(err, Rational(abs(diff)));
                }
                if (!best_row || err < best_row->first)
                    best_row.emplace(err, row);
            }
            worst = std::max(worst, best_row->first);
            for (std::size_t e = 0; e < edges; ++e)
            {
                Integer v = gauge[c.face(1, e, 0)] - gauge[c.face(1, e, 1)];
                if (period_slot[e] < edges)
                    for (std::size_t j = 0; j < lattice_rank; ++j)
                        v += best_row->second[j] * coords[period_slot[e]][j];
                values[e][k] = Rational(v);
            }
        }
        if (!best || worst < best->error)
        {
            Rational scale(1, static_cast<unsigned long>(q));
            best = Approximation{Cocycle(r, std::move(values)), scale, worst};
        }
        if (best->error == 0)
            break;
    }
    validate_cocycle(c, best->integral);
    return *best;
}

} // namespace novikov
