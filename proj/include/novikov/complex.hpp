#pragma once

// Finite Delta-complexes (ordered semi-simplicial sets), edge cocycles, and
// the equivariant chain complex of the free abelian cover they determine.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "novikov/laurent.hpp"
#include "novikov/matrix.hpp"

namespace novikov
{

/// Raised by the validators and builders.  `dimension`/`cell` point at the
/// offending cell when there is one.
class ValidationError : public std::runtime_error
{
public:
    ValidationError(const std::string &what, std::optional<std::size_t> dimension = std::nullopt,
                    std::optional<std::size_t> cell = std::nullopt);

    std::optional<std::size_t> dimension() const noexcept { return dimension_; }
    std::optional<std::size_t> cell() const noexcept { return cell_; }

private:
    std::optional<std::size_t> dimension_;
    std::optional<std::size_t> cell_;
};

/// A k-cell (k >= 1) is stored as the tuple of its k+1 faces (d_0, ..., d_k),
/// each an index into the list of (k-1)-cells.  Vertices carry no data.
class DeltaComplex
{
public:
    using Faces = std::vector<std::size_t>;

    DeltaComplex() = default;
    /// `cells[k-1]` lists the k-cells.  No validation happens here; call
    /// validate_complex before using the complex.
    DeltaComplex(std::size_t vertex_count, std::vector<std::vector<Faces>> cells);

    /// Top dimension; -1 for the empty complex.
    int dimension() const noexcept;
    std::size_t cell_count(std::size_t k) const;
    std::vector<std::size_t> cell_counts() const;
    std::size_t total_cells() const;

    std::span<const std::size_t> faces(std::size_t k, std::size_t cell) const;
    std::size_t face(std::size_t k, std::size_t cell, std::size_t i) const { return faces(k, cell)[i]; }

    /// Ordered vertices v_0, ..., v_k of a k-cell.
    std::vector<std::size_t> vertices(std::size_t k, std::size_t cell) const;
    /// The edge v_0 v_1 of a k-cell (k >= 1), i.e. d_2 d_3 ... d_k applied.
    std::size_t leading_edge(std::size_t k, std::size_t cell) const;

    std::int64_t euler_characteristic() const;

    bool operator==(const DeltaComplex &other) const = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Faces>> cells_;
};

/// Edge weights with values in Q^r.  Integral cocycles (all values integers)
/// define a Z^r-cover and feed build_equivariant.
class Cocycle
{
public:
    Cocycle() = default;
    Cocycle(std::size_t rank, std::vector<std::vector<Rational>> values);

    static Cocycle zero(std::size_t edge_count, std::size_t rank = 0);
    static Cocycle integral(std::size_t rank, const std::vector<ExponentVector> &values);
    /// Rank-1 integral cocycle from a list of integers.
    static Cocycle scalar(const std::vector<std::int64_t> &values);

    std::size_t rank() const noexcept { return rank_; }
    std::size_t edge_count() const noexcept { return values_.size(); }
    const std::vector<Rational> &value(std::size_t edge) const { return values_.at(edge); }
    const std::vector<std::vector<Rational>> &values() const noexcept { return values_; }

    bool is_integral() const;
    bool is_zero() const;
    /// Throws std::domain_error when the value is not integral.
    ExponentVector exponent(std::size_t edge) const;

    /// Keeps only the listed coordinates, in order.
    Cocycle project(const std::vector<std::size_t> &coordinates) const;

    bool operator==(const Cocycle &other) const = default;

private:
    std::size_t rank_ = 0;
    std::vector<std::vector<Rational>> values_;
};

/// Chain complex of free modules over the Laurent ring.  boundary(k) is the
/// matrix of d_k : C_k -> C_{k-1}, of shape cells(k-1) x cells(k).
class EquivariantComplex
{
public:
    EquivariantComplex(std::size_t rank, std::vector<std::size_t> cell_counts,
                       std::vector<LaurentMatrix> boundaries, std::size_t class_rank);

    std::size_t rank() const noexcept { return rank_; }
    /// Rank of the image of H_1 under the cocycle (rank of the class).
    std::size_t class_rank() const noexcept { return class_rank_; }
    int dimension() const noexcept { return static_cast<int>(cell_counts_.size()) - 1; }
    std::size_t cell_count(std::size_t k) const { return cell_counts_.at(k); }
    const std::vector<std::size_t> &cell_counts() const noexcept { return cell_counts_; }
    std::int64_t euler_characteristic() const;

    /// d_k for 1 <= k <= dimension.  Throws std::out_of_range otherwise.
    const LaurentMatrix &boundary(std::size_t k) const;

private:
    std::size_t rank_;
    std::vector<std::size_t> cell_counts_;
    std::vector<LaurentMatrix> boundaries_;
    std::size_t class_rank_;
};

/// Checks face references and the simplicial identities d_i d_j = d_{j-1} d_i
/// (i < j), then that the integral boundary squares to zero.
void validate_complex(const DeltaComplex &c);

/// Checks w(d_2 s) + w(d_0 s) = w(d_1 s) on every 2-cell s.
void validate_cocycle(const DeltaComplex &c, const Cocycle &w);

/// Ordinary integral boundary d_k as a constant matrix over the rank-0 ring.
LaurentMatrix integral_boundary(const DeltaComplex &c, std::size_t k);

/// Lifts every k-cell to start at lattice position 0: the d_0 face is twisted
/// by z^{w(leading edge)}, the remaining faces carry the usual signs.
EquivariantComplex build_equivariant(const DeltaComplex &c, const Cocycle &w);

struct CoverResult
{
    DeltaComplex complex;
    Cocycle cocycle;
};

/// The m-sheeted cyclic cover belonging to w^{-1}(mZ).  Cell (s, j) has index
/// s * m + j; its i-th face is (d_i s, j + t_i mod m) with t_0 the weight of
/// the leading edge and t_i = 0 otherwise.
CoverResult cyclic_cover(const DeltaComplex &c, const Cocycle &w, std::int64_t m);

/// Rank of the subgroup of Q^r generated by the periods of w on a cycle basis.
std::size_t cocycle_rank(const DeltaComplex &c, const Cocycle &w);

struct Approximation
{
    Cocycle integral;   // integral cocycle w_hat
    Rational scale;     // lambda > 0, equal to 1/q
    Rational error;     // max over edges and coordinates of |lambda * w_hat - w|
};

/// Common-denominator approximation of a rational cocycle by lambda * w_hat
/// with lambda = 1/q, q <= denominator_bound.  w_hat vanishes on every
/// integral cycle on which w vanishes.
Approximation rational_approximation(const DeltaComplex &c, const Cocycle &w, std::int64_t denominator_bound);

/// Spanning-forest data of the 1-skeleton: potentials with
/// w(e) = f(d_0 e) - f(d_1 e) on tree edges and the period of the fundamental
/// cycle of each non-tree edge.
struct CycleBasis
{
    std::vector<std::vector<Rational>> potential;  // per vertex
    std::vector<bool> tree_edge;
    std::vector<std::size_t> non_tree_edges;
    std::vector<std::vector<Rational>> periods;    // aligned with non_tree_edges
};

CycleBasis cycle_basis(const DeltaComplex &c, const Cocycle &w);

} // namespace novikov
