#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "novikov/laurent.hpp"

namespace novikov
{

/// Sparse matrix over the Laurent ring Q[z_1^+-1, ..., z_r^+-1].  Only
/// nonzero entries are stored.
class LaurentMatrix
{
public:
    using Index = std::pair<std::size_t, std::size_t>;

    LaurentMatrix() = default;
    LaurentMatrix(std::size_t rows, std::size_t cols, std::size_t rank)
        : rows_(rows), cols_(cols), rank_(rank)
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return rank_; }

    /// Entry (i, j); zero polynomial when not stored.
    LaurentPoly at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, LaurentPoly value);
    void add(std::size_t i, std::size_t j, const LaurentPoly &value);

    const std::map<Index, LaurentPoly> &entries() const noexcept { return entries_; }
    std::size_t nonzero_count() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    LaurentMatrix operator*(const LaurentMatrix &other) const;
    LaurentMatrix transposed() const;

    /// Multiplies row i (or column j) by the unit z^e.
    LaurentMatrix with_row_shift(std::size_t i, const ExponentVector &e) const;
    LaurentMatrix with_col_shift(std::size_t j, const ExponentVector &e) const;

    bool operator==(const LaurentMatrix &other) const = default;

private:
    void check_index(std::size_t i, std::size_t j) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t rank_ = 0;
    std::map<Index, LaurentPoly> entries_;
};

/// Block-diagonal sum; both blocks must share the ring rank.
LaurentMatrix block_diagonal(const LaurentMatrix &a, const LaurentMatrix &b);

} // namespace novikov
