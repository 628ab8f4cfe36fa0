#include "novikov/matrix.hpp"

#include <stdexcept>
#include <string>

namespace novikov
{

void LaurentMatrix::check_index(std::size_t i, std::size_t j) const
{
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                                ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

LaurentPoly LaurentMatrix::at(std::size_t i, std::size_t j) const
{
    check_index(i, j);
    auto it = entries_.find({i, j});
    return it == entries_.end() ? LaurentPoly::zero(rank_) : it->second;
}

void LaurentMatrix::set(std::size_t i, std::size_t j, LaurentPoly value)
{
    check_index(i, j);
    if (value.rank() != rank_)
        throw RankMismatch(rank_, value.rank());
    if (value.is_zero())
        entries_.erase({i, j});
    else
        entries_[{i, j}] = std::move(value);
}

void LaurentMatrix::add(std::size_t i, std::size_t j, const LaurentPoly &value)
{
    set(i, j, at(i, j) + value);
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix &other) const
{
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix shape mismatch in product");
    if (rank_ != other.rank_)
        throw RankMismatch(rank_, other.rank_);
    // Bucket the right factor by row for a sparse product.
    std::map<std::size_t, std::vector<std::pair<std::size_t, const LaurentPoly *>>> by_row;
    for (const auto &[idx, v] : other.entries_)
        by_row[idx.first].emplace_back(idx.second, &v);
    std::map<Index, LaurentPoly> acc;
    for (const auto &[idx, a] : entries_)
    {
        auto it = by_row.find(idx.second);
        if (it == by_row.end())
            continue;
        for (const auto &[j, b] : it->second)
        {
            auto [pos, inserted] = acc.try_emplace({idx.first, j}, LaurentPoly::zero(rank_));
            pos->second += a * *b;
        }
    }
    LaurentMatrix out(rows_, other.cols_, rank_);
    for (auto &[idx, v] : acc)
        if (!v.is_zero())
            out.entries_.emplace(idx, std::move(v));
    return out;
}

LaurentMatrix LaurentMatrix::transposed() const
{
    LaurentMatrix out(cols_, rows_, rank_);
    for (const auto &[idx, v] : entries_)
        out.entries_.emplace(Index{idx.second, idx.first}, v);
    return out;
}

LaurentMatrix LaurentMatrix::with_row_shift(std::size_t i, const ExponentVector &e) const
{
    if (i >= rows_)
        throw std::out_of_range("row " + std::to_string(i) + " out of range");
    LaurentMatrix out(*this);
    for (auto &[idx, v] : out.entries_)
        if (idx.first == i)
            v = v.shifted(e);
    return out;
}

LaurentMatrix LaurentMatrix::with_col_shift(std::size_t j, const ExponentVector &e) const
{
    if (j >= cols_)
        throw std::out_of_range("column " + std::to_string(j) + " out of range");
    LaurentMatrix out(*this);
    for (auto &[idx, v] : out.entries_)
        if (idx.second == j)
            v = v.shifted(e);
    return out;
}

LaurentMatrix block_diagonal(const LaurentMatrix &a, const LaurentMatrix &b)
{
    if (a.rank() != b.rank())
        throw RankMismatch(a.rank(), b.rank());
    LaurentMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.rank());
    for (const auto &[idx, v] : a.entries())
        out.set(idx.first, idx.second, v);
    for (const auto &[idx, v] : b.entries())
        out.set(a.rows() + idx.first, a.cols() + idx.second, v);
    return out;
}

} // namespace novikov
