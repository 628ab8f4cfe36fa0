#pragma once

// Integer polynomials in r variables and Kronecker-packed arithmetic.  A
// polynomial with exponents in a box [0, D_1] x ... x [0, D_r] becomes the big
// integer obtained by substituting z_k = 2^(64 L s_k), where s_k are the
// mixed-radix strides of the box and each coefficient occupies L limbs in
// balanced form.  Products and exact quotients of packed integers are then
// products and exact quotients of the polynomials, as long as every
// coefficient involved stays below 2^(64 L - 1) in absolute value.

#include <cstdint>
#include <vector>

#include "novikov/laurent.hpp"

namespace novikov::kronecker
{

struct IntPoly
{
    std::size_t rank = 0;
    std::vector<std::int64_t> exps;  // term t occupies exps[t * rank, (t + 1) * rank)
    std::vector<Integer> coefs;

    std::size_t terms() const noexcept { return coefs.size(); }
    bool is_zero() const noexcept { return coefs.empty(); }

    std::vector<std::int64_t> min_exponents() const;
    std::vector<std::int64_t> max_exponents() const;
    void shift(const std::vector<std::int64_t> &by);
    /// Sum of the absolute values of the coefficients.
    Integer norm1() const;
};

/// Requires integral coefficients.
IntPoly from_laurent(const LaurentPoly &p);
LaurentPoly to_laurent(const IntPoly &p);

struct Layout
{
    std::vector<std::uint64_t> stride;
    std::uint64_t slots = 0;
    std::size_t limbs = 0;
};

/// Box with the given per-variable maximum degrees.  Returns an empty layout
/// (slots == 0) when slots * limbs would exceed `max_limbs`.
Layout make_layout(const std::vector<std::int64_t> &max_degree, std::size_t limbs, std::uint64_t max_limbs);

/// Exponents must be nonnegative and inside the layout's box.
Integer pack(const IntPoly &p, const Layout &layout);
IntPoly unpack(const Integer &v, const Layout &layout, std::size_t rank);

} // namespace novikov::kronecker
