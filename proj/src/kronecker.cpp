#include "kronecker.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace novikov::kronecker
{

std::vector<std::int64_t> IntPoly::min_exponents() const
{
    std::vector<std::int64_t> out(rank, 0);
    for (std::size_t t = 0; t < terms(); ++t)
        for (std::size_t k = 0; k < rank; ++k)
            out[k] = t == 0 ? exps[k] : std::min(out[k], exps[t * rank + k]);
    return out;
}

std::vector<std::int64_t> IntPoly::max_exponents() const
{
    std::vector<std::int64_t> out(rank, 0);
    for (std::size_t t = 0; t < terms(); ++t)
        for (std::size_t k = 0; k < rank; ++k)
            out[k] = t == 0 ? exps[k] : std::max(out[k], exps[t * rank + k]);
    return out;
}

void IntPoly::shift(const std::vector<std::int64_t> &by)
{
    for (std::size_t t = 0; t < terms(); ++t)
        for (std::size_t k = 0; k < rank; ++k)
            exps[t * rank + k] += by[k];
}

Integer IntPoly::norm1() const
{
    Integer s = 0;
    for (const auto &c : coefs)
        s += abs(c);
    return s;
}

IntPoly from_laurent(const LaurentPoly &p)
{
    IntPoly out;
    out.rank = p.rank();
    out.exps.reserve(p.term_count() * p.rank());
    out.coefs.reserve(p.term_count());
    for (const auto &[e, c] : p.terms())
    {
        if (c.get_den() != 1)
            throw std::invalid_argument("integer polynomial expected, got coefficient " + c.get_str());
        out.exps.insert(out.exps.end(), e.entries().begin(), e.entries().end());
        out.coefs.push_back(c.get_num());
    }
    return out;
}

LaurentPoly to_laurent(const IntPoly &p)
{
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(p.terms());
    for (std::size_t t = 0; t < p.terms(); ++t)
    {
        std::vector<std::int64_t> e(p.exps.begin() + static_cast<std::ptrdiff_t>(t * p.rank),
                                    p.exps.begin() + static_cast<std::ptrdiff_t>((t + 1) * p.rank));
        terms.emplace_back(ExponentVector(std::move(e)), Rational(p.coefs[t]));
    }
    return LaurentPoly(p.rank, std::move(terms));
}

Layout make_layout(const std::vector<std::int64_t> &max_degree, std::size_t limbs, std::uint64_t max_limbs)
{
    Layout out;
    out.limbs = limbs;
    std::uint64_t slots = 1;
    for (auto d : max_degree)
    {
        out.stride.push_back(slots);
        const auto radix = static_cast<std::uint64_t>(d) + 1;
        if (slots > max_limbs / limbs / radix)
            return Layout{};
        slots *= radix;
    }
    out.slots = slots;
    return out;
}

namespace
{

Integer from_limbs(const std::vector<mp_limb_t> &buf)
{
    Integer out;
    if (buf.empty())
        return out;
    auto *dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(buf.size()));
    std::memcpy(dst, buf.data(), buf.size() * sizeof(mp_limb_t));
    mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(buf.size()));
    return out;
}

} // namespace

Integer pack(const IntPoly &p, const Layout &layout)
{
    const std::size_t L = layout.limbs;
    std::vector<mp_limb_t> pos(layout.slots * L, 0), neg;
    bool any_negative = false;
    for (std::size_t t = 0; t < p.terms(); ++t)
    {
        std::uint64_t slot = 0;
        for (std::size_t k = 0; k < p.rank; ++k)
            slot += static_cast<std::uint64_t>(p.exps[t * p.rank + k]) * layout.stride[k];
        if (slot >= layout.slots)
            throw std::logic_error("exponent outside the packed layout");
        const auto &c = p.coefs[t];
        const auto size = mpz_size(c.get_mpz_t());
        if (size > L)
            throw std::logic_error("coefficient too large for the packed layout");
        auto &buf = sgn(c) > 0 ? pos : neg;
        if (sgn(c) < 0 && !any_negative)
        {
            neg.assign(layout.slots * L, 0);
            any_negative = true;
        }
        std::memcpy(buf.data() + slot * L, mpz_limbs_read(c.get_mpz_t()), size * sizeof(mp_limb_t));
    }
    Integer out = from_limbs(pos);
    if (any_negative)
        out -= from_limbs(neg);
    return out;
}

IntPoly unpack(const Integer &v, const Layout &layout, std::size_t rank)
{
    IntPoly out;
    out.rank = rank;
    const std::size_t L = layout.limbs;
    const Integer magnitude = abs(v);
    const bool negative = sgn(v) < 0;
    const auto n = mpz_size(magnitude.get_mpz_t());
    const mp_limb_t *d = mpz_limbs_read(magnitude.get_mpz_t());

    Integer full = 1, half = 1;
    mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), 64 * L);
    mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), 64 * L - 1);

    std::vector<mp_limb_t> digit_limbs(L);
    bool carry = false;
    std::uint64_t slot = 0;
    for (; slot < layout.slots; ++slot)
    {
        const std::size_t off = slot * L;
        if (off >= n && !carry)
            break;
        for (std::size_t i = 0; i < L; ++i)
            digit_limbs[i] = off + i < n ? d[off + i] : 0;
        Integer digit = from_limbs(digit_limbs);
        if (carry)
            ++digit;
        carry = digit >= half;
        if (carry)
            digit -= full;
        if (digit == 0)
            continue;
        std::uint64_t rest = slot;
        out.exps.resize(out.exps.size() + rank);
        for (std::size_t k = rank; k-- > 0;)
        {
            out.exps[out.exps.size() - rank + k] = static_cast<std::int64_t>(rest / layout.stride[k]);
            rest %= layout.stride[k];
        }
        out.coefs.push_back(negative ? Integer(-digit) : digit);
    }
    if (carry || slot * L < n)
        throw std::logic_error("packed value does not fit its layout");
    return out;
}

} // namespace novikov::kronecker
