#include "novikov/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace novikov
{

RankMismatch::RankMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("rank mismatch: expected r=" + std::to_string(expected) +
                            ", got r=" + std::to_string(got))
{
}

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector ExponentVector::unit(std::size_t rank, std::size_t axis)
{
    ExponentVector e(rank);
    e.entries_.at(axis) = 1;
    return e;
}

bool ExponentVector::is_zero() const noexcept
{
    return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t ExponentVector::total_degree() const noexcept
{
    std::int64_t d = 0;
    for (auto x : entries_)
        d += x;
    return d;
}

ExponentVector ExponentVector::operator+(const ExponentVector &other) const
{
    ExponentVector out(*this);
    out += other;
    return out;
}

ExponentVector &ExponentVector::operator+=(const ExponentVector &other)
{
    if (other.rank() != rank())
        throw RankMismatch(rank(), other.rank());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

ExponentVector ExponentVector::operator-() const
{
    ExponentVector out(*this);
    for (auto &x : out.entries_)
        x = -x;
    return out;
}

ExponentVector ExponentVector::operator-(const ExponentVector &other) const
{
    return *this + (-other);
}

std::string ExponentVector::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        if (i)
            s += ",";
        s += std::to_string(entries_[i]);
    }
    return s + "]";
}

bool grlex_less(const ExponentVector &a, const ExponentVector &b)
{
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da < db;
    return a < b;
}

// ---------------------------------------------------------------------------
// modular arithmetic

namespace modular
{

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t result = 1 % p;
    a %= p;
    while (e)
    {
        if (e & 1)
            result = mul(result, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        throw std::domain_error("zero has no inverse modulo " + std::to_string(p));
    return pow(a, p - 2, p);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0)
    {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
    {
        std::uint64_t x = pow(a % n, d, n);
        if (a % n == 0 || x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i)
        {
            x = mul(x, x, n);
            if (x == n - 1)
            {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::optional<std::uint64_t> reduce(const Rational &q, std::uint64_t p)
{
    Integer pz(static_cast<unsigned long>(p));
    Integer num = q.get_num() % pz;
    if (num < 0)
        num += pz;
    Integer den = q.get_den() % pz;
    if (den == 0)
        return std::nullopt;
    auto n = static_cast<std::uint64_t>(num.get_ui());
    auto d = static_cast<std::uint64_t>(den.get_ui());
    return mul(n, inverse(d, p), p);
}

} // namespace modular

// ---------------------------------------------------------------------------
// SpecPoint

SpecPoint SpecPoint::finite_field(std::uint64_t prime, std::vector<std::uint64_t> coords)
{
    if (!modular::is_prime(prime) || prime > (1ULL << 62))
        throw std::invalid_argument("finite-field point needs a prime below 2^62, got " + std::to_string(prime));
    for (auto &c : coords)
    {
        c %= prime;
        if (c == 0)
            throw std::invalid_argument("finite-field coordinate is not a unit mod " + std::to_string(prime));
    }
    return SpecPoint(FiniteFieldPoint{prime, std::move(coords)});
}

SpecPoint SpecPoint::unit_complex(std::vector<double> turns)
{
    for (auto &t : turns)
    {
        if (!std::isfinite(t))
            throw std::invalid_argument("unit-complex angle must be finite");
        t -= std::floor(t);
    }
    return SpecPoint(UnitComplexPoint{std::move(turns)});
}

SpecPoint SpecPoint::rational(std::vector<Rational> coords)
{
    for (auto &c : coords)
    {
        c.canonicalize();
        if (c == 0)
            throw std::invalid_argument("rational coordinate must be nonzero");
    }
    return SpecPoint(RationalPoint{std::move(coords)});
}

SpecPoint SpecPoint::trivial(std::size_t rank)
{
    return rational(std::vector<Rational>(rank, Rational(1)));
}

std::size_t SpecPoint::rank() const noexcept
{
    return std::visit(
        [](const auto &p) -> std::size_t {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, UnitComplexPoint>)
                return p.turns.size();
            else
                return p.coords.size();
        },
        storage_);
}

std::string SpecPoint::to_string() const
{
    std::ostringstream os;
    if (auto *ff = std::get_if<FiniteFieldPoint>(&storage_))
    {
        os << "F_" << ff->prime << "(";
        for (std::size_t i = 0; i < ff->coords.size(); ++i)
            os << (i ? "," : "") << ff->coords[i];
        os << ")";
    }
    else if (auto *u = std::get_if<UnitComplexPoint>(&storage_))
    {
        os.precision(17);
        os << "S1(";
        for (std::size_t i = 0; i < u->turns.size(); ++i)
            os << (i ? "," : "") << u->turns[i];
        os << ")";
    }
    else
    {
        const auto &q = std::get<RationalPoint>(storage_);
        os << "Q(";
        for (std::size_t i = 0; i < q.coords.size(); ++i)
            os << (i ? "," : "") << q.coords[i].get_str();
        os << ")";
    }
    return os.str();
}

bool is_invertible(const Scalar &s)
{
    return std::visit(
        [](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::complex<double>>)
                return std::abs(v) != 0.0;
            else
                return v != 0;
        },
        s);
}

// ---------------------------------------------------------------------------
// LaurentPoly

namespace
{

void canonicalize(std::vector<LaurentPoly::Term> &terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();)
    {
        std::size_t j = i + 1;
        Rational c = terms[i].second;
        while (j < terms.size() && terms[j].first == terms[i].first)
            c += terms[j++].second;
        if (c != 0)
        {
            if (out != i)
                terms[out].first = std::move(terms[i].first);
            terms[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

} // namespace

LaurentPoly::LaurentPoly(std::size_t rank, std::vector<Term> terms)
    : rank_(rank), terms_(std::move(terms))
{
    for (auto &t : terms_)
    {
        if (t.first.rank() != rank_)
            throw RankMismatch(rank_, t.first.rank());
        t.second.canonicalize();
    }
    canonicalize(terms_);
}

LaurentPoly LaurentPoly::constant(std::size_t rank, const Rational &c)
{
    return LaurentPoly(rank, {{ExponentVector(rank), c}});
}

LaurentPoly LaurentPoly::monomial(const ExponentVector &e, const Rational &c)
{
    return LaurentPoly(e.rank(), {{e, c}});
}

LaurentPoly LaurentPoly::variable(std::size_t rank, std::size_t axis)
{
    return monomial(ExponentVector::unit(rank, axis));
}

bool LaurentPoly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero());
}

void LaurentPoly::check_rank(const LaurentPoly &other) const
{
    if (other.rank_ != rank_)
        throw RankMismatch(rank_, other.rank_);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &other) const
{
    check_rank(other);
    LaurentPoly out(rank_);
    out.terms_.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin(), b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end())
    {
        if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first))
            out.terms_.push_back(*a++);
        else if (a == terms_.end() || b->first < a->first)
            out.terms_.push_back(*b++);
        else
        {
            Rational c = a->second + b->second;
            if (c != 0)
                out.terms_.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    return out;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly out(*this);
    for (auto &t : out.terms_)
        t.second = -t.second;
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &other) const
{
    return *this + (-other);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &other) const
{
    check_rank(other);
    if (is_zero() || other.is_zero())
        return LaurentPoly(rank_);
    std::vector<Term> products;
    products.reserve(terms_.size() * other.terms_.size());
    for (const auto &[ea, ca] : terms_)
        for (const auto &[eb, cb] : other.terms_)
            products.emplace_back(ea + eb, ca * cb);
    LaurentPoly out(rank_);
    out.terms_ = std::move(products);
    canonicalize(out.terms_);
    return out;
}

LaurentPoly LaurentPoly::scaled(const Rational &c) const
{
    if (c == 0)
        return LaurentPoly(rank_);
    LaurentPoly out(*this);
    for (auto &t : out.terms_)
        t.second *= c;
    return out;
}

LaurentPoly LaurentPoly::shifted(const ExponentVector &e) const
{
    if (e.rank() != rank_)
        throw RankMismatch(rank_, e.rank());
    LaurentPoly out(*this);
    // Translation preserves the lex order, so no re-sort is needed.
    for (auto &t : out.terms_)
        t.first += e;
    return out;
}

ExponentVector LaurentPoly::min_exponents() const
{
    ExponentVector m(rank_);
    if (terms_.empty())
        return m;
    m = terms_.front().first;
    for (const auto &t : terms_)
        for (std::size_t k = 0; k < rank_; ++k)
            m[k] = std::min(m[k], t.first[k]);
    return m;
}

ExponentVector LaurentPoly::max_exponents() const
{
    ExponentVector m(rank_);
    if (terms_.empty())
        return m;
    m = terms_.front().first;
    for (const auto &t : terms_)
        for (std::size_t k = 0; k < rank_; ++k)
            m[k] = std::max(m[k], t.first[k]);
    return m;
}

std::int64_t LaurentPoly::spread() const
{
    auto lo = min_exponents(), hi = max_exponents();
    std::int64_t s = 0;
    for (std::size_t k = 0; k < rank_; ++k)
        s += hi[k] - lo[k];
    return s;
}

Rational LaurentPoly::content() const
{
    if (terms_.empty())
        return Rational(1);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto &t : terms_)
    {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly &divisor) const
{
    check_rank(divisor);
    if (divisor.is_zero())
        throw std::domain_error("division by the zero polynomial");
    if (is_zero())
        return LaurentPoly(rank_);
    if (divisor.is_monomial())
    {
        const auto &[e, c] = divisor.terms_.front();
        return shifted(-e).scaled(1 / c);
    }

    // Exponents of an exact quotient lie in the box
    // [min(a) - min(b), max(a) - max(b)] coordinatewise.
    auto lo = min_exponents() - divisor.min_exponents();
    auto hi = max_exponents() - divisor.max_exponents();
    for (std::size_t k = 0; k < rank_; ++k)
        if (lo[k] > hi[k])
            return std::nullopt;

    const auto &[lead_e, lead_c] = divisor.terms_.back();
    std::vector<Term> quotient;
    LaurentPoly rem(*this);
    while (!rem.is_zero())
    {
        const auto &[re, rc] = rem.terms_.back();
        ExponentVector t = re - lead_e;
        for (std::size_t k = 0; k < rank_; ++k)
            if (t[k] < lo[k] || t[k] > hi[k])
                return std::nullopt;
        Rational c = rc / lead_c;
        rem -= divisor.shifted(t).scaled(c);
        quotient.emplace_back(std::move(t), std::move(c));
    }
    return LaurentPoly(rank_, std::move(quotient));
}

std::uint64_t LaurentPoly::evaluate_mod(const FiniteFieldPoint &at) const
{
    if (at.coords.size() != rank_)
        throw RankMismatch(rank_, at.coords.size());
    const auto p = at.prime;
    std::vector<std::uint64_t> inv(rank_);
    for (std::size_t k = 0; k < rank_; ++k)
        inv[k] = modular::inverse(at.coords[k], p);
    std::uint64_t acc = 0;
    for (const auto &[e, c] : terms_)
    {
        auto coeff = modular::reduce(c, p);
        if (!coeff)
            throw std::domain_error("coefficient " + c.get_str() + " has a denominator divisible by " +
                                    std::to_string(p));
        std::uint64_t v = *coeff;
        for (std::size_t k = 0; k < rank_; ++k)
        {
            if (e[k] >= 0)
                v = modular::mul(v, modular::pow(at.coords[k], static_cast<std::uint64_t>(e[k]), p), p);
            else
                v = modular::mul(v, modular::pow(inv[k], static_cast<std::uint64_t>(-e[k]), p), p);
        }
        acc += v;
        if (acc >= p)
            acc -= p;
    }
    return acc;
}

Rational LaurentPoly::evaluate_rational(const RationalPoint &at) const
{
    if (at.coords.size() != rank_)
        throw RankMismatch(rank_, at.coords.size());
    Rational acc = 0;
    for (const auto &[e, c] : terms_)
    {
        Rational v = c;
        for (std::size_t k = 0; k < rank_; ++k)
        {
            Integer num, den;
            auto n = e[k] >= 0 ? e[k] : -e[k];
            mpz_pow_ui(num.get_mpz_t(), at.coords[k].get_num_mpz_t(), static_cast<unsigned long>(n));
            mpz_pow_ui(den.get_mpz_t(), at.coords[k].get_den_mpz_t(), static_cast<unsigned long>(n));
            Rational f = e[k] >= 0 ? Rational(num, den) : Rational(den, num);
            f.canonicalize();
            v *= f;
        }
        acc += v;
    }
    return acc;
}

std::complex<double> LaurentPoly::evaluate_unit(const UnitComplexPoint &at) const
{
    if (at.turns.size() != rank_)
        throw RankMismatch(rank_, at.turns.size());
    std::complex<double> acc = 0;
    for (const auto &[e, c] : terms_)
    {
        // Reduce the phase modulo one full turn per coordinate before summing.
        double phase = 0;
        for (std::size_t k = 0; k < rank_; ++k)
        {
            if (e[k] == 0)
                continue;
            double x = static_cast<double>(e[k]) * at.turns[k];
            phase += x - std::floor(x);
        }
        phase -= std::floor(phase);
        acc += c.get_d() * std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    return acc;
}

Scalar LaurentPoly::evaluate(const SpecPoint &at) const
{
    if (at.rank() != rank_)
        throw RankMismatch(rank_, at.rank());
    return std::visit(
        [this](const auto &pt) -> Scalar {
            using T = std::decay_t<decltype(pt)>;
            if constexpr (std::is_same_v<T, FiniteFieldPoint>)
                return evaluate_mod(pt);
            else if constexpr (std::is_same_v<T, UnitComplexPoint>)
                return evaluate_unit(pt);
            else
                return evaluate_rational(pt);
        },
        at.storage());
}

std::string LaurentPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<const Term *> order;
    for (const auto &t : terms_)
        order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const Term *a, const Term *b) { return grlex_less(b->first, a->first); });
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        if (i)
            s += " + ";
        s += "(" + order[i]->second.get_str() + ") " + order[i]->first.to_string();
    }
    return s;
}

LaurentPoly poly_add(const LaurentPoly &a, const LaurentPoly &b) { return a + b; }
LaurentPoly poly_mul(const LaurentPoly &a, const LaurentPoly &b) { return a * b; }
Scalar poly_eval(const LaurentPoly &p, const SpecPoint &at) { return p.evaluate(at); }

} // namespace novikov
