#pragma once

// Multivariate Laurent polynomials over Q in r variables z_1..z_r, and their
// specializations at points of (C*)^r.  Three kinds of points are supported:
// unit tuples of a prime field F_p, points of the unitary torus (S^1)^r and
// tuples of nonzero rationals.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace novikov
{

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown whenever two objects with different ambient rank r are combined.
class RankMismatch : public std::invalid_argument
{
public:
    RankMismatch(std::size_t expected, std::size_t got);
};

/// A point n = (n_1, ..., n_r) of the lattice Z^r.
class ExponentVector
{
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t rank) : entries_(rank, 0) {}
    ExponentVector(std::initializer_list<std::int64_t> entries) : entries_(entries) {}
    explicit ExponentVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {}

    static ExponentVector unit(std::size_t rank, std::size_t axis);

    std::size_t rank() const noexcept { return entries_.size(); }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::int64_t &operator[](std::size_t i) { return entries_[i]; }
    const std::vector<std::int64_t> &entries() const noexcept { return entries_; }

    bool is_zero() const noexcept;
    std::int64_t total_degree() const noexcept;

    ExponentVector operator+(const ExponentVector &other) const;
    ExponentVector operator-(const ExponentVector &other) const;
    ExponentVector operator-() const;
    ExponentVector &operator+=(const ExponentVector &other);

    // Lexicographic; this is a group order on Z^r.
    auto operator<=>(const ExponentVector &other) const = default;
    bool operator==(const ExponentVector &other) const = default;

    std::string to_string() const;

private:
    std::vector<std::int64_t> entries_;
};

/// Graded lexicographic comparison (total degree first, then lex).  Only used
/// for display order.
bool grlex_less(const ExponentVector &a, const ExponentVector &b);

struct FiniteFieldPoint
{
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> coords;
};

/// Point of the unitary torus.  Coordinate k is exp(2 pi i * turns[k]).
struct UnitComplexPoint
{
    std::vector<double> turns;
};

struct RationalPoint
{
    std::vector<Rational> coords;
};

/// A monodromy point: an r-tuple of invertible scalars.  Construct through
/// the factory functions, which reject non-invertible coordinates.
class SpecPoint
{
public:
    using Storage = std::variant<FiniteFieldPoint, UnitComplexPoint, RationalPoint>;

    static SpecPoint finite_field(std::uint64_t prime, std::vector<std::uint64_t> coords);
    static SpecPoint unit_complex(std::vector<double> turns);
    static SpecPoint rational(std::vector<Rational> coords);
    /// z = (1, ..., 1), the trivial monodromy point, as an exact rational point.
    static SpecPoint trivial(std::size_t rank);

    std::size_t rank() const noexcept;
    const Storage &storage() const noexcept { return storage_; }

    bool is_finite_field() const noexcept { return std::holds_alternative<FiniteFieldPoint>(storage_); }
    bool is_unit_complex() const noexcept { return std::holds_alternative<UnitComplexPoint>(storage_); }
    bool is_rational() const noexcept { return std::holds_alternative<RationalPoint>(storage_); }

    std::string to_string() const;

private:
    explicit SpecPoint(Storage s) : storage_(std::move(s)) {}
    Storage storage_;
};

/// Value of a polynomial at a point, living in the point's ring.
using Scalar = std::variant<std::uint64_t, std::complex<double>, Rational>;

class LaurentPoly
{
public:
    using Term = std::pair<ExponentVector, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t rank) : rank_(rank) {}
    /// Builds from arbitrary terms: merges repeated exponents and drops zeros.
    LaurentPoly(std::size_t rank, std::vector<Term> terms);

    static LaurentPoly zero(std::size_t rank) { return LaurentPoly(rank); }
    static LaurentPoly constant(std::size_t rank, const Rational &c);
    static LaurentPoly monomial(const ExponentVector &e, const Rational &c = 1);
    /// z_axis (a single variable).
    static LaurentPoly variable(std::size_t rank, std::size_t axis);

    std::size_t rank() const noexcept { return rank_; }
    /// Terms in lexicographic order of exponents; coefficients are nonzero.
    const std::vector<Term> &terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    LaurentPoly operator+(const LaurentPoly &other) const;
    LaurentPoly operator-(const LaurentPoly &other) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly &other) const;
    LaurentPoly &operator+=(const LaurentPoly &other) { return *this = *this + other; }
    LaurentPoly &operator-=(const LaurentPoly &other) { return *this = *this - other; }
    LaurentPoly &operator*=(const LaurentPoly &other) { return *this = *this * other; }

    LaurentPoly scaled(const Rational &c) const;
    /// Multiplication by the unit z^e.
    LaurentPoly shifted(const ExponentVector &e) const;

    /// Quotient a / b when b divides a in the Laurent ring; empty otherwise.
    /// Throws std::domain_error when b is zero.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly &divisor) const;

    /// Componentwise minimum / maximum of the exponents.  Zero polynomial
    /// returns the zero vector.
    ExponentVector min_exponents() const;
    ExponentVector max_exponents() const;
    /// Sum over variables of (max exponent - min exponent).  A nonzero
    /// polynomial has at most spread * (p-1)^(r-1) zeros on (F_p^*)^r.
    std::int64_t spread() const;

    /// Positive rational c such that this / c has coprime integer coefficients.
    Rational content() const;

    Scalar evaluate(const SpecPoint &at) const;
    std::uint64_t evaluate_mod(const FiniteFieldPoint &at) const;
    Rational evaluate_rational(const RationalPoint &at) const;
    std::complex<double> evaluate_unit(const UnitComplexPoint &at) const;

    /// Textual form: `(c) [e_1,...,e_r] + (c) [...]`, terms in descending
    /// graded-lex order; `0` for the zero polynomial.
    std::string to_string() const;

    bool operator==(const LaurentPoly &other) const = default;

private:
    void check_rank(const LaurentPoly &other) const;

    std::size_t rank_ = 0;
    std::vector<Term> terms_;
};

LaurentPoly poly_add(const LaurentPoly &a, const LaurentPoly &b);
LaurentPoly poly_mul(const LaurentPoly &a, const LaurentPoly &b);
Scalar poly_eval(const LaurentPoly &p, const SpecPoint &at);

/// True iff the scalar is a unit of its ring.
bool is_invertible(const Scalar &s);

namespace modular
{
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);
/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Residue of a rational modulo p; empty when p divides the denominator.
std::optional<std::uint64_t> reduce(const Rational &q, std::uint64_t p);
} // namespace modular

} // namespace novikov
