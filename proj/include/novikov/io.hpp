#pragma once

// Text formats and JSON reports.
//
// Complex files (.dcx) are line oriented.  `#` starts a comment.  Sections:
//
//   [cells 0]        one line: the number of vertices
//   [cells k]        one line per k-cell: its faces d_0 ... d_k as indices
//                    into the (k-1)-cells, separated by spaces or commas
//   [cocycle r]      one line per edge: r integers or fractions p/q
//                    (no lines when r = 0)
//
// Cell sections appear in order k = 0, 1, 2, ...; the cocycle section is
// optional and comes last.  A file holding only a cocycle section is a valid
// cocycle file.
//
// Polynomials: `(c) [e_1,...,e_r] + (c) [...]` with rational c, or `0`.
// Terms may also be joined with ` - `, which negates the next coefficient.
//
// Matrix files: a header `[matrix rows cols r]` followed by lines
// `i j : polynomial` (0-based indices, unlisted entries are zero).

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "novikov/betti.hpp"
#include "novikov/checks.hpp"
#include "novikov/complex.hpp"
#include "novikov/matrix.hpp"

namespace novikov::io
{

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct ComplexFile
{
    DeltaComplex complex;
    std::optional<Cocycle> cocycle;
};

ComplexFile parse_complex(std::istream &in);
ComplexFile parse_complex(const std::string &text);
ComplexFile read_complex_file(const std::string &path);

void write_complex(std::ostream &out, const DeltaComplex &c, const std::optional<Cocycle> &w = std::nullopt);
std::string format_complex(const DeltaComplex &c, const std::optional<Cocycle> &w = std::nullopt);

/// Parses a rational: optional sign, digits, optional `/digits`.
Rational parse_rational(const std::string &text);

LaurentPoly parse_poly(const std::string &text, std::size_t rank);

LaurentMatrix parse_matrix(std::istream &in);
LaurentMatrix read_matrix_file(const std::string &path);
std::string format_matrix(const LaurentMatrix &m);

/// Points separated by `;`, coordinates by `,`.  Forms:
///   `p=<prime>:a,b,...`   finite-field units
///   `u:t1,t2,...`         unit complex, coordinate k = exp(2 pi i t_k)
///   `i`, `-i`, `1`, `-1`  unit complex when any coordinate is `i` or `-i`
///   rationals             exact rational point otherwise
std::vector<SpecPoint> parse_points(const std::string &text, std::size_t rank);

/// Inline cocycle: edges separated by `;`, coordinates by `,`.
Cocycle parse_inline_cocycle(const std::string &text);

/// Parses `c = [n0, n1, ...]` or a bare `n0,n1,...`.
CriticalVector parse_critical_vector(const std::string &text);

// JSON reports.  Timing fields are only emitted when `timing` is set so that
// reports are byte-identical across runs.
nlohmann::ordered_json to_json(const BettiReport &r, bool timing = false);
nlohmann::ordered_json to_json(const PointHomology &p);
nlohmann::ordered_json to_json(const MonteCarloReport &r, bool timing = false);
nlohmann::ordered_json to_json(const CheckReport &r);
nlohmann::ordered_json to_json(const RankResult &r, bool timing = false);
nlohmann::ordered_json to_json(const Approximation &a);

} // namespace novikov::io
