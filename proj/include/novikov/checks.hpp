#pragma once

// Morse-type inequalities between user-supplied critical point counts c_i of
// a closed 1-form and the Novikov numbers of its class, plus the vanishing,
// lacunary and cover-multiplicativity consequences.

#include <cstdint>
#include <string>
#include <vector>

#include "novikov/betti.hpp"

namespace novikov
{

/// c_i = number of index-i zeros of the form, for i = 0..n.
class CriticalVector
{
public:
    explicit CriticalVector(std::vector<std::int64_t> counts);

    std::size_t dimension() const noexcept { return counts_.size() - 1; }
    std::int64_t operator[](std::size_t i) const { return counts_.at(i); }
    const std::vector<std::int64_t> &counts() const noexcept { return counts_; }

private:
    std::vector<std::int64_t> counts_;
};

enum class CheckRule
{
    theorem1,
    vanishing,
    lacunary,
    multiplicativity,
};

enum class Verdict
{
    pass,
    fail,
    not_applicable,
};

std::string to_string(CheckRule r);
std::string to_string(Verdict v);

struct CheckRow
{
    std::size_t degree = 0;
    std::int64_t lhs = 0;   // left side of the inequality or identity
    std::int64_t rhs = 0;
    bool pass = true;
    std::string relation;  // ">=", "=", ...
};

struct CheckReport
{
    CheckRule rule = CheckRule::theorem1;
    Verdict verdict = Verdict::pass;
    std::vector<CheckRow> rows;
    std::string note;

    std::vector<std::size_t> failed_degrees() const;
};

/// For every i: sum_k (-1)^k c_{i-k} >= sum_k (-1)^k b_{i-k}, and c_i >= b_i.
/// Rows come in pairs per degree: the alternating sum first, then the simple
/// bound.  Throws std::invalid_argument when c is shorter than b.
CheckReport novikov_shubin_check(const CriticalVector &c, const BettiReport &b);

/// c_j = 0 forces b_j = 0.  Vacuous pass when no c_j vanishes.
CheckReport vanishing_check(const CriticalVector &c, const BettiReport &b);

/// If every odd c vanishes: odd b vanish and b_{2j} = c_{2j}.  Otherwise the
/// verdict is not_applicable.
CheckReport lacunary_check(const CriticalVector &c, const BettiReport &b);

/// Novikov numbers of the m-sheeted cyclic cover (with the pulled-back
/// cocycle) equal m times those of the base in every degree.
CheckReport multiplicativity_check(const DeltaComplex &c, const Cocycle &w, std::int64_t m,
                                   RankMethod method = RankMethod::exact, std::size_t trials = 5,
                                   std::uint64_t seed = 0);

} // namespace novikov
