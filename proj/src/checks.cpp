#include "novikov/checks.hpp"

#include <stdexcept>

namespace novikov
{

CriticalVector::CriticalVector(std::vector<std::int64_t> counts) : counts_(std::move(counts))
{
    if (counts_.empty())
        throw std::invalid_argument("critical vector needs at least one entry");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] < 0)
            throw std::invalid_argument("critical count c_" + std::to_string(i) + " is negative");
}

std::string to_string(CheckRule r)
{
    switch (r)
    {
    case CheckRule::theorem1:
        return "theorem-1";
    case CheckRule::vanishing:
        return "corollary-2";
    case CheckRule::lacunary:
        return "corollary-3";
    case CheckRule::multiplicativity:
        return "multiplicativity";
    }
    return "unknown";
}

std::string to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::not_applicable:
        return "not-applicable";
    }
    return "unknown";
}

std::vector<std::size_t> CheckReport::failed_degrees() const
{
    std::vector<std::size_t> out;
    for (const auto &row : rows)
        if (!row.pass && (out.empty() || out.back() != row.degree))
            out.push_back(row.degree);
    return out;
}

namespace
{

void require_dimension(const CriticalVector &c, const BettiReport &b)
{
    if (c.counts().size() < b.betti.size())
        throw std::invalid_argument("critical vector has " + std::to_string(c.counts().size()) +
                                    " entries but the Betti report has degrees up to " +
                                    std::to_string(b.betti.size() - 1));
}

void finish(CheckReport &report)
{
    report.verdict = Verdict::pass;
    for (const auto &row : report.rows)
        if (!row.pass)
            report.verdict = Verdict::fail;
}

} // namespace

CheckReport novikov_shubin_check(const CriticalVector &c, const BettiReport &b)
{
    require_dimension(c, b);
    CheckReport report;
    report.rule = CheckRule::theorem1;
    std::int64_t lhs = 0, rhs = 0;
    bool all_alternating = true, all_simple = true;
    for (std::size_t i = 0; i <= c.dimension(); ++i)
    {
        // L_i = c_i - L_{i-1}, the alternating partial sum ending at c_i.
        lhs = c[i] - lhs;
        rhs = b.at(static_cast<int>(i)) - rhs;
        report.rows.push_back({i, lhs, rhs, lhs >= rhs, ">="});
        report.rows.push_back({i, c[i], b.at(static_cast<int>(i)), c[i] >= b.at(static_cast<int>(i)), ">="});
        all_alternating = all_alternating && lhs >= rhs;
        all_simple = all_simple && c[i] >= b.at(static_cast<int>(i));
    }
    // c_i - b_i is the sum of the slacks at i and i-1.
    if (all_alternating && !all_simple)
        throw std::logic_error("alternating inequalities hold but a simple bound fails");
    finish(report);
    return report;
}

CheckReport vanishing_check(const CriticalVector &c, const BettiReport &b)
{
    require_dimension(c, b);
    CheckReport report;
    report.rule = CheckRule::vanishing;
    for (std::size_t j = 0; j <= c.dimension(); ++j)
        if (c[j] == 0)
            report.rows.push_back({j, b.at(static_cast<int>(j)), 0, b.at(static_cast<int>(j)) == 0, "="});
    if (report.rows.empty())
        report.note = "no index without critical points; vacuous";
    finish(report);
    return report;
}

CheckReport lacunary_check(const CriticalVector &c, const BettiReport &b)
{
    require_dimension(c, b);
    CheckReport report;
    report.rule = CheckRule::lacunary;
    for (std::size_t i = 1; i <= c.dimension(); i += 2)
        if (c[i] != 0)
        {
            report.verdict = Verdict::not_applicable;
            report.note = "c_" + std::to_string(i) + " = " + std::to_string(c[i]) + " is an odd-index critical count";
            return report;
        }
    for (std::size_t i = 0; i <= c.dimension(); ++i)
    {
        const auto bi = b.at(static_cast<int>(i));
        const auto expected = i % 2 == 0 ? c[i] : 0;
        report.rows.push_back({i, bi, expected, bi == expected, "="});
    }
    finish(report);
    return report;
}

CheckReport multiplicativity_check(const DeltaComplex &c, const Cocycle &w, std::int64_t m, RankMethod method,
                                   std::size_t trials, std::uint64_t seed)
{
    if (m < 2)
        throw std::invalid_argument("multiplicativity check needs m >= 2");
    const auto base = novikov_numbers(build_equivariant(c, w), method, trials, seed);
    const auto cover = cyclic_cover(c, w, m);
    const auto lifted = novikov_numbers(build_equivariant(cover.complex, cover.cocycle), method, trials, seed);

    CheckReport report;
    report.rule = CheckRule::multiplicativity;
    for (std::size_t i = 0; i < base.betti.size(); ++i)
    {
        const auto lhs = lifted.at(static_cast<int>(i));
        const auto rhs = m * base.betti[i];
        report.rows.push_back({i, lhs, rhs, lhs == rhs, "="});
    }
    report.note = "m = " + std::to_string(m);
    finish(report);
    return report;
}

} // namespace novikov
