#include "novikov/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace novikov::io
{

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column)
{
}

namespace
{

struct Token
{
    std::string text;
    std::size_t column;  // 1-based
};

std::string strip_comment(const std::string &line)
{
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<Token> split_tokens(const std::string &line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ','))
            ++i;
        if (i >= line.size())
            break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool is_blank(const std::string &s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
}

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t parse_index(const Token &t, std::size_t line)
{
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw ParseError(line, t.column, "expected a nonnegative integer, got '" + t.text + "'");
    try
    {
        return static_cast<std::size_t>(std::stoull(t.text));
    }
    catch (const std::out_of_range &)
    {
        throw ParseError(line, t.column, "integer out of range: '" + t.text + "'");
    }
}

std::int64_t parse_signed(const std::string &text)
{
    std::size_t pos = 0;
    long long v = 0;
    try
    {
        v = std::stoll(text, &pos);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("expected an integer, got '" + text + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("expected an integer, got '" + text + "'");
    return v;
}

bool valid_rational_syntax(const std::string &s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i, ++digits;
    if (digits == 0)
        return false;
    if (i == s.size())
        return true;
    if (s[i] != '/')
        return false;
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i, ++digits;
    return digits > 0 && i == s.size();
}

struct Header
{
    std::string kind;
    std::vector<std::size_t> args;
};

std::optional<Header> parse_header(const std::string &content, std::size_t line)
{
    auto t = trim(content);
    if (t.empty() || t.front() != '[')
        return std::nullopt;
    const auto column = content.find('[') + 1;
    if (t.back() != ']')
        throw ParseError(line, column, "unterminated section header");
    auto tokens = split_tokens(t.substr(1, t.size() - 2));
    if (tokens.empty())
        throw ParseError(line, column, "empty section header");
    Header h{tokens[0].text, {}};
    for (std::size_t i = 1; i < tokens.size(); ++i)
    {
        Token shifted{tokens[i].text, tokens[i].column + column};
        h.args.push_back(parse_index(shifted, line));
    }
    return h;
}

} // namespace

Rational parse_rational(const std::string &text)
{
    if (!valid_rational_syntax(text))
        throw std::invalid_argument("expected a rational number, got '" + text + "'");
    std::string s = text.front() == '+' ? text.substr(1) : text;
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("expected a rational number, got '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// complex files

ComplexFile parse_complex(std::istream &in)
{
    std::vector<std::vector<DeltaComplex::Faces>> cells;
    std::optional<std::size_t> vertex_count;
    std::optional<std::size_t> cocycle_rank;
    std::vector<std::vector<Rational>> cocycle_values;

    enum class Section
    {
        none,
        cells,
        cocycle
    } section = Section::none;
    std::size_t current_k = 0;
    std::optional<std::size_t> last_k;
    bool seen_vertex_line = false;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw))
    {
        ++line;
        const auto content = strip_comment(raw);
        if (is_blank(content))
            continue;
        if (auto h = parse_header(content, line))
        {
            const auto col = content.find('[') + 1;
            if (h->kind == "cells")
            {
                if (h->args.size() != 1)
                    throw ParseError(line, col, "expected [cells k]");
                if (section == Section::cocycle)
                    throw ParseError(line, col, "cell sections must precede the cocycle section");
                const auto k = h->args[0];
                const std::size_t expected = last_k ? *last_k + 1 : 0;
                if (k != expected)
                    throw ParseError(line, col, "expected [cells " + std::to_string(expected) + "], got [cells " +
                                                    std::to_string(k) + "]");
                if (k >= 1 && !seen_vertex_line)
                    throw ParseError(line, col, "[cells 0] needs a vertex count line");
                last_k = k;
                current_k = k;
                section = Section::cells;
                if (k >= 1)
                    cells.emplace_back();
            }
            else if (h->kind == "cocycle")
            {
                if (h->args.size() != 1)
                    throw ParseError(line, col, "expected [cocycle r]");
                if (cocycle_rank)
                    throw ParseError(line, col, "duplicate cocycle section");
                if (last_k && *last_k == 0 && !seen_vertex_line)
                    throw ParseError(line, col, "[cells 0] needs a vertex count line");
                cocycle_rank = h->args[0];
                section = Section::cocycle;
            }
            else
                throw ParseError(line, col, "unknown section '" + h->kind + "'");
            continue;
        }

        const auto tokens = split_tokens(content);
        switch (section)
        {
        case Section::none:
            throw ParseError(line, tokens.front().column, "data outside of a section");
        case Section::cells:
            if (current_k == 0)
            {
                if (seen_vertex_line)
                    throw ParseError(line, tokens.front().column, "[cells 0] holds a single vertex count");
                if (tokens.size() != 1)
                    throw ParseError(line, tokens[1].column, "[cells 0] holds a single vertex count");
                vertex_count = parse_index(tokens[0], line);
                seen_vertex_line = true;
            }
            else
            {
                if (tokens.size() != current_k + 1)
                    throw ParseError(line, tokens.front().column,
                                     "a " + std::to_string(current_k) + "-cell needs " + std::to_string(current_k + 1) +
                                         " faces, got " + std::to_string(tokens.size()));
                DeltaComplex::Faces faces;
                for (const auto &t : tokens)
                    faces.push_back(parse_index(t, line));
                cells.back().push_back(std::move(faces));
            }
            break;
        case Section::cocycle:
        {
            if (*cocycle_rank == 0)
                throw ParseError(line, tokens.front().column, "[cocycle 0] takes no value lines");
            if (tokens.size() != *cocycle_rank)
                throw ParseError(line, tokens.front().column,
                                 "expected " + std::to_string(*cocycle_rank) + " cocycle entries, got " +
                                     std::to_string(tokens.size()));
            std::vector<Rational> row;
            for (const auto &t : tokens)
            {
                try
                {
                    row.push_back(parse_rational(t.text));
                }
                catch (const std::invalid_argument &e)
                {
                    throw ParseError(line, t.column, e.what());
                }
            }
            cocycle_values.push_back(std::move(row));
            break;
        }
        }
    }
    if (!last_k && !cocycle_rank)
        throw ParseError(std::max<std::size_t>(line, 1), 1, "no [cells k] or [cocycle r] section");
    if (last_k && !seen_vertex_line)
        throw ParseError(line, 1, "[cells 0] needs a vertex count line");

    ComplexFile out;
    out.complex = DeltaComplex(vertex_count.value_or(0), std::move(cells));
    if (cocycle_rank)
    {
        if (*cocycle_rank == 0)
            out.cocycle = Cocycle::zero(out.complex.cell_count(1), 0);
        else
            out.cocycle = Cocycle(*cocycle_rank, std::move(cocycle_values));
    }
    return out;
}

ComplexFile parse_complex(const std::string &text)
{
    std::istringstream in(text);
    return parse_complex(in);
}

ComplexFile read_complex_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return parse_complex(in);
}

void write_complex(std::ostream &out, const DeltaComplex &c, const std::optional<Cocycle> &w)
{
    if (c.dimension() >= 0)
    {
        out << "[cells 0]\n" << c.cell_count(0) << "\n";
        for (int kk = 1; kk <= c.dimension(); ++kk)
        {
            const auto k = static_cast<std::size_t>(kk);
            out << "[cells " << k << "]\n";
            for (std::size_t s = 0; s < c.cell_count(k); ++s)
            {
                auto f = c.faces(k, s);
                for (std::size_t i = 0; i < f.size(); ++i)
                    out << (i ? " " : "") << f[i];
                out << "\n";
            }
        }
    }
    if (w)
    {
        out << "[cocycle " << w->rank() << "]\n";
        if (w->rank() > 0)
            for (const auto &row : w->values())
            {
                for (std::size_t i = 0; i < row.size(); ++i)
                    out << (i ? " " : "") << row[i].get_str();
                out << "\n";
            }
    }
}

std::string format_complex(const DeltaComplex &c, const std::optional<Cocycle> &w)
{
    std::ostringstream os;
    write_complex(os, c, w);
    return os.str();
}

// ---------------------------------------------------------------------------
// polynomials and matrices

namespace
{

class PolyParser
{
public:
    PolyParser(const std::string &text, std::size_t rank, std::size_t line, std::size_t column_offset)
        : text_(text), rank_(rank), line_(line), offset_(column_offset)
    {
    }

    LaurentPoly parse()
    {
        skip_space();
        if (peek() == '0')
        {
            std::size_t save = pos_;
            ++pos_;
            skip_space();
            if (pos_ == text_.size())
                return LaurentPoly::zero(rank_);
            pos_ = save;
        }
        std::vector<LaurentPoly::Term> terms;
        bool negate = false;
        if (peek() == '-' || peek() == '+')
        {
            negate = peek() == '-';
            ++pos_;
            skip_space();
        }
        terms.push_back(term(negate));
        while (true)
        {
            skip_space();
            if (pos_ == text_.size())
                break;
            if (peek() != '+' && peek() != '-')
                fail("expected '+' or '-' between terms");
            negate = peek() == '-';
            ++pos_;
            skip_space();
            terms.push_back(term(negate));
        }
        return LaurentPoly(rank_, std::move(terms));
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(line_, offset_ + pos_ + 1, msg); }

    void expect(char ch)
    {
        skip_space();
        if (peek() != ch)
            fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    LaurentPoly::Term term(bool negate)
    {
        expect('(');
        const auto close = text_.find(')', pos_);
        if (close == std::string::npos)
            fail("unterminated coefficient");
        Rational c;
        try
        {
            c = parse_rational(trim(text_.substr(pos_, close - pos_)));
        }
        catch (const std::invalid_argument &e)
        {
            fail(e.what());
        }
        if (negate)
            c = -c;
        pos_ = close + 1;
        expect('[');
        const auto end = text_.find(']', pos_);
        if (end == std::string::npos)
            fail("unterminated exponent vector");
        const auto body = text_.substr(pos_, end - pos_);
        std::vector<std::int64_t> exps;
        for (const auto &t : split_tokens(body))
        {
            try
            {
                exps.push_back(parse_signed(t.text));
            }
            catch (const std::invalid_argument &e)
            {
                throw ParseError(line_, offset_ + pos_ + t.column, e.what());
            }
        }
        if (exps.size() != rank_)
            fail("exponent vector has " + std::to_string(exps.size()) + " entries, expected " + std::to_string(rank_));
        pos_ = end + 1;
        return {ExponentVector(std::move(exps)), c};
    }

    const std::string &text_;
    std::size_t rank_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

} // namespace

LaurentPoly parse_poly(const std::string &text, std::size_t rank)
{
    return PolyParser(text, rank, 1, 0).parse();
}

LaurentMatrix parse_matrix(std::istream &in)
{
    std::optional<LaurentMatrix> m;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw))
    {
        ++line;
        const auto content = strip_comment(raw);
        if (is_blank(content))
            continue;
        if (auto h = parse_header(content, line))
        {
            if (h->kind != "matrix" || h->args.size() != 3)
                throw ParseError(line, content.find('[') + 1, "expected [matrix rows cols r]");
            if (m)
                throw ParseError(line, content.find('[') + 1, "duplicate matrix header");
            m.emplace(h->args[0], h->args[1], h->args[2]);
            continue;
        }
        if (!m)
            throw ParseError(line, 1, "entry before the [matrix rows cols r] header");
        const auto colon = content.find(':');
        if (colon == std::string::npos)
            throw ParseError(line, 1, "expected 'i j : polynomial'");
        const auto idx = split_tokens(content.substr(0, colon));
        if (idx.size() != 2)
            throw ParseError(line, idx.empty() ? 1 : idx.front().column, "expected two indices before ':'");
        const auto i = parse_index(idx[0], line), j = parse_index(idx[1], line);
        if (i >= m->rows() || j >= m->cols())
            throw ParseError(line, idx[0].column, "index outside the declared shape");
        auto p = PolyParser(content.substr(colon + 1), m->rank(), line, colon + 1).parse();
        m->add(i, j, p);
    }
    if (!m)
        throw ParseError(line, 1, "missing [matrix rows cols r] header");
    return *m;
}

LaurentMatrix read_matrix_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return parse_matrix(in);
}

std::string format_matrix(const LaurentMatrix &m)
{
    std::ostringstream os;
    os << "[matrix " << m.rows() << " " << m.cols() << " " << m.rank() << "]\n";
    for (const auto &[idx, v] : m.entries())
        os << idx.first << " " << idx.second << " : " << v.to_string() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// points, inline cocycles, critical vectors

namespace
{

std::vector<std::string> split_on(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double parse_turn(const std::string &s)
{
    if (valid_rational_syntax(s))
        return parse_rational(s).get_d();
    std::size_t pos = 0;
    double v = 0;
    try
    {
        v = std::stod(s, &pos);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("expected an angle in turns, got '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("expected an angle in turns, got '" + s + "'");
    return v;
}

} // namespace

std::vector<SpecPoint> parse_points(const std::string &text, std::size_t rank)
{
    std::vector<SpecPoint> out;
    for (const auto &chunk : split_on(text, ';'))
    {
        if (chunk.empty())
            throw std::invalid_argument("empty point in '" + text + "'");
        std::string body = chunk;
        if (body.rfind("p=", 0) == 0)
        {
            const auto colon = body.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("finite-field point needs 'p=<prime>:coords'");
            const auto p = parse_signed(trim(body.substr(2, colon - 2)));
            if (p < 2)
                throw std::invalid_argument("bad prime in '" + chunk + "'");
            std::vector<std::uint64_t> coords;
            for (const auto &t : split_tokens(body.substr(colon + 1)))
            {
                auto v = parse_signed(t.text) % p;
                coords.push_back(static_cast<std::uint64_t>(v < 0 ? v + p : v));
            }
            if (coords.size() != rank)
                throw RankMismatch(rank, coords.size());
            out.push_back(SpecPoint::finite_field(static_cast<std::uint64_t>(p), std::move(coords)));
            continue;
        }
        if (body.rfind("u:", 0) == 0)
        {
            std::vector<double> turns;
            for (const auto &t : split_tokens(body.substr(2)))
                turns.push_back(parse_turn(t.text));
            if (turns.size() != rank)
                throw RankMismatch(rank, turns.size());
            out.push_back(SpecPoint::unit_complex(std::move(turns)));
            continue;
        }
        const auto tokens = split_tokens(body);
        if (tokens.size() != rank)
            throw RankMismatch(rank, tokens.size());
        const bool unit = std::any_of(tokens.begin(), tokens.end(),
                                      [](const Token &t) { return t.text == "i" || t.text == "-i"; });
        if (unit)
        {
            std::vector<double> turns;
            for (const auto &t : tokens)
            {
                if (t.text == "i")
                    turns.push_back(0.25);
                else if (t.text == "-i")
                    turns.push_back(0.75);
                else if (valid_rational_syntax(t.text) && parse_rational(t.text) == 1)
                    turns.push_back(0.0);
                else if (valid_rational_syntax(t.text) && parse_rational(t.text) == -1)
                    turns.push_back(0.5);
                else
                    throw std::invalid_argument("'" + t.text + "' is not on the unit circle; use u:<turns>");
            }
            out.push_back(SpecPoint::unit_complex(std::move(turns)));
        }
        else
        {
            std::vector<Rational> coords;
            for (const auto &t : tokens)
                coords.push_back(parse_rational(t.text));
            out.push_back(SpecPoint::rational(std::move(coords)));
        }
    }
    if (out.empty())
        throw std::invalid_argument("no points given");
    return out;
}

Cocycle parse_inline_cocycle(const std::string &text)
{
    std::vector<std::vector<Rational>> values;
    std::optional<std::size_t> rank;
    for (const auto &chunk : split_on(text, ';'))
    {
        std::vector<Rational> row;
        for (const auto &t : split_tokens(chunk))
            row.push_back(parse_rational(t.text));
        if (row.empty())
            throw std::invalid_argument("empty edge value in inline cocycle '" + text + "'");
        if (rank && *rank != row.size())
            throw std::invalid_argument("inline cocycle rows have different lengths");
        rank = row.size();
        values.push_back(std::move(row));
    }
    return Cocycle(rank.value_or(0), std::move(values));
}

CriticalVector parse_critical_vector(const std::string &text)
{
    std::string body = trim(text);
    if (!body.empty() && body.front() == 'c')
    {
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected 'c = [n0, n1, ...]'");
        body = trim(body.substr(eq + 1));
    }
    if (!body.empty() && body.front() == '[')
    {
        if (body.back() != ']')
            throw std::invalid_argument("unterminated critical vector");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::int64_t> counts;
    for (const auto &t : split_tokens(body))
        counts.push_back(parse_signed(t.text));
    return CriticalVector(std::move(counts));
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::ordered_json;

namespace
{

double millis(std::chrono::nanoseconds ns)
{
    return static_cast<double>(ns.count()) / 1e6;
}

} // namespace

ordered_json to_json(const BettiReport &r, bool timing)
{
    ordered_json j;
    j["betti"] = r.betti;
    j["euler"] = r.euler;
    j["class_rank"] = r.class_rank;
    j["ring_rank"] = r.ring_rank;
    j["cell_counts"] = r.cell_counts;
    j["boundary_ranks"] = r.boundary_ranks;
    j["method"] = to_string(r.method);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["primes"] = r.primes;
    if (timing)
        j["elapsed_ms"] = millis(r.elapsed);
    return j;
}

ordered_json to_json(const PointHomology &p)
{
    ordered_json j;
    j["point"] = p.point.to_string();
    j["dims"] = p.dims;
    std::vector<std::int64_t> generic;
    for (std::size_t i = 0; i < p.dims.size(); ++i)
        generic.push_back(p.generic.at(static_cast<int>(i)));
    j["generic"] = generic;
    j["jumps"] = p.jumps;
    j["jump"] = p.has_jump();
    j["ambiguous"] = p.ambiguous;
    return j;
}

ordered_json to_json(const MonteCarloReport &r, bool timing)
{
    ordered_json j;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["mean"] = r.mean;
    j["generic"] = r.generic;
    ordered_json hist = ordered_json::array();
    for (const auto &h : r.histogram)
    {
        ordered_json deg = ordered_json::object();
        for (const auto &[dim, count] : h)
            deg[std::to_string(dim)] = count;
        hist.push_back(deg);
    }
    j["histogram"] = hist;
    j["deviating"] = r.deviating;
    j["deviating_fraction"] = static_cast<double>(r.deviating) / static_cast<double>(r.samples);
    j["ambiguous_samples"] = r.ambiguous;
    if (timing)
        j["elapsed_ms"] = millis(r.elapsed);
    return j;
}

ordered_json to_json(const CheckReport &r)
{
    ordered_json j;
    j["rule"] = to_string(r.rule);
    j["verdict"] = to_string(r.verdict);
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows)
        rows.push_back({{"degree", row.degree},
                        {"lhs", row.lhs},
                        {"relation", row.relation},
                        {"rhs", row.rhs},
                        {"pass", row.pass}});
    j["rows"] = rows;
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

ordered_json to_json(const RankResult &r, bool timing)
{
    ordered_json j;
    j["rank"] = r.rank;
    j["method"] = r.method;
    j["trials"] = r.trials;
    j["primes"] = r.primes;
    if (!r.point.empty())
        j["point"] = r.point;
    if (r.specialized_rank)
        j["specialized_rank"] = *r.specialized_rank;
    if (r.tolerance)
    {
        j["tolerance"] = *r.tolerance;
        j["ambiguous"] = r.ambiguous;
    }
    if (timing)
        j["elapsed_ms"] = millis(r.elapsed);
    return j;
}

ordered_json to_json(const Approximation &a)
{
    ordered_json j;
    ordered_json values = ordered_json::array();
    for (const auto &row : a.integral.values())
    {
        ordered_json v = ordered_json::array();
        for (const auto &x : row)
            v.push_back(x.get_str());
        values.push_back(v);
    }
    j["integral_cocycle"] = values;
    j["scale"] = a.scale.get_str();
    j["error"] = a.error.get_str();
    j["error_float"] = a.error.get_d();
    return j;
}

} // namespace novikov::io
