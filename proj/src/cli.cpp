#include "novikov/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "novikov/betti.hpp"
#include "novikov/checks.hpp"
#include "novikov/io.hpp"

namespace novikov::cli
{

namespace
{

using nlohmann::ordered_json;

struct RunConfig
{
    std::string command;
    std::string input;
    std::string cocycle;
    std::string method = "both";
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    double tolerance = default_tolerance;
    std::int64_t m = 2;
    std::string critical;
    std::string points;
    std::string output;
    std::string cover_out;
    std::int64_t bound = 10;
    bool timing = false;
};

/// A mathematical check failed; maps to exit code 1.
struct CheckFailure
{
};

ordered_json config_json(const RunConfig &c)
{
    ordered_json j;
    j["input"] = c.input;
    if (!c.cocycle.empty())
        j["cocycle"] = c.cocycle;
    j["method"] = c.method;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    if (c.command == "sample")
    {
        j["samples"] = c.samples;
        j["tolerance"] = c.tolerance;
    }
    if (c.command == "probe")
    {
        j["points"] = c.points;
        j["tolerance"] = c.tolerance;
    }
    if (c.command == "cover")
        j["m"] = c.m;
    if (c.command == "check")
        j["critical"] = c.critical;
    if (c.command == "approx")
        j["bound"] = c.bound;
    return j;
}

struct Loaded
{
    DeltaComplex complex;
    Cocycle cocycle;
};

Loaded load(const RunConfig &c)
{
    auto file = io::read_complex_file(c.input);
    validate_complex(file.complex);
    Cocycle w;
    if (c.cocycle.empty())
        w = file.cocycle ? *file.cocycle : Cocycle::zero(file.complex.cell_count(1), 0);
    else if (c.cocycle == "zero")
        w = Cocycle::zero(file.complex.cell_count(1), 0);
    else if (std::filesystem::exists(c.cocycle))
    {
        auto cf = io::read_complex_file(c.cocycle);
        if (!cf.cocycle)
            throw std::invalid_argument("'" + c.cocycle + "' has no [cocycle r] section");
        w = *cf.cocycle;
    }
    else
        w = io::parse_inline_cocycle(c.cocycle);
    validate_cocycle(file.complex, w);
    return {std::move(file.complex), std::move(w)};
}

ordered_json compute_report(const RunConfig &c, const Loaded &in)
{
    const auto e = build_equivariant(in.complex, in.cocycle);
    const auto report = novikov_numbers(e, parse_rank_method(c.method), c.trials, c.seed);
    return io::to_json(report, c.timing);
}

ordered_json cmd_compute(const RunConfig &c)
{
    return compute_report(c, load(c));
}

ordered_json cmd_check(const RunConfig &c)
{
    if (c.critical.empty())
        throw CLI::RequiredError("--critical");
    std::string text = c.critical;
    if (std::filesystem::exists(text))
    {
        std::ifstream f(text);
        std::getline(f, text);
    }
    const auto critical = io::parse_critical_vector(text);
    const auto in = load(c);
    const auto e = build_equivariant(in.complex, in.cocycle);
    const auto b = novikov_numbers(e, parse_rank_method(c.method), c.trials, c.seed);

    ordered_json j;
    j["critical"] = critical.counts();
    j["betti"] = io::to_json(b, c.timing);
    ordered_json checks = ordered_json::array();
    bool failed = false;
    for (const auto &report : {novikov_shubin_check(critical, b), vanishing_check(critical, b),
                               lacunary_check(critical, b)})
    {
        checks.push_back(io::to_json(report));
        failed = failed || report.verdict == Verdict::fail;
    }
    j["checks"] = checks;
    j["verdict"] = failed ? "fail" : "pass";
    return j;
}

ordered_json cmd_cover(const RunConfig &c)
{
    if (c.m < 2)
        throw CLI::ValidationError("-m", "cover degree must be at least 2");
    const auto in = load(c);
    if (in.cocycle.rank() != 1)
        throw ValidationError("rank-1 cocycle required for the cyclic cover (got rank " +
                              std::to_string(in.cocycle.rank()) + ")");
    const auto method = parse_rank_method(c.method);
    const auto cover = cyclic_cover(in.complex, in.cocycle, c.m);
    const auto text = io::format_complex(cover.complex, cover.cocycle);
    if (!c.cover_out.empty())
    {
        std::ofstream f(c.cover_out);
        if (!f)
            throw std::runtime_error("cannot write '" + c.cover_out + "'");
        f << text;
    }
    const auto base = novikov_numbers(build_equivariant(in.complex, in.cocycle), method, c.trials, c.seed);
    const auto lifted = novikov_numbers(build_equivariant(cover.complex, cover.cocycle), method, c.trials, c.seed);
    const auto check = multiplicativity_check(in.complex, in.cocycle, c.m, method, c.trials, c.seed);

    ordered_json j;
    j["base"] = io::to_json(base, c.timing);
    j["cover"] = io::to_json(lifted, c.timing);
    j["cover_cell_counts"] = cover.complex.cell_counts();
    j["cover_complex"] = text;
    j["check"] = io::to_json(check);
    j["verdict"] = to_string(check.verdict);
    return j;
}

ordered_json cmd_probe(const RunConfig &c)
{
    if (c.points.empty())
        throw CLI::RequiredError("--points");
    const auto in = load(c);
    const auto e = build_equivariant(in.complex, in.cocycle);
    const auto points = io::parse_points(c.points, e.rank());
    const auto generic = novikov_numbers(e, parse_rank_method(c.method), c.trials, c.seed);
    ordered_json j;
    j["generic"] = io::to_json(generic, c.timing);
    ordered_json list = ordered_json::array();
    std::size_t jumps = 0;
    for (const auto &ph : jump_probe(e, points, generic, c.tolerance))
    {
        list.push_back(io::to_json(ph));
        jumps += ph.has_jump() ? 1 : 0;
    }
    j["points"] = list;
    j["jump_count"] = jumps;
    return j;
}

ordered_json cmd_sample(const RunConfig &c)
{
    if (c.samples == 0)
        throw CLI::ValidationError("--samples", "at least one sample is required");
    const auto in = load(c);
    const auto e = build_equivariant(in.complex, in.cocycle);
    const auto generic = novikov_numbers(e, parse_rank_method(c.method), c.trials, c.seed);
    const auto mc = montecarlo_l2(e, c.samples, c.seed, c.tolerance, generic);
    ordered_json j;
    j["generic"] = io::to_json(generic, c.timing);
    j["montecarlo"] = io::to_json(mc, c.timing);
    return j;
}

ordered_json cmd_approx(const RunConfig &c)
{
    if (c.bound < 1)
        throw CLI::ValidationError("--bound", "denominator bound must be at least 1");
    const auto in = load(c);
    const auto a = rational_approximation(in.complex, in.cocycle, c.bound);
    ordered_json j = io::to_json(a);
    j["class_rank"] = cocycle_rank(in.complex, in.cocycle);
    j["approximated_class_rank"] = cocycle_rank(in.complex, a.integral);
    return j;
}

ordered_json cmd_rank(const RunConfig &c)
{
    const auto m = io::read_matrix_file(c.input);
    if (!c.points.empty())
    {
        ordered_json list = ordered_json::array();
        for (const auto &p : io::parse_points(c.points, m.rank()))
            list.push_back(io::to_json(specialized_rank(m, p, c.tolerance), c.timing));
        ordered_json j;
        j["specialized"] = list;
        return j;
    }
    return io::to_json(generic_rank(m, parse_rank_method(c.method), c.trials, c.seed), c.timing);
}

void add_common(CLI::App *sub, RunConfig &c, bool with_cocycle = true)
{
    sub->add_option("--input", c.input, "complex file (.dcx)")->required();
    if (with_cocycle)
        sub->add_option("--cocycle", c.cocycle, "cocycle file, inline values 'a,b;c,d;...', or 'zero'");
    sub->add_option("--method", c.method, "rank engine: exact, specialize or both")
        ->check(CLI::IsMember({"exact", "specialize", "both"}));
    sub->add_option("--trials", c.trials, "specializations per generic rank");
    sub->add_option("--seed", c.seed, "seed for every randomized step");
    sub->add_option("--output", c.output, "write the JSON report here instead of stdout");
    sub->add_flag("--timing", c.timing, "include elapsed times in the report");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig config;
    CLI::App app{"Novikov numbers and L2 Betti numbers of free abelian covers", "novikov"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    auto *compute = app.add_subcommand("compute", "Novikov numbers of a complex and cocycle");
    add_common(compute, config);

    auto *check = app.add_subcommand("check", "check the Morse-type inequalities against critical counts");
    add_common(check, config);
    check->add_option("--critical", config.critical, "critical counts 'c0,c1,...' or a file 'c = [...]'")->required();

    auto *cover = app.add_subcommand("cover", "cyclic cover and multiplicativity check");
    add_common(cover, config);
    cover->add_option("-m", config.m, "number of sheets (>= 2)")->required();
    cover->add_option("--cover-out", config.cover_out, "write the cover complex here");

    auto *probe = app.add_subcommand("probe", "twisted homology at given monodromy points");
    add_common(probe, config);
    probe->add_option("--points", config.points, "points separated by ';'")->required();
    probe->add_option("--tolerance", config.tolerance, "relative singular value cutoff");

    auto *sample = app.add_subcommand("sample", "Monte Carlo average over the unitary torus");
    add_common(sample, config);
    sample->add_option("--samples", config.samples, "number of torus samples");
    sample->add_option("--tolerance", config.tolerance, "relative singular value cutoff");

    auto *approx = app.add_subcommand("approx", "integral approximation of a rational cocycle");
    add_common(approx, config);
    approx->add_option("--bound", config.bound, "largest denominator tried");

    auto *rank = app.add_subcommand("rank", "generic rank of a Laurent matrix file");
    add_common(rank, config, false);
    rank->add_option("--points", config.points, "specialize at these points instead");
    rank->add_option("--tolerance", config.tolerance, "relative singular value cutoff");

    std::vector<const char *> argv{"novikov"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return usage_error;
    }

    static const std::map<std::string, ordered_json (*)(const RunConfig &)> handlers{
        {"compute", cmd_compute}, {"check", cmd_check}, {"cover", cmd_cover}, {"probe", cmd_probe},
        {"sample", cmd_sample},   {"approx", cmd_approx}, {"rank", cmd_rank}};
    config.command = app.get_subcommands().front()->get_name();

    int code = ok;
    ordered_json result;
    try
    {
        result = handlers.at(config.command)(config);
        if (result.contains("verdict") && result["verdict"] == "fail")
            code = check_failed;
    }
    catch (const CLI::ParseError &e)
    {
        err << "novikov: " << e.what() << "\n";
        return usage_error;
    }
    catch (const io::ParseError &e)
    {
        err << "novikov: parse error: " << e.what() << "\n";
        return usage_error;
    }
    catch (const novikov::ValidationError &e)
    {
        err << "novikov: invalid input: " << e.what() << "\n";
        return usage_error;
    }
    catch (const EngineDisagreement &e)
    {
        err << "novikov: engine disagreement: " << e.what() << "\n";
        return check_failed;
    }
    catch (const std::logic_error &e)
    {
        // Covers invalid_argument and the library's internal consistency checks.
        if (dynamic_cast<const std::invalid_argument *>(&e) || dynamic_cast<const std::out_of_range *>(&e))
        {
            err << "novikov: " << e.what() << "\n";
            return usage_error;
        }
        err << "novikov: check failed: " << e.what() << "\n";
        return check_failed;
    }
    catch (const std::exception &e)
    {
        err << "novikov: " << e.what() << "\n";
        return usage_error;
    }

    ordered_json doc;
    doc["tool"] = "novikov";
    doc["version"] = tool_version;
    doc["command"] = config.command;
    doc["config"] = config_json(config);
    doc["result"] = result;
    const auto text = doc.dump(2) + "\n";
    if (config.output.empty())
        out << text;
    else
    {
        std::ofstream f(config.output);
        if (!f)
        {
            err << "novikov: cannot write '" << config.output << "'\n";
            return usage_error;
        }
        f << text;
    }
    return code;
}

} // namespace novikov::cli
