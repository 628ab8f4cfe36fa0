#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "novikov/cli.hpp"
#include "support.hpp"

using namespace novikov;
using nlohmann::json;
using testing::data_path;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;

    json result() const { return json::parse(out)["result"]; }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "novikov-cli-test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("compute")
{
    auto r = run({"compute", "--input", data_path("torus.dcx"), "--method", "both"});
    REQUIRE(r.code == 0);
    CHECK(r.result()["betti"] == json::array({0, 0, 0}));
    CHECK(r.result()["euler"] == 0);

    const auto doc = json::parse(r.out);
    CHECK(doc["tool"] == "novikov");
    CHECK(doc["version"] == cli::tool_version);
    CHECK(doc["command"] == "compute");
    CHECK(doc["config"]["seed"] == 0);
    CHECK(doc["config"]["trials"] == 5);

    r = run({"compute", "--input", data_path("circle.dcx"), "--method", "exact"});
    CHECK(r.result()["betti"] == json::array({0, 0}));

    r = run({"compute", "--input", data_path("torus.dcx"), "--cocycle", "zero"});
    CHECK(r.result()["betti"] == json::array({1, 2, 1}));

    r = run({"compute", "--input", data_path("torus.dcx"), "--cocycle", "1,0;0,1;1,1"});
    CHECK(r.result()["betti"] == json::array({0, 0, 0}));
    CHECK(r.result()["class_rank"] == 2);

    r = run({"compute", "--input", data_path("torus.dcx"), "--cocycle", data_path("torus_x.dcx")});
    CHECK(r.result()["class_rank"] == 1);

    const auto cocycle = temp_file("diagonal.cocycle");
    std::ofstream(cocycle) << "[cocycle 1]\n1\n1\n2\n";
    r = run({"compute", "--input", data_path("torus.dcx"), "--cocycle", cocycle});
    CHECK(r.result()["betti"] == json::array({0, 0, 0}));
}

TEST_CASE("reports are byte-identical across runs")
{
    const std::vector<std::string> args{"compute", "--input", data_path("genus2.dcx"), "--seed", "11"};
    CHECK(run(args).out == run(args).out);

    const std::vector<std::string> sample{"sample", "--input", data_path("torus.dcx"), "--samples", "50", "--seed", "3"};
    CHECK(run(sample).out == run(sample).out);

    const auto path = temp_file("report.json");
    std::vector<std::string> to_file = args;
    to_file.insert(to_file.end(), {"--output", path});
    auto r = run(to_file);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(read_file(path) == run(args).out);

    std::vector<std::string> timed = args;
    timed.push_back("--timing");
    CHECK(run(timed).result().contains("elapsed_ms"));
    CHECK_FALSE(run(args).result().contains("elapsed_ms"));
}

TEST_CASE("check")
{
    auto r = run({"check", "--input", data_path("genus2.dcx"), "--critical", "0,2,0"});
    CHECK(r.code == 0);
    CHECK(r.result()["verdict"] == "pass");

    r = run({"check", "--input", data_path("figure_eight.dcx"), "--critical", "0,0"});
    CHECK(r.code == 1);
    CHECK(r.result()["checks"][0]["rule"] == "theorem-1");
    CHECK(r.result()["checks"][0]["verdict"] == "fail");

    r = run({"check", "--input", data_path("torus.dcx"), "--critical", "0,0,0"});
    CHECK(r.code == 0);
    const auto torus = r.result();
    for (const auto &row : torus["checks"][0]["rows"])
        CHECK(row["lhs"] == row["rhs"]);

    r = run({"check", "--input", data_path("torus.dcx"), "--critical", "c = [0, 0, 0]"});
    CHECK(r.code == 0);

    r = run({"check", "--input", data_path("torus.dcx"), "--critical", "0,-1,0"});
    CHECK(r.code == 2);
}

TEST_CASE("cover")
{
    const auto path = temp_file("fig8_cover.dcx");
    auto r = run({"cover", "--input", data_path("figure_eight.dcx"), "-m", "2", "--cover-out", path});
    REQUIRE(r.code == 0);
    CHECK(r.result()["verdict"] == "pass");
    CHECK(r.result()["cover"]["betti"] == json::array({0, 2}));

    const auto cover = io::read_complex_file(path);
    CHECK(cover.complex.cell_counts() == std::vector<std::size_t>{2, 4});
    CHECK_NOTHROW(validate_complex(cover.complex));
    REQUIRE(cover.cocycle.has_value());
    const auto again = run({"compute", "--input", path});
    CHECK(again.result()["betti"] == json::array({0, 2}));

    r = run({"cover", "--input", data_path("circle.dcx"), "-m", "3"});
    CHECK(r.code == 0);

    r = run({"cover", "--input", data_path("torus.dcx"), "-m", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("rank-1") != std::string::npos);

    r = run({"cover", "--input", data_path("circle.dcx"), "-m", "1"});
    CHECK(r.code == 2);
}

TEST_CASE("probe and sample")
{
    auto r = run({"probe", "--input", data_path("circle.dcx"), "--points", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.result()["points"][0]["jump"] == true);
    CHECK(r.result()["jump_count"] == 1);

    r = run({"probe", "--input", data_path("circle.dcx"), "--points", "1;i;-1"});
    CHECK(r.result()["jump_count"] == 1);

    r = run({"sample", "--input", data_path("torus.dcx"), "--samples", "1000", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto sample = r.result();
    for (const auto &m : sample["montecarlo"]["mean"])
        CHECK(m.get<double>() <= 0.01);

    r = run({"sample", "--input", data_path("torus.dcx"), "--samples", "0"});
    CHECK(r.code == 2);
}

TEST_CASE("approx")
{
    auto r = run({"approx", "--input", data_path("figure_eight.dcx"), "--cocycle", "1;1/3", "--bound", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.result()["scale"] == "1/3");
    CHECK(r.result()["error"] == "0");
}

TEST_CASE("rank of a matrix file")
{
    const auto path = temp_file("m.txt");
    std::ofstream(path) << "[matrix 1 2 1]\n0 0 : (1) [1] - (1) [0]\n0 1 : (1) [1] - (1) [0]\n";
    auto r = run({"rank", "--input", path});
    REQUIRE(r.code == 0);
    CHECK(r.result()["rank"] == 1);

    r = run({"rank", "--input", path, "--points", "1;2"});
    CHECK(r.result()["specialized"][0]["rank"] == 0);
    CHECK(r.result()["specialized"][1]["rank"] == 1);
}

TEST_CASE("usage and input errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"compute"}).code == 2);
    CHECK(run({"compute", "--input", data_path("torus.dcx"), "--method", "fast"}).code == 2);
    CHECK(run({"compute", "--input", "/nonexistent.dcx"}).code == 2);

    const auto bad = temp_file("bad.dcx");
    std::ofstream(bad) << "[cells 0]\n1\n[cells 1]\n0 q\n";
    auto r = run({"compute", "--input", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4, column 3") != std::string::npos);

    r = run({"compute", "--input", data_path("torus.dcx"), "--cocycle", "1,0;0,1;0,0"});
    CHECK(r.code == 2);

    r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find(cli::tool_version) != std::string::npos);
}
