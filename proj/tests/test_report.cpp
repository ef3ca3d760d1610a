#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubic/cli.hpp"
#include "cubic/report.hpp"

using namespace cubic;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path tmp_dir() {
    fs::path d = fs::path(CUBIC_TEST_TMP) / "report";
    fs::create_directories(d);
    return d;
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), {"--cache-dir", tmp_dir().string()});
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("run configuration") {
    auto cfg = RunConfig::from_json(json::parse(R"({"cache_dir": "c", "prime_cutoff": 1000, "tail_correction": false,
        "format": "json", "tolerance": {"sigmas": 3, "absolute": 2.5}})"), "/base");
    CHECK(cfg.cache_dir == fs::path("/base/c"));
    CHECK(cfg.prime_cutoff == 1000);
    CHECK_FALSE(cfg.predictor().tail_correction);
    CHECK(cfg.format == OutputFormat::Json);
    CHECK(cfg.bound(10000) == 2.5);
    cfg.absolute.reset();
    CHECK(cfg.bound(10000) == doctest::Approx(300));

    CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"cache": "x"})"), "/"), config_error);
    CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"tolerance": {"sigma": 3}})"), "/"), config_error);
    CHECK_THROWS_AS(RunConfig::from_json(json::parse(R"({"format": "xml"})"), "/"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::load(tmp_dir() / "missing.json"), std::invalid_argument);

    fs::path file = tmp_dir() / "run.json";
    { std::ofstream(file) << R"({"cache_dir": "cache", "format": "csv"})"; }
    auto loaded = RunConfig::load(file);
    CHECK(loaded.cache_dir == tmp_dir() / "cache");
    CHECK(loaded.format == OutputFormat::Csv);
}

TEST_CASE("csv and json carry the same numbers") {
    auto csv = cli({"--format", "csv", "predict", "fields", "--at", "2000000", "--mod", "7"});
    auto js = cli({"--format", "json", "predict", "fields", "--at", "2000000", "--mod", "7"});
    REQUIRE(csv.code == kExitOk);
    REQUIRE(js.code == kExitOk);
    auto rows = parse_csv(csv.out);
    auto j = json::parse(js.out);
    REQUIRE(rows.size() == j.at("rows").size() + 1);
    const auto& header = rows[0];
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& jr = j.at("rows")[i - 1];
        for (size_t k = 0; k < header.size(); ++k) {
            const auto& v = jr.at(header[k]);
            if (v.is_number_float())
                CHECK(std::stod(rows[i][k]) == v.get<double>());
            else if (v.is_number_integer())
                CHECK(std::stoll(rows[i][k]) == v.get<i64>());
            else
                CHECK(rows[i][k] == v.get<std::string>());
        }
    }
    // the rounded mod-7 predictions
    CHECK(j.at("rows")[5].at("rounded").get<i64>() == 18063);
}

TEST_CASE("output is deterministic") {
    for (const char* f : {"table", "csv", "json"}) {
        std::vector<std::string> args{"--format", f, "census", "fields", "--max-disc", "5000", "--mod", "9"};
        auto a = cli(args), b = cli(args);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("renderers") {
    std::ostringstream out;
    render_counts(out, OutputFormat::Csv, {{"X", 10}}, {{"all", 3}});
    CHECK(out.str() == "label,count\nall,3\n");

    RunConfig cfg;
    cfg.format = OutputFormat::Json;
    std::ostringstream cmp;
    CHECK(render_comparison(cmp, cfg, {}, {ComparisonRow::make("a", 100, 101.5)}));
    auto j = json::parse(cmp.str());
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("rows")[0].at("difference").get<double>() == -1.5);
    cfg.absolute = 1.0;
    std::ostringstream fail;
    CHECK_FALSE(render_comparison(fail, cfg, {}, {ComparisonRow::make("a", 100, 101.5)}));
    CHECK(parse_format("table") == OutputFormat::Table);
    CHECK_THROWS(parse_format("yaml"));
}

TEST_CASE("exit codes") {
    auto r = cli({"--format", "csv", "census", "fields", "--max-disc", "49", "--sign", "plus"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "label,count\nall,1\n");

    CHECK(cli({"census", "fields", "--max-disc", "1000", "--spec", "7:sideways"}).code == kExitUsage);
    CHECK(cli({"predict", "fields", "--at", "1000", "--mod", "8"}).code == kExitUsage);
    CHECK(cli({"census", "fields"}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({"verify", "sieve", "--max-disc", "1000"}).code == kExitOk);
    CHECK(cli({"verify", "sieve", "--max-disc", "100000"}).code == kExitUsage);

    // a tiny absolute tolerance makes an honest comparison fail
    CHECK(cli({"compare", "fields", "--max-disc", "20000", "--mod", "7"}).code == kExitOk);
    CHECK(cli({"--abs-tol", "0.5", "compare", "fields", "--max-disc", "20000", "--mod", "7"}).code == kExitComparison);
}
