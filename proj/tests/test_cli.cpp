#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecs/cli.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("ecs");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code =
        ecs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Last data line of a CSV payload (skips '#' meta and the header row).
std::vector<std::string> csv_fields(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    std::string last;
    while (std::getline(stream, line)) {
        if (line.empty() || line[0] == '#') continue;
        last = line;
    }
    std::vector<std::string> fields;
    std::istringstream row(last);
    std::string cell;
    while (std::getline(row, cell, ',')) fields.push_back(cell);
    return fields;
}

int count_data_rows(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    int rows = -1;  // header does not count
    while (std::getline(stream, line))
        if (!line.empty() && line[0] != '#') ++rows;
    return rows;
}

}  // namespace

TEST_CASE("compute at the optimum operating point") {
    const CliResult res =
        run_cli({"compute", "--m", "8", "--eta", "0.7", "--alpha2", "2.86"});
    REQUIRE(res.code == 0);
    const std::vector<std::string> row = csv_fields(res.out);
    REQUIRE(row.size() == 10);
    CHECK(row[0] == "8");
    CHECK(std::stod(row[6]) == doctest::Approx(0.945504977).epsilon(1e-6));
    CHECK(row[9] == "exact");
}

TEST_CASE("compute the lossless log2(m) limit") {
    const CliResult res =
        run_cli({"compute", "--m", "4", "--eta", "1", "--delta", "1e-8"});
    REQUIRE(res.code == 0);
    CHECK(std::stod(csv_fields(res.out)[6]) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("compute flag validation") {
    CHECK(run_cli({"compute", "--m", "8", "--alpha2", "1"}).code == 2);  // no eta
    CHECK(run_cli({"compute", "--m", "8", "--eta", "0.7"}).code == 2);   // no amplitude
    CHECK(run_cli({"compute", "--eta", "0.7", "--alpha2", "1"}).code == 2);  // no m

    const CliResult both =
        run_cli({"compute", "--m", "8", "--eta", "0.7", "--epsilon", "0.3", "--alpha2", "1"});
    CHECK(both.code == 2);
    CHECK(both.err.find("--eta") != std::string::npos);

    const CliResult bad_eta =
        run_cli({"compute", "--m", "8", "--eta", "1.5", "--alpha2", "1"});
    CHECK(bad_eta.code == 2);
    CHECK(bad_eta.err.find("--eta") != std::string::npos);

    CHECK(run_cli({"compute", "--m", "8", "--eta", "0.7", "--alpha2", "1", "--method",
                   "bogus"})
              .code == 2);
}

TEST_CASE("compute size-limit refusal and auto fallback") {
    const CliResult refused = run_cli(
        {"compute", "--m", "60", "--eta", "0.7", "--alpha2", "2", "--method", "exact"});
    CHECK(refused.code == 3);
    CHECK(refused.err.find("m <= 50") != std::string::npos);

    const CliResult fallback =
        run_cli({"compute", "--m", "60", "--eta", "0.7", "--alpha2", "2"});
    CHECK(fallback.code == 0);
    CHECK(csv_fields(fallback.out)[9] == "approx_f");
}

TEST_CASE("ECS_EXACT_LIMIT overrides the cap") {
    ::setenv("ECS_EXACT_LIMIT", "10", 1);
    const CliResult refused = run_cli(
        {"compute", "--m", "12", "--eta", "0.7", "--alpha2", "2", "--method", "exact"});
    ::unsetenv("ECS_EXACT_LIMIT");
    CHECK(refused.code == 3);
    CHECK(refused.err.find("m <= 10") != std::string::npos);
}

TEST_CASE("compute epsilon flag mirrors eta") {
    const CliResult a =
        run_cli({"compute", "--m", "5", "--eta", "0.7", "--alpha2", "2", "--no-meta"});
    const CliResult b =
        run_cli({"compute", "--m", "5", "--epsilon", "0.3", "--alpha2", "2", "--no-meta"});
    CHECK(a.out == b.out);
}

TEST_CASE("json output is an array of flat records") {
    const CliResult res = run_cli(
        {"compute", "--m", "8", "--eta", "0.7", "--alpha2", "2.86", "--format", "json"});
    REQUIRE(res.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(res.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["m"] == 8);
    CHECK(doc[0]["method"] == "exact");
    CHECK(std::abs(doc[0]["e_n"].get<double>() - 0.945505) < 1e-5);
}

TEST_CASE("figure fig3 dataset") {
    const CliResult res =
        run_cli({"figure", "fig3", "--points", "5", "--output", "-", "--no-meta"});
    REQUIRE(res.code == 0);
    CHECK(count_data_rows(res.out) == 5 * 5);
    CHECK(res.out.find("m,alpha2,eta,epsilon,delta,delta_n,e_n,delta_e_n,rate,method") !=
          std::string::npos);
    CHECK(res.out.find("\n20000,") != std::string::npos);
    CHECK(res.out.find("\n20,") != std::string::npos);

    const CliResult again =
        run_cli({"figure", "fig3", "--points", "5", "--output", "-", "--no-meta"});
    CHECK(res.out == again.out);  // byte-identical rerun
}

TEST_CASE("figure fig2 emits the five caption configurations") {
    const CliResult res =
        run_cli({"figure", "fig2", "--points", "3", "--output", "-", "--no-meta"});
    REQUIRE(res.code == 0);
    CHECK(count_data_rows(res.out) == 5 * 3);
    CHECK(res.out.find("\n200,") != std::string::npos);
    CHECK(res.out.find("\n2000,") != std::string::npos);
}

TEST_CASE("figure fig5 covers m = 2..10") {
    const CliResult res =
        run_cli({"figure", "fig5", "--points", "8", "--output", "-", "--no-meta"});
    REQUIRE(res.code == 0);
    CHECK(count_data_rows(res.out) == 9 * 8);
    for (int m : {2, 5, 10})
        CHECK(res.out.find("\n" + std::to_string(m) + ",") != std::string::npos);
}

TEST_CASE("figure writes files and reports I/O failures") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "ecs_fig3_test.csv";
    const CliResult ok = run_cli(
        {"figure", "fig3", "--points", "3", "--output", path.string(), "--no-meta"});
    CHECK(ok.code == 0);
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream content;
    content << file.rdbuf();
    CHECK(count_data_rows(content.str()) == 5 * 3);
    std::filesystem::remove(path);

    const CliResult bad = run_cli(
        {"figure", "fig3", "--points", "3", "--output", "/nonexistent/dir/out.csv"});
    CHECK(bad.code == 4);
}

TEST_CASE("optimize single m") {
    const CliResult res = run_cli({"optimize", "--eta", "0.7", "--m", "8"});
    REQUIRE(res.code == 0);
    const std::vector<std::string> row = csv_fields(res.out);
    CHECK(row[0] == "8");
    CHECK(std::stod(row[1]) == doctest::Approx(2.86).epsilon(0.053));
    CHECK(std::stod(row[6]) == doctest::Approx(0.9458).epsilon(1e-3));
    CHECK(std::stod(row[4]) == doctest::Approx(0.19).epsilon(0.16));  // delta at optimum
}

TEST_CASE("optimize reports the monotone lossless edge") {
    const CliResult res = run_cli({"optimize", "--eta", "1", "--m", "4"});
    CHECK(res.code == 5);
    CHECK(res.err.find("no interior maximum") != std::string::npos);
}

TEST_CASE("optimize over an m range") {
    const CliResult res = run_cli({"optimize", "--eta", "0.7", "--m-range", "2:5"});
    REQUIRE(res.code == 0);
    CHECK(csv_fields(res.out)[0] == "5");
    CHECK(run_cli({"optimize", "--eta", "0.7"}).code == 2);
    CHECK(run_cli({"optimize", "--eta", "0.7", "--m-range", "25"}).code == 2);
}

TEST_CASE("oracle-check agreement and envelope") {
    const CliResult ok =
        run_cli({"oracle-check", "--m", "2", "--alpha2", "1", "--eta", "0.7"});
    REQUIRE(ok.code == 0);
    const std::vector<std::string> row = csv_fields(ok.out);
    REQUIRE(row.size() == 7);
    CHECK(std::stod(row[6]) <= 1e-3);

    CHECK(run_cli({"oracle-check", "--m", "6", "--alpha2", "2", "--eta", "0.7"}).code == 2);
    CHECK(run_cli({"oracle-check", "--m", "3", "--alpha2", "8", "--eta", "0.7"}).code == 2);
}

TEST_CASE("oracle-check at eta = 1 reproduces the pure value") {
    const CliResult res =
        run_cli({"oracle-check", "--m", "3", "--alpha2", "2", "--eta", "1"});
    REQUIRE(res.code == 0);
    const std::vector<std::string> row = csv_fields(res.out);
    CHECK(std::stod(row[4]) == doctest::Approx(1.581420233).epsilon(1e-6));
    CHECK(std::stod(row[5]) == doctest::Approx(1.581420233).epsilon(1e-4));
}

TEST_CASE("fit-dprime prints a cutoff constant near pi") {
    const CliResult res = run_cli({"fit-dprime", "--no-meta"});
    REQUIRE(res.code == 0);
    const std::vector<std::string> row = csv_fields(res.out);
    REQUIRE(row.size() == 1);
    const double d_prime = std::stod(row[0]);
    CHECK(d_prime > 2.5);
    CHECK(d_prime < 4.0);
}

TEST_CASE("config file values are used and overridden by flags") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "ecs_cli_test.cfg";
    {
        std::ofstream cfg(path);
        cfg << "# sample run configuration\n"
            << "m=8\n"
            << "eta=0.7\n"
            << "alpha2=2.86\n";
    }
    const CliResult from_cfg = run_cli({"compute", "--config", path.string(), "--no-meta"});
    const CliResult from_flags = run_cli(
        {"compute", "--m", "8", "--eta", "0.7", "--alpha2", "2.86", "--no-meta"});
    CHECK(from_cfg.code == 0);
    CHECK(from_cfg.out == from_flags.out);

    const CliResult overridden =
        run_cli({"compute", "--config", path.string(), "--alpha2", "1.0", "--no-meta"});
    REQUIRE(overridden.code == 0);
    CHECK(std::stod(csv_fields(overridden.out)[1]) == doctest::Approx(1.0));
    std::filesystem::remove(path);
}

TEST_CASE("csv floats use 12 significant digits") {
    const CliResult res =
        run_cli({"compute", "--m", "2", "--eta", "0.5", "--alpha2", "0.125", "--no-meta"});
    REQUIRE(res.code == 0);
    const std::vector<std::string> row = csv_fields(res.out);
    CHECK(row[1] == "0.125");
    CHECK(row[3] == "0.5");  // epsilon
    CHECK(row[5] == "0.0625");  // delta_n
}
