#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frheo/cli.h"
#include "frheo/csv_io.h"
#include "frheo/errors.h"
#include "frheo/models.h"
#include "oracles.h"

using namespace frheo;
using oracle::rel_err;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "frheo");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("frheo_test_" + name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(-2.5e300) == "-2.5e+300");
    CHECK(format_shortest(std::exp(1.0)) == "2.718281828459045");
    CHECK(parse_number("+1.5", 1) == 1.5);
    CHECK(parse_number("-2e-3", 1) == -0.002);
    CHECK_THROWS_AS(parse_number("1.5x", 3), FormatError);
    CHECK_THROWS_AS(parse_number("", 3), FormatError);
    CHECK_THROWS_AS(parse_number("1,5", 3), FormatError);
}

TEST_CASE("creep CSV ingestion") {
    std::istringstream three("t,stress,strain\n1,2,3\n2,2,4\n\n4,2,5\r\n");
    const auto recs = creep_records_from(read_csv(three));
    REQUIRE(recs.size() == 3);
    CHECK(recs[2].t == 4.0);
    CHECK(recs[2].strain == 5.0);

    std::istringstream reordered("Strain,T,Stress\n3,1,2\n");
    const auto r = creep_records_from(read_csv(reordered));
    CHECK(r[0].t == 1.0);
    CHECK(r[0].stress == 2.0);
    CHECK(r[0].strain == 3.0);

    std::istringstream missing("t,strain\n1,2\n");
    CHECK_THROWS_AS(creep_records_from(read_csv(missing)), FormatError);
    std::istringstream nonpositive("t,stress,strain\n1,0,3\n");
    CHECK_THROWS_AS(creep_records_from(read_csv(nonpositive)), FormatError);
    std::istringstream ragged("t,stress,strain\n1,2\n");
    CHECK_THROWS_AS(read_csv(ragged), FormatError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), FormatError);
    CHECK_THROWS_AS(read_csv_file("/nonexistent/frheo.csv"), IoError);
}

TEST_CASE("signal CSV ingestion checks uniform spacing") {
    std::istringstream ok("t,value\n0,0\n0.001,1\n0.002,4\n0.003,9\n");
    const auto s = signal_from(read_csv(ok));
    CHECK(s.t0 == 0.0);
    CHECK(rel_err(s.dt, 0.001) < 1e-12);
    CHECK(s.values.size() == 4);

    std::istringstream irregular("t,value\n0,0\n0.001,1\n0.0021,4\n0.003,9\n");
    try {
        signal_from(read_csv(irregular));
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("make_grid") {
    const auto lin = cli::make_grid(1.0, 3.0, 5, false);
    CHECK(lin == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
    const auto lg = cli::make_grid(0.01, 100.0, 5, true);
    CHECK(lg.front() == 0.01);
    CHECK(lg.back() == 100.0);
    CHECK(rel_err(lg[2], 1.0) < 1e-14);
    CHECK(cli::make_grid(2.0, 2.0, 1, true) == std::vector<double>{2.0});
}

TEST_CASE("ml command") {
    auto r = run_cli({"ml", "--alpha", "1", "--beta", "1", "--z", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "2.718281828459045\n");

    r = run_cli({"ml", "--alpha", "0.5", "--beta", "1", "--z", "-1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("alpha,beta,z,value\n0.5,1,-1,", 0) == 0);

    r = run_cli({"ml", "--alpha", "0.5", "--beta", "1", "--z", "-1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "ml");
    CHECK(rel_err(j["result"]["value"][0].get<double>(), oracle::ml_half_negative(1.0)) < 1e-14);

    r = run_cli({"ml", "--alpha", "0", "--beta", "1", "--z", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("frheo: E_PARAM:", 0) == 0);

    r = run_cli({"ml", "--alpha", "1", "--beta", "1", "--z", "800"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_OVERFLOW:", 0) == 0);
}

TEST_CASE("respond command") {
    auto r = run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--function",
                      "relaxation", "--tmin", "1", "--tmax", "1", "--points", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "t,value\n1,0.564189583547756\n");

    r = run_cli({"respond", "--model", "cmaxwell", "--E", "1", "--tau", "1", "--function", "complex", "--tmin", "1",
                 "--tmax", "1", "--points", "1"});
    CHECK(r.out == "omega,storage,loss\n1,0.5,0.5\n");

    r = run_cli({"respond", "--model", "fzener", "--a1", "2", "--b0", "1", "--b1", "1", "--alpha", "0.5",
                 "--points", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["params"]["model"] == "fzener");
    CHECK(j["result"]["t"].size() == 3);
    CHECK(j["diagnostics"].size() == 1);

    r = run_cli({"respond", "--model", "fzener", "--a1", "2", "--b0", "1", "--b1", "1", "--alpha", "0.5",
                 "--points", "3"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"respond", "--model", "springpot", "--kappa", "1"}).code == 2);
    CHECK(run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--tau", "2"}).code == 2);
    CHECK(run_cli({"respond", "--model", "nosuch", "--kappa", "1"}).code == 2);
    CHECK(run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--tmin", "2", "--tmax",
                   "1"}).code == 2);
    CHECK(run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--points", "0"}).code == 2);
    CHECK(run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "1.5"}).code == 2);
    CHECK(run_cli({"respond", "--model", "fmaxwell", "--E", "1", "--lambda", "1", "--alpha", "0.8", "--beta",
                   "0.2"}).code == 2);
    CHECK(run_cli({"ml", "--alpha", "1", "--beta", "1", "--z", "1", "--format", "xml"}).code == 2);
    const auto r = run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--tau", "2"});
    CHECK(r.err.rfind("frheo: E_USAGE:", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("numerical and file errors exit 1") {
    auto r = run_cli({"respond", "--model", "springpot", "--kappa", "1", "--alpha", "1", "--function", "relaxation"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_DOMAIN:", 0) == 0);
    r = run_cli({"fit", "nutting", "--input", "/nonexistent/creep.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_IO:", 0) == 0);
    const auto bad = temp_file("bad.csv", "t,stress,strain\n1,2,x\n");
    r = run_cli({"fit", "nutting", "--input", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_FORMAT:", 0) == 0);
    const auto two = temp_file("two.csv", "t,stress,strain\n1,2,3\n2,2,4\n");
    r = run_cli({"fit", "nutting", "--input", two.string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_DEGENERATE:", 0) == 0);
}

TEST_CASE("fit nutting on the noiseless fixture") {
    const std::string path = oracle::data_dir() + "/creep_noiseless.csv";
    auto r = run_cli({"fit", "nutting", "--input", path, "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["result"]["psi"].get<double>() - 2.0) < 1e-10);
    CHECK(std::abs(j["result"]["alpha"].get<double>() - 0.5) < 1e-10);
    CHECK(std::abs(j["result"]["beta"].get<double>() - 1.0) < 1e-10);
    r = run_cli({"fit", "nutting", "--input", path});
    CHECK(r.out.rfind("psi,alpha,beta,rms_log_residual,n_points,beta_fixed,alpha_out_of_range\n", 0) == 0);
}

TEST_CASE("simulate and quasi commands") {
    std::string csv = "t,value\n";
    for (int i = 0; i <= 1000; ++i) csv += format_number(i * 1e-3) + "," + format_number(i * 1e-3) + "\n";
    const auto strain = temp_file("strain.csv", csv);

    auto r = run_cli({"simulate", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--input",
                      strain.string()});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto series = signal_from(read_csv(in));
    CHECK(rel_err(series.values.back(), 1.0 / std::tgamma(1.5)) < 1e-2);

    r = run_cli({"quasi", "--input", strain.string(), "--S", "3", "--mu", "1"});
    REQUIRE(r.code == 0);
    std::istringstream qin(r.out);
    for (const auto& row : read_csv(qin).rows) CHECK(rel_err(row[1], 3.0) < 1e-9);

    const auto jump = temp_file("jump.csv", "t,value\n0,1\n0.1,1\n0.2,1\n");
    r = run_cli({"simulate", "--model", "springpot", "--kappa", "1", "--alpha", "0.5", "--input", jump.string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("frheo: E_DOMAIN:", 0) == 0);
}

TEST_CASE("output file, determinism and round trip") {
    const fs::path a = fs::temp_directory_path() / "frheo_test_a.csv";
    const fs::path b = fs::temp_directory_path() / "frheo_test_b.csv";
    const std::vector<std::string> args{"respond", "--model", "fmaxwell", "--E", "2", "--lambda", "0.5", "--alpha",
                                        "0.3", "--beta", "0.7", "--tmin", "0.1", "--tmax", "10", "--points", "25",
                                        "--spacing", "linear"};
    auto with_a = args, with_b = args;
    with_a.insert(with_a.end(), {"--output", a.string()});
    with_b.insert(with_b.end(), {"--output", b.string()});
    REQUIRE(run_cli(with_a).code == 0);
    REQUIRE(run_cli(with_b).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == run_cli(args).out);

    const auto series = ingest_signal_csv(a.string());
    const FracMaxwell m{2.0, 0.5, 0.3, 0.7};
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.time(i);
        CHECK(format_number(series.values[i]) == format_number(relaxation_modulus_at(m, t)));
    }
}
