#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args) {
    std::string cmd = std::string(ANNULI_LAB_BIN) + " " + args +
                      " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_stdout.txt");
    r.err = slurp("cli_stderr.txt");
    return r;
}

// splits a CSV body (ignoring # comment lines) into rows of fields
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(fields);
    }
    return rows;
}

const std::string kBase =
    "--n 3 --r 1 --R 2 --r-star 1 --R-star 2.718281828459045";

}  // namespace

TEST_CASE("energy: boundary profile at n = 3 gives 16 pi") {
    RunResult r = run("energy " + kBase + " --profile boundary-increasing --lambda 1");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);  // header + one row
    CHECK(rows[0][0] == "n");
    CHECK(rows[0][9] == "energy");
    double energy = std::stod(rows[1][9]);
    CHECK(energy == doctest::Approx(16.0 * kPi).epsilon(1e-9));
    CHECK(r.err.find("bound=") != std::string::npos);
    CHECK(r.err.find("relative_gap=") != std::string::npos);
    CHECK(r.out.find("# annuli-lab energy") == 0);
}

TEST_CASE("energy: el-minimizer coincides at n = 3") {
    RunResult a = run("energy " + kBase + " --profile boundary-increasing --lambda 1");
    RunResult b = run("energy " + kBase + " --profile el-minimizer --lambda 1");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    double ea = std::stod(csv_rows(a.out)[1][9]);
    double eb = std::stod(csv_rows(b.out)[1][9]);
    CHECK(ea == doctest::Approx(eb).epsilon(1e-9));
}

TEST_CASE("energy: malformed annulus exits 2 naming the field") {
    RunResult r = run("energy --n 3 --r 2 --R 1 --profile boundary-increasing");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("inner") != std::string::npos);
    CHECK(r.err.find("outer") != std::string::npos);
}

TEST_CASE("energy: bad profile spec and tiny lambda exit 2") {
    CHECK(run("energy " + kBase + " --profile bogus").exit_code == 2);
    CHECK(run("energy " + kBase + " --profile boundary-increasing --lambda 1e-8").exit_code ==
          2);
}

TEST_CASE("energy: tabulated profile from CSV") {
    {
        std::ofstream out("cli_profile.csv");
        out << "t,H\n";
        char buf[64];
        for (int i = 0; i < 80; ++i) {
            double t = 1.0 + i / 79.0;
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, std::exp(2.0 - 2.0 / t));
            out << buf;
        }
    }
    RunResult r = run("energy " + kBase + " --profile tabulated:cli_profile.csv --lambda 1");
    REQUIRE(r.exit_code == 0);
    double energy = std::stod(csv_rows(r.out)[1][9]);
    CHECK(energy == doctest::Approx(16.0 * kPi).epsilon(1e-5));
    std::remove("cli_profile.csv");
}

TEST_CASE("energy: json format parses and carries the config") {
    RunResult r =
        run("energy " + kBase + " --profile boundary-increasing --lambda 1 --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["config"]["n"] == 3);
    CHECK(double(j["row"]["energy"]) == doctest::Approx(16.0 * kPi).epsilon(1e-9));
}

TEST_CASE("sweep: geometric grid converges below the frozen threshold") {
    RunResult r = run("sweep --n 4 --grid geometric:1,0.5,11 --profile boundary-increasing");
    REQUIRE(r.exit_code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] ==
          std::vector<std::string>{"lambda", "energy", "limit_energy", "bound",
                                   "relative_excess"});
    double last_excess = std::stod(rows.back()[4]);
    CHECK(last_excess < 1e-3);
    CHECK(last_excess > 0.0);
    // energies nonincreasing down the grid
    for (std::size_t i = 2; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) <= std::stod(rows[i - 1][1]) + 1e-6);
}

TEST_CASE("sweep: reciprocal pair, and lambda = 1 matches energy byte-for-byte") {
    RunResult pair = run("sweep --n 4 --grid 2,0.5 --profile boundary-increasing");
    REQUIRE(pair.exit_code == 0);
    auto rows = csv_rows(pair.out);
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(rows[1][1]) == doctest::Approx(std::stod(rows[2][1])).epsilon(1e-8));

    RunResult sweep1 = run("sweep --n 4 --grid 1 --profile boundary-increasing");
    RunResult energy1 = run("energy --n 4 --profile boundary-increasing --lambda 1");
    REQUIRE(sweep1.exit_code == 0);
    REQUIRE(energy1.exit_code == 0);
    std::string from_sweep = csv_rows(sweep1.out)[1][1];
    std::string from_energy = csv_rows(energy1.out)[1][9];
    CHECK(from_sweep == from_energy);
}

TEST_CASE("sweep: bad grid specs exit 2") {
    CHECK(run("sweep --n 4 --grid geometric:1,0.5").exit_code == 2);
    CHECK(run("sweep --n 4 --grid -1,2").exit_code == 2);
    CHECK(run("sweep --n 4").exit_code == 2);  // --grid required
}

TEST_CASE("radial-min: n = 3 solution and zero gap") {
    RunResult r = run("radial-min " + kBase);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(double(j["solution"]["tau_star"]) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(double(j["solution"]["energy_closed_form"]) ==
          doctest::Approx(16.0 * kPi).epsilon(1e-10));
    double gap = double(j["gap"]["minimal_radial_energy"]) -
                 double(j["gap"]["dirichlet_infimum"]);
    CHECK(std::abs(gap) <= 1e-7);
}

TEST_CASE("radial-min: n = 4 positive gap with sandwich") {
    RunResult r = run("radial-min --n 4");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    double inf = j["gap"]["dirichlet_infimum"];
    double mid = j["gap"]["quasiradial_lambda_0.125"];
    double minimal = j["gap"]["minimal_radial_energy"];
    CHECK(inf < mid);
    CHECK(mid < minimal);
    CHECK(minimal - inf > 1.0);
    CHECK(double(j["solution"]["residual_max"]) <= 1e-8);
}

TEST_CASE("radial-min: degenerate target exits 2") {
    CHECK(run("radial-min --n 4 --r-star 1 --R-star 1").exit_code == 2);
}

TEST_CASE("verify: default passes, fault injection fails with the name") {
    RunResult ok = run("verify");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("0 failed") != std::string::npos);

    RunResult bad = run("verify --inject-fault lambda-symmetry");
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("lambda-symmetry") != std::string::npos);
}

TEST_CASE("verify: json output parses") {
    RunResult r = run("verify --format json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].is_array());
}

TEST_CASE("help documents flags; unknown flags exit 2") {
    RunResult top = run("--help");
    CHECK(top.exit_code == 0);
    for (const char* sub : {"energy", "sweep", "radial-min", "verify"})
        CHECK(top.out.find(sub) != std::string::npos);

    RunResult sub = run("energy --help");
    CHECK(sub.exit_code == 0);
    for (const char* flag : {"--profile", "--lambda"})
        CHECK(sub.out.find(flag) != std::string::npos);

    RunResult main_help = run("--help-all");
    CHECK(run("energy --no-such-flag").exit_code == 2);
    (void)main_help;
}

TEST_CASE("config file: values apply, flags override") {
    {
        std::ofstream out("cli_config.ini");
        out << "n=4\nr=1\nR=2\nr_star=1.5\nR_star=3.0\nrel_tol=1e-9\n";
    }
    RunResult from_config =
        run("energy --config cli_config.ini --profile boundary-increasing");
    REQUIRE(from_config.exit_code == 0);
    auto rows = csv_rows(from_config.out);
    CHECK(rows[1][3] == "1.5");  // r_star from the config file
    CHECK(rows[1][4] == "3");

    RunResult flag_wins = run(
        "energy --config cli_config.ini --R-star 4.0 --profile boundary-increasing");
    REQUIRE(flag_wins.exit_code == 0);
    CHECK(csv_rows(flag_wins.out)[1][4] == "4");
    std::remove("cli_config.ini");
}

TEST_CASE("config file: nested sections set subcommand options") {
    {
        std::ofstream out("cli_section.ini");
        out << "n=5\nr=1\nR=3\nr_star=2\nR_star=5\n[energy]\nprofile=boundary-decreasing\n"
               "lambda=2\n";
    }
    RunResult r = run("energy --config cli_section.ini");
    REQUIRE(r.exit_code == 0);
    auto row = csv_rows(r.out)[1];
    CHECK(row[0] == "5");
    CHECK(row[5] == "2");
    CHECK(row[6] == "boundary-decreasing");
    std::remove("cli_section.ini");
}

TEST_CASE("outputs are deterministic and --output writes a file") {
    RunResult a = run("sweep --n 4 --grid 1,2 --profile boundary-increasing");
    RunResult b = run("sweep --n 4 --grid 1,2 --profile boundary-increasing");
    CHECK(a.out == b.out);

    RunResult f = run("energy " + kBase +
                      " --profile boundary-increasing --output cli_energy.csv");
    REQUIRE(f.exit_code == 0);
    std::string file = slurp("cli_energy.csv");
    CHECK(file.find("n,r,R,") != std::string::npos);
    std::remove("cli_energy.csv");
}
