#include "gmc/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const char* bin = std::getenv("GMC_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, p))
        out += buf;
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("gmc_cli_test_" + name);
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_CASE("exit codes")
{
    CHECK(run("--config /nonexistent.ini experiment log-phi").code == 2);
    CHECK(run("--override log-phi.bogus=1 experiment log-phi").code == 2);
    CHECK(run("experiment not-an-experiment").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("eval-phi on the two-atom measure")
{
    const Run r = run("eval-phi --atoms 0:0.5,3.141592653589793:0.5 --at 0.5,0");
    CHECK(r.code == 0);
    CHECK(r.out.find("phi=0.25") != std::string::npos);
    CHECK(r.out.find("h=1.66666666666667") != std::string::npos);
}

TEST_CASE("experiment output files")
{
    const fs::path d = scratch("exp");
    const Run r = run("--out " + d.string() +
                      " --seed 5 --override log-phi.replicas=20 --override log-phi.N_schedule=64"
                      " --override log-phi.M=256 --override log-phi.angles=2"
                      " --override log-phi.radii=0.5,0.75,0.875 experiment log-phi");
    CHECK(r.code == 0);
    CHECK(r.out.find("log-phi: slope=") != std::string::npos);
    const std::string csv = slurp(d / "log-phi.csv");
    CHECK(csv.rfind("r,estimate,se,replicas\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find('\r') == std::string::npos);
    const std::string jsonl = slurp(d / "log-phi.jsonl");
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 4);
    CHECK(jsonl.find("\"summary\"") != std::string::npos);
    const std::string manifest = slurp(d / "manifest.json");
    CHECK(manifest.find("\"master_seed\": 5") != std::string::npos);
    CHECK(manifest.find("log-phi.csv") != std::string::npos);
    // Everything lands inside the output directory.
    for (const auto& e : fs::recursive_directory_iterator(d))
        CHECK(e.path().string().rfind(d.string(), 0) == 0);
}

TEST_CASE("find-zeros, dump-measure, sample-field and decompose")
{
    const fs::path d = scratch("tools");
    Run r = run("--out " + d.string() +
                " find-zeros --atoms 0:0.25,1.5707963267948966:0.25,3.141592653589793:0.25,"
                "4.71238898038469:0.25 --rmax 0.9");
    CHECK(r.code == 0);
    const std::string zeros = slurp(d / "zeros.csv");
    CHECK(zeros.rfind("re,im,multiplicity,one_minus_abs\n", 0) == 0);
    CHECK(zeros.find(",4,") != std::string::npos);

    r = run("--out " + d.string() + " --seed 3 dump-measure --N 16");
    CHECK(r.code == 0);
    const std::string m = slurp(d / "measure.csv");
    CHECK(std::count(m.begin(), m.end(), '\n') == 65);

    r = run("--out " + d.string() + " --seed 3 sample-field --N 8 --rows 2");
    CHECK(r.code == 0);
    CHECK(slurp(d / "field.txt").rfind("32 8 canonical ", 0) == 0);

    {
        std::ofstream g(d / "g.txt");
        g << "1 1 -1\n0 0 0.2\n";
    }
    r = run("--out " + d.string() + " decompose --g-spec " + (d / "g.txt").string() + " --degree 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("A_inf=") != std::string::npos);
    CHECK(r.out.find("l=1") != std::string::npos);
}
