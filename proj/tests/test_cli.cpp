// Exercises the installed CLI binary end to end: exit-code contract,
// deterministic outputs, and the file formats.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catop/cmatrix.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(CATOP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("catop_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("exit code contract") {
    CHECK(run("definitely-not-a-command") == 2);
    CHECK(run("solve") == 2);                       // missing required --matrix
    CHECK(run("solve --matrix /nope/missing.txt") == 3);
    CHECK(run("verify --suite scalar --seed 7") == 0);
    CHECK(run("verify --suite bogus") == 2);
    TempDir d;
    CHECK(run("solve --matrix /etc/hostname --out " + d.path.string()) == 3);  // malformed matrix
}

TEST_CASE("solve: nilpotent series solution equals I + T") {
    TempDir d;
    fs::path m = d.path / "t.txt";
    {
        std::ofstream out(m);
        out << "2 2\n0 0.5\n0 0\n";
    }
    CHECK(run("solve --matrix " + m.string() + " --method series --out " + d.path.string()) == 0);
    catop::CMatrix Y = catop::read_matrix_file((d.path / "solution.txt").string());
    CHECK(Y(0, 0) == catop::cplx(1.0));
    CHECK(Y(0, 1) == catop::cplx(0.5));
    CHECK(Y(1, 0) == catop::cplx(0.0));
    CHECK(Y(1, 1) == catop::cplx(1.0));
    CHECK(fs::exists(d.path / "manifest.json"));
    CHECK(fs::exists(d.path / "info.json"));
}

TEST_CASE("solve: catalan iteration matches series on the swap matrix") {
    TempDir d;
    fs::path m = d.path / "t.txt";
    {
        std::ofstream out(m);
        out << "2 2\n0 0.1\n0.1 0\n";
    }
    fs::path o1 = d.path / "a", o2 = d.path / "b";
    CHECK(run("solve --matrix " + m.string() + " --method catalan:2 --out " + o1.string()) == 0);
    CHECK(run("solve --matrix " + m.string() + " --method series --out " + o2.string()) == 0);
    catop::CMatrix Y1 = catop::read_matrix_file((o1 / "solution.txt").string());
    catop::CMatrix Y2 = catop::read_matrix_file((o2 / "solution.txt").string());
    CHECK((Y1 - Y2).max_abs() <= 1e-11);

    CHECK(run("solve --matrix " + m.string() + " --method catalan:0 --out " + d.path.string()) == 2);
}

TEST_CASE("boundary: counts, theta=0 row, determinism") {
    TempDir d;
    CHECK(run("boundary --samples 8 --curves sigma,omega --out " + d.path.string()) == 0);
    std::string csv = slurp(d.path / "boundary.csv");
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 8 + 8);  // header + 8 per curve
    // theta = 0 lands on the grid (even M): the sigma value there is (2, 0)
    CHECK(csv.find("0,2,0,sigma_c\n") != std::string::npos);

    TempDir d2;
    CHECK(run("boundary --samples 8 --curves sigma,omega --out " + d2.path.string()) == 0);
    CHECK(slurp(d2.path / "boundary.csv") == csv);
    CHECK(slurp(d2.path / "manifest.json") == slurp(d.path / "manifest.json"));
}

TEST_CASE("table1 on the small example in double mode") {
    TempDir d;
    CHECK(run("table1 --n 10 --precision double --out " + d.path.string()) == 0);
    std::string csv = slurp(d.path / "table1.csv");
    CHECK(csv.rfind("k,newton_res,catalan4_res\n", 0) == 0);
    // first newton residual starts 0.08452738...
    CHECK(csv.find("1,0.084527") != std::string::npos);
    CHECK(csv.find(",0.010307") != std::string::npos);
    CHECK(fs::exists(d.path / "newton_trace.json"));
    CHECK(fs::exists(d.path / "catalan4_trace.json"));

    // identical run is byte-identical (no --timing)
    TempDir d2;
    CHECK(run("table1 --n 10 --precision double --out " + d2.path.string()) == 0);
    CHECK(slurp(d2.path / "table1.csv") == csv);
    CHECK(slurp(d2.path / "newton_trace.json") == slurp(d.path / "newton_trace.json"));
}

TEST_CASE("usage validation for table1") {
    CHECK(run("table1 --n 5") == 2);
    CHECK(run("table1 --precision sixteen") == 2);
    CHECK(run("table1 --methods none") == 2);
}

TEST_CASE("solve honors an explicit starting matrix") {
    TempDir d;
    fs::path m = d.path / "t.txt", y0 = d.path / "y0.txt";
    {
        std::ofstream out(m);
        out << "2 2\n0.1 0\n0 0.1\n";
    }
    {
        std::ofstream out(y0);
        out << "2 2\n1 0\n0 1\n";
    }
    CHECK(run("solve --matrix " + m.string() + " --y0 " + y0.string() + " --out " +
              d.path.string()) == 0);
    catop::CMatrix Y = catop::read_matrix_file((d.path / "solution.txt").string());
    CHECK(std::abs(Y(0, 0) - catop::cplx(1.1270166537925831)) < 1e-10);
}

TEST_CASE("non-convergence surfaces as exit 4") {
    TempDir d;
    fs::path m = d.path / "t.txt";
    {
        std::ofstream out(m);
        out << "2 2\n0.1 0\n0 0.1\n";
    }
    CHECK(run("solve --matrix " + m.string() + " --max-iters 1 --tol 1e-14 --out " +
              d.path.string()) == 4);
}

TEST_CASE("table1 extended precision through the CLI") {
    TempDir d;
    CHECK(run("table1 --n 10 --precision extended:40 --out " + d.path.string()) == 0);
    std::string csv = slurp(d.path / "table1.csv");
    CHECK(csv.find("e-25") != std::string::npos);  // catalan k=3 row is present
    CHECK(csv.find("e-30") != std::string::npos);  // newton k=5 row is present
}
