#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests of the fracline binary: exit codes, CSV formats,
// determinism.  FRACLINE_CLI_PATH is injected by the build.

namespace {

#define STRINGIFY_(x) #x
#define STRINGIFY(x) STRINGIFY_(x)
const std::string cli = STRINGIFY(FRACLINE_CLI_PATH);

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string capture(const std::string& args) {
    const std::string out = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                            "/fracline_cli_stdout.txt";
    const std::string cmd = cli + " " + args + " >" + out + " 2>/dev/null";
    (void)!std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(out.c_str());
    return ss.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/fracline_cli_") + name;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
    CHECK(run("") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("a0 --alpha 0.5 --bogus-flag 1") == 2);
    CHECK(run("a0") == 2);  // missing required --alpha
    CHECK(run("a0 --alpha 0") == 2);
    CHECK(run("a0 --alpha 1.5") == 2);
    CHECK(run("a0 --alpha 0.5 --tol 1e-15") == 2);
    CHECK(run("solve --alpha 0.5 --nx 8 --out /tmp/fracline_cli_junk.csv") == 2);
    CHECK(run("solve --alpha 0.5 --bc robin --out /tmp/fracline_cli_junk.csv") == 2);
    CHECK(run("solve --alpha 0.5 --ic no-such-profile --out /tmp/fracline_cli_junk.csv") == 2);
}

TEST_CASE("a0 prints the normalization constant") {
    const std::string out = capture("a0 --alpha 0.5");
    CHECK(std::abs(std::stod(out) - 0.186641087016) < 1e-7);
    const std::string classical = capture("a0 --alpha 1");
    CHECK(std::abs(std::stod(classical) - 0.5 / std::sqrt(std::acos(-1.0))) < 1e-7);
}

TEST_CASE("ml-eval matches the exponential special case") {
    // beta=1, m=2, l=1 gives exp(z/2)
    const std::string out = capture("ml-eval --beta 1 --m 2 --l 1 --z 1");
    CHECK(std::abs(std::stod(out) - std::exp(0.5)) < 1e-12);
}

TEST_CASE("kernel-table writes the documented CSV and is deterministic") {
    const std::string p1 = tmp_path("kt1.csv"), p2 = tmp_path("kt2.csv");
    CHECK(run("kernel-table --alpha 0.5 --x-max 4 --nx 32 --t 0.5,1 --out " + p1) == 0);
    CHECK(run("kernel-table --alpha 0.5 --x-max 4 --nx 32 --t 0.5,1 --out " + p2) == 0);
    const std::string body = slurp(p1);
    CHECK(body.substr(0, 6) == "x,t,E\n");
    CHECK(body == slurp(p2));
    // 2 times x 33 nodes + header
    std::size_t lines = 0;
    for (char c : body) lines += c == '\n';
    CHECK(lines == 67);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("solve produces x,t,w output for both boundary conditions") {
    const std::string p = tmp_path("solve.csv");
    for (const std::string bc : {"dirichlet", "neumann"}) {
        CHECK(run("solve --alpha 0.6 --bc " + bc +
                  " --ic gauss-bump --x-max 8 --nx 64 --t 0.25,1 --out " + p) == 0);
        const std::string body = slurp(p);
        CHECK(body.substr(0, 6) == "x,t,w\n");
        // first node: w1 vanishes at x = 0, w2 does not
        const std::string first = body.substr(6, body.find('\n', 6) - 6);
        const double w0 = std::stod(first.substr(first.rfind(',') + 1));
        if (bc == "dirichlet")
            CHECK(w0 == 0.0);
        else
            CHECK(w0 > 0.0);
    }
    std::remove(p.c_str());
}

TEST_CASE("initial conditions load from CSV with strict format checks") {
    const std::string ic = tmp_path("ic.csv"), p = tmp_path("icsolve.csv");
    {
        std::ofstream f(ic);
        f << "x,g\n";
        for (int i = 0; i <= 40; ++i)
            f << 0.1 * i << "," << (i >= 10 && i <= 20 ? 1.0 : 0.0) << "\n";
    }
    CHECK(run("solve --alpha 0.5 --ic " + ic + " --x-max 8 --nx 64 --t 0.5 --out " + p) == 0);
    CHECK(slurp(p).substr(0, 6) == "x,t,w\n");

    // Dirichlet requires g(0) = 0
    {
        std::ofstream f(ic);
        f << "x,g\n0,1\n0.5,0.5\n1,0\n1.5,0\n";
    }
    CHECK(run("solve --alpha 0.5 --ic " + ic + " --x-max 8 --nx 64 --t 0.5 --out " + p) == 2);
    CHECK(run("solve --alpha 0.5 --bc neumann --ic " + ic +
              " --x-max 8 --nx 64 --t 0.5 --out " + p) == 0);

    // malformed files are usage errors
    {
        std::ofstream f(ic);
        f << "x,value\n0,0\n1,1\n";
    }
    CHECK(run("solve --alpha 0.5 --ic " + ic + " --x-max 8 --nx 64 --t 0.5 --out " + p) == 2);
    {
        std::ofstream f(ic);
        f << "x,g\n0,0\n1,1\n1.5,0\n";  // non-uniform spacing
    }
    CHECK(run("solve --alpha 0.5 --ic " + ic + " --x-max 8 --nx 64 --t 0.5 --out " + p) == 2);
    CHECK(run("solve --alpha 0.5 --ic /tmp/fracline_cli_missing.csv --out " + p) == 2);
    std::remove(ic.c_str());
    std::remove(p.c_str());
}

TEST_CASE("fd-solve records the requested steps") {
    const std::string p = tmp_path("fd.csv");
    CHECK(run("fd-solve --alpha 0.5 --ic tent --x-max 8 --nx 64 --dt 0.002 "
              "--n-steps 50 --record 0,25,50 --out " + p) == 0);
    const std::string body = slurp(p);
    CHECK(body.substr(0, 6) == "x,t,w\n");
    std::size_t lines = 0;
    for (char c : body) lines += c == '\n';
    CHECK(lines == 1 + 3 * 65);
    // unstable dt rejected up front
    CHECK(run("fd-solve --alpha 0.5 --ic tent --x-max 8 --nx 64 --dt 0.1 "
              "--n-steps 10 --out " + p) == 2);
    std::remove(p.c_str());
}

TEST_CASE("compare emits a key=value report") {
    const std::string p = tmp_path("cmp.txt");
    CHECK(run("compare --alpha 1 --ic tent --x-max 8 --nx 64 --t 0.5 "
              "--beta 0.2 --levels 2 --out " + p) == 0);
    const std::string body = slurp(p);
    CHECK(body.find("alpha=1\n") != std::string::npos);
    CHECK(body.find("l1_errors=") != std::string::npos);
    CHECK(body.find("order=") != std::string::npos);
    std::remove(p.c_str());
}

TEST_CASE("decay and alpha-sweep reports") {
    const std::string p = tmp_path("rep.txt");
    CHECK(run("decay --alpha 0.7 --ic tent --t 1,2,4,8 --out " + p) == 0);
    std::string body = slurp(p);
    CHECK(body.find("slope=-") != std::string::npos);
    CHECK(body.find("bound_ok=1") != std::string::npos);

    CHECK(run("alpha-sweep --alphas 0.9,1 --ic tent --x-max 8 --nx 64 --t 0.5 "
              "--out " + p) == 0);
    body = slurp(p);
    CHECK(body.find("l1_distances=") != std::string::npos);
    CHECK(body.find("monotone=1") != std::string::npos);
    std::remove(p.c_str());
}

TEST_CASE("validate runs the acceptance suite and exits cleanly") {
    const std::string out = tmp_path("validate.txt");
    const int status = std::system((cli + " validate >" + out + " 2>&1").c_str());
    CHECK(WEXITSTATUS(status) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("PASS") != std::string::npos);
    CHECK(body.find("FAIL") == std::string::npos);
    std::remove(out.c_str());
}
