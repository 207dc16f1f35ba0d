#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cli.hpp"

using minlen::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Data rows of a CSV document, split on commas; metadata and header dropped.
std::vector<std::vector<std::string>> data_rows(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string header_of(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') return line;
    }
    return {};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("minlen_test_" + std::to_string(::getpid()) + "_" + name);
}

class ScopedEnv {
public:
    ScopedEnv(const char* key, const char* value) : key_(key) { ::setenv(key, value, 1); }
    ~ScopedEnv() { ::unsetenv(key_); }
    ScopedEnv(const ScopedEnv&) = delete;
    ScopedEnv& operator=(const ScopedEnv&) = delete;

private:
    const char* key_;
};

}  // namespace

TEST_CASE("format_double round-trips") {
    using minlen::cli::format_double;
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(NAN) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    for (double x : {1.0 / 3.0, 2.718281828459045, 1e-300, 6.02214076e23}) {
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("usage errors exit 64 and write nothing") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"spectrum", "--mass", "abc"},
             {"spectrum", "--branch", "quantum"},
             {"spectrum", "--nmax", "1.5"},
             {"spectrum", "--unknown-flag"},
             {},
             {"bogus"},
             {"spectrum", "--mass", "-1"},
             {"spectrum", "--nmax", "-2"},
             {"figure1", "--steps", "1"},
             {"figure1", "--xi-min", "5", "--xi-max", "1"},
             {"figure1", "--n-list", "1,x"},
             {"state", "--samples", "1"},
             {"verify", "--raising-form", "sideways"},
             {"fm", "--k1", "1"},
         }) {
        const auto r = invoke(args);
        CHECK_MESSAGE(r.code == 64, "args: ", doctest::toString(args.size()));
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("help exits 0") {
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("spectrum") != std::string::npos);
}

TEST_CASE("spectrum: undeformed nonrelativistic ladder") {
    const auto r = invoke({"spectrum", "--eta", "0", "--branch", "nr", "--nmax", "4"});
    REQUIRE(r.code == 0);
    CHECK(header_of(r.out) == "n,energy,residual,iterations,method");
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 5);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        CHECK(rows[n][0] == std::to_string(n));
        CHECK(std::stod(rows[n][1]) == n + 0.5);
        CHECK(rows[n][4] == "closed_form");
    }
}

TEST_CASE("spectrum: relativistic residuals") {
    const auto r = invoke({"spectrum", "--eta", "0.1"});
    REQUIRE(r.code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
        CHECK(std::abs(std::stod(row[2])) <= 1e-10);
        CHECK(std::stod(row[1]) > 1.0);
    }
    CHECK(r.out.find("# eta=0.10000000000000001") != std::string::npos);
}

TEST_CASE("spectrum output is byte-identical across runs") {
    const std::vector<std::string> args{"spectrum", "--eta", "0.37", "--gamma", "0.1", "--nmax", "6"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto fa = invoke({"figure1", "--steps", "17", "--format", "json"});
    const auto fb = invoke({"figure1", "--steps", "17", "--format", "json"});
    CHECK(fa.out == fb.out);
}

TEST_CASE("json output") {
    const auto r = invoke({"spectrum", "--nmax", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.contains("meta"));
    REQUIRE(doc.contains("rows"));
    CHECK(doc["meta"].is_array());
    REQUIRE(doc["rows"].size() == 3);
    CHECK(doc["rows"][1]["n"] == 1);
    CHECK(doc["rows"][1]["method"] == "fixed_point");
    // same energies as the CSV rendering
    const auto csv = data_rows(invoke({"spectrum", "--nmax", "2"}).out);
    for (int n = 0; n < 3; ++n) {
        CHECK(doc["rows"][n]["energy"].get<double>() == std::stod(csv[static_cast<std::size_t>(n)][1]));
    }
}

TEST_CASE("figure1") {
    const auto r = invoke({"figure1", "--xi-max", "50", "--steps", "2"});
    REQUIRE(r.code == 0);
    CHECK(header_of(r.out) == "xi,n,E_n,E_0,ratio");
    CHECK(r.out.find("# units=") != std::string::npos);
    CHECK(r.out.find("# branch=nr") != std::string::npos);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][4] == "3");
    CHECK(rows[1][4] == "5");
    CHECK(rows[2][4] == "7");
    CHECK(rows[5][0] == "50");
    CHECK(std::abs(std::stod(rows[5][4]) - 16.0) <= 0.16);

    const auto custom = invoke({"figure1", "--steps", "2", "--n-list", "4, 7"});
    REQUIRE(custom.code == 0);
    CHECK(data_rows(custom.out).size() == 4);
}

TEST_CASE("state samples: parity, origin value, decay") {
    const auto odd = invoke({"state", "--n", "1", "--samples", "41"});
    REQUIRE(odd.code == 0);
    CHECK(header_of(odd.out) == "p,rho,phi");
    const auto rows = data_rows(odd.out);
    REQUIRE(rows.size() == 41);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& mirror = rows[rows.size() - 1 - i];
        CHECK(std::stod(rows[i][1]) == -std::stod(mirror[1]));
        CHECK(std::stod(rows[i][2]) == -std::stod(mirror[2]));
    }
    CHECK(std::stod(rows.front()[1]) == -0.99);

    const auto even = invoke({"state", "--n", "0", "--samples", "41", "--branch", "nr", "--eta", "1"});
    REQUIRE(even.code == 0);
    const auto erows = data_rows(even.out);
    const double centre = std::stod(erows[20][2]);
    CHECK(std::stod(erows[20][1]) == 0.0);
    CHECK(centre == doctest::Approx(0.88001992860301559857).epsilon(1e-13));  // mpmath, direct p-space norm
    CHECK(std::abs(std::stod(erows.front()[2])) < centre);
    CHECK(std::abs(std::stod(erows.back()[2])) < centre);
}

TEST_CASE("state on the undeformed branch is a numerical failure") {
    const auto r = invoke({"state", "--eta", "0"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
}

TEST_CASE("verify exit codes") {
    const auto ok = invoke({"verify"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find(",fail,") == std::string::npos);

    const auto literal = invoke({"verify", "--raising-form", "literal"});
    CHECK(literal.code == 1);
    CHECK(literal.err.find("ladder_identity") != std::string::npos);

    const auto flat = invoke({"verify", "--eta", "0"});
    CHECK(flat.code == 0);
    CHECK(flat.out.find(",skipped,") != std::string::npos);
}

TEST_CASE("fm command") {
    const auto r = invoke({"fm", "--k1", "1", "--k2", "2", "--A", "-2", "--B", "2", "--C", "0"});
    REQUIRE(r.code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][1]) == 0.0);  // k4
    CHECK(std::stod(rows[0][2]) == 0.0);  // k5

    const auto withs = invoke({"fm", "--k1", "0", "--k2", "0", "--A", "0", "--B", "0", "--C", "0", "--s", "0.5"});
    REQUIRE(withs.code == 0);
    CHECK(header_of(withs.out).find(",psi") != std::string::npos);

    const auto bad = invoke({"fm", "--k1", "0", "--k2", "0", "--A", "0", "--B", "0", "--C", "1"});
    CHECK(bad.code == 2);
}

TEST_CASE("config file: file fills defaults, flags win") {
    const auto path = temp_file("cfg.txt");
    {
        std::ofstream f(path);
        f << "# comment\n eta = 0\nbranch=nr\nnmax=2\nomega=2\n";
    }
    const auto from_file = invoke({"spectrum", "--config", path.string()});
    REQUIRE(from_file.code == 0);
    auto rows = data_rows(from_file.out);
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(rows[1][1]) == 3.0);  // hbar omega (n + 1/2) with omega = 2

    const auto overridden = invoke({"spectrum", "--config", path.string(), "--omega", "4"});
    REQUIRE(overridden.code == 0);
    rows = data_rows(overridden.out);
    CHECK(std::stod(rows[1][1]) == 6.0);

    {
        std::ofstream f(path);
        f << "flavour=strange\n";
    }
    CHECK(invoke({"spectrum", "--config", path.string()}).code == 64);
    CHECK(invoke({"spectrum", "--config", (path.string() + ".missing")}).code == 64);
    std::filesystem::remove(path);
}

TEST_CASE("--out writes the file instead of stdout") {
    const auto path = temp_file("out.csv");
    const auto r = invoke({"spectrum", "--nmax", "1", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == invoke({"spectrum", "--nmax", "1"}).out);
    std::filesystem::remove(path);

    CHECK(invoke({"spectrum", "--out", "/nonexistent-dir/x.csv"}).code == 2);
}

TEST_CASE("quadrature order from the environment") {
    const auto base = invoke({"state", "--n", "2", "--samples", "5"});
    {
        ScopedEnv env("GUP_QUAD_ORDER", "60");
        const auto r = invoke({"state", "--n", "2", "--samples", "5"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("# quad_order=60") != std::string::npos);
        const auto a = data_rows(base.out), b = data_rows(r.out);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::stod(b[i][2]) == doctest::Approx(std::stod(a[i][2])).epsilon(1e-12));
        }
    }
    {
        ScopedEnv env("GUP_QUAD_ORDER", "zero");
        CHECK(invoke({"state"}).code == 64);
    }
}

TEST_CASE("installed executable honours the exit-code contract") {
    const std::string exe = MINLEN_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status(exe + " spectrum --nmax 1") == 0);
    CHECK(status(exe + " spectrum --mass nope") == 64);
    CHECK(status(exe + " verify --raising-form literal") == 1);
}
