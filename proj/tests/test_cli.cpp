#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kBin = DIRAC_REDUCE_BIN;
const std::string kConfigs = DIRAC_REDUCE_CONFIG_DIR;

std::string q(const std::string& s) { return "'" + s + "'"; }

int run_cli(const std::string& args, std::string* captured = nullptr) {
    const std::string cmd = q(kBin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    if (captured) *captured = out;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("dirac-reduce-cli-" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("timing:", 0) != 0) out << line << '\n';
    return out.str();
}

double grab_number(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key, 0) == 0) return std::stod(line.substr(key.size()));
    FAIL("missing line: " << key);
    return 0.0;
}

// Replaces one whitespace-separated field on one data line (0-based, header
// excluded) of a potential table.
std::string corrupt_field(const std::string& table, int data_line, int field,
                          const std::string& repl) {
    std::istringstream in(table);
    std::ostringstream out;
    std::string line;
    int row = -1;  // header is row -1
    while (std::getline(in, line)) {
        if (row == data_line) {
            std::istringstream fields(line);
            std::string tok;
            std::vector<std::string> toks;
            while (fields >> tok) toks.push_back(tok);
            REQUIRE(field < static_cast<int>(toks.size()));
            toks[field] = repl;
            std::string rebuilt;
            for (size_t i = 0; i < toks.size(); ++i)
                rebuilt += (i ? " " : "") + toks[i];
            line = rebuilt;
        }
        out << line << '\n';
        ++row;
    }
    return out.str();
}

std::string catalog(const std::string& name) {
    return q(kConfigs + "/" + name + ".json");
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
    std::string out;
    CHECK(run_cli("--version", &out) == 0);
    CHECK(out.find("dirac-reduce 0.1.0") != std::string::npos);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("frobnicate --config x.json") == 3);
}

TEST_CASE("verify passes on every catalog configuration") {
    for (const std::string name :
         {"poschl_teller", "crossed_combs", "soliton", "scenario2"}) {
        const fs::path out_dir = scratch() / ("verify_" + name);
        std::string out;
        const int rc = run_cli("verify --config " + catalog(name) + " --out " +
                               q(out_dir.string()), &out);
        INFO("config ", name, "\n", out);
        CHECK(rc == 0);
        CHECK(out.find("result: PASS") != std::string::npos);
    }
}

TEST_CASE("reruns are byte-identical apart from the timing line") {
    const fs::path out_dir = scratch() / "determinism";
    const std::string args =
        "verify --config " + catalog("crossed_combs") + " --out " + q(out_dir.string());
    std::string first, second;
    REQUIRE(run_cli(args, &first) == 0);
    REQUIRE(run_cli(args, &second) == 0);
    CHECK(strip_timing(first) == strip_timing(second));
    CHECK(first.find("timing:") != std::string::npos);
}

TEST_CASE("assemble then detect recovers the configured rotation") {
    const fs::path out_dir = scratch() / "roundtrip";
    REQUIRE(run_cli("assemble --config " + catalog("custom") + " --out " +
                    q(out_dir.string())) == 0);
    const fs::path table = out_dir / "potential.dat";
    REQUIRE(fs::exists(table));

    const fs::path cfg = scratch() / "detect_custom.json";
    spit(cfg, "{\"input\": \"" + table.string() + "\"}\n");
    std::string out;
    const int rc = run_cli("detect --config " + q(cfg.string()), &out);
    INFO(out);
    REQUIRE(rc == 0);
    CHECK(std::abs(grab_number(out, "tau:") - 0.6) < 1e-8);
    CHECK(std::abs(grab_number(out, "phi:") - 1.1) < 1e-8);
    CHECK(out.find("epsilon: -1") != std::string::npos);

    SUBCASE("a Hermitian corruption is reported as non-reducible") {
        const fs::path bad = scratch() / "corrupt.dat";
        // Shift Re11 on one row; the matrix stays Hermitian but the
        // diagonal pattern F44 = -F11 no longer holds.
        spit(bad, corrupt_field(slurp(table), 5, 4, "5.0"));
        const fs::path bad_cfg = scratch() / "detect_corrupt.json";
        spit(bad_cfg, "{\"input\": \"" + bad.string() + "\"}\n");
        std::string bout;
        CHECK(run_cli("detect --config " + q(bad_cfg.string()), &bout) == 1);
        CHECK(bout.find("failed check: reducibility detection") != std::string::npos);
    }

    SUBCASE("a non-Hermitian table is rejected as malformed input") {
        const fs::path bad = scratch() / "nonherm.dat";
        spit(bad, corrupt_field(slurp(table), 4, 6, "9.0"));  // Re12 without Re21
        const fs::path bad_cfg = scratch() / "detect_nonherm.json";
        spit(bad_cfg, "{\"input\": \"" + bad.string() + "\"}\n");
        std::string bout;
        CHECK(run_cli("detect --config " + q(bad_cfg.string()), &bout) == 3);
        CHECK(bout.find("not Hermitian at point") != std::string::npos);
    }
}

TEST_CASE("configuration errors map to the documented exit codes") {
    SUBCASE("unknown key") {
        const fs::path cfg = scratch() / "unknown_key.json";
        spit(cfg, "{\"model\": \"custom\", \"params\": {\"a1\": 1.0, \"b1\": 0.0, "
                  "\"d1\": -1.0, \"a2\": 0.5, \"b2\": 0.0, \"d2\": 0.5}, "
                  "\"typo_field\": 3}\n");
        std::string out;
        CHECK(run_cli("assemble --config " + q(cfg.string()), &out) == 3);
        CHECK(out.find("typo_field") != std::string::npos);
    }
    SUBCASE("contradicting a model-fixed rotation") {
        const fs::path cfg = scratch() / "soliton_eps.json";
        spit(cfg, "{\"model\": \"soliton\", \"params\": {\"m\": 0.5, \"omega\": 0.5, "
                  "\"Delta\": 1.0}, \"reduction\": {\"epsilon\": -1}}\n");
        CHECK(run_cli("assemble --config " + q(cfg.string())) == 2);
    }
    SUBCASE("missing config file") {
        CHECK(run_cli("verify --config " + q((scratch() / "nope.json").string())) == 3);
    }
    SUBCASE("spectrum needs a gapped band model") {
        CHECK(run_cli("spectrum --config " + catalog("soliton")) == 2);
    }
    SUBCASE("perturb target flags are mutually exclusive") {
        CHECK(run_cli("perturb --config " + catalog("custom") +
                      " --spin-orbit --bilayer") == 3);
    }
}

TEST_CASE("spectrum on a reduced box reproduces the bound levels") {
    const fs::path cfg = scratch() / "pt_small.json";
    spit(cfg,
         "{\"model\": \"poschl_teller\", \"params\": {\"delta\": 0.8660254037844386, "
         "\"n_values\": [1], \"k_y_values\": [0.0]}, "
         "\"grid\": {\"x_min\": -40.0, \"x_max\": 40.0, \"n_points\": 1200}}\n");
    const fs::path out_dir = scratch() / "spectrum_small";
    std::string out;
    const int rc =
        run_cli("spectrum --config " + q(cfg.string()) + " --out " + q(out_dir.string()),
                &out);
    INFO(out);
    REQUIRE(rc == 0);
    const std::string csv = slurp(out_dir / "spectrum.csv");
    CHECK(csv.rfind("n,k_y,E_analytic,E_numeric,abs_err", 0) == 0);
    // One data row; its error column is well inside the acceptance budget.
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    REQUIRE(std::getline(lines, row));
    const double err = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(err < 1e-3);
}

TEST_CASE("perturb emits the requested coupling table") {
    const fs::path out_dir = scratch() / "perturb_so";
    std::string out;
    REQUIRE(run_cli("perturb --config " + catalog("custom") + " --spin-orbit --out " +
                    q(out_dir.string()), &out) == 0);
    const std::string table = slurp(out_dir / "perturbation.dat");
    int lines = 0;
    for (char c : table) lines += (c == '\n');
    CHECK(lines == 5);  // header plus four rows
    CHECK(table.rfind("Re1 Im1", 0) == 0);
}
