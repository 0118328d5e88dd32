#include "helpers.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CRYOWIRE_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        result.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("cryowire_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
    const fs::path path = dir / name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("cli: dump-builtin then validate round-trips") {
    const fs::path dir = temp_dir("dump");
    const RunResult dump = run_cli("dump-builtin proposed");
    CHECK(dump.exit_code == 0);
    const fs::path config = write_config(dir, "proposed.json", dump.output);
    const RunResult validate = run_cli("--config " + config.string() + " validate");
    CHECK(validate.exit_code == 0);
    CHECK(validate.output.find("OK config_sha256=") == 0);

    const RunResult unknown = run_cli("dump-builtin perpetual_motion");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("cli: report on a builtin dump is byte-identical to the builtin reference") {
    const fs::path dir = temp_dir("report");
    const RunResult dump = run_cli("dump-builtin proposed");
    REQUIRE(dump.exit_code == 0);
    const fs::path explicit_cfg = write_config(dir, "explicit.json", dump.output);
    const fs::path ref_cfg = write_config(dir, "ref.json", R"({"architecture": "proposed"})");

    const RunResult r1 = run_cli("--config " + explicit_cfg.string() + " --out " +
                                 (dir / "out1").string() + " report");
    const RunResult r2 = run_cli("--config " + ref_cfg.string() + " --out " +
                                 (dir / "out2").string() + " report");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(dir / "out1" / "report.csv") == slurp(dir / "out2" / "report.csv"));

    const std::string csv = slurp(dir / "out1" / "report.csv");
    CHECK(csv.find("stage,temperature_K,cooling_W,passive_W,active_W,total_W,headroom_ratio") !=
          std::string::npos);
    CHECK(csv.find("# config_sha256: ") != std::string::npos);
    CHECK(csv.find("nan") == std::string::npos);
}

TEST_CASE("cli: validation failures exit 2 with the offending key path") {
    const fs::path dir = temp_dir("validate");
    const fs::path bad = write_config(dir, "bad.json",
                                      R"({"front_end": {"v_pie": "2 V",
                                          "mean_photocurrent": "1 uA"}})");
    const RunResult r = run_cli("--config " + bad.string() + " validate");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("front_end.v_pie") != std::string::npos);

    const RunResult missing = run_cli("--config " + (dir / "nope.json").string() + " validate");
    CHECK(missing.exit_code == 2);

    const RunResult no_config = run_cli("validate");
    CHECK(no_config.exit_code == 2);
}

TEST_CASE("cli: sweep emits points x nf_values rows") {
    const fs::path dir = temp_dir("sweep");
    const fs::path cfg = write_config(dir, "sweep.json", R"({
        "front_end": {"mean_photocurrent": "1.4 uA"},
        "signal": {"power_at_qubit": "-70 dBm"},
        "target": {"max_current_asd": "0.7 pA/sqrtHz"},
        "sweep": {"photocurrent_min": "0.1 uA", "photocurrent_max": "10 uA",
                  "points": 25, "nf_values": ["0 dB", "1 dB", "3 dB"]}
    })");
    const RunResult r =
        run_cli("--config " + cfg.string() + " --out " + (dir / "out").string() + " sweep");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "out" / "sweep.csv");
    CHECK(csv.find("photocurrent_A,nf_dB,noise_asd_A_per_sqrtHz") != std::string::npos);
    CHECK(csv.find("# target_asd_A_per_sqrtHz: 7.00000e-13") != std::string::npos);
    int data_rows = 0;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#' && line[0] != 'p') ++data_rows;
    }
    CHECK(data_rows == 75);
}

TEST_CASE("cli: optimize reports the plan and exits 3 when infeasible") {
    const fs::path dir = temp_dir("optimize");
    const fs::path cfg = write_config(dir, "opt.json", R"({
        "signal": {"power_at_qubit": "-70 dBm"},
        "target": {"max_occupation": 1e-3},
        "optimize": {"attenuation": {"stages_allowed": ["4K", "CP", "MXC"],
                                     "grid_step": "1 dB"}}
    })");
    const RunResult r =
        run_cli("--config " + cfg.string() + " --out " + (dir / "out").string() + " optimize");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "out" / "optimize_attenuation.csv");
    CHECK(csv.find("stage,attenuation_dB") != std::string::npos);
    CHECK(csv.find("# achieved_occupation") != std::string::npos);

    const fs::path infeasible = write_config(dir, "infeasible.json", R"({
        "signal": {"power_at_qubit": "-70 dBm"},
        "target": {"max_occupation": 1e-10},
        "optimize": {"attenuation": {"stages_allowed": ["4K", "CP", "MXC"],
                                     "grid_step": "1 dB"}}
    })");
    const RunResult bad = run_cli("--config " + infeasible.string() + " --out " +
                                  (dir / "out2").string() + " optimize");
    CHECK(bad.exit_code == 3);
    CHECK(bad.output.find("infeasible") != std::string::npos);
    CHECK(bad.output.find("limiting stage") != std::string::npos);
}

TEST_CASE("cli: optimize photocurrent") {
    const fs::path dir = temp_dir("optimize_i");
    const fs::path cfg = write_config(dir, "opt.json", R"({
        "front_end": {"mean_photocurrent": "0 A"},
        "signal": {"power_at_qubit": "-70 dBm"},
        "target": {"max_current_asd": "0.7 pA/sqrtHz"},
        "optimize": {"photocurrent": {}}
    })");
    const RunResult r =
        run_cli("--config " + cfg.string() + " --out " + (dir / "out").string() + " optimize");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "out" / "optimize_photocurrent.csv");
    CHECK(csv.find("min_photocurrent_A") != std::string::npos);
    CHECK(csv.find("1.313") != std::string::npos);
}

TEST_CASE("cli: numeric range errors exit 4") {
    const fs::path dir = temp_dir("range");
    // A conduction link whose cold end (MXC, 6 mK) is below every bundled
    // table's 1 K minimum.
    const fs::path cfg = write_config(dir, "range.json", R"({
        "links": [{"kind": "fiber", "hot_stage": "RT", "cold_stage": "MXC",
                   "length": "1 m",
                   "layers": [{"material": "silica", "cross_section": "1e-8 m^2"}]}]
    })");
    const RunResult r =
        run_cli("--config " + cfg.string() + " --out " + (dir / "out").string() + " report");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("numeric range error") != std::string::npos);
}

TEST_CASE("cli: compare over builtins twice is byte-identical") {
    const fs::path dir = temp_dir("compare");
    const std::string builtins = "conventional cryo_cmos deep_photonic proposed";
    const RunResult r1 = run_cli("compare " + builtins + " --out " + (dir / "a").string() +
                                 " --duty 0.33");
    const RunResult r2 = run_cli("compare " + builtins + " --out " + (dir / "b").string() +
                                 " --duty 0.33");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(dir / "a" / "compare_stages.csv") == slurp(dir / "b" / "compare_stages.csv"));
    CHECK(slurp(dir / "a" / "compare_architectures.csv") ==
          slurp(dir / "b" / "compare_architectures.csv"));

    const std::string arch_csv = slurp(dir / "a" / "compare_architectures.csv");
    CHECK(arch_csv.find("proposed,CP,3.33300e+03") != std::string::npos);
    CHECK(arch_csv.find("conventional,4K,1.50000e+03") != std::string::npos);

    // Unbounded headroom is emitted as the literal `inf` token.
    const std::string stages_csv = slurp(dir / "a" / "compare_stages.csv");
    CHECK(stages_csv.find(",inf,inf") != std::string::npos);
    CHECK(stages_csv.find("nan") == std::string::npos);

    // The manifest names the emitted files.
    const std::string manifest = slurp(dir / "a" / "manifest.json");
    CHECK(manifest.find("compare_stages.csv") != std::string::npos);
    CHECK(manifest.find("config_sha256") != std::string::npos);
}

TEST_CASE("cli: shipped example configs validate") {
    const fs::path configs = fs::path(CRYOWIRE_SOURCE_DIR) / "configs";
    REQUIRE(fs::exists(configs));
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(configs)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        const RunResult r = run_cli("--config " + entry.path().string() + " validate");
        CHECK_MESSAGE(r.exit_code == 0, entry.path().string(), ": ", r.output);
    }
    CHECK(seen >= 4);
}

TEST_CASE("cli: csv format streams the files to stdout") {
    const fs::path dir = temp_dir("format");
    const fs::path cfg = write_config(dir, "ref.json", R"({"architecture": "conventional"})");
    const RunResult r = run_cli("--config " + cfg.string() + " --out " + (dir / "out").string() +
                                " --format csv report");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("stage,temperature_K") != std::string::npos);
    CHECK(r.output == slurp(dir / "out" / "report.csv"));
}
