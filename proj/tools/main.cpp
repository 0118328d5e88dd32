// cryowire: design-space analyzer for cryogenic qubit XY-control wiring.
// Batch front end: scenario configs in, CSV datasets + tables out.

#include "cryowire/config.hpp"
#include "cryowire/report.hpp"
#include "cryowire/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cryowire;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitRange = 4;

struct GlobalOptions {
    std::string config_path;
    std::optional<double> duty_override;
    std::string out_dir = ".";
    std::string format = "table";
};

ScenarioConfig load_config(const GlobalOptions& opts) {
    if (opts.config_path.empty()) {
        throw validation_error("this command needs --config <path>");
    }
    ScenarioConfig config = ScenarioConfig::parse_file(opts.config_path);
    if (opts.duty_override) {
        if (!(*opts.duty_override > 0.0) || !(*opts.duty_override <= 1.0)) {
            throw validation_error("--duty must be in (0, 1]");
        }
        config.duty = *opts.duty_override;
    }
    return config;
}

void emit(const GlobalOptions& opts, const std::string& digest,
          const std::vector<std::pair<std::string, std::string>>& csv_files,
          const std::string& table_text) {
    std::filesystem::create_directories(opts.out_dir);
    std::vector<std::string> written;
    for (const auto& [name, content] : csv_files) {
        const std::string path = opts.out_dir + "/" + name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw validation_error("cannot write '" + path + "'");
        out << content;
        written.push_back(name);
    }
    {
        const std::string manifest =
            render_manifest(version_string, digest, utc_timestamp(), written);
        std::ofstream out(opts.out_dir + "/manifest.json", std::ios::binary);
        out << manifest;
    }
    if (opts.format == "csv") {
        for (const auto& [name, content] : csv_files) {
            std::cout << content;
        }
    } else {
        std::cout << table_text;
    }
}

// ---- report ----------------------------------------------------------------

int cmd_report(const GlobalOptions& opts) {
    const ScenarioConfig config = load_config(opts);
    const auto rows =
        stage_heat_report(config.fridge, config.links, config.actives, config.duty,
                          config.materials);

    CsvWriter csv(version_string, config.digest());
    csv.comment("duty", fmt_sci(config.duty));
    const std::vector<std::string> columns{"stage",     "temperature_K", "cooling_W",
                                           "passive_W", "active_W",      "total_W",
                                           "headroom_ratio"};
    csv.header(columns);
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        cells.push_back({row.stage, fmt_sci(row.temperature_k), fmt_sci(row.cooling_w),
                         fmt_sci(row.passive_w), fmt_sci(row.active_w), fmt_sci(row.total_w),
                         fmt_sci(row.headroom_ratio)});
        csv.row(cells.back());
    }
    emit(opts, config.digest(), {{"report.csv", csv.str()}}, render_table(columns, cells));
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------------

int cmd_sweep(const GlobalOptions& opts) {
    const ScenarioConfig config = load_config(opts);
    if (!config.sweep) throw validation_error("config.sweep: missing (required by `sweep`)");
    if (!config.front_end) {
        throw validation_error("config.front_end: missing (required by `sweep`)");
    }
    if (!config.power_at_qubit) {
        throw validation_error("config.signal.power_at_qubit: missing (required by `sweep`)");
    }
    const CryoAmplifier amp_template =
        config.amplifier ? *config.amplifier : CryoAmplifier::none();
    const auto points = noise_vs_photocurrent_sweep(
        *config.front_end, amp_template, config.sweep->nf_values_db, *config.power_at_qubit,
        config.sweep->photocurrent_min_a, config.sweep->photocurrent_max_a,
        config.sweep->points, config.impedance_ohm);

    CsvWriter csv(version_string, config.digest());
    csv.comment("qubit_power_W", fmt_sci(config.power_at_qubit->watts()));
    if (config.target && config.target->is_current_asd()) {
        csv.comment("target_asd_A_per_sqrtHz", fmt_sci(config.target->max_current_asd()));
    }
    const std::vector<std::string> columns{"photocurrent_A", "nf_dB",
                                           "noise_asd_A_per_sqrtHz"};
    csv.header(columns);
    std::vector<std::vector<std::string>> cells;
    for (const auto& p : points) {
        cells.push_back({fmt_sci(p.photocurrent_a), fmt_sci(p.noise_figure_db),
                         fmt_sci(p.noise_asd_a_per_sqrt_hz)});
        csv.row(cells.back());
    }
    emit(opts, config.digest(), {{"sweep.csv", csv.str()}}, render_table(columns, cells));
    return kExitOk;
}

// ---- optimize ---------------------------------------------------------------

int cmd_optimize(const GlobalOptions& opts) {
    const ScenarioConfig config = load_config(opts);
    if (!config.optimize || (!config.optimize->attenuation && !config.optimize->photocurrent)) {
        throw validation_error(
            "config.optimize: needs an 'attenuation' and/or 'photocurrent' section");
    }
    if (!config.target) {
        throw validation_error("config.target: missing (required by `optimize`)");
    }
    if (!config.power_at_qubit) {
        throw validation_error("config.signal.power_at_qubit: missing (required by `optimize`)");
    }

    std::vector<std::pair<std::string, std::string>> files;
    std::string tables;

    if (config.optimize->attenuation) {
        const AttenuationPlan plan = optimize_attenuation_split(
            config.fridge, config.optimize->attenuation->stages_allowed,
            config.optimize->attenuation->grid_step_db, *config.power_at_qubit, *config.target,
            config.duty, config.impedance_ohm);

        CsvWriter csv(version_string, config.digest());
        csv.comment("achieved_occupation", fmt_sci(plan.achieved_occupation));
        csv.comment("target_occupation", fmt_sci(plan.target_occupation));
        csv.comment("total_dB", fmt_sci(plan.total_db()));
        csv.comment("worst_dissipation_ratio", fmt_sci(plan.worst_dissipation_ratio));
        const std::vector<std::string> columns{"stage",         "attenuation_dB",
                                               "temperature_K", "dissipation_W",
                                               "cooling_W",     "dissipation_ratio"};
        csv.header(columns);
        std::vector<std::vector<std::string>> cells;
        for (const auto& e : plan.entries) {
            cells.push_back({e.stage, fmt_sci(e.attenuation_db),
                             fmt_sci(e.attenuator_temperature_k), fmt_sci(e.dissipation_w),
                             fmt_sci(e.cooling_w), fmt_sci(e.dissipation_ratio)});
            csv.row(cells.back());
        }
        files.emplace_back("optimize_attenuation.csv", csv.str());
        tables += render_table(columns, cells);
        tables += "achieved occupation " + fmt_sci(plan.achieved_occupation) + " (target " +
                  fmt_sci(plan.target_occupation) + "), total " + fmt_sci(plan.total_db()) +
                  " dB\n";
    }

    if (config.optimize->photocurrent) {
        if (!config.front_end) {
            throw validation_error(
                "config.front_end: missing (required by optimize.photocurrent)");
        }
        const CryoAmplifier amp =
            config.amplifier ? *config.amplifier : CryoAmplifier::none();
        const double current = min_photocurrent(*config.front_end, amp, *config.target,
                                                *config.power_at_qubit, config.impedance_ohm);
        const double achieved_psd = qubit_noise_closed_form(
            config.front_end->with_photocurrent(current), amp, *config.power_at_qubit,
            config.impedance_ohm);

        CsvWriter csv(version_string, config.digest());
        const std::vector<std::string> columns{"min_photocurrent_A", "noise_asd_A_per_sqrtHz",
                                               "target_asd_A_per_sqrtHz", "qubit_power_W"};
        csv.header(columns);
        const std::vector<std::string> row{
            fmt_sci(current), fmt_sci(std::sqrt(achieved_psd)),
            fmt_sci(config.target->max_current_asd()),
            fmt_sci(config.power_at_qubit->watts())};
        csv.row(row);
        files.emplace_back("optimize_photocurrent.csv", csv.str());
        tables += render_table(columns, {row});
    }

    emit(opts, config.digest(), files, tables);
    return kExitOk;
}

// ---- compare ----------------------------------------------------------------

int cmd_compare(const GlobalOptions& opts, const std::vector<std::string>& builtin_args) {
    ScenarioConfig config;
    if (!builtin_args.empty()) {
        if (!opts.config_path.empty()) {
            throw validation_error("pass either --config or builtin names, not both");
        }
        CompareSpec spec;
        for (const auto& name : builtin_args) {
            builtin_architecture(name, config.fridge, config.materials);
            spec.architectures.push_back(ArchitectureRef{name, std::nullopt});
        }
        config.compare = spec;
        if (opts.duty_override) config.duty = *opts.duty_override;
    } else {
        config = load_config(opts);
    }
    const auto archs = config.resolve_compare();
    const ComparisonTable table =
        compare_architectures(archs, config.fridge, config.duty, config.materials);

    CsvWriter stages_csv(version_string, config.digest());
    stages_csv.comment("duty", fmt_sci(config.duty));
    const std::vector<std::string> stage_cols{
        "architecture",       "stage",             "temperature_K",  "cooling_W",
        "per_line_passive_W", "per_line_active_W", "headroom_ratio", "max_lines"};
    stages_csv.header(stage_cols);
    std::vector<std::vector<std::string>> stage_cells;
    for (const auto& report : table.reports) {
        for (const auto& s : report.stages) {
            stage_cells.push_back({report.architecture, s.stage, fmt_sci(s.temperature_k),
                                   fmt_sci(s.cooling_w), fmt_sci(s.per_line_passive_w),
                                   fmt_sci(s.per_line_active_w), fmt_sci(s.headroom_ratio),
                                   fmt_sci(s.max_lines)});
            stages_csv.row(stage_cells.back());
        }
    }

    CsvWriter arch_csv(version_string, config.digest());
    arch_csv.comment("duty", fmt_sci(config.duty));
    arch_csv.comment("note",
                     "per-qubit powers are 4K-equivalent: loads at other stages are scaled by "
                     "(4K cooling power)/(stage cooling power) before summing");
    const std::vector<std::string> arch_cols{"architecture", "bottleneck_stage",
                                             "overall_max_lines", "per_qubit_active_W",
                                             "per_qubit_passive_W"};
    arch_csv.header(arch_cols);
    std::vector<std::vector<std::string>> arch_cells;
    for (const auto& report : table.reports) {
        arch_cells.push_back({report.architecture, report.bottleneck_stage,
                              fmt_sci(report.overall_max_lines),
                              fmt_sci(report.per_qubit.active_w),
                              fmt_sci(report.per_qubit.passive_w)});
        arch_csv.row(arch_cells.back());
    }

    emit(opts, config.digest(),
         {{"compare_stages.csv", stages_csv.str()},
          {"compare_architectures.csv", arch_csv.str()}},
         render_table(stage_cols, stage_cells) + "\n" + render_table(arch_cols, arch_cells));
    return kExitOk;
}

// ---- dump-builtin / validate -------------------------------------------------

int cmd_dump_builtin(const std::string& name) {
    std::cout << builtin_scenario(name).dump_string();
    return kExitOk;
}

int cmd_validate(const GlobalOptions& opts) {
    const ScenarioConfig config = load_config(opts);
    std::cout << "OK config_sha256=" << config.digest() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cryowire: thermal-budget and noise analyzer for cryogenic qubit XY wiring"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string("cryowire ") + cryowire::version_string);

    GlobalOptions opts;
    double duty_flag = 0.0;
    app.add_option("--config", opts.config_path, "Scenario config file (JSON)");
    auto* duty_opt = app.add_option("--duty", duty_flag, "Override duty cycle, fraction in (0,1]");
    app.add_option("--out", opts.out_dir, "Output directory for CSV files")
        ->default_val(std::string("."));
    app.add_option("--format", opts.format, "stdout format")
        ->check(CLI::IsMember({"csv", "table"}))
        ->default_val(std::string("table"));

    auto* report = app.add_subcommand("report", "Per-stage heat-load budget");
    auto* sweep = app.add_subcommand("sweep", "Qubit noise vs photocurrent curves");
    auto* optimize = app.add_subcommand("optimize",
                                        "Attenuation split and/or minimum photocurrent");
    auto* compare = app.add_subcommand("compare", "Capacity comparison across architectures");
    std::vector<std::string> compare_builtins;
    compare->add_option("builtins", compare_builtins,
                        "Builtin architecture names (alternative to --config)");
    auto* dump = app.add_subcommand("dump-builtin", "Print a builtin scenario config");
    std::string dump_name;
    dump->add_option("name", dump_name, "conventional|cryo_cmos|deep_photonic|proposed")
        ->required();
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    if (duty_opt->count() > 0) opts.duty_override = duty_flag;

    try {
        if (report->parsed()) return cmd_report(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (optimize->parsed()) return cmd_optimize(opts);
        if (compare->parsed()) return cmd_compare(opts, compare_builtins);
        if (dump->parsed()) return cmd_dump_builtin(dump_name);
        if (validate->parsed()) return cmd_validate(opts);
    } catch (const cryowire::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const cryowire::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const cryowire::range_error& e) {
        std::cerr << "numeric range error: " << e.what() << "\n";
        return kExitRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitValidation;
}
