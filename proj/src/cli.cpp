#include "ddm/cli.hpp"

#include "ddm/dataset_io.hpp"
#include "ddm/error.hpp"
#include "ddm/experiments.hpp"
#include "ddm/self_check.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ddm {

namespace {

namespace fs = std::filesystem;

KeyValues parse_overrides(const std::vector<std::string>& sets) {
    KeyValues out;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

void emit(const Dataset& ds, const fs::path& dir, const std::string& stem, std::ostream& out) {
    fs::create_directories(dir);
    const fs::path csv = dir / (stem + ".csv");
    const fs::path plot = dir / (stem + ".plot");
    write_csv(ds, csv);
    std::ofstream p(plot, std::ios::binary | std::ios::trunc);
    if (!p) throw std::runtime_error("cannot open " + plot.string() + " for writing");
    p << plot_script(ds, stem + ".csv", stem);
    out << "wrote " << csv.string() << " and " << plot.string() << "\n";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin squeezing and quantum Fisher information of a dephased collective spin under "
                 "dynamical decoupling"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::vector<std::string> sets;

    auto* figure = app.add_subcommand("figure", "Run a preset figure reproduction");
    std::string figure_id;
    figure->add_option("id", figure_id, "Figure id: 1, 2a, 2b, 3a, 3b, 4, 5a, 5b")->required();
    figure->add_option("--out", out_dir, "Output directory");
    figure->add_option("--set", sets, "Override a setting (key=value, repeatable)");

    auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "Flat key = value config file")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--set", sets, "Override a setting (key=value, repeatable)");

    auto* check = app.add_subcommand("check", "Run closed-form and oracle consistency checks");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*figure) {
            const Dataset ds = run_figure(figure_id, parse_overrides(sets));
            emit(ds, out_dir, figure_id, out);
        } else if (*sweep) {
            SweepConfig config;
            for (const auto& [k, v] : parse_key_values(read_file(config_path))) apply_setting(config, k, v);
            for (const auto& [k, v] : parse_overrides(sets)) apply_setting(config, k, v);
            config.validate();
            emit(run_sweep(config), out_dir, fs::path(config_path).stem().string(), out);
        } else if (*check) {
            bool all = true;
            for (const auto& r : run_self_checks()) {
                out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << "\n";
                all = all && r.passed;
            }
            return all ? kExitOk : kExitNumeric;
        }
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace ddm
