// Case runner for the 2D potential-flow FEM/XFEM solvers.
//
//   xfem2d run   <config.json> [--out DIR]
//   xfem2d sweep <config.json> --axis <delta_h|r_enri|n_terms|L_x|omega>
//                [--workers N] [--out DIR]
//
// Results are written as CSV and JSON-lines files named after the config's
// "output" stem.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "xfem2d/cases.hpp"

namespace {

namespace fs = std::filesystem;
using namespace xfem2d;

void write_results(const std::string& out_dir, const std::string& stem,
                   const std::vector<ResultRow>& rows, const SweepResult* sweep) {
    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / (stem + ".csv");
    const fs::path json_path = fs::path(out_dir) / (stem + ".jsonl");
    std::ofstream csv(csv_path);
    csv << result_csv_header() << '\n';
    for (const auto& r : rows) csv << to_csv(r) << '\n';
    std::ofstream js(json_path);
    for (const auto& r : rows) js << to_json(r) << '\n';
    if (sweep) {
        if (sweep->l2_slope)
            js << "{\"fitted_slope_l2\":" << *sweep->l2_slope << "}\n";
        if (sweep->added_mass_slope)
            js << "{\"fitted_slope_added_mass\":" << *sweep->added_mass_slope << "}\n";
    }
    std::cout << "wrote " << csv_path.string() << " (" << rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D potential-flow FEM/XFEM case runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis_name;
    int workers = 1;

    CLI::App* run = app.add_subcommand("run", "run one case configuration");
    run->add_option("config", config_path, "JSON case config")->required();
    run->add_option("--out", out_dir, "output directory (default: config's output)");

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "JSON case config")->required();
    sweep->add_option("--axis", axis_name, "delta_h | r_enri | n_terms | L_x | omega")
        ->required();
    sweep->add_option("--workers", workers, "concurrent sweep points")->default_val(1);
    sweep->add_option("--out", out_dir, "output directory (default: config's output)");

    CLI11_PARSE(app, argc, argv);

    try {
        const CaseConfig config = parse_case_config_file(config_path);
        const std::string dir = out_dir.empty() ? config.output : out_dir;
        const std::string stem = fs::path(config_path).stem().string();

        if (run->parsed()) {
            const auto rows = run_case(config);
            write_results(dir, stem, rows, nullptr);
        } else {
            const SweepAxis axis = sweep_axis_from_string(axis_name);
            auto it = config.sweep_values.find(axis_name);
            if (it == config.sweep_values.end() || it->second.empty())
                throw ConfigError("config has no sweep values for axis '" + axis_name + "'");
            if (it->second.size() < 3)
                std::cerr << "warning: fewer than 3 sweep points, slope fit skipped\n";
            const SweepResult res =
                run_convergence_sweep(config, axis, it->second, workers);
            write_results(dir, stem + "_sweep_" + axis_name, res.rows, &res);
            if (res.l2_slope)
                std::cout << "fitted slope (l2_error vs delta_h): " << *res.l2_slope << '\n';
            if (res.added_mass_slope)
                std::cout << "fitted slope (added-mass error vs delta_h): "
                          << *res.added_mass_slope << '\n';
        }
    } catch (const xfem2d::Error& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
