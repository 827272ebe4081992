#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lmg/cgc.hpp"
#include "lmg/dynamics.hpp"
#include "lmg/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

std::string out_path(const lmg::RunConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    return (fs::path(config.out_dir) / name).string();
}

void apply_env_overrides(lmg::RunConfig& config) {
    if (const char* dir = std::getenv("LMG_OUT_DIR")) {
        config.out_dir = dir;
    }
}

lmg::Schedule schedule_for(const lmg::RunConfig& config) {
    const int steps = config.grid_points > 1 ? config.grid_points - 1 : config.steps;
    return lmg::make_schedule(config.direction, config.total_time, steps);
}

int run_spectrum(const lmg::RunConfig& config) {
    const auto sys = lmg::build_spin_system(config.n_spins);
    const auto sched = schedule_for(config);
    const auto sw = lmg::sweep(sys, sched);
    lmg::write_sweep_csv(out_path(config, "sweep.csv"), sys, sw);
    lmg::write_cgc_csv(out_path(config, "cgc.csv"), static_cast<int>(sched.grid.size()));
    lmg::write_manifest(out_path(config, "manifest.json"), config);
    return 0;
}

lmg::PopulationTrace run_model(const lmg::RunConfig& config) {
    const auto sys = lmg::build_spin_system(config.n_spins);
    const auto sched = schedule_for(config);
    const auto sw = lmg::sweep(sys, sched);

    if (config.model == "full") {
        return lmg::evolve_full(sw, sched, config.initial);
    }
    if (config.model == "rate") {
        lmg::RateParams params;
        params.b = config.rate_b;
        params.total_time = config.total_time;
        params.form = config.rate_form;
        params.gap_floor = config.gap_floor;
        Eigen::VectorXd initial = Eigen::VectorXd::Zero(sw.dim());
        initial[0] = 1.0;
        return lmg::evolve_rate(sw, params, initial);
    }

    const auto dh = lmg::d_hamiltonian_ds(sys, sched);
    lmg::ChainCouplings couplings;
    if (config.model == "chain-const") {
        couplings = lmg::constant_couplings(sw, dh);
    } else if (config.model == "chain-fit") {
        couplings = lmg::fit_couplings(sw, dh);
    } else {
        couplings = lmg::exact_couplings(sw, dh);
    }
    lmg::ChainOptions options;
    options.gap_floor = config.gap_floor;
    options.literal_phase = config.literal_phase;
    options.absolute_elements = config.absolute_elements;
    options.gamma_override = config.gamma_override;
    return lmg::evolve_chain(sw, couplings, config.total_time, lmg::chain_ground_start(couplings),
                             options);
}

int run_evolve(const lmg::RunConfig& config) {
    const auto trace = run_model(config);
    lmg::write_trace_csv(out_path(config, "trace.csv"), trace);
    lmg::write_manifest(out_path(config, "manifest.json"), config);
    return 0;
}

int run_fit(const lmg::RunConfig& config) {
    const auto sys = lmg::build_spin_system(config.n_spins);
    const auto sched = schedule_for(config);
    const auto sw = lmg::sweep(sys, sched);
    const auto dh = lmg::d_hamiltonian_ds(sys, sched);
    const auto couplings = lmg::fit_couplings(sw, dh);
    lmg::write_coupling_csv(out_path(config, "couplings.csv"), couplings);
    lmg::write_fit_report_json(out_path(config, "fit_report.json"), couplings);
    lmg::write_manifest(out_path(config, "manifest.json"), config);
    return 0;
}

int run_compare(const std::string& trace_a, const std::string& trace_b, const std::string& out) {
    const auto a = lmg::read_trace_csv(trace_a);
    const auto b = lmg::read_trace_csv(trace_b);
    const auto report = lmg::compare_traces(a, b);
    lmg::write_compare_report_json(out, report);
    std::cout << "final_tvd=" << report.final_tvd
              << " max_argmax_divergence=" << report.max_argmax_divergence << "\n";
    return 0;
}

void add_common_flags(CLI::App* cmd, lmg::RunConfig& config, std::string& direction,
                      std::string& manifest) {
    cmd->add_option("--n", config.n_spins, "Number of spins (even)");
    cmd->add_option("--direction", direction, "forward | backward");
    cmd->add_option("--total-time", config.total_time, "Total evolution time T");
    cmd->add_option("--steps", config.steps, "Fixed-Hamiltonian intervals");
    cmd->add_option("--grid", config.grid_points, "Spectral grid points (overrides steps)");
    cmd->add_option("--out", config.out_dir, "Output directory");
    cmd->add_option("--manifest", manifest, "Re-run from a manifest file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven LMG dynamics: spectra, populations, effective models"};
    app.require_subcommand(1);

    lmg::RunConfig config;
    std::string direction = "forward";
    std::string initial = "ground";
    std::string rate_form = "adiabatic";
    std::string manifest;
    std::string trace_a, trace_b, compare_out = "compare.json";

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue sweep + CGC curve");
    add_common_flags(spectrum, config, direction, manifest);

    auto* evolve = app.add_subcommand("evolve", "Population trace for one model");
    add_common_flags(evolve, config, direction, manifest);
    evolve->add_option("--model", config.model, "full | rate | chain-const | chain-fit | chain-exact");
    evolve->add_option("--initial", initial, "ground | ground-even | ground-odd | ground-broken");
    evolve->add_option("--rate-b", config.rate_b, "Rate-model coupling b");
    evolve->add_option("--rate-form", rate_form, "adiabatic | landau-zener");
    evolve->add_option("--gamma", config.gamma_override, "Override the fitted Gaussian width");
    evolve->add_option("--gap-floor", config.gap_floor, "Minimum gap used in rate/coupling denominators");
    evolve->add_flag("--literal-phase", config.literal_phase, "Phase term without the total-time factor");
    evolve->add_flag("--absolute-elements", config.absolute_elements, "Use |matrix elements| in the chain");

    auto* fit = app.add_subcommand("fit", "Gaussian-log fit of the chain couplings");
    add_common_flags(fit, config, direction, manifest);

    auto* compare = app.add_subcommand("compare", "Distance report between two traces");
    compare->add_option("trace_a", trace_a, "First trace CSV")->required();
    compare->add_option("trace_b", trace_b, "Second trace CSV")->required();
    compare->add_option("--out", compare_out, "Report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) {
            return run_compare(trace_a, trace_b, compare_out);
        }
        if (!manifest.empty()) {
            config = lmg::RunConfig::from_json_file(manifest);
        } else {
            config.direction = lmg::direction_from_string(direction);
            config.initial = lmg::initial_state_from_string(initial);
            config.rate_form = lmg::rate_form_from_string(rate_form);
        }
        apply_env_overrides(config);
        config.validate();

        if (spectrum->parsed()) return run_spectrum(config);
        if (evolve->parsed()) return run_evolve(config);
        if (fit->parsed()) return run_fit(config);
        return kExitConfigError;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumericalError;
    }
}
