#include "lmg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lmg/cgc.hpp"
#include "lmg/dynamics.hpp"

namespace lmg {

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kCodeVersion = "1.0.0";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

std::string rate_form_name(RateForm f) {
    return f == RateForm::AdiabaticInverseSquare ? "adiabatic" : "landau-zener";
}

} // namespace

void RunConfig::validate() const {
    if (n_spins < 2 || n_spins % 2 != 0) {
        throw std::invalid_argument("config field 'n': must be even and >= 2");
    }
    if (total_time <= 0.0) throw std::invalid_argument("config field 'total_time': must be positive");
    if (steps < 1) throw std::invalid_argument("config field 'steps': must be >= 1");
    if (grid_points < 0) throw std::invalid_argument("config field 'grid': must be >= 0");
    if (model != "full" && model != "rate" && model != "chain-const" && model != "chain-fit" &&
        model != "chain-exact") {
        throw std::invalid_argument("config field 'model': unknown model '" + model + "'");
    }
    if (rate_b <= 0.0) throw std::invalid_argument("config field 'rate_b': must be positive");
    if (gap_floor <= 0.0) throw std::invalid_argument("config field 'gap_floor': must be positive");
}

std::string RunConfig::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["code_version"] = kCodeVersion;
    j["n"] = n_spins;
    j["direction"] = to_string(direction);
    j["total_time"] = total_time;
    j["steps"] = steps;
    j["grid"] = grid_points;
    j["model"] = model;
    j["initial"] = lmg::to_string(initial);
    j["rate_b"] = rate_b;
    j["rate_form"] = rate_form_name(rate_form);
    j["gamma"] = gamma_override;
    j["gap_floor"] = gap_floor;
    j["literal_phase"] = literal_phase;
    j["absolute_elements"] = absolute_elements;
    j["out_dir"] = out_dir;
    return j.dump(2);
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open manifest: " + path);
    nlohmann::json j;
    in >> j;
    RunConfig c;
    c.n_spins = j.at("n").get<int>();
    c.direction = direction_from_string(j.at("direction").get<std::string>());
    c.total_time = j.at("total_time").get<double>();
    c.steps = j.at("steps").get<int>();
    c.grid_points = j.value("grid", 0);
    c.model = j.value("model", "full");
    c.initial = initial_state_from_string(j.value("initial", "ground"));
    c.rate_b = j.value("rate_b", 1e-3);
    c.rate_form = rate_form_from_string(j.value("rate_form", "adiabatic"));
    c.gamma_override = j.value("gamma", 0.0);
    c.gap_floor = j.value("gap_floor", 1e-6);
    c.literal_phase = j.value("literal_phase", false);
    c.absolute_elements = j.value("absolute_elements", false);
    c.out_dir = j.value("out_dir", ".");
    c.validate();
    return c;
}

void write_manifest(const std::string& path, const RunConfig& config) {
    auto out = open_out(path);
    out << config.to_json() << "\n";
}

void write_sweep_csv(const std::string& path, const SpinSystem& sys, const SpectralSweep& sw) {
    auto out = open_out(path);
    out << "s,level,energy,energy_per_spin,x\n";
    const int dim = sw.dim();
    for (int k = 0; k < sw.points(); ++k) {
        const auto& snap = sw.snapshots[k];
        for (int i = 0; i < dim; ++i) {
            out << fmt(snap.s) << ',' << i << ',' << fmt(snap.eigenvalues[i]) << ','
                << fmt(snap.eigenvalues[i] / sys.n_spins) << ',' << fmt(integrated_dos(i, dim))
                << '\n';
        }
    }
}

void write_cgc_csv(const std::string& path, int points) {
    if (points < 2) throw std::invalid_argument("write_cgc_csv: need at least 2 points");
    auto out = open_out(path);
    out << "s,x_c\n";
    for (int k = 0; k < points; ++k) {
        const double s = 0.5 + 0.5 * k / (points - 1);
        out << fmt(s) << ',' << fmt(cgc_x(std::min(s, 1.0))) << '\n';
    }
}

void write_trace_csv(const std::string& path, const PopulationTrace& trace) {
    auto out = open_out(path);
    out << "s,level,x,population,model_tag\n";
    const int dim = trace.levels();
    for (int k = 0; k < trace.points(); ++k) {
        for (int i = 0; i < dim; ++i) {
            out << fmt(trace.grid[k]) << ',' << i << ',' << fmt(integrated_dos(i, dim)) << ','
                << fmt(trace.populations(k, i)) << ',' << trace.model_tag << '\n';
        }
    }
}

PopulationTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open trace file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty trace file: " + path);

    std::vector<double> s_values;
    std::vector<double> pops;
    std::string tag;
    int dim = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const double s = std::stod(field);
        std::getline(row, field, ',');
        const int level = std::stoi(field);
        std::getline(row, field, ','); // x
        std::getline(row, field, ',');
        const double p = std::stod(field);
        std::getline(row, tag, ',');
        if (level == 0) s_values.push_back(s);
        if (s_values.size() == 1) dim = std::max(dim, level + 1);
        pops.push_back(p);
    }
    if (dim == 0 || pops.size() != s_values.size() * dim) {
        throw std::invalid_argument("malformed trace file: " + path);
    }
    PopulationTrace trace;
    trace.grid = s_values;
    trace.model_tag = tag;
    trace.populations.resize(s_values.size(), dim);
    for (size_t k = 0; k < s_values.size(); ++k) {
        for (int i = 0; i < dim; ++i) {
            trace.populations(k, i) = pops[k * dim + i];
        }
    }
    return trace;
}

void write_rate_table_csv(const std::string& path, const SpectralSweep& sw, const RateParams& params) {
    auto out = open_out(path);
    out << "s,i,rate\n";
    for (int k = 0; k < sw.points(); ++k) {
        const Eigen::MatrixXd gamma = transition_rates(sw, k, params);
        for (int i = 0; i + 1 < sw.dim(); ++i) {
            out << fmt(sw.s_at(k)) << ',' << i << ',' << fmt(gamma(i, i + 1)) << '\n';
        }
    }
}

void write_coupling_csv(const std::string& path, const ChainCouplings& couplings) {
    auto out = open_out(path);
    out << "s,link,level_lo,level_hi,element,model\n";
    for (size_t k = 0; k < couplings.grid.size(); ++k) {
        for (int j = 0; j < couplings.links(); ++j) {
            out << fmt(couplings.grid[k]) << ',' << j << ',' << couplings.sector_levels[j] << ','
                << couplings.sector_levels[j + 1] << ',' << fmt(couplings.exact(k, j)) << ','
                << fmt(couplings.coupling(j, couplings.grid[k])) << '\n';
        }
    }
}

void write_fit_report_json(const std::string& path, const ChainCouplings& couplings) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["variant"] = couplings.tag();
    j["amp_a"] = couplings.amp_a;
    j["amp_b"] = couplings.amp_b;
    j["gamma"] = couplings.gamma;
    j["constant_value"] = couplings.constant_value;
    j["sector_levels"] = couplings.sector_levels;
    j["peak_s"] = couplings.peak_s;
    j["level_amp"] = couplings.level_amp;
    j["residual_rms"] = couplings.residuals;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_compare_report_json(const std::string& path, const CompareReport& report) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["final_tvd"] = report.final_tvd;
    j["max_argmax_divergence"] = report.max_argmax_divergence;
    j["s"] = report.grid;
    j["tvd"] = report.tvd;
    j["argmax_a"] = report.argmax_a;
    j["argmax_b"] = report.argmax_b;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace lmg
