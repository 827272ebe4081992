#pragma once

#include <string>
#include <vector>

#include "lmg/chain_model.hpp"
#include "lmg/dynamics.hpp"
#include "lmg/rate_model.hpp"
#include "lmg/spectral.hpp"
#include "lmg/trace.hpp"

namespace lmg {

// All CSV output uses %.17g so that files are bit-stable regression anchors.

struct RunConfig {
    int n_spins = 20;
    Direction direction = Direction::Forward;
    double total_time = 10.0;
    int steps = 1000;
    int grid_points = 0;        // 0: steps + 1
    std::string model = "full"; // full | rate | chain-const | chain-fit | chain-exact
    InitialState initial = InitialState::Ground;
    double rate_b = 1e-3;
    RateForm rate_form = RateForm::AdiabaticInverseSquare;
    double gamma_override = 0.0;
    double gap_floor = 1e-6;
    bool literal_phase = false;
    bool absolute_elements = false;
    std::string out_dir = ".";

    std::string to_json() const;
    static RunConfig from_json_file(const std::string& path);
    void validate() const; // throws std::invalid_argument naming the field
};

void write_manifest(const std::string& path, const RunConfig& config);

void write_sweep_csv(const std::string& path, const SpinSystem& sys, const SpectralSweep& sw);
void write_cgc_csv(const std::string& path, int points);
void write_trace_csv(const std::string& path, const PopulationTrace& trace);
void write_rate_table_csv(const std::string& path, const SpectralSweep& sw, const RateParams& params);
void write_coupling_csv(const std::string& path, const ChainCouplings& couplings);
void write_fit_report_json(const std::string& path, const ChainCouplings& couplings);
void write_compare_report_json(const std::string& path, const CompareReport& report);

PopulationTrace read_trace_csv(const std::string& path);

} // namespace lmg
