#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmg/spectral.hpp"
#include "lmg/trace.hpp"

namespace lmg {

// dH/ds matrix elements in the instantaneous eigenbasis at grid index k:
// M(m, n) = v_m^T dH v_n. Symmetric; nonzero only between equal-parity
// levels, because dH/ds commutes with the spin-flip parity.
Eigen::MatrixXd exact_matrix_elements(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int k);

// The evolving state only ever populates one parity sector, so the effective
// chain links successive levels of equal parity (the nearest levels with a
// nonvanishing dH/ds element). Link j joins sector_levels[j] and
// sector_levels[j+1]; couplings are tabulated or modeled per link.
struct ChainCouplings {
    enum class Variant { Constant, Fitted, Exact };
    Variant variant = Variant::Exact;

    std::vector<int> sector_levels; // full level indices, one parity
    std::vector<double> grid;

    // Exact: signed link elements on the sweep grid, [points x links].
    Eigen::MatrixXd exact;

    // Fitted: |g_j(s)| ~ (amp_a + amp_b log j) exp(-gamma (s - peak_s[j])^2),
    // link 0 reuses the j=1 amplitude.
    double amp_a = 0.0;
    double amp_b = 0.0;
    double gamma = 0.0;
    std::vector<double> peak_s;        // per link, from the CGC inverse
    std::vector<double> level_amp;     // per-link fitted amplitude A_j
    std::vector<double> residuals;     // per-link rms fit residual

    // Constant: single magnitude for every link and s.
    double constant_value = 0.0;

    int links() const { return static_cast<int>(sector_levels.size()) - 1; }
    // Coupling of link j, linearly interpolated in s for the Exact variant.
    double coupling(int link, double s) const;

    std::string tag() const;
};

ChainCouplings exact_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh,
                               int sector_parity = +1);
ChainCouplings constant_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh,
                                  int sector_parity = +1);
// Gaussian-log fit of the exact link elements, with peak positions fixed from
// the CGC inverse (mirrored for backward sweeps).
ChainCouplings fit_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh,
                             int sector_parity = +1);

// Fit stage on an existing link table (the fit_couplings back end).
ChainCouplings fit_from_table(ChainCouplings base);

struct ChainOptions {
    double gap_floor = 1e-6;      // per-link, max(observed min, gap_floor)
    bool literal_phase = false;   // drop the total-time factor on the phase term
    bool absolute_elements = false;
    double gamma_override = 0.0;  // > 0: replace the fitted gamma
};

// Integrates the nearest-neighbor amplitude equation
//   da_m/ds = -i T e_m(s) a_m - sum_{n = m+-1} g(s) / (e_n - e_m) a_n
// on the sector chain with adaptive RK4; returns |a|^2 mapped back to full
// level indices (zero off-sector). Norm conserved to 1e-6.
PopulationTrace evolve_chain(const SpectralSweep& sw, const ChainCouplings& couplings,
                             double total_time, const Eigen::VectorXcd& initial,
                             const ChainOptions& options = {});

// Sector ground-start helper: amplitude 1 on the lowest sector level.
Eigen::VectorXcd chain_ground_start(const ChainCouplings& couplings);

} // namespace lmg
