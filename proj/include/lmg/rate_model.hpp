#pragma once

#include <string>

#include <Eigen/Dense>

#include "lmg/spectral.hpp"
#include "lmg/trace.hpp"

namespace lmg {

enum class RateForm {
    AdiabaticInverseSquare, // Gamma = T b / Delta^2
    LandauZenerExponential  // Gamma = exp(-b Delta^2)
};

RateForm rate_form_from_string(const std::string& name);

struct RateParams {
    double b = 1e-3;
    double total_time = 10.0;
    RateForm form = RateForm::AdiabaticInverseSquare;
    // Per-pair gap floor: Delta is capped below at
    // max(min_s Delta(s), gap_floor). Keeps the rates finite through the
    // exact doublet degeneracies at the schedule endpoints.
    double gap_floor = 1e-6;
};

// Nearest-neighbor rate matrix at grid index k: Gamma(i, i+-1) per RateForm,
// zero elsewhere. Symmetric.
Eigen::MatrixXd transition_rates(const SpectralSweep& sw, int k, const RateParams& params);

// Integrates Pdot_i = G(i+1,i)P_{i+1} + G(i-1,i)P_{i-1} - (G(i,i+1)+G(i,i-1))P_i
// over s in [0,1] with adaptive classical RK4 (rates linearly interpolated
// between grid points). Probability conserved to 1e-8; negative excursions
// below -1e-12 trigger step refinement, and step underflow throws
// std::runtime_error naming the s location.
PopulationTrace evolve_rate(const SpectralSweep& sw, const RateParams& params,
                            const Eigen::VectorXd& initial);

} // namespace lmg
