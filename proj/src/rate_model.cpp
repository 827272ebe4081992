#include "lmg/rate_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmg {

RateForm rate_form_from_string(const std::string& name) {
    if (name == "adiabatic" || name == "inverse-square") return RateForm::AdiabaticInverseSquare;
    if (name == "landau-zener" || name == "lz-exponential") return RateForm::LandauZenerExponential;
    throw std::invalid_argument("unknown rate form '" + name + "'");
}

namespace {

// Floor for each adjacent pair: the observed minimum gap over the sweep,
// never below params.gap_floor.
std::vector<double> pair_floors(const SpectralSweep& sw, const RateParams& params) {
    const int pairs = sw.dim() - 1;
    std::vector<double> floors(pairs, std::numeric_limits<double>::max());
    for (int k = 0; k < sw.points(); ++k) {
        const auto& e = sw.snapshots[k].eigenvalues;
        for (int j = 0; j < pairs; ++j) {
            floors[j] = std::min(floors[j], e[j + 1] - e[j]);
        }
    }
    for (double& f : floors) f = std::max(f, params.gap_floor);
    return floors;
}

double rate_of_gap(double delta, double floor, const RateParams& params) {
    const double d = std::max(delta, floor);
    if (params.form == RateForm::AdiabaticInverseSquare) {
        return params.total_time * params.b / (d * d);
    }
    return std::exp(-params.b * d * d);
}

// Pair rates r_j for pair (j, j+1) at grid index k.
std::vector<double> pair_rates(const SpectralSweep& sw, int k, const std::vector<double>& floors,
                               const RateParams& params) {
    const int pairs = sw.dim() - 1;
    std::vector<double> r(pairs);
    const auto& e = sw.snapshots[k].eigenvalues;
    for (int j = 0; j < pairs; ++j) {
        r[j] = rate_of_gap(e[j + 1] - e[j], floors[j], params);
    }
    return r;
}

// Pdot_i = r_i (P_{i+1} - P_i) + r_{i-1} (P_{i-1} - P_i); zero column sums.
Eigen::VectorXd apply_generator(const std::vector<double>& r, const Eigen::VectorXd& p) {
    const int dim = static_cast<int>(p.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j + 1 < dim; ++j) {
        const double flow = r[j] * (p[j + 1] - p[j]);
        out[j] += flow;
        out[j + 1] -= flow;
    }
    return out;
}

} // namespace

Eigen::MatrixXd transition_rates(const SpectralSweep& sw, int k, const RateParams& params) {
    if (k < 0 || k >= sw.points()) throw std::invalid_argument("transition_rates: grid index out of range");
    if (params.b <= 0.0 || params.total_time <= 0.0) {
        throw std::invalid_argument("transition_rates: b and total_time must be positive");
    }
    const auto floors = pair_floors(sw, params);
    const auto r = pair_rates(sw, k, floors, params);
    const int dim = sw.dim();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j + 1 < dim; ++j) {
        gamma(j, j + 1) = r[j];
        gamma(j + 1, j) = r[j];
    }
    return gamma;
}

PopulationTrace evolve_rate(const SpectralSweep& sw, const RateParams& params,
                            const Eigen::VectorXd& initial) {
    const int dim = sw.dim();
    if (initial.size() != dim) throw std::invalid_argument("evolve_rate: initial size mismatch");
    if (initial.minCoeff() < -1e-12 || std::abs(initial.sum() - 1.0) > 1e-8) {
        throw std::invalid_argument("evolve_rate: initial must be a probability vector");
    }
    const auto floors = pair_floors(sw, params);
    const int pairs = dim - 1;

    PopulationTrace trace;
    trace.model_tag = "Rate";
    trace.grid.reserve(sw.points());
    for (int k = 0; k < sw.points(); ++k) trace.grid.push_back(sw.s_at(k));
    trace.populations.resize(sw.points(), dim);

    Eigen::VectorXd p = initial;
    trace.populations.row(0) = p;

    constexpr long kMaxSubsteps = 1 << 22;
    for (int k = 0; k + 1 < sw.points(); ++k) {
        const double ds = sw.s_at(k + 1) - sw.s_at(k);
        const auto r0 = pair_rates(sw, k, floors, params);
        const auto r1 = pair_rates(sw, k + 1, floors, params);

        // Explicit RK4 stability bound: step against the largest outflow.
        double lambda = 0.0;
        for (int j = 0; j < pairs; ++j) lambda = std::max(lambda, r0[j] + r1[j]);
        long n_sub = std::max<long>(4, static_cast<long>(std::ceil(ds * lambda)) + 4);

        const Eigen::VectorXd p_in = p;
        for (;;) {
            p = p_in;
            const double h = ds / n_sub;
            std::vector<double> rm(pairs);
            bool ok = true;
            for (long step = 0; step < n_sub && ok; ++step) {
                const double f0 = static_cast<double>(step) / n_sub;
                const double f1 = static_cast<double>(step + 1) / n_sub;
                const double fm = 0.5 * (f0 + f1);
                std::vector<double> ra(pairs), rb(pairs);
                for (int j = 0; j < pairs; ++j) {
                    ra[j] = (1.0 - f0) * r0[j] + f0 * r1[j];
                    rm[j] = (1.0 - fm) * r0[j] + fm * r1[j];
                    rb[j] = (1.0 - f1) * r0[j] + f1 * r1[j];
                }
                const Eigen::VectorXd k1 = apply_generator(ra, p);
                const Eigen::VectorXd k2 = apply_generator(rm, p + 0.5 * h * k1);
                const Eigen::VectorXd k3 = apply_generator(rm, p + 0.5 * h * k2);
                const Eigen::VectorXd k4 = apply_generator(rb, p + h * k3);
                p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                if (p.minCoeff() < -1e-12) ok = false;
            }
            if (ok && std::abs(p.sum() - 1.0) < 1e-9) break;
            n_sub *= 2;
            if (n_sub > kMaxSubsteps) {
                throw std::runtime_error("evolve_rate: step size underflow near s=" +
                                         std::to_string(sw.s_at(k)));
            }
        }
        trace.populations.row(k + 1) = p;
    }
    return trace;
}

} // namespace lmg
