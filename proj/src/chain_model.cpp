#include "lmg/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "lmg/cgc.hpp"

namespace lmg {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};

std::vector<int> sector_of(const SpectralSweep& sw, int sector_parity) {
    std::vector<int> levels;
    const auto& par = sw.snapshots.front().parity;
    for (int i = 0; i < par.size(); ++i) {
        if (par[i] == sector_parity) levels.push_back(i);
    }
    if (levels.size() < 2) throw std::invalid_argument("chain sector has fewer than two levels");
    return levels;
}

// Signed link elements v_{L_j}^T dH v_{L_{j+1}} tabulated over the grid.
Eigen::MatrixXd link_table(const SpectralSweep& sw, const Eigen::MatrixXd& dh,
                           const std::vector<int>& levels) {
    const int links = static_cast<int>(levels.size()) - 1;
    Eigen::MatrixXd table(sw.points(), links);
    for (int k = 0; k < sw.points(); ++k) {
        const auto& v = sw.snapshots[k].eigenvectors;
        for (int j = 0; j < links; ++j) {
            table(k, j) = v.col(levels[j]).dot(dh * v.col(levels[j + 1]));
        }
    }
    return table;
}

std::vector<double> link_peaks(const SpectralSweep& sw, const std::vector<int>& levels) {
    const int dim = sw.dim();
    const int links = static_cast<int>(levels.size()) - 1;
    std::vector<double> peaks(links);
    for (int j = 0; j < links; ++j) {
        const double x = 0.5 * (levels[j] + levels[j + 1]) / (dim - 1);
        const double s0 = cgc_invert(std::clamp(x, 0.0, 1.0));
        peaks[j] = (sw.direction == Direction::Forward) ? s0 : 1.0 - s0;
    }
    return peaks;
}

ChainCouplings base_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int sector_parity) {
    ChainCouplings c;
    c.sector_levels = sector_of(sw, sector_parity);
    c.grid.reserve(sw.points());
    for (int k = 0; k < sw.points(); ++k) c.grid.push_back(sw.s_at(k));
    c.exact = link_table(sw, dh, c.sector_levels);
    c.peak_s = link_peaks(sw, c.sector_levels);
    return c;
}

} // namespace

Eigen::MatrixXd exact_matrix_elements(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int k) {
    if (k < 0 || k >= sw.points()) {
        throw std::invalid_argument("exact_matrix_elements: grid index out of range");
    }
    const auto& v = sw.snapshots[k].eigenvectors;
    return v.transpose() * dh * v;
}

std::string ChainCouplings::tag() const {
    switch (variant) {
        case Variant::Constant: return "ChainConst";
        case Variant::Fitted: return "ChainFit";
        case Variant::Exact: return "ChainExact";
    }
    return "ChainExact";
}

double ChainCouplings::coupling(int link, double s) const {
    switch (variant) {
        case Variant::Constant:
            return constant_value;
        case Variant::Fitted: {
            const int j = std::max(link, 1); // log 0 undefined; link 0 reuses j=1
            const double amp = amp_a + amp_b * std::log(static_cast<double>(j));
            const double d = s - peak_s[link];
            return amp * std::exp(-gamma * d * d);
        }
        case Variant::Exact: {
            const int last = static_cast<int>(grid.size()) - 1;
            const double t = (s - grid.front()) / (grid.back() - grid.front()) * last;
            const int k = std::clamp(static_cast<int>(t), 0, last - 1);
            const double f = t - k;
            return (1.0 - f) * exact(k, link) + f * exact(k + 1, link);
        }
    }
    return 0.0;
}

ChainCouplings exact_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int sector_parity) {
    ChainCouplings c = base_couplings(sw, dh, sector_parity);
    c.variant = ChainCouplings::Variant::Exact;
    return c;
}

ChainCouplings constant_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int sector_parity) {
    ChainCouplings c = base_couplings(sw, dh, sector_parity);
    c.variant = ChainCouplings::Variant::Constant;
    c.constant_value = c.exact.cwiseAbs().mean();
    return c;
}

ChainCouplings fit_couplings(const SpectralSweep& sw, const Eigen::MatrixXd& dh, int sector_parity) {
    return fit_from_table(base_couplings(sw, dh, sector_parity));
}

ChainCouplings fit_from_table(ChainCouplings c) {
    c.variant = ChainCouplings::Variant::Fitted;
    const int links = c.links();
    c.level_amp.assign(links, 0.0);
    c.residuals.assign(links, 0.0);

    // Per link: weighted least squares for (log A_j, gamma_j) on
    // log|g| = log A - gamma (s - s0)^2. The Gaussian form holds near the
    // maximum, so samples are weighted by (|g|/peak)^8: the amplitude law is
    // a law of the maximal values, and the far tails (where the measured
    // elements are not Gaussian) carry negligible weight. For data generated
    // exactly from the model the weights are immaterial and the parameters
    // are recovered exactly.
    std::vector<double> gammas(links, 0.0);
    std::vector<bool> fit_ok(links, false);
    for (int j = 0; j < links; ++j) {
        const double peak = c.exact.col(j).cwiseAbs().maxCoeff();
        if (peak <= 0.0) continue;
        double sw_, sx, sy, sxx, sxy;
        sw_ = sx = sy = sxx = sxy = 0.0;
        int samples = 0;
        for (int k = 0; k < static_cast<int>(c.grid.size()); ++k) {
            const double g = std::abs(c.exact(k, j));
            if (g < 0.05 * peak) continue;
            const double rel = g / peak;
            const double w = rel * rel * rel * rel * rel * rel * rel * rel;
            const double d = c.grid[k] - c.peak_s[j];
            const double x = -d * d;
            const double y = std::log(g);
            sw_ += w; sx += w * x; sy += w * y; sxx += w * x * x; sxy += w * x * y;
            ++samples;
        }
        const double det = sw_ * sxx - sx * sx;
        if (samples < 3 || std::abs(det) < 1e-30) continue;
        const double logA = (sxx * sy - sx * sxy) / det;
        gammas[j] = (sw_ * sxy - sx * sy) / det;
        c.level_amp[j] = std::exp(logA);
        fit_ok[j] = true;
    }

    // Shared gamma: amplitude-weighted mean over successfully fitted links.
    double wsum = 0.0, gsum = 0.0;
    for (int j = 1; j < links; ++j) {
        if (!fit_ok[j] || gammas[j] <= 0.0) continue;
        wsum += c.level_amp[j];
        gsum += c.level_amp[j] * gammas[j];
    }
    c.gamma = (wsum > 0.0) ? gsum / wsum : 0.0;

    // Amplitude law A_j ~ a + b log j over j >= 1.
    double sn = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int j = 1; j < links; ++j) {
        if (!fit_ok[j]) continue;
        const double x = std::log(static_cast<double>(j));
        const double y = c.level_amp[j];
        sn += 1.0; sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double det = sn * sxx - sx * sx;
    if (sn >= 2.0 && std::abs(det) > 1e-30) {
        c.amp_a = (sxx * sy - sx * sxy) / det;
        c.amp_b = (sn * sxy - sx * sy) / det;
    } else if (sn >= 1.0) {
        c.amp_a = sy / sn;
        c.amp_b = 0.0;
    }

    for (int j = 0; j < links; ++j) {
        double acc = 0.0;
        for (int k = 0; k < static_cast<int>(c.grid.size()); ++k) {
            const double diff = std::abs(c.exact(k, j)) - std::abs(c.coupling(j, c.grid[k]));
            acc += diff * diff;
        }
        c.residuals[j] = std::sqrt(acc / c.grid.size());
    }
    return c;
}

Eigen::VectorXcd chain_ground_start(const ChainCouplings& couplings) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(couplings.sector_levels.size());
    a[0] = 1.0;
    return a;
}

PopulationTrace evolve_chain(const SpectralSweep& sw, const ChainCouplings& couplings,
                             double total_time, const Eigen::VectorXcd& initial,
                             const ChainOptions& options) {
    const int dim = sw.dim();
    const auto& levels = couplings.sector_levels;
    const int nsec = static_cast<int>(levels.size());
    const int links = nsec - 1;
    if (initial.size() != nsec) throw std::invalid_argument("evolve_chain: initial size mismatch");
    if (std::abs(initial.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("evolve_chain: initial must be normalized");
    }

    ChainCouplings effective = couplings;
    if (options.gamma_override > 0.0 && effective.variant == ChainCouplings::Variant::Fitted) {
        effective.gamma = options.gamma_override;
    }

    // Signed sector gaps with per-link magnitude floor.
    std::vector<double> floors(links, std::numeric_limits<double>::max());
    for (int k = 0; k < sw.points(); ++k) {
        const auto& e = sw.snapshots[k].eigenvalues;
        for (int j = 0; j < links; ++j) {
            floors[j] = std::min(floors[j], std::abs(e[levels[j + 1]] - e[levels[j]]));
        }
    }
    for (double& f : floors) f = std::max(f, options.gap_floor);

    const double phase_scale = options.literal_phase ? 1.0 : total_time;

    // Sector eigenvalues interpolated between grid points.
    auto energies_at = [&](int k, double f, Eigen::VectorXd& out) {
        const auto& e0 = sw.snapshots[k].eigenvalues;
        const auto& e1 = sw.snapshots[k + 1].eigenvalues;
        for (int j = 0; j < nsec; ++j) {
            out[j] = (1.0 - f) * e0[levels[j]] + f * e1[levels[j]];
        }
    };

    auto rhs = [&](double s, const Eigen::VectorXd& eng, Eigen::VectorXcd& da,
                   const Eigen::VectorXcd& a) {
        for (int j = 0; j < nsec; ++j) {
            da[j] = -kImag * phase_scale * eng[j] * a[j];
        }
        for (int j = 0; j < links; ++j) {
            double g = effective.coupling(j, s);
            if (options.absolute_elements) g = std::abs(g);
            double delta = eng[j + 1] - eng[j];
            const double mag = std::max(std::abs(delta), floors[j]);
            delta = (delta >= 0.0) ? mag : -mag;
            const double w = g / delta;
            // da_j -= w a_{j+1}; da_{j+1} += w a_j  (antisymmetric coupling)
            da[j] -= w * a[j + 1];
            da[j + 1] += w * a[j];
        }
    };

    PopulationTrace trace;
    trace.model_tag = effective.tag();
    trace.grid.reserve(sw.points());
    for (int k = 0; k < sw.points(); ++k) trace.grid.push_back(sw.s_at(k));
    trace.populations = Eigen::MatrixXd::Zero(sw.points(), dim);

    Eigen::VectorXcd a = initial;
    auto record = [&](int k) {
        for (int j = 0; j < nsec; ++j) {
            trace.populations(k, levels[j]) = std::norm(a[j]);
        }
    };
    record(0);

    constexpr long kMaxSubsteps = 1 << 22;
    Eigen::VectorXd eng(nsec);
    Eigen::VectorXcd k1(nsec), k2(nsec), k3(nsec), k4(nsec), tmp(nsec);

    for (int k = 0; k + 1 < sw.points(); ++k) {
        const double s_lo = sw.s_at(k);
        const double ds = sw.s_at(k + 1) - s_lo;

        // Step against both the phase frequency and the coupling strength.
        double emax = 0.0, wmax = 0.0;
        const auto& e0 = sw.snapshots[k].eigenvalues;
        for (int j = 0; j < nsec; ++j) emax = std::max(emax, std::abs(e0[levels[j]]));
        for (int j = 0; j < links; ++j) {
            const double g = std::abs(effective.coupling(j, s_lo));
            wmax = std::max(wmax, g / floors[j]);
        }
        long n_sub = std::max<long>(
            4, static_cast<long>(std::ceil(2.0 * ds * (phase_scale * emax + 2.0 * wmax))) + 4);

        const Eigen::VectorXcd a_in = a;
        const double norm_in = a_in.norm();
        for (;;) {
            a = a_in;
            const double h = ds / n_sub;
            for (long step = 0; step < n_sub; ++step) {
                const double s = s_lo + step * h;
                const double f = (s - s_lo) / ds;
                const double fm = f + 0.5 * h / ds;
                const double f1 = f + h / ds;
                energies_at(k, f, eng);
                rhs(s, eng, k1, a);
                energies_at(k, fm, eng);
                tmp = a + 0.5 * h * k1;
                rhs(s + 0.5 * h, eng, k2, tmp);
                tmp = a + 0.5 * h * k2;
                rhs(s + 0.5 * h, eng, k3, tmp);
                energies_at(k, std::min(f1, 1.0), eng);
                tmp = a + h * k3;
                rhs(s + h, eng, k4, tmp);
                a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            if (std::abs(a.norm() - norm_in) < 1e-9 + 1e-7 * ds) break;
            n_sub *= 2;
            if (n_sub > kMaxSubsteps) {
                throw std::runtime_error("evolve_chain: step size underflow near s=" +
                                         std::to_string(s_lo));
            }
        }
        record(k + 1);
    }
    return trace;
}

} // namespace lmg
