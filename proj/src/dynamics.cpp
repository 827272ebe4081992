#include "lmg/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace lmg {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};
}

std::string to_string(InitialState c) {
    switch (c) {
        case InitialState::Ground: return "ground";
        case InitialState::GroundEvenParity: return "ground-even";
        case InitialState::GroundOddParity: return "ground-odd";
        case InitialState::GroundBroken: return "ground-broken";
    }
    return "ground";
}

InitialState initial_state_from_string(const std::string& name) {
    if (name == "ground") return InitialState::Ground;
    if (name == "ground-even") return InitialState::GroundEvenParity;
    if (name == "ground-odd") return InitialState::GroundOddParity;
    if (name == "ground-broken") return InitialState::GroundBroken;
    throw std::invalid_argument("unknown initial state '" + name + "'");
}

StateVector initial_state(const SpectralSnapshot& first, InitialState choice) {
    const int dim = static_cast<int>(first.eigenvalues.size());
    const double scale = std::max(1.0, first.eigenvalues.cwiseAbs().maxCoeff());
    const bool degenerate = dim > 1 && (first.eigenvalues[1] - first.eigenvalues[0] < 1e-10 * scale);

    // Levels are parity-pure and ordered even-first at exact ties, so the
    // doublet members are columns 0 (even) and 1 (odd).
    Eigen::VectorXd v;
    if (!degenerate) {
        v = first.eigenvectors.col(0);
        if (choice == InitialState::GroundOddParity && first.parity[0] != -1) {
            throw std::invalid_argument("initial_state: ground state is not degenerate; no odd member");
        }
    } else {
        switch (choice) {
            case InitialState::Ground:
            case InitialState::GroundEvenParity:
                v = first.eigenvectors.col(0);
                break;
            case InitialState::GroundOddParity:
                v = first.eigenvectors.col(1);
                break;
            case InitialState::GroundBroken:
                v = (first.eigenvectors.col(0) + first.eigenvectors.col(1)) / std::sqrt(2.0);
                break;
        }
    }
    return v.cast<std::complex<double>>();
}

StateVector propagate_interval(const StateVector& state, const SpectralSnapshot& snap, double dt) {
    const Eigen::VectorXcd coeffs = snap.eigenvectors.transpose() * state;
    Eigen::VectorXcd phased(coeffs.size());
    for (int i = 0; i < coeffs.size(); ++i) {
        phased[i] = std::exp(-kImag * snap.eigenvalues[i] * dt) * coeffs[i];
    }
    StateVector out = snap.eigenvectors * phased;
    const double drift = std::abs(out.norm() - 1.0);
    if (drift > 1e-8) {
        throw std::runtime_error("propagate_interval: norm drift " + std::to_string(drift) +
                                 " at s=" + std::to_string(snap.s));
    }
    return out;
}

Eigen::VectorXd project_populations(const StateVector& state, const SpectralSnapshot& snap) {
    return (snap.eigenvectors.transpose() * state).cwiseAbs2();
}

PopulationTrace evolve_full(const SpectralSweep& sw, const Schedule& sched, InitialState choice) {
    if (sw.points() != static_cast<int>(sched.grid.size())) {
        throw std::invalid_argument("evolve_full: sweep and schedule grids differ");
    }
    const int dim = sw.dim();
    const double dt = sched.dt();

    PopulationTrace trace;
    trace.model_tag = "Full";
    trace.grid = sched.grid;
    trace.populations.resize(sw.points(), dim);

    StateVector state = initial_state(sw.snapshots.front(), choice);
    for (int k = 0; k < sw.points(); ++k) {
        trace.populations.row(k) = project_populations(state, sw.snapshots[k]);
        if (k + 1 < sw.points()) {
            state = propagate_interval(state, sw.snapshots[k], dt);
        }
    }
    return trace;
}

PopulationTrace evolve_full(const SpinSystem& sys, const Schedule& sched, InitialState choice) {
    return evolve_full(sweep(sys, sched), sched, choice);
}

} // namespace lmg
