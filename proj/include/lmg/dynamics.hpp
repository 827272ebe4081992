#pragma once

#include <Eigen/Dense>

#include "lmg/spectral.hpp"
#include "lmg/trace.hpp"

namespace lmg {

using StateVector = Eigen::VectorXcd; // z-basis amplitudes, unit norm

enum class InitialState {
    Ground,           // lowest level of H(0); even doublet member if degenerate
    GroundEvenParity, // even-parity combination of a degenerate ground doublet
    GroundOddParity,
    GroundBroken      // single symmetry-broken member (even+odd)/sqrt(2)
};

InitialState initial_state_from_string(const std::string& name);
std::string to_string(InitialState c);

// Ground state of the first snapshot under the requested doublet resolution.
StateVector initial_state(const SpectralSnapshot& first, InitialState choice);

// Exact propagation under the snapshot Hamiltonian for dwell time dt:
// state' = sum_i e^{-i e_i dt} <v_i|state> |v_i>.
StateVector propagate_interval(const StateVector& state, const SpectralSnapshot& snap, double dt);

// P_i = |<v_i|state>|^2.
Eigen::VectorXd project_populations(const StateVector& state, const SpectralSnapshot& snap);

// Full Schroedinger evolution under the piecewise-constant protocol; the
// sweep must match the schedule grid. Populations are recorded at every grid
// point. Throws std::runtime_error if the norm drifts beyond 1e-8.
PopulationTrace evolve_full(const SpectralSweep& sw, const Schedule& sched,
                            InitialState choice = InitialState::Ground);

PopulationTrace evolve_full(const SpinSystem& sys, const Schedule& sched,
                            InitialState choice = InitialState::Ground);

} // namespace lmg
