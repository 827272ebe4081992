#pragma once

#include <Eigen/Dense>

namespace lmg {

// Collective spin operators for the maximal S = N/2 sector.
// Basis: z-eigenstates ordered by increasing m = -S, -S+1, ..., +S.
struct SpinSystem {
    int n_spins = 0;         // N, even
    double spin = 0.0;       // S = N/2
    int dim = 0;             // N + 1
    Eigen::VectorXd sz_diag; // diagonal of S_z
    Eigen::MatrixXd sx2;     // S_x^2, pentadiagonal (couples m <-> m+-2)
};

// Throws std::invalid_argument for odd N or N < 2.
SpinSystem build_spin_system(int n_spins);

// Spin-flip parity, diag((-1)^(S-m)). Commutes with H(s) for every s.
Eigen::VectorXd parity_diag(const SpinSystem& sys);

} // namespace lmg
