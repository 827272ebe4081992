#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lmg/schedule.hpp"
#include "lmg/spin_system.hpp"

namespace lmg {

struct SpectralSnapshot {
    double s = 0.0;
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // column i = level i, orthonormal
    Eigen::VectorXi parity;       // +1 / -1 label per level
};

// Dense symmetric eigendecomposition. Throws std::invalid_argument if the
// input is not symmetric within 1e-12 (relative to its max element).
SpectralSnapshot diagonalize(const Eigen::MatrixXd& h, double s = 0.0);

struct SpectralSweep {
    Direction direction = Direction::Forward;
    double total_time = 1.0;
    std::vector<SpectralSnapshot> snapshots;
    // Grid indices where the ground pair is degenerate below resolution and
    // the in-doublet orientation is fixed by parity rather than overlap.
    std::vector<int> degenerate_points;

    int dim() const { return snapshots.empty() ? 0 : static_cast<int>(snapshots.front().eigenvalues.size()); }
    int points() const { return static_cast<int>(snapshots.size()); }
    double s_at(int k) const { return snapshots[k].s; }
    // Index of the grid point closest to s.
    int index_of(double s) const;
};

// Diagonalize H(s) on the whole grid. Eigenvectors are parity-pure (the two
// parity blocks are solved separately) and sign-aligned so that
// <v_i(s_k) | v_i(s_{k+1})> >= 0 for every level, the discrete realization of
// the <eta_dot | eta> = 0 gauge. Exactly degenerate levels are ordered even
// parity first and the grid point is recorded in degenerate_points.
SpectralSweep sweep(const SpinSystem& sys, const Schedule& sched);

// |e_j - e_i| at grid index k. Throws on i == j.
double gap(const SpectralSweep& sw, int i, int j, int k);

// Signed gap e_n - e_m at grid index k (the Delta^{n,m} of the chain model).
double signed_gap(const SpectralSweep& sw, int n, int m, int k);

struct MinGapResult {
    double s0 = 0.0;
    double gap_min = 0.0;
    bool interior = false; // false: minimum sits on the grid boundary
};

// Location of the minimum of gap(level, level+1), refined by a 3-point
// parabola when the minimum is interior.
MinGapResult min_gap_location(const SpectralSweep& sw, int level);

// Level index -> integrated density of states in [0,1].
double integrated_dos(int level, int dim);

} // namespace lmg
