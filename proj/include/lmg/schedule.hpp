#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmg/spin_system.hpp"

namespace lmg {

enum class Direction { Forward, Backward };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& name);

// Piecewise-constant drive protocol: `steps` fixed-Hamiltonian intervals
// covering s in [0,1], dwell time T/steps each.
struct Schedule {
    Direction direction = Direction::Forward;
    double total_time = 1.0;   // T
    int steps = 0;             // number of intervals; grid has steps+1 points
    std::vector<double> grid;  // strictly increasing, grid[0]=0, grid[back]=1

    double dt() const { return total_time / steps; }
};

Schedule make_schedule(Direction direction, double total_time, int steps);

// Forward:  H(s) = -(s/N) Sx^2 - (1-s) Sz
// Backward: H(s) = -((1-s)/N) Sx^2 - s Sz
Eigen::MatrixXd hamiltonian(const SpinSystem& sys, const Schedule& sched, double s);

// dH/ds; s-independent since H is affine in s.
Eigen::MatrixXd d_hamiltonian_ds(const SpinSystem& sys, const Schedule& sched);

} // namespace lmg
